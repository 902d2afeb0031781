#ifndef SEL3_SELMER_HPP
#define SEL3_SELMER_HPP

#include <optional>
#include <string>
#include <vector>

#include "sel3/classgroup.hpp"
#include "sel3/localdata.hpp"
#include "sel3/zz.hpp"

namespace sel3 {

struct SelmerBounds {
    int lower = 0;
    int upper = 0;
    std::string lower_source, upper_source;
    std::vector<std::string> assumptions;
};

inline SelmerBounds make_bounds(int lo, int hi, std::string ls, std::string us,
                                std::vector<std::string> as = {}) {
    if (lo > hi) throw internal_error("bound interval inverted: lower > upper");
    return {lo, hi, std::move(ls), std::move(us), std::move(as)};
}

struct RankCertificate {
    std::optional<long> rank;         // rk E(K), external or point-search floor
    std::optional<int> sha_phi_dim;   // dim Sha(E/K)[phi]
    std::optional<int> root_number;   // omega(E/Q), +1 or -1
};

// class-group input for the Type I formulas
struct Type1ClassData {
    int h3_SL = 0;      // h^3_{S_a(L)}
    int h3_Q1 = 0;      // S_a(Q)-class 3-rank of Q(sqrt(-3a))
    int h3_Q2 = 0;      // S_{a alpha^2}(Q)-class 3-rank of Q(sqrt(a))
    int lift_Q1 = 0;    // |S_a| lifted to Q(sqrt(-3a))
    int lift_Q2 = 0;    // |S_{a alpha^2}| lifted to Q(sqrt(a))
};

SelmerBounds type1_bounds_K(const ZZ& a, const LocalPrimeSets1& sets,
                            const Type1ClassData& cd);
// S_a empty, a not in K^{*2}: the dimension the root number forces
int type1_exact_with_root_number(const ZZ& a, const SelmerBounds& k_bounds,
                                 const LocalPrimeSets1& sets, int omega);
SelmerBounds type1_bounds_Q(const ZZ& aQ, const LocalPrimeSets1& sets,
                            const Type1ClassData& cd);
SelmerBounds type1_sel3_bounds(const ZZ& a, const SelmerBounds& phi_bounds,
                               const LocalPrimeSets1& sets, const RankCertificate& cert,
                               std::optional<int> refined_phi_dim);

struct Type2ClassData {
    int h3_S12 = 0;  // h^3_{S_{1,2}(L)}
    int h3_S13 = 0;  // h^3_{S_{1,3}(L)}
};

SelmerBounds type2_bounds(const Curve2& E, const LocalPrimeSets2& sets,
                          const Type2ClassData& cd);
SelmerBounds type2_dual_bounds(const Curve2& E, const LocalPrimeSets2& sets,
                               const Type2ClassData& cd);
int duality_shift(int s2_size, int s3_size);
SelmerBounds type2_sel3_bounds(const Curve2& E, const LocalPrimeSets2& sets,
                               const Type2ClassData& cd, const RankCertificate& cert);

int sha_floor(const ZZ& a, int h3_SL, long rank);
// rk E_a(Q) from the exact dimension identity
int rank_identity(int selphi_dim, int torsion_phi_dim, int sha_phi_dim);

// orchestration -----------------------------------------------------------

struct Type1Analysis {
    ZZ a_input, a_K, a_Q;
    bool a_in_Ksq = false;
    LocalPrimeSets1 sets;
    Type1ClassData cd;
    SelmerBounds phi_K, phi_Q, sel3_K, sel3_Q;
    std::optional<int> refined_phi_dim;
    std::optional<int> sha_phi_floor;
    std::optional<int> rank_Q_identity;  // from the exact dimension identity
    RankCertificate cert;
};

struct Type1Options {
    std::optional<int> root_number;
    std::optional<long> rank;
    std::optional<int> sha_phi;
};

Type1Analysis analyze_type1(ClassGroupProvider& cg, const ZZ& a, const Type1Options& opt);

struct Type2Analysis {
    Curve2 E{ZZ(0), ZZ(0)};
    bool a_in_Ksq = false;
    LocalPrimeSets2 sets;
    Type2ClassData cd;
    SelmerBounds psi, psi_hat, sel3_K;
    RankCertificate cert;
};

struct Type2Options {
    std::optional<long> rank;
};

Type2Analysis analyze_type2(ClassGroupProvider& cg, const ZZ& a, const ZZ& b,
                            const Type2Options& opt);

// residue characteristics of a K-prime set
std::vector<ZZ> residue_chars(const std::vector<KPrime>& S);

}  // namespace sel3

#endif
