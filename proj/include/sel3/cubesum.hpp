#ifndef SEL3_CUBESUM_HPP
#define SEL3_CUBESUM_HPP

#include <optional>
#include <string>
#include <vector>

#include "sel3/curves.hpp"
#include "sel3/localdata.hpp"
#include "sel3/zz.hpp"

namespace sel3 {

// dim Sel^phi(E_{16 l^2}/K) for prime l >= 5
int selmer_dim_16l2(const ZZ& ell);
// dim Sel^phi(E_{16 l^4}/K)
int selmer_dim_16l4(const ZZ& ell);
// dim Sel^phi(E_{l^2}/K); uses the cubic residue symbol (2/pi_l)_3 for l = 1 (mod 3)
int selmer_dim_l2(const ZZ& ell);

enum class CubeSumStatus { NotCubeSum, CubeSum, ConditionalCubeSum, Undetermined };

struct CubeSumVerdict {
    ZZ D;
    CubeSumStatus status = CubeSumStatus::Undetermined;
    std::optional<int> rank;
    std::vector<std::string> hypotheses;
    std::optional<PtQ> certificate;
    ZZ certificate_curve_a;  // Type I coefficient of the curve carrying the certificate
    int selmer_dim = 0;
    std::string source;
};

struct CubeSumFlags {
    bool sha_even = false;
    bool rank_positive = false;
    long search_height = 0;  // 0 disables the point search
};

CubeSumVerdict cube_sum_verdict(const ZZ& D, const CubeSumFlags& flags);

// special families l = t^2+27 / s^6+3t^2 (3 not | t) / s^6+27t^2 with their
// explicit points on E_{-27 l^2}
struct FamilyPoint {
    int family = 0;  // 1, 2, 3
    PtQ point;
};
std::optional<FamilyPoint> special_family_point(const ZZ& ell);

// exhaustive x = p/q^2 search, max(|p|, q^2) <= bound; returns non-torsion
// points pairwise independent up to small multiples
struct RankFloor {
    int rank = 0;
    std::vector<PtQ> witnesses;
};
RankFloor naive_rank_floor(const CurveEq<QQ>& E, long bound);

struct FamilyWitness {
    int n = 0;
    std::vector<ZZ> primes;  // 2n+1 primes = -1 (mod 12)
    ZZ a, b;
    int s3_size = 0;
    int lower_bound = 0;
};
FamilyWitness large_selmer_family(int n);

// primes b making S1 = S2 = {} for the curve built on squarefree a' (3 not | a')
std::vector<ZZ> biquad_empty_S12_b(const ZZ& a_prime, int count);

struct DensityResult {
    long count = 0, total = 0;
    double ratio = 0.0;
};
DensityResult twist_density_experiment(const ZZ& p, long N);

std::string status_name(CubeSumStatus s);

}  // namespace sel3

#endif
