#ifndef SEL3_LOCALDATA_HPP
#define SEL3_LOCALDATA_HPP

#include <optional>
#include <string>
#include <vector>

#include "sel3/curves.hpp"
#include "sel3/eisenstein.hpp"
#include "sel3/zz.hpp"

namespace sel3 {

struct LocalPrimeSets1 {
    std::vector<KPrime> S_a;
    std::vector<ZZ> S_a_Q;
    std::vector<ZZ> S_aalpha2_Q;
    int size_SaL = 0;  // = 2 |S_a|
};

struct LocalPrimeSets2 {
    std::vector<KPrime> S1, S2, S3;
    int size_S12L = 0;  // = 2 |S1 u S2|
    int size_S13L = 0;  // = 2 |S1 u S3|
};

// S_a = { q : a in K_q^{*2}, v_q(4a) != 0 (mod 6) }; a sixth-power free over K
std::vector<KPrime> compute_Sa(const ZZ& a);
LocalPrimeSets1 compute_local_sets1(const ZZ& aK, const ZZ& aQ);

// (S_a(Q), S_{a alpha^2}(Q)); a sixth-power free over Q
std::pair<std::vector<ZZ>, std::vector<ZZ>> compute_SaQ(const ZZ& a);

LocalPrimeSets2 compute_S123(const Curve2& E);

// |(A_q^*/A_q^{*3})_{N=1}|
int n1_size(const ZZ& a, const KPrime& q);
// |V_3 / A_p^{*3}|
int v3_size(const ZZ& a);
// |E_a(K_q)/phi(E_a(K_q))|
int local_quotient_size_type1(const ZZ& a, const KPrime& q);

enum class LocalRelation {
    Equal,               // image = (A*/A*3)_{N=1}
    MeetsTrivially,      // image n (A*/A*3)_{N=1} = 1
    ImageStrictlySmaller,  // 1 = image strictly inside
    ImageStrictlyLarger,   // (A*/A*3)_{N=1} strictly inside image
};

struct Type2LocalRow {
    ZZ c_E, c_Ehat;  // Tamagawa numbers
    LocalRelation relation;
};

// local data at q not over 3 with a in K_q^{*2} and q | disc; throws if no
// table row matches
Type2LocalRow type2_local_row(const Curve2& E, const KPrime& q);

std::string relation_name(LocalRelation r);

}  // namespace sel3

#endif
