#include "sel3/localdata.hpp"

#include <algorithm>
#include <set>

namespace sel3 {

namespace {

// distinct prime divisors of |n|
std::vector<ZZ> prime_divisors(const ZZ& n) {
    std::vector<ZZ> out;
    for (auto& [p, e] : factor(n)) out.push_back(p);
    return out;
}

std::vector<ZZ> merge_primes(std::initializer_list<ZZ> vals) {
    std::set<ZZ> ps;
    for (const ZZ& v : vals)
        if (v != 0)
            for (auto& p : prime_divisors(v)) ps.insert(p);
    return {ps.begin(), ps.end()};
}

}  // namespace

std::vector<KPrime> compute_Sa(const ZZ& a) {
    if (a == 0) throw invalid_input("compute_Sa(0)");
    std::vector<KPrime> out;
    for (const ZZ& ell : merge_primes({6 * a})) {
        for (const KPrime& q : kprimes_above(ell)) {
            if (k_valuation(QQ(4 * a), q) % 6 == 0) continue;
            if (!is_square_in_Kq(a, q)) continue;
            out.push_back(q);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::pair<std::vector<ZZ>, std::vector<ZZ>> compute_SaQ(const ZZ& a) {
    if (a == 0) throw invalid_input("compute_SaQ(0)");
    auto one_set = [](const ZZ& v) {
        std::vector<ZZ> s;
        for (const ZZ& ell : merge_primes({4 * v})) {
            if (ell == 3) continue;
            if (valuation(ZZ(4 * v), ell) % 6 == 0) continue;
            if (!is_Qp_square(ZZ(-3 * v), ell)) continue;
            s.push_back(ell);
        }
        // T_3(Q)
        long v3 = (v % 3 == 0) ? valuation(v, ZZ(3)) : 0;
        if ((v3 == 1 || v3 == 5) && is_Qp_square(ZZ(-3 * v), ZZ(3))) s.push_back(3);
        std::sort(s.begin(), s.end());
        return s;
    };
    ZZ aalpha2 = (a % 27 == 0) ? ZZ(-a / 27) : ZZ(-27 * a);
    return {one_set(a), one_set(aalpha2)};
}

LocalPrimeSets1 compute_local_sets1(const ZZ& aK, const ZZ& aQ) {
    LocalPrimeSets1 out;
    out.S_a = compute_Sa(aK);
    auto [s1, s2] = compute_SaQ(aQ);
    out.S_a_Q = s1;
    out.S_aalpha2_Q = s2;
    out.size_SaL = 2 * (int)out.S_a.size();
    return out;
}

LocalPrimeSets2 compute_S123(const Curve2& E) {
    const ZZ &a = E.a, &b = E.b;
    ZZ d = E.d();
    std::set<KPrime> S1, S2, S3;

    for (const ZZ& ell : merge_primes({2 * a, b, d})) {
        if (ell == 3) continue;
        for (const KPrime& q : kprimes_above(ell)) {
            if (!is_square_in_Kq(a, q)) continue;
            if (a % ell == 0 && k_valuation(QQ(4 * a * b * b), q) % 6 != 0) S1.insert(q);
            if (b % ell == 0 && ell != 2 && a % ell != 0) S2.insert(q);
            if (d % ell == 0 && ell != 2 && a % ell != 0) S3.insert(q);
        }
    }
    // exception sets at 2
    KPrime two = classify_prime(ZZ(2));
    if (a % 2 != 0 && is_square_in_Kq(a, two)) {
        long v2b = valuation(b, ZZ(2));
        if (v2b < 2) S1.insert(two);        // 4 does not divide b
        if (v2b >= 3) S2.insert(two);       // 8 | b
        if (v2b == 2) S3.insert(two);       // 4 || b
    }
    // exception sets at p | 3 (v_p = 2 v_3 on rationals)
    KPrime p3 = classify_prime(ZZ(3));
    if (is_square_in_Kq(a, p3)) {
        long vpa = (a % 3 == 0) ? 2 * valuation(a, ZZ(3)) : 0;
        long vpd = (d % 3 == 0) ? 2 * valuation(d, ZZ(3)) : 0;
        if (vpa > 0 && vpa != 6) S1.insert(p3);
        if (vpa == 6 && vpd < 12) S1.insert(p3);
        if (b % 3 == 0 && a % 3 != 0) S2.insert(p3);
        if (vpd > 12) S3.insert(p3);
    }

    LocalPrimeSets2 out;
    out.S1 = {S1.begin(), S1.end()};
    out.S2 = {S2.begin(), S2.end()};
    out.S3 = {S3.begin(), S3.end()};
    std::set<KPrime> u12 = S1, u13 = S1;
    u12.insert(S2.begin(), S2.end());
    u13.insert(S3.begin(), S3.end());
    out.size_S12L = 2 * (int)u12.size();
    out.size_S13L = 2 * (int)u13.size();
    return out;
}

int n1_size(const ZZ& a, const KPrime& q) {
    bool sq = is_square_in_Kq(a, q);
    if (q.kind == PrimeKind::Ramified) return sq ? 27 : 9;
    return sq ? 3 : 1;
}

int v3_size(const ZZ& a) {
    return is_square_in_Kq(a, classify_prime(ZZ(3))) ? 3 : 1;
}

int local_quotient_size_type1(const ZZ& a, const KPrime& q) {
    bool sq = is_square_in_Kq(a, q);
    if (q.kind == PrimeKind::Ramified) return sq ? 9 : 3;
    return sq ? 3 : 1;
}

std::string relation_name(LocalRelation r) {
    switch (r) {
        case LocalRelation::Equal: return "equal";
        case LocalRelation::MeetsTrivially: return "image-meets-trivially";
        case LocalRelation::ImageStrictlySmaller: return "image-strictly-smaller";
        case LocalRelation::ImageStrictlyLarger: return "image-strictly-larger";
    }
    return "?";
}

Type2LocalRow type2_local_row(const Curve2& E, const KPrime& q) {
    if (q.kind == PrimeKind::Ramified) throw invalid_input("type2_local_row: q over 3");
    const ZZ &a = E.a, &b = E.b;
    ZZ d = E.d();
    ZZ disc = -16 * a * a * b * b * b * d;
    if (!is_square_in_Kq(a, q) || k_valuation(QQ(disc), q) == 0)
        throw invalid_input("type2_local_row: row preconditions not met");
    const ZZ& ell = q.ell;

    if (a % ell == 0) {
        long v = k_valuation(QQ(4 * a * b * b), q) % 6;
        if (v == 0) return {1, 1, LocalRelation::Equal};
        if (v == 2 || v == 4) return {3, 3, LocalRelation::MeetsTrivially};
        throw invalid_input("type2_local_row: no matching row (odd v_q(4ab^2))");
    }
    if (ell != 2) {
        if (b % ell == 0) {
            ZZ v(k_valuation(QQ(b), q));
            return {3 * v, v, LocalRelation::ImageStrictlySmaller};
        }
        if (d % ell == 0) {
            ZZ v(k_valuation(QQ(d), q));
            return {v, 3 * v, LocalRelation::ImageStrictlyLarger};
        }
        throw invalid_input("type2_local_row: no matching row");
    }
    // ell == 2, 2 does not divide a
    long v2b = (b % 2 == 0) ? valuation(b, ZZ(2)) : 0;
    if (v2b <= 1) return {3, 3, LocalRelation::MeetsTrivially};
    if (v2b == 2) {
        ZZ v(valuation(d, ZZ(2)) - 2);
        return {v, 3 * v, LocalRelation::ImageStrictlyLarger};
    }
    ZZ v(valuation(b, ZZ(2)) - 2);
    return {3 * v, v, LocalRelation::ImageStrictlySmaller};
}

}  // namespace sel3
