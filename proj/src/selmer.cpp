#include "sel3/selmer.hpp"

#include <algorithm>
#include <set>

namespace sel3 {

std::vector<ZZ> residue_chars(const std::vector<KPrime>& S) {
    std::set<ZZ> s;
    for (auto& q : S) s.insert(q.ell);
    return {s.begin(), s.end()};
}

SelmerBounds type1_bounds_K(const ZZ& a, const LocalPrimeSets1& sets, const Type1ClassData& cd) {
    if (is_square_in_K(a)) {
        auto b = make_bounds(0, (int)sets.S_a.size() + 1, "trivial", "|S_a|+1");
        b.assumptions.push_back("no-lower-bound-theorem");
        return b;
    }
    int u1 = cd.h3_SL + sets.size_SaL + 2;
    int u2 = cd.h3_Q1 + cd.h3_Q2 + sets.size_SaL + 1;
    int up = std::min(u1, u2);
    return make_bounds(cd.h3_SL, up, "h3_{S_a(L)}",
                       u1 <= u2 ? "h3_{S_a(L)}+|S_a(L)|+2" : "h3_Q1+h3_Q2+|S_a(L)|+1");
}

int type1_exact_with_root_number(const ZZ& a, const SelmerBounds& k_bounds,
                                 const LocalPrimeSets1& sets, int omega) {
    if (omega != 1 && omega != -1) throw invalid_input("root number must be +-1");
    if (!sets.S_a.empty()) throw invalid_input("root-number refinement needs S_a empty");
    if (is_square_in_K(a)) throw invalid_input("root-number refinement needs a not in K^{*2}");
    // bounds are {h, h+1}; (-1)^dim = omega picks one
    int h = k_bounds.lower;
    if (k_bounds.upper != h + 1) throw internal_error("unexpected interval for parity refinement");
    int want = omega == 1 ? 0 : 1;
    return (h % 2 == want) ? h : h + 1;
}

SelmerBounds type1_bounds_Q(const ZZ& aQ, const LocalPrimeSets1& sets, const Type1ClassData& cd) {
    ZZ m3 = squarefree_core(-3 * aQ);
    if (m3 == 1) {
        // -3a a rational square: split mirror algebra
        return make_bounds(0, (int)sets.S_a_Q.size(), "trivial", "|S_a(Q)| (split algebra)");
    }
    if (m3 == -3) {
        // a a rational square: the mirror field is K, class group trivial
        int nprimes = 0;
        for (auto& l : sets.S_a_Q) nprimes += (kronecker(ZZ(-3), l) == 1 ? 2 : 1);
        return make_bounds(0, nprimes + 1, "trivial", "h3+|S|+1 (real field or K)");
    }
    int nprimes = 0;
    long long D = fundamental_discriminant(-3 * aQ);
    for (auto& l : sets.S_a_Q) nprimes += ClassGroup::primes_above_count(D, l);
    if (m3 < 0) {
        return make_bounds(0, cd.h3_Q1 + nprimes, "trivial", "h3+|S| (imaginary field)");
    }
    return make_bounds(0, cd.h3_Q1 + nprimes + 1, "trivial", "h3+|S|+1 (real field or K)");
}

SelmerBounds type1_sel3_bounds(const ZZ& a, const SelmerBounds& phi, const LocalPrimeSets1& sets,
                               const RankCertificate& cert, std::optional<int> refined_phi_dim) {
    long rk = cert.rank.value_or(0);
    if (is_square_in_K(a)) {
        auto b = make_bounds((int)rk, 2 * (int)sets.S_a.size() + 2, "rk E_a(K)", "2|S_a|+2");
        if (!cert.rank) b.assumptions.push_back("rank-unknown-lower-0");
        return b;
    }
    int lo = std::max<int>(phi.lower, (int)rk);
    int up = 2 * phi.upper;
    std::string ls = lo == phi.lower ? "h3_{S_a(L)}" : "rk E_a(K)";
    std::string us = "2*min-upper";
    if (refined_phi_dim) {
        lo = std::max(lo, *refined_phi_dim);
        up = 2 * *refined_phi_dim;
        us = "2*dim Sel^phi (root-number refined)";
        // a supplied rank above 2*dim contradicts the refinement; make_bounds aborts
    }
    auto b = make_bounds(lo, up, ls, us);
    if (!cert.rank) b.assumptions.push_back("rank-unknown-lower-uses-0");
    return b;
}

SelmerBounds type2_bounds(const Curve2& E, const LocalPrimeSets2& sets, const Type2ClassData& cd) {
    if (is_square_in_K(E.a)) {
        std::set<KPrime> u13(sets.S1.begin(), sets.S1.end());
        u13.insert(sets.S3.begin(), sets.S3.end());
        auto b = make_bounds(0, (int)u13.size() + 1, "trivial", "|S1 u S3|+1");
        b.assumptions.push_back("no-lower-bound-theorem");
        return b;
    }
    int basic_lo = cd.h3_S12;
    int basic_up = cd.h3_S13 + sets.size_S13L + 2;
    if (E.a % 3 != 0) {
        int s2 = (int)sets.S2.size(), s3 = (int)sets.S3.size();
        int lo = std::max(basic_lo, cd.h3_S13 + s3 - s2 - 1);
        int up = std::min(cd.h3_S12 + sets.size_S12L + s3 - s2 + 1, basic_up);
        return make_bounds(lo, up, "max{h3_{S12(L)}, h3_{S13(L)}+|S3|-|S2|-1}",
                           "min{h3_{S12(L)}+|S12(L)|+|S3|-|S2|+1, h3_{S13(L)}+|S13(L)|+2}");
    }
    return make_bounds(basic_lo, basic_up, "h3_{S12(L)}", "h3_{S13(L)}+|S13(L)|+2");
}

SelmerBounds type2_dual_bounds(const Curve2& E, const LocalPrimeSets2& sets,
                               const Type2ClassData& cd) {
    if (is_square_in_K(E.a)) {
        std::set<KPrime> u12(sets.S1.begin(), sets.S1.end());
        u12.insert(sets.S2.begin(), sets.S2.end());
        auto b = make_bounds(0, (int)u12.size() + 1, "trivial", "|S1 u S2|+1");
        b.assumptions.push_back("no-lower-bound-theorem");
        return b;
    }
    return make_bounds(cd.h3_S13, cd.h3_S12 + sets.size_S12L + 2, "h3_{S13(L)}",
                       "h3_{S12(L)}+|S12(L)|+2");
}

int duality_shift(int s2_size, int s3_size) { return s2_size - s3_size + 1; }

SelmerBounds type2_sel3_bounds(const Curve2& E, const LocalPrimeSets2& sets,
                               const Type2ClassData& cd, const RankCertificate& cert) {
    long rk = cert.rank.value_or(0);
    if (is_square_in_K(E.a)) {
        std::set<KPrime> u12(sets.S1.begin(), sets.S1.end()), u13(sets.S1.begin(), sets.S1.end());
        u12.insert(sets.S2.begin(), sets.S2.end());
        u13.insert(sets.S3.begin(), sets.S3.end());
        auto b =
            make_bounds((int)rk, (int)u12.size() + (int)u13.size() + 2, "rk", "|S12|+|S13|+2");
        if (!cert.rank) b.assumptions.push_back("rank-unknown-lower-0");
        return b;
    }
    int lo = std::max<int>(cd.h3_S12, (int)rk);
    int up = cd.h3_S12 + cd.h3_S13 + sets.size_S12L + sets.size_S13L + 4;
    std::string us = "h3_{S12(L)}+h3_{S13(L)}+|S12(L)|+|S13(L)|+4";
    if (E.a % 3 != 0) {
        SelmerBounds psi = type2_bounds(E, sets, cd);
        int shifted = 2 * psi.upper + duality_shift((int)sets.S2.size(), (int)sets.S3.size());
        if (shifted < up) {
            up = shifted;
            us = "2*upper(Sel^Psi)+1+|S2|-|S3|";
        }
    }
    auto b = make_bounds(lo, up, lo == cd.h3_S12 ? "h3_{S12(L)}" : "rk E(K)", us);
    if (!cert.rank) b.assumptions.push_back("rank-unknown-lower-uses-0");
    return b;
}

int sha_floor(const ZZ& a, int h3_SL, long rank) {
    if (is_square_in_K(a)) throw invalid_input("sha_floor needs a not in K^{*2}");
    long f = h3_SL - rank;
    return f > 0 ? (int)f : 0;
}

int rank_identity(int selphi_dim, int torsion_phi_dim, int sha_phi_dim) {
    int r = selphi_dim - torsion_phi_dim - sha_phi_dim;
    if (r < 0) throw invalid_input("rank identity yields negative rank: inconsistent inputs");
    return r;
}

Type1Analysis analyze_type1(ClassGroupProvider& cg, const ZZ& a, const Type1Options& opt) {
    if (a == 0) throw invalid_input("a must be nonzero");
    Type1Analysis R;
    R.a_input = a;
    R.a_K = normalize_type1(a).a;
    R.a_Q = normalize_type1_Q(a);
    R.a_in_Ksq = is_square_in_K(R.a_K);
    R.sets = compute_local_sets1(R.a_K, R.a_Q);
    R.cert.rank = opt.rank;
    R.cert.root_number = opt.root_number;
    R.cert.sha_phi_dim = opt.sha_phi;

    if (!R.a_in_Ksq) {
        auto chars = residue_chars(R.sets.S_a);
        R.cd.h3_SL = cg.biquad_s_class_three_rank(R.a_K, chars);
        R.cd.h3_Q1 = cg.quad_s_class_three_rank(-3 * R.a_Q, R.sets.S_a_Q);
        R.cd.h3_Q2 = cg.quad_s_class_three_rank(R.a_Q, R.sets.S_aalpha2_Q);
        long long D1 = fundamental_discriminant(-3 * R.a_Q);
        long long D2 = fundamental_discriminant(R.a_Q);
        for (auto& l : R.sets.S_a_Q) R.cd.lift_Q1 += ClassGroup::primes_above_count(D1, l);
        for (auto& l : R.sets.S_aalpha2_Q) R.cd.lift_Q2 += ClassGroup::primes_above_count(D2, l);
        if (R.cd.lift_Q1 + R.cd.lift_Q2 != R.sets.size_SaL)
            throw internal_error("|S_a(L)| != |S_a(Q~1)| + |S_{a a^2}(Q~2)|");
    }

    R.phi_K = type1_bounds_K(R.a_K, R.sets, R.cd);
    R.phi_Q = type1_bounds_Q(R.a_Q, R.sets, R.cd);
    if (opt.root_number && R.sets.S_a.empty() && !R.a_in_Ksq)
        R.refined_phi_dim =
            type1_exact_with_root_number(R.a_K, R.phi_K, R.sets, *opt.root_number);
    R.sel3_K = type1_sel3_bounds(R.a_K, R.phi_K, R.sets, R.cert, R.refined_phi_dim);
    // dim Sel^3(E_a/Q) <= dim Sel^phi(E_a/K), the sum of the two Q-isogeny bounds
    R.sel3_Q = make_bounds(0, R.refined_phi_dim ? *R.refined_phi_dim : R.phi_K.upper,
                           "trivial", "dim Sel^phi(E/K) upper");
    if (opt.rank && !R.a_in_Ksq) R.sha_phi_floor = sha_floor(R.a_K, R.cd.h3_SL, *opt.rank);
    if (R.refined_phi_dim && opt.sha_phi)
        R.rank_Q_identity =
            rank_identity(*R.refined_phi_dim, R.a_in_Ksq ? 1 : 0, *opt.sha_phi);
    return R;
}

Type2Analysis analyze_type2(ClassGroupProvider& cg, const ZZ& a, const ZZ& b,
                            const Type2Options& opt) {
    Type2Analysis R;
    R.E = make_curve2(a, b);
    R.a_in_Ksq = is_square_in_K(a);
    R.sets = compute_S123(R.E);
    R.cert.rank = opt.rank;
    if (!R.a_in_Ksq) {
        std::vector<KPrime> u12 = R.sets.S1, u13 = R.sets.S1;
        u12.insert(u12.end(), R.sets.S2.begin(), R.sets.S2.end());
        u13.insert(u13.end(), R.sets.S3.begin(), R.sets.S3.end());
        R.cd.h3_S12 = cg.biquad_s_class_three_rank(a, residue_chars(u12));
        R.cd.h3_S13 = cg.biquad_s_class_three_rank(a, residue_chars(u13));
    }
    R.psi = type2_bounds(R.E, R.sets, R.cd);
    R.psi_hat = type2_dual_bounds(R.E, R.sets, R.cd);
    R.sel3_K = type2_sel3_bounds(R.E, R.sets, R.cd, R.cert);
    return R;
}

}  // namespace sel3
