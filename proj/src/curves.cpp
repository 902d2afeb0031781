#include "sel3/curves.hpp"

namespace sel3 {

std::pair<Eisenstein, ZZ> KRat::as_fraction() const {
    ZZ d0 = c0.get_den(), d1 = c1.get_den();
    ZZ den;
    mpz_lcm(den.get_mpz_t(), d0.get_mpz_t(), d1.get_mpz_t());
    ZZ n0 = c0.get_num() * (den / d0), n1 = c1.get_num() * (den / d1);
    ZZ g;
    mpz_gcd(g.get_mpz_t(), n0.get_mpz_t(), n1.get_mpz_t());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), den.get_mpz_t());
    if (g > 1) {
        n0 /= g;
        n1 /= g;
        den /= g;
    }
    return {Eisenstein{n0, n1}, den};
}

std::string KRat::str() const {
    std::string s = c0.get_str();
    if (c1 != 0) {
        s += (c1 > 0 ? "+" : "-");
        QQ a = abs(c1);
        if (a != 1) s += a.get_str() + "*";
        s += "zeta";
    }
    return s;
}

Curve1 normalize_type1(const ZZ& a) {
    if (a == 0) throw invalid_input("E_a needs a != 0");
    ZZ v = sixth_power_free(a);
    while (v % 27 == 0) v /= -27;
    return {v};
}

ZZ normalize_type1_Q(const ZZ& a) {
    if (a == 0) throw invalid_input("E_a needs a != 0");
    return sixth_power_free(a);
}

Curve2 make_curve2(const ZZ& a, const ZZ& b) {
    if (a == 0 || b == 0 || 4 * a + 27 * b == 0)
        throw invalid_input("E_{a,b} needs ab(4a+27b) != 0");
    ZZ g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    // squarefree in K: no rational prime square, and 3 does not divide
    // (the prime over 3 is ramified, so 3 | gcd already means p^2 | gcd)
    if (g % 3 == 0) throw invalid_input("gcd(a,b) must be squarefree in K (3 divides gcd)");
    for (auto& [p, e] : factor(g))
        if (e >= 2) throw invalid_input("gcd(a,b) must be squarefree");
    return {a, b};
}

namespace {

CurveEq<KRat> lift(const CurveEq<QQ>& E) {
    return {KRat(E.A), KRat(E.B), KRat(E.C)};
}

template <class F>
Pt<F> checked(const CurveEq<F>& E, Pt<F> P, const char* what) {
    if (!on_curve(E, P)) throw internal_error(std::string("isogeny image off curve: ") + what);
    return P;
}

}  // namespace

CurveEq<KRat> eq_type2_minimal(const Curve2& E) {
    const ZZ &a = E.a, &b = E.b;
    KRat A2{QQ(-3 * a), QQ(-5 * a)};
    KRat B2{QQ(a * (-5 * a - 18 * b)), QQ(a * (2 * a - 18 * b))};
    KRat C2{QQ(a * (3 * a * a - 2 * a * b - 27 * b * b)), QQ(a * (3 * a * a + 18 * a * b))};
    return {A2, B2, C2};
}

PtQ phi_rational(const ZZ& a, const PtQ& P) {
    CurveEq<QQ> dom = eq_type1(a), cod = eq_type1(-27 * a);
    if (!on_curve(dom, P)) throw invalid_input("phi: point not on E_a");
    if (P.infinity || P.x == 0) return {};
    QQ x3 = P.x * P.x * P.x;
    QQ X = (x3 + 4 * QQ(a)) / (P.x * P.x);
    QQ Y = P.y * (x3 - 8 * QQ(a)) / (x3);
    return checked(cod, PtQ{X, Y}, "phi_a");
}

PtQ phi_hat_rational(const ZZ& a, const PtQ& P) {
    CurveEq<QQ> dom = eq_type1(-27 * a), cod = eq_type1(a);
    if (!on_curve(dom, P)) throw invalid_input("phi_hat: point not on E_{-27a}");
    if (P.infinity || P.x == 0) return {};
    QQ x3 = P.x * P.x * P.x;
    QQ X = (x3 - 108 * QQ(a)) / (9 * P.x * P.x);
    QQ Y = P.y * (x3 + 216 * QQ(a)) / (27 * x3);
    return checked(cod, PtQ{X, Y}, "phi_hat_a");
}

PtK phi_K(const ZZ& a, const PtK& P) {
    CurveEq<KRat> E = eq_type1_K(a);
    if (!on_curve(E, P)) throw invalid_input("phi_K: point not on E_a");
    if (P.infinity || P.x.is_zero()) return {};
    KRat p2 = k_p() * k_p(), p3 = p2 * k_p();
    KRat x3 = P.x * P.x * P.x;
    KRat X = (x3 + KRat(ZZ(4 * a))) / (p2 * P.x * P.x);
    KRat Y = P.y * (x3 - KRat(ZZ(8 * a))) / (p3 * x3);
    return checked(E, PtK{X, Y}, "phi_K");
}

PtQ psi(const Curve2& E, const PtQ& P) {
    CurveEq<QQ> dom = eq_type2(E), cod = eq_type2_dual(E);
    if (!on_curve(dom, P)) throw invalid_input("psi: point not on E_{a,b}");
    if (P.infinity || P.x == 0) return {};
    QQ a(E.a), b(E.b);
    QQ x = P.x, x2 = x * x, x3 = x2 * x;
    QQ X = (9 * x3 + 12 * a * x2 - 36 * a * b * x + 36 * a * b * b) / x2;
    QQ Y = 27 * P.y * (x3 + 4 * a * b * x - 8 * a * b * b) / x3;
    return checked(cod, PtQ{X, Y}, "psi_ab");
}

PtQ psi_hat(const Curve2& E, const PtQ& P) {
    CurveEq<QQ> dom = eq_type2_dual(E), cod = eq_type2(E);
    if (!on_curve(dom, P)) throw invalid_input("psi_hat: point not on dual curve");
    if (P.infinity || P.x == 0) return {};
    QQ a(E.a), d(E.d());
    QQ x = P.x, x2 = x * x, x3 = x2 * x;
    QQ X = (x3 - 36 * a * x2 + 108 * a * d * x - 108 * a * d * d) / (81 * x2);
    QQ Y = P.y * (x3 - 108 * a * d * x + 216 * a * d * d) / (729 * x3);
    return checked(cod, PtQ{X, Y}, "psi_hat_ab");
}

PtK theta(const Curve2& E, const PtK& P) {
    CurveEq<KRat> dom = eq_type2_minimal(E), cod = lift(eq_type2_dual(E));
    if (!on_curve(dom, P)) throw invalid_input("theta: point not on minimal model");
    if (P.infinity) return {};
    KRat p = k_p(), p2 = p * p, p4 = p2 * p2, p6 = p4 * p2;
    KRat A(E.a);
    KRat X = p4 * P.x - A * p2 - A * p2 * p;
    KRat Y = p6 * P.y;
    return checked(cod, PtK{X, Y}, "theta");
}

PtK theta_inv(const Curve2& E, const PtK& P) {
    CurveEq<KRat> dom = lift(eq_type2_dual(E)), cod = eq_type2_minimal(E);
    if (!on_curve(dom, P)) throw invalid_input("theta_inv: point not on dual curve");
    if (P.infinity) return {};
    KRat p = k_p(), p2 = p * p;
    KRat A(E.a);
    KRat X = (P.x / p2 + A + A * p) / p2;
    KRat Y = P.y / KRat(QQ(-27));
    return checked(cod, PtK{X, Y}, "theta_inv");
}

PtK psi_normalized(const Curve2& E, const PtK& P) {
    CurveEq<KRat> dom = lift(eq_type2(E)), cod = eq_type2_minimal(E);
    if (!on_curve(dom, P)) throw invalid_input("psi_normalized: point not on E_{a,b}");
    if (P.infinity || P.x.is_zero()) return {};
    KRat a(E.a), b(E.b);
    KRat x = P.x, x2 = x * x, x3 = x2 * x;
    KRat four(QQ(4)), eight(QQ(8));
    KRat X = k_zeta() * (x3 + a * k_p() * x2 - four * a * b * x + four * a * b * b) / x2;
    KRat Y = -P.y * (x3 + four * a * b * x - eight * a * b * b) / x3;
    return checked(cod, PtK{X, Y}, "psi_normalized");
}

KummerImage kummer_image_type1(const ZZ& a, const PtQ& P) {
    if (a <= 0 || !is_square(a)) throw invalid_input("kummer image needs a rational square a");
    ZZ s = isqrt(a);
    if (!on_curve(eq_type1(a), P)) throw invalid_input("kummer image: point not on E_a");
    if (P.infinity) return {QQ(1), QQ(1)};
    QQ sq(s);
    if (P.x == 0 && P.y == sq) return {1 / (2 * sq), 2 * sq};
    if (P.x == 0 && P.y == -sq) return {-2 * sq, -1 / (2 * sq)};
    return {P.y - sq, P.y + sq};
}

}  // namespace sel3
