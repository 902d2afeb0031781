#ifndef SEL3_CURVES_HPP
#define SEL3_CURVES_HPP

#include <optional>
#include <string>

#include "sel3/eisenstein.hpp"
#include "sel3/zz.hpp"

namespace sel3 {

// element of K = Q(zeta) as c0 + c1*zeta with rational coordinates
struct KRat {
    QQ c0, c1;

    KRat() : c0(0), c1(0) {}
    KRat(QQ a, QQ b) : c0(std::move(a)), c1(std::move(b)) { canon(); }
    explicit KRat(const QQ& a) : c0(a), c1(0) {}
    explicit KRat(const ZZ& a) : c0(a), c1(0) {}
    explicit KRat(long a) : c0(a), c1(0) {}
    KRat(const Eisenstein& z) : c0(QQ(z.c0)), c1(QQ(z.c1)) {}

    void canon() {
        c0.canonicalize();
        c1.canonicalize();
    }
    bool operator==(const KRat&) const = default;
    bool is_zero() const { return c0 == 0 && c1 == 0; }
    bool is_rational() const { return c1 == 0; }

    KRat operator+(const KRat& o) const { return {c0 + o.c0, c1 + o.c1}; }
    KRat operator-(const KRat& o) const { return {c0 - o.c0, c1 - o.c1}; }
    KRat operator-() const { return {-c0, -c1}; }
    KRat operator*(const KRat& o) const {
        return {c0 * o.c0 - c1 * o.c1, c0 * o.c1 + c1 * o.c0 - c1 * o.c1};
    }
    KRat conj() const { return {c0 - c1, -c1}; }
    QQ norm_to_Q() const { return c0 * c0 - c0 * c1 + c1 * c1; }
    KRat inv() const {
        if (is_zero()) throw invalid_input("division by zero in K");
        KRat cj = conj();
        QQ n = norm_to_Q();
        return {cj.c0 / n, cj.c1 / n};
    }
    KRat operator/(const KRat& o) const { return *this * o.inv(); }
    // canonical fraction (n0 + n1 zeta)/den with den > 0, gcd(n0, n1, den) = 1
    std::pair<Eisenstein, ZZ> as_fraction() const;
    std::string str() const;
};

inline KRat k_zeta() { return {QQ(0), QQ(1)}; }
inline KRat k_p() { return {QQ(1), QQ(-1)}; }  // 1 - zeta

// y^2 = x^3 + A x^2 + B x + C over F (QQ or KRat)
template <class F>
struct CurveEq {
    F A{}, B{}, C{};
    bool operator==(const CurveEq&) const = default;
};

template <class F>
struct Pt {
    bool infinity = true;
    F x{}, y{};
    Pt() = default;
    Pt(F xx, F yy) : infinity(false), x(std::move(xx)), y(std::move(yy)) {}
    bool operator==(const Pt&) const = default;
};

template <class F>
bool on_curve(const CurveEq<F>& E, const Pt<F>& P) {
    if (P.infinity) return true;
    F rhs = ((P.x + E.A) * P.x + E.B) * P.x + E.C;
    return P.y * P.y == rhs;
}

template <class F>
Pt<F> add_points(const CurveEq<F>& E, const Pt<F>& P, const Pt<F>& Q) {
    if (!on_curve(E, P) || !on_curve(E, Q)) throw invalid_input("point not on curve");
    if (P.infinity) return Q;
    if (Q.infinity) return P;
    F lam;
    if (P.x == Q.x) {
        if (P.y == -Q.y) return {};
        F num = F(3) * P.x * P.x + F(2) * E.A * P.x + E.B;
        lam = num / (F(2) * P.y);
    } else {
        lam = (Q.y - P.y) / (Q.x - P.x);
    }
    F x3 = lam * lam - E.A - P.x - Q.x;
    F y3 = lam * (P.x - x3) - P.y;
    return {x3, y3};
}

template <class F>
Pt<F> negate_point(const Pt<F>& P) {
    if (P.infinity) return P;
    return {P.x, -P.y};
}

template <class F>
Pt<F> scalar_mul(const CurveEq<F>& E, ZZ n, Pt<F> P) {
    if (n < 0) {
        n = -n;
        P = negate_point(P);
    }
    Pt<F> acc;
    while (n > 0) {
        if (mpz_odd_p(n.get_mpz_t())) acc = add_points(E, acc, P);
        n >>= 1;
        if (n > 0) P = add_points(E, P, P);
    }
    return acc;
}

using PtQ = Pt<QQ>;
using PtK = Pt<KRat>;

// normal forms ------------------------------------------------------------

struct Curve1 {
    ZZ a;  // y^2 = x^3 + a, sixth-power free over K (v_l <= 5, v_3 <= 2)
};

// sixth-power reduction over K: divide rational sixth powers, then a /(-27)
// while 27 | a
Curve1 normalize_type1(const ZZ& a);
// divide rational sixth powers only (the Q-normal form)
ZZ normalize_type1_Q(const ZZ& a);

struct Curve2 {
    ZZ a, b;  // y^2 = x^3 + a(x-b)^2
    ZZ d() const { return 4 * a + 27 * b; }
};

Curve2 make_curve2(const ZZ& a, const ZZ& b);  // validates ab(4a+27b) != 0, gcd conditions

inline CurveEq<QQ> eq_type1(const ZZ& a) { return {QQ(0), QQ(0), QQ(a)}; }
inline CurveEq<QQ> eq_type2(const Curve2& E) {
    return {QQ(E.a), QQ(-2 * E.a * E.b), QQ(E.a * E.b * E.b)};
}
inline CurveEq<KRat> eq_type1_K(const ZZ& a) { return {KRat(0L), KRat(0L), KRat(a)}; }
// y^2 = x^3 - 27 a (x - d)^2, the codomain of psi_{a,b}
inline CurveEq<QQ> eq_type2_dual(const Curve2& E) {
    ZZ d = E.d();
    return {QQ(-27 * E.a), QQ(54 * E.a * d), QQ(-27 * E.a * d * d)};
}
// p-minimal model E2 of the dual curve, defined over K
CurveEq<KRat> eq_type2_minimal(const Curve2& E);

// isogenies ---------------------------------------------------------------

// phi_a : E_a -> E_{-27a}
PtQ phi_rational(const ZZ& a, const PtQ& P);
// dual phi^_a : E_{-27a} -> E_a
PtQ phi_hat_rational(const ZZ& a, const PtQ& P);
// phi : E_a -> E_a over K (using p = 1 - zeta)
PtK phi_K(const ZZ& a, const PtK& P);
// psi_{a,b} : E_{a,b} -> E_{-27a, 4a+27b}
PtQ psi(const Curve2& E, const PtQ& P);
// dual psi^_{a,b} : E_{-27a,4a+27b} -> E_{a,b}
PtQ psi_hat(const Curve2& E, const PtQ& P);
// theta : E2 -> E_{-27a,d}, a K-isomorphism, and its inverse
PtK theta(const Curve2& E, const PtK& P);
PtK theta_inv(const Curve2& E, const PtK& P);
// Psi_{a,b} = theta^{-1} o psi_{a,b} : E_{a,b} -> E2
PtK psi_normalized(const Curve2& E, const PtK& P);

// Kummer map for E_a with a = s^2 a rational square: the pair (t1, t2)
struct KummerImage {
    QQ t1, t2;
};
KummerImage kummer_image_type1(const ZZ& a, const PtQ& P);

}  // namespace sel3

#endif
