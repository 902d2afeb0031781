#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "sel3/curves.hpp"

using namespace sel3;

TEST_CASE("K arithmetic") {
    KRat z = k_zeta();
    CHECK(z * z + z + KRat(1L) == KRat(0L));
    KRat p = k_p();
    CHECK(p * p == KRat(QQ(0), QQ(-3)));            // p^2 = -3 zeta
    KRat p6 = p * p * p * p * p * p;
    CHECK(p6 == KRat(QQ(-27)));                     // p^6 = -27
    KRat x{QQ(5), QQ(11)};
    CHECK(x * x.inv() == KRat(1L));
    CHECK(x.conj().norm_to_Q() == x.norm_to_Q());
    auto [num, den] = KRat(QQ(10, 4), QQ(-3, 6)).as_fraction();
    CHECK(num == Eisenstein{5, -1});
    CHECK(den == 2);
    auto [n2, d2] = KRat(QQ(-1, 2), QQ(0)).as_fraction();
    CHECK(d2 == 2);
    CHECK(n2 == Eisenstein{-1, 0});
}

TEST_CASE("normalize_type1") {
    CHECK(normalize_type1(ZZ(64 * 5)).a == 5);
    CHECK(normalize_type1(ZZ(1458)).a == 2);   // 729*2 -> /(-27) twice
    CHECK(normalize_type1(ZZ(7)).a == 7);
    CHECK(normalize_type1(ZZ(27)).a == -1);
    CHECK(normalize_type1(ZZ(-27)).a == 1);
    CHECK_THROWS_AS(normalize_type1(ZZ(0)), invalid_input);
    // invariants: v_l <= 5 away from 3, v_3 <= 2
    for (long a = -2000; a <= 2000; ++a) {
        if (a == 0) continue;
        ZZ v = normalize_type1(ZZ(a)).a;
        for (auto& [p, e] : factor(v)) CHECK(e <= (p == 3 ? 2 : 5));
    }
}

TEST_CASE("group law anchors") {
    CurveEq<QQ> E2 = eq_type1(ZZ(2));
    PtQ P{QQ(-1), QQ(1)};
    CHECK(on_curve(E2, P));
    CHECK(add_points(E2, P, PtQ{}) == P);
    PtQ threeP = scalar_mul(E2, ZZ(3), P);
    CHECK(threeP.x == QQ(127, 441));

    Curve2 E51 = make_curve2(ZZ(5), ZZ(1));
    CurveEq<QQ> Eab = eq_type2(E51);
    PtQ Q{QQ(1), QQ(1)};
    CHECK(on_curve(Eab, Q));
    CHECK(scalar_mul(Eab, ZZ(3), Q).x == QQ(41, 529));

    CHECK_THROWS_AS(add_points(E2, PtQ{QQ(1), QQ(1)}, P), invalid_input);  // off curve
}

TEST_CASE("phi and its dual") {
    PtQ P{QQ(-1), QQ(1)};
    PtQ img = phi_rational(ZZ(2), P);
    CHECK(img == PtQ{QQ(7), QQ(17)});
    // kernel goes to infinity
    CHECK(phi_rational(ZZ(16), PtQ{QQ(0), QQ(4)}).infinity);
    // phi_hat o phi = [3]
    CHECK(phi_hat_rational(ZZ(2), img) == scalar_mul(eq_type1(ZZ(2)), ZZ(3), P));
}

TEST_CASE("phi_hat o phi = [3] on sample points") {
    int seen = 0;
    for (long a = -20; a <= 20 && seen < 25; ++a) {
        if (a == 0) continue;
        CurveEq<QQ> E = eq_type1(ZZ(a));
        for (long x = -20; x <= 50 && seen < 25; ++x) {
            if (x == 0) continue;
            ZZ rhs = ZZ(x) * x * x + a;
            if (rhs <= 0 || !is_square(rhs)) continue;
            PtQ P{QQ(x), QQ(isqrt(rhs))};
            PtQ lhs = phi_hat_rational(ZZ(a), phi_rational(ZZ(a), P));
            PtQ threeP = scalar_mul(E, ZZ(3), P);
            CHECK(lhs == threeP);
            ++seen;
        }
    }
    CHECK(seen >= 20);
}

TEST_CASE("psi anchors and psi_hat o psi = [3]") {
    Curve2 E = make_curve2(ZZ(5), ZZ(1));
    PtQ P{QQ(1), QQ(1)};
    PtQ img = psi(E, P);
    CHECK(img == PtQ{QQ(69), QQ(-513)});
    PtQ back = psi_hat(E, img);
    CHECK(back == scalar_mul(eq_type2(E), ZZ(3), P));
    CHECK(back.x == QQ(41, 529));
    CHECK(psi(E, PtQ{}).infinity);
}

TEST_CASE("theta is a bijection compatible with psi") {
    Curve2 E = make_curve2(ZZ(5), ZZ(1));
    // anchor: Psi(1,1) = (5+11z, 19) and theta carries it to psi(1,1) = (69,-513)
    PtK Pk{KRat(QQ(1)), KRat(QQ(1))};
    PtK n = psi_normalized(E, Pk);
    CHECK(n == PtK{KRat(QQ(5), QQ(11)), KRat(QQ(19))});
    PtK t = theta(E, n);
    CHECK(t == PtK{KRat(QQ(69)), KRat(QQ(-513))});
    CHECK(theta_inv(E, t) == n);

    // theta o theta_inv = id and psi = theta o psi_normalized on more points
    std::vector<std::pair<ZZ, ZZ>> curves = {
        {ZZ(5), ZZ(1)},   {ZZ(-6), ZZ(1)}, {ZZ(2), ZZ(3)},  {ZZ(79), ZZ(79)},
        {ZZ(7), ZZ(2)},   {ZZ(3), ZZ(5)},  {ZZ(10), ZZ(3)}, {ZZ(-2), ZZ(5)},
        {ZZ(6), ZZ(1)},   {ZZ(1), ZZ(3)},  {ZZ(17), ZZ(2)}, {ZZ(5), ZZ(4)},
        {ZZ(-7), ZZ(1)},  {ZZ(4), ZZ(1)},  {ZZ(9), ZZ(2)},  {ZZ(25), ZZ(10)}};
    int seen = 0;
    for (auto& [a, b] : curves) {
        Curve2 C = make_curve2(a, b);
        CurveEq<QQ> eq = eq_type2(C);
        for (long x = -60; x <= 120; ++x) {
            if (x == 0) continue;
            QQ rhs = ((QQ(x) + eq.A) * x + eq.B) * x + eq.C;
            if (rhs <= 0) continue;
            ZZ num = rhs.get_num();
            if (!is_square(num)) continue;
            PtQ P{QQ(x), QQ(isqrt(num))};
            PtK PK{KRat(P.x), KRat(P.y)};
            PtK viaTheta = theta(C, psi_normalized(C, PK));
            PtQ direct = psi(C, P);
            CHECK(viaTheta == PtK{KRat(direct.x), KRat(direct.y)});
            CHECK(theta_inv(C, viaTheta) == psi_normalized(C, PK));
            ++seen;
        }
    }
    CHECK(seen >= 8);
}

TEST_CASE("phi over K") {
    // E_2, (-1,1) -> (-7 zeta^2/3, y) with y^2 = x^3 + 2
    PtK P{KRat(QQ(-1)), KRat(QQ(1))};
    PtK img = phi_K(ZZ(2), P);
    CHECK(img.x == KRat(QQ(7, 3), QQ(7, 3)));  // -7 zeta^2/3 = 7/3 + (7/3) zeta
    CHECK(on_curve(eq_type1_K(ZZ(2)), img));
    KRat x3 = img.x * img.x * img.x;
    CHECK(x3 + KRat(QQ(2)) == KRat(QQ(-289, 27)));

    // composition: x(phi(phi(P))) = zeta * x([3]P)
    PtK img2 = phi_K(ZZ(2), img);
    CurveEq<KRat> EK = eq_type1_K(ZZ(2));
    PtK threeP = scalar_mul(EK, ZZ(3), P);
    CHECK(img2.x == k_zeta() * threeP.x);
}

TEST_CASE("kummer images") {
    // a = 16 l^2, P = (0, 4l) -> (1/(8l), 8l)
    ZZ l(5), a = 16 * l * l;
    auto im = kummer_image_type1(a, PtQ{QQ(0), QQ(4 * l)});
    CHECK(im.t1 == QQ(1, 40));
    CHECK(im.t2 == QQ(40));
    auto im2 = kummer_image_type1(l * l, PtQ{QQ(0), QQ(l)});
    CHECK(im2.t1 == QQ(1, 10));
    CHECK(im2.t2 == QQ(10));
    auto im3 = kummer_image_type1(a, PtQ{});
    CHECK(im3.t1 == 1);
    CHECK(im3.t2 == 1);
    // t1 t2 = x(P)^3 for non-torsion affine P
    for (long x = 1; x <= 60; ++x) {
        ZZ rhs = ZZ(x) * x * x + 16;
        if (!is_square(rhs)) continue;
        PtQ P{QQ(x), QQ(isqrt(rhs))};
        auto k = kummer_image_type1(ZZ(16), P);
        CHECK(k.t1 * k.t2 == P.x * P.x * P.x);
    }
    CHECK_THROWS_AS(kummer_image_type1(ZZ(2), PtQ{}), invalid_input);
}

TEST_CASE("curve2 validation") {
    CHECK_THROWS_AS(make_curve2(ZZ(0), ZZ(1)), invalid_input);
    CHECK_THROWS_AS(make_curve2(ZZ(1), ZZ(0)), invalid_input);
    CHECK_THROWS_AS(make_curve2(ZZ(-27), ZZ(4)), invalid_input);  // 4a+27b = 0
    CHECK_THROWS_AS(make_curve2(ZZ(4), ZZ(8)), invalid_input);    // gcd not squarefree
    CHECK(make_curve2(ZZ(79), ZZ(131)).d() == 3853);
}
