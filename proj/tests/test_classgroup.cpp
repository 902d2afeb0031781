#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <random>

#include "sel3/classgroup.hpp"

using namespace sel3;

TEST_CASE("fundamental discriminants") {
    CHECK(fundamental_discriminant(ZZ(5)) == 5);
    CHECK(fundamental_discriminant(ZZ(-15)) == -15);
    CHECK(fundamental_discriminant(ZZ(2)) == 8);
    CHECK(fundamental_discriminant(ZZ(-1)) == -4);
    CHECK(fundamental_discriminant(ZZ(12)) == 12);   // core 3
    CHECK(fundamental_discriminant(ZZ(-4 * 237)) == -948);
    CHECK_THROWS_AS(fundamental_discriminant(ZZ(4)), invalid_input);
    CHECK_THROWS_AS(fundamental_discriminant(ZZ(0)), invalid_input);
}

TEST_CASE("small imaginary class groups") {
    CHECK(ClassGroup(-3).order() == 1);
    CHECK(ClassGroup(-4).order() == 1);
    ClassGroup g(-23);
    CHECK(g.order() == 3);
    CHECK(g.structure().invariant_factors == std::vector<long long>{3});
    CHECK(g.three_rank() == 1);
    CHECK(ClassGroup(-47).order() == 5);
    CHECK(ClassGroup(-71).order() == 7);
    ClassGroup g199(-199);
    CHECK(g199.order() == 9);
    CHECK(g199.structure().invariant_factors == std::vector<long long>{9});
    CHECK(g199.three_rank() == 1);
    ClassGroup g3896(-3896);
    CHECK(g3896.three_rank() == 2);
}

TEST_CASE("classical class-number anchors") {
    // the nine imaginary fields with h = 1 and the eighteen with h = 2
    for (long long D : {-3, -4, -7, -8, -11, -19, -43, -67, -163})
        CHECK(ClassGroup(D).order() == 1);
    for (long long D : {-15, -20, -24, -35, -40, -51, -52, -88, -91, -115, -123, -148, -187,
                        -232, -235, -267, -403, -427})
        CHECK(ClassGroup(D).order() == 2);
    CHECK(ClassGroup(-5460).order() == 16);  // largest D with exponent 2
}

TEST_CASE("small real (narrow) class groups") {
    CHECK(ClassGroup(5).order() == 1);
    CHECK(ClassGroup(8).order() == 1);
    CHECK(ClassGroup(12).order() == 2);   // N(eps) = +1 for Q(sqrt 3)
    CHECK(ClassGroup(40).order() == 2);
    CHECK(ClassGroup(60).order() == 4);   // h = 2, N(eps) = +1
    CHECK(ClassGroup(316).three_rank() == 1);  // Q(sqrt 79), h = 3
}

TEST_CASE("prime classes") {
    ClassGroup g(-23);
    auto pc = g.prime_class(ZZ(2));
    REQUIRE(pc.has_value());
    CHECK(g.element_order(*pc) == 3);
    CHECK(*pc == g.element_id({2, 1, 3}));
    auto above2 = prime_classes_above(g, ZZ(2));
    REQUIRE(above2.size() == 2);
    CHECK(above2[1] == g.inverse(above2[0]));
    CHECK(prime_classes_above(g, ZZ(5)) == std::vector<int>{g.identity()});
    CHECK(prime_classes_above(g, ZZ(23)).size() == 1);
    // inert prime: principal
    CHECK_FALSE(g.prime_class(ZZ(5)).has_value());  // (-23/5) = -1
    // ramified prime has 3-part trivial
    auto pr = g.prime_class(ZZ(23));
    REQUIRE(pr.has_value());
    CHECK(g.element_order(*pr) % 3 != 0);
}

TEST_CASE("s-class quotients") {
    ClassGroup g(-23);
    CHECK(g.s_class_three_rank({}) == 1);
    CHECK(g.s_class_three_rank({ZZ(2)}) == 0);   // the split 2 generates Cl
    CHECK(g.s_class_three_rank({ZZ(5)}) == 1);   // inert: principal
    CHECK(g.s_class_three_rank({ZZ(23)}) == 1);  // ramified: trivial 3-part
    // monotone in S
    std::vector<ZZ> accum;
    int prev = g.s_class_three_rank(accum);
    for (long l : {2L, 3L, 5L, 7L, 11L, 13L}) {
        accum.push_back(l);
        int now = g.s_class_three_rank(accum);
        CHECK(now <= prev);
        prev = now;
    }
}

TEST_CASE("group law sanity across fundamental discriminants up to 5000") {
    std::mt19937_64 rng(5);
    for (long long d = -5000; d <= 5000; ++d) {
        if (d == 0 || d == 1) continue;
        long long r = ((d % 4) + 4) % 4;
        if (r != 0 && r != 1) continue;
        ZZ core = squarefree_core(to_zz(d));
        long long D;
        try {
            D = fundamental_discriminant(core);
        } catch (...) {
            continue;
        }
        if (D != d) continue;  // only fundamental
        ClassGroup g(D);
        long long h = g.order();
        ZZ prod = 1;
        for (auto f : g.structure().invariant_factors) prod *= to_zz(f);
        CHECK(prod == to_zz(h));
        // generator orders match listed factors
        for (size_t i = 0; i < g.structure().invariant_factors.size(); ++i) {
            int id = g.element_id(g.structure().generators[i]);
            CHECK(g.element_order(id) == g.structure().invariant_factors[i]);
        }
        // spot associativity / inverse / identity
        std::uniform_int_distribution<int> pick(0, (int)h - 1);
        for (int t = 0; t < 5; ++t) {
            int x = pick(rng), y = pick(rng), z = pick(rng);
            CHECK(g.compose(g.compose(x, y), z) == g.compose(x, g.compose(y, z)));
            CHECK(g.compose(x, g.identity()) == x);
            CHECK(g.compose(x, g.inverse(x)) == g.identity());
        }
    }
}

TEST_CASE("scholz reflection for squarefree d up to 400") {
    // full range to 2000 runs in the acceptance suite
    ClassGroupProvider cg;
    for (long d = 2; d <= 400; ++d) {
        if (squarefree_core(ZZ(d)) != d) continue;
        int rplus = cg.three_rank(fundamental_discriminant(ZZ(d)));
        int rminus = cg.three_rank(fundamental_discriminant(ZZ(-3 * d)));
        CHECK(rplus <= rminus);
        CHECK(rminus <= rplus + 1);
    }
}

TEST_CASE("biquadratic three rank via the two quadratic pieces") {
    ClassGroupProvider cg;
    CHECK(cg.biquad_s_class_three_rank(ZZ(2), {}) == 0);
    CHECK(cg.biquad_s_class_three_rank(ZZ(359), {}) == 2);
    CHECK(cg.biquad_s_class_three_rank(ZZ(822), {}) == 1);
    CHECK(cg.biquad_s_class_three_rank(ZZ(79), {}) == 2);
    CHECK(cg.biquad_s_class_three_rank(ZZ(1373), {ZZ(2)}) == 2);
    CHECK(cg.biquad_s_class_three_rank(ZZ(5), {ZZ(2)}) == 0);
    CHECK_THROWS_AS(cg.biquad_s_class_three_rank(ZZ(16), {}), invalid_input);
    CHECK_THROWS_AS(cg.biquad_s_class_three_rank(ZZ(-12), {}), invalid_input);
}

namespace {

// brute-force oracle for the S-class 3-rank: enumerate the Sylow-3 subgroup,
// close the subgroup generated by the 3-parts of the prime classes, and read
// the quotient's 3-rank from #{x : x^3 in H}
int brute_s_class_three_rank(const ClassGroup& g, const std::vector<ZZ>& ells) {
    long long h = g.order();
    long long e3 = 1;
    while ((h / e3) % 3 == 0) e3 *= 3;
    ZZ m = to_zz(h) / to_zz(h / e3);  // h / 3^v3(h)
    m = to_zz(h / e3);
    std::set<int> syl;
    for (int i = 0; i < (int)h; ++i) syl.insert(g.power(i, m));
    std::set<int> H = {g.identity()};
    for (const ZZ& ell : ells) {
        auto pc = g.prime_class(ell);
        if (!pc) continue;
        int c3 = g.power(*pc, m);
        std::set<int> nxt = H;
        int acc = c3;
        while (!nxt.count(acc)) {
            std::set<int> grown;
            for (int x : nxt) grown.insert(g.compose(acc, x));
            nxt.insert(grown.begin(), grown.end());
            acc = g.compose(acc, c3);
        }
        H = nxt;
    }
    long long kern = 0;
    for (int x : syl)
        if (H.count(g.power(x, ZZ(3)))) ++kern;
    long long q3 = kern / (long long)H.size();
    int rank = 0;
    while (q3 > 1) {
        q3 /= 3;
        ++rank;
    }
    return rank;
}

}  // namespace

TEST_CASE("s-class quotient matches the brute-force subgroup oracle") {
    // fundamental discriminants with assorted 3-parts (rank 2, Z/9 factors)
    std::vector<long long> discs = {-23,   -199,  -3896, -3299, -4027, -1391, -1227,
                                    -971,  316,   2293,  5461,  -6583, -8751};
    std::vector<std::vector<ZZ>> sets = {
        {}, {ZZ(2)}, {ZZ(5)}, {ZZ(2), ZZ(5)}, {ZZ(7)}, {ZZ(2), ZZ(3)}, {ZZ(11), ZZ(13)}};
    for (long long D : discs) {
        ClassGroup g(D);
        for (auto& S : sets) {
            CHECK(g.s_class_three_rank(S) == brute_s_class_three_rank(g, S));
        }
    }
}

TEST_CASE("composition stress at a large discriminant") {
    ClassGroup g(-6359844);
    CHECK(g.three_rank() == 2);
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<int> pick(0, (int)g.order() - 1);
    for (int t = 0; t < 150; ++t) {
        int x = pick(rng), y = pick(rng), z = pick(rng);
        CHECK(g.compose(g.compose(x, y), z) == g.compose(x, g.compose(y, z)));
        CHECK(g.compose(x, g.inverse(x)) == g.identity());
    }
}

TEST_CASE("enumeration limit and bad discriminants") {
    CHECK_THROWS_AS(ClassGroup(-40000003LL), limit_exceeded);
    CHECK_THROWS_AS(ClassGroup(-972), invalid_input);   // 18^2 * (-3)
    CHECK_THROWS_AS(ClassGroup(-1228), invalid_input);  // 4m with m = 1 (mod 4)
    CHECK_THROWS_AS(ClassGroup(7), invalid_input);      // not a discriminant
    ClassGroupProvider cg(1000);
    CHECK_THROWS_AS(cg.three_rank(-1000003LL), limit_exceeded);
}

TEST_CASE("cache round trip") {
    std::string path = "/tmp/sel3_cache_test.tsv";
    std::remove(path.c_str());
    {
        ClassGroupProvider cg;
        cg.cache().set_path(path);
        CHECK(cg.three_rank(-23) == 1);
        CHECK(cg.three_rank(-199) == 1);
    }
    {
        ClassGroupProvider cg;
        cg.cache().set_path(path);
        auto fac = cg.cache().lookup(-23);
        REQUIRE(fac.has_value());
        CHECK(*fac == std::vector<long long>{3});
        CHECK(cg.three_rank(-199) == 1);
    }
    // corrupt line is skipped, then recomputed
    {
        FILE* f = fopen(path.c_str(), "a");
        fputs("-31\tbogus,\n", f);
        fclose(f);
        ClassGroupProvider cg;
        cg.cache().set_path(path);
        CHECK(cg.three_rank(-31) == 1);  // h(-31) = 3
    }
    std::remove(path.c_str());
}
