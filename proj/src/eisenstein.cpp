#include "sel3/eisenstein.hpp"

#include <algorithm>
#include <tuple>

namespace sel3 {

std::string Eisenstein::str() const {
    std::string s = c0.get_str();
    if (c1 != 0) {
        s += (c1 > 0 ? "+" : "-");
        ZZ a = abs(c1);
        if (a != 1) s += a.get_str() + "*";
        s += "zeta";
    }
    return s;
}

std::string KPrime::str() const {
    switch (kind) {
        case PrimeKind::Ramified: return "p3";
        case PrimeKind::Inert: return ell.get_str();
        case PrimeKind::Split: return ell.get_str() + (conj ? "b" : "a");
    }
    return "?";
}

Eisenstein split_prime(const ZZ& ell) {
    if (!is_prime(ell) || ell % 3 != 1)
        throw invalid_input("split_prime: need a prime = 1 (mod 3)");
    auto mod3 = [](const ZZ& x) {
        ZZ r = x % 3;
        if (r < 0) r += 3;
        return r;
    };
    // norm(m + n zeta) = m^2 - mn + n^2 = ell; m = (n +- sqrt(4 ell - 3 n^2)) / 2
    std::vector<std::tuple<ZZ, int, ZZ>> cands;  // (|n|, n<0, m) with payload reconstructible
    std::vector<std::pair<ZZ, ZZ>> found;        // (m, n)
    for (ZZ nn = 3;; nn += 3) {
        ZZ disc = 4 * ell - 3 * nn * nn;
        if (disc < 0) break;
        if (!is_square(disc)) continue;
        ZZ s = isqrt(disc);
        for (int nsign : {+1, -1}) {
            ZZ n = nsign > 0 ? nn : ZZ(-nn);
            for (int sign : {+1, -1}) {
                ZZ num = n + sign * s;
                if (num % 2 != 0) continue;
                ZZ m = num / 2;
                if (mod3(m) != 1) continue;
                if (m * m - m * n + n * n != ell) continue;
                found.emplace_back(m, n);
            }
        }
    }
    if (found.empty()) throw internal_error("split_prime: no representation found");
    std::sort(found.begin(), found.end(), [](const auto& x, const auto& y) {
        return std::make_tuple(abs(x.second), x.second < 0, x.first) <
               std::make_tuple(abs(y.second), y.second < 0, y.first);
    });
    return {found[0].first, found[0].second};
}

KPrime classify_prime(const ZZ& ell) {
    if (!is_prime(ell)) throw invalid_input("classify_prime: not prime");
    if (ell == 3) return {PrimeKind::Ramified, ell, eis_p(), 0};
    if (ell % 3 == 2) return {PrimeKind::Inert, ell, Eisenstein(ell, 0), 0};
    return {PrimeKind::Split, ell, split_prime(ell), 0};
}

std::vector<KPrime> kprimes_above(const ZZ& ell) {
    KPrime q = classify_prime(ell);
    if (q.kind != PrimeKind::Split) return {q};
    KPrime qc = q;
    qc.gen = q.gen.conj();
    qc.conj = 1;
    return {q, qc};
}

int cubic_residue_symbol(const ZZ& x, const Eisenstein& pi, const ZZ& ell) {
    if (!is_prime(ell) || ell % 3 != 1) throw invalid_input("cubic symbol: bad ell");
    if (norm(pi) != ell) throw invalid_input("cubic symbol: pi does not divide ell");
    if (x % ell == 0) throw invalid_input("cubic symbol: x divisible by ell");
    // residue field O_K/pi = F_ell; zeta maps to -m * n^{-1} for pi = m + n zeta
    ZZ n = pi.c1 % ell;
    if (n < 0) n += ell;
    ZZ zbar = (-pi.c0 * invmod(n, ell)) % ell;
    if (zbar < 0) zbar += ell;
    ZZ c = powmod(x % ell, (ell - 1) / 3, ell);
    if (c < 0) c += ell;
    if (c == 1) return 0;
    if (c == zbar) return 1;
    if (c == zbar * zbar % ell) return 2;
    throw internal_error("cubic symbol: value not a cube root of unity");
}

bool is_square_in_Kq(const ZZ& a, const KPrime& q) {
    if (a == 0) throw invalid_input("is_square_in_Kq(0)");
    switch (q.kind) {
        case PrimeKind::Split:
            return is_Qp_square(a, q.ell);
        case PrimeKind::Inert:
            if (q.ell == 2) return is_Qp_square(a, ZZ(2)) || is_Qp_square(-3 * a, ZZ(2));
            return valuation(a, q.ell) % 2 == 0;
        case PrimeKind::Ramified:
            return is_Qp_square(a, ZZ(3)) || is_Qp_square(-3 * a, ZZ(3));
    }
    return false;
}

long k_valuation(const QQ& a, const KPrime& q) {
    if (a == 0) throw invalid_input("k_valuation(0)");
    if (q.kind == PrimeKind::Ramified) return 2 * valuation(a, ZZ(3));
    return valuation(a, q.ell);
}

bool is_square_in_K(const ZZ& a) {
    if (a == 0) throw invalid_input("is_square_in_K(0)");
    if (a > 0 && is_square(a)) return true;
    if (a < 0) {
        ZZ m = -a;
        if (m % 3 == 0 && is_square(m / 3)) return true;
    }
    return false;
}

}  // namespace sel3
