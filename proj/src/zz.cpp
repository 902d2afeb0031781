#include "sel3/zz.hpp"

#include <algorithm>
#include <map>

namespace sel3 {

std::vector<long> primes_up_to(long n) {
    std::vector<long> out;
    if (n < 2) return out;
    std::vector<bool> comp(n + 1, false);
    for (long i = 2; i <= n; ++i) {
        if (comp[i]) continue;
        out.push_back(i);
        for (long j = 2 * i; j <= n; j += i) comp[j] = true;
    }
    return out;
}

namespace {

ZZ pollard_brent(const ZZ& n) {
    // Brent's cycle variant; n odd composite, not a prime power issue handled by caller loop
    gmp_randclass rng(gmp_randinit_default);
    rng.seed(0xC0FFEEuL);
    for (;;) {
        ZZ y = rng.get_z_range(n - 3) + 2;
        ZZ c = rng.get_z_range(n - 3) + 1;
        ZZ x, q = 1, g = 1, ys;
        long r = 1, m = 128;
        auto f = [&](const ZZ& v) { return (v * v + c) % n; };
        while (g == 1) {
            x = y;
            for (long i = 0; i < r; ++i) y = f(y);
            long k = 0;
            while (k < r && g == 1) {
                ys = y;
                long lim = std::min(m, r - k);
                for (long i = 0; i < lim; ++i) {
                    y = f(y);
                    q = q * (x - y) % n;
                }
                mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
                k += lim;
            }
            r *= 2;
        }
        if (g == n) {
            do {
                ys = f(ys);
                ZZ d = x - ys;
                mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

void factor_rec(const ZZ& n, std::map<ZZ, int>& acc) {
    if (n == 1) return;
    if (is_prime(n)) {
        acc[n]++;
        return;
    }
    ZZ d = pollard_brent(n);
    factor_rec(d, acc);
    factor_rec(n / d, acc);
}

}  // namespace

std::vector<std::pair<ZZ, int>> factor(ZZ n) {
    if (n == 0) throw invalid_input("factor(0)");
    if (n < 0) n = -n;
    std::map<ZZ, int> acc;
    static const std::vector<long> small = primes_up_to(100000);
    for (long p : small) {
        if (n == 1) break;
        ZZ zp(p);
        if (zp * zp > n) break;
        while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            acc[zp]++;
            n /= p;
        }
    }
    if (n > 1) {
        if (is_prime(n))
            acc[n]++;
        else
            factor_rec(n, acc);
    }
    return {acc.begin(), acc.end()};
}

ZZ squarefree_core(const ZZ& n) {
    if (n == 0) throw invalid_input("squarefree_core(0)");
    ZZ core = n < 0 ? -1 : 1;
    for (auto& [p, e] : factor(n))
        if (e % 2) core *= p;
    return core;
}

ZZ sixth_power_free(const ZZ& n) {
    if (n == 0) throw invalid_input("sixth_power_free(0)");
    ZZ out = n < 0 ? -1 : 1;
    for (auto& [p, e] : factor(n)) {
        ZZ pe;
        mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e % 6);
        out *= pe;
    }
    return out;
}

ZZ sqrt_mod(const ZZ& a0, const ZZ& p) {
    ZZ a = a0 % p;
    if (a < 0) a += p;
    if (a == 0) return 0;
    if (p == 2) return a;
    if (legendre(a, p) != 1) throw invalid_input("sqrt_mod: not a residue");
    if (p % 4 == 3) return powmod(a, (p + 1) / 4, p);
    // Tonelli-Shanks
    ZZ q = p - 1;
    long s = 0;
    while (q % 2 == 0) {
        q /= 2;
        ++s;
    }
    ZZ z = 2;
    while (legendre(z, p) != -1) ++z;
    ZZ m = s, c = powmod(z, q, p), t = powmod(a, q, p), r = powmod(a, (q + 1) / 2, p);
    while (t != 1) {
        long i = 0;
        ZZ tt = t;
        while (tt != 1) {
            tt = tt * tt % p;
            ++i;
        }
        ZZ b = c;
        for (long j = 0; j < m.get_si() - i - 1; ++j) b = b * b % p;
        m = i;
        c = b * b % p;
        t = t * c % p;
        r = r * b % p;
    }
    return r;
}

}  // namespace sel3
