#ifndef SEL3_ZZ_HPP
#define SEL3_ZZ_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace sel3 {

using ZZ = mpz_class;
using QQ = mpq_class;

static_assert(sizeof(long) == 8, "LP64 platform assumed");
inline ZZ to_zz(long long v) { return ZZ(static_cast<long>(v)); }

struct invalid_input : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct limit_exceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct internal_error : std::logic_error {
    using std::logic_error::logic_error;
};

inline bool is_prime(const ZZ& n) {
    if (n < 2) return false;
    return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

inline bool is_square(const ZZ& n) {
    if (n < 0) return false;
    return mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

inline ZZ isqrt(const ZZ& n) {
    if (n < 0) throw invalid_input("isqrt of negative");
    ZZ r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

// largest e with p^e | n, for n != 0
inline long valuation(ZZ n, const ZZ& p) {
    if (n == 0) throw invalid_input("valuation of zero");
    long v = 0;
    ZZ q, r;
    for (;;) {
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
        if (r != 0) break;
        n = q;
        ++v;
    }
    return v;
}

inline long valuation(const QQ& x, const ZZ& p) {
    if (x == 0) throw invalid_input("valuation of zero");
    return valuation(ZZ(x.get_num()), p) - valuation(ZZ(x.get_den()), p);
}

inline ZZ powmod(const ZZ& b, const ZZ& e, const ZZ& m) {
    ZZ r;
    mpz_powm(r.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
    return r;
}

inline ZZ invmod(const ZZ& a, const ZZ& m) {
    ZZ r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
        throw invalid_input("not invertible");
    return r;
}

inline int legendre(const ZZ& a, const ZZ& p) { return mpz_legendre(a.get_mpz_t(), p.get_mpz_t()); }
inline int kronecker(const ZZ& a, const ZZ& n) { return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t()); }

// nonzero a is a square in Q_p
inline bool is_Qp_square(const ZZ& a, const ZZ& p) {
    if (a == 0) throw invalid_input("is_Qp_square of zero");
    long v = valuation(a, p);
    if (v % 2 != 0) return false;
    ZZ u = a;
    ZZ pe;
    mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), v);
    u /= pe;
    if (p == 2) return mpz_fdiv_ui(u.get_mpz_t(), 8) == 1;
    return legendre(u, p) == 1;
}

std::vector<std::pair<ZZ, int>> factor(ZZ n);   // |n| >= 1; sign dropped
ZZ squarefree_core(const ZZ& n);                // sign-preserving squarefree part
ZZ sixth_power_free(const ZZ& n);               // divide out p^6 for every prime

// primes <= n, simple sieve
std::vector<long> primes_up_to(long n);

// square root of a mod odd prime p, a a QR; Tonelli-Shanks
ZZ sqrt_mod(const ZZ& a, const ZZ& p);

}  // namespace sel3

#endif
