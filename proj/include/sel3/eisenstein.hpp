#ifndef SEL3_EISENSTEIN_HPP
#define SEL3_EISENSTEIN_HPP

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "sel3/zz.hpp"

namespace sel3 {

// element of Z[zeta], zeta a primitive cube root of unity, in the basis {1, zeta}
struct Eisenstein {
    ZZ c0, c1;

    Eisenstein() : c0(0), c1(0) {}
    Eisenstein(ZZ a, ZZ b) : c0(std::move(a)), c1(std::move(b)) {}

    bool operator==(const Eisenstein&) const = default;

    Eisenstein operator+(const Eisenstein& o) const { return {c0 + o.c0, c1 + o.c1}; }
    Eisenstein operator-(const Eisenstein& o) const { return {c0 - o.c0, c1 - o.c1}; }
    Eisenstein operator-() const { return {-c0, -c1}; }
    // (a + b z)(c + d z), z^2 = -1 - z
    Eisenstein operator*(const Eisenstein& o) const {
        return {c0 * o.c0 - c1 * o.c1, c0 * o.c1 + c1 * o.c0 - c1 * o.c1};
    }
    Eisenstein conj() const { return {c0 - c1, -c1}; }  // a + b z^2
    bool is_zero() const { return c0 == 0 && c1 == 0; }
    std::string str() const;
};

inline ZZ norm(const Eisenstein& z) { return z.c0 * z.c0 - z.c0 * z.c1 + z.c1 * z.c1; }

inline Eisenstein eis_zeta() { return {ZZ(0), ZZ(1)}; }
inline Eisenstein eis_p() { return {ZZ(1), ZZ(-1)}; }  // 1 - zeta, the prime over 3

enum class PrimeKind { Ramified, Inert, Split };

// a prime of K = Q(zeta) lying over the rational prime ell
struct KPrime {
    PrimeKind kind;
    ZZ ell;
    Eisenstein gen;  // 1-zeta / ell / pi_ell (conjugate for the second split prime)
    int conj = 0;    // split primes come in pairs (0: pi_ell, 1: its conjugate)

    ZZ residue_field_size() const {
        if (kind == PrimeKind::Ramified) return 3;
        if (kind == PrimeKind::Inert) return ell * ell;
        return ell;
    }
    bool operator==(const KPrime& o) const { return kind == o.kind && ell == o.ell && conj == o.conj; }
    bool operator<(const KPrime& o) const {
        if (ell != o.ell) return ell < o.ell;
        return conj < o.conj;
    }
    std::string str() const;  // "p3", "5", "7a", "7b"
};

// pi = m + n*zeta with norm ell, m = 1 (mod 3), n = 0 (mod 3); deterministic pick
Eisenstein split_prime(const ZZ& ell);

KPrime classify_prime(const ZZ& ell);

// both K-primes over ell (one entry unless split)
std::vector<KPrime> kprimes_above(const ZZ& ell);

// cubic residue symbol (x / pi)_3 in {1, zeta, zeta^2}, returned as the exponent 0/1/2
int cubic_residue_symbol(const ZZ& x, const Eisenstein& pi, const ZZ& ell);

// nonzero rational integer a a square in the completion K_q
bool is_square_in_Kq(const ZZ& a, const KPrime& q);

// normalized valuation: v_q(gen) = 1; on rationals this is v_ell at split/inert
// and 2*v_3 at the ramified prime
long k_valuation(const QQ& a, const KPrime& q);
inline long k_valuation(const ZZ& a, const KPrime& q) { return k_valuation(QQ(a), q); }

// rational integer a in K^{*2}, i.e. a = n^2 or a = -3 n^2
bool is_square_in_K(const ZZ& a);

}  // namespace sel3

#endif
