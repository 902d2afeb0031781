#ifndef SEL3_CLASSGROUP_HPP
#define SEL3_CLASSGROUP_HPP

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "sel3/zz.hpp"

namespace sel3 {

struct QuadForm {
    long long a = 0, b = 0, c = 0;
    auto operator<=>(const QuadForm&) const = default;
};

struct AbelianGroupStructure {
    std::vector<long long> invariant_factors;  // ascending divisibility d1 | d2 | ...
    std::vector<QuadForm> generators;          // generators[i] has order invariant_factors[i]
};

// disc of Q(sqrt(d)); throws on perfect-square d
long long fundamental_discriminant(const ZZ& d);

// form class group of a fundamental discriminant (narrow for D > 0)
class ClassGroup {
public:
    static constexpr long long kDefaultDiscLimit = 25000000;  // |D| cap for enumeration

    explicit ClassGroup(long long D, long long disc_limit = kDefaultDiscLimit);

    long long disc() const { return D_; }
    long long order() const { return (long long)reps_.size(); }
    int identity() const { return id_; }

    int compose(int i, int j) const;
    int inverse(int i) const;
    int power(int i, ZZ e) const;
    long long element_order(int i) const;

    QuadForm rep(int i) const { return reps_[i]; }
    int element_id(const QuadForm& f) const { return lookup(reduced(f)); }

    const AbelianGroupStructure& structure() const { return struct_; }
    int three_rank() const;

    // class of a prime ideal over ell: split/ramified -> element id; inert -> nullopt
    std::optional<int> prime_class(const ZZ& ell) const;

    // Sylow-3 basis orders 3^{f_1} >= 3^{f_2} >= ... (empty when 3 does not divide h)
    const std::vector<long long>& sylow3_orders() const { return syl3_orders_; }
    // exponent vector of the 3-part of element i w.r.t. the Sylow-3 basis
    std::vector<long long> dlog3(int i) const;

    // 3-rank of Cl(D) / <classes of all primes over each listed ell>
    int s_class_three_rank(const std::vector<ZZ>& ells) const;

    // number of primes of Q(sqrt(D)) over ell (2 split, 1 otherwise)
    static int primes_above_count(long long D, const ZZ& ell);

private:
    long long D_;
    bool imaginary_;
    ZZ sqrtD_;  // floor(sqrt(D)) for D > 0
    std::vector<QuadForm> reps_;
    std::map<QuadForm, int> index_;  // every reduced form -> element id
    int id_ = 0;
    AbelianGroupStructure struct_;

    std::vector<long long> syl3_orders_;          // descending
    std::map<int, std::vector<long long>> dlog3_;  // Sylow-3 element -> basis exponents
    ZZ to3_;                                       // exponent projecting onto the 3-part

    void enumerate();
    void compute_structure();
    QuadForm reduced(QuadForm f) const;
    int lookup(const QuadForm& f) const;
};

// classes of the primes of Q(sqrt D) over ell: split -> {class, inverse},
// ramified -> {class}, inert -> {identity}
std::vector<int> prime_classes_above(const ClassGroup& g, const ZZ& ell);

// file-backed cache of invariant factors, "D<TAB>f1,f2,..." per line
class ClassNumberCache {
public:
    ClassNumberCache() = default;
    void set_path(std::string path);
    std::optional<std::vector<long long>> lookup(long long D);
    void store(long long D, const std::vector<long long>& factors);

private:
    std::string path_;
    bool loaded_ = false;
    std::map<long long, std::vector<long long>> mem_;
    std::mutex mu_;
    void load_locked();
};

// shared provider: memoizes groups in-process, consults the factor cache for
// rank-only queries
class ClassGroupProvider {
public:
    explicit ClassGroupProvider(long long disc_limit = ClassGroup::kDefaultDiscLimit)
        : disc_limit_(disc_limit) {}

    void set_disc_limit(long long v) { disc_limit_ = v; }
    long long disc_limit() const { return disc_limit_; }
    ClassNumberCache& cache() { return cache_; }

    std::shared_ptr<const ClassGroup> group(long long D);
    int three_rank(long long D);  // cache-assisted
    // 3-rank of the S-class group of Q(sqrt(core d)), S = primes over the given ells
    int quad_s_class_three_rank(const ZZ& d, const std::vector<ZZ>& ells);
    // h^3 of the S-class group of L = Q(zeta, sqrt(a)) via the two quadratic pieces;
    // requires a not in K^{*2}
    int biquad_s_class_three_rank(const ZZ& a, const std::vector<ZZ>& residue_chars);

private:
    long long disc_limit_;
    ClassNumberCache cache_;
    std::map<long long, std::shared_ptr<const ClassGroup>> groups_;
    std::mutex mu_;
};

}  // namespace sel3

#endif
