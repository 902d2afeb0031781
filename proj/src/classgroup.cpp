#include "sel3/classgroup.hpp"

#include "sel3/eisenstein.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace sel3 {

long long fundamental_discriminant(const ZZ& d) {
    if (d == 0) throw invalid_input("fundamental_discriminant(0)");
    ZZ core = squarefree_core(d);
    if (core == 1) throw invalid_input("fundamental_discriminant: d is a perfect square");
    ZZ D = core;
    ZZ r = core % 4;
    if (r < 0) r += 4;
    if (r != 1) D = 4 * core;
    if (!D.fits_slong_p()) throw limit_exceeded("discriminant does not fit a machine word");
    return D.get_si();
}

namespace {

using Mat = std::vector<std::vector<ZZ>>;

Mat identity_mat(size_t n) {
    Mat I(n, std::vector<ZZ>(n, 0));
    for (size_t i = 0; i < n; ++i) I[i][i] = 1;
    return I;
}

// Smith normal form. Returns min(rows,cols) diagonal entries d1 | d2 | ...
// (zeros possible at the tail). If V/W given (cols x cols), tracks the column
// transform V (and W = V^{-1}) with U M V diagonal. For generators g with
// relation lattice spanned by the rows of M, the diagonalizing basis is
// h_j = prod_i g_i^{W[j][i]} and exponent vectors transform by w = V^T v.
std::vector<ZZ> smith_normal_form(Mat M, size_t cols, Mat* V, Mat* W) {
    size_t rows = M.size();
    if (V) *V = identity_mat(cols);
    if (W) *W = identity_mat(cols);
    auto col_swap = [&](size_t j1, size_t j2) {
        for (auto& row : M) std::swap(row[j1], row[j2]);
        if (V)
            for (size_t i = 0; i < cols; ++i) std::swap((*V)[i][j1], (*V)[i][j2]);
        if (W) std::swap((*W)[j1], (*W)[j2]);
    };
    auto col_addmul = [&](size_t jdst, size_t jsrc, const ZZ& q) {
        // col_jdst += q * col_jsrc
        for (auto& row : M) row[jdst] += q * row[jsrc];
        if (V)
            for (size_t i = 0; i < cols; ++i) (*V)[i][jdst] += q * (*V)[i][jsrc];
        if (W)
            for (size_t j = 0; j < cols; ++j) (*W)[jsrc][j] -= q * (*W)[jdst][j];
    };
    size_t n = std::min(rows, cols);
    for (size_t t = 0; t < n; ++t) {
        for (;;) {
            // locate a pivot of minimal absolute value
            size_t pi = t, pj = t;
            bool found = false;
            for (size_t i = t; i < rows; ++i)
                for (size_t j = t; j < cols; ++j)
                    if (M[i][j] != 0 && (!found || abs(M[i][j]) < abs(M[pi][pj]))) {
                        pi = i;
                        pj = j;
                        found = true;
                    }
            if (!found) return [&] {
                std::vector<ZZ> d(n, 0);
                for (size_t k = 0; k < t; ++k) d[k] = M[k][k];
                return d;
            }();
            if (pi != t) std::swap(M[pi], M[t]);
            if (pj != t) col_swap(pj, t);
            bool clean = true;
            for (size_t i = t + 1; i < rows; ++i) {
                if (M[i][t] == 0) continue;
                ZZ q;
                mpz_fdiv_q(q.get_mpz_t(), M[i][t].get_mpz_t(), M[t][t].get_mpz_t());
                for (size_t j = t; j < cols; ++j) M[i][j] -= q * M[t][j];
                if (M[i][t] != 0) clean = false;
            }
            for (size_t j = t + 1; j < cols; ++j) {
                if (M[t][j] == 0) continue;
                ZZ q;
                mpz_fdiv_q(q.get_mpz_t(), M[t][j].get_mpz_t(), M[t][t].get_mpz_t());
                col_addmul(j, t, -q);
                if (M[t][j] != 0) clean = false;
            }
            if (!clean) continue;
            // divisibility fix: pivot must divide the remaining block
            bool fixed = true;
            for (size_t i = t + 1; i < rows && fixed; ++i)
                for (size_t j = t + 1; j < cols && fixed; ++j)
                    if (M[i][j] % M[t][t] != 0) {
                        for (size_t jj = t; jj < cols; ++jj) M[t][jj] += M[i][jj];
                        fixed = false;
                    }
            if (fixed) break;
        }
        if (M[t][t] < 0) {
            for (size_t j = t; j < cols; ++j) M[t][j] = -M[t][j];
        }
    }
    std::vector<ZZ> d(n);
    for (size_t k = 0; k < n; ++k) d[k] = M[k][k];
    return d;
}

}  // namespace

// ---------------------------------------------------------------------------
// form reduction and composition
// ---------------------------------------------------------------------------

namespace {

struct ZForm {
    ZZ a, b, c;
};

ZZ form_disc(const ZForm& f) { return f.b * f.b - 4 * f.a * f.c; }

ZForm reduce_definite(ZForm f) {
    for (;;) {
        // normalize b into (-a, a]
        ZZ twoa = 2 * f.a;
        ZZ r = f.b % twoa;
        if (r < 0) r += twoa;       // r in [0, 2a)
        if (r > f.a) r -= twoa;     // r in (-a, a]
        if (r != f.b) {
            f.c = f.c + ((r * r - f.b * f.b) / (4 * f.a));
            f.b = r;
        }
        if (f.a > f.c) {
            f = {f.c, -f.b, f.a};
            continue;
        }
        break;
    }
    if (f.a == f.c && f.b < 0) f.b = -f.b;
    return f;
}

bool indefinite_reduced(const ZForm& f, const ZZ& s) {
    if (f.b <= 0 || f.b > s) return false;
    ZZ a2 = 2 * abs(f.a);
    if (a2 <= s) return f.b > s - a2;
    return a2 <= f.b + s;
}

ZForm rho_step(const ZForm& f, const ZZ& s) {
    ZZ ac = abs(f.c);
    ZZ m = 2 * ac;
    ZZ r0 = (-f.b) % m;
    if (r0 < 0) r0 += m;
    ZZ top = (ac > s) ? ac : s;
    ZZ w = top - (((top - r0) % m + m) % m);
    ZForm g{f.c, w, (w * w - form_disc(f)) / (4 * f.c)};
    return g;
}

ZForm reduce_indefinite(ZForm f, const ZZ& s) {
    int guard = 0;
    while (!indefinite_reduced(f, s)) {
        f = rho_step(f, s);
        if (++guard > 4096) throw internal_error("indefinite reduction did not terminate");
    }
    return f;
}

// Dirichlet composition after transforming f2 to a representation coprime to f1.a
ZForm compose_forms(const ZForm& f1, const ZForm& f2, const ZZ& D) {
    ZZ a2p, b2p;
    bool ok = false;
    for (long r = 1; r <= 64 && !ok; ++r) {
        for (long x = -r; x <= r && !ok; ++x) {
            for (long y = -r; y <= r && !ok; ++y) {
                if (std::max(labs(x), labs(y)) != r && !(r == 1 && x == 1 && y == 0)) continue;
                ZZ zx(x), zy(y);
                ZZ g;
                mpz_gcd(g.get_mpz_t(), zx.get_mpz_t(), zy.get_mpz_t());
                if (g != 1) continue;
                ZZ val = f2.a * zx * zx + f2.b * zx * zy + f2.c * zy * zy;
                if (val == 0) continue;
                ZZ gg;
                mpz_gcd(gg.get_mpz_t(), val.get_mpz_t(), f1.a.get_mpz_t());
                if (gg != 1) continue;
                // extend (x,y) to a determinant-1 matrix [[x,u],[y,v]]
                ZZ u, v, d;
                mpz_gcdext(d.get_mpz_t(), v.get_mpz_t(), u.get_mpz_t(), zx.get_mpz_t(), zy.get_mpz_t());
                u = -u;  // x*v - y*u = 1
                a2p = val;
                b2p = 2 * (f2.a * zx * u + f2.c * zy * v) + f2.b * (zx * v + zy * u);
                ok = true;
            }
        }
    }
    if (!ok) throw internal_error("compose: no coprime representation found");
    // CRT: B = f1.b (mod 2 f1.a), B = b2p (mod 2 a2p)
    ZZ m1 = 2 * abs(f1.a), m2 = 2 * abs(a2p);
    ZZ g, p, q;
    mpz_gcdext(g.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t(), m1.get_mpz_t(), m2.get_mpz_t());
    ZZ diff = b2p - f1.b;
    if (diff % g != 0) throw internal_error("compose: CRT infeasible");
    ZZ lcm = m1 / g * m2;
    ZZ B = f1.b + m1 * (p % (m2 / g)) * (diff / g);
    B %= lcm;
    if (B < 0) B += lcm;
    ZZ A = f1.a * a2p;
    ZZ C = (B * B - D) / (4 * A);
    if (B * B - 4 * A * C != D) throw internal_error("compose: discriminant mismatch");
    return {A, B, C};
}

}  // namespace

// ---------------------------------------------------------------------------
// ClassGroup
// ---------------------------------------------------------------------------

ClassGroup::ClassGroup(long long D, long long disc_limit) : D_(D) {
    if (D == 0 || D == 1) throw invalid_input("not a discriminant");
    long long r = ((D % 4) + 4) % 4;
    if (r != 0 && r != 1) throw invalid_input("not a discriminant");
    if (D > 0 && is_square(to_zz(D))) throw invalid_input("square discriminant");
    if (std::llabs(D) > disc_limit)
        throw limit_exceeded("discriminant " + std::to_string(D) + " exceeds enumeration limit");
    {
        // demand a fundamental discriminant: forms of non-fundamental ones
        // are not all primitive and composition is undefined on them
        bool fund;
        if (r == 1) {
            fund = squarefree_core(to_zz(D)) == to_zz(D);
        } else {
            long long m = D / 4;
            long long m4 = ((m % 4) + 4) % 4;
            fund = (m4 == 2 || m4 == 3) && squarefree_core(to_zz(m)) == to_zz(m);
        }
        if (!fund) throw invalid_input("not a fundamental discriminant");
    }
    imaginary_ = D < 0;
    if (!imaginary_) sqrtD_ = isqrt(to_zz(D));
    enumerate();
    compute_structure();
}

QuadForm ClassGroup::reduced(QuadForm f) const {
    ZForm z{to_zz(f.a), to_zz(f.b), to_zz(f.c)};
    z = imaginary_ ? reduce_definite(z) : reduce_indefinite(z, sqrtD_);
    if (!z.a.fits_slong_p() || !z.b.fits_slong_p() || !z.c.fits_slong_p())
        throw internal_error("reduced form out of range");
    return {z.a.get_si(), z.b.get_si(), z.c.get_si()};
}

int ClassGroup::lookup(const QuadForm& f) const {
    auto it = index_.find(f);
    if (it == index_.end()) throw internal_error("form lookup failed");
    return it->second;
}

void ClassGroup::enumerate() {
    if (imaginary_) {
        long long n = -D_;
        std::vector<QuadForm> forms;
        for (long long a = 1; 3 * a * a <= n; ++a) {
            long long b0 = ((D_ % 2) + 2) % 2;
            for (long long b = b0; b <= a; b += 2) {
                long long num = b * b - D_;
                if (num % (4 * a) != 0) continue;
                long long c = num / (4 * a);
                if (c < a) continue;
                forms.push_back({a, b, c});
                if (b > 0 && b < a && c > a) forms.push_back({a, -b, c});
            }
        }
        std::sort(forms.begin(), forms.end());
        reps_ = forms;
        for (size_t i = 0; i < reps_.size(); ++i) index_[reps_[i]] = (int)i;
    } else {
        long long s = sqrtD_.get_si();
        std::vector<QuadForm> forms;
        long long b0 = ((D_ % 2) + 2) % 2;
        for (long long b = (b0 == 0 ? 2 : 1); b <= s; b += 2) {
            long long num = D_ - b * b;  // = 4|a c|
            long long lo = (s + 1 - b + 1) / 2;  // ceil((s+1-b)/2)
            if (lo < 1) lo = 1;
            long long hi = (s + b) / 2;
            for (long long aa = lo; aa <= hi; ++aa) {
                if (num % (4 * aa) != 0) continue;
                long long cmag = num / (4 * aa);
                forms.push_back({aa, b, -cmag});
                forms.push_back({-aa, b, cmag});
            }
        }
        std::sort(forms.begin(), forms.end());
        // partition into rho-cycles
        std::map<QuadForm, int> seen;
        std::vector<QuadForm> cycle_min;
        for (auto& f : forms) {
            if (seen.count(f)) continue;
            int cid = (int)cycle_min.size();
            QuadForm cur = f, best = f;
            int guard = 0;
            do {
                seen[cur] = cid;
                if (cur < best) best = cur;
                ZForm z = rho_step({to_zz(cur.a), to_zz(cur.b), to_zz(cur.c)}, sqrtD_);
                cur = {z.a.get_si(), z.b.get_si(), z.c.get_si()};
                if (++guard > 2000000) throw internal_error("runaway cycle");
            } while (!(cur == f));
            cycle_min.push_back(best);
        }
        reps_ = cycle_min;
        index_.clear();
        for (auto& [f, cid] : seen) index_[f] = cid;
    }
    QuadForm principal{1, (long long)(((D_ % 2) + 2) % 2), 0};
    principal.c = (long long)((principal.b * principal.b - D_) / 4);
    id_ = lookup(reduced(principal));
}

int ClassGroup::compose(int i, int j) const {
    ZForm f1{to_zz(reps_[i].a), to_zz(reps_[i].b), to_zz(reps_[i].c)};
    ZForm f2{to_zz(reps_[j].a), to_zz(reps_[j].b), to_zz(reps_[j].c)};
    ZForm g = compose_forms(f1, f2, to_zz(D_));
    ZForm red = imaginary_ ? reduce_definite(g) : reduce_indefinite(g, sqrtD_);
    if (!red.a.fits_slong_p()) throw internal_error("composition out of range");
    return lookup({red.a.get_si(), red.b.get_si(), red.c.get_si()});
}

int ClassGroup::inverse(int i) const {
    QuadForm f = reps_[i];
    return lookup(reduced({f.a, -f.b, f.c}));
}

int ClassGroup::power(int i, ZZ e) const {
    if (e < 0) {
        i = inverse(i);
        e = -e;
    }
    int acc = id_, base = i;
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) acc = compose(acc, base);
        e >>= 1;
        if (e > 0) base = compose(base, base);
    }
    return acc;
}

long long ClassGroup::element_order(int i) const {
    long long h = order();
    long long o = h;
    for (auto& [p, e] : factor(to_zz(h))) {
        long long pl = p.get_si();
        while (o % pl == 0 && power(i, to_zz(o / pl)) == id_) o /= pl;
    }
    return o;
}

void ClassGroup::compute_structure() {
    long long h = order();
    auto hfac = factor(to_zz(h));
    // per prime: (descending prime-power orders, basis element ids)
    std::vector<std::pair<std::vector<long long>, std::vector<int>>> parts;
    ZZ lam3 = 0;

    for (auto& [pz, e] : hfac) {
        long p = pz.get_si();
        ZZ pe = 1;
        for (int k = 0; k < e; ++k) pe *= p;
        ZZ m = to_zz(h) / pe;
        std::set<int> syl;
        for (int g = 0; g < (int)reps_.size(); ++g) syl.insert(power(g, m));

        // triangular generators with relations
        std::vector<int> gens;
        std::vector<std::vector<ZZ>> rel;  // rel[i]: k_i e_i = sum_{j<i} v_j e_j
        std::map<int, std::vector<ZZ>> T;
        T[id_] = {};
        for (int x : syl) {
            if (T.count(x)) continue;
            // k = p^j minimal with x^k known
            ZZ k = 1;
            int y = x;
            while (!T.count(y)) {
                y = power(y, ZZ(p));
                k *= p;
            }
            std::vector<ZZ> v = T[y];
            size_t gi = gens.size();
            gens.push_back(x);
            for (auto& [el, vec] : T) vec.resize(gi + 1, ZZ(0));
            std::map<int, std::vector<ZZ>> Tnew = T;
            int xi = x;
            for (ZZ i = 1; i < k; ++i) {
                for (auto& [el, vec] : T) {
                    std::vector<ZZ> nv = vec;
                    nv[gi] = i;
                    Tnew[compose(xi, el)] = nv;
                }
                if (i + 1 < k) xi = compose(xi, x);
            }
            T = std::move(Tnew);
            v.resize(gi + 1, ZZ(0));
            std::vector<ZZ> row(gi + 1, ZZ(0));
            for (size_t j = 0; j < gi; ++j) row[j] = -v[j];
            row[gi] = k;
            for (auto& r : rel) r.resize(gi + 1, ZZ(0));
            rel.push_back(row);
        }
        if ((ZZ)(long)T.size() != pe) throw internal_error("sylow subgroup size mismatch");

        size_t g = gens.size();
        std::vector<long long> orders;
        std::vector<int> basis;
        std::map<int, std::vector<long long>> dl;
        if (g > 0) {
            Mat V, W;
            auto d = smith_normal_form(rel, g, &V, &W);
            // new basis h_j = prod_i gens_i^{W[j][i]} of order d_j; keep d_j > 1
            std::vector<size_t> keep;
            for (size_t j = 0; j < g; ++j)
                if (d[j] > 1) keep.push_back(j);
            // invariant factors from SNF come ascending; we want descending
            std::sort(keep.begin(), keep.end(),
                      [&](size_t x, size_t y) { return d[x] > d[y]; });
            for (size_t j : keep) {
                int el = id_;
                for (size_t i = 0; i < g; ++i) {
                    ZZ ex = W[j][i] % pe;  // pe kills every Sylow-p element
                    if (ex < 0) ex += pe;
                    if (ex != 0) el = compose(el, power(gens[i], ex));
                }
                basis.push_back(el);
                orders.push_back(d[j].get_si());
            }
            if (p == 3) {
                // discrete logs for every Sylow-3 element: w = V^T v
                for (auto& [el, vec] : T) {
                    std::vector<long long> w;
                    for (size_t idx = 0; idx < keep.size(); ++idx) {
                        size_t j = keep[idx];
                        ZZ acc = 0;
                        for (size_t i = 0; i < g; ++i) acc += V[i][j] * vec[i];
                        acc %= d[j];
                        if (acc < 0) acc += d[j];
                        w.push_back(acc.get_si());
                    }
                    dl[el] = w;
                }
            }
        }
        if (p == 3) {
            syl3_orders_ = orders;
            dlog3_ = dl;
            // projector exponent: 0 mod h/3^e, 1 mod 3^e
            ZZ inv = invmod(m % pe, pe);
            lam3 = m * inv;
        }
        parts.emplace_back(orders, basis);
    }
    to3_ = lam3;

    size_t len = 0;
    for (auto& [o, b] : parts) len = std::max(len, o.size());
    std::vector<long long> factors;
    std::vector<QuadForm> gens;
    for (size_t k = 0; k < len; ++k) {
        long long f = 1;
        int el = id_;
        for (auto& [o, b] : parts)
            if (k < o.size()) {
                f *= o[k];
                el = compose(el, b[k]);
            }
        factors.push_back(f);
        gens.push_back(reps_[el]);
    }
    std::reverse(factors.begin(), factors.end());  // ascending divisibility
    std::reverse(gens.begin(), gens.end());
    struct_.invariant_factors = factors;
    struct_.generators = gens;

    ZZ prod = 1;
    for (auto f : factors) prod *= to_zz(f);
    if (prod != to_zz(h)) throw internal_error("invariant factor product != class number");
}

int ClassGroup::three_rank() const {
    int r = 0;
    for (auto f : struct_.invariant_factors)
        if (f % 3 == 0) ++r;
    return r;
}

std::optional<int> ClassGroup::prime_class(const ZZ& ell) const {
    if (!is_prime(ell)) throw invalid_input("prime_class: not prime");
    ZZ D = to_zz(D_);
    int sym = kronecker(D, ell);
    if (sym == -1) return std::nullopt;
    ZZ b, l = ell;
    if (sym == 1) {
        if (ell == 2) {
            b = 1;  // D = 1 (mod 8)
        } else {
            ZZ t = sqrt_mod(D, ell);
            b = (((t - D) % 2) == 0) ? t : t + ell;
        }
    } else {
        // ramified
        if (D_ % 2 != 0) {
            b = ell;  // D odd (= 1 mod 4), ell odd divisor
        } else if (ell == 2) {
            long long m = D_ / 4;
            long long mm = ((m % 4) + 4) % 4;
            b = (mm == 2 || mm == 0) ? 0 : 2;
        } else {
            b = 0;
        }
    }
    ZZ num = b * b - D;
    ZZ den = 4 * l;
    if (num % den != 0) throw internal_error("prime_class: bad middle coefficient");
    ZZ c = num / den;
    if (!b.fits_slong_p() || !c.fits_slong_p()) throw internal_error("prime_class overflow");
    return lookup(reduced({ell.get_si(), b.get_si(), c.get_si()}));
}

std::vector<long long> ClassGroup::dlog3(int i) const {
    if (syl3_orders_.empty()) return {};
    int x3 = power(i, to3_);
    auto it = dlog3_.find(x3);
    if (it == dlog3_.end()) throw internal_error("dlog3: element not in Sylow table");
    return it->second;
}

int ClassGroup::s_class_three_rank(const std::vector<ZZ>& ells) const {
    size_t r = syl3_orders_.size();
    if (r == 0) return 0;
    Mat M;
    for (size_t j = 0; j < r; ++j) {
        std::vector<ZZ> row(r, 0);
        row[j] = to_zz(syl3_orders_[j]);
        M.push_back(row);
    }
    std::set<ZZ> done;
    for (const ZZ& ell : ells) {
        if (done.count(ell)) continue;
        done.insert(ell);
        auto pc = prime_class(ell);
        if (!pc) continue;  // inert: principal
        auto w = dlog3(*pc);
        std::vector<ZZ> row(r, 0);
        for (size_t j = 0; j < r; ++j) row[j] = to_zz(w[j]);
        M.push_back(row);
    }
    auto d = smith_normal_form(M, r, nullptr, nullptr);
    int rank = 0;
    for (auto& x : d)
        if (x % 3 == 0) ++rank;  // includes d = 0 (cannot occur here)
    return rank;
}

int ClassGroup::primes_above_count(long long D, const ZZ& ell) {
    return kronecker(to_zz(D), ell) == 1 ? 2 : 1;
}

std::vector<int> prime_classes_above(const ClassGroup& g, const ZZ& ell) {
    auto pc = g.prime_class(ell);
    if (!pc) return {g.identity()};
    if (kronecker(to_zz(g.disc()), ell) == 0) return {*pc};  // ramified
    return {*pc, g.inverse(*pc)};
}

// ---------------------------------------------------------------------------
// cache + provider
// ---------------------------------------------------------------------------

void ClassNumberCache::set_path(std::string path) {
    std::lock_guard<std::mutex> lk(mu_);
    path_ = std::move(path);
    loaded_ = false;
    mem_.clear();
}

void ClassNumberCache::load_locked() {
    loaded_ = true;
    if (path_.empty()) return;
    FILE* fp = std::fopen(path_.c_str(), "r");
    if (!fp) return;
    flock(fileno(fp), LOCK_SH);
    std::string content;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, fp)) > 0) content.append(buf, n);
    flock(fileno(fp), LOCK_UN);
    std::fclose(fp);
    std::istringstream in(content);
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        long long D;
        if (!(ls >> D)) continue;
        std::string rest;
        if (!(ls >> rest)) continue;
        std::vector<long long> fac;
        std::istringstream fs(rest);
        std::string tok;
        bool ok = true;
        while (std::getline(fs, tok, ',')) {
            try {
                fac.push_back(std::stoll(tok));
            } catch (...) {
                ok = false;
                break;
            }
        }
        if (ok && !fac.empty()) mem_[D] = fac;
    }
}

std::optional<std::vector<long long>> ClassNumberCache::lookup(long long D) {
    std::lock_guard<std::mutex> lk(mu_);
    if (!loaded_) load_locked();
    auto it = mem_.find(D);
    if (it == mem_.end()) return std::nullopt;
    return it->second;
}

void ClassNumberCache::store(long long D, const std::vector<long long>& factors) {
    std::lock_guard<std::mutex> lk(mu_);
    if (!loaded_) load_locked();
    if (mem_.count(D)) return;
    mem_[D] = factors;
    if (path_.empty()) return;
    FILE* fp = std::fopen(path_.c_str(), "a");
    if (!fp) return;
    flock(fileno(fp), LOCK_EX);
    std::string line = std::to_string(D) + "\t";
    for (size_t i = 0; i < factors.size(); ++i) {
        if (i) line += ",";
        line += std::to_string(factors[i]);
    }
    line += "\n";
    fwrite(line.data(), 1, line.size(), fp);
    fflush(fp);
    flock(fileno(fp), LOCK_UN);
    std::fclose(fp);
}

std::shared_ptr<const ClassGroup> ClassGroupProvider::group(long long D) {
    {
        std::lock_guard<std::mutex> lk(mu_);
        auto it = groups_.find(D);
        if (it != groups_.end()) return it->second;
    }
    auto g = std::make_shared<const ClassGroup>(D, disc_limit_);
    cache_.store(D, g->structure().invariant_factors);
    std::lock_guard<std::mutex> lk(mu_);
    auto [it, ins] = groups_.emplace(D, std::move(g));
    return it->second;
}

int ClassGroupProvider::three_rank(long long D) {
    if (auto fac = cache_.lookup(D)) {
        int r = 0;
        for (auto f : *fac)
            if (f % 3 == 0) ++r;
        return r;
    }
    return group(D)->three_rank();
}

int ClassGroupProvider::quad_s_class_three_rank(const ZZ& d, const std::vector<ZZ>& ells) {
    long long D = fundamental_discriminant(d);
    if (ells.empty()) return three_rank(D);
    return group(D)->s_class_three_rank(ells);
}

int ClassGroupProvider::biquad_s_class_three_rank(const ZZ& a, const std::vector<ZZ>& chars) {
    if (a == 0) throw invalid_input("biquad rank of 0");
    if (is_square_in_K(a))
        throw invalid_input("biquadratic rank needs a not a square in K");
    return quad_s_class_three_rank(a, chars) + quad_s_class_three_rank(-3 * a, chars);
}

}  // namespace sel3
