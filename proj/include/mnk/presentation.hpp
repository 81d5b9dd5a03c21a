// Ring presentations for the two cohomology rings in play:
//   F_n      = Q[t_1..t_n] / I_n,     the flag space SO(2n)/T^n
//   R_{n,k}  = Q[c_1..c_k, p_1..p_{n-k-1}, e] / I_{n,k},  the space M_{n,k}
// together with the embedding p*, Betti numbers, Euler characteristic, and
// an independent Hilbert-series oracle.
#pragma once

#include <filesystem>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "mnk/gb_cache.hpp"
#include "mnk/groebner.hpp"
#include "mnk/symmetric.hpp"

namespace mnk {

inline std::string t_name(int i) { return "t" + std::to_string(i); }
inline std::string c_name(int i) { return "c" + std::to_string(i); }
inline std::string p_name(int j) { return "p" + std::to_string(j); }

inline void check_partial_params(int n, int k) {
    if (n < 2 || k < 1 || k >= n)
        throw std::invalid_argument("require n >= 2 and 1 <= k < n");
}

// Context Q[t_1..t_n], every t_i of weight 2, order t_1 > ... > t_n.
inline ContextPtr flag_context(int n) {
    if (n < 2) throw std::invalid_argument("flag context needs n >= 2");
    std::vector<std::string> names;
    std::vector<int> weights;
    for (int i = 1; i <= n; ++i) {
        names.push_back(t_name(i));
        weights.push_back(2);
    }
    return RingContext::make(std::move(names), std::move(weights));
}

// Context Q[c_1..c_k, p_1..p_{n-k-1}, e] with weights 2i, 4j, 2(n-k).
inline ContextPtr partial_context(int n, int k) {
    check_partial_params(n, k);
    std::vector<std::string> names;
    std::vector<int> weights;
    for (int i = 1; i <= k; ++i) {
        names.push_back(c_name(i));
        weights.push_back(2 * i);
    }
    for (int j = 1; j <= n - k - 1; ++j) {
        names.push_back(p_name(j));
        weights.push_back(4 * j);
    }
    names.push_back("e");
    weights.push_back(2 * (n - k));
    return RingContext::make(std::move(names), std::move(weights));
}

// Generators of I_n: the Weyl-invariant generators e_i(t_1^2..t_n^2) for
// i < n together with t_1...t_n.
inline std::vector<Polynomial> flag_ideal_generators(int n, const ContextPtr& ctx) {
    std::vector<Polynomial> squares;
    Polynomial top = Polynomial::constant(ctx, 1);
    for (int i = 1; i <= n; ++i) {
        Polynomial ti = Polynomial::variable(ctx, t_name(i));
        squares.push_back(ti * ti);
        top = top * ti;
    }
    std::vector<Polynomial> gens;
    for (int i = 1; i <= n - 1; ++i)
        gens.push_back(elementary_symmetric_unchecked(i, ctx, squares));
    gens.push_back(top);
    return gens;
}

// q_a = c_a^2 + 2 * sum_{r>=1} (-1)^r c_{a-r} c_{a+r}, with c_0 = 1 and
// c_s = 0 outside 0..k.  Pulls back to e_a(t_1^2..t_k^2); identically zero
// for a > k.
inline Polynomial q_polynomial(int a, int k, const ContextPtr& ctx) {
    if (a < 1) throw std::invalid_argument("q_polynomial: index must be >= 1");
    auto c_of = [&](int s) -> Polynomial {
        if (s == 0) return Polynomial::constant(ctx, 1);
        if (s < 0 || s > k) return Polynomial::zero(ctx);
        return Polynomial::variable(ctx, c_name(s));
    };
    Polynomial q = c_of(a) * c_of(a);
    for (int r = 1; a + r <= 2 * k && r <= a; ++r) {
        Polynomial cross = c_of(a - r) * c_of(a + r);
        if (cross.is_zero()) continue;
        q += Rational(r % 2 == 1 ? -2 : 2) * cross;
    }
    return q;
}

// The ideal rows R_j = sum_{a+b=j, 0<=b<=n-k} q_a P_b for j = 1..n-1, where
// P_0 = 1, P_b = p_b for b < n-k, and P_{n-k} = e^2, plus the generator
// c_k e.  R_n, built the same way, is a verification target, not a
// generator.
inline Polynomial relation_row(int n, int k, int j, const ContextPtr& ctx) {
    Polynomial e = Polynomial::variable(ctx, "e");
    auto p_of = [&](int b) -> Polynomial {
        if (b == 0) return Polynomial::constant(ctx, 1);
        if (b == n - k) return e * e;
        return Polynomial::variable(ctx, p_name(b));
    };
    Polynomial row(ctx);
    for (int b = std::max(0, j - k); b <= std::min(j, n - k); ++b) {
        int a = j - b;
        Polynomial qa = a == 0 ? Polynomial::constant(ctx, 1) : q_polynomial(a, k, ctx);
        if (qa.is_zero()) continue;
        row += qa * p_of(b);
    }
    return row;
}

inline std::vector<Polynomial> relation_rows(int n, int k, const ContextPtr& ctx) {
    check_partial_params(n, k);
    std::vector<Polynomial> rows;
    for (int j = 1; j <= n - 1; ++j) rows.push_back(relation_row(n, k, j, ctx));
    rows.push_back(Polynomial::variable(ctx, c_name(k)) * Polynomial::variable(ctx, "e"));
    return rows;
}

inline std::vector<Polynomial> relation_rows(int n, int k) {
    return relation_rows(n, k, partial_context(n, k));
}

inline long complex_dim(int n, int k) {
    check_partial_params(n, k);
    return 2L * n * k - static_cast<long>(k) * k - static_cast<long>(k) * (k + 1) / 2;
}

// Hilbert-series oracle from the invariant-degree product formula; the
// polynomial division must be exact, a nonzero remainder signals a bug.
// Returned as dims d_{2j} indexed by j.
inline std::vector<long> hilbert_oracle(int n, int k) {
    check_partial_params(n, k);
    // coefficient vectors in x = q^2
    auto one_minus = [](int d) {  // 1 - x^d
        std::vector<mpz_class> v(static_cast<std::size_t>(d) + 1, 0);
        v[0] = 1;
        v[static_cast<std::size_t>(d)] = -1;
        return v;
    };
    auto mul = [](const std::vector<mpz_class>& a, const std::vector<mpz_class>& b) {
        std::vector<mpz_class> r(a.size() + b.size() - 1, 0);
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
        return r;
    };
    auto divide_exact = [](std::vector<mpz_class> num, const std::vector<mpz_class>& den) {
        // den is monic-up-to-sign with den[0] = 1 (ascending powers)
        std::vector<mpz_class> q(num.size() >= den.size() ? num.size() - den.size() + 1 : 0, 0);
        for (std::size_t i = 0; i < q.size(); ++i) {
            mpz_class f = num[i];  // den[0] == 1
            q[i] = f;
            if (f == 0) continue;
            for (std::size_t j = 0; j < den.size(); ++j) num[i + j] -= f * den[j];
        }
        for (const auto& r : num)
            if (r != 0) throw std::logic_error("hilbert_oracle: division not exact");
        return q;
    };

    std::vector<mpz_class> num{1};
    for (int i = 1; i <= n - 1; ++i) num = mul(num, one_minus(2 * i));  // (1-q^{4i})
    num = mul(num, one_minus(n));                                      // (1-q^{2n})
    std::vector<mpz_class> result = num;
    for (int i = 1; i <= k; ++i) result = divide_exact(result, one_minus(i));
    for (int j = 1; j <= n - k - 1; ++j) result = divide_exact(result, one_minus(2 * j));
    result = divide_exact(result, one_minus(n - k));

    std::vector<long> dims;
    dims.reserve(result.size());
    for (const auto& c : result) {
        if (c < 0) throw std::logic_error("hilbert_oracle: negative coefficient");
        dims.push_back(static_cast<long>(c.get_si()));
    }
    while (!dims.empty() && dims.back() == 0) dims.pop_back();
    return dims;
}

struct BuildOptions {
    std::optional<std::filesystem::path> cache_dir;
    bool verify_invariants = true;
};

struct BuildStats {
    bool cache_hit = false;
};

class FlagPresentation {
  public:
    FlagPresentation(int n, const BuildOptions& opt = {}) : n_(n), ctx_(flag_context(n)) {
        generators_ = flag_ideal_generators(n, ctx_);
        gb_ = build_cached("flag_n" + std::to_string(n), ctx_, generators_, opt, stats_);
        if (opt.verify_invariants) verify();
    }

    int n() const { return n_; }
    const ContextPtr& context() const { return ctx_; }
    const std::vector<Polynomial>& generators() const { return generators_; }
    const GroebnerBasis& gb() const { return *gb_; }
    const BuildStats& stats() const { return stats_; }

    // top weighted degree = 2 * #positive roots of D_n = 2n(n-1)
    long top_degree() const { return 2L * n_ * (n_ - 1); }

    GradedDimensions graded_dims() const { return graded_dimensions(*gb_, top_degree() + 4); }

    static std::shared_ptr<GroebnerBasis> build_cached(const std::string& key,
                                                       const ContextPtr& ctx,
                                                       const std::vector<Polynomial>& gens,
                                                       const BuildOptions& opt,
                                                       BuildStats& stats) {
        std::optional<std::filesystem::path> file;
        if (opt.cache_dir) {
            file = *opt.cache_dir / (key + "_" + generators_hash(gens) + ".json");
            if (auto gb = load_gb(*file, ctx, gens)) {
                stats.cache_hit = true;
                return std::make_shared<GroebnerBasis>(std::move(*gb));
            }
        }
        auto gb = std::make_shared<GroebnerBasis>(buchberger(IdealSpec(ctx, gens)));
        if (file) save_gb(*file, gens, *gb);
        return gb;
    }

  private:
    void verify() const {
        std::vector<std::string> tvars;
        for (int i = 1; i <= n_; ++i) tvars.push_back(t_name(i));
        for (int i = 1; i <= n_; ++i) {
            if (!gb_->contains(power_sum(2 * i, ctx_, tvars)))
                throw std::logic_error("flag presentation: power sum 2i not in ideal");
        }
        GradedDimensions dims = graded_dims();
        if (dims.top_nonzero() != top_degree())
            throw std::logic_error("flag presentation: top degree mismatch");
    }

    int n_;
    ContextPtr ctx_;
    std::vector<Polynomial> generators_;
    std::shared_ptr<GroebnerBasis> gb_;
    BuildStats stats_;
};

class PartialFlagPresentation {
  public:
    PartialFlagPresentation(int n, int k, const BuildOptions& opt = {})
        : n_(n), k_(k), ctx_(partial_context(n, k)) {
        generators_ = relation_rows(n, k, ctx_);
        std::string key = "partial_n" + std::to_string(n) + "_k" + std::to_string(k);
        gb_ = FlagPresentation::build_cached(key, ctx_, generators_, opt, stats_);
        dims_ = graded_dimensions(*gb_, 2 * complex_dim(n, k) + 4);
        if (opt.verify_invariants) verify();
    }

    int n() const { return n_; }
    int k() const { return k_; }
    long N() const { return complex_dim(n_, k_); }
    const ContextPtr& context() const { return ctx_; }
    const std::vector<Polynomial>& generators() const { return generators_; }
    const GroebnerBasis& gb() const { return *gb_; }
    const BuildStats& stats() const { return stats_; }

    // Ring generator names in presentation order.
    std::vector<std::string> generator_names() const { return ctx_->names(); }

    // d_{2j} indexed by j = 0..N
    std::vector<long> betti() const {
        std::vector<long> b(static_cast<std::size_t>(N()) + 1, 0);
        for (long d = 0; d < static_cast<long>(dims_.dims.size()); ++d) {
            if (dims_.dims[d] == 0) continue;
            if (d % 2 != 0 || d / 2 > N())
                throw std::logic_error("betti: dimension outside 0..2N");
            b[static_cast<std::size_t>(d / 2)] = dims_.dims[d];
        }
        return b;
    }

    long euler_characteristic() const {
        std::vector<long> b = betti();
        return std::accumulate(b.begin(), b.end(), 0L);
    }

    const GradedDimensions& graded_dims() const { return dims_; }

  private:
    void verify() const {
        std::vector<long> b = betti();
        if (b.front() != 1) throw std::logic_error("partial presentation: d_0 != 1");
        if (b.back() == 0) throw std::logic_error("partial presentation: top Betti vanishes");
        for (std::size_t j = 0; j < b.size(); ++j)
            if (b[j] != b[b.size() - 1 - j])
                throw std::logic_error("partial presentation: Poincare duality fails");
    }

    int n_, k_;
    ContextPtr ctx_;
    std::vector<Polynomial> generators_;
    std::shared_ptr<GroebnerBasis> gb_;
    GradedDimensions dims_;
    BuildStats stats_;
};

// The substitution table of p*: c_i -> e_i(t_1..t_k), p_j -> e_j(t_{k+1}^2..
// t_n^2), e -> t_{k+1}...t_n.
inline std::map<std::string, Polynomial> pullback_images(int n, int k, const ContextPtr& tctx) {
    check_partial_params(n, k);
    std::vector<Polynomial> front, back_sq;
    Polynomial tail = Polynomial::constant(tctx, 1);
    for (int i = 1; i <= k; ++i) front.push_back(Polynomial::variable(tctx, t_name(i)));
    for (int i = k + 1; i <= n; ++i) {
        Polynomial ti = Polynomial::variable(tctx, t_name(i));
        back_sq.push_back(ti * ti);
        tail = tail * ti;
    }
    std::map<std::string, Polynomial> images;
    for (int i = 1; i <= k; ++i)
        images.emplace(c_name(i), elementary_symmetric_unchecked(i, tctx, front));
    for (int j = 1; j <= n - k - 1; ++j)
        images.emplace(p_name(j), elementary_symmetric_unchecked(j, tctx, back_sq));
    images.emplace("e", tail);
    return images;
}

inline Polynomial pullback(const Polynomial& x, int n, int k, const ContextPtr& tctx) {
    return x.substitute(pullback_images(n, k, tctx));
}

}  // namespace mnk
