// Buchberger's algorithm, reduced bases, normal forms, ideal and radical
// membership, and staircase enumeration for graded quotient dimensions.
#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mnk/polynomial.hpp"

namespace mnk {

struct IdealSpec {
    ContextPtr ctx;
    std::vector<Polynomial> generators;  // nonzero, shared context

    IdealSpec(ContextPtr c, std::vector<Polynomial> gens)
        : ctx(std::move(c)), generators(std::move(gens)) {
        for (const auto& g : generators) {
            if (g.is_zero()) throw std::invalid_argument("ideal: zero generator");
            if (!g.context()->same_as(*ctx))
                throw std::invalid_argument("ideal: generator context mismatch");
        }
    }
};

// Thrown when a budgeted Buchberger run exceeds its limits; callers that set
// budgets turn this into an explicit "undecided" outcome.
struct BudgetExceeded : std::runtime_error {
    BudgetExceeded() : std::runtime_error("groebner budget exceeded") {}
};

struct GroebnerBudget {
    long max_pairs = -1;       // S-pairs processed; -1 = unlimited
    long max_basis = -1;       // basis size during the run
    long max_poly_terms = -1;  // abort when an intermediate polynomial
                               // grows beyond this many terms
    long max_wdeg = -1;        // skip pairs whose lcm exceeds this weighted
                               // degree; only sound for homogeneous input
                               // (degree-truncated basis)
    std::function<bool()> interrupted;  // optional wall-clock style hook
};

class GroebnerBasis {
  public:
    GroebnerBasis(ContextPtr ctx, std::vector<Polynomial> basis, long pairs_processed,
                  bool degree_truncated = false, long truncation_degree = -1)
        : ctx_(std::move(ctx)),
          basis_(std::move(basis)),
          pairs_processed_(pairs_processed),
          truncated_(degree_truncated),
          truncation_degree_(truncation_degree) {
        // ascending leading-term order; normal_form relies on it to stop
        // the divisor scan early
        std::sort(basis_.begin(), basis_.end(), [](const Polynomial& a, const Polynomial& b) {
            return grevlex_cmp(a.leading_monomial(), b.leading_monomial()) < 0;
        });
    }

    const ContextPtr& context() const { return ctx_; }
    const std::vector<Polynomial>& basis() const { return basis_; }
    long pairs_processed() const { return pairs_processed_; }
    bool degree_truncated() const { return truncated_; }
    long truncation_degree() const { return truncation_degree_; }

    bool contains_one() const {
        return basis_.size() == 1 && !basis_[0].is_zero() &&
               basis_[0].leading_monomial().is_one();
    }

    // Full multivariate division: no term of the result is divisible by any
    // leading monomial of the basis.
    Polynomial normal_form(const Polynomial& p) const {
        if (!p.context()->same_as(*ctx_))
            throw std::invalid_argument("normal_form: context mismatch");
        Polynomial rem(ctx_);
        Polynomial work = p;
        while (!work.is_zero()) {
            const Monomial& lm = work.leading_monomial();
            const Rational lc = work.leading_coefficient();
            const Polynomial* divisor = nullptr;
            for (const auto& g : basis_) {
                const Monomial& glt = g.leading_monomial();
                if (glt.wdeg > lm.wdeg) break;  // basis sorted ascending
                if (glt.divides(lm)) { divisor = &g; break; }
            }
            if (divisor) {
                Monomial q = divisor->leading_monomial().quotient_of(lm);
                Rational f = lc / divisor->leading_coefficient();
                work -= divisor->times_term(q, f);
            } else {
                rem.add_term(lm, lc);
                work.add_term(lm, -lc);
            }
        }
        return rem;
    }

    bool contains(const Polynomial& p) const { return normal_form(p).is_zero(); }

    std::vector<Monomial> leading_monomials() const {
        std::vector<Monomial> lt;
        lt.reserve(basis_.size());
        for (const auto& g : basis_) lt.push_back(g.leading_monomial());
        return lt;
    }

  private:
    ContextPtr ctx_;
    std::vector<Polynomial> basis_;
    long pairs_processed_;
    bool truncated_;
    long truncation_degree_;
};

namespace detail {

struct Pair {
    std::size_t i, j;
    Monomial lcm;
};

inline bool pair_less(const Pair& a, const Pair& b) {
    int c = grevlex_cmp(a.lcm, b.lcm);
    if (c != 0) return c < 0;  // smaller lcm first (normal strategy)
    if (a.i != b.i) return a.i < b.i;
    return a.j < b.j;
}

// strip rational content: integer coefficients with gcd 1, sign of the lead
// kept positive
inline Polynomial primitive_part(const Polynomial& p) {
    if (p.is_zero()) return p;
    mpz_class den_lcm = 1, num_gcd = 0;
    for (const auto& [m, c] : p.terms()) {
        mpz_class d = c.get_den();
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), den_lcm.get_mpz_t(), d.get_mpz_t());
        den_lcm = den_lcm / g * d;
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num().get_mpz_t());
    }
    Rational f(den_lcm, num_gcd);
    f.canonicalize();
    if (p.leading_coefficient() < 0) f = -f;
    return f * p;
}

}  // namespace detail

// Buchberger with Gebauer-Moeller pair elimination and normal selection
// strategy, followed by minimalization and tail inter-reduction.  The
// reduced monic basis is unique for the ideal and the order, hence fully
// deterministic.
inline GroebnerBasis buchberger(const IdealSpec& spec, const GroebnerBudget& budget = {}) {
    const ContextPtr& ctx = spec.ctx;
    std::vector<Polynomial> g;
    for (const auto& p : spec.generators)
        if (!p.is_zero()) g.push_back(detail::primitive_part(p));

    long pairs_done = 0;
    auto pair_cmp = [](const detail::Pair& a, const detail::Pair& b) {
        return detail::pair_less(a, b);
    };
    std::set<detail::Pair, decltype(pair_cmp)> queue(pair_cmp);

    auto lcm_of = [&](std::size_t i, std::size_t j) {
        return g[i].leading_monomial().lcm_with(g[j].leading_monomial(), *ctx);
    };

    // Gebauer-Moeller update for a freshly appended element g[t]
    auto update_pairs = [&](std::size_t t) {
        const Monomial& ltt = g[t].leading_monomial();
        // B: drop surviving old pairs whose lcm is properly handled by t
        for (auto it = queue.begin(); it != queue.end();) {
            if (ltt.divides(it->lcm) && !(lcm_of(it->i, t) == it->lcm) &&
                !(lcm_of(it->j, t) == it->lcm))
                it = queue.erase(it);
            else
                ++it;
        }
        // candidate new pairs (i, t)
        std::vector<detail::Pair> cand;
        cand.reserve(t);
        for (std::size_t i = 0; i < t; ++i) cand.push_back({i, t, lcm_of(i, t)});
        // M: drop (i,t) when another candidate's lcm properly divides its lcm
        std::vector<bool> dead(cand.size(), false);
        for (std::size_t a = 0; a < cand.size(); ++a) {
            if (dead[a]) continue;
            for (std::size_t b = 0; b < cand.size(); ++b) {
                if (a == b || dead[b]) continue;
                if (cand[b].lcm.divides(cand[a].lcm) && !(cand[b].lcm == cand[a].lcm)) {
                    dead[a] = true;
                    break;
                }
            }
        }
        // F: among equal lcms keep the first
        for (std::size_t a = 0; a < cand.size(); ++a) {
            if (dead[a]) continue;
            for (std::size_t b = a + 1; b < cand.size(); ++b) {
                if (dead[b]) continue;
                if (cand[a].lcm == cand[b].lcm) dead[b] = true;
            }
        }
        // Buchberger's first criterion last
        for (std::size_t a = 0; a < cand.size(); ++a) {
            if (dead[a]) continue;
            if (g[cand[a].i].leading_monomial().coprime_with(ltt)) dead[a] = true;
        }
        for (std::size_t a = 0; a < cand.size(); ++a)
            if (!dead[a]) queue.insert(cand[a]);
    };

    {
        // seed: treat generators as appended one by one
        std::vector<Polynomial> seed = std::move(g);
        g.clear();
        for (auto& p : seed) {
            g.push_back(std::move(p));
            if (g.size() > 1) update_pairs(g.size() - 1);
        }
    }

    auto reduce_by = [&](Polynomial p) {
        Polynomial rem(ctx);
        while (!p.is_zero()) {
            if (budget.max_poly_terms >= 0 &&
                static_cast<long>(p.term_count()) > budget.max_poly_terms)
                throw BudgetExceeded();
            const Monomial& lm = p.leading_monomial();
            const Polynomial* divisor = nullptr;
            for (const auto& q : g) {
                const Monomial& qlt = q.leading_monomial();
                if (qlt.wdeg <= lm.wdeg && qlt.divides(lm)) { divisor = &q; break; }
            }
            if (!divisor) {
                rem.add_term(lm, p.leading_coefficient());
                p.add_term(lm, -p.leading_coefficient());
                continue;
            }
            Monomial quo = divisor->leading_monomial().quotient_of(lm);
            Rational f = p.leading_coefficient() / divisor->leading_coefficient();
            p -= divisor->times_term(quo, f);
        }
        return rem;
    };

    bool truncated = false;
    while (!queue.empty()) {
        detail::Pair pr = *queue.begin();
        queue.erase(queue.begin());

        if (budget.max_wdeg >= 0 && pr.lcm.wdeg > budget.max_wdeg) {
            // normal strategy processes pairs by ascending lcm degree, so
            // everything remaining is also beyond the cut
            truncated = true;
            break;
        }
        if (budget.interrupted && budget.interrupted()) throw BudgetExceeded();

        ++pairs_done;
        if (budget.max_pairs >= 0 && pairs_done > budget.max_pairs) throw BudgetExceeded();

        const Monomial& lti = g[pr.i].leading_monomial();
        const Monomial& ltj = g[pr.j].leading_monomial();
        Monomial qi = lti.quotient_of(pr.lcm);
        Monomial qj = ltj.quotient_of(pr.lcm);
        Polynomial spoly = g[pr.i].times_term(qi, Rational(1) / g[pr.i].leading_coefficient()) -
                           g[pr.j].times_term(qj, Rational(1) / g[pr.j].leading_coefficient());
        Polynomial rem = detail::primitive_part(reduce_by(std::move(spoly)));
        if (!rem.is_zero()) {
            g.push_back(std::move(rem));
            if (budget.max_basis >= 0 && static_cast<long>(g.size()) > budget.max_basis)
                throw BudgetExceeded();
            update_pairs(g.size() - 1);
        }
    }

    // minimalize: drop elements whose leading monomial is divisible by
    // another's
    std::vector<Polynomial> minimal;
    for (std::size_t i = 0; i < g.size(); ++i) {
        bool redundant = false;
        for (std::size_t j = 0; j < g.size(); ++j) {
            if (i == j) continue;
            const Monomial& a = g[j].leading_monomial();
            const Monomial& b = g[i].leading_monomial();
            if (a.divides(b) && (!(a == b) || j < i)) { redundant = true; break; }
        }
        if (!redundant) minimal.push_back(g[i]);
    }

    // inter-reduce tails and normalize to monic
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < minimal.size(); ++i) {
            std::vector<Polynomial> others;
            others.reserve(minimal.size() - 1);
            for (std::size_t j = 0; j < minimal.size(); ++j)
                if (j != i) others.push_back(minimal[j]);
            GroebnerBasis tmp(ctx, std::move(others), 0);
            Polynomial red = tmp.normal_form(minimal[i]);
            if (red != minimal[i]) {
                changed = true;
                if (red.is_zero()) {
                    minimal.erase(minimal.begin() + static_cast<long>(i));
                    --i;
                    continue;
                }
                minimal[i] = std::move(red);
            }
        }
    }
    for (auto& p : minimal) p *= Rational(1) / p.leading_coefficient();
    std::sort(minimal.begin(), minimal.end(), [](const Polynomial& a, const Polynomial& b) {
        return grevlex_cmp(a.leading_monomial(), b.leading_monomial()) < 0;
    });

    long cutoff = truncated ? budget.max_wdeg : -1;
    return GroebnerBasis(ctx, std::move(minimal), pairs_done, truncated, cutoff);
}

inline Polynomial normal_form(const Polynomial& p, const GroebnerBasis& gb) {
    return gb.normal_form(p);
}

inline bool contains(const GroebnerBasis& gb, const Polynomial& p) { return gb.contains(p); }

// Rabinowitsch trick: u lies in the radical of <generators> iff
// 1 in <generators, 1 - y*u> for a fresh variable y.
inline bool radical_contains(const IdealSpec& spec, const Polynomial& u,
                             const GroebnerBudget& budget = {}) {
    if (u.is_zero()) throw std::invalid_argument("radical_contains: zero element");
    std::string fresh = "_rab";
    while (spec.ctx->has(fresh)) fresh += "_";
    ContextPtr ext = spec.ctx->extended({fresh}, {1});
    std::vector<Polynomial> gens;
    gens.reserve(spec.generators.size() + 1);
    for (const auto& gpoly : spec.generators) gens.push_back(gpoly.in_context(ext));
    Polynomial y = Polynomial::variable(ext, fresh);
    gens.push_back(Polynomial::constant(ext, 1) - y * u.in_context(ext));
    GroebnerBasis gb = buchberger(IdealSpec(ext, std::move(gens)), budget);
    return gb.contains_one();
}

struct GradedDimensions {
    std::vector<long> dims;  // dims[d] = quotient dimension in weighted degree d

    long at(long d) const {
        if (d < 0 || d >= static_cast<long>(dims.size())) return 0;
        return dims[d];
    }
    long top_nonzero() const {
        for (long d = static_cast<long>(dims.size()) - 1; d >= 0; --d)
            if (dims[d] != 0) return d;
        return -1;
    }
    long total() const {
        long s = 0;
        for (long d : dims) s += d;
        return s;
    }
};

namespace detail {

// DFS over exponent vectors, pruning any branch already divisible by a
// leading monomial.
inline void staircase_walk(const std::vector<Monomial>& lts, const RingContext& ctx,
                           std::vector<int>& exps, std::size_t var, long wdeg, long max_wdeg,
                           const std::function<void(const std::vector<int>&, long)>& visit) {
    bool divisible = false;
    for (const auto& lt : lts) {
        bool div = true;
        for (std::size_t i = 0; i < exps.size(); ++i)
            if (lt.exps[i] > exps[i]) { div = false; break; }
        if (div) { divisible = true; break; }
    }
    if (divisible) return;
    if (var == ctx.size()) { visit(exps, wdeg); return; }
    for (int e = 0;; ++e) {
        long d = wdeg + static_cast<long>(e) * ctx.weight(var);
        if (d > max_wdeg) break;
        exps[var] = e;
        staircase_walk(lts, ctx, exps, var + 1, d, max_wdeg, visit);
    }
    exps[var] = 0;
}

}  // namespace detail

// Count standard monomials (not divisible by any leading term) per weighted
// degree up to max_wdeg.
inline GradedDimensions graded_dimensions(const GroebnerBasis& gb, long max_wdeg) {
    GradedDimensions out;
    out.dims.assign(static_cast<std::size_t>(max_wdeg) + 1, 0);
    std::vector<Monomial> lts = gb.leading_monomials();
    std::vector<int> exps(gb.context()->size(), 0);
    detail::staircase_walk(lts, *gb.context(), exps, 0, 0, max_wdeg,
                           [&](const std::vector<int>&, long d) { ++out.dims[d]; });
    return out;
}

// The standard monomials of weighted degree exactly d, in descending term
// order (deterministic basis for constraint assembly).
inline std::vector<Monomial> standard_monomials(const GroebnerBasis& gb, long d) {
    std::vector<Monomial> out;
    std::vector<Monomial> lts = gb.leading_monomials();
    std::vector<int> exps(gb.context()->size(), 0);
    detail::staircase_walk(lts, *gb.context(), exps, 0, 0, d,
                           [&](const std::vector<int>& e, long wd) {
                               if (wd == d) out.emplace_back(e, *gb.context());
                           });
    std::sort(out.begin(), out.end(),
              [](const Monomial& a, const Monomial& b) { return grevlex_cmp(a, b) > 0; });
    return out;
}

// All standard monomials if the staircase is finite within the cap;
// nullopt when the cap is hit (quotient not visibly finite-dimensional).
inline std::optional<std::vector<Monomial>> finite_staircase(const GroebnerBasis& gb,
                                                             long cap = 4096) {
    std::vector<Monomial> lts = gb.leading_monomials();
    const RingContext& ctx = *gb.context();
    // finite iff every variable has a pure power among the leading terms
    long max_wdeg = 0;
    for (std::size_t v = 0; v < ctx.size(); ++v) {
        long pure = -1;
        for (const auto& lt : lts) {
            bool only_v = lt.exps[v] > 0;
            for (std::size_t i = 0; i < ctx.size() && only_v; ++i)
                if (i != v && lt.exps[i] > 0) only_v = false;
            if (only_v) pure = pure < 0 ? lt.exps[v] : std::min<long>(pure, lt.exps[v]);
        }
        if (pure < 0) return std::nullopt;
        max_wdeg += (pure - 1) * static_cast<long>(ctx.weight(v));
    }
    std::vector<Monomial> out;
    std::vector<int> exps(ctx.size(), 0);
    bool overflow = false;
    detail::staircase_walk(lts, ctx, exps, 0, 0, max_wdeg,
                           [&](const std::vector<int>& e, long) {
                               if (static_cast<long>(out.size()) >= cap) { overflow = true; return; }
                               out.emplace_back(e, ctx);
                           });
    if (overflow) return std::nullopt;
    return out;
}

}  // namespace mnk
