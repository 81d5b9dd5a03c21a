// Polynomial ring contexts: named variables, cohomological weights, and the
// weighted-degree reverse-lexicographic term order.
#pragma once

#include <algorithm>
#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace mnk {

class RingContext;
using ContextPtr = std::shared_ptr<const RingContext>;

// Immutable once built.  All polynomials carry a shared pointer to their
// context; two polynomials interoperate only when their contexts compare
// equal (same names, same weights).
class RingContext {
  public:
    RingContext(std::vector<std::string> names, std::vector<int> weights)
        : names_(std::move(names)), weights_(std::move(weights)) {
        if (names_.size() != weights_.size())
            throw std::invalid_argument("context: names/weights size mismatch");
        for (int w : weights_)
            if (w < 1) throw std::invalid_argument("context: weights must be >= 1");
        for (std::size_t i = 0; i < names_.size(); ++i) {
            if (!index_.emplace(names_[i], i).second)
                throw std::invalid_argument("context: duplicate variable " + names_[i]);
        }
    }

    static ContextPtr make(std::vector<std::string> names, std::vector<int> weights) {
        return std::make_shared<const RingContext>(std::move(names), std::move(weights));
    }

    std::size_t size() const { return names_.size(); }
    const std::vector<std::string>& names() const { return names_; }
    const std::vector<int>& weights() const { return weights_; }
    const std::string& name(std::size_t i) const { return names_[i]; }
    int weight(std::size_t i) const { return weights_[i]; }

    bool has(const std::string& v) const { return index_.count(v) != 0; }
    std::size_t index_of(const std::string& v) const {
        auto it = index_.find(v);
        if (it == index_.end()) throw std::invalid_argument("context: unknown variable " + v);
        return it->second;
    }

    bool same_as(const RingContext& other) const {
        return names_ == other.names_ && weights_ == other.weights_;
    }

    // New context with extra variables appended (used by the Rabinowitsch
    // trick and by constraint assembly).
    ContextPtr extended(const std::vector<std::string>& extra_names,
                        const std::vector<int>& extra_weights) const {
        std::vector<std::string> n = names_;
        std::vector<int> w = weights_;
        n.insert(n.end(), extra_names.begin(), extra_names.end());
        w.insert(w.end(), extra_weights.begin(), extra_weights.end());
        return make(std::move(n), std::move(w));
    }

  private:
    std::vector<std::string> names_;
    std::vector<int> weights_;
    std::unordered_map<std::string, std::size_t> index_;
};

// Exponent vector with cached weighted degree.
struct Monomial {
    std::vector<int> exps;
    long wdeg = 0;

    Monomial() = default;
    Monomial(std::vector<int> e, const RingContext& ctx) : exps(std::move(e)) {
        if (exps.size() != ctx.size())
            throw std::invalid_argument("monomial: exponent count mismatch");
        for (std::size_t i = 0; i < exps.size(); ++i) {
            if (exps[i] < 0) throw std::invalid_argument("monomial: negative exponent");
            wdeg += static_cast<long>(exps[i]) * ctx.weight(i);
        }
    }

    static Monomial one(const RingContext& ctx) {
        return Monomial(std::vector<int>(ctx.size(), 0), ctx);
    }
    static Monomial var(std::size_t i, const RingContext& ctx, int e = 1) {
        std::vector<int> v(ctx.size(), 0);
        v[i] = e;
        return Monomial(std::move(v), ctx);
    }

    bool is_one() const {
        return std::all_of(exps.begin(), exps.end(), [](int e) { return e == 0; });
    }
    long total_degree() const {
        long d = 0;
        for (int e : exps) d += e;
        return d;
    }

    Monomial times(const Monomial& o) const {
        Monomial r;
        r.exps.resize(exps.size());
        for (std::size_t i = 0; i < exps.size(); ++i) r.exps[i] = exps[i] + o.exps[i];
        r.wdeg = wdeg + o.wdeg;
        return r;
    }
    bool divides(const Monomial& o) const {
        for (std::size_t i = 0; i < exps.size(); ++i)
            if (exps[i] > o.exps[i]) return false;
        return true;
    }
    // o / this; caller must ensure divisibility.
    Monomial quotient_of(const Monomial& o) const {
        Monomial r;
        r.exps.resize(exps.size());
        for (std::size_t i = 0; i < exps.size(); ++i) r.exps[i] = o.exps[i] - exps[i];
        r.wdeg = o.wdeg - wdeg;
        return r;
    }
    Monomial lcm_with(const Monomial& o, const RingContext& ctx) const {
        Monomial r;
        r.exps.resize(exps.size());
        r.wdeg = 0;
        for (std::size_t i = 0; i < exps.size(); ++i) {
            r.exps[i] = std::max(exps[i], o.exps[i]);
            r.wdeg += static_cast<long>(r.exps[i]) * ctx.weight(i);
        }
        return r;
    }
    bool coprime_with(const Monomial& o) const {
        for (std::size_t i = 0; i < exps.size(); ++i)
            if (exps[i] > 0 && o.exps[i] > 0) return false;
        return true;
    }

    bool operator==(const Monomial& o) const { return exps == o.exps; }
};

// a > b in weighted grevlex iff wdeg(a) > wdeg(b), or the degrees tie and the
// last nonzero entry of a-b is negative.  Variable order is the context's
// listed order (earlier = bigger).
inline int grevlex_cmp(const Monomial& a, const Monomial& b) {
    if (a.wdeg != b.wdeg) return a.wdeg < b.wdeg ? -1 : 1;
    for (std::size_t i = a.exps.size(); i-- > 0;) {
        int d = a.exps[i] - b.exps[i];
        if (d != 0) return d < 0 ? 1 : -1;
    }
    return 0;
}

// std::map comparator putting the LEADING monomial first.
struct TermOrderDesc {
    bool operator()(const Monomial& a, const Monomial& b) const {
        return grevlex_cmp(a, b) > 0;
    }
};

}  // namespace mnk
