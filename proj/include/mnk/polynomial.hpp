// Sparse multivariate polynomials over exact rationals.
#pragma once

#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mnk/rational.hpp"
#include "mnk/ring.hpp"

namespace mnk {

class Polynomial {
  public:
    using TermMap = std::map<Monomial, Rational, TermOrderDesc>;

    Polynomial() = default;
    explicit Polynomial(ContextPtr ctx) : ctx_(std::move(ctx)) {}

    static Polynomial zero(ContextPtr ctx) { return Polynomial(std::move(ctx)); }
    static Polynomial constant(ContextPtr ctx, const Rational& c) {
        Polynomial p(ctx);
        if (c != 0) p.terms_.emplace(Monomial::one(*ctx), c);
        return p;
    }
    static Polynomial variable(ContextPtr ctx, const std::string& name, int e = 1) {
        Polynomial p(ctx);
        if (e < 0) throw std::invalid_argument("variable: negative exponent");
        if (e == 0) return constant(std::move(ctx), 1);
        p.terms_.emplace(Monomial::var(p.ctx_->index_of(name), *p.ctx_, e), Rational(1));
        return p;
    }
    static Polynomial term(ContextPtr ctx, Monomial m, const Rational& c) {
        Polynomial p(std::move(ctx));
        if (c != 0) p.terms_.emplace(std::move(m), c);
        return p;
    }

    const ContextPtr& context() const { return ctx_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    const Monomial& leading_monomial() const {
        require_nonzero();
        return terms_.begin()->first;
    }
    const Rational& leading_coefficient() const {
        require_nonzero();
        return terms_.begin()->second;
    }
    long weighted_degree() const {
        require_nonzero();
        return terms_.begin()->first.wdeg;
    }
    bool is_homogeneous() const {
        if (terms_.empty()) return true;
        long d = terms_.begin()->first.wdeg;
        for (const auto& [m, c] : terms_)
            if (m.wdeg != d) return false;
        return true;
    }

    void add_term(const Monomial& m, const Rational& c) {
        if (c == 0) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(m, c);
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    Polynomial operator-() const {
        Polynomial r(ctx_);
        for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
        return r;
    }
    Polynomial& operator+=(const Polynomial& o) {
        check_ctx(o);
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o) {
        check_ctx(o);
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        a.check_ctx(b);
        Polynomial r(a.ctx_);
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) r.add_term(ma.times(mb), ca * cb);
        return r;
    }
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

    friend Polynomial operator*(const Rational& c, const Polynomial& p) {
        Polynomial r(p.ctx_);
        if (c == 0) return r;
        for (const auto& [m, q] : p.terms_) r.terms_.emplace(m, c * q);
        return r;
    }
    friend Polynomial operator*(const Polynomial& p, const Rational& c) { return c * p; }
    Polynomial& operator*=(const Rational& c) { return *this = c * *this; }

    Polynomial pow(int e) const {
        if (e < 0) throw std::invalid_argument("pow: negative exponent");
        Polynomial r = constant(ctx_, 1);
        Polynomial base = *this;
        while (e > 0) {
            if (e & 1) r = r * base;
            base = (e >>= 1) ? base * base : base;
        }
        return r;
    }

    // Multiply by a single term; cheaper than building a Polynomial for it.
    Polynomial times_term(const Monomial& m, const Rational& c) const {
        Polynomial r(ctx_);
        if (c == 0) return r;
        for (const auto& [mm, cc] : terms_) r.terms_.emplace(mm.times(m), cc * c);
        return r;
    }

    bool operator==(const Polynomial& o) const {
        return terms_ == o.terms_;
    }
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

    // Sum of the terms of weighted degree exactly d.
    Polynomial graded_component(long d) const {
        Polynomial r(ctx_);
        for (const auto& [m, c] : terms_)
            if (m.wdeg == d) r.terms_.emplace(m, c);
        return r;
    }

    // Ring homomorphism determined by per-variable images (looked up by
    // name).  Every variable actually occurring in *this must have an image;
    // all images must share one context, which becomes the result context.
    Polynomial substitute(const std::map<std::string, Polynomial>& images) const {
        if (images.empty()) throw std::invalid_argument("substitute: no images");
        const ContextPtr& target = images.begin()->second.ctx_;
        for (const auto& [v, img] : images)
            if (!img.ctx_ || !img.ctx_->same_as(*target))
                throw std::invalid_argument("substitute: images in mixed contexts");

        std::vector<const Polynomial*> image_of(ctx_->size(), nullptr);
        for (std::size_t i = 0; i < ctx_->size(); ++i) {
            auto it = images.find(ctx_->name(i));
            if (it != images.end()) image_of[i] = &it->second;
        }
        // power cache per variable
        std::vector<std::vector<Polynomial>> powers(ctx_->size());

        Polynomial out(target);
        for (const auto& [m, c] : terms_) {
            Polynomial prod = constant(target, c);
            for (std::size_t i = 0; i < ctx_->size(); ++i) {
                int e = m.exps[i];
                if (e == 0) continue;
                if (!image_of[i])
                    throw std::invalid_argument("substitute: missing image for " +
                                                ctx_->name(i));
                auto& pw = powers[i];
                if (pw.empty()) pw.push_back(*image_of[i]);
                while (static_cast<int>(pw.size()) < e) pw.push_back(pw.back() * pw.front());
                prod = prod * pw[e - 1];
            }
            out += prod;
        }
        return out;
    }

    // Re-express in another context containing all variables of *this by
    // name (a plain monomial remap, no expansion).
    Polynomial in_context(const ContextPtr& target) const {
        Polynomial out(target);
        std::vector<std::size_t> where(ctx_->size());
        for (std::size_t i = 0; i < ctx_->size(); ++i) where[i] = target->index_of(ctx_->name(i));
        for (const auto& [m, c] : terms_) {
            std::vector<int> e(target->size(), 0);
            for (std::size_t i = 0; i < ctx_->size(); ++i) e[where[i]] += m.exps[i];
            out.add_term(Monomial(std::move(e), *target), c);
        }
        return out;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [m, c] : terms_) {
            Rational a = c;
            if (first) {
                if (a < 0) { os << "-"; a = -a; }
            } else {
                os << (a < 0 ? " - " : " + ");
                if (a < 0) a = -a;
            }
            first = false;
            std::string mono = mono_str(m);
            if (mono.empty()) {
                os << rat_str(a);
            } else {
                if (a != 1) os << rat_str(a) << "*";
                os << mono;
            }
        }
        return os.str();
    }

  private:
    void require_nonzero() const {
        if (terms_.empty()) throw std::logic_error("zero polynomial has no leading term");
    }
    void check_ctx(const Polynomial& o) const {
        if (!ctx_ || !o.ctx_ || !ctx_->same_as(*o.ctx_))
            throw std::invalid_argument("polynomial context mismatch");
    }
    std::string mono_str(const Monomial& m) const {
        std::ostringstream os;
        bool first = true;
        for (std::size_t i = 0; i < m.exps.size(); ++i) {
            if (m.exps[i] == 0) continue;
            if (!first) os << "*";
            first = false;
            os << ctx_->name(i);
            if (m.exps[i] > 1) os << "^" << m.exps[i];
        }
        return os.str();
    }

    ContextPtr ctx_;
    TermMap terms_;
};

}  // namespace mnk
