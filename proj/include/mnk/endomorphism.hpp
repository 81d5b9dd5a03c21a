// Ring endomorphisms of R_{n,k}, their linear lifts to F_n, the classified
// family of Theorem-type endomorphisms, lift enumeration, Gram reports, and
// Lefschetz numbers.
#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "mnk/presentation.hpp"

namespace mnk {

// An endomorphism given on ring generators; images are stored in normal
// form and must be homogeneous of the generator's weight (or zero).
class GeneratorEndo {
  public:
    GeneratorEndo(const PartialFlagPresentation& pres, std::map<std::string, Polynomial> images)
        : images_(std::move(images)) {
        const ContextPtr& ctx = pres.context();
        for (std::size_t i = 0; i < ctx->size(); ++i) {
            auto it = images_.find(ctx->name(i));
            if (it == images_.end())
                throw std::invalid_argument("endo: missing image for " + ctx->name(i));
            Polynomial nf = pres.gb().normal_form(it->second);
            if (!nf.is_zero()) {
                if (!nf.is_homogeneous() || nf.weighted_degree() != ctx->weight(i))
                    throw std::invalid_argument("endo: image of " + ctx->name(i) +
                                                " has wrong weight");
            }
            it->second = std::move(nf);
        }
    }

    const std::map<std::string, Polynomial>& images() const { return images_; }
    const Polynomial& image_of(const std::string& g) const { return images_.at(g); }

  private:
    std::map<std::string, Polynomial> images_;
};

inline GeneratorEndo zero_endo(const PartialFlagPresentation& pres) {
    std::map<std::string, Polynomial> images;
    for (const auto& g : pres.generator_names())
        images.emplace(g, Polynomial::zero(pres.context()));
    return GeneratorEndo(pres, std::move(images));
}

// Theorem-classified endomorphism: c_i -> m^i c_i, p_j -> m^{2j} p_j,
// e -> sign * m^{n-k} e.
inline GeneratorEndo classified_endo(const PartialFlagPresentation& pres, const Rational& m,
                                     int sign) {
    if (m == 0) throw std::invalid_argument("classified_endo: m must be nonzero");
    if (sign != 1 && sign != -1) throw std::invalid_argument("classified_endo: sign must be +-1");
    const int n = pres.n(), k = pres.k();
    const ContextPtr& ctx = pres.context();
    std::map<std::string, Polynomial> images;
    for (int i = 1; i <= k; ++i)
        images.emplace(c_name(i), rat_pow(m, i) * Polynomial::variable(ctx, c_name(i)));
    for (int j = 1; j <= n - k - 1; ++j)
        images.emplace(p_name(j), rat_pow(m, 2 * j) * Polynomial::variable(ctx, p_name(j)));
    images.emplace("e", Rational(sign) * rat_pow(m, n - k) * Polynomial::variable(ctx, "e"));
    return GeneratorEndo(pres, std::move(images));
}

// Adams map of type m: multiplication by m^i on H^{2i}; on generators this
// is the classified endomorphism with positive sign.
inline GeneratorEndo adams_endo(const PartialFlagPresentation& pres, long m) {
    return classified_endo(pres, Rational(m), +1);
}

inline Polynomial apply(const GeneratorEndo& h, const Polynomial& x,
                        const PartialFlagPresentation& pres) {
    return pres.gb().normal_form(x.substitute(h.images()));
}

inline GeneratorEndo compose(const GeneratorEndo& f, const GeneratorEndo& g,
                             const PartialFlagPresentation& pres) {
    std::map<std::string, Polynomial> images;
    for (const auto& [v, img] : g.images()) images.emplace(v, apply(f, img, pres));
    return GeneratorEndo(pres, std::move(images));
}

// True iff every ideal generator maps to zero in the quotient.
inline bool is_ring_endomorphism(const GeneratorEndo& h, const PartialFlagPresentation& pres) {
    for (const auto& row : pres.generators()) {
        if (!pres.gb().normal_form(row.substitute(h.images())).is_zero()) return false;
    }
    return true;
}

// Linear lift on F_n: h~(t_i) = sum_j H[i][j] t_j.
struct LinearLift {
    std::vector<std::vector<Rational>> H;

    explicit LinearLift(std::vector<std::vector<Rational>> m) : H(std::move(m)) {
        for (const auto& row : H)
            if (row.size() != H.size()) throw std::invalid_argument("lift: matrix not square");
    }
    std::size_t n() const { return H.size(); }

    std::map<std::string, Polynomial> images(const ContextPtr& tctx) const {
        if (tctx->size() != n()) throw std::invalid_argument("lift: size mismatch");
        std::map<std::string, Polynomial> images;
        for (std::size_t i = 0; i < n(); ++i) {
            Polynomial img(tctx);
            for (std::size_t j = 0; j < n(); ++j)
                img += H[i][j] * Polynomial::variable(tctx, t_name(static_cast<int>(j) + 1));
            images.emplace(t_name(static_cast<int>(i) + 1), std::move(img));
        }
        return images;
    }
};

inline bool lift_is_endomorphism(const LinearLift& lift, const FlagPresentation& flag) {
    auto images = lift.images(flag.context());
    for (const auto& g : flag.generators())
        if (!flag.gb().contains(g.substitute(images))) return false;
    return true;
}

// Commuting-square check: p* . h = h~ . p* on every ring generator of
// R_{n,k}, as an identity in F_n.
inline bool lift_restricts_to(const LinearLift& lift, const GeneratorEndo& h,
                              const PartialFlagPresentation& pres, const FlagPresentation& flag) {
    if (pres.n() != flag.n()) throw std::invalid_argument("lift_restricts_to: n mismatch");
    auto lift_images = lift.images(flag.context());
    auto pb = pullback_images(pres.n(), pres.k(), flag.context());
    for (const auto& gname : pres.generator_names()) {
        Polynomial down = pullback(h.image_of(gname), pres.n(), pres.k(), flag.context());
        Polynomial up = pb.at(gname).substitute(lift_images);
        if (!flag.gb().contains(up - down)) return false;
    }
    return true;
}

struct GramReport {
    std::vector<std::vector<Rational>> gram;  // H^T H
    bool scalar = false;
    Rational diagonal;       // D when scalar
    Rational max_offdiag;    // largest |off-diagonal| entry
};

inline GramReport gram_report(const LinearLift& lift) {
    const std::size_t n = lift.n();
    GramReport rep;
    rep.gram.assign(n, std::vector<Rational>(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Rational s(0);
            for (std::size_t l = 0; l < n; ++l) s += lift.H[l][i] * lift.H[l][j];
            rep.gram[i][j] = s;
        }
    rep.scalar = true;
    rep.diagonal = rep.gram[0][0];
    rep.max_offdiag = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) {
                if (rep.gram[i][j] != rep.diagonal) rep.scalar = false;
            } else {
                if (rep.gram[i][j] != 0) rep.scalar = false;
                Rational a = abs(rep.gram[i][j]);
                if (a > rep.max_offdiag) rep.max_offdiag = a;
            }
        }
    return rep;
}

// All block matrices diag(A, B) with A = m * (k x k permutation) and
// B = m * signed (n-k) x (n-k) permutation, in a fixed deterministic order.
// The restriction sign of each lift is the product of the B-block signs.
struct ClassifiedLift {
    LinearLift lift;
    int restriction_sign;
};

inline std::vector<ClassifiedLift> enumerate_classified_lifts(int n, int k, const Rational& m) {
    check_partial_params(n, k);
    if (m == 0) throw std::invalid_argument("enumerate_classified_lifts: m must be nonzero");
    const int nk = n - k;
    std::vector<int> aperm(k), bperm(nk);
    std::vector<ClassifiedLift> out;

    std::iota(aperm.begin(), aperm.end(), 0);
    do {
        std::iota(bperm.begin(), bperm.end(), 0);
        do {
            for (unsigned mask = 0; mask < (1u << nk); ++mask) {
                std::vector<std::vector<Rational>> H(n, std::vector<Rational>(n, Rational(0)));
                for (int i = 0; i < k; ++i) H[i][aperm[i]] = m;
                int sign = 1;
                for (int i = 0; i < nk; ++i) {
                    bool neg = (mask >> i) & 1u;
                    H[k + i][k + bperm[i]] = neg ? Rational(-m) : Rational(m);
                    if (neg) sign = -sign;
                }
                out.push_back({LinearLift(std::move(H)), sign});
            }
        } while (std::next_permutation(bperm.begin(), bperm.end()));
    } while (std::next_permutation(aperm.begin(), aperm.end()));
    return out;
}

// L(f) = sum_j m^j d_{2j}, evaluated three ways (direct, and the split
// forms for N odd / N even); all three must agree.
inline Rational lefschetz(const PartialFlagPresentation& pres, const Rational& m) {
    const std::vector<long> d = pres.betti();
    const long N = pres.N();
    Rational direct(0);
    for (long j = 0; j <= N; ++j) direct += rat_pow(m, j) * Rational(d[j]);

    Rational split(0);
    if (N % 2 == 1) {
        for (long j = 0; j <= (N - 1) / 2; ++j)
            split += (rat_pow(m, j) + rat_pow(m, N - j)) * Rational(d[j]);
    } else {
        for (long j = 0; j <= (N - 2) / 2; ++j)
            split += (rat_pow(m, j) + rat_pow(m, N - j)) * Rational(d[j]);
        split += rat_pow(m, N / 2) * Rational(d[N / 2]);
    }
    if (direct != split) throw std::logic_error("lefschetz: split form disagrees");
    return direct;
}

}  // namespace mnk
