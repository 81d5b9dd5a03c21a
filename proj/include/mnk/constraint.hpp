// Constraint systems in unknown coefficient symbols for partially pinned
// endomorphisms, and the "forced zero" decision layer.
//
// Equations are extracted by substituting the (generic or pinned) images
// into every ideal relation and reducing to normal form with the unknown
// symbols carried through linearly; the coefficient of each standard
// monomial must vanish.
//
// Two verdicts are computed per unknown:
//   closure: membership in the radical of the raw constraint ideal
//            (vanishing over the algebraic closure),
//   real:    vanishing on all rational/real solutions, established by
//            radical steps plus sum-of-squares splitting and case
//            branching on products known to vanish.  This is the field
//            the source statements live over.
#pragma once

#include <algorithm>
#include <chrono>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mnk/endomorphism.hpp"
#include "mnk/groebner.hpp"
#include "mnk/presentation.hpp"

namespace mnk {

enum class Verdict { True, False, Unknown };

inline const char* verdict_str(Verdict v) {
    switch (v) {
        case Verdict::True: return "true";
        case Verdict::False: return "false";
        default: return "undecided";
    }
}

struct ConstraintSystem {
    ContextPtr unknown_ctx;                  // every unknown, weight 1
    std::vector<std::string> unknowns;
    std::vector<Polynomial> equations;       // over unknown_ctx
    std::vector<std::string> provenance;     // parallel to equations
    std::vector<Polynomial> sos_candidates;  // builder-suggested square sums
};

// Bookkeeping for one generic image: which unknowns hold the coordinates of
// h(generator) over the staircase basis at its weight.
struct GenericImageInfo {
    std::string generator;
    long weight = 0;
    std::vector<Monomial> basis;          // in the ring context
    std::vector<std::string> unknowns;    // parallel coordinates
};

struct GeneratorSystem {
    ConstraintSystem cs;
    std::vector<GenericImageInfo> generic_images;
    std::vector<std::string> pin_symbols;
};

// Evaluate at a rational point given by unknown-name -> value (missing
// names evaluate as 0).
inline Rational evaluate(const Polynomial& p, const std::map<std::string, Rational>& point) {
    const ContextPtr& ctx = p.context();
    std::vector<Rational> vals(ctx->size(), Rational(0));
    for (std::size_t i = 0; i < ctx->size(); ++i) {
        auto it = point.find(ctx->name(i));
        if (it != point.end()) vals[i] = it->second;
    }
    Rational acc(0);
    for (const auto& [m, c] : p.terms()) {
        Rational t = c;
        for (std::size_t i = 0; i < m.exps.size(); ++i)
            if (m.exps[i] != 0) t *= rat_pow(vals[i], m.exps[i]);
        acc += t;
    }
    return acc;
}

namespace detail {

// Shared extraction engine: given images of the ring variables in a
// combined context (ring vars first, then unknowns), push a ring element
// through the images and collect one equation per standard monomial of the
// quotient.
class Extractor {
  public:
    Extractor(const GroebnerBasis& ring_gb, ContextPtr combined, ContextPtr unknown_ctx,
              std::map<std::string, Polynomial> images)
        : ring_gb_(ring_gb),
          ring_ctx_(ring_gb.context()),
          combined_(std::move(combined)),
          unknown_ctx_(std::move(unknown_ctx)),
          images_(std::move(images)) {}

    // coefficients of NF(image of ring_element), per standard monomial, as
    // polynomials in the unknowns
    std::map<Monomial, Polynomial, TermOrderDesc> extract_vector(const Polynomial& ring_element) {
        Polynomial image = ring_element.substitute(images_);
        // split each combined term into ring part and unknown part
        const std::size_t nring = ring_ctx_->size();
        std::map<Monomial, Polynomial, TermOrderDesc> per_standard;
        for (const auto& [mono, coef] : image.terms()) {
            std::vector<int> re(nring, 0);
            std::vector<int> ue(unknown_ctx_->size(), 0);
            for (std::size_t i = 0; i < nring; ++i) re[i] = mono.exps[i];
            for (std::size_t i = nring; i < mono.exps.size(); ++i) ue[i - nring] = mono.exps[i];
            Monomial rmono(std::move(re), *ring_ctx_);
            Monomial umono(std::move(ue), *unknown_ctx_);
            const Polynomial& nf = nf_of(rmono);
            for (const auto& [sm, sc] : nf.terms()) {
                auto it = per_standard.find(sm);
                if (it == per_standard.end())
                    it = per_standard.emplace(sm, Polynomial(unknown_ctx_)).first;
                it->second.add_term(umono, coef * sc);
            }
        }
        return per_standard;
    }

    void emit(std::map<Monomial, Polynomial, TermOrderDesc> per_standard, const std::string& label,
              std::vector<Polynomial>& equations, std::vector<std::string>& provenance) {
        for (auto& [sm, eq] : per_standard) {
            if (eq.is_zero()) continue;
            // monic-normalize for dedup determinism
            Polynomial q = Rational(1) / eq.leading_coefficient() * eq;
            bool seen = false;
            for (const auto& prev : equations)
                if (prev == q) { seen = true; break; }
            if (seen) continue;
            equations.push_back(std::move(q));
            std::ostringstream os;
            os << label << " @ ";
            os << Polynomial::term(ring_ctx_, sm, Rational(1)).str();
            provenance.push_back(os.str());
        }
    }

    void extract(const Polynomial& ring_element, const std::string& label,
                 std::vector<Polynomial>& equations, std::vector<std::string>& provenance) {
        emit(extract_vector(ring_element), label, equations, provenance);
    }

    const ContextPtr& ring_ctx() const { return ring_ctx_; }
    const GroebnerBasis& ring_gb() const { return ring_gb_; }

  private:
    const Polynomial& nf_of(const Monomial& m) {
        auto it = nf_cache_.find(m);
        if (it == nf_cache_.end()) {
            Polynomial p = Polynomial::term(ring_ctx_, m, Rational(1));
            it = nf_cache_.emplace(m, ring_gb_.normal_form(p)).first;
        }
        return it->second;
    }

    const GroebnerBasis& ring_gb_;
    ContextPtr ring_ctx_;
    ContextPtr combined_;
    ContextPtr unknown_ctx_;
    std::map<std::string, Polynomial> images_;
    std::map<Monomial, Polynomial, TermOrderDesc> nf_cache_;
};

}  // namespace detail

// Context for writing pinned images: the ring variables plus declared
// scalar symbols (each of weight 1).
inline ContextPtr pin_context(const PartialFlagPresentation& pres,
                              const std::vector<std::string>& symbols) {
    std::vector<int> w(symbols.size(), 1);
    return pres.context()->extended(symbols, w);
}

// Build the constraint system for endomorphisms extending `pins`.
//  - pins: generator name -> image polynomial over pin_context(pres, symbols)
//  - symbols: unknown scalars used inside the pins (e.g. "m")
//  - zero_elements: extra ring elements whose image is required to vanish
//    (e.g. e^2 when every Pontryagin class is sent to zero)
inline GeneratorSystem build_generator_system(const PartialFlagPresentation& pres,
                                              const std::map<std::string, Polynomial>& pins,
                                              const std::vector<std::string>& symbols = {},
                                              const std::vector<Polynomial>& zero_elements = {}) {
    const ContextPtr& rctx = pres.context();
    GeneratorSystem sys;
    sys.pin_symbols = symbols;

    // validate pins: known generator, ring-part weight matches
    for (const auto& [g, img] : pins) {
        if (!rctx->has(g)) throw std::invalid_argument("pin for unknown generator " + g);
        long w = rctx->weight(rctx->index_of(g));
        const ContextPtr& pctx = img.context();
        for (const auto& [m, c] : img.terms()) {
            long ring_w = 0;
            for (std::size_t i = 0; i < pctx->size(); ++i) {
                const std::string& nm = pctx->name(i);
                if (rctx->has(nm)) ring_w += static_cast<long>(m.exps[i]) * rctx->weight(rctx->index_of(nm));
            }
            if (ring_w != w)
                throw std::invalid_argument("pin image for " + g + " has wrong weight");
        }
    }

    // unknowns: declared symbols first, then staircase coordinates of every
    // unpinned generator in context order
    std::vector<std::string> unames = symbols;
    for (std::size_t gi = 0; gi < rctx->size(); ++gi) {
        const std::string& g = rctx->name(gi);
        if (pins.count(g)) continue;
        GenericImageInfo info;
        info.generator = g;
        info.weight = rctx->weight(gi);
        info.basis = standard_monomials(pres.gb(), info.weight);
        for (std::size_t b = 0; b < info.basis.size(); ++b) {
            info.unknowns.push_back("u_" + g + "_" + std::to_string(b));
            unames.push_back(info.unknowns.back());
        }
        sys.generic_images.push_back(std::move(info));
    }
    ContextPtr uctx = RingContext::make(unames, std::vector<int>(unames.size(), 1));
    ContextPtr combined = rctx->extended(unames, std::vector<int>(unames.size(), 1));

    // images over the combined context
    std::map<std::string, Polynomial> images;
    for (const auto& [g, img] : pins) images.emplace(g, img.in_context(combined));
    for (const auto& info : sys.generic_images) {
        Polynomial img(combined);
        for (std::size_t b = 0; b < info.basis.size(); ++b) {
            Polynomial mono = Polynomial::term(rctx, info.basis[b], Rational(1)).in_context(combined);
            img += Polynomial::variable(combined, info.unknowns[b]) * mono;
        }
        images.emplace(info.generator, std::move(img));
    }

    sys.cs.unknown_ctx = uctx;
    sys.cs.unknowns = unames;
    detail::Extractor ex(pres.gb(), combined, uctx, images);
    const auto& rows = pres.generators();
    for (std::size_t r = 0; r < rows.size(); ++r)
        ex.extract(rows[r], "row " + std::to_string(r + 1), sys.cs.equations, sys.cs.provenance);
    for (std::size_t z = 0; z < zero_elements.size(); ++z)
        ex.extract(zero_elements[z], "zero element " + std::to_string(z + 1), sys.cs.equations,
                   sys.cs.provenance);
    return sys;
}

// Coordinates of a concrete endomorphism in a generator system's unknowns;
// used to check that explicit solutions satisfy every equation.
inline std::map<std::string, Rational> assignment_from_endo(const GeneratorSystem& sys,
                                                            const GeneratorEndo& endo,
                                                            const PartialFlagPresentation& pres) {
    std::map<std::string, Rational> out;
    for (const auto& info : sys.generic_images) {
        Polynomial nf = pres.gb().normal_form(endo.image_of(info.generator));
        std::map<Monomial, Rational, TermOrderDesc> coords(nf.terms().begin(), nf.terms().end());
        for (std::size_t b = 0; b < info.basis.size(); ++b) {
            auto it = coords.find(info.basis[b]);
            out[info.unknowns[b]] = it == coords.end() ? Rational(0) : it->second;
            if (it != coords.end()) coords.erase(it);
        }
        if (!coords.empty())
            throw std::logic_error("assignment_from_endo: image not in staircase span");
    }
    return out;
}

enum class LiftPin { c1_zero, p1_zero, euler_zero };

struct LiftSystem {
    ConstraintSystem cs;
    int n = 0, k = 0;
    std::vector<std::vector<std::string>> entry;  // unknown name of H[i][j]
};

namespace detail {

// Row echelon form over Q with recorded pivot columns.
struct Echelon {
    std::vector<std::vector<Rational>> rows;
    std::vector<std::size_t> pivots;

    void add(std::vector<Rational> v) {
        for (std::size_t r = 0; r < rows.size(); ++r) {
            const Rational& f = v[pivots[r]];
            if (f == 0) continue;
            for (std::size_t c = 0; c < v.size(); ++c) v[c] -= f * rows[r][c];
        }
        for (std::size_t c = 0; c < v.size(); ++c) {
            if (v[c] == 0) continue;
            Rational lead = v[c];
            for (auto& x : v) x /= lead;
            rows.push_back(std::move(v));
            pivots.push_back(c);
            return;
        }
    }
};

}  // namespace detail

// Constraint system over the n^2 matrix entries of a linear lift:
//   - the image of every I_n generator must lie in I_n,
//   - the pinned class must map to zero in the quotient,
//   - the image of every other ring generator of R_{n,k} must stay inside
//     the embedded subring p*(R_{n,k})  (the lift must restrict to an
//     endomorphism downstairs).
inline LiftSystem build_lift_system(const FlagPresentation& flag, int k, LiftPin pin) {
    const int n = flag.n();
    check_partial_params(n, k);
    if (pin == LiftPin::euler_zero && n - k != 2)
        throw std::invalid_argument("euler_zero pin requires n-k = 2");
    if (pin == LiftPin::p1_zero && k > n - 2)
        throw std::invalid_argument("p1_zero pin requires p1 to be a ring generator (k <= n-2)");

    LiftSystem sys;
    sys.n = n;
    sys.k = k;
    const ContextPtr& tctx = flag.context();

    std::vector<std::string> unames;
    sys.entry.assign(n, std::vector<std::string>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            sys.entry[i][j] = "a" + std::to_string(i + 1) + "_" + std::to_string(j + 1);
            unames.push_back(sys.entry[i][j]);
        }
    ContextPtr uctx = RingContext::make(unames, std::vector<int>(unames.size(), 1));
    ContextPtr combined = tctx->extended(unames, std::vector<int>(unames.size(), 1));

    std::map<std::string, Polynomial> images;
    for (int i = 0; i < n; ++i) {
        Polynomial img(combined);
        for (int j = 0; j < n; ++j)
            img += Polynomial::variable(combined, sys.entry[i][j]) *
                   Polynomial::variable(combined, t_name(j + 1));
        images.emplace(t_name(i + 1), std::move(img));
    }

    sys.cs.unknown_ctx = uctx;
    sys.cs.unknowns = unames;
    detail::Extractor ex(flag.gb(), combined, uctx, images);

    const std::string pinned_gen = pin == LiftPin::c1_zero   ? c_name(1)
                                   : pin == LiftPin::p1_zero ? p_name(1)
                                                             : "e";
    PartialFlagPresentation pres(n, k);
    auto pb = pullback_images(n, k, tctx);

    // pin: the pinned class maps to zero in the quotient
    ex.extract(pb.at(pinned_gen), "pin " + pinned_gen, sys.cs.equations, sys.cs.provenance);

    // membership: every I_n generator image stays in I_n
    const auto& gens = flag.generators();
    for (std::size_t g = 0; g < gens.size(); ++g)
        ex.extract(gens[g], "I_n generator " + std::to_string(g + 1), sys.cs.equations,
                   sys.cs.provenance);

    // restriction: the image of each remaining ring generator lies in the
    // span of the embedded standard basis of R_{n,k} at its degree
    const ContextPtr& rctx = pres.context();
    for (std::size_t gi = 0; gi < rctx->size(); ++gi) {
        const std::string& gname = rctx->name(gi);
        if (gname == pinned_gen) continue;
        long d = rctx->weight(gi);
        std::vector<Monomial> fn_basis = standard_monomials(flag.gb(), d);
        std::map<Monomial, std::size_t, TermOrderDesc> col_of;
        for (std::size_t c = 0; c < fn_basis.size(); ++c) col_of.emplace(fn_basis[c], c);

        detail::Echelon span;
        for (const Monomial& b : standard_monomials(pres.gb(), d)) {
            Polynomial up = flag.gb().normal_form(
                Polynomial::term(rctx, b, Rational(1)).substitute(pb));
            std::vector<Rational> v(fn_basis.size(), Rational(0));
            for (const auto& [m, c] : up.terms()) v[col_of.at(m)] = c;
            span.add(std::move(v));
        }

        auto w = ex.extract_vector(pb.at(gname));
        std::vector<Polynomial> vec(fn_basis.size(), Polynomial(uctx));
        for (auto& [m, poly] : w) vec[col_of.at(m)] = std::move(poly);
        for (std::size_t r = 0; r < span.rows.size(); ++r) {
            Polynomial f = vec[span.pivots[r]];
            if (f.is_zero()) continue;
            for (std::size_t c = 0; c < fn_basis.size(); ++c)
                vec[c] -= span.rows[r][c] * f;
        }
        std::map<Monomial, Polynomial, TermOrderDesc> residual;
        for (std::size_t c = 0; c < fn_basis.size(); ++c)
            if (!vec[c].is_zero()) residual.emplace(fn_basis[c], vec[c]);
        ex.emit(std::move(residual), "restriction " + gname, sys.cs.equations, sys.cs.provenance);
    }

    // natural square-sum candidates: column norms restricted to the row
    // blocks 1..k, k+1..n, and 1..n
    for (int j = 0; j < n; ++j) {
        Polynomial ublock(uctx), vblock(uctx);
        for (int i = 0; i < n; ++i) {
            Polynomial a = Polynomial::variable(uctx, sys.entry[i][j]);
            if (i < k) ublock += a * a; else vblock += a * a;
        }
        if (k >= 1) sys.cs.sos_candidates.push_back(ublock);
        if (n - k >= 1) sys.cs.sos_candidates.push_back(vblock);
        sys.cs.sos_candidates.push_back(ublock + vblock);
    }
    return sys;
}

struct UnknownVerdict {
    std::string name;
    Verdict closure = Verdict::Unknown;
    Verdict real = Verdict::Unknown;
};

struct ZeroCheckReport {
    Verdict forced_zero = Verdict::Unknown;          // over Q/R
    Verdict forced_zero_closure = Verdict::Unknown;  // over the algebraic closure
    std::vector<UnknownVerdict> per_unknown;
    std::map<std::string, Rational> witness;  // nonzero solution, when found
    long equation_count = 0;
    long branches_explored = 0;
    bool budget_hit = false;
    double seconds = 0.0;

    bool forced() const { return forced_zero == Verdict::True; }
};

struct ForcedZeroOptions {
    long gb_max_pairs = 40000;       // per Groebner run in the real pass
    long gb_max_basis = 1200;
    long gb_max_poly_terms = 40000;
    long closure_gb_max_pairs = 6000;   // raw-system pass (closure verdicts)
    long closure_gb_max_poly_terms = 8000;
    int closure_rabinowitsch_max_unknowns = 8;
    int power_cap = 8;               // c^s membership probes
    int max_branch_depth = 14;
    long max_branches = 4000;
    int timeout_sec = 0;             // 0 = no wall-clock limit
};

namespace detail {

struct SolverSharedState {
    const ForcedZeroOptions* opt;
    std::chrono::steady_clock::time_point start;
    long branches = 0;
    bool budget_hit = false;

    bool out_of_time() const {
        if (opt->timeout_sec <= 0) return false;
        return std::chrono::steady_clock::now() - start > std::chrono::seconds(opt->timeout_sec);
    }
    GroebnerBudget gb_budget(long pair_cap = -1) const {
        GroebnerBudget b;
        b.max_pairs = pair_cap >= 0 ? pair_cap : opt->gb_max_pairs;
        b.max_basis = opt->gb_max_basis;
        b.max_poly_terms = opt->gb_max_poly_terms;
        if (opt->timeout_sec > 0) {
            auto deadline = start + std::chrono::seconds(opt->timeout_sec);
            b.interrupted = [deadline]() { return std::chrono::steady_clock::now() > deadline; };
        }
        return b;
    }
};

// g (or -g) a positive combination of even-exponent monomials?  Then each
// square root vanishes wherever g does, over any formally real field.
inline bool sos_shaped(const Polynomial& g, std::vector<Monomial>* parts) {
    if (g.is_zero()) return false;
    bool flip = g.leading_coefficient() < 0;
    for (const auto& [m, c] : g.terms()) {
        Rational cc = flip ? Rational(-c) : c;
        if (cc <= 0) return false;
        for (int e : m.exps)
            if (e % 2 != 0) return false;
    }
    if (parts) {
        for (const auto& [m, c] : g.terms()) {
            std::vector<int> half(m.exps.size());
            for (std::size_t i = 0; i < m.exps.size(); ++i) half[i] = m.exps[i] / 2;
            parts->push_back(Monomial(std::move(half), *g.context()));
        }
    }
    return true;
}

// Cached radical-membership probing against one fixed basis.  Power probes
// are sound in the True direction always; the False direction is only
// claimed when the staircase is finite (bounding the nilpotency index) and
// the basis is not degree-truncated.
class RadicalProber {
  public:
    explicit RadicalProber(const GroebnerBasis& gb) : gb_(gb) {
        if (auto sc = finite_staircase(gb, 4096)) bound_ = static_cast<long>(sc->size());
    }

    const GroebnerBasis& gb() const { return gb_; }

    Verdict probe(const Polynomial& c, int power_cap) const {
        if (gb_.contains_one()) return Verdict::True;
        if (c.is_zero()) return Verdict::True;
        bool complete = bound_ > 0 && !gb_.degree_truncated();
        long cap = complete ? std::min<long>(bound_, 64) : power_cap;
        Polynomial first = gb_.normal_form(c);
        if (first.is_zero()) return Verdict::True;
        if (!complete && first == c) cap = std::min<long>(cap, 3);  // no visible interaction
        Polynomial pw = first;
        for (long s = 2; s <= cap; ++s) {
            pw = gb_.normal_form(pw * c);
            if (pw.is_zero()) return Verdict::True;
            if (pw.term_count() > 2000) return Verdict::Unknown;
        }
        if (complete && cap >= bound_) return Verdict::False;
        return Verdict::Unknown;
    }

  private:
    const GroebnerBasis& gb_;
    long bound_ = -1;
};

struct BranchState {
    std::vector<Polynomial> equations;   // simplified by zero_vars
    std::set<std::size_t> zero_vars;     // unknown indices fixed to 0
    std::vector<Polynomial> zero_polys;  // further known-vanishing polynomials
};

inline Polynomial drop_zero_vars(const Polynomial& p, const std::set<std::size_t>& zv) {
    if (zv.empty()) return p;
    Polynomial out(p.context());
    for (const auto& [m, c] : p.terms()) {
        bool kill = false;
        for (std::size_t v : zv)
            if (m.exps[v] > 0) { kill = true; break; }
        if (!kill) out.add_term(m, c);
    }
    return out;
}

class RealForcedSolver {
  public:
    RealForcedSolver(const ConstraintSystem& cs, SolverSharedState& shared)
        : cs_(cs), shared_(shared) {}

    // Returns the set of unknown indices proven to vanish on every real
    // point of the solution set.
    std::set<std::size_t> solve(BranchState state, int depth) {
        std::set<std::size_t> proven = state.zero_vars;
        bool progress = true;
        std::optional<GroebnerBasis> gb;
        while (progress) {
            progress = false;
            if (shared_.out_of_time()) { shared_.budget_hit = true; return proven; }
            gb = run_gb(state);
            if (!gb) { shared_.budget_hit = true; return proven; }
            if (gb->contains_one()) return all_unknowns();  // no real points at all

            RadicalProber prober(*gb);

            // direct per-unknown radical probes
            for (std::size_t v = 0; v < cs_.unknowns.size(); ++v) {
                if (state.zero_vars.count(v)) continue;
                Polynomial uv = Polynomial::variable(cs_.unknown_ctx, cs_.unknowns[v]);
                if (prober.probe(uv, shared_.opt->power_cap) == Verdict::True) {
                    state.zero_vars.insert(v);
                    proven.insert(v);
                    progress = true;
                }
            }
            if (progress) continue;

            // square-sum splitting: reduced-basis elements, registered
            // candidates, and co-occurring variable pairs
            std::vector<Polynomial> sos_pool;
            for (const auto& g : gb->basis()) sos_pool.push_back(g);
            for (const auto& c : cs_.sos_candidates)
                sos_pool.push_back(drop_zero_vars(c, state.zero_vars));
            for (auto [i, j] : cooccurring_pairs(*gb, state)) {
                Polynomial ui = Polynomial::variable(cs_.unknown_ctx, cs_.unknowns[i]);
                Polynomial uj = Polynomial::variable(cs_.unknown_ctx, cs_.unknowns[j]);
                sos_pool.push_back(ui * ui + uj * uj);
            }
            for (const auto& cand : sos_pool) {
                std::vector<Monomial> parts;
                if (!sos_shaped(cand, &parts)) continue;
                if (prober.probe(cand, shared_.opt->power_cap) != Verdict::True) continue;
                for (const auto& part : parts) {
                    if (part.total_degree() == 1) {
                        for (std::size_t v = 0; v < part.exps.size(); ++v)
                            if (part.exps[v] == 1 && !state.zero_vars.count(v)) {
                                state.zero_vars.insert(v);
                                proven.insert(v);
                                progress = true;
                            }
                    } else if (!part.is_one()) {
                        Polynomial pp = Polynomial::term(cs_.unknown_ctx, part, Rational(1));
                        if (!known(state, pp)) {
                            state.zero_polys.push_back(pp);
                            progress = true;
                        }
                    }
                }
            }
        }
        if (proven.size() == cs_.unknowns.size()) return proven;

        // case analysis: a product u_i u_j vanishing identically on the
        // variety splits it into the u_i = 0 and u_j = 0 parts; prefer
        // splits already visible as monomial elements of the basis
        if (depth >= shared_.opt->max_branch_depth) return proven;
        if (shared_.branches >= shared_.opt->max_branches) {
            shared_.budget_hit = true;
            return proven;
        }
        std::optional<std::pair<std::size_t, std::size_t>> split = monomial_split(*gb, state);
        if (!split) {
            RadicalProber prober(*gb);
            for (auto [i, j] : cooccurring_pairs(*gb, state)) {
                Polynomial prod = Polynomial::variable(cs_.unknown_ctx, cs_.unknowns[i]) *
                                  Polynomial::variable(cs_.unknown_ctx, cs_.unknowns[j]);
                if (prober.probe(prod, std::min(shared_.opt->power_cap, 8)) == Verdict::True) {
                    split = std::make_pair(i, j);
                    break;
                }
            }
        }
        if (split) {
            shared_.branches += 2;
            std::set<std::size_t> left = solve(with_var(state, split->first), depth + 1);
            std::set<std::size_t> right = solve(with_var(state, split->second), depth + 1);
            std::set<std::size_t> both;
            std::set_intersection(left.begin(), left.end(), right.begin(), right.end(),
                                  std::inserter(both, both.begin()));
            both.insert(proven.begin(), proven.end());
            return both;
        }
        return proven;
    }

  private:
    std::set<std::size_t> all_unknowns() const {
        std::set<std::size_t> s;
        for (std::size_t v = 0; v < cs_.unknowns.size(); ++v) s.insert(v);
        return s;
    }
    static bool known(const BranchState& st, const Polynomial& p) {
        for (const auto& q : st.zero_polys)
            if (q == p) return true;
        return false;
    }
    // variable pairs appearing together inside some basis monomial
    std::vector<std::pair<std::size_t, std::size_t>> cooccurring_pairs(
        const GroebnerBasis& gb, const BranchState& st) const {
        std::set<std::pair<std::size_t, std::size_t>> seen;
        for (const auto& g : gb.basis())
            for (const auto& [m, c] : g.terms())
                for (std::size_t i = 0; i < m.exps.size(); ++i) {
                    if (m.exps[i] == 0 || st.zero_vars.count(i)) continue;
                    for (std::size_t j = i + 1; j < m.exps.size(); ++j) {
                        if (m.exps[j] == 0 || st.zero_vars.count(j)) continue;
                        seen.emplace(i, j);
                    }
                }
        return {seen.begin(), seen.end()};
    }
    // a basis element that is a single term with exactly two support
    // variables gives an immediate sound case split
    std::optional<std::pair<std::size_t, std::size_t>> monomial_split(
        const GroebnerBasis& gb, const BranchState& st) const {
        std::optional<std::pair<std::size_t, std::size_t>> best;
        long best_deg = 0;
        for (const auto& g : gb.basis()) {
            if (g.term_count() != 1) continue;
            const Monomial& m = g.leading_monomial();
            std::vector<std::size_t> support;
            for (std::size_t v = 0; v < m.exps.size(); ++v)
                if (m.exps[v] > 0) support.push_back(v);
            if (support.size() != 2) continue;
            if (st.zero_vars.count(support[0]) || st.zero_vars.count(support[1])) continue;
            if (!best || m.wdeg < best_deg) {
                best = std::make_pair(support[0], support[1]);
                best_deg = m.wdeg;
            }
        }
        return best;
    }
    BranchState with_var(const BranchState& st, std::size_t v) const {
        BranchState nxt = st;
        nxt.zero_vars.insert(v);
        for (auto& e : nxt.equations) e = drop_zero_vars(e, nxt.zero_vars);
        for (auto& e : nxt.zero_polys) e = drop_zero_vars(e, nxt.zero_vars);
        return nxt;
    }
    std::optional<GroebnerBasis> run_gb(const BranchState& st) {
        std::vector<Polynomial> gens;
        for (const auto& e : st.equations) {
            Polynomial s = drop_zero_vars(e, st.zero_vars);
            if (!s.is_zero()) gens.push_back(std::move(s));
        }
        for (const auto& e : st.zero_polys) {
            Polynomial s = drop_zero_vars(e, st.zero_vars);
            if (!s.is_zero()) gens.push_back(std::move(s));
        }
        for (std::size_t v : st.zero_vars)
            gens.push_back(Polynomial::variable(cs_.unknown_ctx, cs_.unknowns[v]));
        try {
            return buchberger(IdealSpec(cs_.unknown_ctx, std::move(gens)), shared_.gb_budget());
        } catch (const BudgetExceeded&) {
            return std::nullopt;
        }
    }

    const ConstraintSystem& cs_;
    SolverSharedState& shared_;
};

// deterministic small-point search for an explicit nonzero solution
inline std::optional<std::map<std::string, Rational>> find_witness(const ConstraintSystem& cs) {
    const std::vector<Rational> values = {Rational(1), Rational(-1), Rational(2), Rational(-2),
                                          Rational(1, 2)};
    auto satisfies = [&](const std::map<std::string, Rational>& pt) {
        for (const auto& e : cs.equations)
            if (evaluate(e, pt) != 0) return false;
        return true;
    };
    const std::size_t m = cs.unknowns.size();
    for (std::size_t i = 0; i < m; ++i) {
        for (const auto& v : values) {
            std::map<std::string, Rational> pt{{cs.unknowns[i], v}};
            if (satisfies(pt)) return pt;
        }
    }
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            for (const auto& vi : values)
                for (const auto& vj : values) {
                    std::map<std::string, Rational> pt{{cs.unknowns[i], vi}, {cs.unknowns[j], vj}};
                    if (satisfies(pt)) return pt;
                }
    // all-equal pattern (catches e.g. uniform matrices)
    for (const auto& v : values) {
        std::map<std::string, Rational> pt;
        for (const auto& u : cs.unknowns) pt[u] = v;
        if (satisfies(pt)) return pt;
    }
    return std::nullopt;
}

}  // namespace detail

// Decide whether the system admits only the zero solution.  Never returns a
// wrong boolean: True and False verdicts carry proofs (radical membership /
// an explicit witness); everything else stays Unknown.
inline ZeroCheckReport forced_zero(const ConstraintSystem& cs, const ForcedZeroOptions& opt = {}) {
    auto t0 = std::chrono::steady_clock::now();
    ZeroCheckReport rep;
    rep.equation_count = static_cast<long>(cs.equations.size());
    rep.per_unknown.reserve(cs.unknowns.size());
    for (const auto& u : cs.unknowns) rep.per_unknown.push_back({u, Verdict::Unknown, Verdict::Unknown});

    if (cs.unknowns.empty()) {
        rep.forced_zero = rep.forced_zero_closure = Verdict::True;
        return rep;
    }

    detail::SolverSharedState shared{&opt, t0, 0, false};

    // explicit nonzero solution refutes forcing outright
    if (auto w = detail::find_witness(cs)) {
        rep.witness = *w;
        for (auto& pv : rep.per_unknown) {
            auto it = rep.witness.find(pv.name);
            if (it != rep.witness.end() && it->second != 0) pv.closure = pv.real = Verdict::False;
        }
    }

    // closure verdicts on the raw system
    std::optional<GroebnerBasis> raw_gb;
    try {
        std::vector<Polynomial> eqs = cs.equations;
        if (eqs.empty()) {
            for (auto& pv : rep.per_unknown)
                if (pv.closure == Verdict::Unknown) pv.closure = pv.real = Verdict::False;
        } else {
            GroebnerBudget cb = shared.gb_budget(opt.closure_gb_max_pairs);
            cb.max_poly_terms = opt.closure_gb_max_poly_terms;
            raw_gb = buchberger(IdealSpec(cs.unknown_ctx, eqs), cb);
        }
    } catch (const BudgetExceeded&) {
        shared.budget_hit = true;
    }
    if (raw_gb) {
        detail::RadicalProber prober(*raw_gb);
        for (auto& pv : rep.per_unknown) {
            if (pv.closure != Verdict::Unknown) continue;
            Polynomial uv = Polynomial::variable(cs.unknown_ctx, pv.name);
            Verdict v = prober.probe(uv, opt.power_cap);
            if (v == Verdict::Unknown &&
                static_cast<int>(cs.unknowns.size()) <= opt.closure_rabinowitsch_max_unknowns) {
                try {
                    IdealSpec spec(cs.unknown_ctx, cs.equations);
                    v = radical_contains(spec, uv, shared.gb_budget(opt.closure_gb_max_pairs))
                            ? Verdict::True
                            : Verdict::False;
                } catch (const BudgetExceeded&) {
                    shared.budget_hit = true;
                }
            }
            pv.closure = v;
            if (v == Verdict::True) pv.real = Verdict::True;  // closure forcing implies real
        }
    }

    // real pass: degree-staged equations, square-sum splitting, branching
    if (!cs.equations.empty()) {
        std::vector<long> degs;
        for (const auto& e : cs.equations)
            degs.push_back(e.is_zero() ? 0 : e.weighted_degree());
        std::vector<long> stages = degs;
        std::sort(stages.begin(), stages.end());
        stages.erase(std::unique(stages.begin(), stages.end()), stages.end());

        detail::BranchState state;
        for (long stage : stages) {
            state.equations.clear();
            for (std::size_t i = 0; i < cs.equations.size(); ++i)
                if (degs[i] <= stage) state.equations.push_back(cs.equations[i]);
            detail::RealForcedSolver solver(cs, shared);
            std::set<std::size_t> proven = solver.solve(state, 0);
            for (std::size_t v : proven) {
                state.zero_vars.insert(v);
                rep.per_unknown[v].real = Verdict::True;
            }
            bool all = true;
            for (const auto& pv : rep.per_unknown)
                if (pv.real != Verdict::True) { all = false; break; }
            if (all) break;
            if (shared.out_of_time()) { shared.budget_hit = true; break; }
        }
    }

    // aggregate
    auto aggregate = [&](auto member) {
        bool all_true = true, any_false = false, any_unknown = false;
        for (const auto& pv : rep.per_unknown) {
            Verdict v = member(pv);
            if (v != Verdict::True) all_true = false;
            if (v == Verdict::False) any_false = true;
            if (v == Verdict::Unknown) any_unknown = true;
        }
        if (all_true) return Verdict::True;
        if (any_false) return Verdict::False;
        return any_unknown ? Verdict::Unknown : Verdict::False;
    };
    rep.forced_zero = aggregate([](const UnknownVerdict& pv) { return pv.real; });
    rep.forced_zero_closure = aggregate([](const UnknownVerdict& pv) { return pv.closure; });
    rep.branches_explored = shared.branches;
    rep.budget_hit = shared.budget_hit;
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

// Exact solution-set comparison for small systems: the quotient by the
// constraint ideal is finite-dimensional with dimension equal to the number
// of given points, and every point satisfies every equation.  That pins the
// solution set to exactly those points, each reduced.
struct SolutionSetCheck {
    bool all_points_satisfy = false;
    bool zero_dimensional = false;
    long quotient_dimension = -1;
    bool matches = false;
};

enum class PropositionId { P1_4, P6_2, P1_5, P6_4, P6_5, EX7_1, EX7_2 };

inline const char* proposition_name(PropositionId id) {
    switch (id) {
        case PropositionId::P1_4: return "P1_4";
        case PropositionId::P6_2: return "P6_2";
        case PropositionId::P1_5: return "P1_5";
        case PropositionId::P6_4: return "P6_4";
        case PropositionId::P6_5: return "P6_5";
        case PropositionId::EX7_1: return "EX7_1";
        case PropositionId::EX7_2: return "EX7_2";
    }
    return "?";
}

inline std::optional<PropositionId> proposition_from_name(const std::string& s) {
    for (PropositionId id : {PropositionId::P1_4, PropositionId::P6_2, PropositionId::P1_5,
                             PropositionId::P6_4, PropositionId::P6_5, PropositionId::EX7_1,
                             PropositionId::EX7_2})
        if (s == proposition_name(id)) return id;
    return std::nullopt;
}

struct PropositionResult {
    PropositionId id;
    int n = 0, k = 0;
    ZeroCheckReport report;
    Verdict m_forced = Verdict::Unknown;  // EX7_* only: the scalar on c1
    long unknown_count = 0;
};

// Build the matching constraint system and run the forced-zero decision:
//   P1_4  generator-level, every Chern class pinned to zero
//   P6_2  generator-level, every Pontryagin class pinned to zero (e^2 too)
//   P1_5  lift-level, image of c1 pinned to zero
//   P6_4  lift-level, image of p1 pinned to zero (needs k <= n-2)
//   P6_5  lift-level, image of e pinned to zero (needs n-k = 2)
//   EX7_* generator-level with p1 -> 0 and c1 -> m c1, m a fresh unknown
inline PropositionResult verify_proposition(PropositionId id, int n, int k,
                                            const ForcedZeroOptions& opt = {},
                                            const BuildOptions& build_opt = {}) {
    check_partial_params(n, k);
    PropositionResult out;
    out.id = id;
    out.n = n;
    out.k = k;

    auto run_generator = [&](const std::map<std::string, Polynomial>& pins,
                             const std::vector<std::string>& symbols,
                             const std::vector<Polynomial>& zeros,
                             const PartialFlagPresentation& pres) {
        GeneratorSystem sys = build_generator_system(pres, pins, symbols, zeros);
        out.unknown_count = static_cast<long>(sys.cs.unknowns.size());
        out.report = forced_zero(sys.cs, opt);
        for (const auto& pv : out.report.per_unknown)
            if (pv.name == "m") out.m_forced = pv.real;
    };

    switch (id) {
        case PropositionId::P1_4: {
            PartialFlagPresentation pres(n, k, build_opt);
            std::map<std::string, Polynomial> pins;
            for (int i = 1; i <= k; ++i)
                pins.emplace(c_name(i), Polynomial::zero(pres.context()));
            run_generator(pins, {}, {}, pres);
            break;
        }
        case PropositionId::P6_2: {
            PartialFlagPresentation pres(n, k, build_opt);
            std::map<std::string, Polynomial> pins;
            for (int j = 1; j <= n - k - 1; ++j)
                pins.emplace(p_name(j), Polynomial::zero(pres.context()));
            // p_{n-k} = e^2 must also die
            Polynomial e = Polynomial::variable(pres.context(), "e");
            run_generator(pins, {}, {e * e}, pres);
            break;
        }
        case PropositionId::P1_5:
        case PropositionId::P6_4:
        case PropositionId::P6_5: {
            FlagPresentation flag(n, build_opt);
            LiftPin pin = id == PropositionId::P1_5   ? LiftPin::c1_zero
                          : id == PropositionId::P6_4 ? LiftPin::p1_zero
                                                      : LiftPin::euler_zero;
            LiftSystem sys = build_lift_system(flag, k, pin);
            out.unknown_count = static_cast<long>(sys.cs.unknowns.size());
            out.report = forced_zero(sys.cs, opt);
            break;
        }
        case PropositionId::EX7_1:
        case PropositionId::EX7_2: {
            if (n - k != 2)
                throw std::invalid_argument("worked examples need n-k = 2");
            if ((id == PropositionId::EX7_1 && (n != 5 || k != 3)) ||
                (id == PropositionId::EX7_2 && (n != 6 || k != 4)))
                throw std::invalid_argument("worked example parameters do not match");
            PartialFlagPresentation pres(n, k, build_opt);
            ContextPtr pctx = pin_context(pres, {"m"});
            std::map<std::string, Polynomial> pins;
            pins.emplace(p_name(1), Polynomial::zero(pctx));
            pins.emplace(c_name(1), Polynomial::variable(pctx, "m") *
                                        Polynomial::variable(pctx, c_name(1)));
            run_generator(pins, {"m"}, {}, pres);
            break;
        }
    }
    return out;
}

inline SolutionSetCheck check_solution_set(const ConstraintSystem& cs,
                                           const std::vector<std::map<std::string, Rational>>& pts,
                                           const ForcedZeroOptions& opt = {}) {
    SolutionSetCheck out;
    out.all_points_satisfy = true;
    for (const auto& pt : pts)
        for (const auto& e : cs.equations)
            if (evaluate(e, pt) != 0) out.all_points_satisfy = false;
    GroebnerBudget budget;
    budget.max_pairs = opt.gb_max_pairs;
    budget.max_basis = opt.gb_max_basis;
    try {
        GroebnerBasis gb = buchberger(IdealSpec(cs.unknown_ctx, cs.equations), budget);
        if (auto sc = finite_staircase(gb)) {
            out.zero_dimensional = true;
            out.quotient_dimension = static_cast<long>(sc->size());
        }
    } catch (const BudgetExceeded&) {
        return out;
    }
    // distinctness
    bool distinct = true;
    for (std::size_t i = 0; i < pts.size() && distinct; ++i)
        for (std::size_t j = i + 1; j < pts.size() && distinct; ++j)
            if (pts[i] == pts[j]) distinct = false;
    out.matches = out.all_points_satisfy && out.zero_dimensional && distinct &&
                  out.quotient_dimension == static_cast<long>(pts.size());
    return out;
}

}  // namespace mnk
