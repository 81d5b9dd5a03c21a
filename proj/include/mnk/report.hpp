// Report construction for the CLI: every command produces a Report whose
// JSON form is deterministic (stable key order, exact rationals as strings)
// so warm-cache reruns are byte-identical.  Wall-clock timing is kept out
// of the JSON unless explicitly requested.
#pragma once

#include <chrono>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "mnk/constraint.hpp"
#include "mnk/endomorphism.hpp"
#include "mnk/presentation.hpp"

namespace mnk {

using Json = nlohmann::ordered_json;

struct Report {
    Json payload;     // stable content
    int exit_code = 0;  // 0 verified/computed, 1 refuted or undecided, 2 usage
    double seconds = 0.0;

    std::string json(bool with_timing = false) const {
        Json j = payload;
        if (with_timing) j["timing_ms"] = static_cast<long>(seconds * 1000.0);
        return j.dump(1) + "\n";
    }
};

struct ReportOptions {
    std::optional<std::string> cache_dir;
    int timeout_sec = 0;
    int max_n = 7;
};

namespace detail {

inline BuildOptions build_options(const ReportOptions& ropt) {
    BuildOptions b;
    if (ropt.cache_dir) b.cache_dir = *ropt.cache_dir;
    return b;
}

inline void check_cap(int n, const ReportOptions& ropt) {
    if (n > ropt.max_n)
        throw std::invalid_argument("n exceeds --max-n resource cap (" +
                                    std::to_string(ropt.max_n) + ")");
}

inline Json rational_json(const Rational& q) { return rat_str(q); }

inline Json cache_json(const ReportOptions& ropt, int hits, int misses) {
    Json c;
    c["dir"] = ropt.cache_dir ? Json(*ropt.cache_dir) : Json(nullptr);
    c["hits"] = hits;
    c["misses"] = misses;
    return c;
}

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

}  // namespace detail

inline Report report_present(int n, int k, const ReportOptions& ropt) {
    detail::Timer timer;
    detail::check_cap(n, ropt);
    BuildStats stats;
    PartialFlagPresentation pres(n, k, detail::build_options(ropt));

    Report rep;
    Json& j = rep.payload;
    j["command"] = "present";
    j["params"] = Json{{"n", n}, {"k", k}};
    Json gens = Json::array();
    const ContextPtr& ctx = pres.context();
    for (std::size_t i = 0; i < ctx->size(); ++i)
        gens.push_back(Json{{"name", ctx->name(i)}, {"weight", ctx->weight(i)}});
    Json rels = Json::array();
    const auto& rows = pres.generators();
    for (std::size_t r = 0; r < rows.size(); ++r) {
        rels.push_back(Json{{"index", r + 1},
                            {"degree", rows[r].weighted_degree()},
                            {"relation", rows[r].str()}});
    }
    j["result"] = Json{{"generators", std::move(gens)},
                       {"relations", std::move(rels)},
                       {"complex_dim", pres.N()}};
    j["cache"] = detail::cache_json(ropt, pres.stats().cache_hit ? 1 : 0,
                                    pres.stats().cache_hit ? 0 : 1);
    j["status"] = "computed";
    rep.exit_code = 0;
    rep.seconds = timer.seconds();
    return rep;
}

inline Report report_betti(int n, int k, const ReportOptions& ropt) {
    detail::Timer timer;
    detail::check_cap(n, ropt);
    PartialFlagPresentation pres(n, k, detail::build_options(ropt));
    std::vector<long> b = pres.betti();
    std::vector<long> oracle = hilbert_oracle(n, k);
    bool match = b == oracle;

    Report rep;
    Json& j = rep.payload;
    j["command"] = "betti";
    j["params"] = Json{{"n", n}, {"k", k}};
    j["result"] = Json{{"betti", b},
                       {"hilbert_oracle", oracle},
                       {"oracle_match", match},
                       {"euler_characteristic", pres.euler_characteristic()},
                       {"complex_dim", pres.N()}};
    j["cache"] = detail::cache_json(ropt, pres.stats().cache_hit ? 1 : 0,
                                    pres.stats().cache_hit ? 0 : 1);
    j["status"] = match ? "verified" : "refuted";
    rep.exit_code = match ? 0 : 1;
    rep.seconds = timer.seconds();
    return rep;
}

inline Report report_lefschetz(int n, int k, const Rational& m, const ReportOptions& ropt) {
    detail::Timer timer;
    detail::check_cap(n, ropt);
    PartialFlagPresentation pres(n, k, detail::build_options(ropt));
    Rational value = lefschetz(pres, m);

    Report rep;
    Json& j = rep.payload;
    j["command"] = "lefschetz";
    j["params"] = Json{{"n", n}, {"k", k}, {"m", detail::rational_json(m)}};
    j["result"] = Json{{"lefschetz", detail::rational_json(value)},
                       {"N", pres.N()},
                       {"parity", pres.N() % 2 == 0 ? "even" : "odd"},
                       {"betti", pres.betti()}};
    j["cache"] = detail::cache_json(ropt, pres.stats().cache_hit ? 1 : 0,
                                    pres.stats().cache_hit ? 0 : 1);
    j["status"] = "computed";
    rep.exit_code = 0;
    rep.seconds = timer.seconds();
    return rep;
}

inline Report report_count_lifts(int n, int k, const Rational& m, const ReportOptions& ropt) {
    detail::Timer timer;
    detail::check_cap(n, ropt);
    BuildOptions bopt = detail::build_options(ropt);
    FlagPresentation flag(n, bopt);
    PartialFlagPresentation pres(n, k, bopt);

    std::vector<ClassifiedLift> lifts = enumerate_classified_lifts(n, k, m);
    GeneratorEndo plus = classified_endo(pres, m, +1);
    GeneratorEndo minus = classified_endo(pres, m, -1);

    long count_plus = 0, count_minus = 0;
    bool all_endo = true, all_gram = true, all_restrict = true;
    for (const auto& cl : lifts) {
        if (cl.restriction_sign > 0) ++count_plus; else ++count_minus;
        if (!lift_is_endomorphism(cl.lift, flag)) all_endo = false;
        GramReport gr = gram_report(cl.lift);
        if (!gr.scalar || gr.diagonal != m * m) all_gram = false;
        const GeneratorEndo& target = cl.restriction_sign > 0 ? plus : minus;
        if (!lift_restricts_to(cl.lift, target, pres, flag)) all_restrict = false;
    }
    long expected = 1;
    for (int i = 2; i <= k; ++i) expected *= i;
    for (int i = 2; i <= n - k; ++i) expected *= i;
    expected <<= (n - k);
    bool verified = all_endo && all_gram && all_restrict &&
                    static_cast<long>(lifts.size()) == expected;

    Report rep;
    Json& j = rep.payload;
    j["command"] = "count-lifts";
    j["params"] = Json{{"n", n}, {"k", k}, {"m", detail::rational_json(m)}};
    j["result"] = Json{{"total", lifts.size()},
                       {"expected", expected},
                       {"per_sign", Json{{"plus", count_plus}, {"minus", count_minus}}},
                       {"all_lift_endomorphisms", all_endo},
                       {"all_gram_scalar_m2", all_gram},
                       {"all_restrict_to_classified", all_restrict}};
    j["cache"] = detail::cache_json(ropt, (flag.stats().cache_hit ? 1 : 0) + (pres.stats().cache_hit ? 1 : 0),
                                    (flag.stats().cache_hit ? 0 : 1) + (pres.stats().cache_hit ? 0 : 1));
    j["status"] = verified ? "verified" : "refuted";
    rep.exit_code = verified ? 0 : 1;
    rep.seconds = timer.seconds();
    return rep;
}

inline Json zerocheck_json(const ZeroCheckReport& zr) {
    Json j;
    j["forced_zero"] = verdict_str(zr.forced_zero);
    j["forced_zero_closure"] = verdict_str(zr.forced_zero_closure);
    Json per = Json::array();
    for (const auto& pv : zr.per_unknown)
        per.push_back(Json{{"unknown", pv.name},
                           {"closure", verdict_str(pv.closure)},
                           {"real", verdict_str(pv.real)}});
    j["per_unknown"] = std::move(per);
    if (!zr.witness.empty()) {
        Json w;
        for (const auto& [name, val] : zr.witness) w[name] = rat_str(val);
        j["witness"] = std::move(w);
    }
    j["equations"] = zr.equation_count;
    j["branches"] = zr.branches_explored;
    j["budget_hit"] = zr.budget_hit;
    return j;
}

// verify T1_2 / T1_3 / propositions / worked examples
inline Report report_verify(const std::string& id, int n, int k,
                            const std::optional<Rational>& m, const ReportOptions& ropt) {
    detail::Timer timer;
    detail::check_cap(n, ropt);
    BuildOptions bopt = detail::build_options(ropt);

    Report rep;
    Json& j = rep.payload;
    j["command"] = "verify";
    Json params{{"id", id}, {"n", n}, {"k", k}};
    if (m) params["m"] = detail::rational_json(*m);
    j["params"] = std::move(params);

    if (id == "T1_2") {
        Rational mv = m.value_or(Rational(2));
        if (mv == 0) throw std::invalid_argument("T1_2 requires m != 0");
        PartialFlagPresentation pres(n, k, bopt);
        bool plus = is_ring_endomorphism(classified_endo(pres, mv, +1), pres);
        bool minus = is_ring_endomorphism(classified_endo(pres, mv, -1), pres);
        j["result"] = Json{{"classified_plus_is_endo", plus}, {"classified_minus_is_endo", minus}};
        j["cache"] = detail::cache_json(ropt, pres.stats().cache_hit ? 1 : 0,
                                        pres.stats().cache_hit ? 0 : 1);
        bool ok = plus && minus;
        j["status"] = ok ? "verified" : "refuted";
        rep.exit_code = ok ? 0 : 1;
    } else if (id == "T1_3") {
        Rational mv = m.value_or(Rational(2));
        Report inner = report_count_lifts(n, k, mv, ropt);
        j["result"] = inner.payload["result"];
        j["cache"] = inner.payload["cache"];
        j["status"] = inner.payload["status"];
        rep.exit_code = inner.exit_code;
    } else if (auto pid = proposition_from_name(id)) {
        ForcedZeroOptions fopt;
        fopt.timeout_sec = ropt.timeout_sec;
        PropositionResult res = verify_proposition(*pid, n, k, fopt, bopt);
        Json r = zerocheck_json(res.report);
        r["unknowns"] = res.unknown_count;
        if (*pid == PropositionId::EX7_1 || *pid == PropositionId::EX7_2)
            r["m_forced_zero"] = verdict_str(res.m_forced);
        j["result"] = std::move(r);
        j["cache"] = detail::cache_json(ropt, 0, 1);
        switch (res.report.forced_zero) {
            case Verdict::True:
                j["status"] = "verified";
                rep.exit_code = 0;
                break;
            case Verdict::False:
                j["status"] = "refuted";
                rep.exit_code = 1;
                break;
            default:
                j["status"] = "undecided";
                rep.exit_code = 1;
                break;
        }
    } else {
        throw std::invalid_argument("unknown verification id: " + id);
    }
    rep.seconds = timer.seconds();
    return rep;
}

inline std::string report_text(const Report& rep) {
    std::ostringstream os;
    const Json& j = rep.payload;
    os << j["command"].get<std::string>();
    if (j.contains("params")) os << " " << j["params"].dump();
    os << "\n";
    if (j.contains("result")) os << j["result"].dump(1) << "\n";
    os << "status: " << j["status"].get<std::string>() << "  ("
       << static_cast<long>(rep.seconds * 1000.0) << " ms)\n";
    return os.str();
}

}  // namespace mnk
