// JSON cache for reduced Groebner bases.  Keyed by a content hash of the
// generator list so a changed presentation can never be served a stale
// basis; a second hash over the stored basis catches file corruption.
#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mnk/groebner.hpp"

namespace mnk {

inline std::string polynomial_fingerprint(const Polynomial& p) {
    std::ostringstream os;
    for (const auto& [m, c] : p.terms()) {
        os << rat_str(c) << "[";
        for (int e : m.exps) os << e << ",";
        os << "];";
    }
    return os.str();
}

inline std::string generators_hash(const std::vector<Polynomial>& gens) {
    std::uint64_t h = fnv1a("mnk-gb-v1");
    for (const auto& g : gens) h = fnv1a(polynomial_fingerprint(g), h);
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

namespace detail {

inline nlohmann::ordered_json poly_to_json(const Polynomial& p) {
    nlohmann::ordered_json terms = nlohmann::ordered_json::array();
    for (const auto& [m, c] : p.terms()) {
        nlohmann::ordered_json coeff = nlohmann::ordered_json::array();
        coeff.push_back(c.get_num().get_str());
        coeff.push_back(c.get_den().get_str());
        nlohmann::ordered_json t = nlohmann::ordered_json::array();
        t.push_back(coeff);
        t.push_back(m.exps);
        terms.push_back(std::move(t));
    }
    return terms;
}

inline Polynomial poly_from_json(const nlohmann::json& j, const ContextPtr& ctx) {
    Polynomial p(ctx);
    for (const auto& t : j) {
        mpz_class num(t.at(0).at(0).get<std::string>());
        mpz_class den(t.at(0).at(1).get<std::string>());
        Rational c(num, den);
        c.canonicalize();
        std::vector<int> exps = t.at(1).get<std::vector<int>>();
        p.add_term(Monomial(std::move(exps), *ctx), c);
    }
    return p;
}

}  // namespace detail

inline nlohmann::ordered_json gb_to_json(const std::vector<Polynomial>& generators,
                                         const GroebnerBasis& gb) {
    nlohmann::ordered_json j;
    nlohmann::ordered_json ctx;
    ctx["vars"] = gb.context()->names();
    ctx["weights"] = gb.context()->weights();
    j["context"] = std::move(ctx);
    j["generators_hash"] = generators_hash(generators);
    nlohmann::ordered_json basis = nlohmann::ordered_json::array();
    for (const auto& g : gb.basis()) basis.push_back(detail::poly_to_json(g));
    j["basis_hash"] = std::to_string(fnv1a(basis.dump()));
    j["basis"] = std::move(basis);
    return j;
}

inline void save_gb(const std::filesystem::path& file, const std::vector<Polynomial>& generators,
                    const GroebnerBasis& gb) {
    std::filesystem::create_directories(file.parent_path());
    std::ofstream os(file);
    os << gb_to_json(generators, gb).dump(1) << "\n";
}

// Returns the cached basis only when the file parses, the generator hash
// matches the given generators, and the basis hash matches its payload.
inline std::optional<GroebnerBasis> load_gb(const std::filesystem::path& file,
                                            const ContextPtr& ctx,
                                            const std::vector<Polynomial>& generators) {
    std::ifstream is(file);
    if (!is) return std::nullopt;
    nlohmann::json j;
    try {
        is >> j;
        if (j.at("generators_hash").get<std::string>() != generators_hash(generators))
            return std::nullopt;
        const auto& jctx = j.at("context");
        if (jctx.at("vars").get<std::vector<std::string>>() != ctx->names() ||
            jctx.at("weights").get<std::vector<int>>() != ctx->weights())
            return std::nullopt;
        if (j.at("basis_hash").get<std::string>() != std::to_string(fnv1a(j.at("basis").dump())))
            return std::nullopt;
        std::vector<Polynomial> basis;
        for (const auto& g : j.at("basis")) basis.push_back(detail::poly_from_json(g, ctx));
        return GroebnerBasis(ctx, std::move(basis), 0);
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

}  // namespace mnk
