// Command-line front end: builds and caches presentations, runs the
// verification commands, and emits text or JSON reports.
//
// Exit codes: 0 verified/computed, 1 refuted or undecided, 2 usage error.
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "mnk/report.hpp"

namespace {

mnk::Rational parse_rational(const std::string& s) {
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
    if (q.get_den() == 0) throw std::invalid_argument("bad rational: " + s);
    q.canonicalize();
    return q;
}

void emit(const mnk::Report& rep, bool json, bool timing) {
    if (json)
        std::cout << rep.json(timing);
    else
        std::cout << mnk::report_text(rep);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact-rational cohomology rings of SO(2n)/T^n and "
                 "SO(2n)/(U(k) x SO(2n-2k)), and their endomorphisms"};
    app.require_subcommand(1);
    app.fallthrough();

    bool json = false, timing = false;
    std::string cache_dir = ".mnk-cache";
    bool no_cache = false;
    int max_n = 7;
    int timeout_sec = 0;
    app.add_flag("--json", json, "emit a JSON report on stdout");
    app.add_flag("--timing", timing, "include wall-clock timing in JSON output");
    app.add_option("--cache-dir", cache_dir, "Groebner cache directory")->capture_default_str();
    app.add_flag("--no-cache", no_cache, "disable the Groebner cache");
    app.add_option("--max-n", max_n, "resource cap on n")->capture_default_str();
    app.add_option("--timeout-sec", timeout_sec, "wall-clock budget for zero-forcing runs");

    int n = 0, k = 0;
    std::string m_str = "2";
    std::string verify_id;

    CLI::App* present = app.add_subcommand("present", "print the ring presentation of M_{n,k}");
    present->add_option("n", n)->required();
    present->add_option("k", k)->required();

    CLI::App* betti = app.add_subcommand("betti", "Betti numbers, Euler characteristic, oracle check");
    betti->add_option("n", n)->required();
    betti->add_option("k", k)->required();

    CLI::App* lef = app.add_subcommand("lefschetz", "Lefschetz number of the degree-m endomorphism");
    lef->add_option("n", n)->required();
    lef->add_option("k", k)->required();
    lef->add_option("m", m_str)->required();

    CLI::App* lifts = app.add_subcommand("count-lifts", "enumerate and check the classified lifts");
    lifts->add_option("n", n)->required();
    lifts->add_option("k", k)->required();
    lifts->add_option("m", m_str)->required();

    CLI::App* verify = app.add_subcommand(
        "verify", "run a verification: T1_2, T1_3, P1_4, P6_2, P1_5, P6_4, P6_5, EX7_1, EX7_2");
    verify->add_option("id", verify_id)->required();
    verify->add_option("n", n)->required();
    verify->add_option("k", k)->required();
    verify->add_option("m", m_str, "scalar for T1_2/T1_3");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    mnk::ReportOptions ropt;
    if (!no_cache) ropt.cache_dir = cache_dir;
    ropt.max_n = max_n;
    ropt.timeout_sec = timeout_sec;

    try {
        mnk::Report rep;
        if (present->parsed()) {
            rep = mnk::report_present(n, k, ropt);
        } else if (betti->parsed()) {
            rep = mnk::report_betti(n, k, ropt);
        } else if (lef->parsed()) {
            rep = mnk::report_lefschetz(n, k, parse_rational(m_str), ropt);
        } else if (lifts->parsed()) {
            rep = mnk::report_count_lifts(n, k, parse_rational(m_str), ropt);
        } else if (verify->parsed()) {
            std::optional<mnk::Rational> m;
            if (verify->count("m")) m = parse_rational(m_str);
            rep = mnk::report_verify(verify_id, n, k, m, ropt);
        }
        emit(rep, json, timing);
        return rep.exit_code;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
