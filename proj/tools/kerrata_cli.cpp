#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "kerrata.h"

namespace {

int exit_code(kerr_status s) {
    switch (s) {
        case KERR_OK: return 0;
        case KERR_INPUT_ERROR: return 2;
        case KERR_RESOURCE_CAP: return 3;
        default: return 1;
    }
}

int report(kerr_status s) {
    if (s != KERR_OK) std::cerr << "error: " << kerr_last_error() << "\n";
    return exit_code(s);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"k-mismatch dictionary look-up"};
    app.require_subcommand(1);

    std::string dict_path, out_path, mode = "full", fps = "off";
    kerr_build_options bopt;
    kerr_build_options_init(&bopt);
    bool force = false;
    auto* build = app.add_subcommand("build", "build an index file from a dictionary");
    build->add_option("--dict", dict_path, "dictionary, one string per line")->required();
    build->add_option("--k", bopt.k, "mismatches")->required();
    build->add_option("--mode", mode)->check(CLI::IsMember({"full", "sampled"}));
    build->add_option("--fingerprints", fps)->check(CLI::IsMember({"on", "off"}));
    build->add_option("--seed", bopt.seed);
    build->add_option("--out", out_path)->required();
    build->add_option("--memcap-mb", bopt.memcap_mb, "build memory cap; default KERRATA_MEMCAP_MB");
    build->add_flag("--force-errata", force, "use the tree even for dictionaries of one or two strings");
    build->add_option("--fault", bopt.fault)->group("");

    std::string index_path;
    std::vector<std::string> queries;
    bool with_stats = false;
    auto* query = app.add_subcommand("query", "look up query strings");
    query->add_option("--index", index_path)->required();
    query->add_option("--q", queries, "query string, repeatable")->required();
    query->add_flag("--stats", with_stats);

    std::uint64_t trials = 1000, seed = 1;
    unsigned threads = 1;
    auto* verify = app.add_subcommand("verify", "compare random queries with brute force");
    verify->add_option("--index", index_path)->required();
    verify->add_option("--trials", trials);
    verify->add_option("--seed", seed);
    verify->add_option("--threads", threads);

    kerr_fuzz_options fopt;
    kerr_fuzz_options_init(&fopt);
    auto* fuzz = app.add_subcommand("fuzz", "cross-check all modes on random dictionaries");
    fuzz->add_option("--max-d", fopt.max_d)->check(CLI::PositiveNumber);
    fuzz->add_option("--max-m", fopt.max_m)->check(CLI::PositiveNumber);
    fuzz->add_option("--max-k", fopt.max_k);
    fuzz->add_option("--seed", fopt.seed);
    fuzz->add_option("--rounds", fopt.rounds);
    fuzz->add_option("--fault", fopt.fault)->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    if (*build) {
        bopt.sampled = mode == "sampled";
        bopt.fingerprints = fps == "on";
        bopt.force_errata = force;
        kerr_index* idx = nullptr;
        kerr_status s = kerr_build_file(dict_path.c_str(), &bopt, &idx);
        if (s != KERR_OK) return report(s);
        s = kerr_save(idx, out_path.c_str());
        if (s == KERR_OK) {
            kerr_info info;
            kerr_index_info(idx, &info);
            std::cout << "strings " << info.total_strings << "\n"
                      << "size_bound " << info.size_bound << "\n"
                      << "tries " << info.tries << "\n"
                      << "index_bytes " << info.memory_bytes << "\n";
        }
        kerr_index_free(idx);
        return report(s);
    }

    if (*query) {
        kerr_index* idx = nullptr;
        kerr_status s = kerr_load(index_path.c_str(), &idx);
        if (s != KERR_OK) return report(s);
        kerr_info info;
        kerr_index_info(idx, &info);
        for (const auto& q : queries) {
            kerr_result* res = nullptr;
            s = kerr_query(idx, q.data(), q.size(), &res);
            if (s != KERR_OK) break;
            if (queries.size() > 1) std::cout << "> " << q << "\n";
            const std::uint32_t* ids = kerr_result_ids(res);
            for (std::size_t i = 0; i < kerr_result_count(res); ++i) std::cout << ids[i] << "\n";
            if (with_stats) {
                kerr_stats st;
                kerr_result_stats(res, &st);
                std::cout << "prefix_search_ops " << st.prefix_search_ops << "\n"
                          << "word_blocks_read " << st.word_blocks_read << "\n"
                          << "query_bound " << info.query_bound << "\n"
                          << "occ " << kerr_result_count(res) << "\n";
            }
            kerr_result_free(res);
        }
        kerr_index_free(idx);
        return report(s);
    }

    if (*verify) {
        kerr_index* idx = nullptr;
        kerr_status s = kerr_load(index_path.c_str(), &idx);
        if (s != KERR_OK) return report(s);
        kerr_verify_report rep{};
        s = kerr_verify(idx, trials, seed, threads, &rep);
        kerr_index_free(idx);
        if (s == KERR_OK || s == KERR_VERIFY_FAILED) {
            std::cout << (s == KERR_OK ? "PASS" : "FAIL") << " trials " << rep.trials << " failures " << rep.failures
                      << " seed " << seed << " max_prefix_search_ops " << rep.max_prefix_search_ops << "\n";
            if (s != KERR_OK) std::cout << kerr_last_error();
            return exit_code(s);
        }
        return report(s);
    }

    std::uint64_t done = 0;
    const kerr_status s = kerr_fuzz(&fopt, &done);
    if (s == KERR_OK || s == KERR_VERIFY_FAILED) {
        std::cout << (s == KERR_OK ? "PASS" : "FAIL") << " rounds " << done << " seed " << fopt.seed << "\n";
        if (s != KERR_OK) std::cout << kerr_last_error();
        return exit_code(s);
    }
    return report(s);
}
