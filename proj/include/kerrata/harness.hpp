#pragma once

// Oracle-checked verification and multi-mode fuzzing shared by the CLI, the
// C API and the acceptance run.

#include <cstdint>
#include <string>
#include <vector>

#include "kerrata/index.hpp"
#include "kerrata/oracle.hpp"

namespace kerr {

struct Counterexample {
    std::vector<oracle::Letters> dict;
    oracle::Letters query;
    unsigned sigma = 2;
    unsigned k = 0;
    std::string mode;
    std::vector<std::uint32_t> expected;
    std::vector<std::uint32_t> got;
};

/// Dictionary lines and query rendered as digits (letter 1 -> '0'), plus
/// the expected and returned ids.
std::string describe(const Counterexample& c);

struct VerifyReport {
    std::uint64_t trials = 0;
    std::uint64_t failures = 0;
    std::uint64_t max_prefix_search_ops = 0;
    std::optional<Counterexample> first;
};

/// Random queries against an index: dictionary strings with up to k + 2
/// flipped letters and uniform strings, half each. Checks ids against the
/// oracle and prefix_search_ops against its budget.
VerifyReport verify_index(const Index& index, std::uint64_t trials, std::uint64_t seed, unsigned threads = 1);

struct FuzzOptions {
    std::size_t max_d = 64;
    std::size_t max_m = 64;
    unsigned max_k = 2;
    std::uint64_t seed = 1;
    std::uint64_t rounds = 200;
    std::uint32_t queries_per_round = 16;
    int fault = 0;
};

struct FuzzReport {
    std::uint64_t rounds = 0;
    std::uint64_t queries = 0;
    std::optional<Counterexample> failure;  // shrunk
};

/// Per round: a random dictionary built in every mode (full, sampled, each
/// with and without fingerprints), each also saved and reloaded; every
/// query must give the oracle's ids and identical stats across the reload.
FuzzReport fuzz(const FuzzOptions& opt);

/// Index option sets exercised by fuzz, named "full", "sampled",
/// "full+fp", "sampled+fp".
std::vector<std::pair<std::string, IndexOptions>> all_modes(unsigned k, std::uint64_t seed, int fault = 0);

/// Smallest failing case reachable by deleting strings, then letter columns.
Counterexample shrink(Counterexample c, int fault);

}  // namespace kerr
