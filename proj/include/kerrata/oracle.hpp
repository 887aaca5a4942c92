#pragma once

// Reference implementations over plain letter arrays. Nothing here touches
// packed words or the index structures.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace kerr::oracle {

using Letters = std::vector<std::uint8_t>;

struct OracleResult {
    std::vector<std::uint32_t> ids;        // ascending
    std::vector<std::size_t> distances;    // distances[i] belongs to ids[i]
};

/// All ids within Hamming distance k of p. Throws LengthMismatch.
OracleResult brute_lookup(const std::vector<Letters>& dict, std::span<const std::uint8_t> p, std::size_t k);
/// Second scan written differently (counts agreements); ids only.
std::vector<std::uint32_t> brute_lookup_by_agreement(const std::vector<Letters>& dict,
                                                     std::span<const std::uint8_t> p, std::size_t k);

std::size_t brute_hamming(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b);

/// Longest l such that label + q[0, l) is a prefix of some string in `strings`.
std::size_t brute_prefix_search(const std::vector<Letters>& strings, std::span<const std::uint8_t> label,
                                std::span<const std::uint8_t> q);

/// Ancestor-set intersection on a parent array (root has parent == self or ~0u).
std::uint32_t brute_lca(const std::vector<std::uint32_t>& parent, std::uint32_t u, std::uint32_t v);
/// Deepest ancestor of u (u included) whose depth is at most len.
std::uint32_t brute_wla(const std::vector<std::uint32_t>& parent, const std::vector<std::uint32_t>& depth,
                        std::uint32_t u, std::uint32_t len);

/// Weight-balanced tree by the direct recursive definition, preorder
/// (node, left, middle, right). Absent children are ~0u.
struct BruteWbtNode {
    std::uint32_t lo, hi;
    std::uint32_t left, mid, right;
};
std::vector<BruteWbtNode> brute_wbt(const std::vector<std::uint64_t>& weights);

/// Bound formulas evaluated with arbitrary precision, returned as decimal strings.
std::string brute_size_bound(std::uint64_t d, unsigned k);
std::string brute_query_bound(std::uint64_t d, unsigned k);

}  // namespace kerr::oracle
