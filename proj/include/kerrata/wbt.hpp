#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "kerrata/core.hpp"

namespace kerr {

/// Ternary tree over weighted leaves 0..h-1. A node covers a contiguous leaf
/// range; a range of two or more leaves splits at the smallest index mu with
/// 2 * (w_0 + ... + w_mu) > total into (left, middle leaf, right).
class WeightBalancedTree {
public:
    using NodeIdx = std::uint32_t;
    static constexpr NodeIdx kNone = ~NodeIdx{0};

    struct Node {
        std::uint32_t lo;  // first leaf
        std::uint32_t hi;  // one past the last leaf
        std::uint64_t weight;
        NodeIdx left = kNone;
        NodeIdx mid = kNone;
        NodeIdx right = kNone;
    };

    WeightBalancedTree() = default;

    /// Throws EmptyInput for no weights and InvalidWeight for a zero weight.
    static WeightBalancedTree build(std::span<const std::uint64_t> weights);

    bool empty() const noexcept { return nodes_.empty(); }
    NodeIdx root() const noexcept { return nodes_.empty() ? kNone : 0; }
    std::size_t leaf_count() const noexcept { return leaf_node_.size(); }
    std::size_t node_count() const noexcept { return nodes_.size(); }
    const Node& node(NodeIdx n) const { return nodes_[n]; }
    bool is_leaf(NodeIdx n) const { return nodes_[n].hi - nodes_[n].lo == 1; }
    NodeIdx leaf_node(std::uint32_t leaf) const { return leaf_node_[leaf]; }

    /// Nodes whose leaf sets partition [0, target), target in [0, h].
    std::vector<NodeIdx> left_cover(std::uint32_t target) const;
    /// Nodes whose leaf sets partition every leaf except `excluded`.
    std::vector<NodeIdx> off_path_cover(std::uint32_t excluded) const;

    std::size_t memory_bytes() const;

private:
    NodeIdx build_range(std::span<const std::uint64_t> prefix, std::uint32_t lo, std::uint32_t hi);

    std::vector<Node> nodes_;
    std::vector<NodeIdx> leaf_node_;
};

}  // namespace kerr
