#include "kerrata/wbt.hpp"

#include <algorithm>

namespace kerr {

WeightBalancedTree WeightBalancedTree::build(std::span<const std::uint64_t> weights) {
    if (weights.empty()) throw Error(ErrorCode::EmptyInput, "weight-balanced tree needs at least one leaf");
    std::vector<std::uint64_t> prefix(weights.size() + 1, 0);
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (weights[i] == 0) {
            throw Error(ErrorCode::InvalidWeight, "leaf " + std::to_string(i) + " has weight 0");
        }
        prefix[i + 1] = prefix[i] + weights[i];
    }
    WeightBalancedTree t;
    t.leaf_node_.assign(weights.size(), kNone);
    t.nodes_.reserve(2 * weights.size());
    t.build_range(prefix, 0, static_cast<std::uint32_t>(weights.size()));
    return t;
}

WeightBalancedTree::NodeIdx WeightBalancedTree::build_range(std::span<const std::uint64_t> prefix, std::uint32_t lo,
                                                            std::uint32_t hi) {
    if (lo >= hi) return kNone;
    const auto id = static_cast<NodeIdx>(nodes_.size());
    nodes_.push_back({lo, hi, prefix[hi] - prefix[lo]});
    if (hi - lo == 1) {
        leaf_node_[lo] = id;
        return id;
    }
    // Smallest mu with 2 * (prefix[mu+1] - prefix[lo]) > total.
    const std::uint64_t total = prefix[hi] - prefix[lo];
    auto it = std::upper_bound(prefix.begin() + lo + 1, prefix.begin() + hi + 1, total,
                               [&](std::uint64_t t, std::uint64_t p) { return t < 2 * (p - prefix[lo]); });
    const auto mu = static_cast<std::uint32_t>(it - prefix.begin()) - 1;
    const NodeIdx left = build_range(prefix, lo, mu);
    const NodeIdx mid = build_range(prefix, mu, mu + 1);
    const NodeIdx right = build_range(prefix, mu + 1, hi);
    nodes_[id].left = left;
    nodes_[id].mid = mid;
    nodes_[id].right = right;
    return id;
}

std::vector<WeightBalancedTree::NodeIdx> WeightBalancedTree::left_cover(std::uint32_t target) const {
    std::vector<NodeIdx> out;
    NodeIdx n = root();
    while (n != kNone) {
        const Node& x = nodes_[n];
        if (target <= x.lo) break;
        if (target >= x.hi) {
            out.push_back(n);
            break;
        }
        const std::uint32_t mu = nodes_[x.mid].lo;
        if (target <= mu) {
            n = x.left;
            continue;
        }
        if (x.left != kNone) out.push_back(x.left);
        out.push_back(x.mid);
        n = x.right;
    }
    return out;
}

std::vector<WeightBalancedTree::NodeIdx> WeightBalancedTree::off_path_cover(std::uint32_t excluded) const {
    std::vector<NodeIdx> out;
    NodeIdx n = root();
    while (n != kNone && !is_leaf(n)) {
        const Node& x = nodes_[n];
        const std::uint32_t mu = nodes_[x.mid].lo;
        if (excluded < mu) {
            out.push_back(x.mid);
            if (x.right != kNone) out.push_back(x.right);
            n = x.left;
        } else if (excluded == mu) {
            if (x.left != kNone) out.push_back(x.left);
            if (x.right != kNone) out.push_back(x.right);
            break;
        } else {
            if (x.left != kNone) out.push_back(x.left);
            out.push_back(x.mid);
            n = x.right;
        }
    }
    return out;
}

std::size_t WeightBalancedTree::memory_bytes() const {
    return nodes_.capacity() * sizeof(Node) + leaf_node_.capacity() * sizeof(NodeIdx);
}

}  // namespace kerr
