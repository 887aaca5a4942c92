#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "kerrata/core.hpp"

namespace kerr {

using NodeId = std::uint32_t;
inline constexpr NodeId kNoNode = ~NodeId{0};
inline constexpr std::uint32_t kNoRank = ~std::uint32_t{0};

/// A substring of a pool string; edge labels never copy letters.
struct EdgeLabel {
    std::uint32_t string_id;
    std::uint32_t start;
    std::uint32_t end;
};

/// A trie position: `node` is the node at or just below it, `depth` its label
/// length. The position is the node itself iff depth == depth(node).
struct Position {
    NodeId node = 0;
    std::uint32_t depth = 0;

    friend bool operator==(const Position&, const Position&) = default;
};

/// The string pool[string_id][start, start+length) with an opaque payload.
struct TrieEntry {
    std::uint32_t string_id;
    std::uint32_t start;
    std::uint32_t length;
    std::uint32_t payload;
};

/// Euler tour with block-decomposed range minimum: O(1) queries.
class LcaIndex {
public:
    LcaIndex() = default;
    void build(std::span<const NodeId> parent, std::span<const std::uint32_t> depth,
               std::span<const std::uint32_t> child_off, std::span<const NodeId> children);
    NodeId query(NodeId u, NodeId v) const;
    std::size_t memory_bytes() const;

private:
    std::uint32_t argmin(std::uint32_t i, std::uint32_t j) const;
    std::uint32_t better(std::uint32_t a, std::uint32_t b) const { return depth_[a] <= depth_[b] ? a : b; }

    std::vector<NodeId> euler_;
    std::vector<std::uint32_t> depth_;
    std::vector<std::uint32_t> first_;
    std::vector<Word> in_block_;
    std::vector<std::vector<std::uint32_t>> sparse_;
};

/// Compact trie over substrings of a string pool. Nodes are numbered in
/// preorder with children ordered by their first letter, so the subtree of
/// y is the id range [y, y + subtree_size(y)). Terminals (nodes carrying
/// payloads) are ranked in the same left-to-right order.
class CompactTrie {
public:
    CompactTrie() = default;

    static CompactTrie build(const std::vector<PackedString>& pool, std::vector<TrieEntry> entries,
                             bool require_equal_lengths = true);

    const std::vector<PackedString>& pool() const { return *pool_; }
    NodeId root() const noexcept { return 0; }
    std::size_t node_count() const noexcept { return parent_.size(); }

    NodeId parent(NodeId y) const { return parent_[y]; }
    std::uint32_t depth(NodeId y) const { return depth_[y]; }
    std::span<const NodeId> children(NodeId y) const {
        return {children_.data() + child_off_[y], children_.data() + child_off_[y + 1]};
    }
    std::span<const std::uint32_t> payloads(NodeId y) const {
        return {payloads_.data() + payload_off_[y], payloads_.data() + payload_off_[y + 1]};
    }
    std::span<std::uint32_t> payloads_mut(NodeId y) {
        return {payloads_.data() + payload_off_[y], payloads_.data() + payload_off_[y + 1]};
    }
    bool is_leaf(NodeId y) const { return child_off_[y] == child_off_[y + 1]; }
    bool is_terminal(NodeId y) const { return payload_off_[y] != payload_off_[y + 1]; }
    std::uint32_t subtree_size(NodeId y) const { return size_[y]; }
    /// Number of payloads at or below y (the leaf count, duplicates counted).
    std::uint32_t weight(NodeId y) const { return weight_[y]; }

    /// The label of y is pool[label_string(y)][label_start(y), +depth(y)).
    std::uint32_t label_string(NodeId y) const { return lab_sid_[y]; }
    std::uint32_t label_start(NodeId y) const { return lab_start_[y]; }
    EdgeLabel edge(NodeId y) const;
    /// Letter at 0-based label index d of y (d < depth(y)).
    std::uint8_t letter_at(NodeId y, std::uint32_t d) const {
        return (*pool_)[lab_sid_[y]].letter(lab_start_[y] + d);
    }
    Word label_window(NodeId y, std::uint32_t d, std::uint32_t len) const {
        return (*pool_)[lab_sid_[y]].window(lab_start_[y] + d, len);
    }
    std::uint8_t first_letter(NodeId y) const { return letter_at(y, depth_[parent_[y]]); }
    NodeId child_by_letter(NodeId y, std::uint8_t c) const;
    /// First child whose edge starts with a letter greater than c.
    NodeId first_child_above(NodeId y, std::uint8_t c) const;

    // Heavy path decomposition.
    NodeId heavy_child(NodeId y) const { return heavy_[y]; }
    std::uint32_t path_of(NodeId y) const { return path_id_[y]; }
    std::uint32_t path_index(NodeId y) const { return path_idx_[y]; }
    std::size_t path_count() const { return path_off_.size() - 1; }
    std::span<const NodeId> path_nodes(std::uint32_t p) const {
        return {path_nodes_.data() + path_off_[p], path_nodes_.data() + path_off_[p + 1]};
    }
    NodeId path_head(std::uint32_t p) const { return path_nodes_[path_off_[p]]; }
    NodeId path_tail(std::uint32_t p) const { return path_nodes_[path_off_[p + 1] - 1]; }

    // Terminals in left-to-right order.
    std::uint32_t terminal_count() const { return static_cast<std::uint32_t>(terminals_.size()); }
    std::uint32_t terminal_rank(NodeId y) const { return term_rank_[y]; }
    NodeId terminal(std::uint32_t rank) const { return terminals_[rank]; }
    /// Ranks of the leftmost and rightmost terminals below y.
    std::pair<std::uint32_t, std::uint32_t> leaf_range(NodeId y) const { return {lo_[y], hi_[y]}; }

    NodeId lca(NodeId u, NodeId v) const { return lca_.query(u, v); }
    /// Deepest ancestor of u whose label length is at most len.
    NodeId weighted_level_ancestor(NodeId u, std::uint32_t len, QueryStats* stats = nullptr) const;
    /// The exact position with label length len on the root-to-u path.
    Position locate(NodeId u, std::uint32_t len, QueryStats* stats = nullptr) const;

    bool at_node(Position p) const { return p.depth == depth_[p.node]; }
    /// Letter right below a position that is not at a node.
    std::uint8_t next_letter_on_edge(Position p) const { return letter_at(p.node, p.depth); }

    /// Letter-by-letter reference search: deepest position reachable from
    /// `from` along q[q_from, q_from+q_len).
    Position naive_prefix_search(Position from, const PackedString& q, std::size_t q_from, std::size_t q_len) const;

    std::size_t memory_bytes() const;

private:
    void finish();

    const std::vector<PackedString>* pool_ = nullptr;
    std::vector<NodeId> parent_;
    std::vector<std::uint32_t> depth_;
    std::vector<std::uint32_t> lab_sid_;
    std::vector<std::uint32_t> lab_start_;
    std::vector<std::uint32_t> child_off_;
    std::vector<NodeId> children_;
    std::vector<std::uint32_t> payload_off_;
    std::vector<std::uint32_t> payloads_;
    std::vector<std::uint32_t> size_;
    std::vector<std::uint32_t> weight_;
    std::vector<NodeId> heavy_;
    std::vector<std::uint32_t> path_id_;
    std::vector<std::uint32_t> path_idx_;
    std::vector<std::uint32_t> path_off_;
    std::vector<NodeId> path_nodes_;
    std::vector<std::uint32_t> term_rank_;
    std::vector<NodeId> terminals_;
    std::vector<std::uint32_t> lo_;
    std::vector<std::uint32_t> hi_;
    LcaIndex lca_;
};

}  // namespace kerr
