#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "kerrata/micro_tree.hpp"
#include "kerrata/trie.hpp"

namespace kerr {

enum class SuffixMode : std::uint8_t { Full = 0, Sampled = 1 };

/// Sampling interval for d strings of length m: letters_per_word times
/// ceil(log2 max(d, 2)), clamped to [1, m].
std::uint32_t sampling_interval(std::size_t d, std::size_t m, unsigned letters_per_word);

/// Compact trie over the suffixes of the dictionary strings: all of them
/// (Full) or those starting at 0-based offsets s with (s + 1) % B == 0
/// (Sampled). Equal suffixes share a terminal.
class SuffixIndex {
public:
    SuffixIndex() = default;
    /// interval overrides the sampling interval in Sampled mode when nonzero.
    static SuffixIndex build(const std::vector<PackedString>& strings, std::size_t m, SuffixMode mode,
                             std::uint32_t interval = 0);

    SuffixMode mode() const noexcept { return mode_; }
    std::uint32_t interval() const noexcept { return b_; }
    std::size_t string_length() const noexcept { return m_; }
    bool is_sampled(std::size_t o) const noexcept { return o < m_ && (o + 1) % b_ == 0; }
    /// Smallest indexed offset >= o, or m when there is none.
    std::size_t aligned(std::size_t o) const noexcept;

    const CompactTrie& trie() const noexcept { return trie_; }
    const MicroTreeIndex& micro() const noexcept { return micro_; }

    /// Terminal of the suffix strings[sid][o..m); o must be indexed.
    NodeId terminal_of(std::uint32_t sid, std::size_t o) const { return term_[slot(sid, o)]; }
    std::uint32_t rank_of(std::uint32_t sid, std::size_t o) const { return trie_.terminal_rank(terminal_of(sid, o)); }
    /// One (string id, offset) pair labelled by terminal y.
    std::pair<std::uint32_t, std::uint32_t> suffix_at(NodeId y) const;

    /// Deepest position along q[o..m), searched from the root.
    Position answer(const PackedString& q, std::size_t o, QueryStats* stats = nullptr) const;

    /// Number of terminals whose label is smaller than q[o..m), where p is
    /// that string's answer.
    std::uint32_t rank_below(const PackedString& q, std::size_t o, Position p) const;
    /// Common prefix length of q[o..m) and strings[sid][o'..m), given the
    /// answer p for q[o..m) and an indexed o'.
    std::uint32_t lcp_with(Position p, std::uint32_t sid, std::size_t o2) const {
        const NodeId t = terminal_of(sid, o2);
        return std::min(p.depth, trie_.depth(trie_.lca(p.node, t)));
    }

    std::size_t memory_bytes() const;

private:
    std::size_t slot(std::uint32_t sid, std::size_t o) const {
        return mode_ == SuffixMode::Full ? sid * m_ + o : sid * per_string_ + (o + 1) / b_ - 1;
    }

    SuffixMode mode_ = SuffixMode::Full;
    std::uint32_t b_ = 1;
    std::size_t m_ = 0;
    std::size_t per_string_ = 0;
    const std::vector<PackedString>* strings_ = nullptr;
    CompactTrie trie_;
    MicroTreeIndex micro_;
    std::vector<NodeId> term_;
};

/// Answers suffix-trie searches for one query string at non-decreasing
/// offsets. Each search after the first restarts below the root from the
/// previous answer when the overlap allows it.
class BatchCursor {
public:
    struct Interval {
        std::size_t first;  // first query letter compared
        std::size_t end;    // one past the last query letter compared
    };

    BatchCursor(const SuffixIndex& idx, const PackedString& q, QueryStats* stats = nullptr, bool trace = false)
        : idx_(&idx), q_(&q), stats_(stats), trace_(trace) {}

    /// Offsets must not decrease; a repeated offset returns the cached answer.
    Position answer(std::size_t o);

    const std::vector<Interval>& intervals() const noexcept { return intervals_; }
    std::size_t searches() const noexcept { return searches_; }

private:
    const SuffixIndex* idx_;
    const PackedString* q_;
    QueryStats* stats_;
    bool trace_;
    bool has_last_ = false;
    std::size_t last_o_ = 0;
    Position last_{};
    std::size_t searches_ = 0;
    std::vector<Interval> intervals_;
};

struct BatchAnswer {
    Position pos;
    NodeId witness;  // leftmost terminal below pos
    std::uint32_t matched;
};

/// Answers for q[s..m) for every s in starts (sorted ascending).
std::vector<BatchAnswer> batched_prefix_search(const SuffixIndex& idx, const PackedString& q,
                                               std::span<const std::size_t> starts, QueryStats* stats = nullptr,
                                               std::vector<BatchCursor::Interval>* trace = nullptr);

}  // namespace kerr
