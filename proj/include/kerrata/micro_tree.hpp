#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "kerrata/trie.hpp"

namespace kerr {

/// Word-at-a-time prefix search over a CompactTrie. Positions whose label
/// length is a multiple of letters_per_word are boundaries; the region below
/// a boundary down to the next one is a micro-tree. Micro-trees that are a
/// single path are not stored: one word comparison against the edge label
/// walks them. The others keep their leaf labels in a hash table (exact hits)
/// and in a sorted array (predecessor and successor on a miss).
class MicroTreeIndex {
public:
    struct Leaf {
        Position pos;
        NodeId witness;     // a terminal below pos, used for locate
        std::uint32_t len;  // label length in letters (< letters_per_word only at trie leaves)
    };

    MicroTreeIndex() = default;
    static MicroTreeIndex build(const CompactTrie& t);

    /// Deepest position reachable from `start` along q[q_from, q_from+q_len).
    /// start.depth must be a multiple of letters_per_word. Every block of q
    /// read bumps stats->word_blocks_read.
    Position search(const CompactTrie& t, Position start, const PackedString& q, std::size_t q_from,
                    std::size_t q_len, QueryStats* stats = nullptr) const;

    std::size_t micro_tree_count() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
    /// Root, trie nodes strictly inside, and leaves, summed over micro-trees.
    std::size_t micro_node_total() const { return node_total_; }
    std::size_t memory_bytes() const;

private:
    struct LabelKey {
        std::uint32_t micro;
        Word label;
        friend bool operator==(const LabelKey&, const LabelKey&) = default;
    };
    struct LabelHash {
        std::size_t operator()(const LabelKey& k) const noexcept {
            std::uint64_t h = k.label * 0x9E3779B97F4A7C15ull;
            h ^= (static_cast<std::uint64_t>(k.micro) + 0x632BE59BD9B4E019ull) * 0xC2B2AE3D27D4EB4Full;
            return static_cast<std::size_t>(h ^ (h >> 29));
        }
    };

    static std::uint64_t boundary_key(Position p) { return (static_cast<std::uint64_t>(p.node) << 32) | p.depth; }

    unsigned lpw_ = 1;
    std::unordered_map<std::uint64_t, std::uint32_t> micro_of_;
    std::unordered_map<LabelKey, std::uint32_t, LabelHash> exact_;
    std::vector<std::uint32_t> offsets_;   // micro -> range in sorted_/leaf_of_
    std::vector<Word> sorted_;             // leaf labels, ascending per micro-tree
    std::vector<std::uint32_t> leaf_of_;   // parallel to sorted_
    std::vector<Leaf> leaves_;
    std::size_t node_total_ = 0;
};

}  // namespace kerr
