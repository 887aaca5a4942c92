#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kerrata/micro_tree.hpp"
#include "kerrata/suffix_index.hpp"
#include "kerrata/trie.hpp"
#include "kerrata/wbt.hpp"

namespace kerr {

/// dict[sid][start..m) with `credit` mismatches left.
struct CreditedString {
    std::uint32_t sid;
    std::uint32_t start;
    std::int32_t credit;

    friend bool operator==(const CreditedString&, const CreditedString&) = default;
};

inline constexpr std::uint32_t kNoTrie = ~std::uint32_t{0};

/// Compact trie over the heads dict[sid][start..head_end) of one errata
/// trie's strings, head_end being the first sampled offset at or after the
/// start (m when there is none). Each heads terminal maps to a contiguous
/// range of errata-trie terminal ranks.
struct HeadsIndex {
    std::uint32_t head_end = 0;
    CompactTrie trie;
    MicroTreeIndex micro;
    std::vector<std::uint32_t> lo;  // by heads terminal rank
    std::vector<std::uint32_t> hi;
};

/// One trie of the errata tree. All strings start at `start` and have
/// length `length`; payloads index `strings`, which is sorted by credit
/// descending so every payload list is too.
struct ErrataTrie {
    std::uint32_t start = 0;
    std::uint32_t length = 0;
    std::uint32_t level = 0;  // recursion levels below this trie
    std::vector<CreditedString> strings;
    CompactTrie trie;

    // Vertical: per heavy path, the path nodes with diverging strings and a
    // WBT over them. Child trie per WBT node.
    std::vector<std::uint32_t> vert_off;      // path -> range in vert_index
    std::vector<std::uint32_t> vert_index;    // path index of each present node
    std::vector<WeightBalancedTree> vert_wbt;  // empty when no present node
    std::vector<std::uint32_t> vert_child_off;
    std::vector<std::uint32_t> vert_child;

    // Horizontal: per node with eligible light children.
    std::vector<std::uint32_t> horiz_of;      // node -> slot or kNoTrie
    std::vector<std::uint32_t> horiz_off;     // slot -> range in horiz_leaves
    std::vector<NodeId> horiz_leaves;          // light children, ascending
    std::vector<WeightBalancedTree> horiz_wbt;
    std::vector<std::uint32_t> horiz_child_off;
    std::vector<std::uint32_t> horiz_child;

    bool has_heads = false;
    HeadsIndex heads;

    /// String index of the leftmost payload at terminal y.
    const CreditedString& first_string(NodeId y) const { return strings[trie.payloads(y).front()]; }
    std::size_t memory_bytes() const;
};

struct BuildOptions {
    /// Sampled-mode interval for heads tries; 0 builds none.
    std::uint32_t sample_interval = 0;
    /// Build memory cap in MiB; 0 reads KERRATA_MEMCAP_MB, unset means none.
    std::size_t memcap_mb = 0;
    /// Test hooks: 1 adds one credit at the root, 2 shortens the vertical
    /// credit window by one letter.
    int fault = 0;
};

class ErrataTree {
public:
    ErrataTree() = default;
    static ErrataTree build(const Dictionary& dict, unsigned k, const BuildOptions& opt = {});

    unsigned k() const noexcept { return k_; }
    const std::vector<ErrataTrie>& tries() const noexcept { return tries_; }
    const ErrataTrie& trie(std::uint32_t id) const { return tries_[id]; }
    std::uint64_t total_strings() const noexcept { return total_strings_; }
    std::size_t memory_bytes() const;

private:
    friend class ErrataBuilder;
    unsigned k_ = 0;
    std::vector<ErrataTrie> tries_;
    std::uint64_t total_strings_ = 0;
};

/// A zero-mismatch search deferred to the fingerprint layer: the strings
/// below u in `trie` that match the rest of the query exactly.
struct Probe {
    std::uint32_t trie;
    Position u;
    std::int32_t mu;
    bool continuation;  // u is one letter below a heavy-path node
};

/// Answers the zero-mismatch searches issued by one-mismatch frames of a
/// query, appending reported ids.
class ProbeResolver {
public:
    virtual ~ProbeResolver() = default;
    virtual void resolve(const ErrataTree& tree, const Dictionary& dict, const PackedString& p,
                         const std::vector<Probe>& probes, std::vector<std::uint32_t>& out,
                         QueryStats& stats) const = 0;
};

struct LookupOptions {
    /// Suffix index answering prefix searches; null walks tries letter by letter.
    const SuffixIndex* suffix = nullptr;
    /// When set and k >= 2, one-mismatch frames hand their zero-mismatch
    /// searches to it instead of searching.
    const ProbeResolver* probes = nullptr;
    /// Run the tree even where a direct scan is cheaper (d <= 2 or tiny k).
    bool force_errata = false;
};

struct LookupResult {
    std::vector<std::uint32_t> ids;  // ascending, distinct
    QueryStats stats;
};

/// Ids of dictionary strings within Hamming distance k of p.
LookupResult lookup(const ErrataTree& tree, const Dictionary& dict, const PackedString& p,
                    const LookupOptions& opt = {});

/// Ids at or below pos whose credit is at least mu (payloads are credit-sorted).
void report_at(const ErrataTrie& t, Position pos, int mu, std::vector<std::uint32_t>& out);

/// d' = smallest power of two >= d.
std::uint64_t padded_size(std::uint64_t d);
/// 2 * 4^k * d' * C(lg d' + k, lg d') - d', saturating at UINT64_MAX.
std::uint64_t size_budget(std::uint64_t d, unsigned k);
/// 2 * 9^k * C(lg d' + k, lg d') - 1, saturating at UINT64_MAX.
std::uint64_t prefix_search_budget(std::uint64_t d, unsigned k);

}  // namespace kerr
