#include "kerrata/suffix_index.hpp"

#include <algorithm>
#include <bit>
#include <limits>

namespace kerr {

std::uint32_t sampling_interval(std::size_t d, std::size_t m, unsigned letters_per_word) {
    const std::size_t lg = std::bit_width(std::max<std::size_t>(d, 2) - 1);  // ceil(log2 max(d, 2))
    const std::size_t b = static_cast<std::size_t>(letters_per_word) * lg;
    return static_cast<std::uint32_t>(std::max<std::size_t>(1, std::min(b, m)));
}

SuffixIndex SuffixIndex::build(const std::vector<PackedString>& strings, std::size_t m, SuffixMode mode,
                               std::uint32_t interval) {
    SuffixIndex s;
    s.mode_ = mode;
    s.m_ = m;
    s.strings_ = &strings;
    if (strings.empty()) throw Error(ErrorCode::EmptyInput, "suffix index over no strings");
    const unsigned lpw = strings.front().alphabet().letters_per_word();
    s.b_ = mode == SuffixMode::Full ? 1
           : interval != 0          ? std::min<std::uint32_t>(interval, static_cast<std::uint32_t>(std::max<std::size_t>(m, 1)))
                                    : sampling_interval(strings.size(), m, lpw);
    s.per_string_ = mode == SuffixMode::Full ? m : m / s.b_;
    if (static_cast<double>(strings.size()) * static_cast<double>(m) >=
        static_cast<double>(std::numeric_limits<std::uint32_t>::max())) {
        throw Error(ErrorCode::ResourceCap, "d * m exceeds the 32-bit suffix id range");
    }

    std::vector<TrieEntry> entries;
    entries.reserve(strings.size() * s.per_string_);
    for (std::uint32_t sid = 0; sid < strings.size(); ++sid) {
        for (std::size_t o = s.b_ - 1; o < m; o += s.b_) {
            entries.push_back({sid, static_cast<std::uint32_t>(o), static_cast<std::uint32_t>(m - o),
                               static_cast<std::uint32_t>(sid * m + o)});
        }
    }
    s.trie_ = CompactTrie::build(strings, std::move(entries), false);
    s.micro_ = MicroTreeIndex::build(s.trie_);

    s.term_.assign(strings.size() * s.per_string_, kNoNode);
    for (std::uint32_t r = 0; r < s.trie_.terminal_count(); ++r) {
        const NodeId y = s.trie_.terminal(r);
        for (std::uint32_t p : s.trie_.payloads(y)) s.term_[s.slot(p / m, p % m)] = y;
    }
    return s;
}

std::size_t SuffixIndex::aligned(std::size_t o) const noexcept {
    const std::size_t s = (o + b_) / b_ * b_ - 1;
    return s < m_ ? s : m_;
}

std::pair<std::uint32_t, std::uint32_t> SuffixIndex::suffix_at(NodeId y) const {
    const std::uint32_t p = trie_.payloads(y).front();
    return {static_cast<std::uint32_t>(p / m_), static_cast<std::uint32_t>(p % m_)};
}

Position SuffixIndex::answer(const PackedString& q, std::size_t o, QueryStats* stats) const {
    if (stats) ++stats->suffix_queries;
    return micro_.search(trie_, Position{trie_.root(), 0}, q, o, m_ - o, stats);
}

std::uint32_t SuffixIndex::rank_below(const PackedString& q, std::size_t o, Position p) const {
    const NodeId y = p.node;
    if (o + p.depth >= m_) return trie_.leaf_range(y).first;
    const std::uint8_t c = q.letter(o + p.depth);
    if (trie_.at_node(p)) {
        const NodeId ch = trie_.first_child_above(y, c);
        return ch == kNoNode ? trie_.leaf_range(y).second + 1 : trie_.leaf_range(ch).first;
    }
    return trie_.next_letter_on_edge(p) < c ? trie_.leaf_range(y).second + 1 : trie_.leaf_range(y).first;
}

std::size_t SuffixIndex::memory_bytes() const {
    return trie_.memory_bytes() + micro_.memory_bytes() + term_.capacity() * sizeof(NodeId);
}

Position BatchCursor::answer(std::size_t o) {
    if (has_last_ && o == last_o_) return last_;
    const SuffixIndex& idx = *idx_;
    const CompactTrie& t = idx.trie();
    const std::size_t m = idx.string_length();
    const unsigned lpw = q_->alphabet().letters_per_word();

    Position start{t.root(), 0};
    if (has_last_) {
        const std::size_t delta = o - last_o_;
        if (delta <= last_.depth) {
            const auto [sid, s] = idx.suffix_at(t.terminal(t.leaf_range(last_.node).first));
            const std::size_t keep = (last_.depth - delta) / lpw * lpw;
            if (s + delta < m && keep > 0 && idx.is_sampled(s + delta)) {
                start = t.locate(idx.terminal_of(sid, s + delta), static_cast<std::uint32_t>(keep), stats_);
            }
        }
    }
    if (stats_) ++stats_->suffix_queries;
    const Position p = idx.micro().search(t, start, *q_, o + start.depth, m - o - start.depth, stats_);
    if (trace_) intervals_.push_back({o + start.depth, std::min(o + p.depth + 1, m)});
    ++searches_;
    has_last_ = true;
    last_o_ = o;
    last_ = p;
    return p;
}

std::vector<BatchAnswer> batched_prefix_search(const SuffixIndex& idx, const PackedString& q,
                                               std::span<const std::size_t> starts, QueryStats* stats,
                                               std::vector<BatchCursor::Interval>* trace) {
    BatchCursor cur(idx, q, stats, trace != nullptr);
    std::vector<BatchAnswer> out;
    out.reserve(starts.size());
    const CompactTrie& t = idx.trie();
    for (std::size_t s : starts) {
        const Position p = cur.answer(s);
        out.push_back({p, t.terminal(t.leaf_range(p.node).first), p.depth});
    }
    if (trace) *trace = cur.intervals();
    return out;
}

}  // namespace kerr
