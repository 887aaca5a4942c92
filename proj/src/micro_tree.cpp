#include "kerrata/micro_tree.hpp"

#include <algorithm>

namespace kerr {

namespace {

// Common prefix length, in letters, of two top-aligned windows.
unsigned window_lcp(Word a, Word b, const Alphabet& al) {
    const auto mm = first_mismatch_in_words(a, b, al);
    return mm ? *mm : al.letters_per_word();
}

// Node at or below depth `target` on the single path starting at s.
NodeId walk_single(const CompactTrie& t, NodeId s, std::uint32_t target) {
    while (t.depth(s) < target) s = t.children(s)[0];
    return s;
}

}  // namespace

MicroTreeIndex MicroTreeIndex::build(const CompactTrie& t) {
    MicroTreeIndex m;
    if (t.node_count() == 0 || t.pool().empty()) {
        m.offsets_.push_back(0);
        return m;
    }
    m.lpw_ = t.pool().front().alphabet().letters_per_word();
    const std::uint32_t lpw = m.lpw_;
    m.offsets_.push_back(0);

    std::vector<std::uint32_t> region_leaves;
    std::vector<NodeId> stack;
    auto emit = [&](Position x, NodeId first) {
        // first: the trie node right at or below x
        region_leaves.clear();
        std::size_t inner = 0;
        const std::uint32_t b = x.depth;
        const std::uint32_t lim = b + lpw;
        if (t.depth(first) >= lim || t.is_leaf(first)) return;
        stack.assign(1, first);
        bool branching = false;
        while (!stack.empty()) {
            const NodeId z = stack.back();
            stack.pop_back();
            if (z != x.node || t.depth(z) != b) ++inner;
            const auto kids = t.children(z);
            if (kids.size() >= 2) branching = true;
            for (NodeId c : kids) {
                if (t.depth(c) >= lim) {
                    region_leaves.push_back(static_cast<std::uint32_t>(m.leaves_.size()));
                    m.leaves_.push_back({Position{c, lim}, t.terminal(t.leaf_range(c).first), lpw});
                } else if (t.is_leaf(c)) {
                    region_leaves.push_back(static_cast<std::uint32_t>(m.leaves_.size()));
                    m.leaves_.push_back({Position{c, t.depth(c)}, c, t.depth(c) - b});
                } else {
                    stack.push_back(c);
                }
            }
        }
        if (!branching) {
            m.leaves_.resize(m.leaves_.size() - region_leaves.size());
            return;
        }
        const auto id = static_cast<std::uint32_t>(m.offsets_.size() - 1);
        std::vector<std::pair<Word, std::uint32_t>> labs;
        labs.reserve(region_leaves.size());
        for (auto li : region_leaves) {
            const Leaf& lf = m.leaves_[li];
            const Word w = t.label_window(lf.witness, b, lf.len);
            labs.emplace_back(w, li);
            m.exact_.emplace(LabelKey{id, w}, li);
        }
        std::sort(labs.begin(), labs.end());
        for (auto& [w, li] : labs) {
            m.sorted_.push_back(w);
            m.leaf_of_.push_back(li);
        }
        m.offsets_.push_back(static_cast<std::uint32_t>(m.sorted_.size()));
        m.micro_of_.emplace(boundary_key(x), id);
        m.node_total_ += 1 + inner + region_leaves.size();
    };

    emit(Position{t.root(), 0}, t.root());
    for (NodeId y = 1; y < t.node_count(); ++y) {
        const std::uint32_t top = t.depth(t.parent(y));
        for (std::uint32_t b = (top / lpw + 1) * lpw; b <= t.depth(y); b += lpw) emit(Position{y, b}, y);
    }
    return m;
}

Position MicroTreeIndex::search(const CompactTrie& t, Position start, const PackedString& q, std::size_t q_from,
                                std::size_t q_len, QueryStats* stats) const {
    if (t.node_count() == 0) return start;
    const Alphabet& al = q.alphabet();
    Position x = start;
    std::size_t done = 0;
    while (done < q_len) {
        const auto len = static_cast<std::uint32_t>(std::min<std::size_t>(lpw_, q_len - done));
        const Word pb = q.window(q_from + done, len);
        if (stats) ++stats->word_blocks_read;
        const std::uint32_t b = x.depth;

        if (auto it = micro_of_.find(boundary_key(x)); it != micro_of_.end()) {
            const std::uint32_t id = it->second;
            if (auto hit = exact_.find(LabelKey{id, pb}); hit != exact_.end()) {
                const Leaf& lf = leaves_[hit->second];
                if (lf.len == len) {
                    x = lf.pos;
                    done += len;
                    if (len < lpw_) return x;
                    continue;
                }
            }
            const auto first = sorted_.begin() + offsets_[id];
            const auto last = sorted_.begin() + offsets_[id + 1];
            const auto succ = std::lower_bound(first, last, pb);
            std::uint32_t best = 0;
            NodeId witness = kNoNode;
            auto consider = [&](std::ptrdiff_t i) {
                const Leaf& lf = leaves_[leaf_of_[i]];
                const std::uint32_t l = std::min({window_lcp(pb, sorted_[i], al), len, lf.len});
                if (l > best || witness == kNoNode) {
                    best = l;
                    witness = lf.witness;
                }
            };
            if (succ != last) consider(succ - sorted_.begin());
            if (succ != first) consider(succ - sorted_.begin() - 1);
            if (best == 0) return x;
            return t.locate(witness, b + best, stats);
        }

        // Single path below x (or nothing).
        NodeId s = x.node;
        if (t.at_node(x)) {
            if (t.is_leaf(s)) return x;
            s = t.children(s)[0];
            // a node with several children always heads a stored micro-tree
        }
        const NodeId witness = t.terminal(t.leaf_range(s).second);
        const auto avail = std::min<std::uint32_t>(lpw_, t.depth(witness) - b);
        const std::uint32_t n = std::min(len, avail);
        const std::uint32_t lp = std::min(window_lcp(pb, t.label_window(witness, b, n), al), n);
        if (lp == 0) return x;
        done += lp;
        x = Position{walk_single(t, s, b + lp), b + lp};
        if (lp < lpw_) return x;
    }
    return x;
}

std::size_t MicroTreeIndex::memory_bytes() const {
    return micro_of_.size() * (sizeof(std::uint64_t) + sizeof(std::uint32_t) + 2 * sizeof(void*)) +
           exact_.size() * (sizeof(LabelKey) + sizeof(std::uint32_t) + 2 * sizeof(void*)) +
           offsets_.capacity() * sizeof(std::uint32_t) + sorted_.capacity() * sizeof(Word) +
           leaf_of_.capacity() * sizeof(std::uint32_t) + leaves_.capacity() * sizeof(Leaf);
}

}  // namespace kerr
