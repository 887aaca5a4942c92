#include "kerrata/trie.hpp"

#include <algorithm>
#include <bit>

namespace kerr {

namespace {

std::size_t bounded_lcp(const PackedString& a, std::size_t af, const PackedString& b, std::size_t bf,
                        std::size_t limit) {
    const std::size_t per = a.alphabet().letters_per_word();
    for (std::size_t t = 0; t < limit;) {
        const std::size_t len = std::min(per, limit - t);
        if (auto off = first_mismatch_in_words(a.window(af + t, len), b.window(bf + t, len), a.alphabet())) {
            return t + *off;
        }
        t += len;
    }
    return limit;
}

template <class T>
std::size_t vec_bytes(const std::vector<T>& v) {
    return v.capacity() * sizeof(T);
}

}  // namespace

// ---------------------------------------------------------------------------
// LcaIndex

void LcaIndex::build(std::span<const NodeId> parent, std::span<const std::uint32_t> depth,
                     std::span<const std::uint32_t> child_off, std::span<const NodeId> children) {
    const std::size_t n = parent.size();
    euler_.clear();
    depth_.clear();
    first_.assign(n, 0);
    euler_.reserve(2 * n);
    // Iterative Euler tour; stack holds (node, next child slot).
    std::vector<std::pair<NodeId, std::uint32_t>> stack;
    if (n == 0) return;
    stack.emplace_back(0, child_off[0]);
    first_[0] = 0;
    euler_.push_back(0);
    while (!stack.empty()) {
        auto& [y, next] = stack.back();
        if (next < child_off[y + 1]) {
            const NodeId c = children[next++];
            first_[c] = static_cast<std::uint32_t>(euler_.size());
            euler_.push_back(c);
            stack.emplace_back(c, child_off[c]);
        } else {
            stack.pop_back();
            if (!stack.empty()) euler_.push_back(stack.back().first);
        }
    }
    depth_.resize(euler_.size());
    for (std::size_t i = 0; i < euler_.size(); ++i) depth_[i] = depth[euler_[i]];

    const std::size_t len = euler_.size();
    in_block_.assign(len, 0);
    for (std::size_t b = 0; b < len; b += 64) {
        Word stack_mask = 0;
        const std::size_t end = std::min(len, b + 64);
        for (std::size_t j = b; j < end; ++j) {
            while (stack_mask != 0) {
                const unsigned top = 63 - static_cast<unsigned>(std::countl_zero(stack_mask));
                if (depth_[b + top] >= depth_[j]) {
                    stack_mask &= ~(Word{1} << top);
                } else {
                    break;
                }
            }
            stack_mask |= Word{1} << (j - b);
            in_block_[j] = stack_mask;
        }
    }
    const std::size_t blocks = (len + 63) / 64;
    sparse_.assign(1, std::vector<std::uint32_t>(blocks));
    for (std::size_t b = 0; b < blocks; ++b) {
        const std::size_t last = std::min(len, b * 64 + 64) - 1;
        sparse_[0][b] = static_cast<std::uint32_t>(b * 64 + std::countr_zero(in_block_[last]));
    }
    for (std::size_t k = 1; (std::size_t{1} << k) <= blocks; ++k) {
        const auto& prev = sparse_[k - 1];
        std::vector<std::uint32_t> level(blocks - (std::size_t{1} << k) + 1);
        for (std::size_t b = 0; b < level.size(); ++b) {
            level[b] = better(prev[b], prev[b + (std::size_t{1} << (k - 1))]);
        }
        sparse_.push_back(std::move(level));
    }
}

std::uint32_t LcaIndex::argmin(std::uint32_t i, std::uint32_t j) const {
    const std::uint32_t bi = i / 64;
    const std::uint32_t bj = j / 64;
    if (bi == bj) {
        return bi * 64 + static_cast<std::uint32_t>(std::countr_zero(in_block_[j] & (~Word{0} << (i % 64))));
    }
    const std::uint32_t block_end = bi * 64 + 63;
    std::uint32_t best = bi * 64 + static_cast<std::uint32_t>(std::countr_zero(in_block_[block_end] & (~Word{0} << (i % 64))));
    best = better(best, bj * 64 + static_cast<std::uint32_t>(std::countr_zero(in_block_[j])));
    if (bi + 1 < bj) {
        const std::uint32_t lo = bi + 1;
        const std::uint32_t hi = bj - 1;
        const unsigned k = static_cast<unsigned>(std::bit_width(hi - lo + 1)) - 1;
        best = better(best, better(sparse_[k][lo], sparse_[k][hi - (1u << k) + 1]));
    }
    return best;
}

NodeId LcaIndex::query(NodeId u, NodeId v) const {
    std::uint32_t i = first_[u];
    std::uint32_t j = first_[v];
    if (i > j) std::swap(i, j);
    return euler_[argmin(i, j)];
}

std::size_t LcaIndex::memory_bytes() const {
    std::size_t total = vec_bytes(euler_) + vec_bytes(depth_) + vec_bytes(first_) + vec_bytes(in_block_);
    for (const auto& level : sparse_) total += vec_bytes(level);
    return total;
}

// ---------------------------------------------------------------------------
// CompactTrie construction

CompactTrie CompactTrie::build(const std::vector<PackedString>& pool, std::vector<TrieEntry> entries,
                               bool require_equal_lengths) {
    if (require_equal_lengths) {
        for (const auto& e : entries) {
            if (e.length != entries.front().length) {
                throw Error(ErrorCode::MixedLengths, "compact trie entries have lengths " +
                                                         std::to_string(entries.front().length) + " and " +
                                                         std::to_string(e.length));
            }
        }
    }
    for (const auto& e : entries) {
        if (e.string_id >= pool.size() || e.start + e.length > pool[e.string_id].length()) {
            throw Error(ErrorCode::OutOfBounds, "trie entry outside its pool string");
        }
    }

    auto less = [&](const TrieEntry& a, const TrieEntry& b) {
        const std::size_t limit = std::min(a.length, b.length);
        const std::size_t l = bounded_lcp(pool[a.string_id], a.start, pool[b.string_id], b.start, limit);
        if (l < limit) return pool[a.string_id].letter(a.start + l) < pool[b.string_id].letter(b.start + l);
        if (a.length != b.length) return a.length < b.length;
        return a.payload < b.payload;
    };
    std::stable_sort(entries.begin(), entries.end(), less);

    // Build with creation-order ids, then renumber in preorder.
    std::vector<NodeId> parent{kNoNode};
    std::vector<std::uint32_t> depth{0};
    std::vector<std::uint32_t> lab_sid{entries.empty() ? 0u : entries.front().string_id};
    std::vector<std::uint32_t> lab_start{entries.empty() ? 0u : entries.front().start};
    std::vector<std::vector<NodeId>> kids(1);
    std::vector<std::vector<std::uint32_t>> pay(1);

    auto new_node = [&](NodeId p, std::uint32_t d, std::uint32_t sid, std::uint32_t start) {
        const auto id = static_cast<NodeId>(parent.size());
        parent.push_back(p);
        depth.push_back(d);
        lab_sid.push_back(sid);
        lab_start.push_back(start);
        kids.emplace_back();
        pay.emplace_back();
        return id;
    };

    std::vector<NodeId> stack{0};
    const TrieEntry* prev = nullptr;
    for (const auto& e : entries) {
        std::uint32_t l = 0;
        if (prev) {
            l = static_cast<std::uint32_t>(bounded_lcp(pool[prev->string_id], prev->start, pool[e.string_id], e.start,
                                                       std::min(prev->length, e.length)));
        }
        NodeId last = kNoNode;
        while (depth[stack.back()] > l) {
            last = stack.back();
            stack.pop_back();
        }
        if (depth[stack.back()] < l) {
            const NodeId top = stack.back();
            const NodeId n = new_node(top, l, lab_sid[last], lab_start[last]);
            kids[top].back() = n;
            parent[last] = n;
            kids[n].push_back(last);
            stack.push_back(n);
        }
        if (e.length == l) {
            pay[stack.back()].push_back(e.payload);
        } else {
            const NodeId top = stack.back();
            const NodeId leaf = new_node(top, e.length, e.string_id, e.start);
            kids[top].push_back(leaf);
            pay[leaf].push_back(e.payload);
            stack.push_back(leaf);
        }
        prev = &e;
    }

    // Preorder renumbering.
    const std::size_t n = parent.size();
    std::vector<NodeId> order;
    order.reserve(n);
    std::vector<NodeId> dfs{0};
    while (!dfs.empty()) {
        const NodeId y = dfs.back();
        dfs.pop_back();
        order.push_back(y);
        for (auto it = kids[y].rbegin(); it != kids[y].rend(); ++it) dfs.push_back(*it);
    }
    std::vector<NodeId> new_id(n);
    for (std::size_t i = 0; i < n; ++i) new_id[order[i]] = static_cast<NodeId>(i);

    CompactTrie t;
    t.pool_ = &pool;
    t.parent_.resize(n);
    t.depth_.resize(n);
    t.lab_sid_.resize(n);
    t.lab_start_.resize(n);
    t.child_off_.assign(n + 1, 0);
    t.payload_off_.assign(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) {
        const NodeId old = order[i];
        t.parent_[i] = old == 0 ? kNoNode : new_id[parent[old]];
        t.depth_[i] = depth[old];
        t.lab_sid_[i] = lab_sid[old];
        t.lab_start_[i] = lab_start[old];
        t.child_off_[i + 1] = t.child_off_[i] + static_cast<std::uint32_t>(kids[old].size());
        t.payload_off_[i + 1] = t.payload_off_[i] + static_cast<std::uint32_t>(pay[old].size());
    }
    t.children_.reserve(t.child_off_[n]);
    t.payloads_.reserve(t.payload_off_[n]);
    for (std::size_t i = 0; i < n; ++i) {
        for (NodeId c : kids[order[i]]) t.children_.push_back(new_id[c]);
        for (std::uint32_t p : pay[order[i]]) t.payloads_.push_back(p);
    }
    t.finish();
    return t;
}

void CompactTrie::finish() {
    const std::size_t n = parent_.size();
    size_.assign(n, 1);
    weight_.assign(n, 0);
    heavy_.assign(n, kNoNode);
    for (std::size_t i = n; i-- > 0;) {
        const auto y = static_cast<NodeId>(i);
        weight_[y] += payload_off_[y + 1] - payload_off_[y];
        std::uint32_t best = 0;
        for (NodeId c : children(y)) {
            size_[y] += size_[c];
            weight_[y] += weight_[c];
            // Children are letter-ordered, so strict > keeps the smallest letter on ties.
            if (heavy_[y] == kNoNode || weight_[c] > best) {
                best = weight_[c];
                heavy_[y] = c;
            }
        }
    }

    path_id_.assign(n, 0);
    path_idx_.assign(n, 0);
    path_off_.assign(1, 0);
    path_nodes_.clear();
    path_nodes_.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto y = static_cast<NodeId>(i);
        if (y != 0 && heavy_[parent_[y]] == y) continue;
        const auto p = static_cast<std::uint32_t>(path_off_.size() - 1);
        std::uint32_t idx = 0;
        for (NodeId x = y; x != kNoNode; x = heavy_[x]) {
            path_id_[x] = p;
            path_idx_[x] = idx++;
            path_nodes_.push_back(x);
        }
        path_off_.push_back(static_cast<std::uint32_t>(path_nodes_.size()));
    }

    term_rank_.assign(n, kNoRank);
    terminals_.clear();
    for (std::size_t i = 0; i < n; ++i) {
        if (is_terminal(static_cast<NodeId>(i))) {
            term_rank_[i] = static_cast<std::uint32_t>(terminals_.size());
            terminals_.push_back(static_cast<NodeId>(i));
        }
    }
    lo_.assign(n, kNoRank);
    hi_.assign(n, kNoRank);
    for (std::size_t i = n; i-- > 0;) {
        const auto y = static_cast<NodeId>(i);
        const auto kids = children(y);
        lo_[y] = is_terminal(y) ? term_rank_[y] : (kids.empty() ? kNoRank : lo_[kids.front()]);
        hi_[y] = kids.empty() ? term_rank_[y] : hi_[kids.back()];
    }

    lca_.build(parent_, depth_, child_off_, children_);
}

// ---------------------------------------------------------------------------
// Queries

EdgeLabel CompactTrie::edge(NodeId y) const {
    const std::uint32_t top = y == 0 ? 0 : depth_[parent_[y]];
    return {lab_sid_[y], lab_start_[y] + top, lab_start_[y] + depth_[y]};
}

NodeId CompactTrie::child_by_letter(NodeId y, std::uint8_t c) const {
    const auto kids = children(y);
    const std::uint32_t d = depth_[y];
    auto it = std::lower_bound(kids.begin(), kids.end(), c,
                               [&](NodeId k, std::uint8_t letter) { return letter_at(k, d) < letter; });
    return (it != kids.end() && letter_at(*it, d) == c) ? *it : kNoNode;
}

NodeId CompactTrie::first_child_above(NodeId y, std::uint8_t c) const {
    const auto kids = children(y);
    const std::uint32_t d = depth_[y];
    auto it = std::upper_bound(kids.begin(), kids.end(), c,
                               [&](std::uint8_t letter, NodeId k) { return letter < letter_at(k, d); });
    return it == kids.end() ? kNoNode : *it;
}

Position CompactTrie::locate(NodeId u, std::uint32_t len, QueryStats* stats) const {
    if (len > depth_[u]) {
        throw Error(ErrorCode::OutOfBounds, "level ancestor length " + std::to_string(len) + " exceeds depth " +
                                                std::to_string(depth_[u]));
    }
    if (stats) ++stats->wla_queries;
    NodeId x = u;
    NodeId below = kNoNode;
    for (;;) {
        const std::uint32_t p = path_id_[x];
        const NodeId head = path_head(p);
        if (depth_[head] <= len) {
            const auto members = path_nodes(p).first(path_idx_[x] + 1);
            // Last member with depth <= len; the head qualifies.
            auto it = std::upper_bound(members.begin(), members.end(), len,
                                       [&](std::uint32_t l, NodeId m) { return l < depth_[m]; });
            const auto i = static_cast<std::size_t>(it - members.begin()) - 1;
            const NodeId a = members[i];
            if (depth_[a] == len) return {a, len};
            const NodeId child = i + 1 < members.size() ? members[i + 1] : below;
            return {child, len};
        }
        below = head;
        x = parent_[head];
    }
}

NodeId CompactTrie::weighted_level_ancestor(NodeId u, std::uint32_t len, QueryStats* stats) const {
    const Position p = locate(u, len, stats);
    return at_node(p) ? p.node : parent_[p.node];
}

Position CompactTrie::naive_prefix_search(Position from, const PackedString& q, std::size_t q_from,
                                          std::size_t q_len) const {
    Position cur = from;
    std::size_t i = 0;
    while (i < q_len) {
        const std::uint8_t c = q.letter(q_from + i);
        if (at_node(cur)) {
            const NodeId next = child_by_letter(cur.node, c);
            if (next == kNoNode) break;
            cur = {next, cur.depth + 1};
        } else {
            if (next_letter_on_edge(cur) != c) break;
            ++cur.depth;
        }
        ++i;
    }
    return cur;
}

std::size_t CompactTrie::memory_bytes() const {
    return vec_bytes(parent_) + vec_bytes(depth_) + vec_bytes(lab_sid_) + vec_bytes(lab_start_) +
           vec_bytes(child_off_) + vec_bytes(children_) + vec_bytes(payload_off_) + vec_bytes(payloads_) +
           vec_bytes(size_) + vec_bytes(weight_) + vec_bytes(heavy_) + vec_bytes(path_id_) + vec_bytes(path_idx_) +
           vec_bytes(path_off_) + vec_bytes(path_nodes_) + vec_bytes(term_rank_) + vec_bytes(terminals_) +
           vec_bytes(lo_) + vec_bytes(hi_) + lca_.memory_bytes();
}

}  // namespace kerr
