#include <algorithm>
#include <optional>
#include <queue>
#include <stdexcept>

#include "kerrata/errata.hpp"

namespace kerr {

void report_at(const ErrataTrie& t, Position pos, int mu, std::vector<std::uint32_t>& out) {
    const auto [lo, hi] = t.trie.leaf_range(pos.node);
    for (std::uint32_t r = lo; r <= hi; ++r) {
        for (std::uint32_t q : t.trie.payloads(t.trie.terminal(r))) {
            if (t.strings[q].credit < mu) break;
            out.push_back(t.strings[q].sid);
        }
    }
}

namespace {

// Common prefix of a[from..] and b[from..] capped at len, one word block per step.
std::uint32_t block_lcp(const PackedString& a, const PackedString& b, std::size_t from, std::size_t len,
                        QueryStats& st) {
    const unsigned lpw = a.alphabet().letters_per_word();
    std::size_t done = 0;
    while (done < len) {
        const std::size_t n = std::min<std::size_t>(lpw, len - done);
        ++st.word_blocks_read;
        const auto mm = first_mismatch_in_words(a.window(from + done, n), b.window(from + done, n), a.alphabet());
        if (mm && *mm < n) return static_cast<std::uint32_t>(done + *mm);
        done += n;
    }
    return static_cast<std::uint32_t>(len);
}

/// One PrefixSearch per call: the deepest position below u in an errata trie
/// along the query suffix starting at start + depth(u).
class Searcher {
public:
    Searcher(const Dictionary& dict, const PackedString& p, const SuffixIndex* suf, QueryStats& st)
        : dict_(dict), p_(p), suf_(suf), st_(st) {
        if (suf_) cursor_.emplace(*suf_, p_, &st_);
    }

    Position search(const ErrataTrie& t, Position u) {
        if (u.depth == t.length) return u;
        if (!suf_) return t.trie.naive_prefix_search(u, p_, t.start + u.depth, t.length - u.depth);
        return suf_->mode() == SuffixMode::Full ? full(t, u) : sampled(t, u);
    }

private:
    std::uint32_t sid_of(const ErrataTrie& t, std::uint32_t rank) const {
        return t.first_string(t.trie.terminal(rank)).sid;
    }

    Position suffix_answer(std::size_t o) {
        if (suf_->mode() == SuffixMode::Sampled && !suf_->is_sampled(o)) {
            throw std::logic_error("suffix search at an unsampled offset");
        }
        return cursor_->answer(o);
    }

    // Deepest position in the subtree range [lo, hi] of terminals sharing their
    // first D letters with the query, the query's suffix answer sp at o = start + D.
    Position range_search(const ErrataTrie& t, std::uint32_t lo, std::uint32_t hi, std::uint32_t D, Position sp,
                          std::size_t o) {
        const SuffixIndex& s = *suf_;
        const std::uint32_t rank_q = s.rank_below(p_, o, sp);
        std::uint32_t a = lo, b = hi + 1;
        while (a < b) {
            const std::uint32_t mid = a + (b - a) / 2;
            if (s.rank_of(sid_of(t, mid), o) < rank_q) a = mid + 1;
            else b = mid;
        }
        const bool has_succ = a <= hi, has_pred = a > lo;
        const std::uint32_t ls = has_succ ? s.lcp_with(sp, sid_of(t, a), o) : 0;
        const std::uint32_t lp = has_pred ? s.lcp_with(sp, sid_of(t, a - 1), o) : 0;
        const NodeId succ = has_succ ? t.trie.terminal(a) : kNoNode;
        const NodeId pred = has_pred ? t.trie.terminal(a - 1) : kNoNode;
        if (has_succ && has_pred && ls == lp) {
            const NodeId x = t.trie.lca(pred, succ);
            return {x, t.trie.depth(x)};
        }
        const bool use_succ = has_succ && (!has_pred || ls > lp);
        return t.trie.locate(use_succ ? succ : pred, D + (use_succ ? ls : lp), &st_);
    }

    // From pos on the heavy path of an unrooted search: done when the query
    // ends or leaves on an edge, otherwise continue in the light child.
    std::optional<NodeId> light_step(const ErrataTrie& t, Position pos) const {
        if (pos.depth == t.length || !t.trie.at_node(pos)) return std::nullopt;
        const NodeId c = t.trie.child_by_letter(pos.node, p_.letter(t.start + pos.depth));
        if (c == kNoNode) return std::nullopt;
        return c;
    }

    Position full(const ErrataTrie& t, Position u) {
        const std::size_t o = t.start + u.depth;
        const Position sp = suffix_answer(o);
        if (u.depth == 0) return range_search(t, 0, t.trie.terminal_count() - 1, 0, sp, o);
        const NodeId tail = t.trie.path_tail(t.trie.path_of(u.node));
        const std::uint32_t l = suf_->lcp_with(sp, t.first_string(tail).sid, o);
        const Position pos = t.trie.locate(tail, u.depth + l, &st_);
        const auto c = light_step(t, pos);
        if (!c) return pos;
        const auto [lo, hi] = t.trie.leaf_range(*c);
        return range_search(t, lo, hi, u.depth, sp, o);
    }

    Position sampled(const ErrataTrie& t, Position u) {
        const CompactTrie& tr = t.trie;
        const std::size_t m = dict_.length();
        if (!t.has_heads) throw std::logic_error("sampled search over a tree built without heads");
        // first sampled offset at or after the frame start
        const std::size_t a = u.depth == 0 ? t.heads.head_end : suf_->aligned(t.start + u.depth);
        const auto da = static_cast<std::uint32_t>(a - t.start);

        if (u.depth == 0) {
            const HeadsIndex& h = t.heads;
            if (da == 0) return range_search(t, 0, tr.terminal_count() - 1, 0, suffix_answer(a), a);
            const Position hp = h.micro.search(h.trie, {h.trie.root(), 0}, p_, t.start, da, &st_);
            if (hp.depth < da) {
                const std::uint32_t r = h.lo[h.trie.leaf_range(hp.node).first];
                return tr.locate(tr.terminal(r), hp.depth, &st_);
            }
            const std::uint32_t hr = h.trie.terminal_rank(hp.node);
            if (da == t.length) return {tr.terminal(h.lo[hr]), t.length};
            return range_search(t, h.lo[hr], h.hi[hr], da, suffix_answer(a), a);
        }

        Position cur = u;
        for (;;) {
            const std::size_t o = t.start + cur.depth;
            const NodeId tail = tr.path_tail(tr.path_of(cur.node));
            const PackedString& x = dict_[t.first_string(tail).sid];
            if (o < a) {
                const std::uint32_t l = block_lcp(p_, x, o, a - o, st_);
                if (l < a - o) {
                    const Position pos = tr.locate(tail, cur.depth + l, &st_);
                    const auto c = light_step(t, pos);
                    if (!c) return pos;
                    cur = {*c, pos.depth + 1};
                    continue;
                }
            }
            if (a == m) return {tail, t.length};
            const Position sp = suffix_answer(a);
            const std::uint32_t l = suf_->lcp_with(sp, t.first_string(tail).sid, a);
            const Position pos = tr.locate(tail, da + l, &st_);
            const auto c = light_step(t, pos);
            if (!c) return pos;
            const auto [lo, hi] = tr.leaf_range(*c);
            return range_search(t, lo, hi, da, sp, a);
        }
    }

    const Dictionary& dict_;
    const PackedString& p_;
    const SuffixIndex* suf_;
    QueryStats& st_;
    std::optional<BatchCursor> cursor_;
};

struct Frame {
    std::uint64_t offset;
    std::uint64_t seq;
    std::uint32_t trie;
    Position u;
    std::int32_t kk;
    std::int32_t mu;
};

struct LaterFirst {
    bool operator()(const Frame& a, const Frame& b) const {
        return a.offset != b.offset ? a.offset > b.offset : a.seq > b.seq;
    }
};

class Lookup {
public:
    Lookup(const ErrataTree& tree, const Dictionary& dict, const PackedString& p, const LookupOptions& opt,
           LookupResult& res)
        : tree_(tree), dict_(dict), p_(p), opt_(opt), res_(res), search_(dict, p, opt.suffix, res.stats) {
        use_probes_ = opt.probes != nullptr && tree.k() >= 2;
    }

    void run() {
        push(0, {0, 0}, static_cast<std::int32_t>(tree_.k()), 0, false, false);
        while (!heap_.empty()) {
            const Frame f = heap_.top();
            heap_.pop();
            process(f);
        }
        if (!probes_.empty()) opt_.probes->resolve(tree_, dict_, p_, probes_, res_.ids, res_.stats);
    }

private:
    // child: a vertical or horizontal child trie root; deferable: may become a probe.
    void push(std::uint32_t trie, Position u, std::int32_t kk, std::int32_t mu, bool from_one, bool continuation) {
        if (from_one && use_probes_) {
            probes_.push_back({trie, u, mu, continuation});
            return;
        }
        heap_.push({tree_.trie(trie).start + std::uint64_t{u.depth}, seq_++, trie, u, kk, mu});
    }

    void process(const Frame& f) {
        const ErrataTrie& t = tree_.trie(f.trie);
        const CompactTrie& tr = t.trie;
        const std::uint32_t D = f.u.depth;
        QueryStats& st = res_.stats;

        if (f.kk == 0) {
            ++st.prefix_search_ops;
            const Position e = search_.search(t, f.u);
            if (e.depth == t.length) report_at(t, e, f.mu, res_.ids);
            return;
        }
        if (D == t.length) {
            report_at(t, f.u, f.mu, res_.ids);
            return;
        }
        ++st.prefix_search_ops;
        const Position e = search_.search(t, f.u);
        if (e.depth == t.length) report_at(t, e, f.mu, res_.ids);

        const bool one = f.kk == 1;
        Position cur = e;
        NodeId light = kNoNode;
        for (bool first = true;; first = false) {
            const NodeId x = cur.node;
            const std::uint32_t p = tr.path_of(x);

            // strings leaving this heavy path above cur
            if (!t.vert_wbt[p].empty()) {
                const auto nodes = tr.path_nodes(p);
                const auto idx_begin = t.vert_index.begin() + t.vert_off[p];
                const auto idx_end = t.vert_index.begin() + t.vert_off[p + 1];
                const auto below = static_cast<std::uint32_t>(
                    std::lower_bound(idx_begin, idx_end, tr.path_index(x)) - idx_begin);
                const WeightBalancedTree& w = t.vert_wbt[p];
                for (auto n : w.left_cover(below)) {
                    const NodeId vb = nodes[idx_begin[w.node(n).hi - 1]];
                    if (tr.depth(vb) < D) continue;
                    const std::uint32_t child = t.vert_child[t.vert_child_off[p] + n];
                    if (child != kNoTrie) push(child, {0, 0}, f.kk - 1, f.mu, one, false);
                }
            }

            if (first) {
                if (cur.depth < t.length) {
                    if (tr.at_node(cur)) {
                        if (const auto slot = t.horiz_of[x]; slot != kNoTrie) {
                            push(t.horiz_child[t.horiz_child_off[slot]], {0, 0}, f.kk - 1, f.mu, one, false);
                        }
                        push(f.trie, {tr.heavy_child(x), tr.depth(x) + 1}, f.kk - 1, f.mu + 1, false, false);
                    } else {
                        push(f.trie, {x, cur.depth + 1}, f.kk - 1, f.mu + 1, false, false);
                    }
                }
            } else {
                if (const auto slot = t.horiz_of[x]; slot != kNoTrie) {
                    const WeightBalancedTree& w = t.horiz_wbt[slot];
                    const auto lb = t.horiz_leaves.begin() + t.horiz_off[slot];
                    const auto le = t.horiz_leaves.begin() + t.horiz_off[slot + 1];
                    const auto it = std::lower_bound(lb, le, light);
                    const std::uint32_t base = t.horiz_child_off[slot];
                    if (it != le && *it == light) {
                        for (auto n : w.off_path_cover(static_cast<std::uint32_t>(it - lb))) {
                            push(t.horiz_child[base + n], {0, 0}, f.kk - 1, f.mu, one, false);
                        }
                    } else {
                        push(t.horiz_child[base + w.root()], {0, 0}, f.kk - 1, f.mu, one, false);
                    }
                }
                push(f.trie, {tr.heavy_child(x), tr.depth(x) + 1}, f.kk - 1, f.mu + 1, one, true);
            }

            const NodeId head = tr.path_head(p);
            if (head == tr.root()) break;
            const NodeId par = tr.parent(head);
            if (tr.depth(par) < D) break;
            light = head;
            cur = {par, tr.depth(par)};
        }
    }

    const ErrataTree& tree_;
    const Dictionary& dict_;
    const PackedString& p_;
    const LookupOptions& opt_;
    LookupResult& res_;
    Searcher search_;
    bool use_probes_ = false;
    std::priority_queue<Frame, std::vector<Frame>, LaterFirst> heap_;
    std::uint64_t seq_ = 0;
    std::vector<Probe> probes_;
};

}  // namespace

LookupResult lookup(const ErrataTree& tree, const Dictionary& dict, const PackedString& p,
                    const LookupOptions& opt) {
    if (p.length() != dict.length()) {
        throw Error(ErrorCode::LengthMismatch, "query has length " + std::to_string(p.length()) + ", expected " +
                                                   std::to_string(dict.length()));
    }
    LookupResult res;
    if (!opt.force_errata && dict.size() <= 2) {
        for (std::uint32_t i = 0; i < dict.size(); ++i) {
            if (hamming(p, dict[i], tree.k(), &res.stats)) res.ids.push_back(i);
        }
        res.stats.reported = res.ids.size();
        return res;
    }
    Lookup(tree, dict, p, opt, res).run();
    const std::size_t raw = res.ids.size();
    std::sort(res.ids.begin(), res.ids.end());
    res.ids.erase(std::unique(res.ids.begin(), res.ids.end()), res.ids.end());
    res.stats.duplicates_suppressed = raw - res.ids.size();
    res.stats.reported = res.ids.size();
    return res;
}

}  // namespace kerr
