#include <algorithm>
#include <cstdlib>
#include <string>

#include "kerrata/errata.hpp"

namespace kerr {

namespace {

template <class T>
std::size_t vec_bytes(const std::vector<T>& v) {
    return v.capacity() * sizeof(T);
}

std::size_t memcap_bytes(std::size_t opt_mb) {
    std::size_t mb = opt_mb;
    if (mb == 0) {
        if (const char* env = std::getenv("KERRATA_MEMCAP_MB")) {
            char* end = nullptr;
            const unsigned long long v = std::strtoull(env, &end, 10);
            if (end != env && *end == '\0') mb = static_cast<std::size_t>(v);
        }
    }
    return mb == 0 ? 0 : mb << 20;
}

}  // namespace

std::size_t ErrataTrie::memory_bytes() const {
    std::size_t b = sizeof(*this) + vec_bytes(strings) + trie.memory_bytes() + vec_bytes(vert_off) +
                    vec_bytes(vert_index) + vec_bytes(vert_child_off) + vec_bytes(vert_child) + vec_bytes(horiz_of) +
                    vec_bytes(horiz_off) + vec_bytes(horiz_leaves) + vec_bytes(horiz_child_off) +
                    vec_bytes(horiz_child);
    for (const auto& w : vert_wbt) b += w.memory_bytes();
    for (const auto& w : horiz_wbt) b += w.memory_bytes();
    if (has_heads) {
        b += heads.trie.memory_bytes() + heads.micro.memory_bytes() + vec_bytes(heads.lo) + vec_bytes(heads.hi);
    }
    return b;
}

class ErrataBuilder {
public:
    ErrataBuilder(const Dictionary& dict, const BuildOptions& opt, ErrataTree& out)
        : dict_(dict), opt_(opt), out_(out), cap_(memcap_bytes(opt.memcap_mb)) {}

    std::uint32_t make(std::vector<CreditedString> strs, std::uint32_t start, std::uint32_t level);

private:
    void build_heads(ErrataTrie& t) const;
    void build_vertical(ErrataTrie& t);
    void build_horizontal(ErrataTrie& t);
    void charge(std::size_t bytes);

    const Dictionary& dict_;
    const BuildOptions& opt_;
    ErrataTree& out_;
    std::size_t cap_;
    std::size_t used_ = 0;
};

void ErrataBuilder::charge(std::size_t bytes) {
    used_ += bytes;
    if (cap_ != 0 && used_ > cap_) {
        throw Error(ErrorCode::ResourceCap, "errata tree exceeds the memory cap of " + std::to_string(cap_ >> 20) +
                                                " MiB after " + std::to_string(out_.tries_.size()) + " tries");
    }
}

std::uint32_t ErrataBuilder::make(std::vector<CreditedString> strs, std::uint32_t start, std::uint32_t level) {
    const auto id = static_cast<std::uint32_t>(out_.tries_.size());
    out_.tries_.emplace_back();

    ErrataTrie t;
    t.start = start;
    t.length = static_cast<std::uint32_t>(dict_.length()) - start;
    t.level = level;
    std::sort(strs.begin(), strs.end(), [](const CreditedString& a, const CreditedString& b) {
        return a.credit != b.credit ? a.credit > b.credit : a.sid < b.sid;
    });
    t.strings = std::move(strs);
    std::vector<TrieEntry> entries;
    entries.reserve(t.strings.size());
    for (std::uint32_t i = 0; i < t.strings.size(); ++i) entries.push_back({t.strings[i].sid, start, t.length, i});
    t.trie = CompactTrie::build(dict_.strings(), std::move(entries));
    out_.total_strings_ += t.strings.size();
    charge(t.memory_bytes());

    if (opt_.sample_interval != 0) build_heads(t);
    if (level >= 1) {
        build_vertical(t);
        build_horizontal(t);
    }
    charge(t.memory_bytes() - t.trie.memory_bytes() - sizeof(t) - t.strings.capacity() * sizeof(CreditedString));
    out_.tries_[id] = std::move(t);
    return id;
}

void ErrataBuilder::build_heads(ErrataTrie& t) const {
    const std::uint32_t b = opt_.sample_interval;
    const std::size_t m = dict_.length();
    std::size_t a = (t.start + b) / b * b - 1;
    if (a >= m) a = m;
    t.has_heads = true;
    HeadsIndex& h = t.heads;
    h.head_end = static_cast<std::uint32_t>(a);
    std::vector<TrieEntry> entries;
    for (std::uint32_t r = 0; r < t.trie.terminal_count(); ++r) {
        entries.push_back({t.first_string(t.trie.terminal(r)).sid, t.start, h.head_end - t.start, r});
    }
    h.trie = CompactTrie::build(dict_.strings(), std::move(entries));
    h.micro = MicroTreeIndex::build(h.trie);
    h.lo.resize(h.trie.terminal_count());
    h.hi.resize(h.trie.terminal_count());
    for (std::uint32_t r = 0; r < h.trie.terminal_count(); ++r) {
        const auto pays = h.trie.payloads(h.trie.terminal(r));
        h.lo[r] = *std::min_element(pays.begin(), pays.end());
        h.hi[r] = *std::max_element(pays.begin(), pays.end());
    }
}

void ErrataBuilder::build_vertical(ErrataTrie& t) {
    const CompactTrie& tr = t.trie;
    const std::size_t paths = tr.path_count();
    t.vert_off.assign(1, 0);
    t.vert_child_off.assign(1, 0);
    t.vert_wbt.resize(paths);
    std::vector<std::vector<std::uint32_t>> diverging;
    std::vector<std::uint64_t> weights;
    std::vector<std::uint32_t> present;
    for (std::uint32_t p = 0; p < paths; ++p) {
        const auto nodes = tr.path_nodes(p);
        const std::uint32_t tsid = t.first_string(tr.path_tail(p)).sid;
        diverging.clear();
        weights.clear();
        present.clear();
        for (std::uint32_t i = 0; i < nodes.size(); ++i) {
            const NodeId v = nodes[i];
            std::vector<std::uint32_t> below;
            for (NodeId c : tr.children(v)) {
                if (c == tr.heavy_child(v)) continue;
                const auto [lo, hi] = tr.leaf_range(c);
                for (std::uint32_t r = lo; r <= hi; ++r) {
                    for (std::uint32_t q : tr.payloads(tr.terminal(r))) below.push_back(q);
                }
            }
            if (below.empty()) continue;
            present.push_back(i);
            weights.push_back(below.size());
            diverging.push_back(std::move(below));
        }
        t.vert_index.insert(t.vert_index.end(), present.begin(), present.end());
        t.vert_off.push_back(static_cast<std::uint32_t>(t.vert_index.size()));
        if (present.empty()) {
            t.vert_child_off.push_back(static_cast<std::uint32_t>(t.vert_child.size()));
            continue;
        }
        t.vert_wbt[p] = WeightBalancedTree::build(weights);
        const WeightBalancedTree& w = t.vert_wbt[p];
        const std::size_t base = t.vert_child.size();
        t.vert_child.resize(base + w.node_count(), kNoTrie);
        t.vert_child_off.push_back(static_cast<std::uint32_t>(t.vert_child.size()));
        for (std::uint32_t n = 0; n < w.node_count(); ++n) {
            const auto& wn = w.node(n);
            const std::uint32_t db = tr.depth(nodes[present[wn.hi - 1]]);
            const std::uint32_t window_end = t.start + db + (opt_.fault == 2 ? 0 : 1);
            std::vector<CreditedString> next;
            for (std::uint32_t j = wn.lo; j < wn.hi; ++j) {
                const std::uint32_t from = t.start + tr.depth(nodes[present[j]]);
                for (std::uint32_t q : diverging[j]) {
                    const CreditedString& cs = t.strings[q];
                    if (cs.credit < 0) continue;
                    const auto mm = hamming_range(dict_[cs.sid], dict_[tsid], from, std::max(from, window_end),
                                                  static_cast<std::size_t>(cs.credit));
                    if (!mm) continue;
                    next.push_back({cs.sid, t.start + db + 1, cs.credit - static_cast<std::int32_t>(*mm)});
                }
            }
            if (next.empty()) continue;
            const std::uint32_t child = make(std::move(next), t.start + db + 1, t.level - 1);
            t.vert_child[base + n] = child;
        }
    }
}

void ErrataBuilder::build_horizontal(ErrataTrie& t) {
    const CompactTrie& tr = t.trie;
    t.horiz_of.assign(tr.node_count(), kNoTrie);
    t.horiz_off.assign(1, 0);
    t.horiz_child_off.assign(1, 0);
    std::vector<std::uint64_t> weights;
    std::vector<std::vector<std::uint32_t>> eligible;
    for (NodeId x = 0; x < tr.node_count(); ++x) {
        if (tr.children(x).size() < 2) continue;
        weights.clear();
        eligible.clear();
        std::vector<NodeId> leaves;
        for (NodeId c : tr.children(x)) {
            if (c == tr.heavy_child(x)) continue;
            std::vector<std::uint32_t> ok;
            const auto [lo, hi] = tr.leaf_range(c);
            for (std::uint32_t r = lo; r <= hi; ++r) {
                for (std::uint32_t q : tr.payloads(tr.terminal(r))) {
                    if (t.strings[q].credit < 1) break;
                    ok.push_back(q);
                }
            }
            if (ok.empty()) continue;
            leaves.push_back(c);
            weights.push_back(ok.size());
            eligible.push_back(std::move(ok));
        }
        if (leaves.empty()) continue;
        const auto slot = static_cast<std::uint32_t>(t.horiz_wbt.size());
        t.horiz_of[x] = slot;
        t.horiz_leaves.insert(t.horiz_leaves.end(), leaves.begin(), leaves.end());
        t.horiz_off.push_back(static_cast<std::uint32_t>(t.horiz_leaves.size()));
        t.horiz_wbt.push_back(WeightBalancedTree::build(weights));
        const std::size_t nn = t.horiz_wbt.back().node_count();
        const std::size_t base = t.horiz_child.size();
        t.horiz_child.resize(base + nn, kNoTrie);
        t.horiz_child_off.push_back(static_cast<std::uint32_t>(t.horiz_child.size()));
        const std::uint32_t ns = t.start + tr.depth(x) + 1;
        for (std::uint32_t n = 0; n < nn; ++n) {
            const auto& wn = t.horiz_wbt[slot].node(n);
            std::vector<CreditedString> next;
            for (std::uint32_t j = wn.lo; j < wn.hi; ++j) {
                for (std::uint32_t q : eligible[j]) next.push_back({t.strings[q].sid, ns, t.strings[q].credit - 1});
            }
            const std::uint32_t child = make(std::move(next), ns, t.level - 1);
            t.horiz_child[base + n] = child;
        }
    }
}

ErrataTree ErrataTree::build(const Dictionary& dict, unsigned k, const BuildOptions& opt) {
    ErrataTree tree;
    tree.k_ = k;
    std::vector<CreditedString> root;
    root.reserve(dict.size());
    const auto credit = static_cast<std::int32_t>(k) + (opt.fault == 1 ? 1 : 0);
    for (std::uint32_t i = 0; i < dict.size(); ++i) root.push_back({i, 0, credit});
    ErrataBuilder b(dict, opt, tree);
    b.make(std::move(root), 0, k);
    return tree;
}

std::size_t ErrataTree::memory_bytes() const {
    std::size_t b = sizeof(*this);
    for (const auto& t : tries_) b += t.memory_bytes();
    return b;
}

}  // namespace kerr
