// Prints one PASS/FAIL line per acceptance criterion; exits nonzero on any
// failure. Every check is against brute force or an exact bound formula.

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cstdio>
#include <functional>
#include <mutex>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "kerrata/harness.hpp"

using namespace kerr;
using oracle::Letters;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
    std::atomic<std::uint64_t> checks{0};
    std::atomic<bool> failed{false};
    std::mutex mu;
    std::string first;

    void fail(const std::string& what) {
        std::lock_guard lock(mu);
        if (!failed.exchange(true)) first = what;
    }
    bool ok() const { return !failed.load(); }
};

// Shared across criteria 1-2 for the bound checks of criteria 3-4 and the
// dual-path check of criterion 6.
struct Ledger {
    Outcome size, query, dual, structure;
    std::atomic<std::uint64_t> indexes{0}, queries{0};
    std::atomic<std::uint64_t> max_size_ratio_num{0}, max_ops{0};
};

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& f) {
    const unsigned threads = std::max(1u, std::thread::hardware_concurrency());
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (std::size_t i; (i = next.fetch_add(1)) < n;) f(i);
        });
    }
    for (auto& th : pool) th.join();
}

std::string show(const std::vector<Letters>& dict, const Letters& q, unsigned k, const std::string& mode) {
    std::ostringstream out;
    out << "mode " << mode << " k " << k << " dict";
    for (const auto& s : dict) {
        out << ' ';
        for (auto c : s) out << int(c) - 1;
    }
    out << " query ";
    for (auto c : q) out << int(c) - 1;
    return out.str();
}

void line(int n, bool ok, const std::string& detail, Clock::time_point t0) {
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    std::printf("%s criterion %d: %s (%.1fs)\n", ok ? "PASS" : "FAIL", n, detail.c_str(), secs);
    std::fflush(stdout);
}

// ---- structure oracles ------------------------------------------------------

void check_wbt(const WeightBalancedTree& t, Outcome& out) {
    const auto h = static_cast<std::uint32_t>(t.leaf_count());
    std::vector<std::uint64_t> w(h);
    for (std::uint32_t i = 0; i < h; ++i) w[i] = t.node(t.leaf_node(i)).weight;
    const auto brute = oracle::brute_wbt(w);
    if (brute.size() != t.node_count()) return out.fail("wbt node count");
    for (std::uint32_t i = 0; i < brute.size(); ++i) {
        const auto& a = t.node(i);
        if (a.lo != brute[i].lo || a.hi != brute[i].hi || a.left != brute[i].left || a.mid != brute[i].mid ||
            a.right != brute[i].right)
            return out.fail("wbt node " + std::to_string(i) + " differs from recursive definition");
    }
    std::vector<int> seen(h);
    auto mark = [&](const std::vector<WeightBalancedTree::NodeIdx>& cover) {
        std::fill(seen.begin(), seen.end(), 0);
        for (auto n : cover) {
            for (std::uint32_t l = t.node(n).lo; l < t.node(n).hi; ++l) ++seen[l];
        }
    };
    for (std::uint32_t target = 0; target <= h; ++target) {
        mark(t.left_cover(target));
        for (std::uint32_t l = 0; l < h; ++l) {
            if (seen[l] != (l < target ? 1 : 0)) return out.fail("left_cover(" + std::to_string(target) + ")");
        }
    }
    for (std::uint32_t ex = 0; ex < h; ++ex) {
        mark(t.off_path_cover(ex));
        for (std::uint32_t l = 0; l < h; ++l) {
            if (seen[l] != (l != ex ? 1 : 0)) return out.fail("off_path_cover(" + std::to_string(ex) + ")");
        }
    }
    out.checks += 1;
}

void check_trie(const CompactTrie& t, Outcome& out) {
    const auto n = static_cast<std::uint32_t>(t.node_count());
    std::vector<std::uint32_t> parent(n), depth(n);
    for (NodeId y = 0; y < n; ++y) {
        parent[y] = t.parent(y);
        depth[y] = t.depth(y);
    }
    for (NodeId u = 0; u < n; ++u) {
        for (NodeId v = u; v < n; ++v) {
            const NodeId want = oracle::brute_lca(parent, u, v);
            if (t.lca(u, v) != want || t.lca(v, u) != want)
                return out.fail("lca(" + std::to_string(u) + "," + std::to_string(v) + ")");
        }
        for (std::uint32_t len = 0; len <= depth[u]; ++len) {
            if (t.weighted_level_ancestor(u, len) != oracle::brute_wla(parent, depth, u, len))
                return out.fail("wla(" + std::to_string(u) + "," + std::to_string(len) + ")");
        }
    }
    out.checks += 1;
}

void check_tree_structures(const ErrataTree& tree, Outcome& out) {
    for (const auto& t : tree.tries()) {
        check_trie(t.trie, out);
        for (const auto& w : t.vert_wbt) {
            if (!w.empty()) check_wbt(w, out);
        }
        for (const auto& w : t.horiz_wbt) {
            if (!w.empty()) check_wbt(w, out);
        }
    }
}

// ---- index checks shared by criteria 1 and 2 --------------------------------

// Builds the dictionary in `mode`, checks the size bound, then every query.
// want[i][k] are the oracle ids of queries[i] for k.
bool run_index(const std::vector<Letters>& dict, unsigned sigma, const std::string& mode, const IndexOptions& opt,
               const std::vector<Letters>& queries, const std::vector<std::vector<std::uint32_t>>& want,
               Outcome& eq, Ledger& lg, std::vector<std::vector<std::uint32_t>>* got_ids = nullptr) {
    const Index x = Index::build(Dictionary::from_letters(dict, sigma), opt);
    const std::uint64_t d = dict.size();
    ++lg.indexes;
    if (x.total_strings() > size_budget(d, opt.k)) {
        lg.size.fail(show(dict, {}, opt.k, mode) + ": " + std::to_string(x.total_strings()) + " strings > " +
                     std::to_string(size_budget(d, opt.k)));
    }
    lg.size.checks += 1;
    const std::uint64_t budget = prefix_search_budget(d, opt.k);
    for (std::size_t i = 0; i < queries.size(); ++i) {
        const auto res = x.query(PackedString::pack(queries[i], x.dict().alphabet()));
        ++lg.queries;
        if (res.ids != want[i]) {
            eq.fail(show(dict, queries[i], opt.k, mode));
            return false;
        }
        if (res.stats.prefix_search_ops > budget) {
            lg.query.fail(show(dict, queries[i], opt.k, mode) + ": " + std::to_string(res.stats.prefix_search_ops) +
                          " ops > " + std::to_string(budget));
        }
        lg.query.checks += 1;
        std::uint64_t prev = lg.max_ops.load();
        while (res.stats.prefix_search_ops > prev && !lg.max_ops.compare_exchange_weak(prev, res.stats.prefix_search_ops)) {
        }
        if (got_ids) (*got_ids)[i] = res.ids;
    }
    eq.checks += queries.size();
    if (opt.k == 2 && opt.mode == SuffixMode::Full && !opt.fingerprints && got_ids == nullptr) {
        // criterion 1 tries feed the structure oracles once per dictionary
        check_tree_structures(x.tree(), lg.structure);
    }
    return true;
}

IndexOptions mode_options(unsigned k, SuffixMode mode, bool fps, std::uint64_t seed) {
    IndexOptions o;
    o.k = k;
    o.mode = mode;
    o.fingerprints = fps;
    o.seed = seed;
    o.force_errata = true;
    return o;
}

// ---- criterion 1 -------------------------------------------------------------

// Multisets of d strings over {0,1}^m that are XOR-canonical: they contain
// the zero string and no XOR by one of their own members yields a smaller
// sorted vector. Every multiset is a XOR translate of exactly one of these,
// and translating dictionary and query together preserves all distances.
void canonical_multisets(unsigned m, unsigned d, std::vector<std::vector<std::uint32_t>>& out) {
    const std::uint32_t n = 1u << m;
    std::vector<std::uint32_t> cur(d, 0);
    std::function<void(unsigned, std::uint32_t)> rec = [&](unsigned i, std::uint32_t lo) {
        if (i == d) {
            std::vector<std::uint32_t> t(d);
            for (unsigned a = 1; a < d; ++a) {
                if (cur[a] == cur[a - 1]) continue;
                for (unsigned b = 0; b < d; ++b) t[b] = cur[b] ^ cur[a];
                std::sort(t.begin(), t.end());
                if (t < cur) return;
            }
            out.push_back(cur);
            return;
        }
        for (std::uint32_t v = lo; v < n; ++v) {
            cur[i] = v;
            rec(i + 1, v);
        }
    };
    rec(1, 0);  // cur[0] = 0
}

Letters bits_to_letters(std::uint32_t v, unsigned m) {
    Letters s(m);
    for (unsigned j = 0; j < m; ++j) s[j] = static_cast<std::uint8_t>(1 + ((v >> (m - 1 - j)) & 1));
    return s;
}

bool criterion1(Ledger& lg) {
    const auto t0 = Clock::now();
    std::vector<std::pair<unsigned, std::vector<std::uint32_t>>> cases;  // (m, multiset)
    for (unsigned m = 1; m <= 5; ++m) {
        for (unsigned d = 1; d <= 6; ++d) {
            std::vector<std::vector<std::uint32_t>> sets;
            canonical_multisets(m, d, sets);
            for (auto& s : sets) cases.emplace_back(m, std::move(s));
        }
    }
    Outcome eq;
    parallel_for(cases.size(), [&](std::size_t ci) {
        if (!eq.ok()) return;
        const auto& [m, set] = cases[ci];
        std::vector<Letters> dict;
        for (auto v : set) dict.push_back(bits_to_letters(v, m));
        std::vector<Letters> queries;
        for (std::uint32_t v = 0; v < (1u << m); ++v) queries.push_back(bits_to_letters(v, m));
        for (unsigned k = 0; k <= 2; ++k) {
            std::vector<std::vector<std::uint32_t>> want(queries.size());
            for (std::size_t i = 0; i < queries.size(); ++i) want[i] = oracle::brute_lookup(dict, queries[i], k).ids;
            run_index(dict, 2, "full", mode_options(k, SuffixMode::Full, false, ci), queries, want, eq, lg);
            run_index(dict, 2, "sampled", mode_options(k, SuffixMode::Sampled, false, ci), queries, want, eq, lg);
            run_index(dict, 2, "fingerprints", mode_options(k, SuffixMode::Full, true, ci), queries, want, eq, lg);
        }
    });
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    std::string detail = std::to_string(cases.size()) + " canonical dictionaries, " + std::to_string(eq.checks) +
                         " queries, 3 modes";
    bool ok = eq.ok() && secs < 300;
    if (!eq.ok()) detail += "; " + eq.first;
    if (secs >= 300) detail += "; over the 5 minute limit";
    line(1, ok, detail, t0);
    return ok;
}

// ---- criterion 2 (and the dual path of 6) --------------------------------

struct Instance {
    unsigned sigma;
    unsigned k;
    std::vector<Letters> dict;
    std::vector<Letters> queries;
};

Instance random_instance(std::mt19937_64& rng, std::size_t max_d, std::size_t max_m, unsigned max_k,
                         std::size_t nq) {
    Instance in;
    in.sigma = rng() % 2 ? 4 : 2;
    in.k = static_cast<unsigned>(rng() % (max_k + 1));
    const std::size_t d = 1 + rng() % max_d, m = 1 + rng() % max_m;
    in.dict.resize(d);
    for (std::size_t i = 0; i < d; ++i) {
        Letters s(m);
        for (auto& c : s) c = static_cast<std::uint8_t>(1 + rng() % in.sigma);
        if (i > 0 && rng() % 2) {
            s = in.dict[rng() % i];
            for (std::size_t j = rng() % 4; j > 0; --j) s[rng() % m] = static_cast<std::uint8_t>(1 + rng() % in.sigma);
        }
        in.dict[i] = std::move(s);
    }
    for (std::size_t i = 0; i < nq; ++i) {
        Letters q;
        if (i % 4 == 3) {
            q.resize(m);
            for (auto& c : q) c = static_cast<std::uint8_t>(1 + rng() % in.sigma);
        } else {
            q = in.dict[rng() % d];
            for (std::size_t j = rng() % (in.k + 3); j > 0; --j) q[rng() % m] = static_cast<std::uint8_t>(1 + rng() % in.sigma);
        }
        in.queries.push_back(std::move(q));
    }
    return in;
}

constexpr std::size_t kInstances = 500;
constexpr std::size_t kQueriesPerInstance = 20;

std::vector<Instance> criterion2_instances() {
    std::mt19937_64 rng(20240601);
    std::vector<Instance> out;
    for (std::size_t i = 0; i < kInstances; ++i) out.push_back(random_instance(rng, 256, 128, 3, kQueriesPerInstance));
    return out;
}

bool criterion2(Ledger& lg, const std::vector<Instance>& inst) {
    const auto t0 = Clock::now();
    Outcome eq;
    std::atomic<std::uint64_t> dual_pairs{0};
    parallel_for(inst.size(), [&](std::size_t ii) {
        if (!eq.ok()) return;
        const Instance& in = inst[ii];
        std::vector<std::vector<std::uint32_t>> want(in.queries.size());
        for (std::size_t i = 0; i < in.queries.size(); ++i) want[i] = oracle::brute_lookup(in.dict, in.queries[i], in.k).ids;
        std::vector<std::vector<std::uint32_t>> off(in.queries.size()), on(in.queries.size());
        for (auto mode : {SuffixMode::Full, SuffixMode::Sampled}) {
            const std::string name = mode == SuffixMode::Full ? "full" : "sampled";
            if (!run_index(in.dict, in.sigma, name, mode_options(in.k, mode, false, ii), in.queries, want, eq, lg, &off))
                return;
            if (!run_index(in.dict, in.sigma, name + "+fp", mode_options(in.k, mode, true, ii), in.queries, want, eq, lg,
                           &on))
                return;
            if (in.k >= 2) {
                for (std::size_t i = 0; i < on.size(); ++i) {
                    if (on[i] != off[i]) lg.dual.fail(show(in.dict, in.queries[i], in.k, name));
                    ++dual_pairs;
                }
            }
        }
    });
    lg.dual.checks += dual_pairs.load();
    std::string detail = std::to_string(eq.checks) + " (dict, query, mode) trials over " +
                         std::to_string(inst.size() * kQueriesPerInstance) + " (dict, query) pairs";
    if (!eq.ok()) detail += "; " + eq.first;
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    if (secs >= 600) detail += "; over the 10 minute limit";
    const bool ok = eq.ok() && inst.size() * kQueriesPerInstance >= 10000 && secs < 600;
    line(2, ok, detail, t0);
    return ok;
}

// ---- criterion 5 -------------------------------------------------------------

bool criterion5() {
    const auto t0 = Clock::now();
    std::mt19937_64 rng(5);
    Outcome out;
    std::uint64_t batches = 0, max_overlap = 0;
    for (int round = 0; round < 150; ++round) {
        const unsigned sigma = round % 2 ? 4 : 2;
        const Alphabet al(sigma);
        const unsigned lpw = al.letters_per_word();
        const std::size_t d = 1 + rng() % 64, m = 1 + rng() % 4096;
        std::vector<Letters> raw(d, Letters(m));
        for (auto& s : raw) {
            for (auto& c : s) c = static_cast<std::uint8_t>(1 + rng() % sigma);
        }
        // periodic strings give long repeated matches
        const std::size_t period = 1 + rng() % 5;
        for (std::size_t i = 0; i < m; ++i) raw[0][i] = static_cast<std::uint8_t>(1 + (i / period) % sigma);
        std::vector<PackedString> pool;
        for (const auto& s : raw) pool.push_back(PackedString::pack(s, al));
        for (auto mode : {SuffixMode::Full, SuffixMode::Sampled}) {
            const auto idx = SuffixIndex::build(pool, m, mode);
            Letters q = raw[rng() % d];
            for (std::size_t j = rng() % 6; j > 0; --j) q[rng() % m] = static_cast<std::uint8_t>(1 + rng() % sigma);
            const auto pq = PackedString::pack(q, al);
            std::vector<std::size_t> cand;
            for (std::size_t o = 0; o < m; ++o) {
                if (idx.is_sampled(o)) cand.push_back(o);
            }
            std::shuffle(cand.begin(), cand.end(), rng);
            cand.resize(std::min<std::size_t>(cand.size(), 1 + rng() % 256));
            std::sort(cand.begin(), cand.end());
            QueryStats st;
            std::vector<BatchCursor::Interval> trace;
            (void)batched_prefix_search(idx, pq, cand, &st, &trace);
            const std::size_t z = cand.size();
            const std::uint64_t budget = (m + lpw - 1) / lpw + 8 * z * (std::bit_width(d) - 1 + 2);
            if (st.word_blocks_read > budget)
                out.fail("m " + std::to_string(m) + " z " + std::to_string(z) + ": " +
                         std::to_string(st.word_blocks_read) + " blocks > " + std::to_string(budget));
            for (std::size_t i = 0; i < trace.size(); ++i) {
                for (std::size_t j = i + 1; j < trace.size(); ++j) {
                    const std::size_t lo = std::max(trace[i].first, trace[j].first);
                    const std::size_t hi = std::min(trace[i].end, trace[j].end);
                    const std::size_t ov = hi > lo ? hi - lo : 0;
                    max_overlap = std::max<std::uint64_t>(max_overlap, ov);
                    if (ov > lpw) out.fail("searches " + std::to_string(i) + " and " + std::to_string(j) +
                                           " share " + std::to_string(ov) + " letters");
                }
            }
            ++batches;
        }
    }
    std::string detail = std::to_string(batches) + " batches, largest pairwise overlap " +
                         std::to_string(max_overlap) + " letters (one word or less)";
    if (!out.ok()) detail += "; " + out.first;
    line(5, out.ok(), detail, t0);
    return out.ok();
}

// ---- criterion 6 ---------------------------------------------------------------

bool criterion6(Ledger& lg, const std::vector<Instance>& inst) {
    const auto t0 = Clock::now();
    Outcome zero;
    std::uint64_t runs = 0, spurious_queries = 0, candidates = 0, reported = 0;
    FingerprintOptions fo;
    fo.bases = {0};
    fo.accept_collisions = true;
    for (std::size_t ii = 0; ii < inst.size(); ++ii) {
        const Instance& in = inst[ii];
        if (in.k < 2) continue;
        const Dictionary dict = Dictionary::from_letters(in.dict, in.sigma);
        const SuffixIndex suf = SuffixIndex::build(dict.strings(), dict.length(), SuffixMode::Full);
        const ErrataTree tree = ErrataTree::build(dict, in.k);
        const FingerprintIndex fx = FingerprintIndex::build(tree, dict, fo);
        LookupOptions lo;
        lo.suffix = &suf;
        lo.probes = &fx;
        lo.force_errata = true;
        for (const auto& q : in.queries) {
            const auto res = lookup(tree, dict, PackedString::pack(q, dict.alphabet()), lo);
            if (res.ids != oracle::brute_lookup(in.dict, q, in.k).ids) zero.fail(show(in.dict, q, in.k, "r=0"));
            candidates += res.stats.candidates_verified;
            reported += res.stats.reported;
            if (res.stats.candidates_verified > res.stats.reported) ++spurious_queries;
            ++runs;
        }
    }
    const bool ok = lg.dual.ok() && zero.ok() && spurious_queries > 0 && lg.dual.checks > 0;
    std::string detail = std::to_string(lg.dual.checks) + " on/off pairs agree; r=0 correct on " +
                         std::to_string(runs) + " queries, " + std::to_string(spurious_queries) +
                         " with candidates_verified > reported (" + std::to_string(candidates) + " candidates, " +
                         std::to_string(reported) + " reported)";
    if (!lg.dual.ok()) detail += "; " + lg.dual.first;
    if (!zero.ok()) detail += "; " + zero.first;
    line(6, ok, detail, t0);
    return ok;
}

// ---- criterion 7 (random larger structures) ---------------------------------

void criterion7_random(Outcome& out) {
    std::mt19937_64 rng(7);
    for (int round = 0; round < 1000; ++round) {
        const unsigned sigma = round % 2 ? 4 : 2;
        const std::size_t d = 2 + rng() % 60, m = 1 + rng() % 40;
        std::vector<Letters> raw(d, Letters(m));
        for (std::size_t i = 0; i < d; ++i) {
            for (auto& c : raw[i]) c = static_cast<std::uint8_t>(1 + rng() % sigma);
            if (i > 0 && rng() % 3 == 0) {
                raw[i] = raw[rng() % i];
                raw[i][rng() % m] = static_cast<std::uint8_t>(1 + rng() % sigma);
            }
        }
        std::vector<PackedString> pool;
        for (const auto& s : raw) pool.push_back(PackedString::pack(s, Alphabet(sigma)));
        std::vector<TrieEntry> entries;
        for (std::uint32_t i = 0; i < d; ++i) {
            // mixed lengths make unequal leaf depths
            const auto start = static_cast<std::uint32_t>(rng() % m);
            entries.push_back({i, start, static_cast<std::uint32_t>(m - start), i});
        }
        check_trie(CompactTrie::build(pool, entries, false), out);

        const std::size_t h = 1 + rng() % 200;
        std::vector<std::uint64_t> w(h);
        const unsigned spread = round % 3 == 0 ? 1 : round % 3 == 1 ? 8 : 100000;
        for (auto& x : w) x = 1 + rng() % spread;
        check_wbt(WeightBalancedTree::build(w), out);
    }
}

bool criterion7(Ledger& lg) {
    const auto t0 = Clock::now();
    const std::uint64_t from_c1 = lg.structure.checks;
    Outcome random;
    criterion7_random(random);
    const bool ok = lg.structure.ok() && random.ok() && from_c1 > 0;
    std::string detail = std::to_string(from_c1) + " tries and weight-balanced trees from criterion 1, " +
                         std::to_string(random.checks) + " random larger ones; LCA, WLA, WBT, covers";
    if (!lg.structure.ok()) detail += "; " + lg.structure.first;
    if (!random.ok()) detail += "; " + random.first;
    line(7, ok, detail, t0);
    return ok;
}

// ---- criterion 8 -------------------------------------------------------------

bool criterion8() {
    const auto t0 = Clock::now();
    std::mt19937_64 rng(8);
    Outcome out;
    std::uint64_t compared = 0;
    for (int round = 0; round < 100; ++round) {
        const Instance in = random_instance(rng, 64, 64, 3, 16);
        for (const auto& [name, o] : all_modes(in.k, rng())) {
            const Index a = Index::build(Dictionary::from_letters(in.dict, in.sigma), o);
            std::stringstream buf;
            a.save(buf);
            const std::string bytes = buf.str();
            const Index b = Index::load(buf);
            std::stringstream again;
            b.save(again);
            if (again.str() != bytes) out.fail("round " + std::to_string(round) + " " + name + ": re-saved bytes differ");
            for (const auto& q : in.queries) {
                const PackedString p = PackedString::pack(q, a.dict().alphabet());
                const auto ra = a.query(p), rb = b.query(p);
                if (ra.ids != rb.ids || !(ra.stats == rb.stats)) out.fail(show(in.dict, q, in.k, name));
                ++compared;
            }
        }
    }
    std::string detail = "100 rounds, 4 modes, " + std::to_string(compared) + " queries with identical ids and stats";
    if (!out.ok()) detail += "; " + out.first;
    line(8, out.ok(), detail, t0);
    return out.ok();
}

}  // namespace

int main() {
    Ledger lg;
    bool all = true;
    const auto t0 = Clock::now();
    all &= criterion1(lg);
    const auto inst = criterion2_instances();
    all &= criterion2(lg, inst);

    {
        const auto t = Clock::now();
        // the bound itself is checked against arbitrary precision
        Outcome formula;
        for (std::uint64_t d = 1; d <= 300; ++d) {
            for (unsigned k = 0; k <= 3; ++k) {
                if (std::to_string(size_budget(d, k)) != oracle::brute_size_bound(d, k)) formula.fail("size bound formula");
                if (std::to_string(prefix_search_budget(d, k)) != oracle::brute_query_bound(d, k))
                    formula.fail("query bound formula");
            }
        }
        line(3, lg.size.ok() && formula.ok(),
             std::to_string(lg.size.checks) + " indexes within the stored-string bound" +
                 (lg.size.ok() ? "" : "; " + lg.size.first) + (formula.ok() ? "" : "; " + formula.first),
             t);
        all &= lg.size.ok() && formula.ok();
        line(4, lg.query.ok(),
             std::to_string(lg.query.checks) + " queries within the prefix-search budget, max " +
                 std::to_string(lg.max_ops.load()) + " ops" + (lg.query.ok() ? "" : "; " + lg.query.first),
             t);
        all &= lg.query.ok();
    }
    all &= criterion5();
    all &= criterion6(lg, inst);
    all &= criterion7(lg);
    all &= criterion8();
    std::printf("%s all criteria (%.1fs)\n", all ? "PASS" : "FAIL",
                std::chrono::duration<double>(Clock::now() - t0).count());
    return all ? 0 : 1;
}
