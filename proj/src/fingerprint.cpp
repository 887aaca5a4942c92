#include "kerrata/fingerprint.hpp"

#include <bit>
#include <optional>
#include <random>

namespace kerr {

FingerprintScheme::FingerprintScheme(std::uint64_t r, std::size_t max_words) : r_(reduce(r)) {
    pow_.resize(max_words + 2);
    pow_[0] = 1;
    for (std::size_t i = 1; i < pow_.size(); ++i) pow_[i] = mul(pow_[i - 1], r_);
}

std::uint64_t FingerprintScheme::reduce(std::uint64_t x) noexcept {
    x = (x & kPrime) + (x >> 61);
    return x >= kPrime ? x - kPrime : x;
}

std::uint64_t FingerprintScheme::mul(std::uint64_t a, std::uint64_t b) noexcept {
    constexpr std::uint64_t lo31 = (std::uint64_t{1} << 31) - 1;
    constexpr std::uint64_t lo30 = (std::uint64_t{1} << 30) - 1;
    const std::uint64_t a1 = a >> 31, a0 = a & lo31;
    const std::uint64_t b1 = b >> 31, b0 = b & lo31;
    const std::uint64_t mid = a1 * b0 + a0 * b1;  // < 2^62
    // 2^62 = 2 and 2^61 = 1 modulo p
    const std::uint64_t x = 2 * (a1 * b1) + (mid >> 30) + ((mid & lo30) << 31) + a0 * b0;
    return reduce(reduce(x));
}

std::uint64_t FingerprintScheme::fingerprint(std::span<const Word> words) const {
    std::uint64_t h = 0;
    for (Word w : words) h = add(mul(h, r_), reduce(w));
    return h;
}

std::vector<std::uint64_t> FingerprintScheme::prefix_fingerprints(const PackedString& s) const {
    const unsigned lpw = s.alphabet().letters_per_word();
    const std::size_t full = s.length() / lpw;
    std::vector<std::uint64_t> g(full + 1, 0);
    for (std::size_t q = 0; q < full; ++q) g[q + 1] = add(mul(g[q], r_), reduce(s.words()[q]));
    return g;
}

std::uint64_t FingerprintScheme::prefix(const PackedString& s, const std::vector<std::uint64_t>& full,
                                        std::size_t n) const {
    const unsigned lpw = s.alphabet().letters_per_word();
    const std::size_t q = n / lpw, rem = n % lpw;
    if (rem == 0) return full[q];
    return add(mul(full[q], r_), reduce(s.window(q * lpw, rem)));
}

std::vector<std::pair<std::size_t, std::uint64_t>> batch_suffix_fps(const FingerprintScheme& scheme,
                                                                    const PackedString& p,
                                                                    std::span<const std::uint64_t> positions) {
    const PackedString rp = reverse(p);
    const auto g = scheme.prefix_fingerprints(rp);
    const std::size_t m = p.length();
    std::vector<std::pair<std::size_t, std::uint64_t>> out;
    for (std::size_t b = 0; b < positions.size(); ++b) {
        for (std::uint64_t bits = positions[b]; bits != 0; bits &= bits - 1) {
            const std::size_t i = b * 64 + static_cast<std::size_t>(std::countr_zero(bits));
            if (i >= m) break;
            out.emplace_back(i, scheme.prefix(rp, g, m - i));
        }
    }
    return out;
}

bool FingerprintIndex::fill_catalogs(const ErrataTree& tree, const Dictionary& dict, bool allow_collisions) {
    const std::size_t m = dict.length();
    const unsigned bits = dict.alphabet().bits_per_letter();
    const auto& rev = *rev_pool_;
    std::vector<std::vector<std::uint64_t>> g(rev.size());
    for (std::size_t i = 0; i < rev.size(); ++i) g[i] = scheme_.prefix_fingerprints(rev[i]);

    catalog_.assign(tree.tries().size(), {});
    phi_.assign(tree.tries().size(), {});
    for (std::uint32_t id = 0; id < tree.tries().size(); ++id) {
        const ErrataTrie& t = tree.trie(id);
        const CompactTrie& tr = t.trie;
        auto& cat = catalog_[id];
        cat.reserve(tr.terminal_count());
        for (std::uint32_t r = 0; r < tr.terminal_count(); ++r) {
            const NodeId y = tr.terminal(r);
            const std::uint32_t sid = t.first_string(y).sid;
            const std::uint64_t fp = scheme_.prefix(rev[sid], g[sid], t.length);
            if (!allow_collisions && cat.count(fp) != 0) return false;
            cat.emplace(fp, y);
        }
        auto& phi = phi_[id];
        phi.assign(tr.node_count(), 0);
        for (NodeId x = 0; x < tr.node_count(); ++x) {
            if (tr.is_leaf(x)) continue;
            const std::uint32_t d = tr.depth(x);
            const std::uint32_t r0 = (t.length - d) % lpw_;
            const PackedString& rx = rev[tr.label_string(x)];
            const std::size_t b = m - tr.label_start(x) - d;  // reverse(label) = rx[b, b + d)
            const std::size_t words = (r0 + d + lpw_ - 1) / lpw_;
            std::uint64_t h = 0;
            for (std::size_t j = 0; j < words; ++j) {
                Word w = 0;
                if (j == 0) {
                    const std::size_t n = std::min<std::size_t>(lpw_ - r0, d);
                    if (n > 0) w = rx.window(b, n) >> (r0 * bits);
                } else {
                    const std::size_t from = b + j * lpw_ - r0;
                    w = rx.window(from, std::min<std::size_t>(lpw_, b + d - from));
                }
                h = FingerprintScheme::add(FingerprintScheme::mul(h, scheme_.base()), FingerprintScheme::reduce(w));
            }
            phi[x] = h;
        }
    }
    return true;
}

FingerprintIndex FingerprintIndex::build(const ErrataTree& tree, const Dictionary& dict,
                                         const FingerprintOptions& opt) {
    FingerprintIndex f;
    f.lpw_ = dict.alphabet().letters_per_word();
    const std::size_t m = dict.length();
    auto pool = std::make_shared<std::vector<PackedString>>();
    for (std::size_t i = 0; i < dict.size(); ++i) pool->push_back(reverse(dict[i]));
    f.rev_pool_ = pool;
    std::vector<TrieEntry> entries;
    for (std::uint32_t i = 0; i < dict.size(); ++i) entries.push_back({i, 0, static_cast<std::uint32_t>(m), i});
    f.rev_trie_ = CompactTrie::build(*f.rev_pool_, std::move(entries));
    f.rev_micro_ = MicroTreeIndex::build(f.rev_trie_);
    f.rev_leaf_.assign(dict.size(), kNoNode);
    for (std::uint32_t r = 0; r < f.rev_trie_.terminal_count(); ++r) {
        for (std::uint32_t sid : f.rev_trie_.payloads(f.rev_trie_.terminal(r))) f.rev_leaf_[sid] = f.rev_trie_.terminal(r);
    }

    constexpr std::uint32_t kMaxDraws = 64;
    std::mt19937_64 rng(opt.seed);
    const std::size_t max_words = m / f.lpw_ + 2;
    for (std::uint32_t draw = 0; draw < kMaxDraws; ++draw) {
        const std::uint64_t r = draw < opt.bases.size() ? opt.bases[draw] : rng() % FingerprintScheme::kPrime;
        f.scheme_ = FingerprintScheme(r, max_words);
        f.draws_ = draw + 1;
        if (f.fill_catalogs(tree, dict, opt.accept_collisions)) return f;
    }
    throw Error(ErrorCode::SchemeSelectionFailed,
                "no fingerprint base without leaf collisions in " + std::to_string(kMaxDraws) + " draws");
}

std::vector<NodeId> FingerprintIndex::leaves_with(std::uint32_t trie, std::uint64_t fp) const {
    std::vector<NodeId> out;
    const auto [a, b] = catalog_[trie].equal_range(fp);
    for (auto it = a; it != b; ++it) out.push_back(it->second);
    return out;
}

bool FingerprintIndex::verify(std::uint32_t sid, std::size_t n, Position rev_answer) const {
    if (n == 0) return true;
    const NodeId v = rev_leaf_[sid];
    const std::uint32_t l = std::min(rev_answer.depth, rev_trie_.depth(rev_trie_.lca(rev_answer.node, v)));
    return l >= n;
}

void FingerprintIndex::resolve(const ErrataTree& tree, const Dictionary& dict, const PackedString& p,
                               const std::vector<Probe>& probes, std::vector<std::uint32_t>& out,
                               QueryStats& stats) const {
    (void)dict;
    const PackedString rp = reverse(p);
    const auto g = scheme_.prefix_fingerprints(rp);
    stats.word_blocks_read += rp.words().size();
    std::optional<Position> rev_answer;
    const Alphabet& al = p.alphabet();

    for (const Probe& pr : probes) {
        const ErrataTrie& t = tree.trie(pr.trie);
        const CompactTrie& tr = t.trie;
        ++stats.prefix_search_ops;
        ++stats.fingerprint_probes;
        const std::uint32_t qlen = t.length - pr.u.depth;
        const std::uint32_t r0 = qlen % lpw_;
        const std::uint64_t f_full = g[qlen / lpw_];
        const std::uint64_t x_last = r0 ? FingerprintScheme::reduce(rp.window(qlen / lpw_ * lpw_, r0)) : 0;

        std::uint64_t phi = 0;
        std::size_t w = r0 ? 1 : 0;
        NodeId h = kNoNode;
        if (pr.continuation) {
            h = pr.u.node;
            const NodeId x = tr.parent(h);
            const std::uint32_t dx = tr.depth(x);
            const std::uint32_t rx = (t.length - dx) % lpw_;
            const std::size_t wx = (rx + dx + lpw_ - 1) / lpw_;
            const Word a = tr.letter_at(h, dx);
            if (rx >= 1) {
                phi = FingerprintScheme::add(phi_[pr.trie][x],
                                             FingerprintScheme::mul(FingerprintScheme::reduce(a << al.slot_shift(rx - 1)),
                                                                    scheme_.power(wx - 1)));
                w = wx;
            } else {
                phi = FingerprintScheme::add(FingerprintScheme::mul(FingerprintScheme::reduce(a << al.slot_shift(lpw_ - 1)),
                                                                    scheme_.power(wx)),
                                             phi_[pr.trie][x]);
                w = wx + 1;
            }
        }
        std::uint64_t target = FingerprintScheme::add(FingerprintScheme::mul(f_full, scheme_.power(w)), phi);
        if (r0) target = FingerprintScheme::add(target, FingerprintScheme::mul(x_last, scheme_.power(w - 1)));

        const auto [a, b] = catalog_[pr.trie].equal_range(target);
        for (auto it = a; it != b; ++it) {
            const NodeId leaf = it->second;
            ++stats.candidates_verified;
            if (h != kNoNode) {
                const auto [lo, hi] = tr.leaf_range(h);
                const std::uint32_t rank = tr.terminal_rank(leaf);
                if (rank < lo || rank > hi) continue;
            }
            if (!rev_answer) rev_answer = rev_micro_.search(rev_trie_, {rev_trie_.root(), 0}, rp, 0, rp.length(), &stats);
            if (verify(t.first_string(leaf).sid, qlen, *rev_answer)) report_at(t, {leaf, t.length}, pr.mu, out);
        }
    }
}

std::size_t FingerprintIndex::memory_bytes() const {
    std::size_t b = sizeof(*this) + rev_trie_.memory_bytes() + rev_micro_.memory_bytes() +
                    rev_leaf_.capacity() * sizeof(NodeId);
    for (const auto& s : *rev_pool_) b += s.words().size() * sizeof(Word);
    for (const auto& c : catalog_) b += c.size() * (sizeof(std::uint64_t) + sizeof(NodeId) + 2 * sizeof(void*));
    for (const auto& p : phi_) b += p.capacity() * sizeof(std::uint64_t);
    return b;
}

}  // namespace kerr
