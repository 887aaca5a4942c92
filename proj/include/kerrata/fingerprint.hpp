#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <unordered_map>
#include <vector>

#include "kerrata/errata.hpp"

namespace kerr {

/// Polynomial residues of word sequences modulo p = 2^61 - 1.
class FingerprintScheme {
public:
    static constexpr std::uint64_t kPrime = (std::uint64_t{1} << 61) - 1;

    FingerprintScheme() = default;
    FingerprintScheme(std::uint64_t r, std::size_t max_words);

    std::uint64_t base() const noexcept { return r_; }
    std::uint64_t power(std::size_t e) const { return pow_[e]; }

    static std::uint64_t reduce(std::uint64_t x) noexcept;
    static std::uint64_t add(std::uint64_t a, std::uint64_t b) noexcept { return reduce(a + b); }
    /// a * b mod p from 31-bit halves; a, b < p.
    static std::uint64_t mul(std::uint64_t a, std::uint64_t b) noexcept;

    /// sum of w_i * r^(z-i) over the words.
    std::uint64_t fingerprint(std::span<const Word> words) const;
    /// Residue of X . Y given the residue of X and of Y (|Y| = y_words words).
    std::uint64_t concat(std::uint64_t fx, std::uint64_t fy, std::size_t y_words) const {
        return add(mul(fx, pow_[y_words]), fy);
    }
    /// Residues of s[0, q * letters_per_word) for every q.
    std::vector<std::uint64_t> prefix_fingerprints(const PackedString& s) const;
    /// Residue of s[0, n), the last word padded with zeros.
    std::uint64_t prefix(const PackedString& s, const std::vector<std::uint64_t>& full, std::size_t n) const;

private:
    std::uint64_t r_ = 0;
    std::vector<std::uint64_t> pow_;
};

/// Residues of reverse(p[i..m)) for every set bit i of `positions`
/// (bit i of word i / 64), in increasing i.
std::vector<std::pair<std::size_t, std::uint64_t>> batch_suffix_fps(const FingerprintScheme& scheme,
                                                                    const PackedString& p,
                                                                    std::span<const std::uint64_t> positions);

struct FingerprintOptions {
    std::uint64_t seed = 1;
    /// Bases tried before any random draw.
    std::vector<std::uint64_t> bases;
    /// Keep the first base even if leaf residues collide inside a trie.
    bool accept_collisions = false;
};

/// Leaf residue catalogs for every errata trie plus the trie over reversed
/// dictionary strings used to confirm hits.
class FingerprintIndex final : public ProbeResolver {
public:
    FingerprintIndex() = default;
    static FingerprintIndex build(const ErrataTree& tree, const Dictionary& dict, const FingerprintOptions& opt = {});

    const FingerprintScheme& scheme() const noexcept { return scheme_; }
    std::uint32_t draws() const noexcept { return draws_; }
    const CompactTrie& reverse_trie() const noexcept { return rev_trie_; }
    NodeId reverse_leaf(std::uint32_t sid) const { return rev_leaf_[sid]; }
    /// Residue of zeros((delta - depth) mod letters_per_word) . reverse(label(x)).
    std::uint64_t node_residue(std::uint32_t trie, NodeId x) const { return phi_[trie][x]; }
    /// Leaves of `trie` whose reversed label has residue fp.
    std::vector<NodeId> leaves_with(std::uint32_t trie, std::uint64_t fp) const;

    /// True iff the last n letters of dict[sid] equal those of the query,
    /// given the query's reverse-trie answer.
    bool verify(std::uint32_t sid, std::size_t n, Position rev_answer) const;

    void resolve(const ErrataTree& tree, const Dictionary& dict, const PackedString& p,
                 const std::vector<Probe>& probes, std::vector<std::uint32_t>& out,
                 QueryStats& stats) const override;

    std::size_t memory_bytes() const;

private:
    bool fill_catalogs(const ErrataTree& tree, const Dictionary& dict, bool allow_collisions);

    FingerprintScheme scheme_;
    std::uint32_t draws_ = 0;
    unsigned lpw_ = 1;
    std::shared_ptr<const std::vector<PackedString>> rev_pool_;  // stable address for rev_trie_
    CompactTrie rev_trie_;
    MicroTreeIndex rev_micro_;
    std::vector<NodeId> rev_leaf_;
    std::vector<std::unordered_multimap<std::uint64_t, NodeId>> catalog_;
    std::vector<std::vector<std::uint64_t>> phi_;
};

}  // namespace kerr
