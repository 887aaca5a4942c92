#pragma once

#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "kerrata/errata.hpp"
#include "kerrata/fingerprint.hpp"

namespace kerr {

struct IndexOptions {
    unsigned k = 1;
    SuffixMode mode = SuffixMode::Full;
    bool fingerprints = false;
    std::uint64_t seed = 1;
    /// Sampled-mode interval override; 0 uses sampling_interval.
    std::uint32_t interval = 0;
    /// Run the errata tree even for tiny dictionaries.
    bool force_errata = false;
    std::size_t memcap_mb = 0;
    int fault = 0;
};

/// A dictionary and everything built over it. Owns the dictionary on the
/// heap because the tries keep pointers into its string pool, so an Index can
/// be moved but not copied.
class Index {
public:
    static constexpr std::uint32_t kFormatVersion = 1;

    static Index build(Dictionary dict, const IndexOptions& opt);

    Index(Index&&) noexcept = default;
    Index& operator=(Index&&) noexcept = default;
    Index(const Index&) = delete;
    Index& operator=(const Index&) = delete;

    LookupResult query(const PackedString& p) const;
    /// Query text in the dictionary's byte alphabet.
    LookupResult query(std::string_view text) const;

    const Dictionary& dict() const noexcept { return *dict_; }
    const IndexOptions& options() const noexcept { return opt_; }
    const ErrataTree& tree() const noexcept { return tree_; }
    const SuffixIndex& suffix() const noexcept { return suffix_; }
    const FingerprintIndex* fingerprints() const noexcept { return fp_ ? &*fp_ : nullptr; }

    std::uint64_t total_strings() const noexcept { return tree_.total_strings(); }
    std::size_t memory_bytes() const;

    /// Little-endian: magic, header, letter bytes, dictionary words. The
    /// structures are rebuilt on load from the persisted parameters.
    void save(std::ostream& out) const;
    static Index load(std::istream& in);
    void save_file(const std::string& path) const;
    static Index load_file(const std::string& path);

private:
    Index() = default;

    std::unique_ptr<Dictionary> dict_;
    IndexOptions opt_;
    SuffixIndex suffix_;
    ErrataTree tree_;
    std::optional<FingerprintIndex> fp_;
};

}  // namespace kerr
