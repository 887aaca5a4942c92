#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace kerr {

using Word = std::uint64_t;
inline constexpr unsigned kWordBits = 64;

enum class ErrorCode : int {
    InvalidLetter = 1,
    OutOfBounds,
    LengthMismatch,
    MixedLengths,
    EmptyInput,
    InvalidWeight,
    ParseError,
    SchemeSelectionFailed,
    ResourceCap,
    FormatError,
    IoError,
    InvalidArgument,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// Letters are the integers 1..sigma; 0 marks padding. Each letter takes
/// bit_width(sigma) bits and word slot j sits at the top of the word, so
/// comparing two windows as integers is a lexicographic comparison.
class Alphabet {
public:
    Alphabet() : Alphabet(2) {}
    explicit Alphabet(unsigned sigma);

    unsigned sigma() const noexcept { return sigma_; }
    unsigned bits_per_letter() const noexcept { return bits_; }
    unsigned letters_per_word() const noexcept { return per_word_; }
    Word letter_mask() const noexcept { return (Word{1} << bits_) - 1; }
    unsigned slot_shift(unsigned slot) const noexcept { return kWordBits - (slot + 1) * bits_; }

    friend bool operator==(const Alphabet&, const Alphabet&) = default;

private:
    unsigned sigma_;
    unsigned bits_;
    unsigned per_word_;
};

class PackedString {
public:
    PackedString() = default;

    static PackedString pack(std::span<const std::uint8_t> letters, const Alphabet& alphabet);

    std::size_t length() const noexcept { return length_; }
    bool empty() const noexcept { return length_ == 0; }
    std::span<const Word> words() const noexcept { return words_; }
    const Alphabet& alphabet() const noexcept { return alphabet_; }

    std::uint8_t letter(std::size_t i) const noexcept {
        const unsigned per = alphabet_.letters_per_word();
        return static_cast<std::uint8_t>((words_[i / per] >> alphabet_.slot_shift(i % per)) &
                                         alphabet_.letter_mask());
    }

    /// Letters [start, start+len) packed into the top slots of one word,
    /// len <= letters_per_word. Reads at most two stored words; the count is
    /// added to *words_touched when given.
    Word window(std::size_t start, std::size_t len, unsigned* words_touched = nullptr) const;

    std::vector<std::uint8_t> unpack() const;

    friend bool operator==(const PackedString& a, const PackedString& b) {
        return a.length_ == b.length_ && a.words_ == b.words_;
    }

private:
    std::size_t length_ = 0;
    std::vector<Word> words_;
    Alphabet alphabet_;
};

/// Per-query instrumentation.
struct QueryStats {
    std::uint64_t prefix_search_ops = 0;
    std::uint64_t word_blocks_read = 0;
    std::uint64_t wla_queries = 0;
    std::uint64_t candidates_verified = 0;
    std::uint64_t reported = 0;
    std::uint64_t suffix_queries = 0;
    std::uint64_t fingerprint_probes = 0;
    std::uint64_t duplicates_suppressed = 0;

    friend bool operator==(const QueryStats&, const QueryStats&) = default;
};

std::optional<unsigned> first_mismatch_in_words(Word a, Word b, const Alphabet& alphabet) noexcept;

/// Longest common prefix of a[a_from..] and b[b_from..].
std::size_t lcp(const PackedString& a, std::size_t a_from, const PackedString& b, std::size_t b_from,
                QueryStats* stats = nullptr);

/// Exact distance when it is <= cap, nullopt otherwise.
std::optional<std::size_t> hamming(const PackedString& a, const PackedString& b, std::size_t cap,
                                   QueryStats* stats = nullptr);

/// Mismatches between a and b restricted to letters [from, to), capped like hamming().
std::optional<std::size_t> hamming_range(const PackedString& a, const PackedString& b, std::size_t from,
                                         std::size_t to, std::size_t cap);

PackedString reverse(const PackedString& s);

/// Equal-length strings over one alphabet, with the byte <-> letter mapping
/// used by the text format.
class Dictionary {
public:
    Dictionary() = default;
    Dictionary(std::vector<PackedString> strings, Alphabet alphabet, std::vector<std::uint8_t> letter_bytes = {});

    /// One string per line; letters are the distinct bytes in byte order.
    static Dictionary from_lines(const std::vector<std::string>& lines);
    /// Parses the text format (final newline optional, interior empty lines rejected).
    static Dictionary parse(std::string_view text);
    static Dictionary from_letters(const std::vector<std::vector<std::uint8_t>>& strings, unsigned sigma);

    std::size_t size() const noexcept { return strings_.size(); }
    std::size_t length() const noexcept { return m_; }
    const Alphabet& alphabet() const noexcept { return alphabet_; }
    const PackedString& operator[](std::size_t i) const { return strings_[i]; }
    const std::vector<PackedString>& strings() const noexcept { return strings_; }
    std::span<const std::uint8_t> letter_bytes() const noexcept { return letter_bytes_; }

    /// Query text -> packed query, rejecting bytes outside the alphabet.
    PackedString encode(std::string_view text) const;
    std::string decode(const PackedString& s) const;
    std::vector<std::vector<std::uint8_t>> unpacked() const;

private:
    std::vector<PackedString> strings_;
    Alphabet alphabet_;
    std::size_t m_ = 0;
    std::vector<std::uint8_t> letter_bytes_;
};

}  // namespace kerr
