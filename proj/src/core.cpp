#include "kerrata/core.hpp"

#include <algorithm>
#include <array>

namespace kerr {

Alphabet::Alphabet(unsigned sigma) : sigma_(sigma) {
    if (sigma < 2 || sigma > 255) {
        throw Error(ErrorCode::InvalidArgument, "alphabet size must be in [2, 255], got " + std::to_string(sigma));
    }
    bits_ = static_cast<unsigned>(std::bit_width(sigma));
    per_word_ = kWordBits / bits_;
}

PackedString PackedString::pack(std::span<const std::uint8_t> letters, const Alphabet& alphabet) {
    PackedString s;
    s.alphabet_ = alphabet;
    s.length_ = letters.size();
    const unsigned per = alphabet.letters_per_word();
    s.words_.assign((letters.size() + per - 1) / per, 0);
    for (std::size_t i = 0; i < letters.size(); ++i) {
        const unsigned c = letters[i];
        if (c == 0 || c > alphabet.sigma()) {
            throw Error(ErrorCode::InvalidLetter,
                        "letter code " + std::to_string(c) + " at index " + std::to_string(i) + " not in [1, " +
                            std::to_string(alphabet.sigma()) + "]");
        }
        s.words_[i / per] |= Word{c} << alphabet.slot_shift(static_cast<unsigned>(i % per));
    }
    return s;
}

Word PackedString::window(std::size_t start, std::size_t len, unsigned* words_touched) const {
    const unsigned per = alphabet_.letters_per_word();
    const unsigned bits = alphabet_.bits_per_letter();
    if (len > per || start + len > length_) {
        throw Error(ErrorCode::OutOfBounds, "window [" + std::to_string(start) + ", +" + std::to_string(len) +
                                                ") outside string of length " + std::to_string(length_));
    }
    if (len == 0) return 0;
    const std::size_t wi = start / per;
    const unsigned slot = static_cast<unsigned>(start % per);
    Word w = words_[wi] << (slot * bits);
    unsigned touched = 1;
    if (slot + len > per) {
        w |= words_[wi + 1] >> ((per - slot) * bits);
        ++touched;
    }
    if (words_touched) *words_touched += touched;
    return w & (~Word{0} << (kWordBits - len * bits));
}

std::vector<std::uint8_t> PackedString::unpack() const {
    std::vector<std::uint8_t> out(length_);
    for (std::size_t i = 0; i < length_; ++i) out[i] = letter(i);
    return out;
}

std::optional<unsigned> first_mismatch_in_words(Word a, Word b, const Alphabet& alphabet) noexcept {
    const Word x = a ^ b;
    if (x == 0) return std::nullopt;
    return static_cast<unsigned>(std::countl_zero(x)) / alphabet.bits_per_letter();
}

std::size_t lcp(const PackedString& a, std::size_t a_from, const PackedString& b, std::size_t b_from,
                QueryStats* stats) {
    const std::size_t limit = std::min(a.length() - a_from, b.length() - b_from);
    const std::size_t per = a.alphabet().letters_per_word();
    std::size_t t = 0;
    while (t < limit) {
        const std::size_t len = std::min(per, limit - t);
        if (stats) ++stats->word_blocks_read;
        if (auto off = first_mismatch_in_words(a.window(a_from + t, len), b.window(b_from + t, len), a.alphabet())) {
            return t + *off;
        }
        t += len;
    }
    return limit;
}

namespace {

std::optional<std::size_t> count_mismatches(const PackedString& a, const PackedString& b, std::size_t from,
                                            std::size_t to, std::size_t cap, QueryStats* stats) {
    const Alphabet& alpha = a.alphabet();
    const std::size_t per = alpha.letters_per_word();
    const unsigned bits = alpha.bits_per_letter();
    std::size_t dist = 0;
    for (std::size_t t = from; t < to;) {
        const std::size_t len = std::min(per, to - t);
        if (stats) ++stats->word_blocks_read;
        Word x = a.window(t, len) ^ b.window(t, len);
        while (x != 0) {
            const unsigned slot = static_cast<unsigned>(std::countl_zero(x)) / bits;
            if (++dist > cap) return std::nullopt;
            x &= ~(alpha.letter_mask() << alpha.slot_shift(slot));
        }
        t += len;
    }
    return dist;
}

}  // namespace

std::optional<std::size_t> hamming(const PackedString& a, const PackedString& b, std::size_t cap,
                                   QueryStats* stats) {
    if (a.length() != b.length()) {
        throw Error(ErrorCode::LengthMismatch, "hamming: lengths " + std::to_string(a.length()) + " and " +
                                                   std::to_string(b.length()) + " differ");
    }
    return count_mismatches(a, b, 0, a.length(), cap, stats);
}

std::optional<std::size_t> hamming_range(const PackedString& a, const PackedString& b, std::size_t from,
                                         std::size_t to, std::size_t cap) {
    return count_mismatches(a, b, from, to, cap, nullptr);
}

PackedString reverse(const PackedString& s) {
    auto letters = s.unpack();
    std::reverse(letters.begin(), letters.end());
    return PackedString::pack(letters, s.alphabet());
}

Dictionary::Dictionary(std::vector<PackedString> strings, Alphabet alphabet, std::vector<std::uint8_t> letter_bytes)
    : strings_(std::move(strings)), alphabet_(alphabet), letter_bytes_(std::move(letter_bytes)) {
    if (strings_.empty()) throw Error(ErrorCode::EmptyInput, "dictionary is empty");
    m_ = strings_.front().length();
    if (m_ == 0) throw Error(ErrorCode::EmptyInput, "dictionary strings must be non-empty");
    for (std::size_t i = 0; i < strings_.size(); ++i) {
        if (strings_[i].length() != m_) {
            throw Error(ErrorCode::MixedLengths, "string " + std::to_string(i) + " has length " +
                                                     std::to_string(strings_[i].length()) + ", expected " +
                                                     std::to_string(m_));
        }
        if (!(strings_[i].alphabet() == alphabet_)) {
            throw Error(ErrorCode::InvalidArgument, "string " + std::to_string(i) + " uses a different alphabet");
        }
    }
    if (letter_bytes_.empty()) {
        for (unsigned c = 1; c <= alphabet_.sigma(); ++c) letter_bytes_.push_back(static_cast<std::uint8_t>(c - 1));
    }
}

Dictionary Dictionary::from_lines(const std::vector<std::string>& lines) {
    if (lines.empty()) throw Error(ErrorCode::EmptyInput, "dictionary is empty");
    std::array<bool, 256> seen{};
    for (const auto& line : lines) {
        for (unsigned char c : line) seen[c] = true;
    }
    std::vector<std::uint8_t> bytes;
    std::array<std::uint8_t, 256> code{};
    for (unsigned b = 0; b < 256; ++b) {
        if (seen[b]) {
            bytes.push_back(static_cast<std::uint8_t>(b));
            code[b] = static_cast<std::uint8_t>(bytes.size());
        }
    }
    // A one-letter input still gets a binary alphabet; the unused code maps to no byte.
    const Alphabet alphabet(std::max<unsigned>(2, static_cast<unsigned>(bytes.size())));
    std::vector<PackedString> strings;
    strings.reserve(lines.size());
    std::vector<std::uint8_t> letters;
    for (const auto& line : lines) {
        letters.clear();
        for (unsigned char c : line) letters.push_back(code[c]);
        strings.push_back(PackedString::pack(letters, alphabet));
    }
    return Dictionary(std::move(strings), alphabet, std::move(bytes));
}

Dictionary Dictionary::parse(std::string_view text) {
    std::vector<std::string> lines;
    std::size_t pos = 0;
    std::size_t line_no = 0;
    while (pos < text.size()) {
        ++line_no;
        std::size_t nl = text.find('\n', pos);
        const bool last = nl == std::string_view::npos;
        if (last) nl = text.size();
        std::string_view line = text.substr(pos, nl - pos);
        if (line.empty()) {
            throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": empty line");
        }
        if (!lines.empty() && line.size() != lines.front().size()) {
            throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": length " +
                                                   std::to_string(line.size()) + " differs from " +
                                                   std::to_string(lines.front().size()));
        }
        lines.emplace_back(line);
        pos = last ? text.size() : nl + 1;
    }
    if (lines.empty()) throw Error(ErrorCode::ParseError, "line 1: dictionary is empty");
    return from_lines(lines);
}

Dictionary Dictionary::from_letters(const std::vector<std::vector<std::uint8_t>>& strings, unsigned sigma) {
    const Alphabet alphabet(sigma);
    std::vector<PackedString> packed;
    packed.reserve(strings.size());
    for (const auto& s : strings) packed.push_back(PackedString::pack(s, alphabet));
    std::vector<std::uint8_t> bytes;
    for (unsigned c = 1; c <= sigma; ++c) bytes.push_back(static_cast<std::uint8_t>(c < 27 ? 'a' + c - 1 : c));
    return Dictionary(std::move(packed), alphabet, std::move(bytes));
}

PackedString Dictionary::encode(std::string_view text) const {
    if (text.size() != m_) {
        throw Error(ErrorCode::LengthMismatch,
                    "query length " + std::to_string(text.size()) + " differs from " + std::to_string(m_));
    }
    std::vector<std::uint8_t> letters(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        const auto b = static_cast<std::uint8_t>(text[i]);
        auto it = std::find(letter_bytes_.begin(), letter_bytes_.end(), b);
        if (it == letter_bytes_.end()) {
            throw Error(ErrorCode::InvalidLetter, "query byte at index " + std::to_string(i) + " is not in the alphabet");
        }
        letters[i] = static_cast<std::uint8_t>(it - letter_bytes_.begin() + 1);
    }
    return PackedString::pack(letters, alphabet_);
}

std::string Dictionary::decode(const PackedString& s) const {
    std::string out(s.length(), '\0');
    for (std::size_t i = 0; i < s.length(); ++i) {
        const unsigned c = s.letter(i);
        out[i] = static_cast<char>(c <= letter_bytes_.size() ? letter_bytes_[c - 1] : '?');
    }
    return out;
}

std::vector<std::vector<std::uint8_t>> Dictionary::unpacked() const {
    std::vector<std::vector<std::uint8_t>> out;
    out.reserve(strings_.size());
    for (const auto& s : strings_) out.push_back(s.unpack());
    return out;
}

}  // namespace kerr
