#include "kerrata/index.hpp"

#include <array>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

namespace kerr {

namespace {

constexpr std::array<char, 6> kMagic = {'K', 'E', 'R', 'R', '1', '\0'};

enum Flags : std::uint32_t { kSampled = 1, kFingerprints = 2, kForceErrata = 4 };

template <class T>
void put(std::ostream& out, T v) {
    static_assert(std::is_unsigned_v<T>);
    char b[sizeof(T)];
    for (std::size_t i = 0; i < sizeof(T); ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
    out.write(b, sizeof(T));
}

template <class T>
T get(std::istream& in) {
    unsigned char b[sizeof(T)];
    if (!in.read(reinterpret_cast<char*>(b), sizeof(T))) throw Error(ErrorCode::FormatError, "index file truncated");
    T v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) v |= static_cast<T>(b[i]) << (8 * i);
    return v;
}

}  // namespace

Index Index::build(Dictionary dict, const IndexOptions& opt) {
    if (dict.size() == 0) throw Error(ErrorCode::EmptyInput, "empty dictionary");
    Index x;
    x.dict_ = std::make_unique<Dictionary>(std::move(dict));
    x.opt_ = opt;
    const Dictionary& d = *x.dict_;
    x.suffix_ = SuffixIndex::build(d.strings(), d.length(), opt.mode, opt.interval);
    x.opt_.interval = opt.mode == SuffixMode::Sampled ? x.suffix_.interval() : 0;
    BuildOptions bo;
    bo.sample_interval = x.opt_.interval;
    bo.memcap_mb = opt.memcap_mb;
    bo.fault = opt.fault;
    x.tree_ = ErrataTree::build(d, opt.k, bo);
    if (opt.fingerprints) {
        FingerprintOptions fo;
        fo.seed = opt.seed;
        x.fp_ = FingerprintIndex::build(x.tree_, d, fo);
    }
    return x;
}

LookupResult Index::query(const PackedString& p) const {
    LookupOptions lo;
    lo.suffix = &suffix_;
    lo.probes = fp_ ? &*fp_ : nullptr;
    lo.force_errata = opt_.force_errata;
    return lookup(tree_, *dict_, p, lo);
}

LookupResult Index::query(std::string_view text) const { return query(dict_->encode(text)); }

std::size_t Index::memory_bytes() const {
    std::size_t b = sizeof(*this) + suffix_.memory_bytes() + tree_.memory_bytes();
    for (const auto& s : dict_->strings()) b += s.words().size() * sizeof(Word);
    if (fp_) b += fp_->memory_bytes();
    return b;
}

void Index::save(std::ostream& out) const {
    const Dictionary& d = *dict_;
    out.write(kMagic.data(), kMagic.size());
    put<std::uint32_t>(out, kFormatVersion);
    put<std::uint32_t>(out, d.alphabet().sigma());
    put<std::uint64_t>(out, d.length());
    put<std::uint64_t>(out, d.size());
    put<std::uint32_t>(out, opt_.k);
    std::uint32_t flags = 0;
    if (opt_.mode == SuffixMode::Sampled) flags |= kSampled;
    if (fp_) flags |= kFingerprints;
    if (opt_.force_errata) flags |= kForceErrata;
    put<std::uint32_t>(out, flags);
    put<std::uint32_t>(out, opt_.interval);
    put<std::uint64_t>(out, FingerprintScheme::kPrime);
    put<std::uint64_t>(out, fp_ ? fp_->scheme().base() : 0);
    put<std::uint64_t>(out, opt_.seed);
    put<std::uint32_t>(out, static_cast<std::uint32_t>(opt_.fault));
    put<std::uint32_t>(out, static_cast<std::uint32_t>(d.letter_bytes().size()));
    for (std::uint8_t c : d.letter_bytes()) put<std::uint8_t>(out, c);
    for (const auto& s : d.strings()) {
        for (Word w : s.words()) put<std::uint64_t>(out, w);
    }
    if (!out) throw Error(ErrorCode::IoError, "index write failed");
}

Index Index::load(std::istream& in) {
    std::array<char, 6> magic{};
    if (!in.read(magic.data(), magic.size()) || magic != kMagic) throw Error(ErrorCode::FormatError, "not an index file");
    const auto version = get<std::uint32_t>(in);
    if (version != kFormatVersion)
        throw Error(ErrorCode::FormatError, "index format version " + std::to_string(version) + " not supported");
    const auto sigma = get<std::uint32_t>(in);
    const auto m = get<std::uint64_t>(in);
    const auto dsize = get<std::uint64_t>(in);
    IndexOptions opt;
    opt.k = get<std::uint32_t>(in);
    const auto flags = get<std::uint32_t>(in);
    opt.interval = get<std::uint32_t>(in);
    const auto prime = get<std::uint64_t>(in);
    const auto r = get<std::uint64_t>(in);
    opt.seed = get<std::uint64_t>(in);
    opt.fault = static_cast<int>(get<std::uint32_t>(in));
    if (sigma < 2 || sigma > 255 || dsize == 0 || m == 0 || dsize * m >= (std::uint64_t{1} << 32) ||
        prime != FingerprintScheme::kPrime || (flags & ~std::uint32_t{7}) != 0 || opt.k > 64)
        throw Error(ErrorCode::FormatError, "corrupt index header");
    opt.mode = flags & kSampled ? SuffixMode::Sampled : SuffixMode::Full;
    opt.fingerprints = flags & kFingerprints;
    opt.force_errata = flags & kForceErrata;

    const auto nbytes = get<std::uint32_t>(in);
    if (nbytes != 0 && nbytes != sigma) throw Error(ErrorCode::FormatError, "corrupt letter table");
    std::vector<std::uint8_t> bytes(nbytes);
    for (auto& c : bytes) c = get<std::uint8_t>(in);

    const Alphabet al(sigma);
    const std::size_t per = al.letters_per_word();
    const std::size_t nw = (m + per - 1) / per;
    std::vector<PackedString> strings;
    strings.reserve(dsize);
    std::vector<Word> words(nw);
    std::vector<std::uint8_t> letters(m);
    for (std::uint64_t i = 0; i < dsize; ++i) {
        for (auto& w : words) w = get<std::uint64_t>(in);
        for (std::size_t j = 0; j < m; ++j) {
            letters[j] = static_cast<std::uint8_t>((words[j / per] >> al.slot_shift(j % per)) & al.letter_mask());
            if (letters[j] == 0 || letters[j] > sigma) throw Error(ErrorCode::FormatError, "corrupt dictionary word");
        }
        PackedString s = PackedString::pack(letters, al);
        if (!std::equal(words.begin(), words.end(), s.words().begin()))
            throw Error(ErrorCode::FormatError, "corrupt dictionary padding");
        strings.push_back(std::move(s));
    }

    Index x;
    x.dict_ = std::make_unique<Dictionary>(std::move(strings), al, std::move(bytes));
    x.opt_ = opt;
    const Dictionary& d = *x.dict_;
    x.suffix_ = SuffixIndex::build(d.strings(), d.length(), opt.mode, opt.interval);
    BuildOptions bo;
    bo.sample_interval = opt.mode == SuffixMode::Sampled ? x.suffix_.interval() : 0;
    bo.fault = opt.fault;
    x.tree_ = ErrataTree::build(d, opt.k, bo);
    if (opt.fingerprints) {
        FingerprintOptions fo;
        fo.bases = {r};
        fo.accept_collisions = true;  // r was collision-free when saved
        x.fp_ = FingerprintIndex::build(x.tree_, d, fo);
    }
    return x;
}

void Index::save_file(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::IoError, "cannot open " + path + " for writing");
    save(out);
}

Index Index::load_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
    return load(in);
}

}  // namespace kerr
