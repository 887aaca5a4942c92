#include "kerrata/harness.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <thread>

namespace kerr {

namespace {

using oracle::Letters;

std::string render(const Letters& s, unsigned sigma) {
    static constexpr char kDigits[] = "0123456789abcdefghijklmnopqrstuvwxyz";
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (sigma <= 36) {
            out += kDigits[s[i] - 1];
        } else {
            if (i) out += ',';
            out += std::to_string(s[i]);
        }
    }
    return out;
}

std::string render_ids(const std::vector<std::uint32_t>& ids) {
    std::string out = "[";
    for (std::size_t i = 0; i < ids.size(); ++i) out += (i ? " " : "") + std::to_string(ids[i]);
    return out + "]";
}

Letters random_string(std::mt19937_64& rng, std::size_t m, unsigned sigma) {
    Letters s(m);
    for (auto& c : s) c = static_cast<std::uint8_t>(1 + rng() % sigma);
    return s;
}

Letters make_query(std::mt19937_64& rng, const std::vector<Letters>& dict, unsigned sigma, unsigned k,
                   bool planted) {
    const std::size_t m = dict[0].size();
    if (!planted) return random_string(rng, m, sigma);
    Letters q = dict[rng() % dict.size()];
    for (std::size_t j = rng() % (k + 3); j > 0; --j) q[rng() % m] = static_cast<std::uint8_t>(1 + rng() % sigma);
    return q;
}

struct Built {
    Index fresh;
    Index reloaded;
};

Built build_both(const std::vector<Letters>& dict, unsigned sigma, const IndexOptions& opt) {
    Index a = Index::build(Dictionary::from_letters(dict, sigma), opt);
    std::stringstream buf;
    a.save(buf);
    Index b = Index::load(buf);
    return {std::move(a), std::move(b)};
}

// Both copies must give the oracle's ids within budget and identical stats.
// Fills *got on mismatch.
bool query_ok(const Built& x, const std::vector<Letters>& dict, const Letters& q, std::vector<std::uint32_t>* got) {
    const unsigned k = x.fresh.options().k;
    const PackedString p = PackedString::pack(q, x.fresh.dict().alphabet());
    const auto ra = x.fresh.query(p), rb = x.reloaded.query(p);
    const auto want = oracle::brute_lookup(dict, q, k).ids;
    const bool ok = ra.ids == want && rb.ids == ra.ids && rb.stats == ra.stats &&
                    ra.stats.prefix_search_ops <= prefix_search_budget(dict.size(), k);
    if (!ok && got) *got = ra.ids != want ? ra.ids : rb.ids;
    return ok;
}

bool case_ok(const std::vector<Letters>& dict, const Letters& q, unsigned sigma, const IndexOptions& opt,
             std::vector<std::uint32_t>* got) {
    return query_ok(build_both(dict, sigma, opt), dict, q, got);
}

}  // namespace

std::string describe(const Counterexample& c) {
    std::ostringstream out;
    out << "mode " << c.mode << " sigma " << c.sigma << " k " << c.k << "\n";
    out << "dict:\n";
    for (const auto& s : c.dict) out << "  " << render(s, c.sigma) << "\n";
    out << "query: " << render(c.query, c.sigma) << "\n";
    out << "expected: " << render_ids(c.expected) << "\n";
    out << "got: " << render_ids(c.got) << "\n";
    return out.str();
}

VerifyReport verify_index(const Index& index, std::uint64_t trials, std::uint64_t seed, unsigned threads) {
    const Dictionary& dict = index.dict();
    const auto raw = dict.unpacked();
    const unsigned sigma = dict.alphabet().sigma();
    const unsigned k = index.options().k;
    std::mt19937_64 rng(seed);
    std::vector<Letters> queries(trials);
    for (std::uint64_t t = 0; t < trials; ++t) queries[t] = make_query(rng, raw, sigma, k, t % 2 == 0);

    struct Slot {
        std::vector<std::uint32_t> want, got;
        std::uint64_t ops = 0;
        bool ok = true;
    };
    std::vector<Slot> slots(trials);
    const std::uint64_t budget = prefix_search_budget(dict.size(), k);
    auto work = [&](std::uint64_t from, std::uint64_t to) {
        for (std::uint64_t t = from; t < to; ++t) {
            Slot& s = slots[t];
            const auto res = index.query(PackedString::pack(queries[t], dict.alphabet()));
            s.want = oracle::brute_lookup(raw, queries[t], k).ids;
            s.got = res.ids;
            s.ops = res.stats.prefix_search_ops;
            s.ok = s.got == s.want && s.ops <= budget;
        }
    };
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::uint64_t>(trials, 1))));
    std::vector<std::thread> pool;
    const std::uint64_t chunk = (trials + threads - 1) / threads;
    for (unsigned i = 0; i < threads; ++i) {
        const std::uint64_t from = std::min(trials, i * chunk), to = std::min(trials, from + chunk);
        pool.emplace_back(work, from, to);
    }
    for (auto& th : pool) th.join();

    VerifyReport rep;
    rep.trials = trials;
    for (std::uint64_t t = 0; t < trials; ++t) {
        rep.max_prefix_search_ops = std::max(rep.max_prefix_search_ops, slots[t].ops);
        if (slots[t].ok) continue;
        ++rep.failures;
        if (!rep.first) {
            Counterexample c;
            c.dict = raw;
            c.query = queries[t];
            c.sigma = sigma;
            c.k = k;
            c.mode = index.options().mode == SuffixMode::Sampled ? "sampled" : "full";
            if (index.fingerprints()) c.mode += "+fp";
            c.expected = slots[t].want;
            c.got = slots[t].got;
            rep.first = std::move(c);
        }
    }
    return rep;
}

std::vector<std::pair<std::string, IndexOptions>> all_modes(unsigned k, std::uint64_t seed, int fault) {
    std::vector<std::pair<std::string, IndexOptions>> out;
    for (int fp = 0; fp < 2; ++fp) {
        for (SuffixMode mode : {SuffixMode::Full, SuffixMode::Sampled}) {
            IndexOptions o;
            o.k = k;
            o.mode = mode;
            o.fingerprints = fp;
            o.seed = seed;
            o.force_errata = true;
            o.fault = fault;
            out.emplace_back(std::string(mode == SuffixMode::Full ? "full" : "sampled") + (fp ? "+fp" : ""), o);
        }
    }
    return out;
}

Counterexample shrink(Counterexample c, int fault) {
    IndexOptions opt;
    for (const auto& [name, o] : all_modes(c.k, 1, fault)) {
        if (name == c.mode) opt = o;
    }
    auto fails = [&](const std::vector<Letters>& d, const Letters& q) {
        return !case_ok(d, q, c.sigma, opt, nullptr);
    };
    for (bool progress = true; progress;) {
        progress = false;
        for (std::size_t i = 0; i < c.dict.size() && c.dict.size() > 1; ++i) {
            auto d = c.dict;
            d.erase(d.begin() + static_cast<std::ptrdiff_t>(i));
            if (fails(d, c.query)) {
                c.dict = std::move(d);
                progress = true;
                --i;
            }
        }
    }
    for (bool progress = true; progress;) {
        progress = false;
        for (std::size_t j = 0; j < c.query.size() && c.query.size() > 1; ++j) {
            auto d = c.dict;
            for (auto& s : d) s.erase(s.begin() + static_cast<std::ptrdiff_t>(j));
            auto q = c.query;
            q.erase(q.begin() + static_cast<std::ptrdiff_t>(j));
            if (fails(d, q)) {
                c.dict = std::move(d);
                c.query = std::move(q);
                progress = true;
                --j;
            }
        }
    }
    c.expected = oracle::brute_lookup(c.dict, c.query, c.k).ids;
    case_ok(c.dict, c.query, c.sigma, opt, &c.got);
    return c;
}

FuzzReport fuzz(const FuzzOptions& opt) {
    FuzzReport rep;
    std::mt19937_64 rng(opt.seed);
    for (std::uint64_t round = 0; round < opt.rounds; ++round) {
        const unsigned sigma = rng() % 2 ? 4 : 2;
        const std::size_t d = 1 + rng() % std::max<std::size_t>(opt.max_d, 1);
        const std::size_t m = 1 + rng() % std::max<std::size_t>(opt.max_m, 1);
        const unsigned k = static_cast<unsigned>(rng() % (opt.max_k + 1));
        std::vector<Letters> dict(d);
        for (std::size_t i = 0; i < d; ++i) {
            dict[i] = random_string(rng, m, sigma);
            if (i > 0 && rng() % 2) {
                dict[i] = dict[rng() % i];
                for (std::size_t j = rng() % 3; j > 0; --j) dict[i][rng() % m] = static_cast<std::uint8_t>(1 + rng() % sigma);
            }
        }
        std::vector<Letters> queries(opt.queries_per_round);
        for (std::uint32_t i = 0; i < opt.queries_per_round; ++i) queries[i] = make_query(rng, dict, sigma, k, i % 4 != 3);
        const std::uint64_t seed = rng();
        ++rep.rounds;
        for (const auto& [name, o] : all_modes(k, seed, opt.fault)) {
            const Built built = build_both(dict, sigma, o);
            for (const auto& q : queries) {
                ++rep.queries;
                if (query_ok(built, dict, q, nullptr)) continue;
                Counterexample c;
                c.dict = dict;
                c.query = q;
                c.sigma = sigma;
                c.k = k;
                c.mode = name;
                rep.failure = shrink(std::move(c), opt.fault);
                return rep;
            }
        }
    }
    return rep;
}

}  // namespace kerr
