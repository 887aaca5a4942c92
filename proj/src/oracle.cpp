#include "kerrata/oracle.hpp"

#include <algorithm>
#include <set>

#include <boost/multiprecision/cpp_int.hpp>

#include "kerrata/core.hpp"

namespace kerr::oracle {

namespace {

void check_lengths(const std::vector<Letters>& dict, std::span<const std::uint8_t> p) {
    for (const auto& s : dict) {
        if (s.size() != p.size()) {
            throw Error(ErrorCode::LengthMismatch, "query length " + std::to_string(p.size()) +
                                                       " differs from dictionary length " + std::to_string(s.size()));
        }
    }
}

using Big = boost::multiprecision::cpp_int;

Big binomial(unsigned n, unsigned r) {
    Big out = 1;
    for (unsigned i = 1; i <= r; ++i) {
        out *= n - r + i;
        out /= i;
    }
    return out;
}

unsigned log2_dprime(std::uint64_t d) {
    unsigned lg = 0;
    while ((std::uint64_t{1} << lg) < d) ++lg;
    return lg;
}

}  // namespace

std::size_t brute_hamming(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) {
    std::size_t dist = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] != b[i]) ++dist;
    }
    return dist;
}

OracleResult brute_lookup(const std::vector<Letters>& dict, std::span<const std::uint8_t> p, std::size_t k) {
    check_lengths(dict, p);
    OracleResult out;
    for (std::size_t id = 0; id < dict.size(); ++id) {
        const std::size_t dist = brute_hamming(dict[id], p);
        if (dist <= k) {
            out.ids.push_back(static_cast<std::uint32_t>(id));
            out.distances.push_back(dist);
        }
    }
    return out;
}

std::vector<std::uint32_t> brute_lookup_by_agreement(const std::vector<Letters>& dict,
                                                     std::span<const std::uint8_t> p, std::size_t k) {
    check_lengths(dict, p);
    std::vector<std::uint32_t> ids;
    for (std::size_t id = dict.size(); id-- > 0;) {
        std::size_t agree = 0;
        for (std::size_t i = p.size(); i-- > 0;) agree += dict[id][i] == p[i] ? 1 : 0;
        if (agree + k >= p.size()) ids.push_back(static_cast<std::uint32_t>(id));
    }
    std::reverse(ids.begin(), ids.end());
    return ids;
}

std::size_t brute_prefix_search(const std::vector<Letters>& strings, std::span<const std::uint8_t> label,
                                std::span<const std::uint8_t> q) {
    std::size_t best = 0;
    bool any = false;
    for (const auto& s : strings) {
        if (s.size() < label.size() || !std::equal(label.begin(), label.end(), s.begin())) continue;
        any = true;
        std::size_t l = 0;
        while (l < q.size() && label.size() + l < s.size() && s[label.size() + l] == q[l]) ++l;
        best = std::max(best, l);
    }
    return any ? best : 0;
}

std::uint32_t brute_lca(const std::vector<std::uint32_t>& parent, std::uint32_t u, std::uint32_t v) {
    auto is_root = [&](std::uint32_t x) { return parent[x] == x || parent[x] == ~0u; };
    std::set<std::uint32_t> ancestors;
    for (std::uint32_t x = u;; x = parent[x]) {
        ancestors.insert(x);
        if (is_root(x)) break;
    }
    for (std::uint32_t x = v;; x = parent[x]) {
        if (ancestors.count(x)) return x;
        if (is_root(x)) break;
    }
    return ~0u;
}

std::uint32_t brute_wla(const std::vector<std::uint32_t>& parent, const std::vector<std::uint32_t>& depth,
                        std::uint32_t u, std::uint32_t len) {
    std::uint32_t x = u;
    while (depth[x] > len) x = parent[x];
    return x;
}

namespace {

std::uint32_t brute_wbt_range(const std::vector<std::uint64_t>& w, std::uint32_t lo, std::uint32_t hi,
                              std::vector<BruteWbtNode>& out) {
    if (lo >= hi) return ~0u;
    const auto id = static_cast<std::uint32_t>(out.size());
    out.push_back({lo, hi, ~0u, ~0u, ~0u});
    if (hi - lo == 1) return id;
    std::uint64_t total = 0;
    for (std::uint32_t i = lo; i < hi; ++i) total += w[i];
    std::uint64_t run = 0;
    std::uint32_t mu = lo;
    for (std::uint32_t i = lo; i < hi; ++i) {
        run += w[i];
        // run > total / 2 over the rationals
        if (run * 2 > total) {
            mu = i;
            break;
        }
    }
    const std::uint32_t left = brute_wbt_range(w, lo, mu, out);
    const std::uint32_t mid = brute_wbt_range(w, mu, mu + 1, out);
    const std::uint32_t right = brute_wbt_range(w, mu + 1, hi, out);
    out[id].left = left;
    out[id].mid = mid;
    out[id].right = right;
    return id;
}

}  // namespace

std::vector<BruteWbtNode> brute_wbt(const std::vector<std::uint64_t>& weights) {
    std::vector<BruteWbtNode> out;
    brute_wbt_range(weights, 0, static_cast<std::uint32_t>(weights.size()), out);
    return out;
}

std::string brute_size_bound(std::uint64_t d, unsigned k) {
    const unsigned lg = log2_dprime(d);
    const Big dp = Big(1) << lg;
    Big four_k = 1;
    for (unsigned i = 0; i < k; ++i) four_k *= 4;
    const Big value = 2 * four_k * dp * binomial(lg + k, lg) - dp;
    return value.str();
}

std::string brute_query_bound(std::uint64_t d, unsigned k) {
    const unsigned lg = log2_dprime(d);
    Big nine_k = 1;
    for (unsigned i = 0; i < k; ++i) nine_k *= 9;
    const Big value = 2 * nine_k * binomial(lg + k, lg) - 1;
    return value.str();
}

}  // namespace kerr::oracle
