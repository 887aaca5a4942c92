#include <bit>
#include <limits>

#include "kerrata/errata.hpp"

namespace kerr {

namespace {

using u128 = unsigned __int128;
constexpr u128 kSat = std::numeric_limits<std::uint64_t>::max();

u128 sat_mul(u128 a, u128 b) {
    if (a == 0 || b == 0) return 0;
    if (a > kSat / b) return kSat;
    return a * b;
}

u128 sat_pow(u128 base, unsigned e) {
    u128 r = 1;
    while (e-- > 0) r = sat_mul(r, base);
    return r;
}

// C(lg + k, k), saturating.
u128 binom(unsigned lg, unsigned k) {
    u128 c = 1;
    for (unsigned i = 1; i <= k; ++i) {
        // c * (lg + i) / i stays exact: c * (lg + i) is divisible by i
        if (c > kSat) return kSat;
        const u128 num = c * (lg + i);
        c = num / i;
    }
    return c > kSat ? kSat : c;
}

std::uint64_t clamp(u128 x) { return x > kSat ? std::numeric_limits<std::uint64_t>::max() : static_cast<std::uint64_t>(x); }

}  // namespace

std::uint64_t padded_size(std::uint64_t d) { return std::bit_ceil(std::max<std::uint64_t>(d, 1)); }

std::uint64_t size_budget(std::uint64_t d, unsigned k) {
    const std::uint64_t dp = padded_size(d);
    const unsigned lg = static_cast<unsigned>(std::countr_zero(dp));
    const u128 v = sat_mul(sat_mul(sat_mul(2, sat_pow(4, k)), dp), binom(lg, k));
    if (v >= kSat) return clamp(kSat);
    return clamp(v - dp);
}

std::uint64_t prefix_search_budget(std::uint64_t d, unsigned k) {
    const std::uint64_t dp = padded_size(d);
    const unsigned lg = static_cast<unsigned>(std::countr_zero(dp));
    const u128 v = sat_mul(sat_mul(2, sat_pow(9, k)), binom(lg, k));
    if (v >= kSat) return clamp(kSat);
    return clamp(v - 1);
}

}  // namespace kerr
