#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace hyperquot {

// A subset of a carrier with at most 64 points, one bit per point.
using Mask = std::uint64_t;

inline constexpr int kCarrierLimit = 64;

constexpr Mask bit(int i) { return Mask{1} << i; }

constexpr Mask full_mask(int n) {
    return n >= 64 ? ~Mask{0} : (Mask{1} << n) - 1;
}

constexpr bool contains(Mask m, int i) { return (m >> i) & 1; }

constexpr bool is_subset(Mask a, Mask b) { return (a & ~b) == 0; }

inline int popcount(Mask m) { return std::popcount(m); }

// Calls fn(i) for each set bit of m in ascending order.
template <typename Fn>
void for_each_bit(Mask m, Fn&& fn) {
    while (m) {
        fn(std::countr_zero(m));
        m &= m - 1;
    }
}

inline std::vector<int> mask_to_indices(Mask m) {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(popcount(m)));
    for_each_bit(m, [&](int i) { out.push_back(i); });
    return out;
}

inline Mask indices_to_mask(const std::vector<int>& idx) {
    Mask m = 0;
    for (int i : idx) m |= bit(i);
    return m;
}

// Extracts the bits of m at the positions of sub into dense low positions,
// preserving order: sub = {1,2,3}, m = {1,3} -> dense {0,2} = 0b101.
inline Mask compact_mask(Mask m, Mask sub) {
    Mask out = 0;
    int pos = 0;
    for_each_bit(sub, [&](int i) {
        if (contains(m, i)) out |= bit(pos);
        ++pos;
    });
    return out;
}

// Inverse of compact_mask: spreads dense bits back onto the positions of sub.
inline Mask expand_mask(Mask dense, Mask sub) {
    Mask out = 0;
    int pos = 0;
    for_each_bit(sub, [&](int i) {
        if (contains(dense, pos)) out |= bit(i);
        ++pos;
    });
    return out;
}

}  // namespace hyperquot
