// Exhaustive enumeration of labeled topologies via their minimal
// neighborhood arrays. Candidates are generated point by point in ascending
// mask order, so the output is already in canonical (lexicographic) order.

#include <algorithm>
#include <random>

#include "hyperquot/errors.hpp"
#include "hyperquot/kernels.hpp"
#include "hyperquot/topology.hpp"

namespace hyperquot {

namespace {

// All masks containing x on an n-point carrier, ascending.
std::vector<Mask> candidates_for(int x, int n) {
    std::vector<Mask> out;
    const Mask limit = full_mask(n);
    for (Mask m = 0; m <= limit; ++m)
        if (contains(m, x)) out.push_back(m);
    return out;
}

std::vector<Topology> enumerate_all(int n) {
    std::vector<std::vector<Mask>> cand;
    cand.reserve(static_cast<std::size_t>(n));
    for (int x = 0; x < n; ++x) cand.push_back(candidates_for(x, n));

    std::vector<Topology> out;
    std::vector<Mask> nbhd(static_cast<std::size_t>(n));
    std::vector<std::size_t> pos(static_cast<std::size_t>(n), 0);
    // Odometer over the candidate lists; the first coordinate is the most
    // significant, matching lexicographic order on neighborhood arrays.
    int level = 0;
    while (level >= 0) {
        if (level == n) {
            if ([&] {
                    for (int x = 0; x < n; ++x)
                        if (!kernels::active().is_open_mask(nbhd.data(), n, nbhd[x]))
                            return false;
                    return true;
                }())
                out.emplace_back(n, nbhd);
            --level;
            continue;
        }
        auto& p = pos[static_cast<std::size_t>(level)];
        if (p == cand[static_cast<std::size_t>(level)].size()) {
            p = 0;
            --level;
            continue;
        }
        nbhd[static_cast<std::size_t>(level)] = cand[static_cast<std::size_t>(level)][p];
        ++p;
        ++level;
    }
    return out;
}

}  // namespace

std::vector<Topology> enumerate_topologies(int n) {
    if (n < 1) throw InvalidInput("carrier must have at least one point");
    if (n > 4)
        throw Unsupported("exhaustive enumeration supported up to 4 points; use sampling for 5");
    return enumerate_all(n);
}

std::vector<Topology> sample_topologies(int n, int count, std::uint64_t seed) {
    if (n != 5) throw Unsupported("sampling is defined for 5-point carriers only");
    if (count < 1) throw InvalidInput("sample size must be positive");
    std::vector<Topology> all = enumerate_all(5);
    if (count >= static_cast<int>(all.size())) return all;

    // Hand-rolled selection so the sample depends only on the seed, not on
    // standard library internals.
    std::mt19937_64 rng(seed);
    std::vector<std::size_t> idx(all.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::vector<std::size_t> chosen;
    chosen.reserve(static_cast<std::size_t>(count));
    std::size_t remaining = idx.size();
    for (int k = 0; k < count; ++k) {
        std::size_t pick = static_cast<std::size_t>(rng() % remaining);
        chosen.push_back(idx[pick]);
        idx[pick] = idx[remaining - 1];
        --remaining;
    }
    std::sort(chosen.begin(), chosen.end());
    std::vector<Topology> out;
    out.reserve(chosen.size());
    for (std::size_t i : chosen) out.push_back(all[i]);
    return out;
}

}  // namespace hyperquot
