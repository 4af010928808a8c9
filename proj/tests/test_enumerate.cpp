#include <doctest.h>

#include <algorithm>
#include <set>
#include <vector>

#include "hyperquot/errors.hpp"
#include "hyperquot/topology.hpp"

using namespace hyperquot;

namespace {

// Every topology on n points, found by testing each family of subsets for
// the lattice axioms. A family is encoded as a bitset over the 2^n subset
// masks. Feasible through n = 4 (65536 families).
std::set<std::vector<Mask>> brute_catalog(int n) {
    const int subsets = 1 << n;
    std::set<std::vector<Mask>> out;
    for (std::uint32_t fam = 0; fam < (1u << subsets); ++fam) {
        const auto in_family = [&](Mask s) { return (fam >> s) & 1u; };
        if (!in_family(0) || !in_family(full_mask(n))) continue;
        bool closed = true;
        for (Mask a = 0; closed && a < static_cast<Mask>(subsets); ++a) {
            if (!in_family(a)) continue;
            for (Mask b = a + 1; b < static_cast<Mask>(subsets); ++b) {
                if (!in_family(b)) continue;
                if (!in_family(a | b) || !in_family(a & b)) {
                    closed = false;
                    break;
                }
            }
        }
        if (!closed) continue;
        std::vector<Mask> nbhd(static_cast<std::size_t>(n), full_mask(n));
        for (int x = 0; x < n; ++x)
            for (Mask s = 0; s < static_cast<Mask>(subsets); ++s)
                if (in_family(s) && contains(s, x))
                    nbhd[static_cast<std::size_t>(x)] &= s;
        out.insert(nbhd);
    }
    return out;
}

}  // namespace

TEST_SUITE("enumerate") {

TEST_CASE("catalog counts are 1, 4, 29, 355") {
    CHECK(enumerate_topologies(1).size() == 1);
    CHECK(enumerate_topologies(2).size() == 4);
    CHECK(enumerate_topologies(3).size() == 29);
    CHECK(enumerate_topologies(4).size() == 355);
}

TEST_CASE("catalog matches the exhaustive family search") {
    for (int n = 1; n <= 4; ++n) {
        const std::set<std::vector<Mask>> expect = brute_catalog(n);
        std::set<std::vector<Mask>> got;
        for (const Topology& t : enumerate_topologies(n)) got.insert(t.min_nbhd());
        CHECK(got == expect);
        CHECK(got.size() == enumerate_topologies(n).size());  // no duplicates
    }
}

TEST_CASE("catalog order is ascending lexicographic on neighborhoods") {
    for (int n = 1; n <= 4; ++n) {
        const std::vector<Topology> cat = enumerate_topologies(n);
        for (std::size_t i = 1; i < cat.size(); ++i)
            CHECK(std::lexicographical_compare(
                cat[i - 1].min_nbhd().begin(), cat[i - 1].min_nbhd().end(),
                cat[i].min_nbhd().begin(), cat[i].min_nbhd().end()));
    }
}

TEST_CASE("catalog endpoints are the discrete and indiscrete topologies") {
    // Ascending lexicographic neighborhoods put the singleton neighborhoods
    // (discrete) first and the all-of-X neighborhoods (indiscrete) last.
    for (int n = 1; n <= 4; ++n) {
        const std::vector<Topology> cat = enumerate_topologies(n);
        CHECK(cat.front() == Topology::discrete(n));
        CHECK(cat.back() == Topology::indiscrete(n));
    }
}

TEST_CASE("size limits are enforced") {
    CHECK_THROWS_AS(enumerate_topologies(0), InvalidInput);
    CHECK_THROWS_AS(enumerate_topologies(5), Unsupported);
}

TEST_CASE("sampling is deterministic in the seed and yields valid topologies") {
    const std::vector<Topology> a = sample_topologies(5, 12, 99);
    const std::vector<Topology> b = sample_topologies(5, 12, 99);
    const std::vector<Topology> c = sample_topologies(5, 12, 100);
    REQUIRE(a.size() == 12);
    CHECK(a == b);
    CHECK(a != c);
    for (const Topology& t : a) {
        CHECK(t.carrier_size() == 5);
        // Constructing from the neighborhoods revalidates the axioms.
        CHECK_NOTHROW(Topology(5, t.min_nbhd()));
    }
    CHECK_THROWS_AS(sample_topologies(3, 4, 7), Unsupported);
    CHECK_THROWS_AS(sample_topologies(5, 0, 1), InvalidInput);
}

}  // TEST_SUITE
