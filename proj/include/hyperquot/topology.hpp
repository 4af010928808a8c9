#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hyperquot/mask.hpp"

namespace hyperquot {

// Carrier bound above which explicit open-set lists are never materialized.
inline constexpr int kOpensLimit = 16;

// A topology on a finite carrier, stored as the minimal open neighborhood
// U_x of every point. On a finite carrier this determines the topology
// completely: a set S is open iff U_x is contained in S for every x in S.
// Invariants enforced on construction:
//   * 1 <= carrier_size <= 64 and every U_x lies within the carrier,
//   * x is a member of U_x,
//   * y in U_x implies U_y is a subset of U_x.
class Topology {
  public:
    Topology(int carrier_size, std::vector<Mask> min_nbhd);

    // Builds from an explicit family of opens, which must contain the empty
    // set and the carrier and be closed under pairwise union and
    // intersection. Throws InvalidInput otherwise.
    static Topology from_opens(int carrier_size, std::vector<Mask> opens);

    static Topology discrete(int carrier_size);
    static Topology indiscrete(int carrier_size);

    int carrier_size() const { return n_; }
    const std::vector<Mask>& min_nbhd() const { return nbhd_; }
    Mask nbhd(int x) const { return nbhd_[static_cast<std::size_t>(x)]; }

    // Whether the full open-set list can be enumerated (carriers up to
    // kOpensLimit points).
    bool has_opens() const { return n_ <= kOpensLimit; }
    // All open sets, sorted ascending by mask value, computed on demand;
    // throws Unsupported when the carrier is too large to enumerate.
    std::vector<Mask> opens() const;

    // Membership test that works at any carrier size.
    bool is_open(Mask s) const;

    // Union of U_x over the points of a: the smallest open superset of a.
    Mask nbhd_of_set(Mask a) const;

    bool operator==(const Topology& other) const {
        return n_ == other.n_ && nbhd_ == other.nbhd_;
    }

  private:
    int n_;
    std::vector<Mask> nbhd_;
};

// A finite space: a topology plus point labels (labels are presentation
// only; all computation is index-based).
struct FiniteSpace {
    std::vector<std::string> labels;
    Topology topology;

    int size() const { return topology.carrier_size(); }
};

// A function between finite carriers, stored pointwise.
struct SpaceMap {
    int domain_size = 0;
    int codomain_size = 0;
    std::vector<int> image;  // image[x] in [0, codomain_size)

    bool surjective() const;
    Mask preimage(Mask codomain_set) const;
    Mask forward(Mask domain_set) const;
};

// A sequence given as a finite prefix followed by a cycle repeated forever.
// All convergence checks depend only on the cycle (every cycle entry occurs
// in every tail).
struct EventualSequence {
    std::vector<int> prefix;
    std::vector<int> cycle;
};

struct SeparationFlags {
    bool t0 = false;
    bool t1 = false;
    bool t2 = false;
};

enum class TopologyOrder {
    equal,
    left_strictly_finer,   // left has strictly more opens
    right_strictly_finer,  // right has strictly more opens
    incomparable,
};

// Topology generated by an arbitrary subbase of subsets: U_x is the
// intersection of all subbase members containing x (the whole carrier when
// none do).
Topology generate_topology(int carrier_size, const std::vector<Mask>& subbase);

// Coarsest common refinement: U_x = U_x^left & U_x^right.
Topology join_topologies(const Topology& left, const Topology& right);

// cl(a) = { x : U_x meets a }.
Mask closure(const Topology& t, Mask a);

// Product topology on the tuple carrier X^y_size; tuples are indexed
// lexicographically with coordinate 0 most significant.
Topology product_topology(const Topology& x, int y_size);
FiniteSpace product_space(const FiniteSpace& x, int y_size);

int tuple_count(int x_size, int y_size);  // throws InstanceTooLarge past 64
int encode_tuple(const std::vector<int>& tuple, int x_size);
std::vector<int> decode_tuple(int index, int x_size, int y_size);

// Subspace topology on the points of sub, re-indexed densely in ascending
// point order (bit i of the result is the i-th set bit of sub).
Topology subspace_topology(const Topology& t, Mask sub);

// Topology on a carrier of total_size points making embed's image a copy of
// t and every point outside the image isolated: opens are exactly the sets
// whose preimage under embed is open in t. embed must be injective.
Topology superspace_topology(const Topology& t, int total_size, const SpaceMap& embed);

// Initial topology of f: opens are exactly the preimages of opens.
Topology preimage_topology(const SpaceMap& f, const Topology& codomain);

// Final topology of g (g surjective): B is open iff its preimage is open.
// The codomain is capped at kOpensLimit points (explicit enumeration).
Topology quotient_topology(const SpaceMap& g, const Topology& domain);

// s == g^{-1}(g(s))
bool is_saturated(const SpaceMap& g, Mask s);

// True iff every open neighborhood of the point contains a tail of the
// sequence, i.e. every cycle entry lies in U_point.
bool converges(const EventualSequence& seq, int point, const Topology& t);

SeparationFlags separation_axioms(const Topology& t);

TopologyOrder compare_topologies(const Topology& left, const Topology& right);

// All labeled topologies on n points (1 <= n <= 4) in canonical order:
// ascending lexicographic minimal-neighborhood arrays.
std::vector<Topology> enumerate_topologies(int n);

// Deterministic pseudorandom sample (without replacement) of the n = 5
// enumeration, in canonical order.
std::vector<Topology> sample_topologies(int n, int count, std::uint64_t seed);

}  // namespace hyperquot
