#pragma once

#include <string>
#include <vector>

#include "hyperquot/topology.hpp"

namespace hyperquot {

// The carrier Cl_Y(X) = { cl(S) : S nonempty, |S| <= y_size }: exactly the
// closures of images of maps from a y_size-element set into X. Sorted
// ascending by mask value, duplicates removed.
std::vector<Mask> indexed_closed_family(const FiniteSpace& x, int y_size);

// A family F of maps from a y_size-element index set Y into X. Tuples are
// kept distinct and sorted by their lexicographic encoding, so a family has
// one canonical representation. q(f) = cl(f(Y)); q_index maps each tuple to
// its class in the full carrier.
struct FunctionFamily {
    FiniteSpace space;
    int y_size = 0;
    std::vector<std::vector<int>> tuples;
    bool all_of_xy = false;  // F == X^Y

    std::vector<Mask> carrier;  // indexed_closed_family(space, y_size)
    std::vector<int> q_index;   // per tuple, index into carrier
    bool q_full = false;
    bool finitely_q_stable = false;

    static FunctionFamily all(const FiniteSpace& x, int y_size);
    static FunctionFamily of(const FiniteSpace& x, int y_size,
                             std::vector<std::vector<int>> tuples);

    int size() const { return static_cast<int>(tuples.size()); }
    // Sorted carrier indices hit by F (all of them iff q_full).
    std::vector<int> image_indices() const;
};

// q as a SpaceMap from tuple indices onto the full carrier; surjective()
// iff the family is q-full.
SpaceMap unordering_map(const FunctionFamily& fam);

// Carrier elements with at most n points, as a mask over carrier indices.
Mask fs_n(const std::vector<Mask>& carrier, int n);

struct VietorisTopologies {
    std::vector<Mask> carrier;
    Topology lower;  // generated by { O^- }
    Topology upper;  // generated by { O^+ }
    Topology full;   // their join
};

// Requires explicit opens of X (|X| <= 16). The carrier must consist of
// distinct nonempty closed subsets of X, sorted ascending; anything else is
// invalid input. The join defining `full` is cross-checked against the
// topology generated by the base elements [F]_v over sets F of opens.
VietorisTopologies vietoris_topologies(const FiniteSpace& x,
                                       const std::vector<Mask>& carrier);
// Carrier built from x and y_size.
VietorisTopologies vietoris_topologies(const FiniteSpace& x, int y_size);

// Base element [F]_v = { C : C inside union(F), C meets every O in F } as a
// mask over carrier indices.
Mask vietoris_base_element(const std::vector<Mask>& carrier,
                           const std::vector<Mask>& opens_f);

// Base elements use at most this many opens each; intersections recover the
// rest, so the generated topology is still all of tau_v.
inline constexpr int kVietorisBaseCap = 8;

// The hyperspace sets O^- = { C : C meets O } and O^+ = { C : C inside O }
// as masks over carrier indices.
Mask lower_hit(const std::vector<Mask>& carrier, Mask open_set);
Mask upper_contained(const std::vector<Mask>& carrier, Mask open_set);

// tau_s on F, generated by the base [O]_s = { f : cl(f(Y)) inside O } over
// the opens O of X.
Topology symmetric_topology(const FunctionFamily& fam);

// tau_p on F: the product topology of X^Y restricted to the tuples of F.
Topology product_topology_on(const FunctionFamily& fam);

// q^{-1}(tau) on F for a topology tau on the full carrier.
Topology preimage_under_q(const FunctionFamily& fam, const Topology& hyper);

bool is_q_full(const FunctionFamily& fam);

// For every f in F, every subset F' of Y and every injection s: F' -> Y
// there is g in F with g(s(y)) = f(y) for all y in F' and q(g) = q(f).
bool is_finitely_q_stable(const FunctionFamily& fam);

// Quotient of t along q, as a topology on the compacted image carrier
// q(F) (image[i] is the carrier index of point i).
struct QuotientOverQ {
    std::vector<int> image;
    Topology topology;
};
QuotientOverQ quotient_over_q(const FunctionFamily& fam, const Topology& t_on_f);

// True iff every full-Vietoris open, restricted to q(F), is open in the
// quotient of t along q.
bool is_swrc(const FunctionFamily& fam, const Topology& t_on_f);

// A hyperspace package for display and restriction checks.
struct HyperStructure {
    FiniteSpace space;
    int y_size = 0;
    std::vector<Mask> carrier;
    Topology topology;
    std::string kind;
};

bool is_closed_subset(const HyperStructure& h, Mask part);

}  // namespace hyperquot
