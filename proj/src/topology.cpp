#include "hyperquot/topology.hpp"

#include <algorithm>

#include "hyperquot/errors.hpp"
#include "hyperquot/kernels.hpp"

namespace hyperquot {

namespace {

void check_carrier(int n) {
    if (n < 1) throw InvalidInput("carrier must have at least one point");
    if (n > kCarrierLimit) throw InstanceTooLarge("carrier exceeds 64 points");
}

std::vector<Mask> opens_from_nbhd(int n, const std::vector<Mask>& nbhd) {
    std::vector<Mask> out;
    const Mask limit = full_mask(n);
    for (Mask s = 0;; ++s) {
        if (kernels::active().is_open_mask(nbhd.data(), n, s)) out.push_back(s);
        if (s == limit) break;
    }
    return out;
}

}  // namespace

Topology::Topology(int carrier_size, std::vector<Mask> min_nbhd)
    : n_(carrier_size), nbhd_(std::move(min_nbhd)) {
    check_carrier(n_);
    if (static_cast<int>(nbhd_.size()) != n_)
        throw InvalidInput("minimal neighborhood array size mismatch");
    const Mask limit = full_mask(n_);
    for (int x = 0; x < n_; ++x) {
        if (nbhd_[x] & ~limit)
            throw InvalidInput("neighborhood leaves the carrier");
        if (!contains(nbhd_[x], x))
            throw InvalidInput("point missing from its own minimal neighborhood");
        // Transitivity: U_x must itself be open.
        if (!kernels::active().is_open_mask(nbhd_.data(), n_, nbhd_[x]))
            throw InvalidInput("minimal neighborhoods are not transitive");
    }
}

Topology Topology::from_opens(int carrier_size, std::vector<Mask> opens) {
    check_carrier(carrier_size);
    if (carrier_size > kOpensLimit)
        throw InstanceTooLarge("explicit open lists supported only up to 16 points");
    std::sort(opens.begin(), opens.end());
    opens.erase(std::unique(opens.begin(), opens.end()), opens.end());
    const Mask limit = full_mask(carrier_size);
    for (Mask s : opens)
        if (s & ~limit) throw InvalidInput("open set leaves the carrier");
    if (opens.empty() || opens.front() != 0 || opens.back() != limit)
        throw InvalidInput("opens must contain the empty set and the carrier");
    std::vector<Mask> nbhd(static_cast<std::size_t>(carrier_size), limit);
    for (int x = 0; x < carrier_size; ++x)
        for (Mask s : opens)
            if (contains(s, x)) nbhd[x] &= s;
    // Every listed set is open in the generated topology by construction, so
    // the list is union- and intersection-closed exactly when the generated
    // topology has no extra opens.
    Topology t(carrier_size, std::move(nbhd));
    if (t.opens().size() != opens.size())
        throw InvalidInput("opens not closed under union and intersection");
    return t;
}

Topology Topology::discrete(int carrier_size) {
    check_carrier(carrier_size);
    std::vector<Mask> nbhd(static_cast<std::size_t>(carrier_size));
    for (int x = 0; x < carrier_size; ++x) nbhd[x] = bit(x);
    return Topology(carrier_size, std::move(nbhd));
}

Topology Topology::indiscrete(int carrier_size) {
    check_carrier(carrier_size);
    std::vector<Mask> nbhd(static_cast<std::size_t>(carrier_size), full_mask(carrier_size));
    return Topology(carrier_size, std::move(nbhd));
}

std::vector<Mask> Topology::opens() const {
    if (n_ > kOpensLimit)
        throw Unsupported("open-set list not enumerable for carriers above 16 points");
    return opens_from_nbhd(n_, nbhd_);
}

bool Topology::is_open(Mask s) const {
    if (s & ~full_mask(n_)) return false;
    return kernels::active().is_open_mask(nbhd_.data(), n_, s);
}

Mask Topology::nbhd_of_set(Mask a) const {
    Mask out = 0;
    for_each_bit(a, [&](int x) { out |= nbhd_[x]; });
    return out;
}

bool SpaceMap::surjective() const {
    Mask hit = 0;
    for (int v : image) hit |= bit(v);
    return hit == full_mask(codomain_size);
}

Mask SpaceMap::preimage(Mask codomain_set) const {
    Mask out = 0;
    for (int x = 0; x < domain_size; ++x)
        if (contains(codomain_set, image[x])) out |= bit(x);
    return out;
}

Mask SpaceMap::forward(Mask domain_set) const {
    Mask out = 0;
    for_each_bit(domain_set, [&](int x) { out |= bit(image[x]); });
    return out;
}

Topology generate_topology(int carrier_size, const std::vector<Mask>& subbase) {
    check_carrier(carrier_size);
    const Mask limit = full_mask(carrier_size);
    for (Mask s : subbase)
        if (s & ~limit) throw InvalidInput("subbase member leaves the carrier");
    std::vector<Mask> nbhd(static_cast<std::size_t>(carrier_size), limit);
    for (int x = 0; x < carrier_size; ++x)
        for (Mask s : subbase)
            if (contains(s, x)) nbhd[x] &= s;
    return Topology(carrier_size, std::move(nbhd));
}

Topology join_topologies(const Topology& left, const Topology& right) {
    if (left.carrier_size() != right.carrier_size())
        throw InvalidInput("join requires a common carrier");
    std::vector<Mask> nbhd(static_cast<std::size_t>(left.carrier_size()));
    for (int x = 0; x < left.carrier_size(); ++x)
        nbhd[x] = left.nbhd(x) & right.nbhd(x);
    return Topology(left.carrier_size(), std::move(nbhd));
}

Mask closure(const Topology& t, Mask a) {
    if (a & ~full_mask(t.carrier_size()))
        throw InvalidInput("closure argument leaves the carrier");
    return kernels::active().closure_mask(t.min_nbhd().data(), t.carrier_size(), a);
}

int tuple_count(int x_size, int y_size) {
    if (x_size < 1 || y_size < 1) throw InvalidInput("sizes must be positive");
    long long count = 1;
    for (int i = 0; i < y_size; ++i) {
        count *= x_size;
        if (count > kCarrierLimit)
            throw InstanceTooLarge("tuple carrier exceeds 64 points");
    }
    return static_cast<int>(count);
}

int encode_tuple(const std::vector<int>& tuple, int x_size) {
    int idx = 0;
    for (int v : tuple) {
        if (v < 0 || v >= x_size) throw InvalidInput("tuple coordinate out of range");
        idx = idx * x_size + v;
    }
    return idx;
}

std::vector<int> decode_tuple(int index, int x_size, int y_size) {
    std::vector<int> out(static_cast<std::size_t>(y_size));
    for (int i = y_size - 1; i >= 0; --i) {
        out[i] = index % x_size;
        index /= x_size;
    }
    return out;
}

Topology product_topology(const Topology& x, int y_size) {
    const int n = x.carrier_size();
    const int t = tuple_count(n, y_size);
    std::vector<Mask> nbhd(static_cast<std::size_t>(t), 0);
    for (int f = 0; f < t; ++f) {
        std::vector<int> ft = decode_tuple(f, n, y_size);
        for (int g = 0; g < t; ++g) {
            std::vector<int> gt = decode_tuple(g, n, y_size);
            bool inside = true;
            for (int y = 0; y < y_size; ++y) {
                if (!contains(x.nbhd(ft[y]), gt[y])) {
                    inside = false;
                    break;
                }
            }
            if (inside) nbhd[f] |= bit(g);
        }
    }
    return Topology(t, std::move(nbhd));
}

FiniteSpace product_space(const FiniteSpace& x, int y_size) {
    Topology topo = product_topology(x.topology, y_size);
    const int n = x.size();
    std::vector<std::string> labels;
    labels.reserve(static_cast<std::size_t>(topo.carrier_size()));
    for (int f = 0; f < topo.carrier_size(); ++f) {
        std::vector<int> ft = decode_tuple(f, n, y_size);
        std::string lab = "(";
        for (int y = 0; y < y_size; ++y) {
            if (y) lab += ",";
            lab += x.labels[static_cast<std::size_t>(ft[y])];
        }
        lab += ")";
        labels.push_back(std::move(lab));
    }
    return FiniteSpace{std::move(labels), std::move(topo)};
}

Topology subspace_topology(const Topology& t, Mask sub) {
    if (sub == 0) throw InvalidInput("subspace carrier must be nonempty");
    if (sub & ~full_mask(t.carrier_size()))
        throw InvalidInput("subspace carrier leaves the space");
    const int k = popcount(sub);
    std::vector<Mask> nbhd;
    nbhd.reserve(static_cast<std::size_t>(k));
    for_each_bit(sub, [&](int x) { nbhd.push_back(compact_mask(t.nbhd(x) & sub, sub)); });
    return Topology(k, std::move(nbhd));
}

Topology superspace_topology(const Topology& t, int total_size, const SpaceMap& embed) {
    check_carrier(total_size);
    if (embed.domain_size != t.carrier_size() || embed.codomain_size != total_size)
        throw InvalidInput("embedding sizes do not match");
    Mask seen = 0;
    for (int a = 0; a < embed.domain_size; ++a) {
        int b = embed.image[a];
        if (b < 0 || b >= total_size) throw InvalidInput("embedding leaves the carrier");
        if (contains(seen, b)) throw InvalidInput("embedding must be injective");
        seen |= bit(b);
    }
    std::vector<Mask> nbhd(static_cast<std::size_t>(total_size));
    for (int b = 0; b < total_size; ++b) nbhd[b] = bit(b);
    for (int a = 0; a < embed.domain_size; ++a)
        nbhd[embed.image[a]] = embed.forward(t.nbhd(a));
    return Topology(total_size, std::move(nbhd));
}

Topology preimage_topology(const SpaceMap& f, const Topology& codomain) {
    if (f.codomain_size != codomain.carrier_size())
        throw InvalidInput("map codomain does not match the topology carrier");
    if (f.domain_size < 1) throw InvalidInput("map domain must be nonempty");
    for (int v : f.image)
        if (v < 0 || v >= f.codomain_size) throw InvalidInput("map image out of range");
    std::vector<Mask> nbhd(static_cast<std::size_t>(f.domain_size));
    for (int x = 0; x < f.domain_size; ++x)
        nbhd[x] = f.preimage(codomain.nbhd(f.image[x]));
    return Topology(f.domain_size, std::move(nbhd));
}

Topology quotient_topology(const SpaceMap& g, const Topology& domain) {
    if (g.domain_size != domain.carrier_size())
        throw InvalidInput("map domain does not match the topology carrier");
    if (g.codomain_size < 1) throw InvalidInput("quotient codomain must be nonempty");
    if (g.codomain_size > kOpensLimit)
        throw InstanceTooLarge("quotient codomain exceeds 16 points");
    for (int v : g.image)
        if (v < 0 || v >= g.codomain_size) throw InvalidInput("map image out of range");
    if (!g.surjective()) throw InvalidInput("quotient map must be surjective");
    // Minimal neighborhood of a class c: grow B from {c} until the smallest
    // open superset of its preimage maps back into B. Each round either
    // finishes or adds a class, so at most codomain_size rounds run.
    std::vector<Mask> nbhd(static_cast<std::size_t>(g.codomain_size));
    for (int c = 0; c < g.codomain_size; ++c) {
        Mask b = bit(c);
        for (;;) {
            const Mask grown = g.forward(domain.nbhd_of_set(g.preimage(b)));
            if (grown == b) break;
            b = grown;
        }
        nbhd[static_cast<std::size_t>(c)] = b;
    }
    return Topology(g.codomain_size, std::move(nbhd));
}

bool is_saturated(const SpaceMap& g, Mask s) {
    return g.preimage(g.forward(s)) == s;
}

bool converges(const EventualSequence& seq, int point, const Topology& t) {
    if (seq.cycle.empty()) throw InvalidInput("sequence cycle must be nonempty");
    const int n = t.carrier_size();
    if (point < 0 || point >= n) throw InvalidInput("limit point out of range");
    for (int p : seq.prefix)
        if (p < 0 || p >= n) throw InvalidInput("sequence entry out of range");
    Mask u = t.nbhd(point);
    for (int p : seq.cycle) {
        if (p < 0 || p >= n) throw InvalidInput("sequence entry out of range");
        if (!contains(u, p)) return false;
    }
    return true;
}

SeparationFlags separation_axioms(const Topology& t) {
    SeparationFlags flags;
    const int n = t.carrier_size();
    flags.t0 = flags.t1 = flags.t2 = true;
    for (int x = 0; x < n && flags.t0; ++x)
        for (int y = x + 1; y < n; ++y)
            if (t.nbhd(x) == t.nbhd(y)) {
                flags.t0 = false;
                break;
            }
    // T1: every singleton closed, i.e. no other point's neighborhood meets it.
    for (int x = 0; x < n && flags.t1; ++x)
        if (closure(t, bit(x)) != bit(x)) flags.t1 = false;
    // Minimal neighborhoods are the smallest opens, so Hausdorff reduces to
    // their disjointness.
    for (int x = 0; x < n && flags.t2; ++x)
        for (int y = x + 1; y < n; ++y)
            if (t.nbhd(x) & t.nbhd(y)) {
                flags.t2 = false;
                break;
            }
    return flags;
}

TopologyOrder compare_topologies(const Topology& left, const Topology& right) {
    if (left.carrier_size() != right.carrier_size())
        throw InvalidInput("comparison requires a common carrier");
    bool left_finer = true;   // every right-open is left-open: U^L_x subset U^R_x
    bool right_finer = true;
    for (int x = 0; x < left.carrier_size(); ++x) {
        if (!is_subset(left.nbhd(x), right.nbhd(x))) left_finer = false;
        if (!is_subset(right.nbhd(x), left.nbhd(x))) right_finer = false;
    }
    if (left_finer && right_finer) return TopologyOrder::equal;
    if (left_finer) return TopologyOrder::left_strictly_finer;
    if (right_finer) return TopologyOrder::right_strictly_finer;
    return TopologyOrder::incomparable;
}

}  // namespace hyperquot
