#include "hyperquot/hyperspace.hpp"

#include <algorithm>

#include "hyperquot/errors.hpp"

namespace hyperquot {

namespace {

int carrier_index(const std::vector<Mask>& carrier, Mask c) {
    auto it = std::lower_bound(carrier.begin(), carrier.end(), c);
    if (it == carrier.end() || *it != c) return -1;
    return static_cast<int>(it - carrier.begin());
}

void validate_tuple(const std::vector<int>& t, int x_size, int y_size) {
    if (static_cast<int>(t.size()) != y_size)
        throw InvalidInput("tuple arity does not match y_size");
    for (int v : t)
        if (v < 0 || v >= x_size) throw InvalidInput("tuple coordinate out of range");
}

}  // namespace

std::vector<Mask> indexed_closed_family(const FiniteSpace& x, int y_size) {
    if (y_size < 1) throw InvalidInput("y_size must be positive");
    const int n = x.size();
    std::vector<Mask> out;
    const Mask limit = full_mask(n);
    for (Mask s = 1; s <= limit; ++s) {
        if (popcount(s) > y_size) continue;
        out.push_back(closure(x.topology, s));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    if (static_cast<int>(out.size()) > kCarrierLimit)
        throw InstanceTooLarge("hyperspace carrier exceeds 64 points");
    return out;
}

FunctionFamily FunctionFamily::all(const FiniteSpace& x, int y_size) {
    const int t = tuple_count(x.size(), y_size);
    std::vector<std::vector<int>> tuples;
    tuples.reserve(static_cast<std::size_t>(t));
    for (int i = 0; i < t; ++i) tuples.push_back(decode_tuple(i, x.size(), y_size));
    FunctionFamily fam = of(x, y_size, std::move(tuples));
    fam.all_of_xy = true;
    return fam;
}

FunctionFamily FunctionFamily::of(const FiniteSpace& x, int y_size,
                                  std::vector<std::vector<int>> tuples) {
    if (tuples.empty()) throw InvalidInput("function family must be nonempty");
    for (const auto& t : tuples) validate_tuple(t, x.size(), y_size);
    std::sort(tuples.begin(), tuples.end(),
              [&](const std::vector<int>& a, const std::vector<int>& b) {
                  return encode_tuple(a, x.size()) < encode_tuple(b, x.size());
              });
    for (std::size_t i = 1; i < tuples.size(); ++i)
        if (tuples[i] == tuples[i - 1]) throw InvalidInput("duplicate tuple in family");
    if (static_cast<int>(tuples.size()) > kCarrierLimit)
        throw InstanceTooLarge("function family exceeds 64 tuples");

    FunctionFamily fam{x, y_size, std::move(tuples), false, {}, {}, false, false};
    fam.carrier = indexed_closed_family(x, y_size);
    fam.q_index.reserve(fam.tuples.size());
    for (const auto& t : fam.tuples) {
        Mask img = 0;
        for (int v : t) img |= bit(v);
        int idx = carrier_index(fam.carrier, closure(x.topology, img));
        if (idx < 0) throw InvalidInput("tuple closure missing from carrier");
        fam.q_index.push_back(idx);
    }
    fam.q_full = is_q_full(fam);
    fam.finitely_q_stable = is_finitely_q_stable(fam);
    return fam;
}

std::vector<int> FunctionFamily::image_indices() const {
    std::vector<int> out(q_index);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

SpaceMap unordering_map(const FunctionFamily& fam) {
    return SpaceMap{fam.size(), static_cast<int>(fam.carrier.size()), fam.q_index};
}

Mask fs_n(const std::vector<Mask>& carrier, int n) {
    if (n < 0) throw InvalidInput("cardinality bound must be nonnegative");
    Mask out = 0;
    for (std::size_t i = 0; i < carrier.size(); ++i)
        if (popcount(carrier[i]) <= n) out |= bit(static_cast<int>(i));
    return out;
}

Mask lower_hit(const std::vector<Mask>& carrier, Mask open_set) {
    Mask out = 0;
    for (std::size_t i = 0; i < carrier.size(); ++i)
        if (carrier[i] & open_set) out |= bit(static_cast<int>(i));
    return out;
}

Mask upper_contained(const std::vector<Mask>& carrier, Mask open_set) {
    Mask out = 0;
    for (std::size_t i = 0; i < carrier.size(); ++i)
        if (is_subset(carrier[i], open_set)) out |= bit(static_cast<int>(i));
    return out;
}

Mask vietoris_base_element(const std::vector<Mask>& carrier,
                           const std::vector<Mask>& opens_f) {
    Mask union_f = 0;
    for (Mask o : opens_f) union_f |= o;
    Mask out = 0;
    for (std::size_t i = 0; i < carrier.size(); ++i) {
        const Mask c = carrier[i];
        if (!is_subset(c, union_f)) continue;
        bool hits_all = true;
        for (Mask o : opens_f) {
            if ((c & o) == 0) {
                hits_all = false;
                break;
            }
        }
        if (hits_all) out |= bit(static_cast<int>(i));
    }
    return out;
}

namespace {

// Topology generated by the base { [F]_v : F a set of opens, |F| <= cap }.
// Every O^- equals [{X, O}]_v and every O^+ equals [{O}]_v, so the capped
// collection still generates all of tau_v.
Topology vietoris_from_base(const FiniteSpace& x, const std::vector<Mask>& carrier) {
    const std::vector<Mask>& opens = x.topology.opens();
    const int k = static_cast<int>(opens.size());
    std::vector<Mask> base;
    std::vector<Mask> chosen;
    for (Mask sel = 0; sel < bit(k); ++sel) {
        if (popcount(sel) > kVietorisBaseCap) continue;
        chosen.clear();
        for_each_bit(sel, [&](int i) { chosen.push_back(opens[static_cast<std::size_t>(i)]); });
        base.push_back(vietoris_base_element(carrier, chosen));
    }
    return generate_topology(static_cast<int>(carrier.size()), base);
}

}  // namespace

VietorisTopologies vietoris_topologies(const FiniteSpace& x,
                                       const std::vector<Mask>& carrier) {
    const int m = static_cast<int>(carrier.size());
    if (m < 1 || m > kCarrierLimit)
        throw InvalidInput("vietoris: carrier size out of range");
    for (std::size_t i = 0; i < carrier.size(); ++i) {
        const Mask c = carrier[i];
        if (c == 0 || !is_subset(c, full_mask(x.size())))
            throw InvalidInput("vietoris: carrier element outside the space");
        if (closure(x.topology, c) != c)
            throw InvalidInput("vietoris: carrier element is not closed");
        if (i > 0 && carrier[i - 1] >= c)
            throw InvalidInput("vietoris: carrier not sorted or not distinct");
    }
    std::vector<Mask> lower_sb, upper_sb;
    for (Mask o : x.topology.opens()) {
        lower_sb.push_back(lower_hit(carrier, o));
        upper_sb.push_back(upper_contained(carrier, o));
    }
    Topology lower = generate_topology(m, lower_sb);
    Topology upper = generate_topology(m, upper_sb);
    Topology full = join_topologies(lower, upper);
    // The base-form cross-check walks every subset of the open family, so
    // run it only where that stays cheap.
    if (x.topology.opens().size() <= 16 && !(vietoris_from_base(x, carrier) == full))
        throw std::logic_error("vietoris: subbase join and base form disagree");
    return VietorisTopologies{carrier, std::move(lower), std::move(upper),
                              std::move(full)};
}

VietorisTopologies vietoris_topologies(const FiniteSpace& x, int y_size) {
    return vietoris_topologies(x, indexed_closed_family(x, y_size));
}

Topology symmetric_topology(const FunctionFamily& fam) {
    std::vector<Mask> base;
    for (Mask o : fam.space.topology.opens()) {
        Mask b = 0;
        for (int f = 0; f < fam.size(); ++f)
            if (is_subset(fam.carrier[static_cast<std::size_t>(fam.q_index[f])], o))
                b |= bit(f);
        base.push_back(b);
    }
    return generate_topology(fam.size(), base);
}

Topology product_topology_on(const FunctionFamily& fam) {
    Topology prod = product_topology(fam.space.topology, fam.y_size);
    if (fam.all_of_xy) return prod;
    Mask sub = 0;
    for (const auto& t : fam.tuples) sub |= bit(encode_tuple(t, fam.space.size()));
    // Tuples are stored sorted by encoding, so subspace compaction and the
    // family's own indexing agree.
    return subspace_topology(prod, sub);
}

Topology preimage_under_q(const FunctionFamily& fam, const Topology& hyper) {
    return preimage_topology(unordering_map(fam), hyper);
}

bool is_q_full(const FunctionFamily& fam) {
    Mask hit = 0;
    for (int idx : fam.q_index) hit |= bit(idx);
    return hit == full_mask(static_cast<int>(fam.carrier.size()));
}

bool is_finitely_q_stable(const FunctionFamily& fam) {
    const int y = fam.y_size;
    for (int f = 0; f < fam.size(); ++f) {
        const auto& ft = fam.tuples[static_cast<std::size_t>(f)];
        // The empty subset is witnessed by g = f, so start at 1.
        for (Mask sub = 1; sub < bit(y); ++sub) {
            std::vector<int> subset = mask_to_indices(sub);
            std::vector<int> targets(subset.size(), 0);
            std::vector<bool> used(static_cast<std::size_t>(y), false);

            auto witness_exists = [&]() {
                for (int g = 0; g < fam.size(); ++g) {
                    if (fam.q_index[g] != fam.q_index[f]) continue;
                    const auto& gt = fam.tuples[static_cast<std::size_t>(g)];
                    bool match = true;
                    for (std::size_t i = 0; i < subset.size(); ++i) {
                        if (gt[static_cast<std::size_t>(targets[i])] !=
                            ft[static_cast<std::size_t>(subset[i])]) {
                            match = false;
                            break;
                        }
                    }
                    if (match) return true;
                }
                return false;
            };

            // Every injection sigma: subset -> Y must admit a witness g.
            auto all_injections_ok = [&](auto&& self, std::size_t depth) -> bool {
                if (depth == subset.size()) return witness_exists();
                for (int t = 0; t < y; ++t) {
                    if (used[static_cast<std::size_t>(t)]) continue;
                    used[static_cast<std::size_t>(t)] = true;
                    targets[depth] = t;
                    bool ok = self(self, depth + 1);
                    used[static_cast<std::size_t>(t)] = false;
                    if (!ok) return false;
                }
                return true;
            };
            if (!all_injections_ok(all_injections_ok, 0)) return false;
        }
    }
    return true;
}

QuotientOverQ quotient_over_q(const FunctionFamily& fam, const Topology& t_on_f) {
    if (t_on_f.carrier_size() != fam.size())
        throw InvalidInput("topology carrier does not match the family");
    std::vector<int> image = fam.image_indices();
    std::vector<int> compact(fam.carrier.size(), -1);
    for (std::size_t i = 0; i < image.size(); ++i)
        compact[static_cast<std::size_t>(image[i])] = static_cast<int>(i);
    std::vector<int> q_compact;
    q_compact.reserve(fam.q_index.size());
    for (int idx : fam.q_index) q_compact.push_back(compact[static_cast<std::size_t>(idx)]);
    SpaceMap q{fam.size(), static_cast<int>(image.size()), std::move(q_compact)};
    Topology topo = quotient_topology(q, t_on_f);
    return QuotientOverQ{std::move(image), std::move(topo)};
}

bool is_swrc(const FunctionFamily& fam, const Topology& t_on_f) {
    VietorisTopologies v = vietoris_topologies(fam.space, fam.y_size);
    QuotientOverQ q = quotient_over_q(fam, t_on_f);
    Mask image_mask = 0;
    for (int idx : q.image) image_mask |= bit(idx);
    for (Mask o : v.full.opens()) {
        if (!q.topology.is_open(compact_mask(o & image_mask, image_mask))) return false;
    }
    return true;
}

bool is_closed_subset(const HyperStructure& h, Mask part) {
    const Mask limit = full_mask(static_cast<int>(h.carrier.size()));
    if (part & ~limit) throw InvalidInput("subset leaves the hyperspace carrier");
    return h.topology.is_open(limit & ~part);
}

}  // namespace hyperquot
