#include "hyperquot/witness_replay.hpp"

#include <algorithm>

#include "hyperquot/errors.hpp"
#include "hyperquot/group.hpp"
#include "hyperquot/metric.hpp"

namespace hyperquot {

namespace {

bool contained_in(const Topology& coarser, const Topology& finer) {
    for (int x = 0; x < coarser.carrier_size(); ++x)
        if (!is_subset(finer.nbhd(x), coarser.nbhd(x))) return false;
    return true;
}

std::vector<int> compact_classes(const FunctionFamily& fam,
                                 const std::vector<int>& image) {
    std::vector<int> out(static_cast<std::size_t>(fam.size()));
    for (int f = 0; f < fam.size(); ++f) {
        const auto it = std::lower_bound(image.begin(), image.end(), fam.q_index[f]);
        out[static_cast<std::size_t>(f)] = static_cast<int>(it - image.begin());
    }
    return out;
}

struct Rebuilt {
    FunctionFamily fam;
    Topology tau_p;
    Topology tau_s;
    VietorisTopologies viet;
    QuotientOverQ tau_pq;
    QuotientOverQ tau_sq;
};

Rebuilt rebuild(const Json& family_json) {
    FunctionFamily fam = family_from_json(family_json);
    Topology tau_p = product_topology_on(fam);
    Topology tau_s = symmetric_topology(fam);
    VietorisTopologies viet = vietoris_topologies(fam.space, fam.carrier);
    QuotientOverQ tau_pq = quotient_over_q(fam, tau_p);
    QuotientOverQ tau_sq = quotient_over_q(fam, tau_s);
    return Rebuilt{std::move(fam), std::move(tau_p), std::move(tau_s),
                   std::move(viet), std::move(tau_pq), std::move(tau_sq)};
}

// Quotient of the saturated slice over the image positions in b versus the
// slice of the ambient quotient.
std::pair<Topology, Topology> restriction_sides(const Rebuilt& r, Mask b) {
    const std::vector<int> cq = compact_classes(r.fam, r.tau_pq.image);
    Mask s = 0;
    for (int f = 0; f < r.fam.size(); ++f)
        if (contains(b, cq[static_cast<std::size_t>(f)])) s |= bit(f);
    const std::vector<int> b_positions = mask_to_indices(b);
    std::vector<int> image_map;
    for_each_bit(s, [&](int f) {
        const int pos = cq[static_cast<std::size_t>(f)];
        const auto it = std::lower_bound(b_positions.begin(), b_positions.end(), pos);
        image_map.push_back(static_cast<int>(it - b_positions.begin()));
    });
    const SpaceMap restricted{static_cast<int>(popcount(s)),
                              static_cast<int>(b_positions.size()), image_map};
    return {quotient_topology(restricted, subspace_topology(r.tau_p, s)),
            subspace_topology(r.tau_pq.topology, b)};
}

Topology hausdorff_topology_of(const Rebuilt& r) {
    const int n = r.fam.space.size();
    std::vector<double> unit(static_cast<std::size_t>(n) * static_cast<std::size_t>(n),
                             1.0);
    for (int i = 0; i < n; ++i) unit[static_cast<std::size_t>(i * n + i)] = 0.0;
    std::vector<std::string> labels;
    for (int i = 0; i < n; ++i) labels.push_back("x" + std::to_string(i));
    const FiniteMetricSpace mx = FiniteMetricSpace::from_matrix(labels, unit);
    const int m = static_cast<int>(r.fam.carrier.size());
    std::vector<double> hdist(static_cast<std::size_t>(m) * static_cast<std::size_t>(m),
                              0.0);
    std::vector<std::string> hlabels;
    for (int i = 0; i < m; ++i) {
        hlabels.push_back("C" + std::to_string(i));
        for (int j = 0; j < m; ++j)
            hdist[static_cast<std::size_t>(i * m + j)] =
                i == j ? 0.0
                       : hausdorff_distance(mx, r.fam.carrier[static_cast<std::size_t>(i)],
                                            r.fam.carrier[static_cast<std::size_t>(j)],
                                            HausdorffVariant::maxsup);
    }
    return metric_topology(FiniteMetricSpace::from_matrix(hlabels, hdist));
}

std::optional<bool> recompute_equality(const std::string& check,
                                       const std::string& clause, const Rebuilt& r,
                                       const Json& witness, const Json& instance) {
    if (check == "lower_quotient")
        return !(r.tau_pq.topology == r.viet.lower);
    if (check == "upper_quotient") {
        if (clause == "tau_s_eq_qinv_tau_v_upper")
            return !(r.tau_s == preimage_under_q(r.fam, r.viet.upper));
        return !(r.tau_sq.topology == r.viet.upper);
    }
    if (check == "vietoris_join") {
        if (clause == "join_tau_pq_tau_sq_eq_tau_v")
            return !(join_topologies(r.tau_pq.topology, r.tau_sq.topology) ==
                     r.viet.full);
        const Topology join_psq =
            quotient_over_q(r.fam, join_topologies(r.tau_p, r.tau_s)).topology;
        return !contained_in(r.viet.full, join_psq);
    }
    if (check == "finite_y_equality") {
        if (clause == "tau_s_inside_tau_p") return !contained_in(r.tau_s, r.tau_p);
        if (clause == "join_ps_quotient_eq_tau_pq")
            return !(quotient_over_q(r.fam, join_topologies(r.tau_p, r.tau_s)).topology ==
                     r.tau_pq.topology);
        if (clause == "tau_pq_eq_tau_v") return !(r.tau_pq.topology == r.viet.full);
        if (clause == "t1_finite_implies_discrete")
            return !(r.fam.space.topology == Topology::discrete(r.fam.space.size()));
        if (clause == "hausdorff_metric_topology_eq_tau_v")
            return !(hausdorff_topology_of(r) == r.viet.full);
        return std::nullopt;
    }
    if (check == "saturated_restriction") {
        if (!witness.contains("carrier_indices")) return std::nullopt;
        Mask b = 0;
        for (const auto& e : witness.at("carrier_indices")) {
            const int carrier_idx = e.get<int>();
            const auto it = std::lower_bound(r.tau_pq.image.begin(),
                                             r.tau_pq.image.end(), carrier_idx);
            if (it == r.tau_pq.image.end() || *it != carrier_idx)
                throw InvalidInput("replay: witness class is not in the image");
            b |= bit(static_cast<int>(it - r.tau_pq.image.begin()));
        }
        const auto sides = restriction_sides(r, b);
        return !(sides.first == sides.second);
    }
    if (check == "fsn_restriction") {
        const int n = witness.value("n", instance.value("n", 0));
        if (n < 1) return std::nullopt;
        const Mask fsn = fs_n(r.fam.carrier, n);
        Mask b = 0;
        for (std::size_t i = 0; i < r.tau_pq.image.size(); ++i)
            if (contains(fsn, r.tau_pq.image[i])) b |= bit(static_cast<int>(i));
        if (b == 0) return false;
        Mask carrier_sub = 0;
        for_each_bit(b, [&](int i) {
            carrier_sub |= bit(r.tau_pq.image[static_cast<std::size_t>(i)]);
        });
        const Topology tau_v_restricted = subspace_topology(r.viet.full, carrier_sub);
        const auto sides = restriction_sides(r, b);
        if (clause == "fsn_quotient_eq_tau_v_restricted")
            return !(sides.first == tau_v_restricted);
        return !(sides.second == tau_v_restricted);
    }
    if (check == "smallest_qlift") {
        const std::string name = witness.value("tau0_name", std::string());
        const std::vector<int>& image = r.tau_pq.image;
        Topology tau0 = [&] {
            if (name == "vietoris")
                return subspace_topology(r.viet.full, indices_to_mask(image));
            if (name == "lower")
                return subspace_topology(r.viet.lower, indices_to_mask(image));
            if (name == "upper")
                return subspace_topology(r.viet.upper, indices_to_mask(image));
            if (name == "indiscrete")
                return Topology::indiscrete(static_cast<int>(image.size()));
            throw InvalidInput("replay: unknown tau0 name");
        }();
        const SpaceMap onto_image{r.fam.size(), static_cast<int>(image.size()),
                                  compact_classes(r.fam, image)};
        const Topology lift = preimage_topology(onto_image, tau0);
        if (clause == "qlift_round_trip")
            return !(quotient_over_q(r.fam, lift).topology == tau0);
        if (clause == "qlift_minimality") {
            const Topology sampled = topology_from_json(witness.at("right"));
            return quotient_over_q(r.fam, sampled).topology == tau0 &&
                   !contained_in(lift, sampled);
        }
        return std::nullopt;
    }
    if (check == "pointwise_image_convergence") {
        if (!witness.contains("sequence_cycle") ||
            !witness.contains("limit_tuple_index"))
            return std::nullopt;
        std::vector<int> prefix, cycle;
        if (witness.contains("sequence_prefix"))
            for (const auto& e : witness.at("sequence_prefix"))
                prefix.push_back(e.get<int>());
        for (const auto& e : witness.at("sequence_cycle")) cycle.push_back(e.get<int>());
        const int f = witness.at("limit_tuple_index").get<int>();
        auto image_mask = [&](int t) {
            Mask im = 0;
            for (int v : r.fam.tuples[static_cast<std::size_t>(t)]) im |= bit(v);
            return im;
        };
        if (clause == "images_converge_in_limit_vietoris") {
            const int n = r.fam.space.size();
            std::vector<Mask> pstar;
            for (Mask v = 1; v <= full_mask(n); ++v) pstar.push_back(v);
            std::vector<Mask> lower_sb, upper_sb;
            for (Mask o : r.fam.space.topology.opens()) {
                lower_sb.push_back(lower_hit(pstar, o));
                upper_sb.push_back(upper_contained(pstar, o));
            }
            const int pn = static_cast<int>(pstar.size());
            const Topology pstar_v = join_topologies(generate_topology(pn, lower_sb),
                                                     generate_topology(pn, upper_sb));
            EventualSequence seq;
            for (int t : prefix)
                seq.prefix.push_back(static_cast<int>(image_mask(t)) - 1);
            for (int t : cycle) seq.cycle.push_back(static_cast<int>(image_mask(t)) - 1);
            return !converges(seq, static_cast<int>(image_mask(f)) - 1, pstar_v);
        }
        EventualSequence seq;
        for (int t : prefix) seq.prefix.push_back(r.fam.q_index[t]);
        for (int t : cycle) seq.cycle.push_back(r.fam.q_index[t]);
        const Topology& where = clause == "closures_converge_in_tau_v_lower"
                                    ? r.viet.lower
                                    : r.viet.full;
        return !converges(seq, r.fam.q_index[f], where);
    }
    return std::nullopt;
}

std::optional<bool> recompute_coset(const Json& witness, const Json& instance) {
    if (!instance.contains("group") || !instance.contains("subgroup"))
        return std::nullopt;
    std::vector<std::vector<int>> table;
    for (const auto& row : instance.at("group").at("table")) {
        std::vector<int> r;
        for (const auto& v : row) r.push_back(v.get<int>());
        table.push_back(std::move(r));
    }
    const CayleyTable g = CayleyTable::from_table(table);
    Mask subgroup = 0;
    for (const auto& e : instance.at("subgroup")) subgroup |= bit(e.get<int>());
    const FunctionFamily fam = family_from_json(witness.at("family"));
    std::vector<Mask> realized;
    for (int idx : fam.image_indices())
        realized.push_back(fam.carrier[static_cast<std::size_t>(idx)]);
    return realized != g.left_cosets(subgroup);
}

bool strictness_holds(const Json& witness) {
    const FunctionFamily fam = family_from_json(witness.at("family"));
    const Topology tau_p = product_topology_on(fam);
    const VietorisTopologies viet = vietoris_topologies(fam.space, fam.carrier);
    const Topology qinv_lower = preimage_under_q(fam, viet.lower);
    const std::string kind = witness.value("kind", std::string());
    if (kind == "coordinate_subbase") {
        const Mask s = point_set_from_json(witness.at("tuple_set"), fam.size());
        const int y = witness.at("y").get<int>();
        const Mask o = point_set_from_json(witness.at("open"), fam.space.size());
        Mask expected = 0;
        for (int f = 0; f < fam.size(); ++f)
            if (contains(o, fam.tuples[static_cast<std::size_t>(f)]
                                      [static_cast<std::size_t>(y)]))
                expected |= bit(f);
        return expected == s && tau_p.is_open(s) && !qinv_lower.is_open(s);
    }
    if (kind == "minimal_nbhd") {
        const int f = witness.at("tuple_index").get<int>();
        if (f < 0 || f >= fam.size())
            throw InvalidInput("replay: tuple index out of range");
        return tau_p.nbhd(f) != qinv_lower.nbhd(f);
    }
    throw InvalidInput("replay: unknown strictness witness kind");
}

}  // namespace

ReplayOutcome replay_witness(const Json& result_row) {
    if (!result_row.is_object() || !result_row.contains("check") ||
        !result_row.contains("status"))
        throw InvalidInput("replay: result row needs \"check\" and \"status\"");
    const std::string check = result_row.at("check").get<std::string>();
    const std::string status = result_row.at("status").get<std::string>();
    const Json witness = result_row.value("witness", Json());
    const Json instance = result_row.value("instance", Json());

    ReplayOutcome out;
    if (status == "strictness-witnessed") {
        out.recomputed_violation = strictness_holds(witness);
        out.replayed_status =
            *out.recomputed_violation ? "strictness-witnessed" : "not-reproduced";
        return out;
    }
    if (status != "counterexample") {
        out.replayed_status = status;
        return out;
    }
    if (witness.is_object() && witness.contains("left") && witness.contains("right")) {
        const Topology left = topology_from_json(witness.at("left"));
        const Topology right = topology_from_json(witness.at("right"));
        out.sides_differ = !(left == right);
    }
    if (check == "coset_realization") {
        out.recomputed_violation = recompute_coset(witness, instance);
    } else if (witness.is_object() && witness.contains("family")) {
        const Rebuilt r = rebuild(witness.at("family"));
        out.recomputed_violation = recompute_equality(
            check, witness.value("clause", std::string()), r, witness, instance);
    }
    const bool reproduced =
        out.sides_differ || (out.recomputed_violation && *out.recomputed_violation);
    out.replayed_status = reproduced ? "counterexample" : "not-reproduced";
    return out;
}

}  // namespace hyperquot
