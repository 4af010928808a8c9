#include "hyperquot/verifier.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <random>
#include <thread>

#include "hyperquot/errors.hpp"

namespace hyperquot {

const char* status_name(Status s) {
    switch (s) {
        case Status::verified: return "verified";
        case Status::counterexample: return "counterexample";
        case Status::hypothesis_not_met: return "hypothesis-not-met";
        case Status::strictness_witnessed: return "strictness-witnessed";
        case Status::strictness_not_witnessed: return "strictness-not-witnessed";
    }
    return "unknown";
}

const char* hyper_choice_name(HyperChoice h) {
    switch (h) {
        case HyperChoice::vietoris: return "vietoris";
        case HyperChoice::lower: return "lower";
        case HyperChoice::upper: return "upper";
        case HyperChoice::indiscrete: return "indiscrete";
    }
    return "unknown";
}

Json instance_to_json(const Instance& inst) {
    Json j;
    j["x_topology_id"] = inst.x_topology_id;
    j["x_size"] = inst.x_size;
    j["y_size"] = inst.y_size;
    if (inst.family_all) {
        j["family"] = "all";
    } else {
        j["family"] = inst.tuples;
    }
    return j;
}

Json result_to_json(const CheckResult& r) {
    Json j;
    j["check"] = r.check;
    j["instance"] = r.instance;
    j["status"] = status_name(r.status);
    j["witness"] = r.witness;
    j["ms"] = r.ms;
    return j;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Subspace of a hyperspace topology on the carrier indices listed in
// `indices` (ascending), matching the position order of compacted quotients.
Topology restrict_to_indices(const Topology& t, const std::vector<int>& indices) {
    return subspace_topology(t, indices_to_mask(indices));
}

// Positions of each tuple's class within the compacted image list.
std::vector<int> compact_q(const FunctionFamily& fam, const std::vector<int>& image) {
    std::vector<int> out(static_cast<std::size_t>(fam.size()));
    for (int f = 0; f < fam.size(); ++f) {
        const auto it = std::lower_bound(image.begin(), image.end(), fam.q_index[f]);
        out[static_cast<std::size_t>(f)] = static_cast<int>(it - image.begin());
    }
    return out;
}

Json nbhd_difference(const Topology& a, const Topology& b) {
    if (a.carrier_size() != b.carrier_size()) {
        Json j;
        j["carrier_sizes"] = {a.carrier_size(), b.carrier_size()};
        return j;
    }
    for (int x = 0; x < a.carrier_size(); ++x) {
        if (a.nbhd(x) != b.nbhd(x)) {
            Json j;
            j["point"] = x;
            j["left_min_nbhd"] = mask_to_json(a.nbhd(x));
            j["right_min_nbhd"] = mask_to_json(b.nbhd(x));
            return j;
        }
    }
    return Json();
}

Json equality_witness(const InstanceContext& c, const char* clause,
                      const char* left_name, const Topology& left,
                      const char* right_name, const Topology& right) {
    Json w;
    w["clause"] = clause;
    w["family"] = family_to_json(c.fam);
    w["left_name"] = left_name;
    w["left"] = topology_to_json(left);
    w["right_name"] = right_name;
    w["right"] = topology_to_json(right);
    w["difference"] = nbhd_difference(left, right);
    return w;
}

CheckResult make_result(const InstanceContext& c, const char* check, Status status,
                        Json witness = Json()) {
    CheckResult r;
    r.check = check;
    r.instance = instance_to_json(c.meta);
    r.status = status;
    r.witness = std::move(witness);
    return r;
}

// t1 contained in t2, minimal-neighborhood form (finer means smaller nbhds).
bool topology_contained(const Topology& coarser, const Topology& finer) {
    for (int x = 0; x < coarser.carrier_size(); ++x)
        if (!is_subset(finer.nbhd(x), coarser.nbhd(x))) return false;
    return true;
}

Topology random_topology(int n, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::uint64_t> dist;
    std::vector<Mask> subbase;
    for (int i = 0; i < 3; ++i) subbase.push_back(dist(rng) & full_mask(n));
    return generate_topology(n, subbase);
}

}  // namespace

InstanceContext make_instance_context(const FiniteSpace& x, int y_size,
                                      bool family_all,
                                      std::vector<std::vector<int>> tuples,
                                      int x_topology_id) {
    FunctionFamily fam = family_all ? FunctionFamily::all(x, y_size)
                                    : FunctionFamily::of(x, y_size, std::move(tuples));
    Instance meta;
    meta.x_topology_id = x_topology_id;
    meta.x_size = x.size();
    meta.y_size = y_size;
    meta.family_all = family_all;
    if (!family_all) meta.tuples = fam.tuples;

    Topology tau_p = product_topology_on(fam);
    Topology tau_s = symmetric_topology(fam);
    VietorisTopologies viet = vietoris_topologies(x, fam.carrier);
    QuotientOverQ tau_pq = quotient_over_q(fam, tau_p);
    QuotientOverQ tau_sq = quotient_over_q(fam, tau_s);
    return InstanceContext{std::move(meta), std::move(fam), std::move(tau_p),
                           std::move(tau_s), std::move(viet), std::move(tau_pq),
                           std::move(tau_sq)};
}

CheckResult verify_lower_quotient(const InstanceContext& c, bool inject_fault) {
    if (!c.fam.q_full || !c.fam.finitely_q_stable) {
        Json w;
        w["q_full"] = c.fam.q_full;
        w["finitely_q_stable"] = c.fam.finitely_q_stable;
        const Topology restricted = restrict_to_indices(c.viet.lower, c.tau_pq.image);
        w["exploratory"] = {
            {"tau_pq_eq_tau_v_lower_on_image", c.tau_pq.topology == restricted}};
        return make_result(c, "lower_quotient", Status::hypothesis_not_met, std::move(w));
    }
    Topology left = c.tau_pq.topology;
    if (inject_fault) left = Topology::indiscrete(left.carrier_size());
    const Topology& right = c.viet.lower;
    if (left == right) return make_result(c, "lower_quotient", Status::verified);
    return make_result(c, "lower_quotient", Status::counterexample,
                       equality_witness(c, "tau_pq_eq_tau_v_lower", "tau_pq", left,
                                        "tau_v_lower", right));
}

CheckResult verify_lower_strictness(const InstanceContext& c) {
    if (c.meta.y_size < 2) {
        Json w;
        w["reason"] = "y_size < 2";
        return make_result(c, "lower_strictness", Status::hypothesis_not_met,
                           std::move(w));
    }
    const Topology qinv_lower = preimage_under_q(c.fam, c.viet.lower);
    // Subbase witnesses first: [y, O]_p = { f : f(y) in O }.
    for (int y = 0; y < c.meta.y_size; ++y) {
        for (Mask o : c.fam.space.topology.opens()) {
            Mask s = 0;
            for (int f = 0; f < c.fam.size(); ++f)
                if (contains(o,
                             c.fam.tuples[static_cast<std::size_t>(f)]
                                         [static_cast<std::size_t>(y)]))
                    s |= bit(f);
            if (s == 0 || s == full_mask(c.fam.size())) continue;
            if (!qinv_lower.is_open(s)) {
                Json w;
                w["kind"] = "coordinate_subbase";
                w["y"] = y;
                w["open"] = mask_to_json(o);
                w["tuple_set"] = mask_to_json(s);
                w["family"] = family_to_json(c.fam);
                return make_result(c, "lower_strictness", Status::strictness_witnessed,
                                   std::move(w));
            }
        }
    }
    // Fallback: any point whose minimal tau_p-neighborhood is strictly finer.
    for (int f = 0; f < c.fam.size(); ++f) {
        if (c.tau_p.nbhd(f) != qinv_lower.nbhd(f)) {
            Json w;
            w["kind"] = "minimal_nbhd";
            w["tuple_index"] = f;
            w["tuple_set"] = mask_to_json(c.tau_p.nbhd(f));
            w["family"] = family_to_json(c.fam);
            return make_result(c, "lower_strictness", Status::strictness_witnessed,
                               std::move(w));
        }
    }
    return make_result(c, "lower_strictness", Status::strictness_not_witnessed);
}

CheckResult verify_upper_quotient(const InstanceContext& c) {
    const Topology qinv_upper = preimage_under_q(c.fam, c.viet.upper);
    const bool identity_holds = c.tau_s == qinv_upper;
    if (!c.fam.q_full) {
        Json w;
        w["q_full"] = false;
        const Topology restricted = restrict_to_indices(c.viet.upper, c.tau_sq.image);
        w["exploratory"] = {
            {"tau_s_eq_qinv_tau_v_upper", identity_holds},
            {"tau_sq_eq_tau_v_upper_on_image", c.tau_sq.topology == restricted}};
        return make_result(c, "upper_quotient", Status::hypothesis_not_met, std::move(w));
    }
    if (!identity_holds) {
        return make_result(c, "upper_quotient", Status::counterexample,
                           equality_witness(c, "tau_s_eq_qinv_tau_v_upper", "tau_s",
                                            c.tau_s, "qinv_tau_v_upper", qinv_upper));
    }
    if (!(c.tau_sq.topology == c.viet.upper)) {
        return make_result(c, "upper_quotient", Status::counterexample,
                           equality_witness(c, "tau_sq_eq_tau_v_upper", "tau_sq",
                                            c.tau_sq.topology, "tau_v_upper",
                                            c.viet.upper));
    }
    return make_result(c, "upper_quotient", Status::verified);
}

CheckResult verify_vietoris_join(const InstanceContext& c) {
    if (!c.fam.q_full || !c.fam.finitely_q_stable) {
        Json w;
        w["q_full"] = c.fam.q_full;
        w["finitely_q_stable"] = c.fam.finitely_q_stable;
        return make_result(c, "vietoris_join", Status::hypothesis_not_met, std::move(w));
    }
    const Topology joined = join_topologies(c.tau_pq.topology, c.tau_sq.topology);
    if (!(joined == c.viet.full)) {
        return make_result(c, "vietoris_join", Status::counterexample,
                           equality_witness(c, "join_tau_pq_tau_sq_eq_tau_v",
                                            "join(tau_pq,tau_sq)", joined, "tau_v",
                                            c.viet.full));
    }
    const Topology join_ps = join_topologies(c.tau_p, c.tau_s);
    const Topology join_psq = quotient_over_q(c.fam, join_ps).topology;
    if (!topology_contained(c.viet.full, join_psq)) {
        return make_result(c, "vietoris_join", Status::counterexample,
                           equality_witness(c, "tau_v_inside_join_ps_quotient", "tau_v",
                                            c.viet.full, "join(tau_p,tau_s)_q",
                                            join_psq));
    }
    return make_result(c, "vietoris_join", Status::verified);
}

CheckResult verify_finite_y_equality(const InstanceContext& c) {
    const SeparationFlags sep = separation_axioms(c.fam.space.topology);
    if (!sep.t1 || !c.fam.q_full || !c.fam.finitely_q_stable) {
        Json w;
        w["t1"] = sep.t1;
        w["q_full"] = c.fam.q_full;
        w["finitely_q_stable"] = c.fam.finitely_q_stable;
        const Topology restricted = restrict_to_indices(c.viet.full, c.tau_pq.image);
        w["exploratory"] = {
            {"tau_pq_eq_tau_v_on_image", c.tau_pq.topology == restricted}};
        return make_result(c, "finite_y_equality", Status::hypothesis_not_met,
                           std::move(w));
    }
    if (!topology_contained(c.tau_s, c.tau_p)) {
        return make_result(c, "finite_y_equality", Status::counterexample,
                           equality_witness(c, "tau_s_inside_tau_p", "tau_s", c.tau_s,
                                            "tau_p", c.tau_p));
    }
    const Topology join_psq =
        quotient_over_q(c.fam, join_topologies(c.tau_p, c.tau_s)).topology;
    if (!(join_psq == c.tau_pq.topology)) {
        return make_result(c, "finite_y_equality", Status::counterexample,
                           equality_witness(c, "join_ps_quotient_eq_tau_pq",
                                            "join(tau_p,tau_s)_q", join_psq, "tau_pq",
                                            c.tau_pq.topology));
    }
    if (!(c.tau_pq.topology == c.viet.full)) {
        return make_result(c, "finite_y_equality", Status::counterexample,
                           equality_witness(c, "tau_pq_eq_tau_v", "tau_pq",
                                            c.tau_pq.topology, "tau_v", c.viet.full));
    }
    // d_H clause: T1 finite means discrete; the Hausdorff metric from the
    // unit metric on X must reproduce tau_v on the carrier.
    if (!(c.fam.space.topology == Topology::discrete(c.fam.space.size()))) {
        Json w;
        w["clause"] = "t1_finite_implies_discrete";
        w["family"] = family_to_json(c.fam);
        return make_result(c, "finite_y_equality", Status::counterexample, std::move(w));
    }
    const int n = c.fam.space.size();
    std::vector<double> unit(static_cast<std::size_t>(n) * static_cast<std::size_t>(n),
                             1.0);
    for (int i = 0; i < n; ++i) unit[static_cast<std::size_t>(i * n + i)] = 0.0;
    std::vector<std::string> labels;
    for (int i = 0; i < n; ++i) labels.push_back("x" + std::to_string(i));
    const FiniteMetricSpace mx = FiniteMetricSpace::from_matrix(labels, unit);
    const int m = static_cast<int>(c.fam.carrier.size());
    std::vector<double> hdist(static_cast<std::size_t>(m) * static_cast<std::size_t>(m),
                              0.0);
    std::vector<std::string> hlabels;
    for (int i = 0; i < m; ++i) {
        hlabels.push_back("C" + std::to_string(i));
        for (int j = 0; j < m; ++j)
            hdist[static_cast<std::size_t>(i * m + j)] =
                i == j ? 0.0
                       : hausdorff_distance(mx, c.fam.carrier[static_cast<std::size_t>(i)],
                                            c.fam.carrier[static_cast<std::size_t>(j)],
                                            HausdorffVariant::maxsup);
    }
    const FiniteMetricSpace mh = FiniteMetricSpace::from_matrix(hlabels, hdist);
    const Topology dh_topology = metric_topology(mh);
    if (!(dh_topology == c.viet.full)) {
        return make_result(c, "finite_y_equality", Status::counterexample,
                           equality_witness(c, "hausdorff_metric_topology_eq_tau_v",
                                            "tau_dH", dh_topology, "tau_v",
                                            c.viet.full));
    }
    return make_result(c, "finite_y_equality", Status::verified);
}

namespace {

// Restriction of q to the saturated set over image positions `b`:
// quotient of the subspace topology versus the subspace of `ambient_quotient`.
struct RestrictionSides {
    Topology left;   // quotient of (S, tau_p|S) along q|S
    Topology right;  // subspace of the ambient quotient topology on b
};

RestrictionSides restricted_quotient_sides(const InstanceContext& c, Mask b,
                                           const Topology& ambient_quotient) {
    const std::vector<int> cq = compact_q(c.fam, c.tau_pq.image);
    Mask s = 0;
    for (int f = 0; f < c.fam.size(); ++f)
        if (contains(b, cq[static_cast<std::size_t>(f)])) s |= bit(f);
    const std::vector<int> b_positions = mask_to_indices(b);
    const Topology sub_tp = subspace_topology(c.tau_p, s);
    std::vector<int> image_map;
    for_each_bit(s, [&](int f) {
        const int pos = cq[static_cast<std::size_t>(f)];
        const auto it =
            std::lower_bound(b_positions.begin(), b_positions.end(), pos);
        image_map.push_back(static_cast<int>(it - b_positions.begin()));
    });
    const SpaceMap restricted{static_cast<int>(popcount(s)),
                              static_cast<int>(b_positions.size()), image_map};
    return RestrictionSides{quotient_topology(restricted, sub_tp),
                            subspace_topology(ambient_quotient, b)};
}

}  // namespace

CheckResult verify_saturated_restriction(const InstanceContext& c, std::uint64_t seed) {
    const int k = static_cast<int>(c.tau_pq.image.size());
    const std::vector<int> cq = compact_q(c.fam, c.tau_pq.image);

    std::vector<Mask> candidates;
    if (k <= 8) {
        for (Mask b = 1; b < bit(k); ++b) candidates.push_back(b);
        candidates.push_back(full_mask(k));
    } else {
        // Deterministic sample: all singletons, the full set, and seeded picks.
        for (int i = 0; i < k; ++i) candidates.push_back(bit(i));
        candidates.push_back(full_mask(k));
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<std::uint64_t> dist(1, full_mask(k) - 1);
        for (int i = 0; i < 128; ++i) candidates.push_back(dist(rng));
        std::sort(candidates.begin(), candidates.end());
        candidates.erase(std::unique(candidates.begin(), candidates.end()),
                         candidates.end());
    }

    for (Mask b : candidates) {
        Mask s = 0;
        for (int f = 0; f < c.fam.size(); ++f)
            if (contains(b, cq[static_cast<std::size_t>(f)])) s |= bit(f);
        if (s == 0) continue;
        const bool open = c.tau_p.is_open(s);
        const bool closed = c.tau_p.is_open(~s & full_mask(c.fam.size()));
        if (!open && !closed) continue;
        const RestrictionSides sides = restricted_quotient_sides(c, b, c.tau_pq.topology);
        if (!(sides.left == sides.right)) {
            Json w = equality_witness(c, "restricted_quotient_eq_subspace_quotient",
                                      "quotient(tau_p|S)", sides.left,
                                      "tau_pq|q(S)", sides.right);
            w["image_positions"] = mask_to_json(b);
            Json classes = Json::array();
            for_each_bit(b, [&](int i) {
                classes.push_back(c.tau_pq.image[static_cast<std::size_t>(i)]);
            });
            w["carrier_indices"] = classes;
            w["saturated_kind"] = open ? "open" : "closed";
            return make_result(c, "saturated_restriction", Status::counterexample,
                               std::move(w));
        }
    }
    return make_result(c, "saturated_restriction", Status::verified);
}

CheckResult verify_fsn_restriction(const InstanceContext& c, int n) {
    if (n < 1) throw InvalidInput("fsn_restriction: n must be positive");
    const int m = static_cast<int>(c.fam.carrier.size());
    const Mask fsn = fs_n(c.fam.carrier, n);
    Json instance = instance_to_json(c.meta);
    instance["n"] = n;
    auto result = [&](Status status, Json witness) {
        CheckResult r;
        r.check = "fsn_restriction";
        r.instance = instance;
        r.status = status;
        r.witness = std::move(witness);
        return r;
    };

    if (!c.viet.full.is_open(~fsn & full_mask(m))) {
        Json w;
        w["fs_n"] = mask_to_json(fsn);
        w["closed_in_tau_v"] = false;
        return result(Status::hypothesis_not_met, std::move(w));
    }
    // Image positions whose carrier element lies in FS_n.
    Mask b = 0;
    for (std::size_t i = 0; i < c.tau_pq.image.size(); ++i)
        if (contains(fsn, c.tau_pq.image[i])) b |= bit(static_cast<int>(i));
    if (b == 0) {
        Json w;
        w["note"] = "restriction is empty";
        return result(Status::verified, std::move(w));
    }
    Mask carrier_sub = 0;
    for_each_bit(b, [&](int i) {
        carrier_sub |= bit(c.tau_pq.image[static_cast<std::size_t>(i)]);
    });
    const Topology tau_v_restricted = subspace_topology(c.viet.full, carrier_sub);
    const RestrictionSides sides = restricted_quotient_sides(c, b, c.tau_pq.topology);
    if (!(sides.left == tau_v_restricted)) {
        Json w = equality_witness(c, "fsn_quotient_eq_tau_v_restricted",
                                  "quotient(tau_p|S)", sides.left, "tau_v|FS_n",
                                  tau_v_restricted);
        w["n"] = n;
        w["fs_n"] = mask_to_json(fsn);
        return result(Status::counterexample, std::move(w));
    }
    if (!(sides.right == tau_v_restricted)) {
        Json w = equality_witness(c, "tau_pq_restricted_eq_tau_v_restricted",
                                  "tau_pq|FS_n", sides.right, "tau_v|FS_n",
                                  tau_v_restricted);
        w["n"] = n;
        w["fs_n"] = mask_to_json(fsn);
        return result(Status::counterexample, std::move(w));
    }
    return result(Status::verified, Json());
}

CheckResult verify_smallest_qlift(const InstanceContext& c, HyperChoice which,
                                  std::uint64_t seed, int samples) {
    const std::vector<int>& image = c.tau_pq.image;
    Topology tau0 = [&] {
        switch (which) {
            case HyperChoice::vietoris: return restrict_to_indices(c.viet.full, image);
            case HyperChoice::lower: return restrict_to_indices(c.viet.lower, image);
            case HyperChoice::upper: return restrict_to_indices(c.viet.upper, image);
            case HyperChoice::indiscrete:
                return Topology::indiscrete(static_cast<int>(image.size()));
        }
        throw InvalidInput("smallest_qlift: unknown topology choice");
    }();

    Json instance = instance_to_json(c.meta);
    instance["tau0"] = hyper_choice_name(which);
    auto result = [&](Status status, Json witness) {
        CheckResult r;
        r.check = "smallest_qlift";
        r.instance = instance;
        r.status = status;
        r.witness = std::move(witness);
        return r;
    };

    const SpaceMap onto_image{c.fam.size(), static_cast<int>(image.size()),
                              compact_q(c.fam, image)};
    const Topology lift = preimage_topology(onto_image, tau0);
    const Topology round_trip = quotient_over_q(c.fam, lift).topology;
    if (!(round_trip == tau0)) {
        Json w = equality_witness(c, "qlift_round_trip", "quotient(qinv(tau0))",
                                  round_trip, "tau0", tau0);
        w["tau0_name"] = hyper_choice_name(which);
        return result(Status::counterexample, std::move(w));
    }
    std::mt19937_64 rng(seed);
    for (int i = 0; i < samples; ++i) {
        const Topology noise = random_topology(c.fam.size(), rng);
        // Joined candidates realize the spec'd construction; the raw noise
        // candidates make the minimality claim non-vacuous.
        const Topology joined = join_topologies(lift, noise);
        for (const Topology* candidate : {&joined, &noise}) {
            if (!(quotient_over_q(c.fam, *candidate).topology == tau0)) continue;
            if (!topology_contained(lift, *candidate)) {
                Json w = equality_witness(c, "qlift_minimality", "qinv(tau0)", lift,
                                          "sampled_lift", *candidate);
                w["tau0_name"] = hyper_choice_name(which);
                w["tau0"] = topology_to_json(tau0);
                return result(Status::counterexample, std::move(w));
            }
        }
    }
    return result(Status::verified, Json());
}

CheckResult verify_pointwise_image_convergence(const InstanceContext& c,
                                               std::uint64_t seed, int samples) {
    if (!c.fam.all_of_xy) {
        Json w;
        w["reason"] = "family is not all of X^Y";
        return make_result(c, "pointwise_image_convergence", Status::hypothesis_not_met,
                           std::move(w));
    }
    const FiniteSpace& x = c.fam.space;
    const int n = x.size();
    const bool t1 = separation_axioms(x.topology).t1;

    // Limit Vietoris topology on all nonempty subsets of X (images need not
    // be closed). Carrier mask v corresponds to index v - 1.
    std::vector<Mask> pstar;
    for (Mask v = 1; v <= full_mask(n); ++v) pstar.push_back(v);
    std::vector<Mask> lower_sb, upper_sb;
    for (Mask o : x.topology.opens()) {
        lower_sb.push_back(lower_hit(pstar, o));
        upper_sb.push_back(upper_contained(pstar, o));
    }
    const int pn = static_cast<int>(pstar.size());
    const Topology pstar_v = join_topologies(generate_topology(pn, lower_sb),
                                             generate_topology(pn, upper_sb));

    auto image_mask = [&](int f) {
        Mask im = 0;
        for (int v : c.fam.tuples[static_cast<std::size_t>(f)]) im |= bit(v);
        return im;
    };

    struct Sequence {
        std::vector<int> prefix;
        std::vector<int> cycle;  // tuple indices
    };
    std::vector<Sequence> sequences;
    if (c.fam.size() <= 16) {
        for (int f = 0; f < c.fam.size(); ++f) sequences.push_back({{}, {f}});
    }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick(0, c.fam.size() - 1);
    std::uniform_int_distribution<int> prefix_len(0, 2);
    std::uniform_int_distribution<int> cycle_len(1, 3);
    for (int i = 0; i < samples; ++i) {
        Sequence s;
        const int pl = prefix_len(rng), cl = cycle_len(rng);
        for (int j = 0; j < pl; ++j) s.prefix.push_back(pick(rng));
        for (int j = 0; j < cl; ++j) s.cycle.push_back(pick(rng));
        sequences.push_back(std::move(s));
    }

    Json exploratory = Json::array();
    for (const Sequence& s : sequences) {
        for (int f = 0; f < c.fam.size(); ++f) {
            bool pointwise = true;
            for (int y = 0; y < c.meta.y_size && pointwise; ++y) {
                EventualSequence coord;
                for (int t : s.prefix)
                    coord.prefix.push_back(
                        c.fam.tuples[static_cast<std::size_t>(t)]
                                    [static_cast<std::size_t>(y)]);
                for (int t : s.cycle)
                    coord.cycle.push_back(
                        c.fam.tuples[static_cast<std::size_t>(t)]
                                    [static_cast<std::size_t>(y)]);
                pointwise = converges(
                    coord,
                    c.fam.tuples[static_cast<std::size_t>(f)][static_cast<std::size_t>(y)],
                    x.topology);
            }
            if (!pointwise) continue;

            auto fail = [&](const char* clause, const Topology& where) {
                Json w;
                w["clause"] = clause;
                w["family"] = family_to_json(c.fam);
                w["sequence_prefix"] = s.prefix;
                w["sequence_cycle"] = s.cycle;
                w["limit_tuple_index"] = f;
                w["topology"] = topology_to_json(where);
                return make_result(c, "pointwise_image_convergence",
                                   Status::counterexample, std::move(w));
            };

            EventualSequence images;
            for (int t : s.prefix)
                images.prefix.push_back(static_cast<int>(image_mask(t)) - 1);
            for (int t : s.cycle)
                images.cycle.push_back(static_cast<int>(image_mask(t)) - 1);
            if (!converges(images, static_cast<int>(image_mask(f)) - 1, pstar_v))
                return fail("images_converge_in_limit_vietoris", pstar_v);

            EventualSequence closures;
            for (int t : s.prefix) closures.prefix.push_back(c.fam.q_index[t]);
            for (int t : s.cycle) closures.cycle.push_back(c.fam.q_index[t]);
            if (!converges(closures, c.fam.q_index[f], c.viet.lower))
                return fail("closures_converge_in_tau_v_lower", c.viet.lower);

            const bool full_holds = converges(closures, c.fam.q_index[f], c.viet.full);
            if (t1) {
                if (!full_holds) return fail("closures_converge_in_tau_v", c.viet.full);
            } else if (!full_holds) {
                Json e;
                e["sequence_cycle"] = s.cycle;
                e["limit_tuple_index"] = f;
                e["closures_converge_in_tau_v"] = false;
                exploratory.push_back(std::move(e));
            }
        }
    }
    Json w;
    if (!exploratory.empty()) w["exploratory"] = std::move(exploratory);
    return make_result(c, "pointwise_image_convergence", Status::verified, std::move(w));
}

CheckResult verify_coset_realization(const CayleyTable& g, Mask subgroup) {
    if (!g.is_subgroup(subgroup)) throw InvalidInput("coset: not a subgroup");
    if (!g.is_normal(subgroup)) throw InvalidInput("coset: subgroup is not normal");
    const int n = g.order();
    std::vector<std::string> labels;
    for (int i = 0; i < n; ++i) labels.push_back("g" + std::to_string(i));
    const FiniteSpace x{labels, Topology::discrete(n)};
    const std::vector<int> h = mask_to_indices(subgroup);
    std::vector<std::vector<int>> tuples;
    for (int a = 0; a < n; ++a) {
        std::vector<int> t;
        for (int b : h) t.push_back(g.op(a, b));
        tuples.push_back(std::move(t));
    }
    const FunctionFamily fam =
        FunctionFamily::of(x, static_cast<int>(h.size()), std::move(tuples));

    std::vector<Mask> realized;
    for (int idx : fam.image_indices())
        realized.push_back(fam.carrier[static_cast<std::size_t>(idx)]);
    std::vector<Mask> expected = g.left_cosets(subgroup);

    Json instance;
    Json table = Json::array();
    for (int a = 0; a < n; ++a) {
        Json row = Json::array();
        for (int b = 0; b < n; ++b) row.push_back(g.op(a, b));
        table.push_back(std::move(row));
    }
    instance["group"] = {{"order", n}, {"table", table}};
    instance["subgroup"] = mask_to_json(subgroup);

    CheckResult r;
    r.check = "coset_realization";
    r.instance = std::move(instance);
    if (realized == expected) {
        r.status = Status::verified;
        return r;
    }
    r.status = Status::counterexample;
    Json w;
    w["clause"] = "q_image_equals_cosets";
    Json got = Json::array(), want = Json::array();
    for (Mask msk : realized) got.push_back(mask_to_json(msk));
    for (Mask msk : expected) want.push_back(mask_to_json(msk));
    w["realized"] = got;
    w["cosets"] = want;
    w["family"] = family_to_json(fam);
    r.witness = std::move(w);
    return r;
}

namespace {

struct PendingInstance {
    FiniteSpace space;
    int y_size = 0;
    bool family_all = true;
    std::vector<std::vector<int>> tuples;
    int x_topology_id = -1;
};

std::vector<std::string> letter_labels(int n) {
    static const char* names[] = {"a", "b", "c", "d", "e"};
    std::vector<std::string> labels;
    for (int i = 0; i < n; ++i)
        labels.push_back(i < 5 ? names[i] : "x" + std::to_string(i));
    return labels;
}

void run_instance_checks(const InstanceContext& ctx, const SuiteConfig& cfg,
                         std::uint64_t instance_seed, std::vector<CheckResult>& out) {
    auto timed = [&](auto&& fn) {
        if (!cfg.timing) {
            out.push_back(fn());
            return;
        }
        const auto start = std::chrono::steady_clock::now();
        CheckResult r = fn();
        r.ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::steady_clock::now() - start)
                   .count();
        out.push_back(std::move(r));
    };

    timed([&] { return verify_lower_quotient(ctx, cfg.inject_fault); });
    if (ctx.meta.y_size >= 2) timed([&] { return verify_lower_strictness(ctx); });
    timed([&] { return verify_upper_quotient(ctx); });
    timed([&] { return verify_vietoris_join(ctx); });
    timed([&] { return verify_finite_y_equality(ctx); });
    timed([&] {
        return verify_saturated_restriction(ctx, splitmix64(instance_seed ^ 1));
    });
    for (int n = 1; n <= ctx.meta.x_size; ++n)
        timed([&] { return verify_fsn_restriction(ctx, n); });
    for (HyperChoice which : {HyperChoice::vietoris, HyperChoice::lower,
                              HyperChoice::upper, HyperChoice::indiscrete}) {
        timed([&] {
            return verify_smallest_qlift(
                ctx, which,
                splitmix64(instance_seed ^ (2 + static_cast<std::uint64_t>(which))),
                cfg.qlift_samples);
        });
    }
    timed([&] {
        return verify_pointwise_image_convergence(ctx, splitmix64(instance_seed ^ 7),
                                                  cfg.pointwise_samples);
    });
}

int thread_budget(std::size_t work_items) {
    unsigned n = std::thread::hardware_concurrency();
    if (n == 0) n = 1;
    if (const char* env = std::getenv("HYPERQUOT_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end == env || *end != '\0' || v < 1)
            throw InvalidInput("HYPERQUOT_THREADS must be a positive integer");
        n = static_cast<unsigned>(v);
    }
    if (static_cast<std::size_t>(n) > work_items) n = static_cast<unsigned>(work_items);
    return static_cast<int>(n == 0 ? 1 : n);
}

}  // namespace

Json report_to_json(const Report& r) {
    Json j;
    j["config"] = r.config;
    Json results = Json::array();
    for (const CheckResult& cr : r.results) results.push_back(result_to_json(cr));
    j["results"] = std::move(results);
    Json summary;
    for (Status s : {Status::verified, Status::counterexample,
                     Status::hypothesis_not_met, Status::strictness_witnessed,
                     Status::strictness_not_witnessed})
        summary[status_name(s)] = 0;
    for (const CheckResult& cr : r.results) {
        auto& slot = summary[status_name(cr.status)];
        slot = slot.get<int>() + 1;
    }
    j["summary"] = std::move(summary);
    return j;
}

int report_exit_code(const Report& r) {
    for (const CheckResult& cr : r.results)
        if (cr.status == Status::counterexample) return 1;
    return 0;
}

Report run_suite(const SuiteConfig& cfg) {
    if (cfg.max_x < 1 || cfg.max_x > 5)
        throw InvalidInput("cap exceeded: max_x must be within 1..5");
    if (cfg.max_y < 1 || cfg.max_y > 3)
        throw InvalidInput("cap exceeded: max_y must be within 1..3");
    if (cfg.qlift_samples < 0 || cfg.pointwise_samples < 0 || cfg.sample_x5_count < 0)
        throw InvalidInput("sample counts must be non-negative");

    std::vector<PendingInstance> pending;
    auto push_grid_instances = [&](const FiniteSpace& space, int id) {
        const int n = space.size();
        for (int y = 1; y <= cfg.max_y; ++y) {
            bool fits = true;
            try {
                tuple_count(n, y);
            } catch (const InstanceTooLarge&) {
                fits = false;
            }
            if (!fits) continue;
            pending.push_back({space, y, true, {}, id});
            if (cfg.explicit_probes && n >= 2 && y >= 2) {
                std::vector<std::vector<int>> diag;
                for (int v = 0; v < n; ++v)
                    diag.push_back(std::vector<int>(static_cast<std::size_t>(y), v));
                pending.push_back({space, y, false, std::move(diag), id});
                std::vector<int> single;
                for (int k = 0; k < y; ++k) single.push_back(k % n);
                pending.push_back({space, y, false, {single}, id});
            }
        }
    };

    for (int n = 1; n <= std::min(cfg.max_x, 4); ++n) {
        const std::vector<Topology> all = enumerate_topologies(n);
        for (std::size_t id = 0; id < all.size(); ++id)
            push_grid_instances(FiniteSpace{letter_labels(n), all[id]},
                                static_cast<int>(id));
    }
    if (cfg.max_x >= 5 && cfg.sample_x5) {
        const std::vector<Topology> sampled =
            sample_topologies(5, cfg.sample_x5_count, cfg.seed);
        for (const Topology& t : sampled)
            push_grid_instances(FiniteSpace{letter_labels(5), t}, -1);
    }
    for (const Json& fj : cfg.explicit_families) {
        FunctionFamily fam = family_from_json(fj);
        pending.push_back(
            {fam.space, fam.y_size, fam.all_of_xy, fam.tuples, -1});
    }

    std::vector<std::vector<CheckResult>> slots(pending.size());
    const int nthreads = pending.empty() ? 1 : thread_budget(pending.size());
    auto worker = [&](int tid) {
        for (std::size_t i = static_cast<std::size_t>(tid); i < pending.size();
             i += static_cast<std::size_t>(nthreads)) {
            const PendingInstance& p = pending[i];
            const InstanceContext ctx = make_instance_context(
                p.space, p.y_size, p.family_all, p.tuples, p.x_topology_id);
            run_instance_checks(ctx, cfg, splitmix64(cfg.seed ^ (i + 1)), slots[i]);
        }
    };
    if (nthreads <= 1) {
        worker(0);
    } else {
        std::vector<std::thread> threads;
        for (int t = 0; t < nthreads; ++t) threads.emplace_back(worker, t);
        for (std::thread& t : threads) t.join();
    }

    Report report;
    report.config = {{"max_x", cfg.max_x},
                     {"max_y", cfg.max_y},
                     {"seed", cfg.seed},
                     {"timing", cfg.timing},
                     {"sample_x5", cfg.sample_x5},
                     {"sample_x5_count", cfg.sample_x5_count},
                     {"inject_fault", cfg.inject_fault},
                     {"qlift_samples", cfg.qlift_samples},
                     {"pointwise_samples", cfg.pointwise_samples},
                     {"explicit_probes", cfg.explicit_probes},
                     {"explicit_families", cfg.explicit_families.size()}};
    for (std::vector<CheckResult>& slot : slots)
        for (CheckResult& r : slot) report.results.push_back(std::move(r));

    const CayleyTable z6 = CayleyTable::cyclic(6);
    report.results.push_back(verify_coset_realization(z6, bit(0) | bit(2) | bit(4)));
    report.results.push_back(verify_coset_realization(z6, full_mask(6)));
    report.results.push_back(verify_coset_realization(z6, bit(0)));
    return report;
}

}  // namespace hyperquot
