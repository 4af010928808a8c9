#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hyperquot/group.hpp"
#include "hyperquot/hyperspace.hpp"
#include "hyperquot/json_io.hpp"

namespace hyperquot {

enum class Status {
    verified,
    counterexample,
    hypothesis_not_met,
    strictness_witnessed,
    strictness_not_witnessed,
};
const char* status_name(Status s);

// Grid instance identity. x_topology_id indexes the canonical enumeration of
// topologies on x_size points; -1 marks spaces that came from a file or a
// sampler rather than the enumeration.
struct Instance {
    int x_topology_id = -1;
    int x_size = 0;
    int y_size = 0;
    bool family_all = true;
    std::vector<std::vector<int>> tuples;  // when !family_all
};
Json instance_to_json(const Instance& inst);

struct CheckResult {
    std::string check;
    Json instance;
    Status status = Status::verified;
    Json witness;  // null unless the status needs evidence
    std::int64_t ms = 0;
};
Json result_to_json(const CheckResult& r);

// Everything the per-theorem checks share for one instance: the family, the
// function-space topologies, the hyperspace topologies, and both quotients.
struct InstanceContext {
    Instance meta;
    FunctionFamily fam;
    Topology tau_p;  // product topology on F
    Topology tau_s;  // symmetric-convergence topology on F
    VietorisTopologies viet;
    QuotientOverQ tau_pq;
    QuotientOverQ tau_sq;
};
InstanceContext make_instance_context(const FiniteSpace& x, int y_size,
                                      bool family_all,
                                      std::vector<std::vector<int>> tuples,
                                      int x_topology_id);

// tau_pq = tau_v^- on the carrier, gated on q-full + finitely q-stable.
// inject_fault is the test-only perturbation: it deliberately replaces the
// computed quotient with the indiscrete topology before the comparison.
CheckResult verify_lower_quotient(const InstanceContext& c, bool inject_fault = false);

// Search for a tau_p-open set outside q^{-1}(tau_v^-); needs y_size >= 2.
CheckResult verify_lower_strictness(const InstanceContext& c);

// tau_sq = tau_v^+ (gated on q-full) and tau_s = q^{-1}(tau_v^+) (identity).
CheckResult verify_upper_quotient(const InstanceContext& c);

// join(tau_pq, tau_sq) = tau_v and tau_v inside the quotient of
// join(tau_p, tau_s); gated on q-full + finitely q-stable.
CheckResult verify_vietoris_join(const InstanceContext& c);

// For T1 X: tau_s inside tau_p, the join quotient and tau_pq and tau_v all
// agree, and the Hausdorff-metric topology on the carrier (unit metric on X)
// reproduces tau_v. Non-T1 instances record the equality as exploratory data.
CheckResult verify_finite_y_equality(const InstanceContext& c);

// Restriction of q to every q-saturated tau_p-open and tau_p-closed subset
// stays a quotient map onto its image with subspace topologies. Exhaustive
// over saturated sets on small images, seeded sampling above that.
CheckResult verify_saturated_restriction(const InstanceContext& c, std::uint64_t seed);

// Restriction of q over FS_n: gate is FS_n closed in (carrier, tau_v); then
// the restricted map is a quotient map onto (FS_n, tau_v) and the restricted
// tau_pq equals the restricted tau_v.
CheckResult verify_fsn_restriction(const InstanceContext& c, int n);

enum class HyperChoice { vietoris, lower, upper, indiscrete };
const char* hyper_choice_name(HyperChoice h);

// q^{-1}(tau_0) round-trips through the quotient and is contained in every
// sampled q-lift of tau_0 (joined lifts per the construction, plus
// independent random candidates filtered by the q-lift property).
CheckResult verify_smallest_qlift(const InstanceContext& c, HyperChoice which,
                                  std::uint64_t seed, int samples);

// Pointwise-convergent eventually-cyclic sequences in F = X^Y: images
// converge in the limit Vietoris topology on nonempty subsets, closures
// converge in tau_v^-, and for T1 X in full tau_v (recorded as exploratory
// data otherwise).
CheckResult verify_pointwise_image_convergence(const InstanceContext& c,
                                               std::uint64_t seed, int samples);

// q over the left-translation family Lt(H,G) realizes G/H. Non-normal or
// non-subgroup masks are invalid input.
CheckResult verify_coset_realization(const CayleyTable& g, Mask subgroup);

struct SuiteConfig {
    int max_x = 3;
    int max_y = 3;
    std::uint64_t seed = 0;
    bool timing = false;     // when false every "ms" is 0 and reports are byte-stable
    bool sample_x5 = false;  // add sampled 5-point spaces (y_size capped by tuples <= 64)
    int sample_x5_count = 10;
    bool inject_fault = false;  // test-only: perturb the lower-quotient comparison
    int qlift_samples = 20;
    int pointwise_samples = 8;
    bool explicit_probes = true;  // canonical non-full families alongside F = X^Y
    std::vector<Json> explicit_families;  // extra FunctionFamily JSON objects
};

struct Report {
    Json config;
    std::vector<CheckResult> results;
};
Json report_to_json(const Report& r);
// 1 when any result is a counterexample, else 0.
int report_exit_code(const Report& r);

// Runs every check over the instance grid plus the fixed group instances.
// Deterministic given the config; HYPERQUOT_THREADS caps worker threads.
Report run_suite(const SuiteConfig& cfg);

}  // namespace hyperquot
