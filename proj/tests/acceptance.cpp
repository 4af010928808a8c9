// Acceptance gate: runs the twelve headline criteria end to end and prints
// one [PASS]/[FAIL] line each. The exit code is the number of failures, so
// the binary doubles as a CI gate. Criteria that quantify over a grid are
// recomputed here through the core modules, not trusted from the verifier.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "hyperquot/group.hpp"
#include "hyperquot/hyperspace.hpp"
#include "hyperquot/json_io.hpp"
#include "hyperquot/metric.hpp"
#include "hyperquot/topology.hpp"
#include "hyperquot/verifier.hpp"
#include "hyperquot/witness_replay.hpp"

using namespace hyperquot;

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
        .count();
}

FiniteSpace plain_space(const Topology& t) {
    std::vector<std::string> labels;
    for (int i = 0; i < t.carrier_size(); ++i) labels.push_back("p" + std::to_string(i));
    return {labels, t};
}

// True when every open of `coarse` is open in `fine`.
bool contained_in(const Topology& coarse, const Topology& fine) {
    for (int x = 0; x < coarse.carrier_size(); ++x)
        if (!is_subset(fine.nbhd(x), coarse.nbhd(x))) return false;
    return true;
}

// ---- criterion 1: tau_pq = tau_v^- over the whole grid ----------------------

bool lower_quotient_criterion(std::string& detail) {
    const auto start = std::chrono::steady_clock::now();
    int instances = 0, failures = 0;
    for (int n = 1; n <= 3; ++n)
        for (const Topology& t : enumerate_topologies(n))
            for (int y = 1; y <= 3; ++y) {
                const InstanceContext c =
                    make_instance_context(plain_space(t), y, true, {}, -1);
                ++instances;
                if (!(c.tau_pq.topology == c.viet.lower)) ++failures;
            }
    const double secs = seconds_since(start);
    std::ostringstream out;
    out << instances << " instances, " << failures << " mismatches, "
        << secs << "s";
    detail = out.str();
    return failures == 0 && secs < 10.0;
}

// ---- criterion 2: tau_sq = tau_v^+ and tau_s = q^{-1}(tau_v^+) --------------

bool upper_quotient_criterion(std::string& detail) {
    const auto start = std::chrono::steady_clock::now();
    int instances = 0, failures = 0;
    for (int n = 1; n <= 3; ++n)
        for (const Topology& t : enumerate_topologies(n))
            for (int y = 1; y <= 3; ++y) {
                const InstanceContext c =
                    make_instance_context(plain_space(t), y, true, {}, -1);
                ++instances;
                const bool quotient_ok = c.tau_sq.topology == c.viet.upper;
                const bool pullback_ok =
                    c.tau_s == preimage_under_q(c.fam, c.viet.upper);
                if (!quotient_ok || !pullback_ok) ++failures;
            }
    const double secs = seconds_since(start);
    std::ostringstream out;
    out << instances << " instances, " << failures << " mismatches, "
        << secs << "s";
    detail = out.str();
    return failures == 0 && secs < 10.0;
}

// ---- criterion 3: join(tau_pq, tau_sq) = tau_v; tau_v inside the join quotient

bool join_criterion(std::string& detail) {
    int instances = 0, failures = 0;
    for (int n = 1; n <= 3; ++n)
        for (const Topology& t : enumerate_topologies(n))
            for (int y = 1; y <= 3; ++y) {
                const InstanceContext c =
                    make_instance_context(plain_space(t), y, true, {}, -1);
                ++instances;
                const bool join_ok =
                    join_topologies(c.tau_pq.topology, c.tau_sq.topology) ==
                    c.viet.full;
                const Topology join_quotient =
                    quotient_over_q(c.fam, join_topologies(c.tau_p, c.tau_s)).topology;
                const bool inside_ok = contained_in(c.viet.full, join_quotient);
                if (!join_ok || !inside_ok) ++failures;
            }
    std::ostringstream out;
    out << instances << " instances, " << failures << " mismatches";
    detail = out.str();
    return failures == 0;
}

// ---- criterion 4: equality chain for T1 (discrete) X ------------------------

bool t1_equality_criterion(std::string& detail) {
    int instances = 0, failures = 0;
    for (int n = 1; n <= 3; ++n)
        for (int y = 1; y <= 3; ++y) {
            const InstanceContext c = make_instance_context(
                plain_space(Topology::discrete(n)), y, true, {}, -1);
            ++instances;
            const bool s_in_p = contained_in(c.tau_s, c.tau_p);
            const Topology join_quotient =
                quotient_over_q(c.fam, join_topologies(c.tau_p, c.tau_s)).topology;
            const bool chain = join_quotient == c.tau_pq.topology &&
                               c.tau_pq.topology == c.viet.full;
            if (!s_in_p || !chain) ++failures;
        }
    std::ostringstream out;
    out << instances << " instances, " << failures << " mismatches";
    detail = out.str();
    return failures == 0;
}

// ---- criterion 5: strictness witnesses on discrete non-trivial instances ----

bool strictness_criterion(std::string& detail) {
    int instances = 0, witnessed = 0, checked = 0;
    for (int n = 2; n <= 3; ++n)
        for (int y = 2; y <= 3; ++y) {
            const InstanceContext c = make_instance_context(
                plain_space(Topology::discrete(n)), y, true, {}, -1);
            ++instances;
            const CheckResult r = verify_lower_strictness(c);
            if (r.status != Status::strictness_witnessed || !r.witness.is_object())
                continue;
            ++witnessed;
            // Re-check the emitted open set through the core modules.
            Mask s = 0;
            for (int i : r.witness.at("tuple_set").get<std::vector<int>>()) s |= bit(i);
            const Topology qinv = preimage_under_q(c.fam, c.viet.lower);
            if (c.tau_p.is_open(s) && !qinv.is_open(s)) ++checked;
        }
    std::ostringstream out;
    out << witnessed << "/" << instances << " witnessed, " << checked
        << " witnesses re-validated";
    detail = out.str();
    return witnessed == instances && checked == instances;
}

// ---- criterion 6: Hausdorff formula agreement and metric axioms -------------

FiniteMetricSpace random_point_metric(std::mt19937_64& rng, int n) {
    std::uniform_real_distribution<double> coord(-8.0, 8.0);
    std::vector<std::vector<double>> pts;
    for (int i = 0; i < n; ++i)
        pts.push_back({coord(rng), coord(rng), coord(rng)});
    return FiniteMetricSpace::from_points(
        std::vector<std::string>(static_cast<std::size_t>(n), "p"), pts);
}

Mask random_nonempty(std::mt19937_64& rng, int n) {
    Mask m = 0;
    for (int i = 0; i < n; ++i)
        if (rng() & 1) m |= bit(i);
    if (m == 0) m = bit(static_cast<int>(rng() % static_cast<std::uint64_t>(n)));
    return m;
}

bool hausdorff_agreement_criterion(std::string& detail) {
    std::mt19937_64 rng(20260816);
    int agreements = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 63);  // up to 64 points
        const FiniteMetricSpace m = random_point_metric(rng, n);
        const std::array<double, 4> v =
            hausdorff_all(m, random_nonempty(rng, n), random_nonempty(rng, n));
        double lo = v[0], hi = v[0];
        for (double x : v) {
            lo = std::min(lo, x);
            hi = std::max(hi, x);
        }
        if (hi - lo <= 1e-12) ++agreements;
    }

    // Metric axioms of d_H, exhaustively over subset pairs on small carriers.
    int axiom_failures = 0;
    for (int n = 1; n <= 6; ++n) {
        const FiniteMetricSpace m = random_point_metric(rng, n);
        const int subsets = (1 << n) - 1;
        std::vector<std::vector<double>> dh(
            static_cast<std::size_t>(subsets),
            std::vector<double>(static_cast<std::size_t>(subsets), 0.0));
        for (int a = 0; a < subsets; ++a)
            for (int b = 0; b < subsets; ++b)
                dh[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] =
                    hausdorff_distance(m, static_cast<Mask>(a + 1),
                                       static_cast<Mask>(b + 1),
                                       HausdorffVariant::maxsup);
        for (int a = 0; a < subsets; ++a)
            for (int b = 0; b < subsets; ++b) {
                const double dab = dh[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
                if (a == b && dab != 0.0) ++axiom_failures;
                if (a != b && dab <= 0.0) ++axiom_failures;
                if (dab != dh[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)])
                    ++axiom_failures;
                for (int c = 0; c < subsets; ++c)
                    if (dab > dh[static_cast<std::size_t>(a)][static_cast<std::size_t>(c)] +
                                  dh[static_cast<std::size_t>(c)][static_cast<std::size_t>(b)] +
                                  1e-12)
                        ++axiom_failures;
            }
    }
    std::ostringstream out;
    out << agreements << "/1000 quadruples agree, " << axiom_failures
        << " axiom violations";
    detail = out.str();
    return agreements == 1000 && axiom_failures == 0;
}

// ---- criterion 7: d_H^q vanishes exactly on equal q-images ------------------

bool pseudometric_criterion(std::string& detail) {
    int pairs = 0, failures = 0;
    for (int n = 1; n <= 3; ++n) {
        std::vector<double> unit(static_cast<std::size_t>(n) * static_cast<std::size_t>(n),
                                 1.0);
        for (int i = 0; i < n; ++i)
            unit[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) +
                 static_cast<std::size_t>(i)] = 0.0;
        const FiniteMetricSpace m = FiniteMetricSpace::from_matrix(
            std::vector<std::string>(static_cast<std::size_t>(n), "p"), std::move(unit));
        for (int y = 1; y <= 2; ++y) {
            const FunctionFamily fam =
                FunctionFamily::all(plain_space(Topology::discrete(n)), y);
            for (int f = 0; f < fam.size(); ++f)
                for (int g = 0; g < fam.size(); ++g) {
                    ++pairs;
                    const bool zero = dq_pseudometric(m, fam, f, g) <= 1e-12;
                    const bool same_class =
                        fam.q_index[static_cast<std::size_t>(f)] ==
                        fam.q_index[static_cast<std::size_t>(g)];
                    if (zero != same_class) ++failures;
                }
        }
    }
    std::ostringstream out;
    out << pairs << " pairs, " << failures << " violations";
    detail = out.str();
    return failures == 0;
}

// ---- criterion 8: convergence coherence over 2-cyclic sequences -------------

bool coherence_criterion(std::string& detail) {
    std::mt19937_64 rng(77);
    int sequences = 0, violations = 0;
    for (int n = 1; n <= 4; ++n) {
        std::vector<FiniteMetricSpace> metrics;
        // Unit distances, collinear points, and a random cloud.
        std::vector<double> unit(static_cast<std::size_t>(n) * static_cast<std::size_t>(n),
                                 1.0);
        for (int i = 0; i < n; ++i)
            unit[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) +
                 static_cast<std::size_t>(i)] = 0.0;
        metrics.push_back(FiniteMetricSpace::from_matrix(
            std::vector<std::string>(static_cast<std::size_t>(n), "p"), std::move(unit)));
        std::vector<std::vector<double>> line;
        for (int i = 0; i < n; ++i) line.push_back({static_cast<double>(i)});
        metrics.push_back(FiniteMetricSpace::from_points(
            std::vector<std::string>(static_cast<std::size_t>(n), "p"), line));
        metrics.push_back(random_point_metric(rng, n));
        for (const FiniteMetricSpace& m : metrics) {
            const Mask limit_cap = full_mask(n);
            for (Mask s1 = 1; s1 <= limit_cap; ++s1)
                for (Mask s2 = 1; s2 <= limit_cap; ++s2)
                    for (Mask a = 1; a <= limit_cap; ++a)
                        for (int with_prefix = 0; with_prefix < 2; ++with_prefix) {
                            SubsetSequence seq;
                            if (with_prefix) seq.prefix = {limit_cap};
                            seq.cycle = {s1, s2};
                            ++sequences;
                            const bool dh = dh_converges(m, seq, a, 0.0);
                            const bool both = centrally_converges(m, seq, a) &&
                                              marginally_converges(m, seq, a);
                            if (dh != both) ++violations;
                        }
        }
    }
    std::ostringstream out;
    out << sequences << " sequences, " << violations << " violations";
    detail = out.str();
    return violations == 0;
}

// ---- criterion 9: coset realization ------------------------------------------

bool coset_criterion(std::string& detail) {
    const CayleyTable z6 = CayleyTable::cyclic(6);
    const Mask h = bit(0) | bit(2) | bit(4);

    // Independent realization through the hyperspace machinery.
    const FiniteSpace g_space = plain_space(Topology::discrete(6));
    std::vector<std::vector<int>> tuples;
    for (int a = 0; a < 6; ++a) {
        std::vector<int> t;
        for (int b : mask_to_indices(h)) t.push_back(z6.op(a, b));
        tuples.push_back(std::move(t));
    }
    const FunctionFamily lt = FunctionFamily::of(g_space, 3, std::move(tuples));
    std::vector<Mask> realized;
    for (int idx : lt.image_indices())
        realized.push_back(lt.carrier[static_cast<std::size_t>(idx)]);
    const std::vector<Mask> expected = {bit(0) | bit(2) | bit(4),
                                        bit(1) | bit(3) | bit(5)};
    const bool partition_ok = realized == expected;

    const bool main_ok = verify_coset_realization(z6, h).status == Status::verified;
    const bool whole_ok =
        verify_coset_realization(z6, full_mask(6)).status == Status::verified;
    const bool trivial_ok =
        verify_coset_realization(z6, bit(0)).status == Status::verified;

    // H = {e}: the realized carrier is all six singletons, a copy of G.
    const FunctionFamily singletons = FunctionFamily::of(
        g_space, 1,
        {{0}, {1}, {2}, {3}, {4}, {5}});
    const bool singleton_ok = singletons.q_full &&
                              static_cast<int>(singletons.carrier.size()) == 6;

    std::ostringstream out;
    out << "partition " << (partition_ok ? "exact" : "wrong") << "; edge cases "
        << (whole_ok && trivial_ok && singleton_ok ? "hold" : "broken");
    detail = out.str();
    return partition_ok && main_ok && whole_ok && trivial_ok && singleton_ok;
}

// ---- criterion 10: enumeration oracle ---------------------------------------

// Independent count: test every family of subsets for the topology axioms.
int brute_count(int n) {
    const int subsets = 1 << n;
    int count = 0;
    for (std::uint32_t fam = 0; fam < (1u << subsets); ++fam) {
        const auto has = [&](Mask s) { return (fam >> s) & 1u; };
        if (!has(0) || !has(full_mask(n))) continue;
        bool closed = true;
        for (Mask a = 0; closed && a < static_cast<Mask>(subsets); ++a) {
            if (!has(a)) continue;
            for (Mask b = a + 1; b < static_cast<Mask>(subsets); ++b)
                if (has(b) && (!has(a | b) || !has(a & b))) {
                    closed = false;
                    break;
                }
        }
        if (closed) ++count;
    }
    return count;
}

bool enumeration_criterion(bool with_n4, std::string& detail) {
    const auto start = std::chrono::steady_clock::now();
    const int expected[] = {1, 4, 29, 355};
    bool ok = true;
    std::ostringstream out;
    const int top = with_n4 ? 4 : 3;
    for (int n = 1; n <= top; ++n) {
        const int brute = brute_count(n);
        const int catalog = static_cast<int>(enumerate_topologies(n).size());
        if (brute != expected[n - 1] || catalog != expected[n - 1]) ok = false;
        out << "n=" << n << ":" << brute << "/" << catalog << " ";
    }
    const double secs = seconds_since(start);
    if (!with_n4) out << "(n=4 skipped; pass --with-n4) ";
    out << secs << "s";
    detail = out.str();
    return ok && (!with_n4 || secs < 300.0);
}

// ---- criterion 11: saturated and FS_n restrictions --------------------------

bool restriction_criterion(std::string& detail) {
    int saturated_failures = 0, fsn_failures = 0, rows = 0;
    for (int n = 1; n <= 3; ++n)
        for (const Topology& t : enumerate_topologies(n))
            for (int y = 1; y <= 3; ++y) {
                const InstanceContext c =
                    make_instance_context(plain_space(t), y, true, {}, -1);
                ++rows;
                if (verify_saturated_restriction(c, 17).status ==
                    Status::counterexample)
                    ++saturated_failures;
                for (int bound = 1; bound <= n; ++bound)
                    if (verify_fsn_restriction(c, bound).status ==
                        Status::counterexample)
                        ++fsn_failures;
            }
    std::ostringstream out;
    out << rows << " instances; saturated failures " << saturated_failures
        << ", fs_n failures " << fsn_failures;
    detail = out.str();
    return saturated_failures == 0 && fsn_failures == 0;
}

// ---- criterion 12: fault injection is caught and replayable -----------------

int run_cli(const std::string& args) {
    const std::string cmd = std::string(HYPERQUOT_CLI_PATH) + " " + args;
    const int raw = std::system(cmd.c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

bool fault_injection_criterion(std::string& detail) {
    const std::string control_path = "/tmp/hyperquot_acceptance_control.json";
    const std::string faulted_path = "/tmp/hyperquot_acceptance_faulted.json";
    const int control_exit =
        run_cli("verify --max-x 2 --max-y 1 -o " + control_path + " > /dev/null 2>&1");
    const int faulted_exit = run_cli("verify --max-x 2 --max-y 1 --inject-fault -o " +
                                     faulted_path + " > /dev/null 2>&1");
    bool replayed = false;
    int counterexamples = 0;
    if (faulted_exit == 1) {
        const Json report = load_json_file(faulted_path);
        for (const Json& row : report.at("results")) {
            if (row.at("check") != "lower_quotient" ||
                row.at("status") != "counterexample")
                continue;
            ++counterexamples;
            if (!replayed) {
                const ReplayOutcome out = replay_witness(row);
                replayed = out.replayed_status == "counterexample" && out.sides_differ;
            }
        }
    }
    std::remove(control_path.c_str());
    std::remove(faulted_path.c_str());
    std::ostringstream out;
    out << "control exit " << control_exit << ", faulted exit " << faulted_exit
        << ", " << counterexamples << " flipped rows, replay "
        << (replayed ? "reproduced" : "failed");
    detail = out.str();
    return control_exit == 0 && faulted_exit == 1 && counterexamples > 0 && replayed;
}

}  // namespace

int main(int argc, char** argv) {
    bool with_n4 = false;
    for (int i = 1; i < argc; ++i)
        if (std::strcmp(argv[i], "--with-n4") == 0) with_n4 = true;

    int failures = 0;
    int index = 0;
    const auto report = [&](const char* name, bool pass, const std::string& detail) {
        ++index;
        std::printf("[%s] %2d. %s: %s\n", pass ? "PASS" : "FAIL", index, name,
                    detail.c_str());
        if (!pass) ++failures;
    };

    std::string detail;
    report("lower-quotient equality on the full grid",
           lower_quotient_criterion(detail), detail);
    report("upper-quotient equality and pullback", upper_quotient_criterion(detail),
           detail);
    report("join realization of the Vietoris topology", join_criterion(detail),
           detail);
    report("T1 equality chain", t1_equality_criterion(detail), detail);
    report("lower-bound strictness witnesses", strictness_criterion(detail), detail);
    report("Hausdorff formula agreement and axioms",
           hausdorff_agreement_criterion(detail), detail);
    report("quotient pseudometric kernel", pseudometric_criterion(detail), detail);
    report("convergence coherence", coherence_criterion(detail), detail);
    report("coset realization", coset_criterion(detail), detail);
    report("enumeration oracle", enumeration_criterion(with_n4, detail), detail);
    report("saturated and FS_n restrictions", restriction_criterion(detail), detail);
    report("fault injection visibility", fault_injection_criterion(detail), detail);

    std::printf("%d of 12 criteria passed\n", 12 - failures);
    return failures;
}
