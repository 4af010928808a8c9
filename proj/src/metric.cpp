#include "hyperquot/metric.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "hyperquot/errors.hpp"
#include "hyperquot/hyperspace.hpp"
#include "hyperquot/kernels.hpp"

namespace hyperquot {

namespace {

void check_metric_axioms(const std::vector<double>& dist, int n) {
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double dij = dist[static_cast<std::size_t>(i * n + j)];
            if (!std::isfinite(dij)) throw InvalidInput("metric: non-finite distance");
            if (dij < -kMetricTol) throw InvalidInput("metric: negative distance");
            if (i == j && std::abs(dij) > kMetricTol)
                throw InvalidInput("metric: nonzero diagonal");
            if (i != j && dij <= kMetricTol)
                throw InvalidInput("metric: distinct points at zero distance");
            const double dji = dist[static_cast<std::size_t>(j * n + i)];
            if (std::abs(dij - dji) > kMetricTol)
                throw InvalidInput("metric: asymmetric distance");
            for (int k = 0; k < n; ++k) {
                const double dik = dist[static_cast<std::size_t>(i * n + k)];
                const double dkj = dist[static_cast<std::size_t>(k * n + j)];
                if (dij > dik + dkj + kMetricTol)
                    throw InvalidInput("metric: triangle inequality violated");
            }
        }
    }
}

}  // namespace

FiniteMetricSpace FiniteMetricSpace::from_matrix(std::vector<std::string> labels,
                                                 std::vector<double> dist) {
    const int n = static_cast<int>(labels.size());
    if (n < 1 || n > kCarrierLimit) throw InvalidInput("metric: carrier size out of range");
    if (dist.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n))
        throw InvalidInput("metric: distance matrix size mismatch");
    check_metric_axioms(dist, n);
    return FiniteMetricSpace(std::move(labels), std::move(dist), n);
}

FiniteMetricSpace FiniteMetricSpace::from_points(
    std::vector<std::string> labels, const std::vector<std::vector<double>>& coords) {
    const int n = static_cast<int>(labels.size());
    if (n < 1 || n > kCarrierLimit) throw InvalidInput("metric: carrier size out of range");
    if (coords.size() != static_cast<std::size_t>(n))
        throw InvalidInput("metric: coordinate count mismatch");
    const std::size_t dim = coords.empty() ? 0 : coords[0].size();
    for (const auto& c : coords)
        if (c.size() != dim) throw InvalidInput("metric: ragged coordinates");

    std::vector<double> dist(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < dim; ++k) {
                const double diff = coords[static_cast<std::size_t>(i)][k] -
                                    coords[static_cast<std::size_t>(j)][k];
                s += diff * diff;
            }
            const double dij = std::sqrt(s);
            dist[static_cast<std::size_t>(i * n + j)] = dij;
            dist[static_cast<std::size_t>(j * n + i)] = dij;
        }
    }
    // Coincident points would make this a pseudometric; reject them the same
    // way an explicit matrix would be rejected.
    check_metric_axioms(dist, n);
    return FiniteMetricSpace(std::move(labels), std::move(dist), n);
}

double point_set_distance(const FiniteMetricSpace& m, int x, Mask a) {
    if (x < 0 || x >= m.size()) throw InvalidInput("point_set_distance: point out of range");
    if (a == 0) throw InvalidInput("point_set_distance: empty set");
    if (!is_subset(a, full_mask(m.size())))
        throw InvalidInput("point_set_distance: set outside carrier");
    return kernels::active().masked_min(m.row(x), a, m.size());
}

Mask eps_neighborhood(const FiniteMetricSpace& m, Mask a, double eps, bool closed) {
    if (a == 0) throw InvalidInput("eps_neighborhood: empty set");
    if (!is_subset(a, full_mask(m.size())))
        throw InvalidInput("eps_neighborhood: set outside carrier");
    if (eps < 0) throw InvalidInput("eps_neighborhood: negative radius");
    Mask out = 0;
    for (int x = 0; x < m.size(); ++x) {
        const double dx = point_set_distance(m, x, a);
        const bool in = closed ? (dx <= eps + kMetricTol) : (dx < eps - kMetricTol);
        if (in) out |= bit(x);
    }
    return out;
}

namespace {

double dh_maxsup(const FiniteMetricSpace& m, Mask a, Mask b) {
    const auto& ops = kernels::active();
    double best = 0.0;
    for_each_bit(a, [&](int x) {
        best = std::max(best, ops.masked_min(m.row(x), b, m.size()));
    });
    for_each_bit(b, [&](int x) {
        best = std::max(best, ops.masked_min(m.row(x), a, m.size()));
    });
    return best;
}

double dh_inf_radius(const FiniteMetricSpace& m, Mask a, Mask b) {
    // Candidate radii: every realized point-to-set distance, plus zero.
    std::vector<double> candidates{0.0};
    for (int x = 0; x < m.size(); ++x) {
        candidates.push_back(point_set_distance(m, x, a));
        candidates.push_back(point_set_distance(m, x, b));
    }
    std::sort(candidates.begin(), candidates.end());
    for (double r : candidates) {
        const Mask na = eps_neighborhood(m, a, r, /*closed=*/true);
        const Mask nb = eps_neighborhood(m, b, r, /*closed=*/true);
        if (is_subset(a, nb) && is_subset(b, na)) return r;
    }
    return std::numeric_limits<double>::infinity();  // unreachable for nonempty sets
}

double dh_sup_over(const FiniteMetricSpace& m, Mask a, Mask b, Mask over) {
    double best = 0.0;
    for_each_bit(over, [&](int x) {
        best = std::max(best,
                        std::abs(point_set_distance(m, x, a) - point_set_distance(m, x, b)));
    });
    return best;
}

}  // namespace

double hausdorff_distance(const FiniteMetricSpace& m, Mask a, Mask b,
                          HausdorffVariant variant) {
    const Mask carrier = full_mask(m.size());
    if ((a & ~carrier) != 0 || (b & ~carrier) != 0)
        throw InvalidInput("hausdorff: subset outside carrier");
    if (a == 0 || b == 0) throw InvalidInput("hausdorff: empty subset");
    switch (variant) {
        case HausdorffVariant::maxsup:
            return dh_maxsup(m, a, b);
        case HausdorffVariant::inf_radius:
            return dh_inf_radius(m, a, b);
        case HausdorffVariant::sup_union:
            return dh_sup_over(m, a, b, a | b);
        case HausdorffVariant::sup_all:
            return dh_sup_over(m, a, b, carrier);
    }
    throw InvalidInput("hausdorff: unknown variant");
}

std::array<double, 4> hausdorff_all(const FiniteMetricSpace& m, Mask a, Mask b) {
    return {hausdorff_distance(m, a, b, HausdorffVariant::maxsup),
            hausdorff_distance(m, a, b, HausdorffVariant::inf_radius),
            hausdorff_distance(m, a, b, HausdorffVariant::sup_union),
            hausdorff_distance(m, a, b, HausdorffVariant::sup_all)};
}

double dq_pseudometric(const FiniteMetricSpace& m, const FunctionFamily& fam,
                       int f, int g) {
    if (m.size() != fam.space.size())
        throw InvalidInput("dq: metric and family carriers differ");
    if (!(fam.space.topology == Topology::discrete(fam.space.size())))
        throw Unsupported("dq: requires the discrete topology on the function space domain");
    if (f < 0 || f >= fam.size() || g < 0 || g >= fam.size())
        throw InvalidInput("dq: function index out of range");
    const Mask img_f = fam.carrier[static_cast<std::size_t>(fam.q_index[f])];
    const Mask img_g = fam.carrier[static_cast<std::size_t>(fam.q_index[g])];
    return hausdorff_distance(m, img_f, img_g, HausdorffVariant::maxsup);
}

std::vector<Mask> ball_family(const FiniteMetricSpace& m) {
    const int n = m.size();
    // Radii that can distinguish subsets: realized distances and their
    // midpoints. Larger radii give balls already in the family or the carrier.
    std::vector<double> radii;
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            radii.push_back(m.d(x, y));
            for (int z = 0; z < n; ++z) radii.push_back((m.d(x, y) + m.d(x, z)) / 2.0);
        }
    std::sort(radii.begin(), radii.end());
    radii.erase(std::unique(radii.begin(), radii.end(),
                            [](double p, double q) { return std::abs(p - q) <= kMetricTol; }),
                radii.end());

    std::vector<Mask> balls;
    for (int c = 0; c < n; ++c) {
        for (double r : radii) {
            if (r <= kMetricTol) continue;  // open ball of radius 0 is empty
            Mask ball = 0;
            for (int x = 0; x < n; ++x)
                if (m.d(c, x) < r - kMetricTol) ball |= bit(x);
            if (ball != 0) balls.push_back(ball);
        }
    }
    std::sort(balls.begin(), balls.end());
    balls.erase(std::unique(balls.begin(), balls.end()), balls.end());
    return balls;
}

Topology metric_topology(const FiniteMetricSpace& m, const std::vector<Mask>* family) {
    const std::vector<Mask> balls = family ? *family : ball_family(m);
    return generate_topology(m.size(), balls);
}

namespace {

void check_sequence(const FiniteMetricSpace& m, const SubsetSequence& seq, Mask a) {
    const Mask carrier = full_mask(m.size());
    if (seq.cycle.empty()) throw InvalidInput("sequence: empty cycle");
    if (a == 0 || (a & ~carrier) != 0) throw InvalidInput("sequence: bad limit set");
    for (Mask s : seq.prefix)
        if (s == 0 || (s & ~carrier) != 0) throw InvalidInput("sequence: bad prefix term");
    for (Mask s : seq.cycle)
        if (s == 0 || (s & ~carrier) != 0) throw InvalidInput("sequence: bad cycle term");
}

}  // namespace

bool centrally_converges(const FiniteMetricSpace& m, const SubsetSequence& seq,
                         Mask a, const std::vector<Mask>* family) {
    check_sequence(m, seq, a);
    const Topology t = metric_topology(m, family);
    // Smallest open superset of A; "eventually inside every open around A"
    // reduces to containment in this single set.
    const Mask hull = t.nbhd_of_set(a);
    for (Mask s : seq.cycle)
        if (!is_subset(s, hull)) return false;
    return true;
}

bool marginally_converges(const FiniteMetricSpace& m, const SubsetSequence& seq,
                          Mask a, const std::vector<Mask>* family) {
    check_sequence(m, seq, a);
    const Topology t = metric_topology(m, family);
    bool ok = true;
    for_each_bit(a, [&](int p) {
        const Mask u = t.nbhd(p);
        for (Mask s : seq.cycle)
            if ((s & u) == 0) ok = false;
    });
    return ok;
}

bool dh_converges(const FiniteMetricSpace& m, const SubsetSequence& seq, Mask a,
                  double tol) {
    check_sequence(m, seq, a);
    for (Mask s : seq.cycle)
        if (hausdorff_distance(m, s, a, HausdorffVariant::maxsup) > tol + kMetricTol)
            return false;
    return true;
}

}  // namespace hyperquot
