#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "hyperquot/mask.hpp"
#include "hyperquot/topology.hpp"

namespace hyperquot {

// Numeric tolerance for metric-axiom validation and distance comparisons.
inline constexpr double kMetricTol = 1e-12;

// Finite metric space on points 0..n-1 with a dense distance matrix.
class FiniteMetricSpace {
public:
    // `dist` is row-major n*n. Validates nonnegativity, zero diagonal,
    // symmetry, and the triangle inequality (all within kMetricTol).
    static FiniteMetricSpace from_matrix(std::vector<std::string> labels,
                                         std::vector<double> dist);

    // Euclidean distances between rows of `coords` (each row one point).
    static FiniteMetricSpace from_points(std::vector<std::string> labels,
                                         const std::vector<std::vector<double>>& coords);

    int size() const { return n_; }
    const std::vector<std::string>& labels() const { return labels_; }
    double d(int i, int j) const {
        return dist_[static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) +
                     static_cast<std::size_t>(j)];
    }
    // Row i as a contiguous view into the matrix.
    const double* row(int i) const {
        return dist_.data() + static_cast<std::size_t>(i) * static_cast<std::size_t>(n_);
    }

private:
    FiniteMetricSpace(std::vector<std::string> labels, std::vector<double> dist, int n)
        : labels_(std::move(labels)), dist_(std::move(dist)), n_(n) {}

    std::vector<std::string> labels_;
    std::vector<double> dist_;
    int n_ = 0;
};

// d(x, A) = min over a in A of d(x, a); +infinity when A is empty.
double point_set_distance(const FiniteMetricSpace& m, int x, Mask a);

// Points within eps of A: open uses strict <, closed uses <= (+ tolerance).
Mask eps_neighborhood(const FiniteMetricSpace& m, Mask a, double eps, bool closed);

// Four formulations of the Hausdorff distance between nonempty subsets.
// All agree on every input; computing each keeps the others honest.
enum class HausdorffVariant {
    maxsup,      // max(sup_{a in A} d(a,B), sup_{b in B} d(b,A))
    inf_radius,  // inf { r : A within closed r of B and B within closed r of A }
    sup_union,   // sup_{x in A u B} |d(x,A) - d(x,B)|
    sup_all,     // sup over the whole carrier of |d(x,A) - d(x,B)|
};

double hausdorff_distance(const FiniteMetricSpace& m, Mask a, Mask b,
                          HausdorffVariant variant);

// All four variants at once, indexed by the enum order.
std::array<double, 4> hausdorff_all(const FiniteMetricSpace& m, Mask a, Mask b);

struct FunctionFamily;

// d_q(f, g) = Hausdorff distance between the images f(Y) and g(Y).
// The family's space must carry the discrete topology, so that closures
// of images are the images themselves and d_q is the quotient pseudometric.
double dq_pseudometric(const FiniteMetricSpace& m, const FunctionFamily& fam,
                       int f, int g);

// Eventually cyclic sequence of subsets: prefix then cycle, repeated forever.
struct SubsetSequence {
    std::vector<Mask> prefix;
    std::vector<Mask> cycle;  // nonempty
};

// Canonical finite subbase extracted from the metric: every open ball whose
// radius is either a realized distance d(x,y) or a midpoint
// (d(x,y)+d(x,z))/2. Finitely many balls determine the metric topology.
std::vector<Mask> ball_family(const FiniteMetricSpace& m);

// Topology generated by `family` (defaults to ball_family) as a subbase.
Topology metric_topology(const FiniteMetricSpace& m,
                         const std::vector<Mask>* family = nullptr);

// Central convergence of `seq` to A over the topology generated by `family`:
// eventually every term is contained in every open superset-neighborhood of
// A. For eventually cyclic sequences that means: every cycle element is a
// subset of the smallest open set containing A.
bool centrally_converges(const FiniteMetricSpace& m, const SubsetSequence& seq,
                         Mask a, const std::vector<Mask>* family = nullptr);

// Marginal convergence: for every a in A and every open U containing a,
// eventually every term meets U. Equivalently every cycle element meets the
// minimal open neighborhood of every point of A.
bool marginally_converges(const FiniteMetricSpace& m, const SubsetSequence& seq,
                          Mask a, const std::vector<Mask>* family = nullptr);

// Hausdorff-distance convergence: d_H(S_k, A) -> 0, i.e. every cycle element
// is within `tol` of A in Hausdorff distance.
bool dh_converges(const FiniteMetricSpace& m, const SubsetSequence& seq, Mask a,
                  double tol);

}  // namespace hyperquot
