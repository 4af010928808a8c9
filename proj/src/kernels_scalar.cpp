// Scalar reference kernels. These define the semantics the SIMD variants
// must reproduce exactly; keep them simple enough to audit by eye.

#include <limits>

#include "hyperquot/kernels.hpp"

namespace hyperquot::kernels {
namespace scalar {

double masked_min(const double* row, Mask sel, int n) {
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i)
        if (contains(sel, i) && row[i] < best) best = row[i];
    return best;
}

double masked_max(const double* row, Mask sel, int n) {
    double best = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i)
        if (contains(sel, i) && row[i] > best) best = row[i];
    return best;
}

double masked_max_absdiff(const double* a, const double* b, Mask sel, int n) {
    double best = 0.0;
    for (int i = 0; i < n; ++i) {
        if (!contains(sel, i)) continue;
        double diff = a[i] - b[i];
        if (diff < 0) diff = -diff;
        if (diff > best) best = diff;
    }
    return best;
}

double directed_hausdorff(const double* d, int stride, Mask a, Mask b, int n) {
    double best = 0.0;
    for (int i = 0; i < n; ++i) {
        if (!contains(a, i)) continue;
        double nearest = masked_min(d + static_cast<std::size_t>(i) * stride, b, n);
        if (nearest > best) best = nearest;
    }
    return best;
}

Mask closure_mask(const Mask* nbhd, int n, Mask a) {
    Mask out = 0;
    for (int x = 0; x < n; ++x)
        if (nbhd[x] & a) out |= bit(x);
    return out;
}

bool is_open_mask(const Mask* nbhd, int n, Mask s) {
    for (int x = 0; x < n; ++x)
        if (contains(s, x) && (nbhd[x] & ~s)) return false;
    return true;
}

}  // namespace scalar

const Ops& scalar_ops() {
    static const Ops ops{
        scalar::masked_min,
        scalar::masked_max,
        scalar::masked_max_absdiff,
        scalar::directed_hausdorff,
        scalar::closure_mask,
        scalar::is_open_mask,
        "scalar",
    };
    return ops;
}

}  // namespace hyperquot::kernels
