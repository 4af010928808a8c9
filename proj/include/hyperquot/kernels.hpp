#pragma once

#include <cstdint>

#include "hyperquot/mask.hpp"

namespace hyperquot::kernels {

// Inner-loop primitives used by the metric and topology layers. Every entry
// has a scalar reference implementation; on x86-64 an AVX2 variant is
// compiled as well and selected at runtime. The two backends are
// equivalence-tested against each other, and HYPERQUOT_KERNELS=scalar|avx2
// forces a backend explicitly.
struct Ops {
    // min / max of row[i] over the set bits of sel; +inf / -inf when empty.
    double (*masked_min)(const double* row, Mask sel, int n);
    double (*masked_max)(const double* row, Mask sel, int n);
    // max over sel of |a[i] - b[i]|; 0 when sel is empty.
    double (*masked_max_absdiff)(const double* a, const double* b, Mask sel, int n);
    // max over i in a of (min over j in b of d[i*stride + j]); 0 when a empty.
    double (*directed_hausdorff)(const double* d, int stride, Mask a, Mask b, int n);
    // { x : nbhd[x] & a != 0 } as a mask over [0, n).
    Mask (*closure_mask)(const Mask* nbhd, int n, Mask a);
    // true iff every x in s has nbhd[x] contained in s.
    bool (*is_open_mask)(const Mask* nbhd, int n, Mask s);
    const char* name;
};

// Backend selected at startup (CPU detection, overridable via the
// HYPERQUOT_KERNELS environment variable).
const Ops& active();

const Ops& scalar_ops();

// Null when this build or CPU has no AVX2 backend.
const Ops* avx2_ops();

// Forces a backend for the rest of the process: "scalar", "avx2" or "auto".
// Throws InvalidInput for unknown names or an unavailable backend.
void force_backend(const char* name);

}  // namespace hyperquot::kernels
