// AVX2 kernel variants. Four lanes of doubles (or four 64-bit words) per
// step; set-membership bits are expanded to lane masks by shifting each bit
// into the sign position, which is what maskload and blendv key on. Tails
// shorter than four lanes are handled by the same lane masks, so loads never
// touch memory past the caller's buffers for unselected lanes.

#if defined(HYPERQUOT_HAVE_AVX2)

#include <immintrin.h>

#include <limits>

#include "hyperquot/kernels.hpp"

namespace hyperquot::kernels {
namespace avx2 {

namespace {

// Lane i of the result has its sign bit set iff bit (base + i) of sel is set
// and base + i < n.
inline __m256i lane_mask(Mask sel, int base, int n) {
    alignas(32) long long lanes[4];
    for (int l = 0; l < 4; ++l) {
        int idx = base + l;
        lanes[l] = (idx < n && contains(sel, idx)) ? -1LL : 0LL;
    }
    return _mm256_load_si256(reinterpret_cast<const __m256i*>(lanes));
}

inline double reduce_min(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    __m128d m = _mm_min_pd(lo, hi);
    m = _mm_min_sd(m, _mm_unpackhi_pd(m, m));
    return _mm_cvtsd_f64(m);
}

inline double reduce_max(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    __m128d m = _mm_max_pd(lo, hi);
    m = _mm_max_sd(m, _mm_unpackhi_pd(m, m));
    return _mm_cvtsd_f64(m);
}

}  // namespace

double masked_min(const double* row, Mask sel, int n) {
    const __m256d inf = _mm256_set1_pd(std::numeric_limits<double>::infinity());
    __m256d acc = inf;
    for (int i = 0; i < n; i += 4) {
        __m256i lm = lane_mask(sel, i, n);
        __m256d data = _mm256_maskload_pd(row + i, lm);
        __m256d vals = _mm256_blendv_pd(inf, data, _mm256_castsi256_pd(lm));
        acc = _mm256_min_pd(acc, vals);
    }
    return reduce_min(acc);
}

double masked_max(const double* row, Mask sel, int n) {
    const __m256d ninf = _mm256_set1_pd(-std::numeric_limits<double>::infinity());
    __m256d acc = ninf;
    for (int i = 0; i < n; i += 4) {
        __m256i lm = lane_mask(sel, i, n);
        __m256d data = _mm256_maskload_pd(row + i, lm);
        __m256d vals = _mm256_blendv_pd(ninf, data, _mm256_castsi256_pd(lm));
        acc = _mm256_max_pd(acc, vals);
    }
    return reduce_max(acc);
}

double masked_max_absdiff(const double* a, const double* b, Mask sel, int n) {
    const __m256d zero = _mm256_setzero_pd();
    const __m256d signbit = _mm256_set1_pd(-0.0);
    __m256d acc = zero;
    for (int i = 0; i < n; i += 4) {
        __m256i lm = lane_mask(sel, i, n);
        __m256d va = _mm256_maskload_pd(a + i, lm);
        __m256d vb = _mm256_maskload_pd(b + i, lm);
        __m256d diff = _mm256_andnot_pd(signbit, _mm256_sub_pd(va, vb));
        diff = _mm256_blendv_pd(zero, diff, _mm256_castsi256_pd(lm));
        acc = _mm256_max_pd(acc, diff);
    }
    return reduce_max(acc);
}

double directed_hausdorff(const double* d, int stride, Mask a, Mask b, int n) {
    double best = 0.0;
    Mask rest = a & full_mask(n);
    while (rest) {
        int i = std::countr_zero(rest);
        rest &= rest - 1;
        double nearest = masked_min(d + static_cast<std::size_t>(i) * stride, b, n);
        if (nearest > best) best = nearest;
    }
    return best;
}

Mask closure_mask(const Mask* nbhd, int n, Mask a) {
    const __m256i va = _mm256_set1_epi64x(static_cast<long long>(a));
    const __m256i zero = _mm256_setzero_si256();
    Mask out = 0;
    for (int i = 0; i < n; i += 4) {
        __m256i lm = lane_mask(full_mask(n), i, n);
        __m256i rows = _mm256_maskload_epi64(
            reinterpret_cast<const long long*>(nbhd + i), lm);
        __m256i meet = _mm256_and_si256(rows, va);
        __m256i empty = _mm256_cmpeq_epi64(meet, zero);
        int empty_bits = _mm256_movemask_pd(_mm256_castsi256_pd(empty));
        int valid = (n - i >= 4) ? 0xF : ((1 << (n - i)) - 1);
        out |= static_cast<Mask>(~empty_bits & valid) << i;
    }
    return out;
}

bool is_open_mask(const Mask* nbhd, int n, Mask s) {
    const __m256i not_s = _mm256_set1_epi64x(static_cast<long long>(~s));
    const __m256i zero = _mm256_setzero_si256();
    for (int i = 0; i < n; i += 4) {
        __m256i lm = lane_mask(s, i, n);
        __m256i rows = _mm256_maskload_epi64(
            reinterpret_cast<const long long*>(nbhd + i), lm);
        __m256i escape = _mm256_and_si256(rows, not_s);
        __m256i ok = _mm256_cmpeq_epi64(escape, zero);
        int ok_bits = _mm256_movemask_pd(_mm256_castsi256_pd(ok));
        int sel_bits = static_cast<int>((s >> i) & 0xF);
        if (n - i < 4) sel_bits &= (1 << (n - i)) - 1;
        if (sel_bits & ~ok_bits) return false;
    }
    return true;
}

}  // namespace avx2

const Ops* avx2_ops() {
    static const Ops ops{
        avx2::masked_min,
        avx2::masked_max,
        avx2::masked_max_absdiff,
        avx2::directed_hausdorff,
        avx2::closure_mask,
        avx2::is_open_mask,
        "avx2",
    };
    return &ops;
}

}  // namespace hyperquot::kernels

#endif  // HYPERQUOT_HAVE_AVX2
