#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "hyperquot/errors.hpp"
#include "hyperquot/kernels.hpp"

using namespace hyperquot;

namespace {

struct BackendGuard {
    ~BackendGuard() { kernels::force_backend("auto"); }
};

double brute_masked_min(const double* row, Mask sel, int n) {
    double out = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i)
        if (contains(sel, i)) out = std::min(out, row[i]);
    return out;
}

double brute_directed(const double* d, int stride, Mask a, Mask b, int n) {
    double out = 0.0;
    for (int i = 0; i < n; ++i) {
        if (!contains(a, i)) continue;
        double best = std::numeric_limits<double>::infinity();
        for (int j = 0; j < n; ++j)
            if (contains(b, j)) best = std::min(best, d[i * stride + j]);
        out = std::max(out, best);
    }
    return out;
}

}  // namespace

TEST_SUITE("kernels") {

TEST_CASE("scalar reductions match brute force") {
    const auto& ops = kernels::scalar_ops();
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> val(-10.0, 10.0);
    std::uniform_int_distribution<std::uint64_t> bits;
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + static_cast<int>(bits(rng) % 64);
        std::vector<double> a(static_cast<std::size_t>(n)), b(a.size());
        for (int i = 0; i < n; ++i) {
            a[static_cast<std::size_t>(i)] = val(rng);
            b[static_cast<std::size_t>(i)] = val(rng);
        }
        const Mask sel = bits(rng) & full_mask(n);
        CHECK(ops.masked_min(a.data(), sel, n) == brute_masked_min(a.data(), sel, n));
        double mx = -std::numeric_limits<double>::infinity();
        double md = 0.0;
        for (int i = 0; i < n; ++i) {
            if (!contains(sel, i)) continue;
            mx = std::max(mx, a[static_cast<std::size_t>(i)]);
            md = std::max(md, std::fabs(a[static_cast<std::size_t>(i)] -
                                        b[static_cast<std::size_t>(i)]));
        }
        CHECK(ops.masked_max(a.data(), sel, n) == mx);
        CHECK(ops.masked_max_absdiff(a.data(), b.data(), sel, n) == md);
    }
}

TEST_CASE("empty selections give the documented identities") {
    const auto& ops = kernels::scalar_ops();
    const double row[2] = {1.0, 2.0};
    CHECK(std::isinf(ops.masked_min(row, 0, 2)));
    CHECK(ops.masked_min(row, 0, 2) > 0);
    CHECK(std::isinf(ops.masked_max(row, 0, 2)));
    CHECK(ops.masked_max(row, 0, 2) < 0);
    CHECK(ops.masked_max_absdiff(row, row, 0, 2) == 0.0);
    CHECK(ops.directed_hausdorff(row, 2, 0, bit(0), 1) == 0.0);
}

TEST_CASE("closure and openness kernels agree with definitions") {
    const auto& ops = kernels::scalar_ops();
    // Three points: U_0 = {0}, U_1 = {0,1}, U_2 = {2}.
    const Mask nbhd[3] = {bit(0), bit(0) | bit(1), bit(2)};
    CHECK(ops.closure_mask(nbhd, 3, bit(0)) == (bit(0) | bit(1)));
    CHECK(ops.closure_mask(nbhd, 3, bit(1)) == bit(1));
    CHECK(ops.closure_mask(nbhd, 3, bit(2)) == bit(2));
    CHECK(ops.is_open_mask(nbhd, 3, bit(0)));
    CHECK_FALSE(ops.is_open_mask(nbhd, 3, bit(1)));
    CHECK(ops.is_open_mask(nbhd, 3, bit(0) | bit(1)));
    CHECK(ops.is_open_mask(nbhd, 3, 0));
    CHECK(ops.is_open_mask(nbhd, 3, full_mask(3)));
}

TEST_CASE("avx2 backend matches scalar on random inputs") {
    const kernels::Ops* avx2 = kernels::avx2_ops();
    if (avx2 == nullptr) return;  // not built or not supported on this CPU
    const auto& scalar = kernels::scalar_ops();
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> val(-5.0, 5.0);
    std::uniform_int_distribution<std::uint64_t> bits;
    for (int trial = 0; trial < 500; ++trial) {
        const int n = 1 + static_cast<int>(bits(rng) % 64);
        std::vector<double> a(static_cast<std::size_t>(n)), b(a.size());
        std::vector<double> d(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
        for (auto& x : a) x = val(rng);
        for (auto& x : b) x = val(rng);
        for (auto& x : d) x = std::fabs(val(rng));
        std::vector<Mask> nbhd(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) nbhd[static_cast<std::size_t>(i)] = (bits(rng) & full_mask(n)) | bit(i);
        const Mask sel = bits(rng) & full_mask(n);
        const Mask sel2 = (bits(rng) & full_mask(n)) | bit(0);
        CHECK(scalar.masked_min(a.data(), sel, n) == avx2->masked_min(a.data(), sel, n));
        CHECK(scalar.masked_max(a.data(), sel, n) == avx2->masked_max(a.data(), sel, n));
        CHECK(scalar.masked_max_absdiff(a.data(), b.data(), sel, n) ==
              avx2->masked_max_absdiff(a.data(), b.data(), sel, n));
        CHECK(scalar.directed_hausdorff(d.data(), n, sel, sel2, n) ==
              avx2->directed_hausdorff(d.data(), n, sel, sel2, n));
        CHECK(scalar.closure_mask(nbhd.data(), n, sel) ==
              avx2->closure_mask(nbhd.data(), n, sel));
        CHECK(scalar.is_open_mask(nbhd.data(), n, sel) ==
              avx2->is_open_mask(nbhd.data(), n, sel));
    }
}

TEST_CASE("directed hausdorff matches brute force") {
    const auto& ops = kernels::scalar_ops();
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> val(0.0, 9.0);
    std::uniform_int_distribution<std::uint64_t> bits;
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 1 + static_cast<int>(bits(rng) % 16);
        std::vector<double> d(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
        for (auto& x : d) x = val(rng);
        const Mask a = bits(rng) & full_mask(n);
        const Mask b = (bits(rng) & full_mask(n)) | bit(n - 1);
        CHECK(ops.directed_hausdorff(d.data(), n, a, b, n) ==
              brute_directed(d.data(), n, a, b, n));
    }
}

TEST_CASE("force_backend switches the active ops") {
    BackendGuard guard;
    kernels::force_backend("scalar");
    CHECK(std::string(kernels::active().name) == "scalar");
    if (kernels::avx2_ops() != nullptr) {
        kernels::force_backend("avx2");
        CHECK(std::string(kernels::active().name) == "avx2");
    }
    kernels::force_backend("auto");
    CHECK_THROWS_AS(kernels::force_backend("neon"), InvalidInput);
}

}  // TEST_SUITE
