#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "nlspread/simd/ops.hpp"

using namespace nlspread::simd;

namespace {

std::vector<double> random_vec(std::mt19937_64& rng, std::size_t n, double lo = -1.0,
                               double hi = 1.0) {
    std::uniform_real_distribution<double> unif(lo, hi);
    std::vector<double> v(n);
    for (double& x : v) x = unif(rng);
    return v;
}

bool close(double a, double b, double tol = 1e-10) {
    return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

TEST_CASE("scalar reference: conv_valid against a naive triple loop") {
    std::mt19937_64 rng(5);
    const std::size_t n = 23, support = 7;
    const auto fp = random_vec(rng, n + support - 1);
    const auto w = random_vec(rng, support);
    std::vector<double> out(n);
    scalar_ops().conv_valid(out.data(), fp.data(), w.data(), n, support);
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t t = 0; t < support; ++t) acc += w[t] * fp[i + t];
        CHECK(out[i] == doctest::Approx(acc).epsilon(1e-14));
    }
}

TEST_CASE("AVX2 variants agree with the scalar reference") {
    if (!avx2_supported()) {
        MESSAGE("AVX2 not available; skipping variant equivalence");
        return;
    }
    const Ops& s = scalar_ops();
    const Ops& v = avx2_ops();
    std::mt19937_64 rng(17);

    for (std::size_t n : {1u, 3u, 4u, 5u, 17u, 64u, 1001u}) {
        for (std::size_t support : {1u, 2u, 5u, 48u}) {
            const auto fp = random_vec(rng, n + support - 1);
            const auto w = random_vec(rng, support);
            std::vector<double> a(n), b(n);
            s.conv_valid(a.data(), fp.data(), w.data(), n, support);
            v.conv_valid(b.data(), fp.data(), w.data(), n, support);
            for (std::size_t i = 0; i < n; ++i) CHECK(close(a[i], b[i]));
        }

        const auto x = random_vec(rng, n, 0.0, 1.0);
        const auto y = random_vec(rng, n);
        const auto z = random_vec(rng, n);
        const auto q = random_vec(rng, n);
        std::vector<double> a(n), b(n);

        s.saturating(a.data(), x.data(), n, 0.6, 2.0);
        v.saturating(b.data(), x.data(), n, 0.6, 2.0);
        for (std::size_t i = 0; i < n; ++i) CHECK(close(a[i], b[i]));

        s.combine_rhs(a.data(), x.data(), y.data(), z.data(), n, 0.2);
        v.combine_rhs(b.data(), x.data(), y.data(), z.data(), n, 0.2);
        for (std::size_t i = 0; i < n; ++i) CHECK(close(a[i], b[i]));

        s.axpy(a.data(), x.data(), y.data(), n, 0.025);
        v.axpy(b.data(), x.data(), y.data(), n, 0.025);
        for (std::size_t i = 0; i < n; ++i) CHECK(close(a[i], b[i]));

        a = x;
        b = x;
        s.rk4_final(a.data(), y.data(), z.data(), q.data(), y.data(), n, 0.05);
        v.rk4_final(b.data(), y.data(), z.data(), q.data(), y.data(), n, 0.05);
        for (std::size_t i = 0; i < n; ++i) CHECK(close(a[i], b[i]));

        double mn1, mx1, mn2, mx2;
        s.minmax(y.data(), n, &mn1, &mx1);
        v.minmax(y.data(), n, &mn2, &mx2);
        CHECK(mn1 == mn2);
        CHECK(mx1 == mx2);
        CHECK(s.max_abs(y.data(), n) == v.max_abs(y.data(), n));
    }
}

TEST_CASE("runtime dispatch picks a usable table") {
    const Ops& ops = active_ops();
    CHECK(ops.conv_valid != nullptr);
    std::vector<double> x{0.5}, out{0.0};
    ops.saturating(out.data(), x.data(), 1, 0.6, 2.0);
    CHECK(out[0] == doctest::Approx(0.6 * 0.5 / 2.0).epsilon(1e-15));
}
