// AVX2+FMA variants of the simulator inner loops. Compiled with -mavx2 -mfma
// on x86-64 only; callers must consult avx2_supported() before using this
// table (active_ops does).

#include "nlspread/simd/ops.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <algorithm>
#include <cmath>

namespace nlspread::simd {

namespace {

void conv_valid_avx2(double* out, const double* fp, const double* w, std::size_t n,
                     std::size_t support) {
    std::size_t i = 0;
    // Vectorize across outputs: four sliding dot products share each
    // broadcast weight.
    for (; i + 4 <= n; i += 4) {
        __m256d acc = _mm256_setzero_pd();
        const double* f = fp + i;
        std::size_t t = 0;
        for (; t + 2 <= support; t += 2) {
            acc = _mm256_fmadd_pd(_mm256_set1_pd(w[t]), _mm256_loadu_pd(f + t), acc);
            acc = _mm256_fmadd_pd(_mm256_set1_pd(w[t + 1]), _mm256_loadu_pd(f + t + 1), acc);
        }
        if (t < support)
            acc = _mm256_fmadd_pd(_mm256_set1_pd(w[t]), _mm256_loadu_pd(f + t), acc);
        _mm256_storeu_pd(out + i, acc);
    }
    for (; i < n; ++i) {
        double acc = 0.0;
        const double* f = fp + i;
        for (std::size_t t = 0; t < support; ++t) acc += w[t] * f[t];
        out[i] = acc;
    }
}

void saturating_avx2(double* out, const double* x, std::size_t n, double s0, double q) {
    const __m256d vs = _mm256_set1_pd(s0);
    const __m256d vq = _mm256_set1_pd(q);
    const __m256d one = _mm256_set1_pd(1.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d v = _mm256_loadu_pd(x + i);
        const __m256d num = _mm256_mul_pd(vs, v);
        const __m256d den = _mm256_fmadd_pd(vq, v, one);
        _mm256_storeu_pd(out + i, _mm256_div_pd(num, den));
    }
    for (; i < n; ++i) out[i] = s0 * x[i] / (1.0 + q * x[i]);
}

void combine_rhs_avx2(double* du, const double* conv, const double* f, const double* nl,
                      std::size_t n, double rate) {
    const double c = 1.0 + rate;
    const __m256d vc = _mm256_set1_pd(c);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d r = _mm256_fnmadd_pd(vc, _mm256_loadu_pd(f + i), _mm256_loadu_pd(conv + i));
        r = _mm256_add_pd(r, _mm256_loadu_pd(nl + i));
        _mm256_storeu_pd(du + i, r);
    }
    for (; i < n; ++i) du[i] = conv[i] - c * f[i] + nl[i];
}

void axpy_avx2(double* y, const double* x, const double* k, std::size_t n, double h) {
    const __m256d vh = _mm256_set1_pd(h);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(y + i,
                         _mm256_fmadd_pd(vh, _mm256_loadu_pd(k + i), _mm256_loadu_pd(x + i)));
    for (; i < n; ++i) y[i] = x[i] + h * k[i];
}

void rk4_final_avx2(double* y, const double* k1, const double* k2, const double* k3,
                    const double* k4, std::size_t n, double h) {
    const double c = h / 6.0;
    const __m256d vc = _mm256_set1_pd(c);
    const __m256d two = _mm256_set1_pd(2.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d s = _mm256_add_pd(_mm256_loadu_pd(k1 + i), _mm256_loadu_pd(k4 + i));
        s = _mm256_fmadd_pd(two, _mm256_loadu_pd(k2 + i), s);
        s = _mm256_fmadd_pd(two, _mm256_loadu_pd(k3 + i), s);
        _mm256_storeu_pd(y + i, _mm256_fmadd_pd(vc, s, _mm256_loadu_pd(y + i)));
    }
    for (; i < n; ++i) y[i] += c * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
}

void minmax_avx2(const double* x, std::size_t n, double* mn, double* mx) {
    double lo = x[0], hi = x[0];
    std::size_t i = 0;
    if (n >= 4) {
        __m256d vlo = _mm256_loadu_pd(x);
        __m256d vhi = vlo;
        for (i = 4; i + 4 <= n; i += 4) {
            const __m256d v = _mm256_loadu_pd(x + i);
            vlo = _mm256_min_pd(vlo, v);
            vhi = _mm256_max_pd(vhi, v);
        }
        alignas(32) double tmp[4];
        _mm256_store_pd(tmp, vlo);
        lo = std::min(std::min(tmp[0], tmp[1]), std::min(tmp[2], tmp[3]));
        _mm256_store_pd(tmp, vhi);
        hi = std::max(std::max(tmp[0], tmp[1]), std::max(tmp[2], tmp[3]));
    }
    for (; i < n; ++i) {
        lo = std::min(lo, x[i]);
        hi = std::max(hi, x[i]);
    }
    *mn = lo;
    *mx = hi;
}

double max_abs_avx2(const double* x, std::size_t n) {
    const __m256d sign_mask = _mm256_set1_pd(-0.0);
    __m256d vhi = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        vhi = _mm256_max_pd(vhi, _mm256_andnot_pd(sign_mask, _mm256_loadu_pd(x + i)));
    alignas(32) double tmp[4];
    _mm256_store_pd(tmp, vhi);
    double hi = std::max(std::max(tmp[0], tmp[1]), std::max(tmp[2], tmp[3]));
    for (; i < n; ++i) hi = std::max(hi, std::abs(x[i]));
    return hi;
}

}  // namespace

const Ops& avx2_ops() {
    static const Ops ops{conv_valid_avx2, saturating_avx2, combine_rhs_avx2, axpy_avx2,
                         rk4_final_avx2,  minmax_avx2,     max_abs_avx2,     "avx2"};
    return ops;
}

}  // namespace nlspread::simd

#else

namespace nlspread::simd {

const Ops& avx2_ops() { return scalar_ops(); }

}  // namespace nlspread::simd

#endif
