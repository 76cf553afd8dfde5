#include "ccrig/kernels/kernels.hpp"

#if defined(__x86_64__) || defined(__i386__)

#include <immintrin.h>

#include <cmath>
#include <cstring>
#include <vector>

// AVX2/FMA kernels. Semantics match kernels_scalar.cpp up to float
// reassociation; the equivalence tests in tests/test_kernels.cpp pin the
// allowed drift. exp/tanh/sigmoid use a Cephes-style polynomial (~1 ulp off
// libm), which the same tests bound explicitly.

namespace ccrig::kern {
namespace {

inline float hsum8(__m256 v) {
    __m128 lo = _mm256_castps256_ps128(v);
    __m128 hi = _mm256_extractf128_ps(v, 1);
    lo = _mm_add_ps(lo, hi);
    __m128 sh = _mm_movehl_ps(lo, lo);
    lo = _mm_add_ps(lo, sh);
    sh = _mm_shuffle_ps(lo, lo, 0x1);
    lo = _mm_add_ss(lo, sh);
    return _mm_cvtss_f32(lo);
}

// exp for 8 lanes; Cephes expf scheme: x = n·ln2 + r, e^x = 2^n · p(r).
inline __m256 exp8(__m256 x) {
    const __m256 max_x = _mm256_set1_ps(88.3762626647950f);
    const __m256 min_x = _mm256_set1_ps(-87.3365478515625f);
    const __m256 log2e = _mm256_set1_ps(1.44269504088896341f);
    const __m256 c1 = _mm256_set1_ps(0.693359375f);
    const __m256 c2 = _mm256_set1_ps(-2.12194440e-4f);
    const __m256 one = _mm256_set1_ps(1.0f);

    x = _mm256_min_ps(x, max_x);
    x = _mm256_max_ps(x, min_x);

    __m256 fx = _mm256_fmadd_ps(x, log2e, _mm256_set1_ps(0.5f));
    fx = _mm256_floor_ps(fx);
    x = _mm256_fnmadd_ps(fx, c1, x);
    x = _mm256_fnmadd_ps(fx, c2, x);

    __m256 z = _mm256_mul_ps(x, x);
    __m256 y = _mm256_set1_ps(1.9875691500e-4f);
    y = _mm256_fmadd_ps(y, x, _mm256_set1_ps(1.3981999507e-3f));
    y = _mm256_fmadd_ps(y, x, _mm256_set1_ps(8.3334519073e-3f));
    y = _mm256_fmadd_ps(y, x, _mm256_set1_ps(4.1665795894e-2f));
    y = _mm256_fmadd_ps(y, x, _mm256_set1_ps(1.6666665459e-1f));
    y = _mm256_fmadd_ps(y, x, _mm256_set1_ps(5.0000001201e-1f));
    y = _mm256_fmadd_ps(y, z, x);
    y = _mm256_add_ps(y, one);

    __m256i n = _mm256_cvtps_epi32(fx);
    n = _mm256_add_epi32(n, _mm256_set1_epi32(127));
    n = _mm256_slli_epi32(n, 23);
    return _mm256_mul_ps(y, _mm256_castsi256_ps(n));
}

// ---- GEMM ----

// C[m×n] = A[m×k]·B[k×n]; 4×16 register tile, k innermost.
void v_gemm_nn(const float* a, const float* b, float* c, int m, int k, int n, bool acc) {
    if (!acc) std::memset(c, 0, sizeof(float) * static_cast<size_t>(m) * n);
    const int MR = 4, NR = 16;
    int i0 = 0;
    for (; i0 + MR <= m; i0 += MR) {
        int j0 = 0;
        for (; j0 + NR <= n; j0 += NR) {
            __m256 acc00 = _mm256_loadu_ps(c + static_cast<size_t>(i0 + 0) * n + j0);
            __m256 acc01 = _mm256_loadu_ps(c + static_cast<size_t>(i0 + 0) * n + j0 + 8);
            __m256 acc10 = _mm256_loadu_ps(c + static_cast<size_t>(i0 + 1) * n + j0);
            __m256 acc11 = _mm256_loadu_ps(c + static_cast<size_t>(i0 + 1) * n + j0 + 8);
            __m256 acc20 = _mm256_loadu_ps(c + static_cast<size_t>(i0 + 2) * n + j0);
            __m256 acc21 = _mm256_loadu_ps(c + static_cast<size_t>(i0 + 2) * n + j0 + 8);
            __m256 acc30 = _mm256_loadu_ps(c + static_cast<size_t>(i0 + 3) * n + j0);
            __m256 acc31 = _mm256_loadu_ps(c + static_cast<size_t>(i0 + 3) * n + j0 + 8);
            for (int p = 0; p < k; ++p) {
                const float* bp = b + static_cast<size_t>(p) * n + j0;
                __m256 b0 = _mm256_loadu_ps(bp);
                __m256 b1 = _mm256_loadu_ps(bp + 8);
                __m256 a0 = _mm256_broadcast_ss(a + static_cast<size_t>(i0 + 0) * k + p);
                acc00 = _mm256_fmadd_ps(a0, b0, acc00);
                acc01 = _mm256_fmadd_ps(a0, b1, acc01);
                __m256 a1 = _mm256_broadcast_ss(a + static_cast<size_t>(i0 + 1) * k + p);
                acc10 = _mm256_fmadd_ps(a1, b0, acc10);
                acc11 = _mm256_fmadd_ps(a1, b1, acc11);
                __m256 a2 = _mm256_broadcast_ss(a + static_cast<size_t>(i0 + 2) * k + p);
                acc20 = _mm256_fmadd_ps(a2, b0, acc20);
                acc21 = _mm256_fmadd_ps(a2, b1, acc21);
                __m256 a3 = _mm256_broadcast_ss(a + static_cast<size_t>(i0 + 3) * k + p);
                acc30 = _mm256_fmadd_ps(a3, b0, acc30);
                acc31 = _mm256_fmadd_ps(a3, b1, acc31);
            }
            _mm256_storeu_ps(c + static_cast<size_t>(i0 + 0) * n + j0, acc00);
            _mm256_storeu_ps(c + static_cast<size_t>(i0 + 0) * n + j0 + 8, acc01);
            _mm256_storeu_ps(c + static_cast<size_t>(i0 + 1) * n + j0, acc10);
            _mm256_storeu_ps(c + static_cast<size_t>(i0 + 1) * n + j0 + 8, acc11);
            _mm256_storeu_ps(c + static_cast<size_t>(i0 + 2) * n + j0, acc20);
            _mm256_storeu_ps(c + static_cast<size_t>(i0 + 2) * n + j0 + 8, acc21);
            _mm256_storeu_ps(c + static_cast<size_t>(i0 + 3) * n + j0, acc30);
            _mm256_storeu_ps(c + static_cast<size_t>(i0 + 3) * n + j0 + 8, acc31);
        }
        // column remainder, 8-wide then scalar
        for (; j0 + 8 <= n; j0 += 8) {
            __m256 r0 = _mm256_loadu_ps(c + static_cast<size_t>(i0 + 0) * n + j0);
            __m256 r1 = _mm256_loadu_ps(c + static_cast<size_t>(i0 + 1) * n + j0);
            __m256 r2 = _mm256_loadu_ps(c + static_cast<size_t>(i0 + 2) * n + j0);
            __m256 r3 = _mm256_loadu_ps(c + static_cast<size_t>(i0 + 3) * n + j0);
            for (int p = 0; p < k; ++p) {
                __m256 bv = _mm256_loadu_ps(b + static_cast<size_t>(p) * n + j0);
                r0 = _mm256_fmadd_ps(_mm256_broadcast_ss(a + static_cast<size_t>(i0 + 0) * k + p), bv, r0);
                r1 = _mm256_fmadd_ps(_mm256_broadcast_ss(a + static_cast<size_t>(i0 + 1) * k + p), bv, r1);
                r2 = _mm256_fmadd_ps(_mm256_broadcast_ss(a + static_cast<size_t>(i0 + 2) * k + p), bv, r2);
                r3 = _mm256_fmadd_ps(_mm256_broadcast_ss(a + static_cast<size_t>(i0 + 3) * k + p), bv, r3);
            }
            _mm256_storeu_ps(c + static_cast<size_t>(i0 + 0) * n + j0, r0);
            _mm256_storeu_ps(c + static_cast<size_t>(i0 + 1) * n + j0, r1);
            _mm256_storeu_ps(c + static_cast<size_t>(i0 + 2) * n + j0, r2);
            _mm256_storeu_ps(c + static_cast<size_t>(i0 + 3) * n + j0, r3);
        }
        for (; j0 < n; ++j0) {
            for (int r = 0; r < MR; ++r) {
                float dot = 0.0f;
                const float* ar = a + static_cast<size_t>(i0 + r) * k;
                for (int p = 0; p < k; ++p) dot += ar[p] * b[static_cast<size_t>(p) * n + j0];
                c[static_cast<size_t>(i0 + r) * n + j0] += dot;
            }
        }
    }
    // row remainder: rank-1 style rows
    for (; i0 < m; ++i0) {
        const float* ai = a + static_cast<size_t>(i0) * k;
        float* ci = c + static_cast<size_t>(i0) * n;
        for (int p = 0; p < k; ++p) {
            __m256 av = _mm256_set1_ps(ai[p]);
            const float* bp = b + static_cast<size_t>(p) * n;
            int j = 0;
            for (; j + 8 <= n; j += 8) {
                __m256 cv = _mm256_loadu_ps(ci + j);
                _mm256_storeu_ps(ci + j, _mm256_fmadd_ps(av, _mm256_loadu_ps(bp + j), cv));
            }
            for (; j < n; ++j) ci[j] += ai[p] * bp[j];
        }
    }
}

// C[m×n] = A[m×k]·B[n×k]ᵀ; dot-product kernel, 2×4 tile of accumulators.
void v_gemm_nt(const float* a, const float* b, float* c, int m, int k, int n, bool acc) {
    const int kv = k & ~7;
    int i = 0;
    for (; i + 2 <= m; i += 2) {
        const float* a0 = a + static_cast<size_t>(i) * k;
        const float* a1 = a0 + k;
        int j = 0;
        for (; j + 4 <= n; j += 4) {
            const float* b0 = b + static_cast<size_t>(j) * k;
            const float* b1 = b0 + k;
            const float* b2 = b1 + k;
            const float* b3 = b2 + k;
            __m256 s00 = _mm256_setzero_ps(), s01 = _mm256_setzero_ps(),
                   s02 = _mm256_setzero_ps(), s03 = _mm256_setzero_ps();
            __m256 s10 = _mm256_setzero_ps(), s11 = _mm256_setzero_ps(),
                   s12 = _mm256_setzero_ps(), s13 = _mm256_setzero_ps();
            for (int p = 0; p < kv; p += 8) {
                __m256 va0 = _mm256_loadu_ps(a0 + p);
                __m256 va1 = _mm256_loadu_ps(a1 + p);
                __m256 vb0 = _mm256_loadu_ps(b0 + p);
                __m256 vb1 = _mm256_loadu_ps(b1 + p);
                __m256 vb2 = _mm256_loadu_ps(b2 + p);
                __m256 vb3 = _mm256_loadu_ps(b3 + p);
                s00 = _mm256_fmadd_ps(va0, vb0, s00);
                s01 = _mm256_fmadd_ps(va0, vb1, s01);
                s02 = _mm256_fmadd_ps(va0, vb2, s02);
                s03 = _mm256_fmadd_ps(va0, vb3, s03);
                s10 = _mm256_fmadd_ps(va1, vb0, s10);
                s11 = _mm256_fmadd_ps(va1, vb1, s11);
                s12 = _mm256_fmadd_ps(va1, vb2, s12);
                s13 = _mm256_fmadd_ps(va1, vb3, s13);
            }
            float d[8] = {hsum8(s00), hsum8(s01), hsum8(s02), hsum8(s03),
                          hsum8(s10), hsum8(s11), hsum8(s12), hsum8(s13)};
            for (int p = kv; p < k; ++p) {
                d[0] += a0[p] * b0[p];
                d[1] += a0[p] * b1[p];
                d[2] += a0[p] * b2[p];
                d[3] += a0[p] * b3[p];
                d[4] += a1[p] * b0[p];
                d[5] += a1[p] * b1[p];
                d[6] += a1[p] * b2[p];
                d[7] += a1[p] * b3[p];
            }
            float* c0 = c + static_cast<size_t>(i) * n + j;
            float* c1 = c0 + n;
            for (int q = 0; q < 4; ++q) {
                c0[q] = acc ? c0[q] + d[q] : d[q];
                c1[q] = acc ? c1[q] + d[4 + q] : d[4 + q];
            }
        }
        for (; j < n; ++j) {
            const float* bj = b + static_cast<size_t>(j) * k;
            __m256 s0 = _mm256_setzero_ps(), s1 = _mm256_setzero_ps();
            for (int p = 0; p < kv; p += 8) {
                __m256 vb = _mm256_loadu_ps(bj + p);
                s0 = _mm256_fmadd_ps(_mm256_loadu_ps(a0 + p), vb, s0);
                s1 = _mm256_fmadd_ps(_mm256_loadu_ps(a1 + p), vb, s1);
            }
            float d0 = hsum8(s0), d1 = hsum8(s1);
            for (int p = kv; p < k; ++p) {
                d0 += a0[p] * bj[p];
                d1 += a1[p] * bj[p];
            }
            float* c0 = c + static_cast<size_t>(i) * n + j;
            c0[0] = acc ? c0[0] + d0 : d0;
            c0[n] = acc ? c0[n] + d1 : d1;
        }
    }
    for (; i < m; ++i) {
        const float* ai = a + static_cast<size_t>(i) * k;
        for (int j = 0; j < n; ++j) {
            const float* bj = b + static_cast<size_t>(j) * k;
            __m256 s = _mm256_setzero_ps();
            for (int p = 0; p < kv; p += 8)
                s = _mm256_fmadd_ps(_mm256_loadu_ps(ai + p), _mm256_loadu_ps(bj + p), s);
            float d = hsum8(s);
            for (int p = kv; p < k; ++p) d += ai[p] * bj[p];
            float* cp = c + static_cast<size_t>(i) * n + j;
            *cp = acc ? *cp + d : d;
        }
    }
}

// C[k×n] = Aᵀ·B via transpose of A then the nn kernel.
void v_gemm_tn(const float* a, const float* b, float* c, int m, int k, int n, bool acc) {
    thread_local std::vector<float> scratch;
    scratch.resize(static_cast<size_t>(m) * k);
    for (int i = 0; i < m; ++i)
        for (int p = 0; p < k; ++p) scratch[static_cast<size_t>(p) * m + i] = a[static_cast<size_t>(i) * k + p];
    v_gemm_nn(scratch.data(), b, c, k, m, n, acc);
}

// ---- elementwise ----

void v_add(const float* a, const float* b, float* out, size_t n) {
    size_t i = 0;
    for (; i + 8 <= n; i += 8)
        _mm256_storeu_ps(out + i, _mm256_add_ps(_mm256_loadu_ps(a + i), _mm256_loadu_ps(b + i)));
    for (; i < n; ++i) out[i] = a[i] + b[i];
}
void v_sub(const float* a, const float* b, float* out, size_t n) {
    size_t i = 0;
    for (; i + 8 <= n; i += 8)
        _mm256_storeu_ps(out + i, _mm256_sub_ps(_mm256_loadu_ps(a + i), _mm256_loadu_ps(b + i)));
    for (; i < n; ++i) out[i] = a[i] - b[i];
}
void v_mul(const float* a, const float* b, float* out, size_t n) {
    size_t i = 0;
    for (; i + 8 <= n; i += 8)
        _mm256_storeu_ps(out + i, _mm256_mul_ps(_mm256_loadu_ps(a + i), _mm256_loadu_ps(b + i)));
    for (; i < n; ++i) out[i] = a[i] * b[i];
}
void v_scale(const float* a, float s, float* out, size_t n) {
    __m256 vs = _mm256_set1_ps(s);
    size_t i = 0;
    for (; i + 8 <= n; i += 8)
        _mm256_storeu_ps(out + i, _mm256_mul_ps(_mm256_loadu_ps(a + i), vs));
    for (; i < n; ++i) out[i] = a[i] * s;
}
void v_axpy(float s, const float* x, float* y, size_t n) {
    __m256 vs = _mm256_set1_ps(s);
    size_t i = 0;
    for (; i + 8 <= n; i += 8)
        _mm256_storeu_ps(y + i, _mm256_fmadd_ps(vs, _mm256_loadu_ps(x + i), _mm256_loadu_ps(y + i)));
    for (; i < n; ++i) y[i] += s * x[i];
}
void v_mul_acc(const float* a, const float* b, float* out, size_t n) {
    size_t i = 0;
    for (; i + 8 <= n; i += 8)
        _mm256_storeu_ps(out + i, _mm256_fmadd_ps(_mm256_loadu_ps(a + i), _mm256_loadu_ps(b + i),
                                                  _mm256_loadu_ps(out + i)));
    for (; i < n; ++i) out[i] += a[i] * b[i];
}

void v_relu(const float* x, float* y, size_t n) {
    __m256 z = _mm256_setzero_ps();
    size_t i = 0;
    for (; i + 8 <= n; i += 8) _mm256_storeu_ps(y + i, _mm256_max_ps(_mm256_loadu_ps(x + i), z));
    for (; i < n; ++i) y[i] = x[i] > 0.0f ? x[i] : 0.0f;
}
void v_relu_bwd(const float* y, const float* dy, float* dx, size_t n) {
    __m256 z = _mm256_setzero_ps();
    size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m256 mask = _mm256_cmp_ps(_mm256_loadu_ps(y + i), z, _CMP_GT_OQ);
        __m256 g = _mm256_and_ps(mask, _mm256_loadu_ps(dy + i));
        _mm256_storeu_ps(dx + i, _mm256_add_ps(_mm256_loadu_ps(dx + i), g));
    }
    for (; i < n; ++i) dx[i] += y[i] > 0.0f ? dy[i] : 0.0f;
}

void v_sigmoid(const float* x, float* y, size_t n) {
    const __m256 one = _mm256_set1_ps(1.0f);
    size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m256 e = exp8(_mm256_sub_ps(_mm256_setzero_ps(), _mm256_loadu_ps(x + i)));
        _mm256_storeu_ps(y + i, _mm256_div_ps(one, _mm256_add_ps(one, e)));
    }
    for (; i < n; ++i) y[i] = 1.0f / (1.0f + std::exp(-x[i]));
}
void v_sigmoid_bwd(const float* y, const float* dy, float* dx, size_t n) {
    const __m256 one = _mm256_set1_ps(1.0f);
    size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m256 vy = _mm256_loadu_ps(y + i);
        __m256 g = _mm256_mul_ps(_mm256_mul_ps(vy, _mm256_sub_ps(one, vy)), _mm256_loadu_ps(dy + i));
        _mm256_storeu_ps(dx + i, _mm256_add_ps(_mm256_loadu_ps(dx + i), g));
    }
    for (; i < n; ++i) dx[i] += dy[i] * y[i] * (1.0f - y[i]);
}

// tanh(x) = 1 − 2/(e^{2x} + 1)
void v_tanh(const float* x, float* y, size_t n) {
    const __m256 one = _mm256_set1_ps(1.0f);
    const __m256 two = _mm256_set1_ps(2.0f);
    size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m256 e = exp8(_mm256_mul_ps(two, _mm256_loadu_ps(x + i)));
        __m256 t = _mm256_sub_ps(one, _mm256_div_ps(two, _mm256_add_ps(e, one)));
        _mm256_storeu_ps(y + i, t);
    }
    for (; i < n; ++i) y[i] = std::tanh(x[i]);
}
void v_tanh_bwd(const float* y, const float* dy, float* dx, size_t n) {
    const __m256 one = _mm256_set1_ps(1.0f);
    size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m256 vy = _mm256_loadu_ps(y + i);
        __m256 g = _mm256_mul_ps(_mm256_fnmadd_ps(vy, vy, one), _mm256_loadu_ps(dy + i));
        _mm256_storeu_ps(dx + i, _mm256_add_ps(_mm256_loadu_ps(dx + i), g));
    }
    for (; i < n; ++i) dx[i] += dy[i] * (1.0f - y[i] * y[i]);
}

void v_exp(const float* x, float* y, size_t n) {
    size_t i = 0;
    for (; i + 8 <= n; i += 8) _mm256_storeu_ps(y + i, exp8(_mm256_loadu_ps(x + i)));
    for (; i < n; ++i) y[i] = std::exp(x[i]);
}

void v_clamp(const float* x, float lo, float hi, float* y, size_t n) {
    __m256 vlo = _mm256_set1_ps(lo), vhi = _mm256_set1_ps(hi);
    size_t i = 0;
    for (; i + 8 <= n; i += 8)
        _mm256_storeu_ps(y + i, _mm256_min_ps(_mm256_max_ps(_mm256_loadu_ps(x + i), vlo), vhi));
    for (; i < n; ++i) y[i] = x[i] < lo ? lo : (x[i] > hi ? hi : x[i]);
}

double v_sum(const float* x, size_t n) {
    __m256d acc0 = _mm256_setzero_pd(), acc1 = _mm256_setzero_pd();
    size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m256 v = _mm256_loadu_ps(x + i);
        acc0 = _mm256_add_pd(acc0, _mm256_cvtps_pd(_mm256_castps256_ps128(v)));
        acc1 = _mm256_add_pd(acc1, _mm256_cvtps_pd(_mm256_extractf128_ps(v, 1)));
    }
    acc0 = _mm256_add_pd(acc0, acc1);
    double buf[4];
    _mm256_storeu_pd(buf, acc0);
    double s = buf[0] + buf[1] + buf[2] + buf[3];
    for (; i < n; ++i) s += x[i];
    return s;
}
double v_sumsq(const float* x, size_t n) {
    __m256d acc0 = _mm256_setzero_pd(), acc1 = _mm256_setzero_pd();
    size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m256 v = _mm256_loadu_ps(x + i);
        __m256d lo = _mm256_cvtps_pd(_mm256_castps256_ps128(v));
        __m256d hi = _mm256_cvtps_pd(_mm256_extractf128_ps(v, 1));
        acc0 = _mm256_fmadd_pd(lo, lo, acc0);
        acc1 = _mm256_fmadd_pd(hi, hi, acc1);
    }
    acc0 = _mm256_add_pd(acc0, acc1);
    double buf[4];
    _mm256_storeu_pd(buf, acc0);
    double s = buf[0] + buf[1] + buf[2] + buf[3];
    for (; i < n; ++i) s += static_cast<double>(x[i]) * x[i];
    return s;
}

void v_colsum_acc(const float* a, float* out, int rows, int cols) {
    for (int i = 0; i < rows; ++i) {
        const float* ai = a + static_cast<size_t>(i) * cols;
        int j = 0;
        for (; j + 8 <= cols; j += 8)
            _mm256_storeu_ps(out + j, _mm256_add_ps(_mm256_loadu_ps(out + j), _mm256_loadu_ps(ai + j)));
        for (; j < cols; ++j) out[j] += ai[j];
    }
}

void v_adam(float* p, const float* g, float* m, float* v, size_t n, float lr, float beta1,
            float beta2, float eps, float bc1, float bc2) {
    const __m256 vb1 = _mm256_set1_ps(beta1), vomb1 = _mm256_set1_ps(1.0f - beta1);
    const __m256 vb2 = _mm256_set1_ps(beta2), vomb2 = _mm256_set1_ps(1.0f - beta2);
    const __m256 vlr = _mm256_set1_ps(lr), veps = _mm256_set1_ps(eps);
    const __m256 vibc1 = _mm256_set1_ps(1.0f / bc1), vibc2 = _mm256_set1_ps(1.0f / bc2);
    size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m256 vg = _mm256_loadu_ps(g + i);
        __m256 vm = _mm256_fmadd_ps(vb1, _mm256_loadu_ps(m + i), _mm256_mul_ps(vomb1, vg));
        __m256 vv = _mm256_fmadd_ps(vb2, _mm256_loadu_ps(v + i), _mm256_mul_ps(vomb2, _mm256_mul_ps(vg, vg)));
        _mm256_storeu_ps(m + i, vm);
        _mm256_storeu_ps(v + i, vv);
        __m256 mhat = _mm256_mul_ps(vm, vibc1);
        __m256 vhat = _mm256_mul_ps(vv, vibc2);
        __m256 upd = _mm256_div_ps(_mm256_mul_ps(vlr, mhat), _mm256_add_ps(_mm256_sqrt_ps(vhat), veps));
        _mm256_storeu_ps(p + i, _mm256_sub_ps(_mm256_loadu_ps(p + i), upd));
    }
    for (; i < n; ++i) {
        m[i] = beta1 * m[i] + (1.0f - beta1) * g[i];
        v[i] = beta2 * v[i] + (1.0f - beta2) * g[i] * g[i];
        p[i] -= lr * (m[i] / bc1) / (std::sqrt(v[i] / bc2) + eps);
    }
}

}  // namespace

const Ops& avx2_ops() {
    static const Ops table = {
        .name = "avx2",
        .gemm_nn = v_gemm_nn,
        .gemm_nt = v_gemm_nt,
        .gemm_tn = v_gemm_tn,
        .add = v_add,
        .sub = v_sub,
        .mul = v_mul,
        .scale = v_scale,
        .axpy = v_axpy,
        .mul_acc = v_mul_acc,
        .relu = v_relu,
        .relu_bwd = v_relu_bwd,
        .tanh_fwd = v_tanh,
        .tanh_bwd = v_tanh_bwd,
        .sigmoid_fwd = v_sigmoid,
        .sigmoid_bwd = v_sigmoid_bwd,
        .exp_fwd = v_exp,
        .clamp_fwd = v_clamp,
        .sum = v_sum,
        .sumsq = v_sumsq,
        .colsum_acc = v_colsum_acc,
        .adam = v_adam,
    };
    return table;
}

}  // namespace ccrig::kern

#else  // non-x86: no AVX2 table; dispatch never selects it

namespace ccrig::kern {
const Ops& avx2_ops() { return scalar_ops(); }
}  // namespace ccrig::kern

#endif
