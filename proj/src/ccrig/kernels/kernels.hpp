#pragma once

#include <cstddef>

namespace ccrig::kern {

// Flat f32 compute kernels behind the tensor engine. Two implementations
// exist: a scalar reference and an AVX2/FMA variant; `ops()` picks one at
// runtime from cpuid (overridable with CCRIG_KERNELS=scalar|avx2). The two
// variants are equivalence-tested; they may differ by float reassociation
// only, so a given process always runs a single variant end to end.
struct Ops {
    const char* name;

    // C[m×n] = A[m×k]·B[k×n]   (+= C when acc)
    void (*gemm_nn)(const float* a, const float* b, float* c, int m, int k, int n, bool acc);
    // C[m×n] = A[m×k]·B[n×k]ᵀ  (+= C when acc)
    void (*gemm_nt)(const float* a, const float* b, float* c, int m, int k, int n, bool acc);
    // C[k×n] = A[m×k]ᵀ·B[m×n]  (+= C when acc)
    void (*gemm_tn)(const float* a, const float* b, float* c, int m, int k, int n, bool acc);

    void (*add)(const float* a, const float* b, float* out, size_t n);
    void (*sub)(const float* a, const float* b, float* out, size_t n);
    void (*mul)(const float* a, const float* b, float* out, size_t n);
    void (*scale)(const float* a, float s, float* out, size_t n);
    void (*axpy)(float s, const float* x, float* y, size_t n);  // y += s·x
    void (*mul_acc)(const float* a, const float* b, float* out, size_t n);  // out += a⊙b

    void (*relu)(const float* x, float* y, size_t n);
    void (*relu_bwd)(const float* y, const float* dy, float* dx, size_t n);  // dx += dy·[y>0]
    void (*tanh_fwd)(const float* x, float* y, size_t n);
    void (*tanh_bwd)(const float* y, const float* dy, float* dx, size_t n);  // dx += dy·(1−y²)
    void (*sigmoid_fwd)(const float* x, float* y, size_t n);
    void (*sigmoid_bwd)(const float* y, const float* dy, float* dx, size_t n);  // dx += dy·y·(1−y)
    void (*exp_fwd)(const float* x, float* y, size_t n);
    void (*clamp_fwd)(const float* x, float lo, float hi, float* y, size_t n);

    double (*sum)(const float* x, size_t n);    // f64 accumulation
    double (*sumsq)(const float* x, size_t n);  // f64 accumulation
    // out[j] += Σ_i a[i·cols + j]
    void (*colsum_acc)(const float* a, float* out, int rows, int cols);

    // Adam with bias correction; bc1 = 1−β1ᵗ, bc2 = 1−β2ᵗ precomputed.
    void (*adam)(float* p, const float* g, float* m, float* v, size_t n, float lr, float beta1,
                 float beta2, float eps, float bc1, float bc2);
};

const Ops& scalar_ops();
const Ops& avx2_ops();  // valid to call only if avx2_supported()
bool avx2_supported();

// Active table. Selection happens on first use and is then fixed.
const Ops& ops();

}  // namespace ccrig::kern
