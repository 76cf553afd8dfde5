#include <cmath>
#include <cstring>
#include <vector>

#include "ccrig/kernels/kernels.hpp"

// Reference kernels. Plain loops, f64 accumulation where the API says so.
// These define the semantics the AVX2 variants are tested against.

namespace ccrig::kern {
namespace {

void s_gemm_nn(const float* a, const float* b, float* c, int m, int k, int n, bool acc) {
    if (!acc) std::memset(c, 0, sizeof(float) * static_cast<size_t>(m) * n);
    for (int i = 0; i < m; ++i) {
        const float* ai = a + static_cast<size_t>(i) * k;
        float* ci = c + static_cast<size_t>(i) * n;
        for (int p = 0; p < k; ++p) {
            float av = ai[p];
            const float* bp = b + static_cast<size_t>(p) * n;
            for (int j = 0; j < n; ++j) ci[j] += av * bp[j];
        }
    }
}

void s_gemm_nt(const float* a, const float* b, float* c, int m, int k, int n, bool acc) {
    for (int i = 0; i < m; ++i) {
        const float* ai = a + static_cast<size_t>(i) * k;
        float* ci = c + static_cast<size_t>(i) * n;
        for (int j = 0; j < n; ++j) {
            const float* bj = b + static_cast<size_t>(j) * k;
            float dot = 0.0f;
            for (int p = 0; p < k; ++p) dot += ai[p] * bj[p];
            ci[j] = acc ? ci[j] + dot : dot;
        }
    }
}

void s_gemm_tn(const float* a, const float* b, float* c, int m, int k, int n, bool acc) {
    if (!acc) std::memset(c, 0, sizeof(float) * static_cast<size_t>(k) * n);
    for (int i = 0; i < m; ++i) {
        const float* ai = a + static_cast<size_t>(i) * k;
        const float* bi = b + static_cast<size_t>(i) * n;
        for (int p = 0; p < k; ++p) {
            float av = ai[p];
            float* cp = c + static_cast<size_t>(p) * n;
            for (int j = 0; j < n; ++j) cp[j] += av * bi[j];
        }
    }
}

void s_add(const float* a, const float* b, float* out, size_t n) {
    for (size_t i = 0; i < n; ++i) out[i] = a[i] + b[i];
}
void s_sub(const float* a, const float* b, float* out, size_t n) {
    for (size_t i = 0; i < n; ++i) out[i] = a[i] - b[i];
}
void s_mul(const float* a, const float* b, float* out, size_t n) {
    for (size_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}
void s_scale(const float* a, float s, float* out, size_t n) {
    for (size_t i = 0; i < n; ++i) out[i] = a[i] * s;
}
void s_axpy(float s, const float* x, float* y, size_t n) {
    for (size_t i = 0; i < n; ++i) y[i] += s * x[i];
}
void s_mul_acc(const float* a, const float* b, float* out, size_t n) {
    for (size_t i = 0; i < n; ++i) out[i] += a[i] * b[i];
}

void s_relu(const float* x, float* y, size_t n) {
    for (size_t i = 0; i < n; ++i) y[i] = x[i] > 0.0f ? x[i] : 0.0f;
}
void s_relu_bwd(const float* y, const float* dy, float* dx, size_t n) {
    for (size_t i = 0; i < n; ++i) dx[i] += y[i] > 0.0f ? dy[i] : 0.0f;
}
void s_tanh(const float* x, float* y, size_t n) {
    for (size_t i = 0; i < n; ++i) y[i] = std::tanh(x[i]);
}
void s_tanh_bwd(const float* y, const float* dy, float* dx, size_t n) {
    for (size_t i = 0; i < n; ++i) dx[i] += dy[i] * (1.0f - y[i] * y[i]);
}
void s_sigmoid(const float* x, float* y, size_t n) {
    for (size_t i = 0; i < n; ++i) y[i] = 1.0f / (1.0f + std::exp(-x[i]));
}
void s_sigmoid_bwd(const float* y, const float* dy, float* dx, size_t n) {
    for (size_t i = 0; i < n; ++i) dx[i] += dy[i] * y[i] * (1.0f - y[i]);
}
void s_exp(const float* x, float* y, size_t n) {
    for (size_t i = 0; i < n; ++i) y[i] = std::exp(x[i]);
}
void s_clamp(const float* x, float lo, float hi, float* y, size_t n) {
    for (size_t i = 0; i < n; ++i) y[i] = x[i] < lo ? lo : (x[i] > hi ? hi : x[i]);
}

double s_sum(const float* x, size_t n) {
    double acc = 0.0;
    for (size_t i = 0; i < n; ++i) acc += x[i];
    return acc;
}
double s_sumsq(const float* x, size_t n) {
    double acc = 0.0;
    for (size_t i = 0; i < n; ++i) acc += static_cast<double>(x[i]) * x[i];
    return acc;
}
void s_colsum_acc(const float* a, float* out, int rows, int cols) {
    for (int i = 0; i < rows; ++i) {
        const float* ai = a + static_cast<size_t>(i) * cols;
        for (int j = 0; j < cols; ++j) out[j] += ai[j];
    }
}

void s_adam(float* p, const float* g, float* m, float* v, size_t n, float lr, float beta1,
            float beta2, float eps, float bc1, float bc2) {
    for (size_t i = 0; i < n; ++i) {
        m[i] = beta1 * m[i] + (1.0f - beta1) * g[i];
        v[i] = beta2 * v[i] + (1.0f - beta2) * g[i] * g[i];
        float mhat = m[i] / bc1;
        float vhat = v[i] / bc2;
        p[i] -= lr * mhat / (std::sqrt(vhat) + eps);
    }
}

}  // namespace

const Ops& scalar_ops() {
    static const Ops table = {
        .name = "scalar",
        .gemm_nn = s_gemm_nn,
        .gemm_nt = s_gemm_nt,
        .gemm_tn = s_gemm_tn,
        .add = s_add,
        .sub = s_sub,
        .mul = s_mul,
        .scale = s_scale,
        .axpy = s_axpy,
        .mul_acc = s_mul_acc,
        .relu = s_relu,
        .relu_bwd = s_relu_bwd,
        .tanh_fwd = s_tanh,
        .tanh_bwd = s_tanh_bwd,
        .sigmoid_fwd = s_sigmoid,
        .sigmoid_bwd = s_sigmoid_bwd,
        .exp_fwd = s_exp,
        .clamp_fwd = s_clamp,
        .sum = s_sum,
        .sumsq = s_sumsq,
        .colsum_acc = s_colsum_acc,
        .adam = s_adam,
    };
    return table;
}

}  // namespace ccrig::kern
