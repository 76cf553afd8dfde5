#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "ccrig/core/rng.hpp"
#include "ccrig/kernels/kernels.hpp"

using namespace ccrig;

namespace {

std::vector<float> random_vec(size_t n, Rng& rng, float lo = -2.0f, float hi = 2.0f) {
    std::vector<float> v(n);
    for (auto& x : v) x = rng.uniform(lo, hi);
    return v;
}

void check_close(const std::vector<float>& a, const std::vector<float>& b, double rtol,
                 double atol) {
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) {
        double tol = atol + rtol * std::max(std::fabs(a[i]), std::fabs(b[i]));
        CHECK(std::fabs(static_cast<double>(a[i]) - b[i]) <= tol);
    }
}

}  // namespace

// Every AVX2 kernel must agree with the scalar reference up to float
// reassociation. Shapes cover remainders around the 8-lane width.
TEST_CASE("gemm variants: avx2 matches scalar reference") {
    if (!kern::avx2_supported()) return;
    const auto& S = kern::scalar_ops();
    const auto& V = kern::avx2_ops();
    Rng rng(42);
    struct Shape { int m, k, n; };
    for (auto [m, k, n] : {Shape{1, 1, 1}, Shape{3, 5, 7}, Shape{4, 16, 16}, Shape{8, 33, 12},
                           Shape{13, 70, 31}, Shape{2, 3072, 256}, Shape{31, 17, 63}}) {
        auto a = random_vec(static_cast<size_t>(m) * k, rng);
        auto bn = random_vec(static_cast<size_t>(k) * n, rng);
        auto bt = random_vec(static_cast<size_t>(n) * k, rng);
        auto btn = random_vec(static_cast<size_t>(m) * n, rng);

        // scalar accumulates sequentially, avx2 in 8 fma lanes; the drift
        // over a length-k reduction is a random walk, so scale atol by sqrt(k)
        double atol = 8e-6 * std::sqrt(static_cast<double>(k));

        std::vector<float> c0(static_cast<size_t>(m) * n), c1 = c0;
        S.gemm_nn(a.data(), bn.data(), c0.data(), m, k, n, false);
        V.gemm_nn(a.data(), bn.data(), c1.data(), m, k, n, false);
        check_close(c0, c1, 1e-5, atol);

        std::vector<float> d0(static_cast<size_t>(m) * n, 0.5f), d1 = d0;
        S.gemm_nt(a.data(), bt.data(), d0.data(), m, k, n, true);
        V.gemm_nt(a.data(), bt.data(), d1.data(), m, k, n, true);
        check_close(d0, d1, 1e-5, atol);

        std::vector<float> e0(static_cast<size_t>(k) * n), e1 = e0;
        S.gemm_tn(a.data(), btn.data(), e0.data(), m, k, n, false);
        V.gemm_tn(a.data(), btn.data(), e1.data(), m, k, n, false);
        check_close(e0, e1, 1e-5, 8e-6 * std::sqrt(static_cast<double>(m)));
    }
}

TEST_CASE("gemm correctness on hand cases") {
    const auto& K = kern::ops();
    // [1 2; 3 4] · [5 6; 7 8] = [19 22; 43 50]
    std::vector<float> a = {1, 2, 3, 4}, b = {5, 6, 7, 8}, c(4);
    K.gemm_nn(a.data(), b.data(), c.data(), 2, 2, 2, false);
    CHECK(c == std::vector<float>{19, 22, 43, 50});
    // A·Bᵀ with B = [5 7; 6 8] gives the same product
    std::vector<float> bt = {5, 7, 6, 8}, c2(4);
    K.gemm_nt(a.data(), bt.data(), c2.data(), 2, 2, 2, false);
    CHECK(c2 == std::vector<float>{19, 22, 43, 50});
    // Aᵀ·B with A = [1 3; 2 4] gives the same product
    std::vector<float> at = {1, 3, 2, 4}, c3(4);
    K.gemm_tn(at.data(), b.data(), c3.data(), 2, 2, 2, false);
    CHECK(c3 == std::vector<float>{19, 22, 43, 50});
}

TEST_CASE("elementwise kernels: avx2 matches scalar") {
    if (!kern::avx2_supported()) return;
    const auto& S = kern::scalar_ops();
    const auto& V = kern::avx2_ops();
    Rng rng(7);
    for (size_t n : {1ul, 7ul, 8ul, 9ul, 64ul, 1000ul}) {
        auto x = random_vec(n, rng, -5.0f, 5.0f);
        auto y = random_vec(n, rng);
        std::vector<float> r0(n), r1(n);

        S.add(x.data(), y.data(), r0.data(), n);
        V.add(x.data(), y.data(), r1.data(), n);
        CHECK(r0 == r1);
        S.sub(x.data(), y.data(), r0.data(), n);
        V.sub(x.data(), y.data(), r1.data(), n);
        CHECK(r0 == r1);
        S.mul(x.data(), y.data(), r0.data(), n);
        V.mul(x.data(), y.data(), r1.data(), n);
        CHECK(r0 == r1);
        S.scale(x.data(), 1.7f, r0.data(), n);
        V.scale(x.data(), 1.7f, r1.data(), n);
        CHECK(r0 == r1);
        S.relu(x.data(), r0.data(), n);
        V.relu(x.data(), r1.data(), n);
        CHECK(r0 == r1);
        S.clamp_fwd(x.data(), -1.0f, 2.0f, r0.data(), n);
        V.clamp_fwd(x.data(), -1.0f, 2.0f, r1.data(), n);
        CHECK(r0 == r1);

        S.exp_fwd(x.data(), r0.data(), n);
        V.exp_fwd(x.data(), r1.data(), n);
        check_close(r0, r1, 2e-7, 1e-9);
        S.tanh_fwd(x.data(), r0.data(), n);
        V.tanh_fwd(x.data(), r1.data(), n);
        check_close(r0, r1, 1e-6, 1e-7);
        S.sigmoid_fwd(x.data(), r0.data(), n);
        V.sigmoid_fwd(x.data(), r1.data(), n);
        check_close(r0, r1, 1e-6, 1e-7);

        auto dy = random_vec(n, rng);
        std::vector<float> d0(n, 0.25f), d1(n, 0.25f);
        S.tanh_bwd(r0.data(), dy.data(), d0.data(), n);
        V.tanh_bwd(r0.data(), dy.data(), d1.data(), n);
        check_close(d0, d1, 1e-6, 1e-7);

        CHECK(std::fabs(S.sum(x.data(), n) - V.sum(x.data(), n)) <= 1e-9 * n + 1e-10);
        CHECK(std::fabs(S.sumsq(x.data(), n) - V.sumsq(x.data(), n)) <= 1e-9 * n + 1e-10);
    }
}

TEST_CASE("vector exp stays accurate across the reduced range") {
    if (!kern::avx2_supported()) return;
    const auto& V = kern::avx2_ops();
    std::vector<float> xs, ys;
    for (float x = -80.0f; x <= 80.0f; x += 0.37f) xs.push_back(x);
    ys.resize(xs.size());
    V.exp_fwd(xs.data(), ys.data(), xs.size());
    for (size_t i = 0; i < xs.size(); ++i) {
        double exact = std::exp(static_cast<double>(xs[i]));
        CHECK(std::fabs(ys[i] - exact) <= 3e-7 * exact);
    }
}

TEST_CASE("adam kernel: avx2 matches scalar") {
    if (!kern::avx2_supported()) return;
    const auto& S = kern::scalar_ops();
    const auto& V = kern::avx2_ops();
    Rng rng(11);
    size_t n = 37;
    auto g = random_vec(n, rng);
    auto p0 = random_vec(n, rng);
    auto p1 = p0;
    std::vector<float> m0(n, 0.0f), v0(n, 0.0f), m1 = m0, v1 = v0;
    for (int t = 1; t <= 5; ++t) {
        float bc1 = 1.0f - std::pow(0.9f, static_cast<float>(t));
        float bc2 = 1.0f - std::pow(0.999f, static_cast<float>(t));
        S.adam(p0.data(), g.data(), m0.data(), v0.data(), n, 1e-3f, 0.9f, 0.999f, 1e-8f, bc1, bc2);
        V.adam(p1.data(), g.data(), m1.data(), v1.data(), n, 1e-3f, 0.9f, 0.999f, 1e-8f, bc1, bc2);
    }
    check_close(p0, p1, 1e-6, 1e-7);
    check_close(m0, m1, 1e-6, 1e-7);
    check_close(v0, v1, 1e-6, 1e-7);
}

TEST_CASE("colsum accumulates column totals") {
    const auto& K = kern::ops();
    std::vector<float> a = {1, 2, 3, 4, 5, 6};  // 2x3
    std::vector<float> out(3, 1.0f);
    K.colsum_acc(a.data(), out.data(), 2, 3);
    CHECK(out == std::vector<float>{6, 8, 10});
}

TEST_CASE("dispatch selects a table and sticks with it") {
    const auto& first = kern::ops();
    const auto& second = kern::ops();
    CHECK(&first == &second);
    CHECK((std::string(first.name) == "avx2" || std::string(first.name) == "scalar"));
}
