#include "ccrig/core/mat.hpp"

#include <cmath>

namespace ccrig {

bool all_finite(const float* p, size_t n) {
    for (size_t i = 0; i < n; ++i) {
        if (!std::isfinite(p[i])) return false;
    }
    return true;
}

bool all_finite(const Mat& m) { return all_finite(m.data(), m.size()); }

Mat hcat(const Mat& a, const Mat& b) {
    Mat out(a.rows(), a.cols() + b.cols());
    for (int r = 0; r < a.rows(); ++r) {
        std::copy(a.row(r), a.row(r) + a.cols(), out.row(r));
        std::copy(b.row(r), b.row(r) + b.cols(), out.row(r) + a.cols());
    }
    return out;
}

Mat take_cols(const Mat& m, int c0, int c1) {
    Mat out(m.rows(), c1 - c0);
    for (int r = 0; r < m.rows(); ++r) std::copy(m.row(r) + c0, m.row(r) + c1, out.row(r));
    return out;
}

}  // namespace ccrig
