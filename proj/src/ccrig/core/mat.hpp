#pragma once

#include <cassert>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace ccrig {

// Dense row-major f32 matrix. Vectors are 1×n (row) by convention.
class Mat {
public:
    Mat() = default;
    Mat(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols, 0.0f) {}
    Mat(int rows, int cols, std::initializer_list<float> vals) : Mat(rows, cols) {
        assert(vals.size() == data_.size());
        size_t i = 0;
        for (float v : vals) data_[i++] = v;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    size_t size() const { return data_.size(); }
    bool empty() const { return data_.empty(); }

    float* data() { return data_.data(); }
    const float* data() const { return data_.data(); }

    float& operator()(int r, int c) { return data_[static_cast<size_t>(r) * cols_ + c]; }
    float operator()(int r, int c) const { return data_[static_cast<size_t>(r) * cols_ + c]; }
    float& operator[](size_t i) { return data_[i]; }
    float operator[](size_t i) const { return data_[i]; }

    const float* row(int r) const { return data_.data() + static_cast<size_t>(r) * cols_; }
    float* row(int r) { return data_.data() + static_cast<size_t>(r) * cols_; }

    bool same_shape(const Mat& o) const { return rows_ == o.rows_ && cols_ == o.cols_; }

    void fill(float v) { std::fill(data_.begin(), data_.end(), v); }
    void set_zero() { fill(0.0f); }

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<float> data_;
};

bool all_finite(const Mat& m);
bool all_finite(const float* p, size_t n);

Mat hcat(const Mat& a, const Mat& b);
Mat take_cols(const Mat& m, int c0, int c1);

}  // namespace ccrig
