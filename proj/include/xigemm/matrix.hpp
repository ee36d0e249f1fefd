#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace xigemm {

/// Row-major dense matrix of 32-bit floats. Entries must be finite; use
/// from_data() when constructing from untrusted values.
struct DenseMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<float> data;  // length rows*cols

    DenseMatrix() = default;
    DenseMatrix(int r, int c);

    float& at(int i, int j) { return data[static_cast<size_t>(i) * cols + j]; }
    float at(int i, int j) const { return data[static_cast<size_t>(i) * cols + j]; }

    size_t size() const { return data.size(); }
    bool same_shape(const DenseMatrix& o) const { return rows == o.rows && cols == o.cols; }

    /// Validates the length and that every entry is finite.
    static DenseMatrix from_data(int r, int c, std::vector<float> values);
    static DenseMatrix identity(int n);

    bool all_finite() const;
    float max_abs() const;
};

/// Row-major dense matrix of 32-bit signed integers (accumulator precision).
struct IntMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<std::int32_t> data;

    IntMatrix() = default;
    IntMatrix(int r, int c);

    std::int32_t& at(int i, int j) { return data[static_cast<size_t>(i) * cols + j]; }
    std::int32_t at(int i, int j) const { return data[static_cast<size_t>(i) * cols + j]; }

    IntMatrix transposed() const;
};

/// Reference float GEMM, C = A*B. Accumulates each element in 64-bit float
/// over ascending k, so repeated calls are bitwise reproducible.
DenseMatrix gemm_f32(const DenseMatrix& a, const DenseMatrix& b);

/// D <- alpha*D + beta*C elementwise.
DenseMatrix& axpby_inplace(DenseMatrix& d, float alpha, const DenseMatrix& c, float beta);

DenseMatrix subtract(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix& add_inplace(DenseMatrix& d, const DenseMatrix& x);

}  // namespace xigemm
