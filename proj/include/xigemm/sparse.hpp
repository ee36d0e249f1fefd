#pragma once

#include <cstdint>
#include <vector>

#include "xigemm/matrix.hpp"
#include "xigemm/quantize.hpp"

namespace xigemm {

/// Compressed sparse row storage. Column indices are strictly increasing
/// within each row and explicit zeros are never stored, so equal structures
/// compare equal.
template <typename T>
struct SparseCsr {
    int rows = 0;
    int cols = 0;
    std::vector<std::int32_t> row_ptr;  // length rows + 1
    std::vector<std::int32_t> col_idx;
    std::vector<T> values;

    std::int64_t nnz() const { return static_cast<std::int64_t>(values.size()); }

    void validate() const;

    bool operator==(const SparseCsr& o) const {
        return rows == o.rows && cols == o.cols && row_ptr == o.row_ptr && col_idx == o.col_idx &&
               values == o.values;
    }
};

using SparseCsrF32 = SparseCsr<float>;
using SparseCsrI8 = SparseCsr<std::int8_t>;

/// Sparse int8 payload plus the quantization metadata of its values.
struct QuantizedCsr {
    SparseCsrI8 matrix;
    QuantBits bits = QuantBits::Int8;
    ScaleFactors scales;
};

/// AvgRule thresholds a row/column by M times the mean of |C|; MinRule by
/// M * lambda * min(|C|) / k with k the inner dimension.
enum class ReductionPolicy { AvgRule, MinRule };

/// Keeps the entries of A whose magnitude exceeds the per-row threshold
/// derived from `c_row_stat` (mean or min of |C| over the row, depending on
/// policy). `scale_other` is the quantization scale of the opposite operand,
/// used only by MinRule.
SparseCsrF32 reduce_a(const DenseMatrix& a, const std::vector<float>& c_row_stat, double m,
                      ReductionPolicy policy, double scale_other = 1.0);

/// Column-wise counterpart for the right operand.
SparseCsrF32 reduce_b(const DenseMatrix& b, const std::vector<float>& c_col_stat, double m,
                      ReductionPolicy policy, double scale_other = 1.0);

/// nnz / (rows * cols).
double density(const SparseCsrF32& s);
double density(const SparseCsrI8& s);

/// Sparse x dense product. Accumulates in 64-bit float over ascending k, so
/// the result is bitwise identical to gemm_f32 on the densified operand.
DenseMatrix spmm(const SparseCsrF32& s, const DenseMatrix& d);

/// Quantized variant; exact 32-bit integer accumulation.
IntMatrix spmm_int(const SparseCsrI8& s, const QuantizedMatrix& d);

SparseCsrF32 csr_from_dense(const DenseMatrix& a);
DenseMatrix densify(const SparseCsrF32& s);

template <typename T>
SparseCsr<T> csr_transpose(const SparseCsr<T>& s);

/// Quantizes the stored values; PerRow/PerColumn scales are taken over the
/// retained entries of each slice (1.0 where a slice is empty).
QuantizedCsr quantize_csr(const SparseCsrF32& s, QuantBits bits, ScaleScheme scheme,
                          RoundingMode rounding);

}  // namespace xigemm
