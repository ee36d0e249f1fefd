#include "xigemm/sparse.hpp"

#include <algorithm>
#include <cmath>

namespace xigemm {

template <typename T>
void SparseCsr<T>::validate() const {
    if (rows < 0 || cols < 0) throw std::invalid_argument("csr: negative dimensions");
    if (row_ptr.size() != static_cast<size_t>(rows) + 1 || row_ptr.front() != 0 ||
        row_ptr.back() != nnz() || col_idx.size() != values.size()) {
        throw std::invalid_argument("csr: inconsistent structure");
    }
    for (int i = 0; i < rows; ++i) {
        if (row_ptr[i] > row_ptr[i + 1]) throw std::invalid_argument("csr: row_ptr not nondecreasing");
        for (std::int32_t p = row_ptr[i]; p < row_ptr[i + 1]; ++p) {
            if (col_idx[p] < 0 || col_idx[p] >= cols) {
                throw std::invalid_argument("csr: column index out of range");
            }
            if (p > row_ptr[i] && col_idx[p] <= col_idx[p - 1]) {
                throw std::invalid_argument("csr: column indices not strictly increasing");
            }
        }
    }
}

template void SparseCsr<float>::validate() const;
template void SparseCsr<std::int8_t>::validate() const;

namespace {

// Shared row/column reduction. `per_row` selects whether the stat vector and
// threshold apply along rows (A operand) or columns (B operand). Entries are
// retained on strict |value| > threshold; ties are dropped.
SparseCsrF32 reduce_impl(const DenseMatrix& m, const std::vector<float>& stat, double threshold_m,
                         ReductionPolicy policy, double scale_other, bool per_row) {
    if (!(threshold_m > 0.0)) {
        throw std::invalid_argument("reduce: threshold M must be positive");
    }
    if (!(scale_other > 0.0) || !std::isfinite(scale_other)) {
        throw std::invalid_argument("reduce: operand scale must be positive and finite");
    }
    const size_t stat_len = per_row ? static_cast<size_t>(m.rows) : static_cast<size_t>(m.cols);
    if (stat.size() != stat_len) {
        throw std::invalid_argument("reduce: stat vector length mismatch");
    }
    const int inner = per_row ? m.cols : m.rows;
    std::vector<double> threshold(stat.size());
    for (size_t i = 0; i < stat.size(); ++i) {
        if (policy == ReductionPolicy::AvgRule) {
            threshold[i] = threshold_m * stat[i];
        } else {
            threshold[i] = threshold_m * scale_other * stat[i] / inner;
        }
    }
    SparseCsrF32 s;
    s.rows = m.rows;
    s.cols = m.cols;
    s.row_ptr.assign(m.rows + 1, 0);
    for (int i = 0; i < m.rows; ++i) {
        for (int j = 0; j < m.cols; ++j) {
            const float v = m.at(i, j);
            const double t = per_row ? threshold[i] : threshold[j];
            if (std::fabs(static_cast<double>(v)) > t) {
                s.col_idx.push_back(j);
                s.values.push_back(v);
            }
        }
        s.row_ptr[i + 1] = static_cast<std::int32_t>(s.values.size());
    }
    return s;
}

}  // namespace

SparseCsrF32 reduce_a(const DenseMatrix& a, const std::vector<float>& c_row_stat, double m,
                      ReductionPolicy policy, double scale_other) {
    return reduce_impl(a, c_row_stat, m, policy, scale_other, /*per_row=*/true);
}

SparseCsrF32 reduce_b(const DenseMatrix& b, const std::vector<float>& c_col_stat, double m,
                      ReductionPolicy policy, double scale_other) {
    return reduce_impl(b, c_col_stat, m, policy, scale_other, /*per_row=*/false);
}

double density(const SparseCsrF32& s) {
    if (s.rows == 0 || s.cols == 0) return 0.0;
    return static_cast<double>(s.nnz()) / (static_cast<double>(s.rows) * s.cols);
}

double density(const SparseCsrI8& s) {
    if (s.rows == 0 || s.cols == 0) return 0.0;
    return static_cast<double>(s.nnz()) / (static_cast<double>(s.rows) * s.cols);
}

DenseMatrix spmm(const SparseCsrF32& s, const DenseMatrix& d) {
    if (s.cols != d.rows) {
        throw std::invalid_argument("spmm: inner dimensions do not match");
    }
    DenseMatrix c(s.rows, d.cols);
    std::vector<double> acc(static_cast<size_t>(d.cols));
    for (int i = 0; i < s.rows; ++i) {
        acc.assign(acc.size(), 0.0);
        for (std::int32_t p = s.row_ptr[i]; p < s.row_ptr[i + 1]; ++p) {
            const double v = s.values[p];
            const float* drow = &d.data[static_cast<size_t>(s.col_idx[p]) * d.cols];
            for (int j = 0; j < d.cols; ++j) {
                acc[j] += v * static_cast<double>(drow[j]);
            }
        }
        for (int j = 0; j < d.cols; ++j) {
            c.at(i, j) = static_cast<float>(acc[j]);
        }
    }
    return c;
}

IntMatrix spmm_int(const SparseCsrI8& s, const QuantizedMatrix& d) {
    if (s.cols != d.rows) {
        throw std::invalid_argument("spmm_int: inner dimensions do not match");
    }
    if (s.cols > gemm_int_max_inner(d.bits)) {
        throw std::invalid_argument("spmm_int: inner dimension permits 32-bit overflow");
    }
    IntMatrix c(s.rows, d.cols);
    for (int i = 0; i < s.rows; ++i) {
        std::int32_t* crow = &c.data[static_cast<size_t>(i) * d.cols];
        for (std::int32_t p = s.row_ptr[i]; p < s.row_ptr[i + 1]; ++p) {
            const std::int32_t v = s.values[p];
            const std::int8_t* drow = &d.data[static_cast<size_t>(s.col_idx[p]) * d.cols];
            for (int j = 0; j < d.cols; ++j) {
                crow[j] += v * static_cast<std::int32_t>(drow[j]);
            }
        }
    }
    return c;
}

SparseCsrF32 csr_from_dense(const DenseMatrix& a) {
    SparseCsrF32 s;
    s.rows = a.rows;
    s.cols = a.cols;
    s.row_ptr.assign(a.rows + 1, 0);
    for (int i = 0; i < a.rows; ++i) {
        for (int j = 0; j < a.cols; ++j) {
            const float v = a.at(i, j);
            if (v != 0.0f) {
                s.col_idx.push_back(j);
                s.values.push_back(v);
            }
        }
        s.row_ptr[i + 1] = static_cast<std::int32_t>(s.values.size());
    }
    return s;
}

DenseMatrix densify(const SparseCsrF32& s) {
    DenseMatrix a(s.rows, s.cols);
    for (int i = 0; i < s.rows; ++i) {
        for (std::int32_t p = s.row_ptr[i]; p < s.row_ptr[i + 1]; ++p) {
            a.at(i, s.col_idx[p]) = s.values[p];
        }
    }
    return a;
}

template <typename T>
SparseCsr<T> csr_transpose(const SparseCsr<T>& s) {
    SparseCsr<T> t;
    t.rows = s.cols;
    t.cols = s.rows;
    t.row_ptr.assign(s.cols + 1, 0);
    t.col_idx.resize(s.col_idx.size());
    t.values.resize(s.values.size());
    for (std::int32_t c : s.col_idx) ++t.row_ptr[c + 1];
    for (int i = 0; i < t.rows; ++i) t.row_ptr[i + 1] += t.row_ptr[i];
    std::vector<std::int32_t> fill(t.rows, 0);
    for (int i = 0; i < s.rows; ++i) {
        for (std::int32_t p = s.row_ptr[i]; p < s.row_ptr[i + 1]; ++p) {
            const std::int32_t c = s.col_idx[p];
            const std::int32_t at = t.row_ptr[c] + fill[c]++;
            t.col_idx[at] = i;
            t.values[at] = s.values[p];
        }
    }
    return t;
}

template SparseCsr<float> csr_transpose(const SparseCsr<float>&);
template SparseCsr<std::int8_t> csr_transpose(const SparseCsr<std::int8_t>&);

QuantizedCsr quantize_csr(const SparseCsrF32& s, QuantBits bits, ScaleScheme scheme,
                          RoundingMode rounding) {
    QuantizedCsr q;
    q.bits = bits;
    q.scales.scheme = scheme;
    const std::int32_t qmax = quant_max(bits);

    if (scheme == ScaleScheme::PerTensor) {
        double m = 0.0;
        for (float v : s.values) m = std::max(m, std::fabs(static_cast<double>(v)));
        q.scales.values = {compute_scale(m, bits)};
    } else if (scheme == ScaleScheme::PerRow) {
        q.scales.values.assign(s.rows, 1.0);
        for (int i = 0; i < s.rows; ++i) {
            double m = 0.0;
            for (std::int32_t p = s.row_ptr[i]; p < s.row_ptr[i + 1]; ++p) {
                m = std::max(m, std::fabs(static_cast<double>(s.values[p])));
            }
            q.scales.values[i] = compute_scale(m, bits);
        }
    } else {
        std::vector<double> colmax(s.cols, 0.0);
        for (int i = 0; i < s.rows; ++i) {
            for (std::int32_t p = s.row_ptr[i]; p < s.row_ptr[i + 1]; ++p) {
                colmax[s.col_idx[p]] =
                    std::max(colmax[s.col_idx[p]], std::fabs(static_cast<double>(s.values[p])));
            }
        }
        q.scales.values.resize(s.cols);
        for (int j = 0; j < s.cols; ++j) q.scales.values[j] = compute_scale(colmax[j], bits);
    }

    q.matrix.rows = s.rows;
    q.matrix.cols = s.cols;
    q.matrix.row_ptr = s.row_ptr;
    q.matrix.col_idx = s.col_idx;
    q.matrix.values.resize(s.values.size());
    for (int i = 0; i < s.rows; ++i) {
        for (std::int32_t p = s.row_ptr[i]; p < s.row_ptr[i + 1]; ++p) {
            const double lambda = scheme == ScaleScheme::PerRow      ? q.scales.values[i]
                                  : scheme == ScaleScheme::PerColumn ? q.scales.values[s.col_idx[p]]
                                                                     : q.scales.values[0];
            q.matrix.values[p] =
                static_cast<std::int8_t>(quantize_scalar(s.values[p], lambda, qmax, rounding));
        }
    }
    return q;
}

}  // namespace xigemm
