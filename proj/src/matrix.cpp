#include "xigemm/matrix.hpp"

#include <cmath>
#include <utility>

namespace xigemm {

namespace {

void check_dims(int r, int c) {
    if (r < 1 || c < 1) {
        throw std::invalid_argument("matrix dimensions must be >= 1");
    }
}

}  // namespace

DenseMatrix::DenseMatrix(int r, int c) : rows(r), cols(c) {
    check_dims(r, c);
    data.assign(static_cast<size_t>(r) * c, 0.0f);
}

DenseMatrix DenseMatrix::from_data(int r, int c, std::vector<float> values) {
    check_dims(r, c);
    if (values.size() != static_cast<size_t>(r) * c) {
        throw std::invalid_argument("data length does not match rows*cols");
    }
    DenseMatrix m;
    m.rows = r;
    m.cols = c;
    m.data = std::move(values);
    if (!m.all_finite()) {
        throw std::invalid_argument("matrix entries must be finite");
    }
    return m;
}

DenseMatrix DenseMatrix::identity(int n) {
    DenseMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1.0f;
    return m;
}

bool DenseMatrix::all_finite() const {
    for (float v : data) {
        if (!std::isfinite(v)) return false;
    }
    return true;
}

float DenseMatrix::max_abs() const {
    float m = 0.0f;
    for (float v : data) {
        float a = std::fabs(v);
        if (a > m) m = a;
    }
    return m;
}

IntMatrix::IntMatrix(int r, int c) : rows(r), cols(c) {
    check_dims(r, c);
    data.assign(static_cast<size_t>(r) * c, 0);
}

IntMatrix IntMatrix::transposed() const {
    IntMatrix t(cols, rows);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) {
            t.at(j, i) = at(i, j);
        }
    }
    return t;
}

DenseMatrix gemm_f32(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols != b.rows) {
        throw std::invalid_argument("gemm_f32: inner dimensions do not match");
    }
    DenseMatrix c(a.rows, b.cols);
    std::vector<double> acc(static_cast<size_t>(b.cols));
    for (int i = 0; i < a.rows; ++i) {
        acc.assign(acc.size(), 0.0);
        for (int k = 0; k < a.cols; ++k) {
            const double aik = a.at(i, k);
            const float* brow = &b.data[static_cast<size_t>(k) * b.cols];
            for (int j = 0; j < b.cols; ++j) {
                acc[j] += aik * static_cast<double>(brow[j]);
            }
        }
        for (int j = 0; j < b.cols; ++j) {
            c.at(i, j) = static_cast<float>(acc[j]);
        }
    }
    return c;
}

DenseMatrix& axpby_inplace(DenseMatrix& d, float alpha, const DenseMatrix& c, float beta) {
    if (!d.same_shape(c)) {
        throw std::invalid_argument("axpby_inplace: shape mismatch");
    }
    for (size_t i = 0; i < d.data.size(); ++i) {
        d.data[i] = alpha * d.data[i] + beta * c.data[i];
    }
    return d;
}

DenseMatrix subtract(const DenseMatrix& a, const DenseMatrix& b) {
    if (!a.same_shape(b)) {
        throw std::invalid_argument("subtract: shape mismatch");
    }
    DenseMatrix r(a.rows, a.cols);
    for (size_t i = 0; i < a.data.size(); ++i) {
        r.data[i] = a.data[i] - b.data[i];
    }
    return r;
}

DenseMatrix& add_inplace(DenseMatrix& d, const DenseMatrix& x) {
    if (!d.same_shape(x)) {
        throw std::invalid_argument("add_inplace: shape mismatch");
    }
    for (size_t i = 0; i < d.data.size(); ++i) {
        d.data[i] += x.data[i];
    }
    return d;
}

}  // namespace xigemm
