#include "xigemm/quantize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace xigemm {

// Truncation toward zero gets a few ulps of headroom away from zero so that
// values landing on an integer up to rounding noise (e.g. a_max * lambda with
// lambda = qmax / a_max) quantize to that integer.
std::int32_t quantize_scalar(double a, double lambda, std::int32_t qmax, RoundingMode mode) {
    double t = a * lambda;
    long long q;
    if (mode == RoundingMode::Floor) {
        t += std::copysign(4.0 * std::numeric_limits<double>::epsilon() * std::fabs(t), t);
        q = static_cast<long long>(std::trunc(t));
    } else {
        q = std::llround(t);
    }
    q = std::clamp<long long>(q, -qmax, qmax);
    return static_cast<std::int32_t>(q);
}

namespace {

double slice_max_abs(const DenseMatrix& a, ScaleScheme scheme, int index) {
    double m = 0.0;
    if (scheme == ScaleScheme::PerRow) {
        for (int j = 0; j < a.cols; ++j) m = std::max(m, std::fabs(static_cast<double>(a.at(index, j))));
    } else {
        for (int i = 0; i < a.rows; ++i) m = std::max(m, std::fabs(static_cast<double>(a.at(i, index))));
    }
    return m;
}

}  // namespace

ScaleFactors ScaleFactors::per_tensor(double lambda) {
    return ScaleFactors{ScaleScheme::PerTensor, {lambda}};
}

void ScaleFactors::validate(int rows, int cols) const {
    size_t expected = 1;
    if (scheme == ScaleScheme::PerRow) expected = static_cast<size_t>(rows);
    if (scheme == ScaleScheme::PerColumn) expected = static_cast<size_t>(cols);
    if (values.size() != expected) {
        throw std::invalid_argument("ScaleFactors: value count does not match scheme");
    }
    for (double v : values) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw std::invalid_argument("ScaleFactors: scales must be positive and finite");
        }
    }
}

QuantizedMatrix QuantizedMatrix::from_ints(int rows, int cols, std::vector<std::int8_t> ints,
                                           QuantBits bits, ScaleFactors scales,
                                           RoundingMode rounding) {
    if (ints.size() != static_cast<size_t>(rows) * cols) {
        throw std::invalid_argument("QuantizedMatrix: data length does not match rows*cols");
    }
    scales.validate(rows, cols);
    const std::int32_t qmax = quant_max(bits);
    for (std::int8_t v : ints) {
        if (v < -qmax || v > qmax) {
            throw std::invalid_argument("QuantizedMatrix: entry outside quantized range");
        }
    }
    QuantizedMatrix q;
    q.rows = rows;
    q.cols = cols;
    q.data = std::move(ints);
    q.bits = bits;
    q.scales = std::move(scales);
    q.rounding = rounding;
    return q;
}

QuantizedMatrix QuantizedMatrix::transposed() const {
    QuantizedMatrix t;
    t.rows = cols;
    t.cols = rows;
    t.bits = bits;
    t.rounding = rounding;
    t.scales = scales;
    if (scales.scheme == ScaleScheme::PerRow) t.scales.scheme = ScaleScheme::PerColumn;
    if (scales.scheme == ScaleScheme::PerColumn) t.scales.scheme = ScaleScheme::PerRow;
    t.data.resize(data.size());
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) {
            t.data[static_cast<size_t>(j) * rows + i] = at(i, j);
        }
    }
    return t;
}

double compute_scale(double max_abs, QuantBits bits) {
    if (!(max_abs >= 0.0) || !std::isfinite(max_abs)) {
        throw std::invalid_argument("compute_scale: max_abs must be finite and nonnegative");
    }
    if (max_abs == 0.0) return 1.0;
    return static_cast<double>(quant_max(bits)) / max_abs;
}

QuantizedMatrix quantize(const DenseMatrix& a, QuantBits bits, ScaleScheme scheme,
                         RoundingMode rounding) {
    ScaleFactors scales;
    scales.scheme = scheme;
    switch (scheme) {
        case ScaleScheme::PerTensor:
            scales.values = {compute_scale(a.max_abs(), bits)};
            break;
        case ScaleScheme::PerRow:
            scales.values.resize(a.rows);
            for (int i = 0; i < a.rows; ++i) {
                scales.values[i] = compute_scale(slice_max_abs(a, scheme, i), bits);
            }
            break;
        case ScaleScheme::PerColumn:
            scales.values.resize(a.cols);
            for (int j = 0; j < a.cols; ++j) {
                scales.values[j] = compute_scale(slice_max_abs(a, scheme, j), bits);
            }
            break;
    }
    return quantize_with_scales(a, bits, std::move(scales), rounding);
}

QuantizedMatrix quantize_with_scales(const DenseMatrix& a, QuantBits bits, ScaleFactors scales,
                                     RoundingMode rounding) {
    scales.validate(a.rows, a.cols);
    QuantizedMatrix q;
    q.rows = a.rows;
    q.cols = a.cols;
    q.bits = bits;
    q.rounding = rounding;
    q.scales = std::move(scales);
    q.data.resize(a.data.size());
    const std::int32_t qmax = quant_max(bits);
    for (int i = 0; i < a.rows; ++i) {
        for (int j = 0; j < a.cols; ++j) {
            const double lambda = q.scales.scale_at(i, j);
            q.data[static_cast<size_t>(i) * a.cols + j] =
                static_cast<std::int8_t>(quantize_scalar(a.at(i, j), lambda, qmax, rounding));
        }
    }
    return q;
}

DenseMatrix dequantize(const QuantizedMatrix& q) {
    DenseMatrix a(q.rows, q.cols);
    for (int i = 0; i < q.rows; ++i) {
        for (int j = 0; j < q.cols; ++j) {
            a.at(i, j) = static_cast<float>(q.at(i, j) / q.scales.scale_at(i, j));
        }
    }
    return a;
}

DenseMatrix residual(const DenseMatrix& a, const QuantizedMatrix& q) {
    if (a.rows != q.rows || a.cols != q.cols) {
        throw std::invalid_argument("residual: shape mismatch");
    }
    return subtract(a, dequantize(q));
}

DenseMatrix dequant_product(const IntMatrix& p, const ScaleFactors& scales_a,
                            const ScaleFactors& scales_b) {
    if (scales_a.scheme == ScaleScheme::PerColumn) {
        throw std::invalid_argument("dequant_product: left scales must be PerTensor or PerRow");
    }
    if (scales_b.scheme == ScaleScheme::PerRow) {
        throw std::invalid_argument("dequant_product: right scales must be PerTensor or PerColumn");
    }
    scales_a.validate(p.rows, 1);
    scales_b.validate(1, p.cols);
    DenseMatrix c(p.rows, p.cols);
    for (int i = 0; i < p.rows; ++i) {
        const double la = scales_a.row_scale(i);
        for (int j = 0; j < p.cols; ++j) {
            c.at(i, j) = static_cast<float>(p.at(i, j) / (la * scales_b.col_scale(j)));
        }
    }
    return c;
}

int gemm_int_max_inner(QuantBits bits) {
    return 1 << (31 - 2 * bit_width(bits) - 1);
}

IntMatrix gemm_int(const QuantizedMatrix& a, const QuantizedMatrix& b) {
    if (a.cols != b.rows) {
        throw std::invalid_argument("gemm_int: inner dimensions do not match");
    }
    const int limit = std::min(gemm_int_max_inner(a.bits), gemm_int_max_inner(b.bits));
    if (a.cols > limit) {
        throw std::invalid_argument("gemm_int: inner dimension permits 32-bit overflow");
    }
    IntMatrix c(a.rows, b.cols);
    for (int i = 0; i < a.rows; ++i) {
        std::int32_t* crow = &c.data[static_cast<size_t>(i) * b.cols];
        for (int k = 0; k < a.cols; ++k) {
            const std::int32_t aik = a.at(i, k);
            if (aik == 0) continue;
            const std::int8_t* brow = &b.data[static_cast<size_t>(k) * b.cols];
            for (int j = 0; j < b.cols; ++j) {
                crow[j] += aik * static_cast<std::int32_t>(brow[j]);
            }
        }
    }
    return c;
}

}  // namespace xigemm
