#pragma once

#include <cstdint>
#include <vector>

#include "xigemm/matrix.hpp"

namespace xigemm {

/// Supported integer bit widths. Int4 values are stored widened in 8-bit
/// storage; only the value range [-7, 7] differs from Int8.
enum class QuantBits : int { Int4 = 4, Int8 = 8 };

inline int bit_width(QuantBits b) { return static_cast<int>(b); }

/// Largest representable magnitude, 2^(n-1) - 1 (symmetric range).
inline std::int32_t quant_max(QuantBits b) { return (1 << (bit_width(b) - 1)) - 1; }

/// Floor truncates toward zero like an integer type cast and reproduces the
/// worked fixtures; Nearest (ties away from zero) halves the worst-case
/// residual and is the default.
enum class RoundingMode { Floor, Nearest };

enum class ScaleScheme { PerTensor, PerRow, PerColumn };

/// Quantization scale factors lambda. One value for PerTensor, one per row or
/// column otherwise. All values are positive and finite.
struct ScaleFactors {
    ScaleScheme scheme = ScaleScheme::PerTensor;
    std::vector<double> values;

    static ScaleFactors per_tensor(double lambda);

    double row_scale(int i) const { return scheme == ScaleScheme::PerRow ? values[i] : values[0]; }
    double col_scale(int j) const {
        return scheme == ScaleScheme::PerColumn ? values[j] : values[0];
    }

    /// Scale applying to entry (i, j) of the owning matrix.
    double scale_at(int i, int j) const {
        switch (scheme) {
            case ScaleScheme::PerRow: return values[i];
            case ScaleScheme::PerColumn: return values[j];
            default: return values[0];
        }
    }

    void validate(int rows, int cols) const;
};

/// Integer matrix payload together with everything needed to undo the
/// mapping: bit width, scales and the rounding mode that produced it.
struct QuantizedMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<std::int8_t> data;  // row-major, entries within +/- quant_max(bits)
    QuantBits bits = QuantBits::Int8;
    ScaleFactors scales;
    RoundingMode rounding = RoundingMode::Nearest;

    std::int8_t at(int i, int j) const { return data[static_cast<size_t>(i) * cols + j]; }

    /// Builds from raw integers, validating the range against `bits`.
    static QuantizedMatrix from_ints(int rows, int cols, std::vector<std::int8_t> ints,
                                     QuantBits bits, ScaleFactors scales,
                                     RoundingMode rounding = RoundingMode::Floor);

    QuantizedMatrix transposed() const;
};

/// lambda = (2^(N-1) - 1) / max_abs; returns 1.0 for an all-zero input so the
/// degenerate matrix quantizes to zeros with zero residual.
double compute_scale(double max_abs, QuantBits bits);

/// Quantizes one value: round(lambda * a) under `mode`, clamped to
/// [-qmax, qmax].
std::int32_t quantize_scalar(double a, double lambda, std::int32_t qmax, RoundingMode mode);

/// Symmetric linear quantization, q = round(lambda * a) clamped to the
/// integer range. Scales are computed per `scheme` from max |a| of the
/// relevant slice.
QuantizedMatrix quantize(const DenseMatrix& a, QuantBits bits, ScaleScheme scheme,
                         RoundingMode rounding);

/// Same mapping with caller-supplied scales.
QuantizedMatrix quantize_with_scales(const DenseMatrix& a, QuantBits bits, ScaleFactors scales,
                                     RoundingMode rounding);

DenseMatrix dequantize(const QuantizedMatrix& q);

/// RA = A - dequantize(Q); A is reconstructed by dequantize(Q) + RA up to one
/// float addition.
DenseMatrix residual(const DenseMatrix& a, const QuantizedMatrix& q);

/// Entry (i,j) = P[i][j] / (lambda_a_i * lambda_b_j). scalesA must be
/// PerTensor or PerRow, scalesB PerTensor or PerColumn.
DenseMatrix dequant_product(const IntMatrix& p, const ScaleFactors& scales_a,
                            const ScaleFactors& scales_b);

/// Exact integer product with 32-bit accumulation. The inner dimension is
/// checked against 2^(31 - 2N - 1) so accumulation cannot overflow.
IntMatrix gemm_int(const QuantizedMatrix& a, const QuantizedMatrix& b);

/// Largest inner dimension for which 32-bit accumulation is overflow-safe.
int gemm_int_max_inner(QuantBits bits);

}  // namespace xigemm
