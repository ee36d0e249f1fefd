#pragma once

#include <chrono>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "xigemm/matrix.hpp"
#include "xigemm/quantize.hpp"
#include "xigemm/sparse.hpp"

namespace xigemm {

/// PerTensor uses one scale per operand; VectorWise uses per-row scales for
/// the left operand and per-column scales for the right one.
enum class QuantScheme { PerTensor, VectorWise };

struct XigemmConfig {
    QuantBits bits = QuantBits::Int8;
    double threshold = 0.5;     // error threshold M driving the reduction
    double density_limit = 0.3; // s: sparse compensation only below this density
    QuantScheme scheme = QuantScheme::PerTensor;
    ReductionPolicy policy = ReductionPolicy::MinRule;
    RoundingMode rounding = RoundingMode::Nearest;

    void validate() const;
};

enum class GemmPath { SparseResidual, DenseResidual };

struct GemmReport {
    DenseMatrix result;
    double density_a = 0.0;
    double density_b = 0.0;
    GemmPath path = GemmPath::DenseResidual;
    // Wall time per stage: "quant", "xxmm", "reduce", "package".
    std::map<std::string, std::chrono::nanoseconds> timings;
};

/// Single quantized product, dequant_product(gemm_int(Q(A), Q(B))). The
/// uncompensated baseline ("origin").
DenseMatrix quantized_gemm_direct(const DenseMatrix& a, const DenseMatrix& b,
                                  const XigemmConfig& cfg);

/// Same product from already-quantized operands.
DenseMatrix quantized_gemm_direct(const QuantizedMatrix& aq, const QuantizedMatrix& bq);

/// Three-term residual compensation: the direct product plus the two dense
/// integer cross products with the quantized residuals. The residual-residual
/// term is omitted.
DenseMatrix quantized_gemm_full_residual(const DenseMatrix& a, const DenseMatrix& b,
                                         const XigemmConfig& cfg);

/// Full pipeline for D = alpha*A*B + beta*C: direct quantized product,
/// threshold reduction of A and B, then residual compensation through either
/// SPMM (both reduced densities below cfg.density_limit) or dense GEMM.
GemmReport xigemm(const DenseMatrix& a, const DenseMatrix& b, const DenseMatrix* c, float alpha,
                  float beta, const XigemmConfig& cfg);

/// Convenience form without the beta term.
GemmReport xigemm(const DenseMatrix& a, const DenseMatrix& b, const XigemmConfig& cfg);

/// Row and column means of |D|.
std::pair<std::vector<float>, std::vector<float>> get_avg_vectors(const DenseMatrix& d);

/// Row and column minima of |D| (MinRule statistic).
std::pair<std::vector<float>, std::vector<float>> get_abs_min_vectors(const DenseMatrix& d);

}  // namespace xigemm
