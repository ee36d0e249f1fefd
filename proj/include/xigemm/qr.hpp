#pragma once

#include <vector>

#include "xigemm/metrics.hpp"
#include "xigemm/pipeline.hpp"
#include "xigemm/random_matrix.hpp"

namespace xigemm {

/// Matrix-multiply backend for the QR routine. All kinds consume and produce
/// DenseMatrix; the quantized kinds read their settings from `cfg`.
struct MultiplyBackend {
    enum class Kind { FloatReference, DirectQuant, FullResidual, SparseResidual };

    Kind kind = Kind::FloatReference;
    XigemmConfig cfg;

    static MultiplyBackend float_reference();
    static MultiplyBackend direct_quant(const XigemmConfig& cfg);
    static MultiplyBackend full_residual(const XigemmConfig& cfg);
    static MultiplyBackend sparse_residual(const XigemmConfig& cfg);

    DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b) const;
};

struct QrResult {
    DenseMatrix q;
    DenseMatrix r;
};

/// Householder QR with a pluggable multiplication backend. The reflectors and
/// the triangularization run in float; accumulating Q (one reflector product
/// per column) routes through the backend. Requires rows >= cols.
QrResult householder_qr(const DenseMatrix& a, const MultiplyBackend& backend);

struct QrCell {
    int size = 0;
    DistKind dist = DistKind::Uniform01;
    QuantBits bits = QuantBits::Int8;
    std::string method;
    ErrorReport error;  // Q*R (through the backend) against the input
};

/// Reconstruction-error grid over sizes x distributions x backends. The
/// backend list pairs a label with the backend itself.
std::vector<QrCell> qr_error_table(const std::vector<int>& sizes,
                                   const std::vector<DistributionSpec>& specs,
                                   const std::vector<std::pair<std::string, MultiplyBackend>>& backends);

}  // namespace xigemm
