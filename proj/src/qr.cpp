#include "xigemm/qr.hpp"

#include <cmath>

namespace xigemm {

MultiplyBackend MultiplyBackend::float_reference() { return MultiplyBackend{}; }

MultiplyBackend MultiplyBackend::direct_quant(const XigemmConfig& cfg) {
    return MultiplyBackend{Kind::DirectQuant, cfg};
}

MultiplyBackend MultiplyBackend::full_residual(const XigemmConfig& cfg) {
    return MultiplyBackend{Kind::FullResidual, cfg};
}

MultiplyBackend MultiplyBackend::sparse_residual(const XigemmConfig& cfg) {
    return MultiplyBackend{Kind::SparseResidual, cfg};
}

DenseMatrix MultiplyBackend::multiply(const DenseMatrix& a, const DenseMatrix& b) const {
    switch (kind) {
        case Kind::FloatReference: return gemm_f32(a, b);
        case Kind::DirectQuant: return quantized_gemm_direct(a, b, cfg);
        case Kind::FullResidual: return quantized_gemm_full_residual(a, b, cfg);
        case Kind::SparseResidual: return xigemm(a, b, cfg).result;
    }
    return gemm_f32(a, b);
}

QrResult householder_qr(const DenseMatrix& a, const MultiplyBackend& backend) {
    if (a.rows < a.cols) {
        throw std::invalid_argument("householder_qr: requires rows >= cols");
    }
    const int m = a.rows;
    const int n = a.cols;

    DenseMatrix r = a;
    DenseMatrix q;
    bool q_started = false;
    std::vector<double> v(m);

    const int steps = std::min(n, m - 1);
    for (int k = 0; k < steps; ++k) {
        double norm_sq = 0.0;
        for (int i = k; i < m; ++i) {
            const double x = r.at(i, k);
            norm_sq += x * x;
        }
        if (norm_sq == 0.0) continue;  // zero column, nothing to eliminate

        const double x0 = r.at(k, k);
        const double alpha = -std::copysign(std::sqrt(norm_sq), x0);
        v[k] = x0 - alpha;
        for (int i = k + 1; i < m; ++i) v[i] = r.at(i, k);
        double v_sq = v[k] * v[k];
        for (int i = k + 1; i < m; ++i) v_sq += v[i] * v[i];
        if (v_sq == 0.0) continue;

        // Triangularize in float with double accumulation.
        for (int j = k; j < n; ++j) {
            double dot = 0.0;
            for (int i = k; i < m; ++i) dot += v[i] * r.at(i, j);
            const double f = 2.0 * dot / v_sq;
            for (int i = k; i < m; ++i) {
                r.at(i, j) = static_cast<float>(r.at(i, j) - f * v[i]);
            }
        }

        // H_k = I - 2 v v^T / |v|^2; Q accumulates through the backend.
        DenseMatrix h = DenseMatrix::identity(m);
        for (int i = k; i < m; ++i) {
            for (int j = k; j < m; ++j) {
                h.at(i, j) = static_cast<float>(h.at(i, j) - 2.0 * v[i] * v[j] / v_sq);
            }
        }
        if (q_started) {
            q = backend.multiply(q, h);
        } else {
            q = std::move(h);
            q_started = true;
        }
    }
    if (!q_started) q = DenseMatrix::identity(m);
    return QrResult{std::move(q), std::move(r)};
}

std::vector<QrCell> qr_error_table(
    const std::vector<int>& sizes, const std::vector<DistributionSpec>& specs,
    const std::vector<std::pair<std::string, MultiplyBackend>>& backends) {
    if (sizes.empty() || specs.empty() || backends.empty()) {
        throw std::invalid_argument("qr_error_table: empty inputs");
    }
    std::vector<QrCell> cells;
    for (int size : sizes) {
        for (const DistributionSpec& spec : specs) {
            const DenseMatrix a = generate(spec, size, size);
            for (const auto& [label, backend] : backends) {
                const QrResult qr = householder_qr(a, backend);
                const DenseMatrix rebuilt = backend.multiply(qr.q, qr.r);
                QrCell cell;
                cell.size = size;
                cell.dist = spec.kind;
                cell.bits = backend.cfg.bits;
                cell.method = label;
                cell.error = frobenius_error(a, rebuilt);
                cells.push_back(std::move(cell));
            }
        }
    }
    return cells;
}

}  // namespace xigemm
