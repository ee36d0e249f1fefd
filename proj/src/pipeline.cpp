#include "xigemm/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace xigemm {

namespace {

using Clock = std::chrono::steady_clock;

struct StageTimer {
    std::map<std::string, std::chrono::nanoseconds>& sink;
    const char* stage;
    Clock::time_point start = Clock::now();

    StageTimer(std::map<std::string, std::chrono::nanoseconds>& s, const char* name)
        : sink(s), stage(name) {}
    ~StageTimer() {
        sink[stage] += std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start);
    }
};

ScaleScheme left_scheme(QuantScheme s) {
    return s == QuantScheme::VectorWise ? ScaleScheme::PerRow : ScaleScheme::PerTensor;
}

ScaleScheme right_scheme(QuantScheme s) {
    return s == QuantScheme::VectorWise ? ScaleScheme::PerColumn : ScaleScheme::PerTensor;
}

struct PipelineOutput {
    DenseMatrix d;
    double density_a = 0.0;
    double density_b = 0.0;
    GemmPath path = GemmPath::DenseResidual;
    std::map<std::string, std::chrono::nanoseconds> timings;
};

// Shared body of the full-residual baseline and the hybrid. `reduce` disables
// the reduction/dispatch stages entirely, which pins the full-residual
// baseline to the exact computation of the hybrid's dense branch.
PipelineOutput run_residual_pipeline(const DenseMatrix& a, const DenseMatrix& b,
                                     const XigemmConfig& cfg, bool reduce) {
    cfg.validate();
    if (a.cols != b.rows) {
        throw std::invalid_argument("xigemm: inner dimensions do not match");
    }
    if (!a.all_finite() || !b.all_finite()) {
        throw std::invalid_argument("xigemm: inputs must be finite");
    }

    PipelineOutput out;
    auto& times = out.timings;
    times["quant"] = times["xxmm"] = times["reduce"] = times["package"] = {};

    QuantizedMatrix aq, bq;
    {
        StageTimer t(times, "quant");
        aq = quantize(a, cfg.bits, left_scheme(cfg.scheme), cfg.rounding);
        bq = quantize(b, cfg.bits, right_scheme(cfg.scheme), cfg.rounding);
    }

    IntMatrix d_int;
    {
        StageTimer t(times, "xxmm");
        d_int = gemm_int(aq, bq);
    }

    DenseMatrix d_f, a_deq, b_deq;
    {
        StageTimer t(times, "quant");
        d_f = dequant_product(d_int, aq.scales, bq.scales);
        a_deq = dequantize(aq);
        b_deq = dequantize(bq);
    }

    DenseMatrix ra, rb;
    {
        StageTimer t(times, "package");
        ra = subtract(a, a_deq);
        rb = subtract(b, b_deq);
    }

    QuantizedMatrix raq, rbq;
    {
        StageTimer t(times, "quant");
        // Residual values are already range-homogenized, so per-tensor scales
        // suffice regardless of the main scheme.
        raq = quantize(ra, cfg.bits, ScaleScheme::PerTensor, cfg.rounding);
        rbq = quantize(rb, cfg.bits, ScaleScheme::PerTensor, cfg.rounding);
    }

    bool sparse_path = false;
    QuantizedCsr a_red, b_red;
    if (reduce) {
        StageTimer t(times, "reduce");
        std::pair<std::vector<float>, std::vector<float>> stat =
            cfg.policy == ReductionPolicy::AvgRule ? get_avg_vectors(d_f)
                                                   : get_abs_min_vectors(d_f);
        const double scale_a = compute_scale(a.max_abs(), cfg.bits);
        const double scale_b = compute_scale(b.max_abs(), cfg.bits);
        SparseCsrF32 a_sparse = reduce_a(a, stat.first, cfg.threshold, cfg.policy, scale_b);
        SparseCsrF32 b_sparse = reduce_b(b, stat.second, cfg.threshold, cfg.policy, scale_a);
        out.density_a = density(a_sparse);
        out.density_b = density(b_sparse);
        a_red = quantize_csr(a_sparse, cfg.bits, left_scheme(cfg.scheme), cfg.rounding);
        b_red = quantize_csr(b_sparse, cfg.bits, right_scheme(cfg.scheme), cfg.rounding);
        sparse_path =
            std::max(out.density_a, out.density_b) < cfg.density_limit;
    }

    IntMatrix dr1_int, dr2_int;
    ScaleFactors dr1_left, dr2_right;
    {
        StageTimer t(times, "xxmm");
        if (sparse_path) {
            out.path = GemmPath::SparseResidual;
            dr1_int = spmm_int(a_red.matrix, rbq);
            // RA * B' with the sparse operand on the left: (B'^T * RA^T)^T.
            dr2_int = spmm_int(csr_transpose(b_red.matrix), raq.transposed()).transposed();
            dr1_left = a_red.scales;
            dr2_right = b_red.scales;
        } else {
            out.path = GemmPath::DenseResidual;
            dr1_int = gemm_int(aq, rbq);
            dr2_int = gemm_int(raq, bq);
            dr1_left = aq.scales;
            dr2_right = bq.scales;
        }
    }

    DenseMatrix dr1, dr2;
    {
        StageTimer t(times, "quant");
        dr1 = dequant_product(dr1_int, dr1_left, rbq.scales);
        dr2 = dequant_product(dr2_int, raq.scales, dr2_right);
    }

    {
        StageTimer t(times, "package");
        add_inplace(d_f, dr1);
        add_inplace(d_f, dr2);
    }

    out.d = std::move(d_f);
    return out;
}

}  // namespace

void XigemmConfig::validate() const {
    if (!(threshold > 0.0)) {
        throw std::invalid_argument("XigemmConfig: threshold M must be positive");
    }
    if (!(density_limit > 0.0) || density_limit > 1.0) {
        throw std::invalid_argument("XigemmConfig: density limit must be in (0, 1]");
    }
}

DenseMatrix quantized_gemm_direct(const QuantizedMatrix& aq, const QuantizedMatrix& bq) {
    return dequant_product(gemm_int(aq, bq), aq.scales, bq.scales);
}

DenseMatrix quantized_gemm_direct(const DenseMatrix& a, const DenseMatrix& b,
                                  const XigemmConfig& cfg) {
    cfg.validate();
    if (a.cols != b.rows) {
        throw std::invalid_argument("quantized_gemm_direct: inner dimensions do not match");
    }
    const QuantizedMatrix aq = quantize(a, cfg.bits, left_scheme(cfg.scheme), cfg.rounding);
    const QuantizedMatrix bq = quantize(b, cfg.bits, right_scheme(cfg.scheme), cfg.rounding);
    return quantized_gemm_direct(aq, bq);
}

DenseMatrix quantized_gemm_full_residual(const DenseMatrix& a, const DenseMatrix& b,
                                         const XigemmConfig& cfg) {
    return run_residual_pipeline(a, b, cfg, /*reduce=*/false).d;
}

GemmReport xigemm(const DenseMatrix& a, const DenseMatrix& b, const DenseMatrix* c, float alpha,
                  float beta, const XigemmConfig& cfg) {
    if (c != nullptr) {
        if (c->rows != a.rows || c->cols != b.cols) {
            throw std::invalid_argument("xigemm: C shape does not match the result");
        }
        if (!c->all_finite()) {
            throw std::invalid_argument("xigemm: inputs must be finite");
        }
    }
    PipelineOutput out = run_residual_pipeline(a, b, cfg, /*reduce=*/true);

    GemmReport report;
    {
        StageTimer t(out.timings, "package");
        if (c != nullptr) {
            axpby_inplace(out.d, alpha, *c, beta);
        } else if (alpha != 1.0f) {
            for (float& v : out.d.data) v *= alpha;
        }
    }
    report.result = std::move(out.d);
    report.density_a = out.density_a;
    report.density_b = out.density_b;
    report.path = out.path;
    report.timings = std::move(out.timings);
    return report;
}

GemmReport xigemm(const DenseMatrix& a, const DenseMatrix& b, const XigemmConfig& cfg) {
    return xigemm(a, b, nullptr, 1.0f, 0.0f, cfg);
}

std::pair<std::vector<float>, std::vector<float>> get_avg_vectors(const DenseMatrix& d) {
    if (d.rows == 0 || d.cols == 0) {
        throw std::invalid_argument("get_avg_vectors: empty matrix");
    }
    std::vector<double> row(d.rows, 0.0), col(d.cols, 0.0);
    for (int i = 0; i < d.rows; ++i) {
        for (int j = 0; j < d.cols; ++j) {
            const double v = std::fabs(static_cast<double>(d.at(i, j)));
            row[i] += v;
            col[j] += v;
        }
    }
    std::vector<float> row_means(d.rows), col_means(d.cols);
    for (int i = 0; i < d.rows; ++i) row_means[i] = static_cast<float>(row[i] / d.cols);
    for (int j = 0; j < d.cols; ++j) col_means[j] = static_cast<float>(col[j] / d.rows);
    return {std::move(row_means), std::move(col_means)};
}

std::pair<std::vector<float>, std::vector<float>> get_abs_min_vectors(const DenseMatrix& d) {
    if (d.rows == 0 || d.cols == 0) {
        throw std::invalid_argument("get_abs_min_vectors: empty matrix");
    }
    std::vector<float> row(d.rows, std::numeric_limits<float>::max());
    std::vector<float> col(d.cols, std::numeric_limits<float>::max());
    for (int i = 0; i < d.rows; ++i) {
        for (int j = 0; j < d.cols; ++j) {
            const float v = std::fabs(d.at(i, j));
            if (v < row[i]) row[i] = v;
            if (v < col[j]) col[j] = v;
        }
    }
    return {std::move(row), std::move(col)};
}

}  // namespace xigemm
