#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "test_support.hpp"
#include "xigemm/qr.hpp"

using namespace xigemm;

namespace {

XigemmConfig qr_cfg(QuantBits bits) {
    XigemmConfig cfg;
    cfg.bits = bits;
    cfg.threshold = 0.1;
    cfg.density_limit = 1.0;
    cfg.scheme = QuantScheme::VectorWise;
    cfg.policy = ReductionPolicy::MinRule;
    return cfg;
}

double orthogonality_defect(const DenseMatrix& q) {
    DenseMatrix qt(q.cols, q.rows);
    for (int i = 0; i < q.rows; ++i) {
        for (int j = 0; j < q.cols; ++j) qt.at(j, i) = q.at(i, j);
    }
    const DenseMatrix gram = gemm_f32(qt, q);
    return frobenius_error(DenseMatrix::identity(q.cols), gram).e_r;
}

}  // namespace

TEST_CASE("identity factors into sign flips") {
    const DenseMatrix a = DenseMatrix::identity(4);
    const QrResult qr = householder_qr(a, MultiplyBackend::float_reference());
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            CHECK(std::fabs(std::fabs(qr.q.at(i, j)) - (i == j ? 1.0f : 0.0f)) < 1e-6);
            CHECK(std::fabs(std::fabs(qr.r.at(i, j)) - (i == j ? 1.0f : 0.0f)) < 1e-6);
        }
    }
    const DenseMatrix rebuilt = gemm_f32(qr.q, qr.r);
    CHECK(frobenius_error(a, rebuilt).e_r < 1e-6);
}

TEST_CASE("3-4-5 column") {
    const DenseMatrix a = DenseMatrix::from_data(2, 1, {3.0f, 4.0f});
    const QrResult qr = householder_qr(a, MultiplyBackend::float_reference());
    CHECK(std::fabs(std::fabs(qr.r.at(0, 0)) - 5.0f) < 1e-6);
    const DenseMatrix rebuilt = gemm_f32(qr.q, qr.r);
    CHECK(frobenius_error(a, rebuilt).e_delta < 1e-6);
}

TEST_CASE("float reference reconstruction at 64") {
    const DenseMatrix a = generate(DistributionSpec::normal(10.0, 3.0, 11), 64, 64);
    const MultiplyBackend ref = MultiplyBackend::float_reference();
    const QrResult qr = householder_qr(a, ref);
    CHECK(frobenius_error(a, ref.multiply(qr.q, qr.r)).e_delta <= 1e-5);

    // R is triangular up to float noise, bounded by 1e-6 * ||A||_F.
    const double scale = 1e-6 * frobenius_error(DenseMatrix(64, 64), a).e_r;
    for (int i = 0; i < 64; ++i) {
        for (int j = 0; j < i; ++j) {
            CHECK(std::fabs(qr.r.at(i, j)) <= scale);
        }
    }
}

TEST_CASE("float reference stays orthonormal through 256") {
    for (int size : {64, 256}) {
        const DenseMatrix a = generate(DistributionSpec::uniform01(5), size, size);
        const QrResult qr = householder_qr(a, MultiplyBackend::float_reference());
        CHECK(orthogonality_defect(qr.q) <= 1e-4);
    }
}

TEST_CASE("tall matrices and rank deficiency are tolerated") {
    DenseMatrix a(6, 3);
    a.at(0, 0) = 1.0f;
    a.at(1, 2) = 2.0f;  // middle column all zero
    const QrResult qr = householder_qr(a, MultiplyBackend::float_reference());
    const DenseMatrix rebuilt = gemm_f32(qr.q, qr.r);
    CHECK(frobenius_error(a, rebuilt).e_r < 1e-6);

    CHECK_THROWS_AS(householder_qr(DenseMatrix(3, 6), MultiplyBackend::float_reference()),
                    std::invalid_argument);
}

TEST_CASE("quantized backends order by compensation strength") {
    const std::vector<DistributionSpec> specs = {DistributionSpec::normal(10.0, 3.0, 42)};
    const XigemmConfig cfg = qr_cfg(QuantBits::Int8);
    const std::vector<std::pair<std::string, MultiplyBackend>> backends = {
        {"origin", MultiplyBackend::direct_quant(cfg)},
        {"full", MultiplyBackend::full_residual(cfg)},
        {"xigemm", MultiplyBackend::sparse_residual(cfg)},
        {"float", MultiplyBackend::float_reference()},
    };
    const std::vector<QrCell> cells = qr_error_table({32}, specs, backends);
    REQUIRE(cells.size() == 4);
    const double origin = cells[0].error.e_delta;
    const double xigemm_err = cells[2].error.e_delta;
    const double float_err = cells[3].error.e_delta;
    CHECK(xigemm_err < origin);
    CHECK(float_err <= 1e-5);
}

TEST_CASE("qr_error_table rejects empty inputs") {
    CHECK_THROWS_AS(qr_error_table({}, {DistributionSpec::uniform01(1)},
                                   {{"float", MultiplyBackend::float_reference()}}),
                    std::invalid_argument);
}
