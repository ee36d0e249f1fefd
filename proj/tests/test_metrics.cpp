#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "test_support.hpp"
#include "worked_example.hpp"
#include "xigemm/matrix.hpp"
#include "xigemm/metrics.hpp"

using namespace xigemm;

TEST_CASE("identical matrices report zero error") {
    const DenseMatrix x = test_support::random_dense(5, 5, 3);
    const ErrorReport rep = frobenius_error(x, x);
    CHECK(rep.e_r == 0.0);
    CHECK(rep.e_delta == 0.0);
    CHECK(rep.max_elem_rel == 0.0);
    CHECK_FALSE(rep.ref_norm_zero);
}

TEST_CASE("3-4-5 absolute and relative error") {
    const DenseMatrix x_ref = DenseMatrix::from_data(1, 2, {3.0f, 4.0f});
    const ErrorReport rep = frobenius_error(x_ref, DenseMatrix(1, 2));
    CHECK(rep.e_r == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(rep.e_delta == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rep.max_elem_rel == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("relative error of the worked compensated result") {
    // The fixture's relative errors reproduce; its absolute-error column does
    // not follow from its own matrices and is only checked for ordering.
    const DenseMatrix ref = gemm_f32(worked_example::a_fp32(), worked_example::b_fp32());
    const ErrorReport fixed = frobenius_error(ref, worked_example::c_residual_fixed());
    const ErrorReport direct = frobenius_error(ref, worked_example::c_quant());
    CHECK(fixed.e_delta == doctest::Approx(0.011).epsilon(0.05));
    CHECK(direct.e_delta == doctest::Approx(0.035).epsilon(0.05));
    CHECK(fixed.e_r < direct.e_r);
}

TEST_CASE("zero-norm reference is flagged and reported as absolute") {
    const DenseMatrix zero(2, 2);
    const DenseMatrix x = DenseMatrix::from_data(2, 2, {1, 0, 0, 0});
    const ErrorReport rep = frobenius_error(zero, x);
    CHECK(rep.ref_norm_zero);
    CHECK(rep.e_delta == rep.e_r);
}

TEST_CASE("max_elem_rel skips tiny reference entries") {
    const DenseMatrix ref = DenseMatrix::from_data(1, 2, {1e-13f, 2.0f});
    const DenseMatrix x = DenseMatrix::from_data(1, 2, {1.0f, 1.0f});
    const ErrorReport rep = frobenius_error(ref, x);
    CHECK(rep.max_elem_rel == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("shape mismatch throws") {
    CHECK_THROWS_AS(frobenius_error(DenseMatrix(2, 2), DenseMatrix(2, 3)),
                    std::invalid_argument);
}

TEST_CASE("triangle inequality on random triples") {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        const DenseMatrix x = test_support::random_dense(6, 6, seed * 3);
        const DenseMatrix y = test_support::random_dense(6, 6, seed * 3 + 1);
        const DenseMatrix z = test_support::random_dense(6, 6, seed * 3 + 2);
        const double xz = frobenius_error(x, z).e_r;
        const double xy = frobenius_error(x, y).e_r;
        const double yz = frobenius_error(y, z).e_r;
        CHECK(xz <= xy + yz + 1e-12);
    }
}

TEST_CASE("scaling both operands scales e_r and fixes e_delta") {
    const DenseMatrix x = test_support::random_dense(7, 7, 12, 0.5f, 2.0f);
    const DenseMatrix y = test_support::random_dense(7, 7, 13, 0.5f, 2.0f);
    const ErrorReport base = frobenius_error(x, y);
    const float c = 4.0f;  // power of two, exact under float scaling
    DenseMatrix xs = x, ys = y;
    for (float& v : xs.data) v *= c;
    for (float& v : ys.data) v *= c;
    const ErrorReport scaled = frobenius_error(xs, ys);
    CHECK(scaled.e_r == doctest::Approx(base.e_r * c).epsilon(1e-12));
    CHECK(scaled.e_delta == doctest::Approx(base.e_delta).epsilon(1e-12));
}
