#pragma once

#include "xigemm/matrix.hpp"

namespace xigemm {

/// Frobenius-norm error report against a reference matrix.
struct ErrorReport {
    double e_r = 0.0;           // ||X_ref - X||_F
    double e_delta = 0.0;       // e_r / ||X_ref||_F (equals e_r when flagged)
    double max_elem_rel = 0.0;  // max |x_ref - x| / |x_ref|, skipping |x_ref| < 1e-12
    bool ref_norm_zero = false;
};

/// Norms accumulate in 64-bit float.
ErrorReport frobenius_error(const DenseMatrix& x_ref, const DenseMatrix& x);

}  // namespace xigemm
