#include "xigemm/metrics.hpp"

#include <cmath>

namespace xigemm {

ErrorReport frobenius_error(const DenseMatrix& x_ref, const DenseMatrix& x) {
    if (!x_ref.same_shape(x)) {
        throw std::invalid_argument("frobenius_error: shape mismatch");
    }
    double diff_sq = 0.0;
    double ref_sq = 0.0;
    double max_rel = 0.0;
    for (size_t i = 0; i < x_ref.data.size(); ++i) {
        const double r = x_ref.data[i];
        const double d = r - static_cast<double>(x.data[i]);
        diff_sq += d * d;
        ref_sq += r * r;
        if (std::fabs(r) >= 1e-12) {
            max_rel = std::max(max_rel, std::fabs(d) / std::fabs(r));
        }
    }
    ErrorReport rep;
    rep.e_r = std::sqrt(diff_sq);
    rep.max_elem_rel = max_rel;
    const double ref_norm = std::sqrt(ref_sq);
    if (ref_norm > 0.0) {
        rep.e_delta = rep.e_r / ref_norm;
    } else {
        rep.e_delta = rep.e_r;
        rep.ref_norm_zero = true;
    }
    return rep;
}

}  // namespace xigemm
