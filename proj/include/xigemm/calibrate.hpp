#pragma once

#include <functional>
#include <string>

#include "xigemm/quantize.hpp"

namespace xigemm {

/// Relative cost of SPMM at a given density, as a fraction of the dense GEMM
/// time at the same size. The sparse path pays off while the ratio is < 1.
using CostModel = std::function<double(double density)>;

struct EtaCalibration {
    double eta = 0.0;  // density at which SPMM and GEMM cost the same
    int repetitions = 1;
    bool timer_coarse_warning = false;
    std::string fingerprint;
};

/// Bisects the crossover density of `model` on (0, 1]. Returns 1.0 when SPMM
/// never loses, and the smallest probed density when it never wins.
double calibrate_eta_from_model(const CostModel& model);

/// Measures the host: times gemm_int and spmm_int on seeded random operands
/// at `size`, widening repetitions until the timer resolution is comfortably
/// beaten, then bisects the wall-time crossover.
EtaCalibration calibrate_eta(int size, QuantBits bits, std::uint64_t seed);

/// Host description recorded next to a calibrated eta.
std::string machine_fingerprint();

}  // namespace xigemm
