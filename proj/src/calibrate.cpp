#include "xigemm/calibrate.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <thread>

#include "xigemm/random_matrix.hpp"
#include "xigemm/sparse.hpp"

namespace xigemm {

namespace {

using Clock = std::chrono::steady_clock;

constexpr double kMinDensity = 1.0 / 1024.0;

double time_once(const std::function<void()>& fn) {
    const auto start = Clock::now();
    fn();
    return std::chrono::duration<double>(Clock::now() - start).count();
}

double time_best_of(const std::function<void()>& fn, int reps) {
    double best = time_once(fn);
    for (int i = 1; i < reps; ++i) best = std::min(best, time_once(fn));
    return best;
}

SparseCsrI8 random_csr_i8(int size, double dens, SplitMix64& rng) {
    SparseCsrI8 s;
    s.rows = size;
    s.cols = size;
    s.row_ptr.assign(size + 1, 0);
    for (int i = 0; i < size; ++i) {
        for (int j = 0; j < size; ++j) {
            if (rng.next_unit() < dens) {
                s.col_idx.push_back(j);
                std::int8_t v = static_cast<std::int8_t>(static_cast<int>(rng.next() % 255) - 127);
                s.values.push_back(v == 0 ? std::int8_t{1} : v);
            }
        }
        s.row_ptr[i + 1] = static_cast<std::int32_t>(s.values.size());
    }
    return s;
}

}  // namespace

double calibrate_eta_from_model(const CostModel& model) {
    if (model(1.0) <= 1.0) return 1.0;
    if (model(kMinDensity) >= 1.0) return kMinDensity;
    double lo = kMinDensity;  // spmm wins here
    double hi = 1.0;          // gemm wins here
    for (int it = 0; it < 20; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (model(mid) <= 1.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

EtaCalibration calibrate_eta(int size, QuantBits bits, std::uint64_t seed) {
    if (size < 8) {
        throw std::invalid_argument("calibrate_eta: size too small to time");
    }
    EtaCalibration cal;
    cal.fingerprint = machine_fingerprint();

    const DenseMatrix b = generate(DistributionSpec::uniform01(seed), size, size);
    const DenseMatrix a = generate(DistributionSpec::uniform01(seed + 1), size, size);
    const QuantizedMatrix bq = quantize(b, bits, ScaleScheme::PerTensor, RoundingMode::Nearest);
    const QuantizedMatrix aq = quantize(a, bits, ScaleScheme::PerTensor, RoundingMode::Nearest);

    // Widen repetitions until the dense product comfortably beats the timer
    // resolution; warn when the initial budget was not enough.
    int reps = 3;
    double gemm_time = 0.0;
    for (;;) {
        gemm_time = time_best_of([&] { gemm_int(aq, bq); }, reps);
        if (gemm_time > 2e-4 || reps >= 512) break;
        reps *= 4;
        cal.timer_coarse_warning = true;
    }
    cal.repetitions = reps;

    SplitMix64 rng(seed ^ 0x5DEECE66DULL);
    const CostModel measured = [&](double dens) {
        const SparseCsrI8 s = random_csr_i8(size, dens, rng);
        const double spmm_time = time_best_of([&] { spmm_int(s, bq); }, reps);
        return spmm_time / gemm_time;
    };
    cal.eta = calibrate_eta_from_model(measured);
    return cal;
}

std::string machine_fingerprint() {
    std::string cpu = "unknown-cpu";
    std::ifstream info("/proc/cpuinfo");
    std::string line;
    while (std::getline(info, line)) {
        const auto pos = line.find("model name");
        if (pos != std::string::npos) {
            const auto colon = line.find(':');
            if (colon != std::string::npos && colon + 2 <= line.size()) {
                cpu = line.substr(colon + 2);
            }
            break;
        }
    }
    return cpu + " / " + std::to_string(std::thread::hardware_concurrency()) + " threads";
}

}  // namespace xigemm
