#pragma once

#include <cstdint>

#include "xigemm/matrix.hpp"

namespace xigemm {

/// The five evaluation distributions. Parameters follow the harness naming:
/// normal(mean, stddev), exponential(rate), poisson(rate), chi_square(dof).
enum class DistKind { Uniform01, Normal, Exponential, Poisson, ChiSquare };

struct DistributionSpec {
    DistKind kind = DistKind::Uniform01;
    double param1 = 0.0;  // mean / rate / dof
    double param2 = 0.0;  // stddev (Normal only)
    std::uint64_t seed = 0;

    static DistributionSpec uniform01(std::uint64_t seed);
    static DistributionSpec normal(double mean, double stddev, std::uint64_t seed);
    static DistributionSpec exponential(double rate, std::uint64_t seed);
    static DistributionSpec poisson(double rate, std::uint64_t seed);
    static DistributionSpec chi_square(int dof, std::uint64_t seed);

    void validate() const;
};

/// Deterministic seeded generation: identical (spec, rows, cols) calls produce
/// bitwise-identical matrices on every platform. The generator is a pinned
/// splitmix64 stream; normals come from Box-Muller, exponentials from
/// inversion, Poisson from Knuth's product method and chi-square from summed
/// squared normals.
DenseMatrix generate(const DistributionSpec& spec, int rows, int cols);

/// splitmix64, the pinned bit stream behind generate(). Exposed so fixtures
/// can be reproduced outside the library.
struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t seed) : state(seed) {}
    std::uint64_t next();
    /// Uniform in [0, 1), 53 mantissa bits.
    double next_unit();
};

}  // namespace xigemm
