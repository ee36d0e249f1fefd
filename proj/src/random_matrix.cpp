#include "xigemm/random_matrix.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace xigemm {

std::uint64_t SplitMix64::next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double SplitMix64::next_unit() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

DistributionSpec DistributionSpec::uniform01(std::uint64_t seed) {
    return DistributionSpec{DistKind::Uniform01, 0.0, 0.0, seed};
}

DistributionSpec DistributionSpec::normal(double mean, double stddev, std::uint64_t seed) {
    return DistributionSpec{DistKind::Normal, mean, stddev, seed};
}

DistributionSpec DistributionSpec::exponential(double rate, std::uint64_t seed) {
    return DistributionSpec{DistKind::Exponential, rate, 0.0, seed};
}

DistributionSpec DistributionSpec::poisson(double rate, std::uint64_t seed) {
    return DistributionSpec{DistKind::Poisson, rate, 0.0, seed};
}

DistributionSpec DistributionSpec::chi_square(int dof, std::uint64_t seed) {
    return DistributionSpec{DistKind::ChiSquare, static_cast<double>(dof), 0.0, seed};
}

void DistributionSpec::validate() const {
    switch (kind) {
        case DistKind::Uniform01:
            break;
        case DistKind::Normal:
            if (!(param2 > 0.0)) throw std::invalid_argument("normal: stddev must be positive");
            break;
        case DistKind::Exponential:
            if (!(param1 > 0.0)) throw std::invalid_argument("exponential: rate must be positive");
            break;
        case DistKind::Poisson:
            if (!(param1 > 0.0)) throw std::invalid_argument("poisson: rate must be positive");
            break;
        case DistKind::ChiSquare:
            if (!(param1 >= 1.0)) throw std::invalid_argument("chi_square: dof must be >= 1");
            break;
    }
}

namespace {

double sample_standard_normal(SplitMix64& rng) {
    // Box-Muller; only the cosine branch is used so the stream layout stays
    // trivially reproducible.
    const double u1 = 1.0 - rng.next_unit();  // (0, 1], keeps log() finite
    const double u2 = rng.next_unit();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double sample_poisson(SplitMix64& rng, double rate) {
    const double limit = std::exp(-rate);
    double p = 1.0;
    int k = 0;
    do {
        ++k;
        p *= rng.next_unit();
    } while (p > limit);
    return static_cast<double>(k - 1);
}

double sample(SplitMix64& rng, const DistributionSpec& spec) {
    switch (spec.kind) {
        case DistKind::Uniform01:
            return rng.next_unit();
        case DistKind::Normal:
            return spec.param1 + spec.param2 * sample_standard_normal(rng);
        case DistKind::Exponential:
            return -std::log(1.0 - rng.next_unit()) / spec.param1;
        case DistKind::Poisson:
            return sample_poisson(rng, spec.param1);
        case DistKind::ChiSquare: {
            double sum = 0.0;
            const int dof = static_cast<int>(spec.param1);
            for (int i = 0; i < dof; ++i) {
                const double z = sample_standard_normal(rng);
                sum += z * z;
            }
            return sum;
        }
    }
    return 0.0;
}

}  // namespace

DenseMatrix generate(const DistributionSpec& spec, int rows, int cols) {
    spec.validate();
    if (rows < 1 || cols < 1) {
        throw std::invalid_argument("generate: rows and cols must be >= 1");
    }
    SplitMix64 rng(spec.seed);
    DenseMatrix m(rows, cols);
    for (float& v : m.data) {
        v = static_cast<float>(sample(rng, spec));
    }
    return m;
}

}  // namespace xigemm
