#pragma once

#include "gkms/types.hpp"

#include <cstdint>

namespace gkms {

/// xoshiro256** seeded through splitmix64, with Box-Muller normals drawn in
/// a fixed call order. The exact algorithm is part of the scenario file
/// contract: identical seeds must reproduce identical matrices.
class Rng {
public:
    explicit Rng(std::uint64_t seed);

    std::uint64_t next_u64();

    /// Uniform in (0, 1).
    double uniform();

    /// Standard normal via Box-Muller; draws two uniforms on every other
    /// call and caches the second variate.
    double normal();

    /// Complex entry (x + iy) / sqrt(2) with x, y standard normal.
    Complex normal_complex();

    /// Row-major fill, one normal_complex per entry.
    Matrix gaussian_matrix(int rows, int cols);

    /// Hermitian (A + A*) / 2 from a square Gaussian fill.
    Matrix gaussian_hermitian(int n);

private:
    std::uint64_t state_[4];
    bool has_cached_ = false;
    double cached_ = 0.0;
};

std::uint64_t splitmix64(std::uint64_t& state);

}  // namespace gkms
