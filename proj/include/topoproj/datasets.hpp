#pragma once

#include <cstdint>

#include "topoproj/point_cloud.hpp"

namespace topoproj {

// The classic 150 x 4 iris flower measurements, bundled for experiments.
PointCloud iris_cloud();

// n points near a radius-1 cylinder in R^3: angle uniform on [0, 2pi), height
// uniform on [-2, 2], then independent N(0, noise_var) jitter per coordinate.
// Deterministic in the seed.
PointCloud sample_cylinder(int n, double noise_var, std::uint64_t seed);

}  // namespace topoproj
