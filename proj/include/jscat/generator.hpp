#pragma once

// Deterministic random instances for tests and the CLI `gen` command.
// Identical options (including the seed) produce bit-identical coefficient
// data on every platform: the raw 64-bit engine output is mapped to doubles
// by an explicit shift-and-scale, never through distribution objects.

#include <cstdint>

#include "jscat/coefficients.hpp"

namespace jscat {

struct GeneratorOptions {
  int dim = 2;
  int n_min = -2;
  int n_max = 2;
  double a_deviation = 0.3;  // spectral-norm bound for A_n - I (must be < 1)
  double b_norm_lo = 0.6;    // spectral norm of B_n drawn from this range
  double b_norm_hi = 1.2;
  std::uint64_t seed = 1;
};

CoefficientData make_random_instance(const GeneratorOptions& options);

// Canonical acceptance-suite instance for a given seed: dimension cycles
// through {1, 2, 3} and the support width through {1, ..., 5}.
CoefficientData make_suite_instance(std::uint64_t seed);

}  // namespace jscat
