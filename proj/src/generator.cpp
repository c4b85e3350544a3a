#include "jscat/generator.hpp"

#include <cmath>
#include <random>
#include <vector>

namespace jscat {

namespace {

// Uniform in [0, 1) from the top 53 bits of the engine word; identical on
// every platform for a given seed, unlike std::uniform_real_distribution.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(rng);
}

// Random hermitian block with unit spectral norm.
Block random_hermitian_unit(std::mt19937_64& rng, int d) {
  Block x(d, d);
  for (int i = 0; i < d; ++i) {
    x(i, i) = Complex(uniform(rng, -1.0, 1.0), 0.0);
    for (int j = i + 1; j < d; ++j) {
      x(i, j) = Complex(uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0));
      x(j, i) = std::conj(x(i, j));
    }
  }
  const double norm = spectral_norm(x);
  if (norm == 0.0) return identity_block(d);
  return x / norm;
}

}  // namespace

CoefficientData make_random_instance(const GeneratorOptions& options) {
  if (options.dim < 1)
    throw validation_error("make_random_instance: dim must be positive");
  if (options.n_min > options.n_max)
    throw validation_error("make_random_instance: empty support");
  if (!(options.a_deviation >= 0.0 && options.a_deviation < 1.0))
    throw validation_error(
        "make_random_instance: a_deviation must lie in [0, 1)");
  if (!(options.b_norm_lo >= 0.0 && options.b_norm_hi >= options.b_norm_lo))
    throw validation_error(
        "make_random_instance: b norm range must satisfy 0 <= lo <= hi");

  std::mt19937_64 rng(options.seed);
  const int d = options.dim;
  std::vector<Block> a;
  std::vector<Block> b;
  for (int n = options.n_min - 1; n <= options.n_max; ++n) {
    const double scale = options.a_deviation * uniform01(rng);
    a.push_back(identity_block(d) + scale * random_hermitian_unit(rng, d));
  }
  for (int n = options.n_min; n <= options.n_max; ++n) {
    const double scale = uniform(rng, options.b_norm_lo, options.b_norm_hi);
    b.push_back(scale * random_hermitian_unit(rng, d));
  }
  return CoefficientData(d, options.n_min, options.n_max, std::move(a),
                         std::move(b));
}

CoefficientData make_suite_instance(std::uint64_t seed) {
  GeneratorOptions options;
  options.seed = seed;
  options.dim = 1 + static_cast<int>(seed % 3);
  const int width = 1 + static_cast<int>(seed % 5);
  options.n_min = -(width / 2);
  options.n_max = options.n_min + width - 1;
  return make_random_instance(options);
}

}  // namespace jscat
