#include "jscat/types.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <numbers>
#include <string>

namespace jscat {

double spectral_norm(const Block& x) {
  if (x.size() == 0) return 0.0;
  Eigen::JacobiSVD<Block> svd(x);
  return svd.singularValues()(0);
}

double trace_norm(const Block& x) {
  if (x.size() == 0) return 0.0;
  Eigen::JacobiSVD<Block> svd(x);
  return svd.singularValues().sum();
}

double smallest_singular_value(const Block& x) {
  Eigen::JacobiSVD<Block> svd(x);
  return svd.singularValues()(svd.singularValues().size() - 1);
}

bool is_hermitian(const Block& x, double rel_tol) {
  const double dev = spectral_norm(x - x.adjoint());
  return dev <= rel_tol * std::max(1.0, spectral_norm(x));
}

Block identity_block(Eigen::Index d) { return Block::Identity(d, d); }

Complex pow_int(Complex z, long long n) {
  if (n == 0) return Complex(1.0, 0.0);
  const bool neg = n < 0;
  unsigned long long k = neg ? static_cast<unsigned long long>(-n)
                             : static_cast<unsigned long long>(n);
  Complex base = z;
  Complex acc(1.0, 0.0);
  while (k != 0) {
    if (k & 1ULL) acc *= base;
    base *= base;
    k >>= 1;
  }
  return neg ? Complex(1.0, 0.0) / acc : acc;
}

std::vector<Complex> unit_circle_grid(int n, double band) {
  if (n <= 0) throw validation_error("unit_circle_grid: n must be positive");
  const double pi = std::numbers::pi;
  if (!(band >= 0.0 && 2.0 * band < pi))
    throw validation_error("unit_circle_grid: band out of range");
  std::vector<Complex> out;
  out.reserve(static_cast<std::size_t>(n));
  const int n_up = (n + 1) / 2;
  const int n_dn = n - n_up;
  const double span = pi - 2.0 * band;
  for (int k = 0; k < n_up; ++k) {
    const double theta = band + span * (k + 0.5) / n_up;
    out.emplace_back(std::cos(theta), std::sin(theta));
  }
  for (int k = 0; k < n_dn; ++k) {
    const double theta = pi + band + span * (k + 0.5) / n_dn;
    out.emplace_back(std::cos(theta), std::sin(theta));
  }
  return out;
}

std::vector<double> open_interval_grid(double lo, double hi, int n) {
  if (n <= 0) throw validation_error("open_interval_grid: n must be positive");
  if (!(lo < hi)) throw validation_error("open_interval_grid: lo must be < hi");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) out.push_back(lo + (hi - lo) * (k + 0.5) / n);
  return out;
}

Block guarded_solve(const Block& a, const Block& b, double rel_tol,
                    const std::string& what) {
  Eigen::JacobiSVD<Block> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double smax = sv(0);
  const double smin = sv(sv.size() - 1);
  if (!(smin > rel_tol * std::max(1.0, smax)))
    throw numerical_error(std::string("singular block in ") + what +
                          " (smallest singular value " + std::to_string(smin) +
                          ")");
  return svd.solve(b);
}

Block guarded_inverse(const Block& a, double rel_tol,
                      const std::string& what) {
  return guarded_solve(a, identity_block(a.rows()), rel_tol, what);
}

}  // namespace jscat
