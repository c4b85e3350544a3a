#pragma once
/*
 * Shared aliases and small dense-matrix utilities for the block-Jacobi
 * scattering library.
 *
 * Operator blocks are dense complex d x d matrices. Two norms appear in the
 * numerics: the spectral norm (largest singular value; used by every
 * tolerance check) and the trace norm (sum of singular values; used by the
 * eigenvalue product bound).
 */
#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace jscat {

using Complex = std::complex<double>;
using Block = Eigen::MatrixXcd;  // operator block: dense d x d complex matrix
using CVector = Eigen::VectorXcd;

/// Invalid input: malformed file, non-hermitian block, violated precondition.
class validation_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Violated numerical hypothesis: singular Wronskian or alpha block,
/// ambiguous rank decision, constancy failure.
class numerical_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Largest singular value.
double spectral_norm(const Block& x);

/// Sum of singular values (Schatten-1 norm).
double trace_norm(const Block& x);

/// Smallest singular value.
double smallest_singular_value(const Block& x);

/// ||x - x*|| <= rel_tol * max(1, ||x||) in the spectral norm.
bool is_hermitian(const Block& x, double rel_tol = 1e-12);

Block identity_block(Eigen::Index d);

/// z^n for integer n (exact repeated squaring; n may be negative).
Complex pow_int(Complex z, long long n);

/// n points e^{i theta} on the unit circle, excluding arcs of half-width
/// `band` (radians) around +1 and -1; first half on the upper semicircle.
std::vector<Complex> unit_circle_grid(int n, double band);

/// n uniformly spaced interior points of (lo, hi); endpoints excluded.
std::vector<double> open_interval_grid(double lo, double hi, int n);

/// Solve a * x = b, refusing blocks whose smallest singular value is below
/// rel_tol times the largest (throws numerical_error naming `what`).
Block guarded_solve(const Block& a, const Block& b, double rel_tol,
                    const std::string& what);

/// a^{-1} with the same guard.
Block guarded_inverse(const Block& a, double rel_tol,
                      const std::string& what);

}  // namespace jscat
