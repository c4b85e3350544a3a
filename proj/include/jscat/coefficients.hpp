#pragma once
/*
 * Coefficients of a block Jacobi operator
 *
 *     (J u)_n = A_{n-1} u_{n-1} + B_n u_n + A_n u_{n+1},   u_n in C^d,
 *
 * stored as a finitely supported perturbation of the free operator
 * (A == I, B == 0). Stored A-blocks live on [n_min - 1, n_max], stored
 * B-blocks on [n_min, n_max]; accessors return exact I / 0 outside. Every
 * stored block must be hermitian and every A_n invertible; both are checked
 * on construction and the object is immutable afterwards.
 *
 * Also provided: the Zhukovsky map lambda = z + 1/z and its unit-disk inverse
 * branch, weighted moment sums of the coefficient deviations, the trace-norm
 * perturbation budget, the Dirichlet truncation to [-M, M], and JSON
 * load/save of instances.
 */
#include "jscat/types.hpp"

#include <string>
#include <vector>

namespace jscat {

/// A point of the spectral parameter plane in both coordinates,
/// lambda = z + 1/z with |z| <= 1.
struct SpectralPoint {
  Complex z;
  Complex lambda;
};

/// lambda = z + 1/z.
Complex zhukovsky(Complex z);

/// The |z| <= 1 branch of z^2 - lambda z + 1 = 0. For lambda in [-2, 2] the
/// root with Im z >= 0 is taken; lambda = +-2 maps to z = +-1. The returned
/// pair satisfies |z + 1/z - lambda| <= 1e-14 * max(1, |lambda|).
SpectralPoint zhukovsky_inverse(Complex lambda);

class CoefficientData {
 public:
  /// a[k] = A_{n_min-1+k} for k in [0, n_max - n_min + 1];
  /// b[k] = B_{n_min+k}   for k in [0, n_max - n_min].
  /// Throws validation_error on dimension mismatch, non-hermitian blocks, or
  /// an A-block whose smallest singular value is <= inv_tol * max(1, largest).
  CoefficientData(int dim, int n_min, int n_max, std::vector<Block> a,
                  std::vector<Block> b, double inv_tol = 1e-10);

  int dim() const { return dim_; }
  int support_min() const { return n_min_; }
  int support_max() const { return n_max_; }
  double inv_tol() const { return inv_tol_; }

  /// A_n; exact identity outside [n_min - 1, n_max].
  const Block& A(int n) const;
  /// B_n; exact zero outside [n_min, n_max].
  const Block& B(int n) const;

 private:
  int dim_;
  int n_min_;
  int n_max_;
  double inv_tol_;
  std::vector<Block> a_;  // indexed by n - (n_min - 1)
  std::vector<Block> b_;  // indexed by n - n_min
  Block id_;
  Block zero_;
};

/// The free operator (A == I, B == 0) with the trivial support [0, 0].
CoefficientData free_instance(int dim);

/// Load/parse a JSON instance; see README for the schema. Throws
/// validation_error on parse failure, inconsistent dimensions, non-hermitian
/// blocks, or singular A-blocks.
CoefficientData load_coefficients(const std::string& path,
                                  double inv_tol = 1e-10);
CoefficientData parse_coefficients(const std::string& json_text,
                                   double inv_tol = 1e-10);

std::string coefficients_to_json(const CoefficientData& c);
void save_coefficients(const CoefficientData& c, const std::string& path);

/// sum over n in [n_min - 1, n_max] of |n|^k (||I - A_n|| + ||B_n||),
/// spectral norms.
double moment_sum(const CoefficientData& c, int k);

/// sum over n in [n_min - 1, n_max] of e^{eps |n|} (||I - A_n|| + ||B_n||).
double exponential_budget(const CoefficientData& c, double eps);

/// 2 sum_n ||A_n - I||_1 + sum_n ||B_n||_1 (trace norms); the perturbation
/// budget entering the eigenvalue product bound.
double trace_norm_budget(const CoefficientData& c);

/// Dense hermitian matrix of the Dirichlet truncation of J to block indices
/// [-M, M]; size (2M+1)d. Requires M >= max(|n_min|, |n_max|) + 1.
Eigen::MatrixXcd truncated_matrix(const CoefficientData& c, int M);

}  // namespace jscat
