#pragma once

// Discrete spectrum outside the essential band [-2, 2], located by three
// independent methods and certified by growth bounds:
//
//   * wronskian_scan    — singular points of the boundary pairing
//                         W(U+(z)*, U-(z)) on the real z interval (-1, 1);
//   * truncation_eigen  — eigenvalues of large finite sections, cross-checked
//                         between two truncation sizes;
//   * bs_zero_scan      — zeros of the perturbation determinant
//                         det(I + G_S V_S) built from the free resolvent
//                         kernel G(n,m) = z/(z^2-1) z^|n-m| I.
//
// eigenvalue_bounds turns a report into the two sides of the product growth
// inequality and the derived zero-counting inequality.

#include <string>
#include <vector>

#include "jscat/coefficients.hpp"
#include "jscat/jost.hpp"

namespace jscat {

struct EigenvalueItem {
  Complex z{};           // representative with |z| < 1, lambda = z + 1/z
  double lambda = 0.0;   // real eigenvalue, |lambda| > 2
  int multiplicity = 1;
  double residual = 0.0;  // method-specific certificate (see each method)
};

struct EigenvalueReport {
  std::string method;
  std::vector<EigenvalueItem> items;  // sorted by lambda, deduplicated
};

// Scans the smallest singular value of the boundary pairing on
// (-1+1e-3, -1e-3) and (1e-3, 1-1e-3), refines local minima by golden
// section, and accepts those below refine_tol (non-positive refine_tol
// selects 1e-8 times the median sampled value).  residual is the refined
// smallest singular value; multiplicity counts singular values below
// 1e3 * refine_tol at the minimizer.
EigenvalueReport wronskian_scan(const CoefficientData& c, int grid_size = 2000,
                                double refine_tol = 0.0);

// All eigenvalues of the banded hermitian section on sites [-m_size, m_size].
std::vector<double> truncated_spectrum(const CoefficientData& c, int m_size);

// Eigenvalues of the section with |lambda| > 2 + margin, each matched
// against a run at twice the size; residual is the cross-size mismatch and
// candidates moving more than 1e-4 are dropped as spurious.  Requires
// m_size >= max(|support_min|, |support_max|) + 20.
EigenvalueReport truncation_eigen(const CoefficientData& c, int m_size,
                                  double margin = 1e-4);

// Perturbation determinant det(I + G_S V_S) on the support section
// S = [support_min - 1, support_max + 1]; real on real z.
Complex bs_determinant(const CoefficientData& c, Complex z);

// Zeros of the determinant on the same real grids as wronskian_scan.  Sign
// changes are refined by bisection (odd order, multiplicity 1); minima of
// |f| below refine_tol without a sign change count as even order
// (multiplicity 2).  residual is |f| at the accepted zero.
EigenvalueReport bs_zero_scan(const CoefficientData& c, int grid_size = 2000,
                              double refine_tol = 0.0);

struct BoundsReport {
  double radius = 0.0;        // R, the product bound radius
  double count_radius = 0.0;  // r = R/2, the counting radius
  double product_lhs = 0.0;   // prod over items of (R/|z_j|)^multiplicity
  double product_rhs = 0.0;   // exp(R/(1-R^2) * trace_norm_budget)
  int count_lhs = 0;          // number of items with |z| <= r, with mult.
  double count_rhs = 0.0;     // log(product_rhs) / log(R/r)
};

// Growth bound for the zeros in |z| < radius.  Every reported item must
// satisfy 0 < |z| < radius, otherwise validation_error.
BoundsReport eigenvalue_bounds(const CoefficientData& c, double radius,
                               const EigenvalueReport& report);

struct VectorSolution {
  Complex z{};
  int w_lo = 0;
  int w_hi = -1;
  std::vector<CVector> values;
  bool contains(int n) const { return n >= w_lo && n <= w_hi; }
  const CVector& at(int n) const;
};

// Lifts a vector solution u to the operator solution U_n = u_n v* / <v, v>;
// U solves the operator equation whenever u solves the vector one.
OperatorSolution promote_vector_solution(const VectorSolution& u,
                                         const CVector& v);

// Residual of the free resolvent identity (J0 - lambda) G = I on the
// support section, measured over interior block rows only (the boundary
// rows see the truncation and are excluded).
double resolvent_kernel_residual(const CoefficientData& c, Complex z);

}  // namespace jscat
