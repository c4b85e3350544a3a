#pragma once
/*
 * Jost solutions of the block three-term recursion
 *
 *   A_{n-1} U_{n-1} + (B_n - lambda) U_n + A_n U_{n+1} = 0,  lambda = z + 1/z,
 *
 * normalised so that U+_n(z) ~ z^n I as n -> +infinity and
 * U-_n(z) ~ z^{-n} I as n -> -infinity. Two independent constructions are
 * provided and certified against each other:
 *
 *  1. exact recursion seeded in the free region: for finitely supported
 *     coefficients U+_n(z) = z^n I exactly for n >= n_max + 1 (mirror on the
 *     left), and the recursion transports that data across the support;
 *
 *  2. the series form
 *         U+_n(z) = T_n z^n (I + sum_{m>=1} K_{n,m} z^m),
 *         U-_n(z) = R_n z^{-n} (I + sum_{m>=1} M_{n,m} z^m),
 *     where T_n = A_n^{-1} A_{n+1}^{-1} ... , R_{n+1} = A_n^{-1} R_n, and the
 *     coefficient blocks satisfy finite recursions in m. At finite support
 *     K_{n,m} = 0 for m > 2(n_max - n) and M_{n,m} = 0 for m > 2(n - n_min),
 *     so all series are finite polynomials; the builder asserts the
 *     vanishing.
 *
 * Also provided: a certified tail bound for the K-series remainder on the
 * unit circle, and the difference quotient / derivative of the Jost families
 * at z0 = +-1 (needed by the band-edge extension of the scattering matrix).
 */
#include "jscat/coefficients.hpp"
#include "jscat/types.hpp"

#include <vector>

namespace jscat {

enum class Species { plus, minus, general };

/// A window of operator blocks indexed by n in [w_lo, w_hi].
struct OperatorSolution {
  Complex z{};
  Species species = Species::general;
  int w_lo = 0;
  int w_hi = -1;
  std::vector<Block> blocks;

  bool contains(int n) const { return n >= w_lo && n <= w_hi; }
  const Block& at(int n) const;
  Block& at(int n);
};

struct Window {
  int lo;
  int hi;
};

/// Default evaluation window [n_min - 5, n_max + 5].
Window default_window(const CoefficientData& c);

/// max_n || A_{n-1} U_{n-1} + (B_n - lambda) U_n + A_n U_{n+1} || over the
/// interior of the window, relative to max_n ||U_n||.
double recursion_residual(const CoefficientData& c, const OperatorSolution& u);

/// Recursion builders. Require z != 0 and window containing the support.
OperatorSolution jost_plus_recursion(const CoefficientData& c, Complex z,
                                     Window w);
OperatorSolution jost_minus_recursion(const CoefficientData& c, Complex z,
                                      Window w);

/// Finite series data: products T_n, R_n and coefficient blocks K_{n,m},
/// M_{n,m}. K is stored for n in [k_lo, n_max + 1] (zero for n >= n_max and
/// all m); M for n in [n_min - 1, m_hi] (zero for n <= n_min and all m).
struct JostSeriesData {
  int dim = 0;
  int n_min = 0;
  int n_max = 0;
  int k_lo = 0;        // lowest n with stored K-row
  int m_hi = 0;        // highest n with stored M-row
  int k_m_max = 0;     // K stored for 1 <= m <= k_m_max
  int m_m_max = 0;     // M stored for 1 <= m <= m_m_max
  std::vector<Block> t_blocks;  // T_n for n in [k_lo, n_max + 1]
  std::vector<Block> r_blocks;  // R_n for n in [n_min - 1, m_hi]
  std::vector<Block> k_blocks;  // row-major (n - k_lo, m - 1)
  std::vector<Block> m_blocks;  // row-major (n - (n_min - 1), m - 1)

  const Block& T(int n) const;  // identity for n > n_max
  const Block& R(int n) const;  // identity for n < n_min
  const Block& K(int n, int m) const;  // zero outside the stored degree
  const Block& M(int n, int m) const;

 private:
  friend JostSeriesData build_series_data(const CoefficientData&, Window);
  Block id_;
  Block zero_;
};

/// Builds T, R, K, M for evaluation anywhere inside `w`; asserts that the
/// coefficients vanish beyond the predicted degree (and that the two slack
/// orders computed past it are <= 1e-12 in norm).
JostSeriesData build_series_data(const CoefficientData& c, Window w);
JostSeriesData build_series_data(const CoefficientData& c);

/// Series evaluation (finite polynomials; exact at finite support).
OperatorSolution jost_plus_series(const CoefficientData& c,
                                  const JostSeriesData& s, Complex z, Window w);
OperatorSolution jost_minus_series(const CoefficientData& c,
                                   const JostSeriesData& s, Complex z,
                                   Window w);

/// Certified upper bound for sum_{m > window_cut} ||K_{n,m}|| at |z| = 1,
/// from the explicit series estimates sharpened by the exact vanishing
/// degree (the bound is 0 once window_cut >= 2(n_max - n)).
double tail_bound(const CoefficientData& c, int n, int window_cut);

/// Difference quotient (U(z) - U(z0)) / (z - z0) blockwise for z != z0, or
/// the exact derivative limit for z == z0. z0 must be +1 or -1.
OperatorSolution delta_jost(const CoefficientData& c, const JostSeriesData& s,
                            Species species, Complex z0, Complex z, Window w);

}  // namespace jscat
