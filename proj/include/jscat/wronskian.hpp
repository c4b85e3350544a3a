#pragma once

// Operator Wronskians for block Jacobi solutions.
//
//   W_n(U, V) = U_{n-1} A_{n-1} V_n - U_n A_{n-1} V_{n-1}
//
// For two solutions of the same equation (the left factor given as the
// blockwise adjoint of a solution computed at the conjugate point) the
// Wronskian is independent of n.  The connection coefficients
//
//   alpha+(z) =  W(U+(conj z)*, U-(z)) / (1/z - z)
//   beta+(z)  = -W(U+(conj(1/z))*, U-(z)) / (1/z - z)
//   alpha-(z) = -W(U-(conj z)*, U+(z)) / (1/z - z)
//   beta-(z)  =  W(U-(conj(1/z))*, U+(z)) / (1/z - z)
//
// expand one Jost family in the other:
//
//   U-(z) = U+(z) beta+(z) + U+(1/z) alpha+(z)
//   U+(z) = U-(z) beta-(z) + U-(1/z) alpha-(z)
//
// and reduce to alpha = I, beta = 0 for the free operator.

#include "jscat/coefficients.hpp"
#include "jscat/jost.hpp"

namespace jscat {

// Blockwise adjoint of a solution computed at the conjugate spectral
// parameter.  If u solves the equation at conj(z), the returned family is a
// valid left factor for Wronskian pairings at z; its z field is conj(u.z).
OperatorSolution adjoint_conjugate_solution(const OperatorSolution& u);

// W_n(u, v); u acts from the left as given (callers pass starred families).
// Requires n-1 and n inside both windows.
Block wronskian_at(const CoefficientData& c, const OperatorSolution& u,
                   const OperatorSolution& v, int n);

struct WronskianValue {
  Block value;             // blockwise mean over the sampled indices
  double variation = 0.0;  // max_n ||W_n - value||
  int n_lo = 0;            // first sampled index
  int n_hi = -1;           // last sampled index
};

// Samples W_n over every valid index in the window overlap (at least five
// are required) and verifies constancy to tol * max(1, ||value||).
WronskianValue wronskian_constant(const CoefficientData& c,
                                  const OperatorSolution& u,
                                  const OperatorSolution& v,
                                  double tol = 1e-10);

struct AlphaBeta {
  Complex z{};
  Block alpha_plus;
  Block beta_plus;
  Block alpha_minus;
  Block beta_minus;
};

// Connection coefficients at z (rejects z in {0, +1, -1} where the two
// Jost families per species coincide).
AlphaBeta alpha_beta(const CoefficientData& c, Complex z);

// Ordered fundamental pairs {R(z), Rhat(z)} used by fundamental_solve and
// z_operator.  Every pair has vanishing diagonal self-pairings
// W(R(conj z)*, R(z)) = W(Rhat(conj z)*, Rhat(z)) = 0, which is what makes
// the coefficient extraction below exact.
enum class BasisPair {
  plus_pair,        // { U+(z), U+(1/z) }
  minus_pair,       // { U-(z), U-(1/z) }
  plus_minus_pair,  // { U+(z), U-(z) }   (singular exactly at eigenvalues)
  mixed_plus,       // { U+(z), U-(1/z) }
  mixed_minus       // { U-(z), U+(1/z) }
};

struct FundamentalCoefficients {
  Block p;   // coefficient of the first family:  V = R p + Rhat q
  Block q;   // coefficient of the second family
  Block wa;  // W(Rhat(conj z)*, R(z))
  Block wb;  // W(R(conj z)*, Rhat(z))
};

// Expands the solution v in the chosen fundamental pair:
//   v_n = R_n(z) p + Rhat_n(z) q,
//   p = wa^{-1} W(Rhat(conj z)*, v),  q = wb^{-1} W(R(conj z)*, v).
// Throws numerical_error when wa or wb is singular (for plus_minus_pair this
// happens exactly at eigenvalues of the operator).
FundamentalCoefficients fundamental_solve(const CoefficientData& c, Complex z,
                                          const OperatorSolution& v,
                                          BasisPair basis);

struct ZOperatorPair {
  Block z_mat;  // 2d x 2d: rows built from starred families and wa/wb
  Block y_mat;  // 2d x 2d: [[R_j, Rhat_j], [R_{j+1}, Rhat_{j+1}]]
};

// Builds the two-site solution-to-coefficient operator at site j and its
// inverse candidate, and verifies z_mat * y_mat = I to 1e-9.
ZOperatorPair z_operator(const CoefficientData& c, Complex z, int j,
                         BasisPair basis);

}  // namespace jscat
