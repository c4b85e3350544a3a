#pragma once

// Transfer and scattering matrices built from the connection coefficients.
//
//   M(z)  = [ alpha+(z)    beta+(1/z) ]      [U-(z), U-(1/z)] =
//           [ beta+(z)     alpha+(1/z)]        [U+(1/z), U+(z)] M(z)
//
//   Mm(z) = [ alpha-(1/z)  beta-(z)   ]      M(z) Mm(z) = Mm(z) M(z) = I
//           [ beta-(1/z)   alpha-(z)  ]
//
//   S(z)  = [ alpha-(z)^{-1}            -beta+(1/z) alpha+(1/z)^{-1} ]
//           [ -beta-(z) alpha-(z)^{-1}   alpha+(1/z)^{-1}            ]
//
// S couples the two Jost families across the support:
//   U-(1/z) = U+(z) S11 + U-(z) S21
//   U+(z)   = U+(1/z) S12 + U-(1/z) S22
//
// On |z| = 1 the diagonal inverses extend continuously to z0 = +1 and -1;
// scattering_extension computes that limit directly from the kernel of the
// boundary Wronskian, without evaluating near the singular point.

#include <array>

#include "jscat/coefficients.hpp"
#include "jscat/jost.hpp"
#include "jscat/wronskian.hpp"

namespace jscat {

struct ScatteringData {
  Complex z{};
  AlphaBeta ab;            // connection coefficients at z
  AlphaBeta ab_inv;        // connection coefficients at 1/z
  Block transfer;          // M(z), 2d x 2d
  Block transfer_minus;    // Mm(z), 2d x 2d
  Block s_matrix;          // S(z), 2d x 2d
  double inverse_residual = 0.0;    // || M Mm - I ||, || Mm M - I ||
  double defining_residual = 0.0;   // transfer defining relation over n
  double coupling_residual = 0.0;   // S coupling relations over n
};

// M(z); rejects z in {0, +1, -1}.
Block transfer_matrix(const CoefficientData& c, Complex z);

// Full scattering data at z.  Throws numerical_error if alpha-(z) or
// alpha+(1/z) is singular (bound state), or if the internal invariants
// (M Mm = I and the defining relation) fail at 1e-8.
ScatteringData scattering_matrix(const CoefficientData& c, Complex z);

struct ExtensionResult {
  double z0 = 1.0;        // +1 or -1
  Block alpha_inv_plus;   // lim of alpha+(z)^{-1} as z -> z0 on |z| = 1
  Block alpha_inv_minus;  // lim of alpha-(z)^{-1}
  Block s_ext;            // 2d x 2d limit of S(z)
  int kernel_dim_plus = 0;   // dim ker of the boundary Wronskian, + species
  int kernel_dim_minus = 0;  // same for the - species
};

// Limit of the scattering matrix at the spectral band edge z0 (+1 or -1).
// Throws validation_error for other z0, numerical_error when the kernel
// rank of the boundary Wronskian is numerically ambiguous or when the
// reduced derivative block is singular.
ExtensionResult scattering_extension(const CoefficientData& c, double z0);

// Three-point Lagrange extrapolation of matrix samples f(theta_i) to
// theta = 0; used to cross-check scattering_extension against values of
// S(z0 e^{i theta}) sampled near the band edge.
Block richardson_limit(const std::array<Block, 3>& samples,
                       const std::array<double, 3>& thetas);

}  // namespace jscat
