#include "jscat/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <Eigen/SVD>

namespace jscat {

namespace {

void require_regular(Complex z, const char* who) {
  if (z == Complex(0.0, 0.0) || z == Complex(1.0, 0.0) ||
      z == Complex(-1.0, 0.0))
    throw validation_error(std::string(who) + ": z must avoid 0, +1 and -1");
}

Block hstack(const Block& a, const Block& b) {
  Block out(a.rows(), a.cols() + b.cols());
  out << a, b;
  return out;
}

// Kernel basis of w0 from a singular value decomposition with an explicit
// ambiguity band: singular values within a decade of the cut are refused.
struct KernelBasis {
  Block left;   // d x k, left singular vectors spanning the co-kernel
  Block right;  // d x k, right singular vectors spanning the kernel
  int dim = 0;
};

KernelBasis boundary_kernel(const Block& w0, const Block& g0) {
  const int d = static_cast<int>(w0.rows());
  KernelBasis out;
  if (spectral_norm(w0) <= 1e-12 * std::max(1.0, spectral_norm(g0))) {
    out.left = Block::Identity(d, d);
    out.right = Block::Identity(d, d);
    out.dim = d;
    return out;
  }
  Eigen::JacobiSVD<Block> svd(w0, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sigma = svd.singularValues();
  const double thr = 1e-8 * sigma(0);
  int dim = 0;
  for (int i = 0; i < d; ++i) {
    if (sigma(i) >= 0.1 * thr && sigma(i) <= 10.0 * thr)
      throw numerical_error(
          "scattering_extension: boundary Wronskian has a singular value "
          "inside the rank-decision band; the kernel rank is ambiguous");
    if (sigma(i) < thr) ++dim;
  }
  out.dim = dim;
  out.left = svd.matrixU().rightCols(dim);
  out.right = svd.matrixV().rightCols(dim);
  return out;
}

// lim (z - z0) N(z)^{-1} scaled by the local slope of 1/z - z: the limit of
// alpha^{-1} is  V_k (U_q^* (slope * G0) V_k)^{-1} U_q^*  on the kernel and
// zero off it.
Block alpha_inverse_limit(const Block& w0, const Block& g0, double slope,
                          const char* species) {
  const int d = static_cast<int>(w0.rows());
  const KernelBasis k = boundary_kernel(w0, g0);
  if (k.dim == 0) return Block::Zero(d, d);
  const Block reduced = k.left.adjoint() * (slope * g0) * k.right;
  const Block reduced_inv = guarded_inverse(
      reduced, 1e-10,
      std::string("scattering_extension: reduced derivative block is "
                  "singular for the ") +
          species + " species");
  return k.right * reduced_inv * k.left.adjoint();
}

}  // namespace

Block transfer_matrix(const CoefficientData& c, Complex z) {
  require_regular(z, "transfer_matrix");
  const AlphaBeta ab = alpha_beta(c, z);
  const AlphaBeta ab_inv = alpha_beta(c, Complex(1.0, 0.0) / z);
  const int d = c.dim();
  Block m(2 * d, 2 * d);
  m.block(0, 0, d, d) = ab.alpha_plus;
  m.block(0, d, d, d) = ab_inv.beta_plus;
  m.block(d, 0, d, d) = ab.beta_plus;
  m.block(d, d, d, d) = ab_inv.alpha_plus;
  return m;
}

ScatteringData scattering_matrix(const CoefficientData& c, Complex z) {
  require_regular(z, "scattering_matrix");
  const Complex zi = Complex(1.0, 0.0) / z;
  const int d = c.dim();

  ScatteringData out;
  out.z = z;
  out.ab = alpha_beta(c, z);
  out.ab_inv = alpha_beta(c, zi);

  out.transfer = Block(2 * d, 2 * d);
  out.transfer.block(0, 0, d, d) = out.ab.alpha_plus;
  out.transfer.block(0, d, d, d) = out.ab_inv.beta_plus;
  out.transfer.block(d, 0, d, d) = out.ab.beta_plus;
  out.transfer.block(d, d, d, d) = out.ab_inv.alpha_plus;

  out.transfer_minus = Block(2 * d, 2 * d);
  out.transfer_minus.block(0, 0, d, d) = out.ab_inv.alpha_minus;
  out.transfer_minus.block(0, d, d, d) = out.ab.beta_minus;
  out.transfer_minus.block(d, 0, d, d) = out.ab_inv.beta_minus;
  out.transfer_minus.block(d, d, d, d) = out.ab.alpha_minus;

  const Block id2 = Block::Identity(2 * d, 2 * d);
  // Near the band edges the transfer entries grow like 1/|1/z - z|, and the
  // product against the inverse cancels down to the identity; measure the
  // defect relative to the size of that product so the check reflects
  // conditioning rather than raw magnitude.
  const double inv_scale = std::max(
      1.0, spectral_norm(out.transfer) * spectral_norm(out.transfer_minus));
  out.inverse_residual =
      std::max(spectral_norm(out.transfer * out.transfer_minus - id2),
               spectral_norm(out.transfer_minus * out.transfer - id2)) /
      inv_scale;
  if (out.inverse_residual > 1e-8)
    throw numerical_error(
        "scattering_matrix: the two transfer matrices fail to be mutually "
        "inverse at tolerance 1e-8");

  const Window win = default_window(c);
  const OperatorSolution up_z = jost_plus_recursion(c, z, win);
  const OperatorSolution up_zi = jost_plus_recursion(c, zi, win);
  const OperatorSolution um_z = jost_minus_recursion(c, z, win);
  const OperatorSolution um_zi = jost_minus_recursion(c, zi, win);

  double scale = 1.0;
  for (int n = win.lo; n <= win.hi; ++n) {
    scale = std::max({scale, spectral_norm(up_z.at(n)),
                      spectral_norm(up_zi.at(n)), spectral_norm(um_z.at(n)),
                      spectral_norm(um_zi.at(n))});
  }
  for (int n = win.lo; n <= win.hi; ++n) {
    const Block lhs = hstack(um_z.at(n), um_zi.at(n));
    const Block rhs = hstack(up_zi.at(n), up_z.at(n)) * out.transfer;
    out.defining_residual =
        std::max(out.defining_residual, spectral_norm(lhs - rhs) / scale);
  }
  if (out.defining_residual > 1e-8)
    throw numerical_error(
        "scattering_matrix: transfer defining relation fails at tolerance "
        "1e-8");

  const Block s11 = guarded_inverse(
      out.ab.alpha_minus, 1e-12,
      "scattering_matrix: alpha-(z) is singular (bound state at this z)");
  const Block s22 = guarded_inverse(
      out.ab_inv.alpha_plus, 1e-12,
      "scattering_matrix: alpha+(1/z) is singular (bound state at this z)");
  out.s_matrix = Block(2 * d, 2 * d);
  out.s_matrix.block(0, 0, d, d) = s11;
  out.s_matrix.block(0, d, d, d) = -out.ab_inv.beta_plus * s22;
  out.s_matrix.block(d, 0, d, d) = -out.ab.beta_minus * s11;
  out.s_matrix.block(d, d, d, d) = s22;

  for (int n = win.lo; n <= win.hi; ++n) {
    const Block ra = up_z.at(n) * s11 +
                     um_z.at(n) * out.s_matrix.block(d, 0, d, d) -
                     um_zi.at(n);
    const Block rb = up_zi.at(n) * out.s_matrix.block(0, d, d, d) +
                     um_zi.at(n) * s22 - up_z.at(n);
    out.coupling_residual = std::max(
        {out.coupling_residual, spectral_norm(ra) / scale,
         spectral_norm(rb) / scale});
  }
  return out;
}

ExtensionResult scattering_extension(const CoefficientData& c, double z0) {
  if (z0 != 1.0 && z0 != -1.0)
    throw validation_error("scattering_extension: z0 must be +1 or -1");
  const Complex zz0(z0, 0.0);
  const int d = c.dim();
  const Window win = default_window(c);
  const JostSeriesData s = build_series_data(c, win);

  const OperatorSolution up = jost_plus_series(c, s, zz0, win);
  const OperatorSolution um = jost_minus_series(c, s, zz0, win);
  const OperatorSolution dup = delta_jost(c, s, Species::plus, zz0, zz0, win);
  const OperatorSolution dum = delta_jost(c, s, Species::minus, zz0, zz0, win);
  const OperatorSolution up_s = adjoint_conjugate_solution(up);
  const OperatorSolution um_s = adjoint_conjugate_solution(um);
  const OperatorSolution dup_s = adjoint_conjugate_solution(dup);
  const OperatorSolution dum_s = adjoint_conjugate_solution(dum);

  // Boundary Wronskians; both solutions solve the equation at z0 so these
  // are constant in n and checked as such.
  const Block w0_plus = wronskian_constant(c, up_s, um, 1e-8).value;
  const Block w0_minus = wronskian_constant(c, um_s, up, 1e-8).value;

  // First derivative of the pairing in z at z0.  The two summands are not
  // individually constant in n; only their sum is, which is verified here.
  auto derivative_pairing = [&](const OperatorSolution& du_s,
                                const OperatorSolution& u_s,
                                const OperatorSolution& v,
                                const OperatorSolution& dv) {
    std::vector<Block> g;
    for (int n = win.lo + 1; n <= win.hi; ++n)
      g.push_back(wronskian_at(c, du_s, v, n) + wronskian_at(c, u_s, dv, n));
    Block mean = Block::Zero(d, d);
    for (const Block& b : g) mean += b;
    mean /= static_cast<double>(g.size());
    double dev = 0.0;
    for (const Block& b : g) dev = std::max(dev, spectral_norm(b - mean));
    if (dev > 1e-8 * std::max(1.0, spectral_norm(mean)))
      throw numerical_error(
          "scattering_extension: derivative pairing is not constant in n");
    return mean;
  };
  const Block g0_plus = derivative_pairing(dup_s, up_s, um, dum);
  const Block g0_minus = derivative_pairing(dum_s, um_s, up, dup);

  ExtensionResult out;
  out.z0 = z0;
  // alpha+ = N+ / (1/z - z) and 1/z - z = -2 (z - z0) (1 + o(1)) at both
  // band edges, so the plus species carries slope -1/2; alpha- = -N-/(1/z-z)
  // flips the sign.
  out.alpha_inv_plus = alpha_inverse_limit(w0_plus, g0_plus, -0.5, "plus");
  out.alpha_inv_minus = alpha_inverse_limit(w0_minus, g0_minus, 0.5, "minus");
  out.kernel_dim_plus = boundary_kernel(w0_plus, g0_plus).dim;
  out.kernel_dim_minus = boundary_kernel(w0_minus, g0_minus).dim;

  // Off-diagonal limits through the beyond-support representation:
  //   U-_n(z) = z^n beta+(z) + z^{-n} alpha+(z)     for n > support,
  //   U+_n(z) = z^{-n} beta-(z) + z^n alpha-(z)     for n < support.
  const int np = c.support_max() + 2;
  const int nm = c.support_min() - 2;
  const Complex zp = pow_int(zz0, -np);
  const Complex zm = pow_int(zz0, nm);
  const Block id = identity_block(d);
  const Block ba_plus = zp * um.at(np) * out.alpha_inv_plus - id;
  const Block ba_minus = zm * up.at(nm) * out.alpha_inv_minus - id;

  out.s_ext = Block(2 * d, 2 * d);
  out.s_ext.block(0, 0, d, d) = out.alpha_inv_minus;
  out.s_ext.block(0, d, d, d) = -ba_plus;
  out.s_ext.block(d, 0, d, d) = -ba_minus;
  out.s_ext.block(d, d, d, d) = out.alpha_inv_plus;
  return out;
}

Block richardson_limit(const std::array<Block, 3>& samples,
                       const std::array<double, 3>& thetas) {
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (thetas[i] == thetas[j])
        throw validation_error("richardson_limit: nodes must be distinct");
  Block out = Block::Zero(samples[0].rows(), samples[0].cols());
  for (int i = 0; i < 3; ++i) {
    double w = 1.0;
    for (int j = 0; j < 3; ++j)
      if (j != i) w *= (0.0 - thetas[j]) / (thetas[i] - thetas[j]);
    out += w * samples[i];
  }
  return out;
}

}  // namespace jscat
