#include "jscat/wronskian.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace jscat {

namespace {

bool forbidden_parameter(Complex z) {
  return z == Complex(0.0, 0.0) || z == Complex(1.0, 0.0) ||
         z == Complex(-1.0, 0.0);
}

struct BasisSet {
  OperatorSolution r;          // first family at z
  OperatorSolution rhat;       // second family at z
  OperatorSolution r_star;     // (first family at conj of its argument)*
  OperatorSolution rhat_star;  // (second family at conj of its argument)*
};

BasisSet make_basis(const CoefficientData& c, Complex z, BasisPair basis,
                    Window w) {
  const Complex zi = Complex(1.0, 0.0) / z;
  const Complex zc = std::conj(z);
  const Complex zic = std::conj(zi);
  auto plus = [&](Complex zz) { return jost_plus_recursion(c, zz, w); };
  auto minus = [&](Complex zz) { return jost_minus_recursion(c, zz, w); };
  auto star = [&](OperatorSolution u) {
    return adjoint_conjugate_solution(u);
  };
  BasisSet b;
  switch (basis) {
    case BasisPair::plus_pair:
      b.r = plus(z);
      b.rhat = plus(zi);
      b.r_star = star(plus(zc));
      b.rhat_star = star(plus(zic));
      break;
    case BasisPair::minus_pair:
      b.r = minus(z);
      b.rhat = minus(zi);
      b.r_star = star(minus(zc));
      b.rhat_star = star(minus(zic));
      break;
    case BasisPair::plus_minus_pair:
      b.r = plus(z);
      b.rhat = minus(z);
      b.r_star = star(plus(zc));
      b.rhat_star = star(minus(zc));
      break;
    case BasisPair::mixed_plus:
      b.r = plus(z);
      b.rhat = minus(zi);
      b.r_star = star(plus(zc));
      b.rhat_star = star(minus(zic));
      break;
    case BasisPair::mixed_minus:
      b.r = minus(z);
      b.rhat = plus(zi);
      b.r_star = star(minus(zc));
      b.rhat_star = star(plus(zic));
      break;
  }
  return b;
}

}  // namespace

OperatorSolution adjoint_conjugate_solution(const OperatorSolution& u) {
  OperatorSolution out;
  out.z = std::conj(u.z);
  out.species = u.species;
  out.w_lo = u.w_lo;
  out.w_hi = u.w_hi;
  out.blocks.reserve(u.blocks.size());
  for (const Block& b : u.blocks) out.blocks.push_back(b.adjoint());
  return out;
}

Block wronskian_at(const CoefficientData& c, const OperatorSolution& u,
                   const OperatorSolution& v, int n) {
  if (!u.contains(n - 1) || !u.contains(n) || !v.contains(n - 1) ||
      !v.contains(n))
    throw validation_error(
        "wronskian_at: indices " + std::to_string(n - 1) + ", " +
        std::to_string(n) + " must lie inside both solution windows");
  const Block& a = c.A(n - 1);
  return u.at(n - 1) * a * v.at(n) - u.at(n) * a * v.at(n - 1);
}

WronskianValue wronskian_constant(const CoefficientData& c,
                                  const OperatorSolution& u,
                                  const OperatorSolution& v, double tol) {
  const int lo = std::max(u.w_lo, v.w_lo) + 1;
  const int hi = std::min(u.w_hi, v.w_hi);
  if (hi - lo + 1 < 5)
    throw validation_error(
        "wronskian_constant: need at least five overlapping index pairs");
  WronskianValue out;
  out.n_lo = lo;
  out.n_hi = hi;
  std::vector<Block> samples;
  samples.reserve(static_cast<std::size_t>(hi - lo + 1));
  for (int n = lo; n <= hi; ++n) samples.push_back(wronskian_at(c, u, v, n));
  Block mean = Block::Zero(samples.front().rows(), samples.front().cols());
  for (const Block& s : samples) mean += s;
  mean /= static_cast<double>(samples.size());
  double variation = 0.0;
  for (const Block& s : samples)
    variation = std::max(variation, spectral_norm(s - mean));
  out.value = mean;
  out.variation = variation;
  if (variation > tol * std::max(1.0, spectral_norm(mean)))
    throw numerical_error(
        "wronskian_constant: value varies across indices beyond tolerance "
        "(the two inputs do not solve the same equation)");
  return out;
}

AlphaBeta alpha_beta(const CoefficientData& c, Complex z) {
  if (forbidden_parameter(z))
    throw validation_error("alpha_beta: z must avoid 0, +1 and -1");
  const Complex zi = Complex(1.0, 0.0) / z;
  const Complex w = zi - z;
  const Window win{c.support_min() - 3, c.support_max() + 3};
  const int n0 = c.support_min();

  const OperatorSolution up = jost_plus_recursion(c, z, win);
  const OperatorSolution um = jost_minus_recursion(c, z, win);
  const OperatorSolution up_c =
      adjoint_conjugate_solution(jost_plus_recursion(c, std::conj(z), win));
  const OperatorSolution up_ic =
      adjoint_conjugate_solution(jost_plus_recursion(c, std::conj(zi), win));
  const OperatorSolution um_c =
      adjoint_conjugate_solution(jost_minus_recursion(c, std::conj(z), win));
  const OperatorSolution um_ic =
      adjoint_conjugate_solution(jost_minus_recursion(c, std::conj(zi), win));

  AlphaBeta out;
  out.z = z;
  out.alpha_plus = wronskian_at(c, up_c, um, n0) / w;
  out.beta_plus = -wronskian_at(c, up_ic, um, n0) / w;
  out.alpha_minus = -wronskian_at(c, um_c, up, n0) / w;
  out.beta_minus = wronskian_at(c, um_ic, up, n0) / w;
  return out;
}

FundamentalCoefficients fundamental_solve(const CoefficientData& c, Complex z,
                                          const OperatorSolution& v,
                                          BasisPair basis) {
  if (forbidden_parameter(z))
    throw validation_error("fundamental_solve: z must avoid 0, +1 and -1");
  if (v.w_hi - v.w_lo + 1 < 2)
    throw validation_error(
        "fundamental_solve: v must contain at least two consecutive blocks");
  const Window win{std::min(v.w_lo, c.support_min() - 3),
                   std::max(v.w_hi, c.support_max() + 3)};
  const BasisSet b = make_basis(c, z, basis, win);
  const int n0 = v.w_lo + 1;

  FundamentalCoefficients out;
  out.wa = wronskian_at(c, b.rhat_star, b.r, n0);
  out.wb = wronskian_at(c, b.r_star, b.rhat, n0);
  out.p = guarded_solve(out.wa, wronskian_at(c, b.rhat_star, v, n0), 1e-12,
                        "fundamental_solve: first pairing block is singular "
                        "for this basis at this z");
  out.q = guarded_solve(out.wb, wronskian_at(c, b.r_star, v, n0), 1e-12,
                        "fundamental_solve: second pairing block is singular "
                        "for this basis at this z");
  return out;
}

ZOperatorPair z_operator(const CoefficientData& c, Complex z, int j,
                         BasisPair basis) {
  if (forbidden_parameter(z))
    throw validation_error("z_operator: z must avoid 0, +1 and -1");
  const Window win{std::min(j - 1, c.support_min() - 3),
                   std::max(j + 2, c.support_max() + 3)};
  const BasisSet b = make_basis(c, z, basis, win);
  const int d = c.dim();

  // Evaluate the pairing blocks away from j + 1 so the identity check below
  // is a genuine constancy statement, not an algebraic tautology.  The
  // window starts at or below j - 1, so win.lo + 1 <= j < j + 1.
  const int n0 = win.lo + 1;
  const Block wa = wronskian_at(c, b.rhat_star, b.r, n0);
  const Block wb = wronskian_at(c, b.r_star, b.rhat, n0);
  const Block wa_inv = guarded_inverse(
      wa, 1e-12,
      "z_operator: first pairing block is singular for this basis at this z");
  const Block wb_inv = guarded_inverse(
      wb, 1e-12,
      "z_operator: second pairing block is singular for this basis at this z");

  const Block& a_j = c.A(j);
  ZOperatorPair out;
  out.z_mat = Block(2 * d, 2 * d);
  out.z_mat.block(0, 0, d, d) = -wa_inv * b.rhat_star.at(j + 1) * a_j;
  out.z_mat.block(0, d, d, d) = wa_inv * b.rhat_star.at(j) * a_j;
  out.z_mat.block(d, 0, d, d) = -wb_inv * b.r_star.at(j + 1) * a_j;
  out.z_mat.block(d, d, d, d) = wb_inv * b.r_star.at(j) * a_j;

  out.y_mat = Block(2 * d, 2 * d);
  out.y_mat.block(0, 0, d, d) = b.r.at(j);
  out.y_mat.block(0, d, d, d) = b.rhat.at(j);
  out.y_mat.block(d, 0, d, d) = b.r.at(j + 1);
  out.y_mat.block(d, d, d, d) = b.rhat.at(j + 1);

  const Block check = out.z_mat * out.y_mat;
  const double res =
      spectral_norm(check - Block(Block::Identity(2 * d, 2 * d)));
  if (res > 1e-9)
    throw numerical_error(
        "z_operator: reconstruction identity fails at tolerance 1e-9 "
        "(residual " +
        std::to_string(res) + ")");
  return out;
}

}  // namespace jscat
