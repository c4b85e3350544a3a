#include "jscat/spectrum.hpp"

#include <complex>
#define LAPACK_COMPLEX_CUSTOM
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include <Eigen/LU>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include "jscat/wronskian.hpp"

namespace jscat {

namespace {

constexpr double kEdgeGap = 1e-3;  // excluded margin at z = 0 and |z| = 1

std::vector<double> scan_grid(int grid_size) {
  if (grid_size < 16)
    throw validation_error("spectrum scan: grid_size must be at least 16");
  std::vector<double> zs = open_interval_grid(-1.0 + kEdgeGap, -kEdgeGap,
                                              grid_size);
  const std::vector<double> right =
      open_interval_grid(kEdgeGap, 1.0 - kEdgeGap, grid_size);
  zs.insert(zs.end(), right.begin(), right.end());
  return zs;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return (n % 2 == 1) ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// Golden-section minimizer on [a, b] down to interval width tol.
double golden_min(const std::function<double(double)>& f, double a, double b,
                  double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  while (b - a > tol) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    }
  }
  return 0.5 * (a + b);
}

void sort_and_dedupe(EigenvalueReport& report) {
  auto& items = report.items;
  std::sort(items.begin(), items.end(),
            [](const EigenvalueItem& a, const EigenvalueItem& b) {
              return a.lambda < b.lambda;
            });
  std::vector<EigenvalueItem> merged;
  for (const EigenvalueItem& it : items) {
    if (!merged.empty() && std::abs(merged.back().z - it.z) <= 1e-7) {
      if (it.residual < merged.back().residual) {
        const int mult = merged.back().multiplicity;
        merged.back() = it;
        merged.back().multiplicity = std::max(mult, it.multiplicity);
      }
      continue;
    }
    merged.push_back(it);
  }
  items = std::move(merged);
}

// Dense section matrices for the perturbation determinant.  The section is
// S = [support_min - 1, support_max + 1], which carries every nonzero
// entry of V.
struct SupportSection {
  int lo = 0;
  int sites = 0;
  Block g;  // free resolvent kernel on S x S
  Block v;  // perturbation on S x S
};

SupportSection support_section(const CoefficientData& c, Complex z) {
  SupportSection s;
  s.lo = c.support_min() - 1;
  s.sites = c.support_max() + 1 - s.lo + 1;
  const int d = c.dim();
  const int nn = s.sites * d;
  const Complex c0 = z / (z * z - Complex(1.0, 0.0));
  s.g = Block::Zero(nn, nn);
  s.v = Block::Zero(nn, nn);
  const Block id = identity_block(d);
  for (int i = 0; i < s.sites; ++i) {
    for (int j = 0; j < s.sites; ++j)
      s.g.block(i * d, j * d, d, d) =
          c0 * pow_int(z, std::abs(i - j)) * id;
    const int n = s.lo + i;
    s.v.block(i * d, i * d, d, d) = c.B(n);
    if (i + 1 < s.sites) {
      const Block off = c.A(n) - id;
      s.v.block(i * d, (i + 1) * d, d, d) = off;
      s.v.block((i + 1) * d, i * d, d, d) = off;
    }
  }
  return s;
}

}  // namespace

EigenvalueReport wronskian_scan(const CoefficientData& c, int grid_size,
                                double refine_tol) {
  const Window win{c.support_min() - 2, c.support_max() + 2};
  const int n0 = c.support_min();

  auto pairing = [&](double z) {
    const Complex zz(z, 0.0);
    const OperatorSolution up_s =
        adjoint_conjugate_solution(jost_plus_recursion(c, zz, win));
    const OperatorSolution um = jost_minus_recursion(c, zz, win);
    return wronskian_at(c, up_s, um, n0);
  };
  auto smin = [&](double z) { return smallest_singular_value(pairing(z)); };

  const std::vector<double> zs = scan_grid(grid_size);
  std::vector<double> vals(zs.size());
  for (std::size_t i = 0; i < zs.size(); ++i) vals[i] = smin(zs[i]);

  double tol = refine_tol;
  if (tol <= 0.0) tol = 1e-8 * std::max(median(vals), 1e-300);

  EigenvalueReport report;
  report.method = "wronskian_scan";
  const std::size_t half = zs.size() / 2;  // grids are separate intervals
  auto interior = [&](std::size_t i) {
    return (i > 0 && i + 1 < zs.size()) && !(i == half - 1 || i == half);
  };
  for (std::size_t i = 1; i + 1 < zs.size(); ++i) {
    if (!interior(i)) continue;
    if (!(vals[i] <= vals[i - 1] && vals[i] <= vals[i + 1])) continue;
    if (vals[i] > 1e6 * tol) continue;  // skip shallow dips early
    const double z_star = golden_min(smin, zs[i - 1], zs[i + 1], 1e-10);
    const double s_star = smin(z_star);
    if (s_star > tol) continue;
    EigenvalueItem item;
    item.z = Complex(z_star, 0.0);
    item.lambda = (Complex(z_star, 0.0) + 1.0 / Complex(z_star, 0.0)).real();
    item.residual = s_star;
    const Block w = pairing(z_star);
    Eigen::JacobiSVD<Block> svd(w);
    item.multiplicity = 0;
    for (int k = 0; k < svd.singularValues().size(); ++k)
      if (svd.singularValues()(k) < 1e3 * tol) ++item.multiplicity;
    item.multiplicity = std::max(item.multiplicity, 1);
    report.items.push_back(item);
  }
  sort_and_dedupe(report);
  return report;
}

std::vector<double> truncated_spectrum(const CoefficientData& c, int m_size) {
  if (m_size < std::max(std::abs(c.support_min()), std::abs(c.support_max())) +
                   1)
    throw validation_error(
        "truncated_spectrum: section must contain the support");
  const int d = c.dim();
  const int sites = 2 * m_size + 1;
  const int n = sites * d;
  const int kd = 2 * d - 1;
  const int ldab = kd + 1;

  // Column-major lower-band storage: ab[j * ldab + (i - j)] = H(i, j).
  std::vector<std::complex<double>> ab(
      static_cast<std::size_t>(n) * static_cast<std::size_t>(ldab),
      std::complex<double>(0.0, 0.0));
  for (int j = 0; j < n; ++j) {
    const int site_c = j / d - m_size;
    const int s = j % d;
    for (int off = 0; off <= kd && j + off < n; ++off) {
      const int i = j + off;
      const int site_r = i / d - m_size;
      const int r = i % d;
      std::complex<double> value(0.0, 0.0);
      if (site_r == site_c)
        value = c.B(site_c)(r, s);
      else if (site_r == site_c + 1)
        value = c.A(site_c)(r, s);
      ab[static_cast<std::size_t>(j) * ldab + off] = value;
    }
  }
  std::vector<double> w(static_cast<std::size_t>(n));
  const lapack_int info =
      LAPACKE_zhbev(LAPACK_COL_MAJOR, 'N', 'L', n, kd, ab.data(), ldab,
                    w.data(), nullptr, 1);
  if (info != 0)
    throw numerical_error("truncated_spectrum: banded eigensolver failed "
                          "with info " +
                          std::to_string(info));
  return w;
}

EigenvalueReport truncation_eigen(const CoefficientData& c, int m_size,
                                  double margin) {
  const int reach =
      std::max(std::abs(c.support_min()), std::abs(c.support_max()));
  if (m_size < reach + 20)
    throw validation_error(
        "truncation_eigen: m_size must be at least the support reach + 20");
  if (margin <= 0.0)
    throw validation_error("truncation_eigen: margin must be positive");

  const std::vector<double> lam_m = truncated_spectrum(c, m_size);
  std::vector<double> lam_2m = truncated_spectrum(c, 2 * m_size);
  std::sort(lam_2m.begin(), lam_2m.end());

  struct Candidate {
    double lambda;
    double residual;
  };
  std::vector<Candidate> kept;
  for (double lam : lam_m) {
    if (std::abs(lam) <= 2.0 + margin) continue;
    const auto it = std::lower_bound(lam_2m.begin(), lam_2m.end(), lam);
    double best = std::numeric_limits<double>::infinity();
    if (it != lam_2m.end()) best = std::min(best, std::abs(*it - lam));
    if (it != lam_2m.begin()) best = std::min(best, std::abs(*(it - 1) - lam));
    if (best > 1e-4) continue;  // moves with the section: band-edge artifact
    kept.push_back({lam, best});
  }
  std::sort(kept.begin(), kept.end(),
            [](const Candidate& a, const Candidate& b) {
              return a.lambda < b.lambda;
            });

  EigenvalueReport report;
  report.method = "truncation";
  std::size_t i = 0;
  while (i < kept.size()) {
    std::size_t j = i + 1;
    double sum = kept[i].lambda;
    double res = kept[i].residual;
    while (j < kept.size() &&
           kept[j].lambda - kept[j - 1].lambda <=
               1e-9 * std::max(1.0, std::abs(kept[j].lambda))) {
      sum += kept[j].lambda;
      res = std::max(res, kept[j].residual);
      ++j;
    }
    EigenvalueItem item;
    item.lambda = sum / static_cast<double>(j - i);
    item.multiplicity = static_cast<int>(j - i);
    item.residual = res;
    item.z = zhukovsky_inverse(Complex(item.lambda, 0.0)).z;
    report.items.push_back(item);
    i = j;
  }
  return report;
}

Complex bs_determinant(const CoefficientData& c, Complex z) {
  if (z == Complex(0.0, 0.0) || z * z == Complex(1.0, 0.0))
    throw validation_error("bs_determinant: z must avoid 0, +1 and -1");
  const SupportSection s = support_section(c, z);
  const int nn = static_cast<int>(s.g.rows());
  const Block m = Block::Identity(nn, nn) + s.g * s.v;
  return m.partialPivLu().determinant();
}

EigenvalueReport bs_zero_scan(const CoefficientData& c, int grid_size,
                              double refine_tol) {
  auto f = [&](double z) {
    return bs_determinant(c, Complex(z, 0.0)).real();
  };
  auto af = [&](double z) { return std::abs(f(z)); };

  const std::vector<double> zs = scan_grid(grid_size);
  std::vector<double> vals(zs.size());
  std::vector<double> mags(zs.size());
  for (std::size_t i = 0; i < zs.size(); ++i) {
    vals[i] = f(zs[i]);
    mags[i] = std::abs(vals[i]);
  }
  double tol = refine_tol;
  if (tol <= 0.0) tol = 1e-8 * std::max(median(mags), 1e-300);

  EigenvalueReport report;
  report.method = "bs_determinant";
  const std::size_t half = zs.size() / 2;
  auto same_interval = [&](std::size_t i, std::size_t j) {
    return (i < half) == (j < half);
  };

  auto push_item = [&](double z_star, double value, int mult) {
    EigenvalueItem item;
    item.z = Complex(z_star, 0.0);
    item.lambda = (Complex(z_star, 0.0) + 1.0 / Complex(z_star, 0.0)).real();
    item.residual = std::abs(value);
    item.multiplicity = mult;
    report.items.push_back(item);
  };

  // Odd-order zeros: sign changes, refined by bisection.
  std::vector<double> roots;
  for (std::size_t i = 0; i + 1 < zs.size(); ++i) {
    if (!same_interval(i, i + 1)) continue;
    if (!(vals[i] == 0.0) && !(vals[i + 1] == 0.0) &&
        vals[i] * vals[i + 1] < 0.0) {
      double a = zs[i];
      double b = zs[i + 1];
      double fa = vals[i];
      while (b - a > 1e-12) {
        const double m = 0.5 * (a + b);
        const double fm = f(m);
        if (fm == 0.0) {
          a = b = m;
          break;
        }
        if (fa * fm < 0.0)
          b = m;
        else {
          a = m;
          fa = fm;
        }
      }
      const double z_star = 0.5 * (a + b);
      roots.push_back(z_star);
      push_item(z_star, f(z_star), 1);
    }
  }

  // Even-order zeros: interior minima of |f| that dip below tolerance
  // without a sign change nearby.
  for (std::size_t i = 1; i + 1 < zs.size(); ++i) {
    if (!same_interval(i - 1, i + 1)) continue;
    if (!(mags[i] <= mags[i - 1] && mags[i] <= mags[i + 1])) continue;
    if (mags[i] > 1e6 * tol) continue;
    if (vals[i - 1] * vals[i + 1] < 0.0) continue;  // handled as sign change
    const double z_star = golden_min(af, zs[i - 1], zs[i + 1], 1e-10);
    const double v_star = f(z_star);
    if (std::abs(v_star) > tol) continue;
    bool near_root = false;
    for (double r : roots)
      if (std::abs(r - z_star) <= 2.0 * (zs[1] - zs[0])) near_root = true;
    if (near_root) continue;
    push_item(z_star, v_star, 2);
  }
  sort_and_dedupe(report);
  return report;
}

BoundsReport eigenvalue_bounds(const CoefficientData& c, double radius,
                               const EigenvalueReport& report) {
  if (!(radius > 0.0 && radius < 1.0))
    throw validation_error("eigenvalue_bounds: radius must lie in (0, 1)");
  BoundsReport out;
  out.radius = radius;
  out.count_radius = radius / 2.0;
  out.product_lhs = 1.0;
  out.count_lhs = 0;
  for (const EigenvalueItem& item : report.items) {
    const double az = std::abs(item.z);
    if (!(az > 0.0) || az >= radius)
      throw validation_error(
          "eigenvalue_bounds: every reported item must satisfy 0 < |z| < "
          "radius");
    out.product_lhs *= std::pow(radius / az, item.multiplicity);
    if (az <= out.count_radius) out.count_lhs += item.multiplicity;
  }
  out.product_rhs =
      std::exp(radius / (1.0 - radius * radius) * trace_norm_budget(c));
  out.count_rhs =
      std::log(out.product_rhs) / std::log(radius / out.count_radius);
  return out;
}

const CVector& VectorSolution::at(int n) const {
  if (!contains(n))
    throw validation_error("VectorSolution: index " + std::to_string(n) +
                           " outside window");
  return values[static_cast<std::size_t>(n - w_lo)];
}

OperatorSolution promote_vector_solution(const VectorSolution& u,
                                         const CVector& v) {
  if (u.values.empty())
    throw validation_error("promote_vector_solution: empty solution");
  if (static_cast<int>(u.values.size()) != u.w_hi - u.w_lo + 1)
    throw validation_error(
        "promote_vector_solution: window does not match the value count");
  const double vv = v.squaredNorm();
  if (!(vv > 0.0))
    throw validation_error("promote_vector_solution: v must be nonzero");
  OperatorSolution out;
  out.z = u.z;
  out.species = Species::general;
  out.w_lo = u.w_lo;
  out.w_hi = u.w_hi;
  out.blocks.reserve(u.values.size());
  for (const CVector& un : u.values) {
    if (un.size() != v.size())
      throw validation_error(
          "promote_vector_solution: dimension mismatch between u and v");
    out.blocks.push_back(un * v.adjoint() / vv);
  }
  return out;
}

double resolvent_kernel_residual(const CoefficientData& c, Complex z) {
  if (z == Complex(0.0, 0.0) || z * z == Complex(1.0, 0.0))
    throw validation_error(
        "resolvent_kernel_residual: z must avoid 0, +1 and -1");
  const SupportSection s = support_section(c, z);
  const int d = c.dim();
  const int nn = s.sites * d;
  const Complex lambda = zhukovsky(z);

  Block j0 = Block::Zero(nn, nn);
  const Block id = identity_block(d);
  for (int i = 0; i + 1 < s.sites; ++i) {
    j0.block(i * d, (i + 1) * d, d, d) = id;
    j0.block((i + 1) * d, i * d, d, d) = id;
  }
  const Block err =
      (j0 - lambda * Block::Identity(nn, nn)) * s.g - Block::Identity(nn, nn);
  double worst = 0.0;
  for (int i = 1; i + 1 < s.sites; ++i)
    worst = std::max(worst, err.block(i * d, 0, d, nn).cwiseAbs().maxCoeff());
  return worst;
}

}  // namespace jscat
