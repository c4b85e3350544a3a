#include "jscat/jost.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <string>

namespace jscat {

namespace {

void require_window(const CoefficientData& c, Window w, const char* who) {
  if (w.lo > w.hi)
    throw validation_error(std::string(who) + ": empty window");
  if (w.lo > c.support_min() || w.hi < c.support_max())
    throw validation_error(std::string(who) +
                           ": window must contain the support");
}

void require_nonzero(Complex z, const char* who) {
  if (z == Complex(0.0, 0.0))
    throw validation_error(std::string(who) + ": z must be nonzero");
}

}  // namespace

const Block& OperatorSolution::at(int n) const {
  if (!contains(n))
    throw validation_error("OperatorSolution: index " + std::to_string(n) +
                           " outside window [" + std::to_string(w_lo) + ", " +
                           std::to_string(w_hi) + "]");
  return blocks[static_cast<std::size_t>(n - w_lo)];
}

Block& OperatorSolution::at(int n) {
  if (!contains(n))
    throw validation_error("OperatorSolution: index " + std::to_string(n) +
                           " outside window [" + std::to_string(w_lo) + ", " +
                           std::to_string(w_hi) + "]");
  return blocks[static_cast<std::size_t>(n - w_lo)];
}

Window default_window(const CoefficientData& c) {
  return Window{c.support_min() - 5, c.support_max() + 5};
}

double recursion_residual(const CoefficientData& c, const OperatorSolution& u) {
  if (u.w_hi - u.w_lo < 2) return 0.0;
  const Complex lambda = zhukovsky(u.z);
  double max_res = 0.0;
  double max_norm = 0.0;
  for (int n = u.w_lo; n <= u.w_hi; ++n)
    max_norm = std::max(max_norm, spectral_norm(u.at(n)));
  for (int n = u.w_lo + 1; n < u.w_hi; ++n) {
    const Block res = c.A(n - 1) * u.at(n - 1) + (c.B(n) - lambda * identity_block(c.dim())) * u.at(n) +
                      c.A(n) * u.at(n + 1);
    max_res = std::max(max_res, spectral_norm(res));
  }
  return max_res / std::max(1e-300, max_norm);
}

OperatorSolution jost_plus_recursion(const CoefficientData& c, Complex z,
                                     Window w) {
  require_nonzero(z, "jost_plus_recursion");
  require_window(c, w, "jost_plus_recursion");
  const int d = c.dim();
  const Complex lambda = zhukovsky(z);
  const Block id = identity_block(d);

  // Compute on an internal window extended past the support on the right so
  // the free-region seeds are always available.
  const int hi = std::max(w.hi, c.support_max() + 2);
  OperatorSolution u;
  u.z = z;
  u.species = Species::plus;
  u.w_lo = w.lo;
  u.w_hi = w.hi;
  u.blocks.assign(static_cast<std::size_t>(w.hi - w.lo + 1), Block());

  // Free region: exact powers.
  for (int n = std::max(w.lo, c.support_max() + 1); n <= w.hi; ++n)
    u.at(n) = pow_int(z, n) * id;

  // Transport downward from the two lowest free-region values.
  Block up1 = pow_int(z, hi) * id;      // U_{n+1}
  Block un = pow_int(z, hi - 1) * id;   // U_n
  for (int n = hi - 1; n - 1 >= w.lo; --n) {
    Block rhs = (lambda * id - c.B(n)) * un - c.A(n) * up1;
    Block um1 = c.A(n - 1).partialPivLu().solve(rhs);  // U_{n-1}
    if (n - 1 <= std::min(w.hi, c.support_max()))
      u.at(n - 1) = um1;
    up1 = std::move(un);
    un = std::move(um1);
  }
  return u;
}

OperatorSolution jost_minus_recursion(const CoefficientData& c, Complex z,
                                      Window w) {
  require_nonzero(z, "jost_minus_recursion");
  require_window(c, w, "jost_minus_recursion");
  const int d = c.dim();
  const Complex lambda = zhukovsky(z);
  const Block id = identity_block(d);

  const int lo = std::min(w.lo, c.support_min() - 2);
  OperatorSolution u;
  u.z = z;
  u.species = Species::minus;
  u.w_lo = w.lo;
  u.w_hi = w.hi;
  u.blocks.assign(static_cast<std::size_t>(w.hi - w.lo + 1), Block());

  for (int n = w.lo; n <= std::min(w.hi, c.support_min() - 1); ++n)
    u.at(n) = pow_int(z, -n) * id;

  Block um1 = pow_int(z, -lo) * id;        // U_{n-1}
  Block un = pow_int(z, -(lo + 1)) * id;   // U_n
  for (int n = lo + 1; n + 1 <= w.hi; ++n) {
    Block rhs = (lambda * id - c.B(n)) * un - c.A(n - 1) * um1;
    Block up1 = c.A(n).partialPivLu().solve(rhs);  // U_{n+1}
    if (n + 1 >= std::max(w.lo, c.support_min()))
      u.at(n + 1) = up1;
    um1 = std::move(un);
    un = std::move(up1);
  }
  return u;
}

const Block& JostSeriesData::T(int n) const {
  if (n > n_max + 1) return id_;
  if (n < k_lo)
    throw validation_error("JostSeriesData: T index below stored range");
  return t_blocks[static_cast<std::size_t>(n - k_lo)];
}

const Block& JostSeriesData::R(int n) const {
  if (n < n_min - 1) return id_;
  if (n > m_hi)
    throw validation_error("JostSeriesData: R index above stored range");
  return r_blocks[static_cast<std::size_t>(n - (n_min - 1))];
}

const Block& JostSeriesData::K(int n, int m) const {
  if (m < 1) throw validation_error("JostSeriesData: K order must be >= 1");
  if (n > n_max || m > k_m_max) return zero_;
  if (n < k_lo)
    throw validation_error("JostSeriesData: K index below stored range");
  return k_blocks[static_cast<std::size_t>(n - k_lo) *
                      static_cast<std::size_t>(k_m_max) +
                  static_cast<std::size_t>(m - 1)];
}

const Block& JostSeriesData::M(int n, int m) const {
  if (m < 1) throw validation_error("JostSeriesData: M order must be >= 1");
  if (n < n_min || m > m_m_max) return zero_;
  if (n > m_hi)
    throw validation_error("JostSeriesData: M index above stored range");
  return m_blocks[static_cast<std::size_t>(n - (n_min - 1)) *
                      static_cast<std::size_t>(m_m_max) +
                  static_cast<std::size_t>(m - 1)];
}

JostSeriesData build_series_data(const CoefficientData& c, Window w) {
  require_window(c, w, "build_series_data");
  const int d = c.dim();
  const int n_min = c.support_min();
  const int n_max = c.support_max();
  const Block id = identity_block(d);

  JostSeriesData s;
  s.dim = d;
  s.n_min = n_min;
  s.n_max = n_max;
  s.k_lo = std::min(w.lo, n_min - 1);
  s.m_hi = std::max(w.hi, n_max + 1);
  // Proved vanishing degree at the lowest stored row, plus two slack orders
  // whose vanishing is asserted below.
  s.k_m_max = 2 * (n_max - s.k_lo) + 2;
  s.m_m_max = 2 * (s.m_hi - n_min) + 2;
  s.id_ = id;
  s.zero_ = Block::Zero(d, d);

  // T_n = A_n^{-1} T_{n+1}, T_n = I for n >= n_max + 1.
  const int t_count = n_max + 1 - s.k_lo + 1;
  s.t_blocks.assign(static_cast<std::size_t>(t_count), id);
  for (int n = n_max; n >= s.k_lo; --n) {
    const Block& t_next = s.t_blocks[static_cast<std::size_t>(n + 1 - s.k_lo)];
    s.t_blocks[static_cast<std::size_t>(n - s.k_lo)] =
        c.A(n).partialPivLu().solve(t_next);
  }

  // R_{n+1} = A_n^{-1} R_n, R_n = I for n <= n_min - 1.
  const int r_count = s.m_hi - (n_min - 1) + 1;
  s.r_blocks.assign(static_cast<std::size_t>(r_count), id);
  for (int n = n_min; n <= s.m_hi; ++n) {
    const Block& r_prev =
        s.r_blocks[static_cast<std::size_t>(n - 1 - (n_min - 1))];
    s.r_blocks[static_cast<std::size_t>(n - (n_min - 1))] =
        c.A(n - 1).partialPivLu().solve(r_prev);
  }

  // Conjugated coefficient factors appearing in every K/M sum. The site
  // range [n_min - 1, n_max + 1] covers every nonzero B_p, I - A_p^2 and
  // I - A_{p-1}^2.
  const int p_lo = n_min - 1;
  const int p_hi = n_max + 1;
  const int p_count = p_hi - p_lo + 1;
  std::vector<Block> tb(p_count), ta(p_count), rb(p_count), ra(p_count);
  for (int p = p_lo; p <= p_hi; ++p) {
    tb[p - p_lo] = s.T(p).partialPivLu().solve(Block(c.B(p) * s.T(p)));
    ta[p - p_lo] =
        s.T(p).partialPivLu().solve(Block((id - c.A(p) * c.A(p)) * s.T(p)));
    rb[p - p_lo] = s.R(p).partialPivLu().solve(Block(c.B(p) * s.R(p)));
    ra[p - p_lo] = s.R(p).partialPivLu().solve(
        Block((id - c.A(p - 1) * c.A(p - 1)) * s.R(p)));
  }

  // K rows, descending in n from the free region.
  const int k_rows = n_max + 1 - s.k_lo + 1;
  s.k_blocks.assign(static_cast<std::size_t>(k_rows) *
                        static_cast<std::size_t>(s.k_m_max),
                    Block::Zero(d, d));
  auto kref = [&](int n, int m) -> Block& {
    return s.k_blocks[static_cast<std::size_t>(n - s.k_lo) *
                          static_cast<std::size_t>(s.k_m_max) +
                      static_cast<std::size_t>(m - 1)];
  };
  for (int n = n_max; n >= s.k_lo; --n) {
    // K_{n,1} = -sum_{p>n} T_p^{-1} B_p T_p.
    Block k1 = Block::Zero(d, d);
    for (int p = std::max(n + 1, p_lo); p <= p_hi; ++p) k1 -= tb[p - p_lo];
    kref(n, 1) = k1;
    // K_{n,2} = sum_{p>n} [ -T_p^{-1} B_p T_p K_{p,1}
    //                       + T_p^{-1} (I - A_p^2) T_p ].
    Block k2 = Block::Zero(d, d);
    for (int p = std::max(n + 1, p_lo); p <= p_hi; ++p)
      k2 += -tb[p - p_lo] * s.K(p, 1) + ta[p - p_lo];
    kref(n, 2) = k2;
    // K_{n,m+2} = sum_{p>n} [ -T_p^{-1} B_p T_p K_{p,m+1}
    //                         + T_p^{-1} (I - A_p^2) T_p K_{p+1,m} ]
    //             + K_{n+1,m}.
    for (int m = 1; m + 2 <= s.k_m_max; ++m) {
      Block acc = s.K(n + 1, m);
      for (int p = std::max(n + 1, p_lo); p <= p_hi; ++p)
        acc += -tb[p - p_lo] * s.K(p, m + 1) + ta[p - p_lo] * s.K(p + 1, m);
      kref(n, m + 2) = acc;
    }
  }

  // M rows, ascending in n from the free region on the left.
  const int m_rows = s.m_hi - (n_min - 1) + 1;
  s.m_blocks.assign(static_cast<std::size_t>(m_rows) *
                        static_cast<std::size_t>(s.m_m_max),
                    Block::Zero(d, d));
  auto mref = [&](int n, int m) -> Block& {
    return s.m_blocks[static_cast<std::size_t>(n - (n_min - 1)) *
                          static_cast<std::size_t>(s.m_m_max) +
                      static_cast<std::size_t>(m - 1)];
  };
  for (int n = n_min; n <= s.m_hi; ++n) {
    const int mp_hi = std::min(n - 1, p_hi);
    // M_{n,1} = -sum_{p<n} R_p^{-1} B_p R_p.
    Block m1 = Block::Zero(d, d);
    for (int p = p_lo; p <= mp_hi; ++p) m1 -= rb[p - p_lo];
    mref(n, 1) = m1;
    // M_{n,2} = sum_{p<n} [ -R_p^{-1} B_p R_p M_{p,1}
    //                       + R_p^{-1} (I - A_{p-1}^2) R_p ].
    Block m2 = Block::Zero(d, d);
    for (int p = p_lo; p <= mp_hi; ++p)
      m2 += -rb[p - p_lo] * s.M(p, 1) + ra[p - p_lo];
    mref(n, 2) = m2;
    // M_{n,m+2} = sum_{p<n} [ -R_p^{-1} B_p R_p M_{p,m+1}
    //                         + R_p^{-1} (I - A_{p-1}^2) R_p M_{p-1,m} ]
    //             + M_{n-1,m}.
    for (int m = 1; m + 2 <= s.m_m_max; ++m) {
      Block acc = s.M(n - 1, m);
      for (int p = p_lo; p <= mp_hi; ++p)
        acc += -rb[p - p_lo] * s.M(p, m + 1) + ra[p - p_lo] * s.M(p - 1, m);
      mref(n, m + 2) = acc;
    }
  }

  // Assert the vanishing degrees (two slack orders included in storage).
  double scale = 1.0;
  for (const Block& b : s.k_blocks) scale = std::max(scale, spectral_norm(b));
  for (const Block& b : s.m_blocks) scale = std::max(scale, spectral_norm(b));
  for (int n = s.k_lo; n <= n_max + 1; ++n)
    for (int m = 1; m <= s.k_m_max; ++m)
      if ((n >= n_max || m > 2 * (n_max - n)) &&
          spectral_norm(s.K(n, m)) > 1e-12 * scale)
        throw numerical_error("series builder: K coefficient fails to vanish "
                              "beyond the predicted degree");
  for (int n = n_min - 1; n <= s.m_hi; ++n)
    for (int m = 1; m <= s.m_m_max; ++m)
      if ((n <= n_min || m > 2 * (n - n_min)) &&
          spectral_norm(s.M(n, m)) > 1e-12 * scale)
        throw numerical_error("series builder: M coefficient fails to vanish "
                              "beyond the predicted degree");
  return s;
}

JostSeriesData build_series_data(const CoefficientData& c) {
  return build_series_data(c, default_window(c));
}

OperatorSolution jost_plus_series(const CoefficientData& c,
                                  const JostSeriesData& s, Complex z,
                                  Window w) {
  require_nonzero(z, "jost_plus_series");
  require_window(c, w, "jost_plus_series");
  if (w.lo < s.k_lo)
    throw validation_error("jost_plus_series: window below stored K range");
  OperatorSolution u;
  u.z = z;
  u.species = Species::plus;
  u.w_lo = w.lo;
  u.w_hi = w.hi;
  u.blocks.reserve(static_cast<std::size_t>(w.hi - w.lo + 1));
  const Block id = identity_block(c.dim());
  for (int n = w.lo; n <= w.hi; ++n) {
    Block sum = id;
    const int deg = std::max(0, 2 * (s.n_max - n));
    Complex zp = z;
    for (int m = 1; m <= std::min(deg, s.k_m_max); ++m, zp *= z)
      sum += s.K(n, m) * zp;
    u.blocks.push_back(s.T(n) * (pow_int(z, n) * sum));
  }
  return u;
}

OperatorSolution jost_minus_series(const CoefficientData& c,
                                   const JostSeriesData& s, Complex z,
                                   Window w) {
  require_nonzero(z, "jost_minus_series");
  require_window(c, w, "jost_minus_series");
  if (w.hi > s.m_hi)
    throw validation_error("jost_minus_series: window above stored M range");
  OperatorSolution u;
  u.z = z;
  u.species = Species::minus;
  u.w_lo = w.lo;
  u.w_hi = w.hi;
  u.blocks.reserve(static_cast<std::size_t>(w.hi - w.lo + 1));
  const Block id = identity_block(c.dim());
  for (int n = w.lo; n <= w.hi; ++n) {
    Block sum = id;
    const int deg = std::max(0, 2 * (n - s.n_min));
    Complex zp = z;
    for (int m = 1; m <= std::min(deg, s.m_m_max); ++m, zp *= z)
      sum += s.M(n, m) * zp;
    u.blocks.push_back(s.R(n) * (pow_int(z, -n) * sum));
  }
  return u;
}

double tail_bound(const CoefficientData& c, int n, int window_cut) {
  if (window_cut < 0)
    throw validation_error("tail_bound: window_cut must be >= 0");
  const int n_min = c.support_min();
  const int n_max = c.support_max();
  const Block id = identity_block(c.dim());

  auto site_dev = [&](int p) {
    return spectral_norm(id - c.A(p)) + spectral_norm(c.B(p));
  };

  // Explicit constant: sup_j (||T_j|| + ||T_j^{-1}|| + ||I + A_j||) plus the
  // first moment sum of the coefficient deviations.
  JostSeriesData s = build_series_data(
      c, Window{std::min(n, n_min) - 1, std::max(n, n_max)});
  double cconst = 0.0;
  for (int j = std::min(n, n_min) - 1; j <= n_max + 1; ++j) {
    const double tj = spectral_norm(s.T(j));
    const double tj_inv = spectral_norm(s.T(j).partialPivLu().solve(id));
    const double aj = spectral_norm(id + c.A(j));
    cconst = std::max(cconst, tj + tj_inv + aj);
  }
  for (int p = n_min - 1; p <= n_max; ++p)
    cconst += (std::abs(p) + 1.0) * site_dev(p);

  double weighted = 0.0;  // sum_{p > n} (p - n) (||I - A_p|| + ||B_p||)
  for (int p = std::max(n + 1, n_min - 1); p <= n_max; ++p)
    weighted += (p - n) * site_dev(p);
  const double c3 = cconst * cconst * cconst;
  const double c_n = std::pow(cconst, 5) * std::exp(c3 * weighted);

  // Per-order bound ||K_{n,m}|| <= C_n sum_{p >= n + floor(m/2)} dev(p),
  // cut to zero beyond the proved vanishing degree m > 2(n_max - n).
  const int degree = std::max(0, 2 * (n_max - n));
  double total = 0.0;
  for (int m = window_cut + 1; m <= degree; ++m) {
    double tail = 0.0;
    for (int p = std::max(n + m / 2, n_min - 1); p <= n_max; ++p)
      tail += site_dev(p);
    total += c_n * tail;
  }
  return total;
}

OperatorSolution delta_jost(const CoefficientData& c, const JostSeriesData& s,
                            Species species, Complex z0, Complex z, Window w) {
  if (species == Species::general)
    throw validation_error("delta_jost: species must be plus or minus");
  if (z0 != Complex(1.0, 0.0) && z0 != Complex(-1.0, 0.0))
    throw validation_error("delta_jost: z0 must be +1 or -1");
  require_window(c, w, "delta_jost");

  OperatorSolution out;
  out.z = z;
  out.species = Species::general;
  out.w_lo = w.lo;
  out.w_hi = w.hi;
  out.blocks.reserve(static_cast<std::size_t>(w.hi - w.lo + 1));

  if (z != z0) {
    const OperatorSolution uz =
        (species == Species::plus) ? jost_plus_series(c, s, z, w)
                                   : jost_minus_series(c, s, z, w);
    const OperatorSolution u0 =
        (species == Species::plus) ? jost_plus_series(c, s, z0, w)
                                   : jost_minus_series(c, s, z0, w);
    for (int n = w.lo; n <= w.hi; ++n)
      out.blocks.push_back((uz.at(n) - u0.at(n)) / (z - z0));
    return out;
  }

  // Exact term-by-term derivative of the finite series at z0.
  const Block id = identity_block(c.dim());
  for (int n = w.lo; n <= w.hi; ++n) {
    if (species == Species::plus) {
      Block acc = static_cast<double>(n) * pow_int(z0, n - 1) * id;
      const int deg = std::max(0, 2 * (s.n_max - n));
      for (int m = 1; m <= std::min(deg, s.k_m_max); ++m)
        acc += static_cast<double>(m + n) * pow_int(z0, m + n - 1) * s.K(n, m);
      out.blocks.push_back(s.T(n) * acc);
    } else {
      Block acc = -static_cast<double>(n) * pow_int(z0, -n - 1) * id;
      const int deg = std::max(0, 2 * (n - s.n_min));
      for (int m = 1; m <= std::min(deg, s.m_m_max); ++m)
        acc += static_cast<double>(m - n) * pow_int(z0, m - n - 1) * s.M(n, m);
      out.blocks.push_back(s.R(n) * acc);
    }
  }
  return out;
}

}  // namespace jscat
