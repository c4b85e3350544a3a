#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "jscat/generator.hpp"
#include "jscat/jost.hpp"

using jscat::Block;
using jscat::CoefficientData;
using jscat::Complex;
using jscat::JostSeriesData;
using jscat::OperatorSolution;
using jscat::Window;

namespace {

CoefficientData diagonal_instance(double b_value, double a_value) {
  std::vector<Block> a{Block::Identity(1, 1),
                       a_value * Block::Identity(1, 1)};
  std::vector<Block> b{b_value * Block::Identity(1, 1)};
  return CoefficientData(1, 0, 0, std::move(a), std::move(b));
}

double block_diff(const Block& x, const Block& y) {
  return jscat::spectral_norm(Block(x - y));
}

double dual_method_gap(const CoefficientData& c, Complex z,
                       const JostSeriesData& s, Window w) {
  const OperatorSolution pr = jscat::jost_plus_recursion(c, z, w);
  const OperatorSolution ps = jscat::jost_plus_series(c, s, z, w);
  const OperatorSolution mr = jscat::jost_minus_recursion(c, z, w);
  const OperatorSolution ms = jscat::jost_minus_series(c, s, z, w);
  double gap = 0.0;
  for (int n = w.lo; n <= w.hi; ++n) {
    const double scale_p =
        std::max(1.0, std::max(jscat::spectral_norm(pr.at(n)),
                               jscat::spectral_norm(ps.at(n))));
    const double scale_m =
        std::max(1.0, std::max(jscat::spectral_norm(mr.at(n)),
                               jscat::spectral_norm(ms.at(n))));
    gap = std::max(gap, block_diff(pr.at(n), ps.at(n)) / scale_p);
    gap = std::max(gap, block_diff(mr.at(n), ms.at(n)) / scale_m);
  }
  return gap;
}

}  // namespace

TEST_CASE("free operator solutions are exact powers") {
  const CoefficientData f = jscat::free_instance(2);
  const Window w{-6, 6};
  const JostSeriesData s = jscat::build_series_data(f, w);
  const Complex zs[] = {{0.5, 0.0}, {-0.3, 0.4}, {0.9, 0.1},
                        std::polar(1.0, 0.7)};
  for (Complex z : zs) {
    const OperatorSolution up = jscat::jost_plus_recursion(f, z, w);
    const OperatorSolution um = jscat::jost_minus_recursion(f, z, w);
    const OperatorSolution vp = jscat::jost_plus_series(f, s, z, w);
    const OperatorSolution vm = jscat::jost_minus_series(f, s, z, w);
    for (int n = w.lo; n <= w.hi; ++n) {
      const Block zp = jscat::pow_int(z, n) * Block::Identity(2, 2);
      const Block zm = jscat::pow_int(z, -n) * Block::Identity(2, 2);
      const double scale_p = std::max(1.0, jscat::spectral_norm(zp));
      const double scale_m = std::max(1.0, jscat::spectral_norm(zm));
      CHECK(block_diff(up.at(n), zp) / scale_p < 1e-14);
      CHECK(block_diff(vp.at(n), zp) / scale_p < 1e-14);
      CHECK(block_diff(um.at(n), zm) / scale_m < 1e-14);
      CHECK(block_diff(vm.at(n), zm) / scale_m < 1e-14);
    }
    CHECK(jscat::recursion_residual(f, up) < 1e-14);
    CHECK(jscat::recursion_residual(f, um) < 1e-14);
  }
}

TEST_CASE("single-site diagonal potential has explicit solutions") {
  // d = 1, support {0}, B_0 = 1.5.  At z = 0.5 (lambda = 2.5):
  //   U+_n = z^n for n >= 0,   U+_{-1} = 1/z - 1.5 = 0.5,
  //   U-_n = z^{-n} for n <= 0, U-_{+1} = 1/z - 1.5 = 0.5.
  const CoefficientData c = diagonal_instance(1.5, 1.0);
  const Window w{-5, 5};
  const JostSeriesData s = jscat::build_series_data(c, w);
  const Complex z(0.5, 0.0);

  const OperatorSolution up = jscat::jost_plus_recursion(c, z, w);
  const OperatorSolution um = jscat::jost_minus_recursion(c, z, w);
  const OperatorSolution vp = jscat::jost_plus_series(c, s, z, w);
  const OperatorSolution vm = jscat::jost_minus_series(c, s, z, w);

  for (const OperatorSolution* u : {&up, &vp}) {
    for (int n = 0; n <= w.hi; ++n)
      CHECK(std::abs(u->at(n)(0, 0) - jscat::pow_int(z, n)) < 1e-14);
    CHECK(std::abs(u->at(-1)(0, 0) - Complex(0.5, 0)) < 1e-14);
  }
  for (const OperatorSolution* u : {&um, &vm}) {
    for (int n = w.lo; n <= 0; ++n)
      CHECK(std::abs(u->at(n)(0, 0) - jscat::pow_int(z, -n)) < 1e-14);
    CHECK(std::abs(u->at(1)(0, 0) - Complex(0.5, 0)) < 1e-12);
  }
  CHECK(jscat::recursion_residual(c, up) < 1e-13);
  CHECK(jscat::recursion_residual(c, vm) < 1e-13);

  SUBCASE("series coefficient table") {
    // K_{n,1} = -sum_{p>n} B_p: only the site p = 0 contributes.
    CHECK(std::abs(s.K(-1, 1)(0, 0) - Complex(-1.5, 0)) < 1e-14);
    CHECK(std::abs(s.K(-1, 2)(0, 0)) < 1e-14);
    CHECK(std::abs(s.K(-3, 1)(0, 0) - Complex(-1.5, 0)) < 1e-14);
    CHECK(jscat::spectral_norm(s.K(0, 1)) < 1e-14);  // degree 0 at n = 0
    // M-rows: odd orders repeat -B_0, even orders vanish (A = I).
    CHECK(std::abs(s.M(1, 1)(0, 0) - Complex(-1.5, 0)) < 1e-14);
    CHECK(std::abs(s.M(2, 1)(0, 0) - Complex(-1.5, 0)) < 1e-14);
    CHECK(std::abs(s.M(2, 2)(0, 0)) < 1e-14);
    CHECK(std::abs(s.M(2, 3)(0, 0) - Complex(-1.5, 0)) < 1e-14);
    CHECK(std::abs(s.M(3, 1)(0, 0) - Complex(-1.5, 0)) < 1e-14);
    CHECK(std::abs(s.M(3, 3)(0, 0) - Complex(-1.5, 0)) < 1e-14);
    CHECK(std::abs(s.M(3, 5)(0, 0) - Complex(-1.5, 0)) < 1e-14);
    CHECK(jscat::spectral_norm(s.M(3, 6)) == 0.0);  // beyond the degree
    CHECK(jscat::spectral_norm(s.M(0, 1)) == 0.0);  // left free region
  }
}

TEST_CASE("single-site off-diagonal weight has explicit series data") {
  // d = 1, A_0 = 2 (all other coefficients free).  Then T_0 = 1/2 and the
  // second-order coefficients are K_{-1,2} = 1 - A_0^2 = -3 conjugated by
  // the T-chain, and M_{n,2} = -3 for n >= 2 via the site p = 1 just right
  // of the support.
  const CoefficientData c = diagonal_instance(0.0, 2.0);
  const Window w{-5, 5};
  const JostSeriesData s = jscat::build_series_data(c, w);

  CHECK(std::abs(s.T(0)(0, 0) - Complex(0.5, 0)) < 1e-15);
  CHECK(std::abs(s.T(1)(0, 0) - Complex(1.0, 0)) < 1e-15);
  CHECK(std::abs(s.R(1)(0, 0) - Complex(0.5, 0)) < 1e-15);
  CHECK(std::abs(s.K(-1, 2)(0, 0) - Complex(-3.0, 0)) < 1e-14);
  CHECK(std::abs(s.K(-1, 1)(0, 0)) < 1e-14);
  CHECK(std::abs(s.M(2, 2)(0, 0) - Complex(-3.0, 0)) < 1e-14);
  CHECK(std::abs(s.M(3, 4)(0, 0) - Complex(-3.0, 0)) < 1e-14);
  CHECK(std::abs(s.M(3, 2)(0, 0) - Complex(-3.0, 0)) < 1e-14);

  // Cross-check one series value against the recursion at a generic z.
  const Complex z(0.3, 0.0);
  const OperatorSolution um = jscat::jost_minus_recursion(c, z, w);
  const OperatorSolution vm = jscat::jost_minus_series(c, s, z, w);
  CHECK(std::abs(um.at(2)(0, 0) - Complex(4.0 + 1.0 / 18.0, 0)) < 1e-12);
  CHECK(std::abs(vm.at(2)(0, 0) - um.at(2)(0, 0)) < 1e-12);
}

TEST_CASE("recursion and series agree on random instances") {
  for (std::uint64_t seed : {3u, 11u, 17u, 29u}) {
    const CoefficientData c = jscat::make_suite_instance(seed);
    const Window w = jscat::default_window(c);
    const JostSeriesData s = jscat::build_series_data(c, w);
    const Complex zs[] = {{0.3, 0.0},          {-0.7, 0.0},
                          {0.5, 0.4},          std::polar(1.0, 0.8),
                          std::polar(1.0, 2.5), {1.1, 0.3}};
    for (Complex z : zs) {
      CAPTURE(seed);
      CAPTURE(z.real());
      CAPTURE(z.imag());
      CHECK(dual_method_gap(c, z, s, w) < 1e-9);
    }

    // Strict free region: the series collapses to bare powers there.
    const Complex z(0.6, 0.2);
    const OperatorSolution vp = jscat::jost_plus_series(c, s, z, w);
    const OperatorSolution vm = jscat::jost_minus_series(c, s, z, w);
    const Block id = Block::Identity(c.dim(), c.dim());
    for (int n = c.support_max() + 1; n <= w.hi; ++n)
      CHECK(block_diff(vp.at(n), Block(jscat::pow_int(z, n) * id)) < 1e-15);
    for (int n = w.lo; n <= c.support_min() - 1; ++n)
      CHECK(block_diff(vm.at(n), Block(jscat::pow_int(z, -n) * id)) < 1e-15);
  }
}

TEST_CASE("solutions extend outside the unit disk") {
  const CoefficientData c = jscat::make_suite_instance(8);
  const Window w = jscat::default_window(c);
  const JostSeriesData s = jscat::build_series_data(c, w);
  const Complex z = 1.2 * std::polar(1.0, 0.4);
  const OperatorSolution up = jscat::jost_plus_recursion(c, z, w);
  const OperatorSolution um = jscat::jost_minus_recursion(c, z, w);
  CHECK(jscat::recursion_residual(c, up) < 1e-12);
  CHECK(jscat::recursion_residual(c, um) < 1e-12);
  CHECK(dual_method_gap(c, z, s, w) < 1e-9);
}

TEST_CASE("tail bound dominates the actual series remainder") {
  SUBCASE("free and fully resolved cases give zero") {
    CHECK(jscat::tail_bound(jscat::free_instance(2), 0, 0) == 0.0);
    const CoefficientData c = diagonal_instance(1.5, 1.0);
    CHECK(jscat::tail_bound(c, 0, 0) == 0.0);   // degree 2(n_max - n) = 0
    CHECK(jscat::tail_bound(c, -1, 2) == 0.0);  // cut at the full degree
  }

  SUBCASE("dominance against the exact coefficients") {
    for (std::uint64_t seed : {5u, 12u}) {
      const CoefficientData c = jscat::make_suite_instance(seed);
      const Window w = jscat::default_window(c);
      const JostSeriesData s = jscat::build_series_data(c, w);
      for (int n = c.support_min() - 2; n <= c.support_max(); ++n) {
        for (int cut : {0, 1, 2}) {
          double remainder = 0.0;
          const int degree = 2 * (c.support_max() - n);
          for (int m = cut + 1; m <= degree; ++m)
            remainder += jscat::spectral_norm(s.K(n, m));
          const double bound = jscat::tail_bound(c, n, cut);
          CAPTURE(seed);
          CAPTURE(n);
          CAPTURE(cut);
          CHECK(remainder <= bound * (1.0 + 1e-12) + 1e-300);
          CHECK(jscat::tail_bound(c, n, cut + 1) <= bound * (1.0 + 1e-12));
        }
      }
    }
  }
}

TEST_CASE("difference quotients and the band-edge derivative") {
  const CoefficientData c = diagonal_instance(1.5, 1.0);
  const Window w{-4, 4};
  const JostSeriesData s = jscat::build_series_data(c, w);

  SUBCASE("quotient against the explicit solution") {
    // U+_{-1}(z) = 1/z - 1.5, so the quotient at z0 = 1, z = 0.9 is
    // (1/0.9 - 1) / (0.9 - 1) = -1/0.9 and the derivative limit is -1.
    const OperatorSolution q = jscat::delta_jost(
        c, s, jscat::Species::plus, Complex(1, 0), Complex(0.9, 0), w);
    CHECK(std::abs(q.at(-1)(0, 0) - Complex(-1.0 / 0.9, 0)) < 1e-12);
    const OperatorSolution dl = jscat::delta_jost(
        c, s, jscat::Species::plus, Complex(1, 0), Complex(1, 0), w);
    CHECK(std::abs(dl.at(-1)(0, 0) - Complex(-1.0, 0)) < 1e-13);
    const OperatorSolution dm = jscat::delta_jost(
        c, s, jscat::Species::minus, Complex(1, 0), Complex(1, 0), w);
    CHECK(std::abs(dm.at(1)(0, 0) - Complex(-1.0, 0)) < 1e-13);
  }

  SUBCASE("central quotients converge to the limit") {
    const CoefficientData g = jscat::make_suite_instance(21);
    const Window wg = jscat::default_window(g);
    const JostSeriesData sg = jscat::build_series_data(g, wg);
    for (double z0 : {1.0, -1.0}) {
      const double h = 1e-5;
      const OperatorSolution qp = jscat::delta_jost(
          g, sg, jscat::Species::plus, Complex(z0, 0), Complex(z0 + h, 0), wg);
      const OperatorSolution qm = jscat::delta_jost(
          g, sg, jscat::Species::plus, Complex(z0, 0), Complex(z0 - h, 0), wg);
      const OperatorSolution dl = jscat::delta_jost(
          g, sg, jscat::Species::plus, Complex(z0, 0), Complex(z0, 0), wg);
      for (int n = wg.lo; n <= wg.hi; ++n) {
        const Block central = 0.5 * (qp.at(n) + qm.at(n));
        const double scale = std::max(1.0, jscat::spectral_norm(dl.at(n)));
        CHECK(block_diff(central, dl.at(n)) / scale < 1e-8);
      }
    }
  }

  SUBCASE("rejects invalid expansion points") {
    CHECK_THROWS_AS(jscat::delta_jost(c, s, jscat::Species::general,
                                      Complex(1, 0), Complex(1, 0), w),
                    jscat::validation_error);
    CHECK_THROWS_AS(jscat::delta_jost(c, s, jscat::Species::plus,
                                      Complex(0.5, 0), Complex(0.5, 0), w),
                    jscat::validation_error);
  }
}

TEST_CASE("window and argument validation") {
  const CoefficientData c = diagonal_instance(1.0, 1.0);
  CHECK_THROWS_AS(jscat::jost_plus_recursion(c, Complex(0.5, 0), Window{2, 5}),
                  jscat::validation_error);
  CHECK_THROWS_AS(jscat::jost_plus_recursion(c, Complex(0, 0), Window{-3, 3}),
                  jscat::validation_error);
  const OperatorSolution u =
      jscat::jost_plus_recursion(c, Complex(0.5, 0), Window{-3, 3});
  CHECK_THROWS_AS(u.at(4), jscat::validation_error);
  CHECK_THROWS_AS(u.at(-4), jscat::validation_error);
}
