#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "jscat/generator.hpp"
#include "jscat/jost.hpp"
#include "jscat/wronskian.hpp"

using jscat::Block;
using jscat::CoefficientData;
using jscat::Complex;
using jscat::OperatorSolution;
using jscat::Window;

namespace {

CoefficientData single_site(double b) {
  std::vector<Block> a(2, Block::Identity(1, 1));
  std::vector<Block> bb(1, b * Block::Identity(1, 1));
  return CoefficientData(1, 0, 0, std::move(a), std::move(bb));
}

double block_diff(const Block& x, const Block& y) {
  return jscat::spectral_norm(Block(x - y));
}

// Left factor (U(conj z))* paired against solutions at z.
OperatorSolution starred_plus(const CoefficientData& c, Complex z, Window w) {
  return jscat::adjoint_conjugate_solution(
      jscat::jost_plus_recursion(c, std::conj(z), w));
}

OperatorSolution starred_minus(const CoefficientData& c, Complex z, Window w) {
  return jscat::adjoint_conjugate_solution(
      jscat::jost_minus_recursion(c, std::conj(z), w));
}

OperatorSolution random_sequence(int dim, Window w, std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  OperatorSolution u;
  u.z = Complex(0.3, 0.1);  // irrelevant for arbitrary sequences
  u.w_lo = w.lo;
  u.w_hi = w.hi;
  for (int n = w.lo; n <= w.hi; ++n) {
    Block blk(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) blk(i, j) = Complex(uni(rng), uni(rng));
    u.blocks.push_back(blk);
  }
  return u;
}

}  // namespace

TEST_CASE("summation-by-parts identity for arbitrary block sequences") {
  // W_{m+1}(u,v) - W_n(u,v) = sum_{j=n}^{m} [ u_j (tau v)_j - (u tau)_j v_j ]
  // holds for any sequences, not just solutions; it pins the sign and index
  // conventions of wronskian_at against the operator itself.
  const CoefficientData c = jscat::make_suite_instance(13);
  const Window w{c.support_min() - 3, c.support_max() + 3};
  const int d = c.dim();
  const OperatorSolution u = random_sequence(d, w, 101);
  const OperatorSolution v = random_sequence(d, w, 202);

  const int n = w.lo + 1;
  const int m = w.hi - 1;
  const Block lhs = jscat::wronskian_at(c, u, v, m + 1) -
                    jscat::wronskian_at(c, u, v, n);
  Block rhs = Block::Zero(d, d);
  for (int j = n; j <= m; ++j) {
    const Block tau_v =
        c.A(j - 1) * v.at(j - 1) + c.B(j) * v.at(j) + c.A(j) * v.at(j + 1);
    const Block u_tau =
        u.at(j - 1) * c.A(j - 1) + u.at(j) * c.B(j) + u.at(j + 1) * c.A(j);
    rhs += u.at(j) * tau_v - u_tau * v.at(j);
  }
  CHECK(block_diff(lhs, rhs) < 1e-12 * std::max(1.0, jscat::spectral_norm(rhs)));
}

TEST_CASE("Christoffel-Darboux increment for two spectral parameters") {
  const CoefficientData c = jscat::make_suite_instance(4);
  const Window w = jscat::default_window(c);
  const Complex z1(0.45, 0.15);
  const Complex z2(-0.6, 0.2);
  const OperatorSolution u = starred_plus(c, z1, w);
  const OperatorSolution v = jscat::jost_minus_recursion(c, z2, w);
  const Complex dl = jscat::zhukovsky(z2) - jscat::zhukovsky(z1);
  for (int n = w.lo + 1; n < w.hi - 1; ++n) {
    const Block lhs = jscat::wronskian_at(c, u, v, n + 1) -
                      jscat::wronskian_at(c, u, v, n);
    const Block rhs = dl * (u.at(n) * v.at(n));
    CHECK(block_diff(lhs, rhs) <
          1e-11 * std::max(1.0, jscat::spectral_norm(rhs)));
  }
}

TEST_CASE("pair identities and constancy") {
  const CoefficientData c = jscat::make_suite_instance(6);
  const Window w = jscat::default_window(c);
  const int d = c.dim();
  const Block id = Block::Identity(d, d);

  for (Complex z : {Complex(0.55, 0.2), std::polar(1.0, 1.1)}) {
    const Complex wz = 1.0 / z - z;
    const OperatorSolution up_inv =
        jscat::jost_plus_recursion(c, 1.0 / z, w);
    const OperatorSolution um_inv =
        jscat::jost_minus_recursion(c, 1.0 / z, w);
    const OperatorSolution up = jscat::jost_plus_recursion(c, z, w);
    const OperatorSolution um = jscat::jost_minus_recursion(c, z, w);
    const OperatorSolution sp = starred_plus(c, z, w);
    const OperatorSolution sm = starred_minus(c, z, w);

    // W(U+(conj z)*, U+(1/z)) = +(1/z - z) I, minus species flips the sign.
    const auto wp = jscat::wronskian_constant(c, sp, up_inv);
    const auto wm = jscat::wronskian_constant(c, sm, um_inv);
    CHECK(block_diff(wp.value, Block(wz * id)) < 1e-12 * std::abs(wz));
    CHECK(block_diff(wm.value, Block(-wz * id)) < 1e-12 * std::abs(wz));
    CHECK(wp.variation < 1e-12 * std::max(1.0, std::abs(wz)));

    // Same-species same-z pairings vanish identically.
    const auto dp = jscat::wronskian_constant(c, sp, up);
    const auto dm = jscat::wronskian_constant(c, sm, um);
    CHECK(jscat::spectral_norm(dp.value) < 1e-12);
    CHECK(jscat::spectral_norm(dm.value) < 1e-12);
  }

  SUBCASE("non-solutions are detected") {
    const Complex z(0.5, 0.1);
    const OperatorSolution sp = starred_plus(c, z, w);
    const OperatorSolution other =
        jscat::jost_minus_recursion(c, Complex(0.7, 0.0), w);
    CHECK_THROWS_AS(jscat::wronskian_constant(c, sp, other),
                    jscat::numerical_error);
  }

  SUBCASE("too little window overlap") {
    const CoefficientData f = jscat::free_instance(1);
    const OperatorSolution a =
        jscat::jost_plus_recursion(f, Complex(0.5, 0), Window{-4, 1});
    const OperatorSolution b =
        jscat::jost_minus_recursion(f, Complex(0.5, 0), Window{0, 4});
    CHECK_THROWS_AS(jscat::wronskian_constant(f, a, b),
                    jscat::validation_error);
  }
}

TEST_CASE("connection coefficients: scalar closed form") {
  // Single site B_0 = 1.5: with w = 1/z - z and o = 1.5 / w,
  //   alpha+- = 1 - o,  beta+- = o,
  // and at the reciprocal point w flips sign: alpha(1/z) = 1 + o.
  const CoefficientData c = single_site(1.5);
  const Complex z(0.4, 0.0);
  const double o = 1.5 / 2.1;

  const auto ab = jscat::alpha_beta(c, z);
  CHECK(std::abs(ab.alpha_plus(0, 0) - Complex(1.0 - o, 0)) < 1e-13);
  CHECK(std::abs(ab.beta_plus(0, 0) - Complex(o, 0)) < 1e-13);
  CHECK(std::abs(ab.alpha_minus(0, 0) - Complex(1.0 - o, 0)) < 1e-13);
  CHECK(std::abs(ab.beta_minus(0, 0) - Complex(o, 0)) < 1e-13);

  const auto ab_inv = jscat::alpha_beta(c, 1.0 / z);
  CHECK(std::abs(ab_inv.alpha_plus(0, 0) - Complex(1.0 + o, 0)) < 1e-13);
  CHECK(std::abs(ab_inv.beta_plus(0, 0) - Complex(-o, 0)) < 1e-13);

  SUBCASE("free operator gives the identity connection") {
    const CoefficientData f = jscat::free_instance(2);
    for (Complex zz : {Complex(0.3, 0.0), Complex(0.2, -0.5)}) {
      const auto abf = jscat::alpha_beta(f, zz);
      CHECK(block_diff(abf.alpha_plus, Block::Identity(2, 2)) < 1e-13);
      CHECK(jscat::spectral_norm(abf.beta_plus) < 1e-13);
      CHECK(block_diff(abf.alpha_minus, Block::Identity(2, 2)) < 1e-13);
      CHECK(jscat::spectral_norm(abf.beta_minus) < 1e-13);
    }
  }

  SUBCASE("rejected points") {
    CHECK_THROWS_AS(jscat::alpha_beta(c, Complex(0, 0)),
                    jscat::validation_error);
    CHECK_THROWS_AS(jscat::alpha_beta(c, Complex(1, 0)),
                    jscat::validation_error);
    CHECK_THROWS_AS(jscat::alpha_beta(c, Complex(-1, 0)),
                    jscat::validation_error);
  }
}

TEST_CASE("connection coefficients: expansion, unitarity, adjoints") {
  const CoefficientData c = jscat::make_suite_instance(9);
  const Window w = jscat::default_window(c);
  const int d = c.dim();
  const Block id = Block::Identity(d, d);

  SUBCASE("each family expands in the other") {
    const Complex z(0.52, 0.23);
    const auto ab = jscat::alpha_beta(c, z);
    const OperatorSolution up = jscat::jost_plus_recursion(c, z, w);
    const OperatorSolution um = jscat::jost_minus_recursion(c, z, w);
    const OperatorSolution up_inv = jscat::jost_plus_recursion(c, 1.0 / z, w);
    const OperatorSolution um_inv = jscat::jost_minus_recursion(c, 1.0 / z, w);
    for (int n = w.lo; n <= w.hi; ++n) {
      const Block lhs_m = um.at(n);
      const Block rhs_m = up.at(n) * ab.beta_plus + up_inv.at(n) * ab.alpha_plus;
      CHECK(block_diff(lhs_m, rhs_m) <
            1e-10 * std::max(1.0, jscat::spectral_norm(lhs_m)));
      const Block lhs_p = up.at(n);
      const Block rhs_p = um.at(n) * ab.beta_minus + um_inv.at(n) * ab.alpha_minus;
      CHECK(block_diff(lhs_p, rhs_p) <
            1e-10 * std::max(1.0, jscat::spectral_norm(lhs_p)));
    }
  }

  SUBCASE("unitarity relation on the circle") {
    for (double theta : {0.4, 1.3, 2.8}) {
      const auto ab = jscat::alpha_beta(c, std::polar(1.0, theta));
      const Block gp = ab.alpha_plus.adjoint() * ab.alpha_plus -
                       ab.beta_plus.adjoint() * ab.beta_plus;
      const Block gm = ab.alpha_minus.adjoint() * ab.alpha_minus -
                       ab.beta_minus.adjoint() * ab.beta_minus;
      CHECK(block_diff(gp, id) < 1e-11);
      CHECK(block_diff(gm, id) < 1e-11);
    }
  }

  SUBCASE("adjoint relations at a generic point") {
    const Complex z(0.47, -0.33);
    const auto ab = jscat::alpha_beta(c, z);
    const auto ab_c = jscat::alpha_beta(c, std::conj(z));
    const auto ab_ci = jscat::alpha_beta(c, 1.0 / std::conj(z));
    CHECK(block_diff(ab.alpha_plus.adjoint(), ab_c.alpha_minus) < 1e-10);
    CHECK(block_diff(ab.alpha_minus.adjoint(), ab_c.alpha_plus) < 1e-10);
    CHECK(block_diff(ab.beta_plus.adjoint(), Block(-ab_ci.beta_minus)) < 1e-10);
    CHECK(block_diff(ab.beta_minus.adjoint(), Block(-ab_ci.beta_plus)) < 1e-10);
  }
}

TEST_CASE("fundamental pairs recover expansion coefficients") {
  const CoefficientData c = jscat::make_suite_instance(10);
  const Window w = jscat::default_window(c);
  const int d = c.dim();
  const Complex z(0.6, 0.15);
  const Complex wz = 1.0 / z - z;

  SUBCASE("U- in the plus pair reproduces alpha+/beta+") {
    const auto ab = jscat::alpha_beta(c, z);
    const OperatorSolution um = jscat::jost_minus_recursion(c, z, w);
    const auto fc = jscat::fundamental_solve(c, z, um, jscat::BasisPair::plus_pair);
    CHECK(block_diff(fc.p, ab.beta_plus) < 1e-10);
    CHECK(block_diff(fc.q, ab.alpha_plus) < 1e-10);
    CHECK(block_diff(fc.wa, Block(-wz * Block::Identity(d, d))) < 1e-11);
    CHECK(block_diff(fc.wb, Block(wz * Block::Identity(d, d))) < 1e-11);
  }

  SUBCASE("U+ in the minus pair reproduces alpha-/beta-") {
    const auto ab = jscat::alpha_beta(c, z);
    const OperatorSolution up = jscat::jost_plus_recursion(c, z, w);
    const auto fc = jscat::fundamental_solve(c, z, up, jscat::BasisPair::minus_pair);
    CHECK(block_diff(fc.p, ab.beta_minus) < 1e-10);
    CHECK(block_diff(fc.q, ab.alpha_minus) < 1e-10);
  }

  SUBCASE("synthetic combinations are recovered exactly") {
    std::mt19937 rng(77);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    Block x(d, d), y(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        x(i, j) = Complex(uni(rng), uni(rng));
        y(i, j) = Complex(uni(rng), uni(rng));
      }
    const OperatorSolution up = jscat::jost_plus_recursion(c, z, w);
    const OperatorSolution up_inv = jscat::jost_plus_recursion(c, 1.0 / z, w);
    OperatorSolution v;
    v.z = z;
    v.w_lo = w.lo;
    v.w_hi = w.hi;
    for (int n = w.lo; n <= w.hi; ++n)
      v.blocks.push_back(up.at(n) * x + up_inv.at(n) * y);
    const auto fc = jscat::fundamental_solve(c, z, v, jscat::BasisPair::plus_pair);
    CHECK(block_diff(fc.p, x) < 1e-10);
    CHECK(block_diff(fc.q, y) < 1e-10);
  }
}

TEST_CASE("two-site solution-to-coefficient operator") {
  const CoefficientData c = jscat::make_suite_instance(15);
  const Complex z(0.35, 0.4);
  const int d = c.dim();

  SUBCASE("all five pairs invert on both sides of the support") {
    using jscat::BasisPair;
    for (BasisPair basis :
         {BasisPair::plus_pair, BasisPair::minus_pair,
          BasisPair::plus_minus_pair, BasisPair::mixed_plus,
          BasisPair::mixed_minus}) {
      for (int j : {c.support_min() - 1, 0, c.support_max() + 1}) {
        const auto zy = jscat::z_operator(c, z, j, basis);
        CHECK(block_diff(Block(zy.z_mat * zy.y_mat),
                         Block::Identity(2 * d, 2 * d)) < 1e-9);
      }
    }
  }

  SUBCASE("y matrix collects the basis blocks") {
    const Window w = jscat::default_window(c);
    const OperatorSolution up = jscat::jost_plus_recursion(c, z, w);
    const auto zy =
        jscat::z_operator(c, z, 0, jscat::BasisPair::plus_pair);
    CHECK(block_diff(Block(zy.y_mat.topLeftCorner(d, d)), up.at(0)) < 1e-12);
    CHECK(block_diff(Block(zy.y_mat.bottomLeftCorner(d, d)), up.at(1)) < 1e-12);
  }

  SUBCASE("the mixed same-z pair is singular exactly at an eigenvalue") {
    const CoefficientData b = single_site(1.5);
    // z = 0.5 solves 1/z - z = 1.5: alpha vanishes and the pair degenerates.
    CHECK_THROWS_AS(jscat::z_operator(b, Complex(0.5, 0), 0,
                                      jscat::BasisPair::plus_minus_pair),
                    jscat::numerical_error);
    const auto zy = jscat::z_operator(b, Complex(0.45, 0), 0,
                                      jscat::BasisPair::plus_minus_pair);
    CHECK(block_diff(Block(zy.z_mat * zy.y_mat), Block::Identity(2, 2)) <
          1e-9);
  }
}
