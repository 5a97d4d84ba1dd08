#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "dtk/error.hpp"
#include "dtk/polykit.hpp"

using namespace dtk;
using poly::IntPolynomial;
using poly::Var;

namespace {

mpz_class binomial(long n, long k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

// Binomial-sum closed forms, independent of the recurrences.
IntPolynomial f_closed(int m) {
  std::vector<mpz_class> c;
  for (int i = 0; i <= m; ++i) c.push_back(binomial(m + i, m - i));
  return IntPolynomial(Var::s, c);
}

IntPolynomial g_closed(int m) {
  std::vector<mpz_class> c;
  for (int i = 0; i <= m; ++i) c.push_back(binomial(m + 1 + i, m - i));
  return IntPolynomial(Var::s, c);
}

IntPolynomial s_var() { return IntPolynomial::variable(Var::s); }
IntPolynomial one() { return IntPolynomial(Var::s, {1}); }

}  // namespace

TEST(Polykit, SmallFamilies) {
  EXPECT_EQ(poly::f_poly(0), one());
  EXPECT_EQ(poly::f_poly(1), IntPolynomial(Var::s, {1, 1}));
  EXPECT_EQ(poly::f_poly(-1), one());
  EXPECT_EQ(poly::f_poly(2), IntPolynomial(Var::s, {1, 3, 1}));
  EXPECT_EQ(poly::g_poly(1), IntPolynomial(Var::s, {2, 1}));
  EXPECT_EQ(poly::g_poly(2), IntPolynomial(Var::s, {3, 4, 1}));
  EXPECT_TRUE(poly::g_poly(-1).is_zero());
  EXPECT_EQ(poly::g_poly(-2), IntPolynomial(Var::s, {-1}));
  EXPECT_EQ(poly::g_poly(3), IntPolynomial(Var::s, {4, 10, 6, 1}));
}

TEST(Polykit, NegativeIndexConventions) {
  for (int m = 1; m <= 8; ++m) {
    EXPECT_EQ(poly::f_poly(-m), poly::f_poly(m - 1)) << m;
    if (m >= 2) {
      EXPECT_EQ(poly::g_poly(-m), -poly::g_poly(m - 2)) << m;
    }
  }
}

TEST(Polykit, ClosedFormsMatchRecurrence) {
  for (int m = 0; m <= 8; ++m) {
    EXPECT_EQ(poly::f_poly(m), f_closed(m)) << m;
    EXPECT_EQ(poly::g_poly(m), g_closed(m)) << m;
  }
}

TEST(Polykit, ExactIdentities) {
  const IntPolynomial s = s_var();
  for (int m = -10; m <= 10; ++m) {
    const auto f = poly::f_poly(m), g = poly::g_poly(m), gp = poly::g_poly(m - 1);
    EXPECT_EQ(f + gp, g) << m;
    EXPECT_EQ(f + s * g, poly::f_poly(m + 1)) << m;
    EXPECT_EQ(f * f, s * g * gp + one()) << m;
  }
}

TEST(Polykit, TauPolynomials) {
  EXPECT_TRUE(poly::tau_poly(0).is_zero());
  EXPECT_EQ(poly::tau_poly(1), IntPolynomial(Var::tau, {1}));
  EXPECT_EQ(poly::tau_poly(3), IntPolynomial(Var::tau, {-1, 0, 1}));
  EXPECT_THROW(poly::tau_poly(-1), Error);
  // (z^k - z^-k) / (z - z^-1) at tau = z + 1/z, z = e^{i theta}: sin(k theta) / sin(theta).
  const double theta = 0.7;
  for (int k = 1; k <= 12; ++k) {
    const double expect = std::sin(k * theta) / std::sin(theta);
    EXPECT_NEAR(poly::tau_poly(k).eval(2 * std::cos(theta)), expect, 1e-11) << k;
  }
}

TEST(Polykit, Arithmetic) {
  const IntPolynomial p(Var::s, {1, -2, 3}), q(Var::s, {0, 1});
  EXPECT_EQ(p * q, IntPolynomial(Var::s, {0, 1, -2, 3}));
  EXPECT_TRUE((p - p).is_zero());
  EXPECT_EQ((p - p).degree(), -1);
  EXPECT_EQ(p.derivative(), IntPolynomial(Var::s, {-2, 6}));
  EXPECT_EQ(p.eval(mpz_class(2)), 9);
  EXPECT_DOUBLE_EQ(p.eval(0.5), 0.75);
  EXPECT_EQ(p.leading(), 3);
  EXPECT_EQ(p.coeff(7), 0);
  EXPECT_THROW(p + IntPolynomial(Var::T, {1}), Error);
  EXPECT_EQ(IntPolynomial(Var::s, {-3, 0, 1}).to_string(), "-3 + 1*s^2");
}

TEST(Polykit, BigCoefficientsStayExact) {
  const auto f = poly::f_poly(60);
  EXPECT_EQ(f.coefficients().front(), 1);
  EXPECT_EQ(f.coeff(1), binomial(61, 59));
  EXPECT_EQ(f, f_closed(60));
}

TEST(Polykit, GRootsClosedForm) {
  EXPECT_EQ(poly::g_roots_closed(1).roots.size(), 1u);
  EXPECT_NEAR(poly::g_roots_closed(1).roots[0], -2.0, 1e-14);
  const auto r2 = poly::g_roots_closed(2).roots;
  ASSERT_EQ(r2.size(), 2u);
  EXPECT_NEAR(r2[0], -3.0, 1e-14);
  EXPECT_NEAR(r2[1], -1.0, 1e-14);
  const auto r3 = poly::g_roots_closed(3);
  ASSERT_EQ(r3.roots.size(), 3u);
  EXPECT_NEAR(r3.roots[0], -2 - std::sqrt(2.0), 1e-13);
  EXPECT_NEAR(r3.roots[1], -2.0, 1e-13);
  EXPECT_NEAR(r3.roots[2], -2 + std::sqrt(2.0), 1e-13);
  for (int m = 1; m <= 12; ++m) {
    const auto r = poly::g_roots_closed(m);
    const auto g = poly::g_poly(m);
    for (double x : r.roots) {
      // Expanded evaluation loses up to eps * sum |c_i| |x|^i to cancellation.
      double cond = 0.0;
      for (int i = 0; i <= g.degree(); ++i) cond += std::abs(g.coeff(i).get_d()) * std::pow(std::abs(x), i);
      EXPECT_LE(std::abs(g.eval(x)), r.residual_bound + 64 * 1e-16 * cond) << m;
    }
  }
}

TEST(Polykit, RootsOfF) {
  const auto r1 = poly::roots_f(1).roots;
  ASSERT_EQ(r1.size(), 1u);
  EXPECT_NEAR(r1[0], -1.0, 1e-13);
  const auto r2 = poly::roots_f(2).roots;
  ASSERT_EQ(r2.size(), 2u);
  EXPECT_NEAR(r2[0], (-3 - std::sqrt(5.0)) / 2, 1e-12);
  EXPECT_NEAR(r2[1], (-3 + std::sqrt(5.0)) / 2, 1e-12);
  EXPECT_NEAR(poly::largest_root_f(2), -0.3819660112501051, 1e-12);
  EXPECT_NEAR(poly::largest_root_f(-2), -1.0, 1e-12);  // f_{-2} = f_1
  for (int m = 1; m <= 15; ++m) {
    const auto r = poly::roots_f(m);
    ASSERT_EQ(static_cast<int>(r.roots.size()), m);
    // f_m(s) = cos((2m+1)θ/2)/cos(θ/2) at s = 2cosθ - 2: roots at θ = (2k-1)π/(2m+1).
    for (int k = 1; k <= m; ++k) {
      const double expect = 2 * std::cos((2 * k - 1) * std::numbers::pi / (2 * m + 1)) - 2;
      EXPECT_NEAR(r.roots[m - k], expect, 1e-11) << "m=" << m << " k=" << k;
    }
    for (std::size_t i = 1; i < r.roots.size(); ++i) EXPECT_LT(r.roots[i - 1], r.roots[i]);
  }
}

TEST(Polykit, RealRootIsolation) {
  // (s - 1)(s + 2)(s - 3.5)*2 = 2s^3 - 5s^2 - 11s + 14
  const IntPolynomial p(Var::s, {14, -11, -5, 2});
  const auto r = poly::real_roots(p).roots;
  ASSERT_EQ(r.size(), 3u);
  EXPECT_NEAR(r[0], -2.0, 1e-12);
  EXPECT_NEAR(r[1], 1.0, 1e-12);
  EXPECT_NEAR(r[2], 3.5, 1e-12);
  EXPECT_TRUE(poly::real_roots(IntPolynomial(Var::s, {1, 0, 1})).roots.empty());
}
