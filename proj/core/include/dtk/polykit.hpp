#pragma once

// Exact one-variable integer polynomials and the recurrent families f_m, g_m,
// tau_k, together with real root isolation.

#include <gmpxx.h>

#include <complex>
#include <initializer_list>
#include <string>
#include <vector>

namespace dtk::poly {

enum class Var { s, tau, a, u, T };

char const* var_name(Var v) noexcept;

/// Integer polynomial, coefficients stored lowest degree first. The zero
/// polynomial has an empty coefficient list; otherwise the highest stored
/// coefficient is nonzero.
class IntPolynomial {
 public:
  explicit IntPolynomial(Var var = Var::s) : var_(var) {}
  IntPolynomial(Var var, std::vector<mpz_class> coeffs);
  IntPolynomial(Var var, std::initializer_list<long> coeffs);

  static IntPolynomial constant(const mpz_class& c, Var var = Var::s);
  static IntPolynomial variable(Var var);

  Var var() const noexcept { return var_; }
  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  const std::vector<mpz_class>& coefficients() const noexcept { return coeffs_; }
  /// Coefficient of var^i; zero beyond the degree.
  mpz_class coeff(int i) const;
  const mpz_class& leading() const;

  IntPolynomial derivative() const;

  double eval(double x) const;
  long double eval(long double x) const;
  std::complex<double> eval(std::complex<double> x) const;
  mpz_class eval(const mpz_class& x) const;

  IntPolynomial& operator+=(const IntPolynomial& o);
  IntPolynomial& operator-=(const IntPolynomial& o);
  IntPolynomial& operator*=(const IntPolynomial& o);
  IntPolynomial& operator*=(const mpz_class& c);

  friend IntPolynomial operator+(IntPolynomial a, const IntPolynomial& b) { return a += b; }
  friend IntPolynomial operator-(IntPolynomial a, const IntPolynomial& b) { return a -= b; }
  friend IntPolynomial operator*(IntPolynomial a, const IntPolynomial& b) { return a *= b; }
  friend IntPolynomial operator*(IntPolynomial a, const mpz_class& c) { return a *= c; }
  friend IntPolynomial operator*(const mpz_class& c, IntPolynomial a) { return a *= c; }
  IntPolynomial operator-() const;

  friend bool operator==(const IntPolynomial& a, const IntPolynomial& b) {
    return a.var_ == b.var_ && a.coeffs_ == b.coeffs_;
  }

  /// "c0 + c1*s + c2*s^2 ..." with exact integers, zero terms omitted.
  std::string to_string() const;

 private:
  void normalize();
  void require_same_var(const IntPolynomial& o) const;

  Var var_;
  std::vector<mpz_class> coeffs_;
};

/// f_m in s: f_0 = 1, f_1 = s + 1, f_{m+2} = (s+2) f_{m+1} - f_m; f_{-m} = f_{m-1}.
IntPolynomial f_poly(int m);
/// g_m in s: g_0 = 1, g_1 = s + 2, same recurrence; g_{-1} = 0, g_{-m} = -g_{m-2}.
IntPolynomial g_poly(int m);
/// tau_k in tau: tau_0 = 0, tau_1 = 1, tau_{k+2} = tau*tau_{k+1} - tau_k. k >= 0.
IntPolynomial tau_poly(int k);

struct RootList {
  std::vector<double> roots;  // strictly increasing, all simple
  double residual_bound = 0.0;
};

/// The m roots 2cos(k*pi/(m+1)) - 2 of g_m, ascending. m >= 1.
RootList g_roots_closed(int m);

/// The m simple negative roots of f_m, ascending, bracketed by the roots of
/// g_{m-1} and refined to |f_m(root)| < 1e-12. The last entry is the largest
/// root r_{f_m}. m >= 1. Throws BracketFailure if an expected sign change is
/// missing.
RootList roots_f(int m);

/// Largest root of f_m for m >= 1, or of f_{-m-1} when m <= -2 (the root that
/// bounds the hyperbolic parameter interval).
double largest_root_f(int m);

/// All real roots of odd multiplicity of a nonzero polynomial, located by
/// recursive isolation between the real roots of the derivative and refined by
/// bisection on the undeflated polynomial to width `tol`.
RootList real_roots(const IntPolynomial& p, double tol = 1e-13);

}  // namespace dtk::poly
