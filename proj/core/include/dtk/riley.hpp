#pragma once

// The Riley polynomial of J(2m+1, 2n) in (s, T), T = t + 1/t, the solution
// brackets that isolate its distinguished real branches, and the Alexander
// polynomial with its root classification (the s = 0 seeds).

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "dtk/polykit.hpp"

namespace dtk::riley {

struct KnotParams {
  int m = 1;
  int n = 1;

  /// Throws InvalidKnot for m in {0, -1} or n = 0 (torus knots / unknot).
  static KnotParams make(int m, int n);
  friend bool operator==(const KnotParams&, const KnotParams&) = default;
};

void validate(const KnotParams& k);

enum class BranchCase { elliptic, hyperbolic };

char const* case_name(BranchCase c) noexcept;

/// elliptic: m > 0 and n >= 1, or m < -1 and n > 1. hyperbolic: m < -1 and n > 0.
bool case_permitted(const KnotParams& k, BranchCase c) noexcept;

/// Exact bivariate polynomial: sum_j coeff(j)(s) * T^j.
class RileyPolynomial {
 public:
  RileyPolynomial() = default;
  explicit RileyPolynomial(std::vector<poly::IntPolynomial> t_coeffs);

  static RileyPolynomial from_s(const poly::IntPolynomial& p);
  static RileyPolynomial T_var();

  int degree_T() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  /// Coefficient of T^j as a polynomial in s.
  poly::IntPolynomial coeff(int j) const;
  /// Integer coefficient of s^i T^j.
  mpz_class coeff(int i, int j) const;
  const std::vector<poly::IntPolynomial>& t_coefficients() const noexcept { return coeffs_; }

  double eval(double s, double T) const;

  RileyPolynomial& operator+=(const RileyPolynomial& o);
  RileyPolynomial& operator-=(const RileyPolynomial& o);
  RileyPolynomial& operator*=(const RileyPolynomial& o);
  friend RileyPolynomial operator+(RileyPolynomial a, const RileyPolynomial& b) { return a += b; }
  friend RileyPolynomial operator-(RileyPolynomial a, const RileyPolynomial& b) { return a -= b; }
  friend RileyPolynomial operator*(RileyPolynomial a, const RileyPolynomial& b) { return a *= b; }
  RileyPolynomial operator-() const;
  friend bool operator==(const RileyPolynomial&, const RileyPolynomial&) = default;

  /// Expanded form "c*s^i*T^j" ordered by T-degree then s-degree.
  std::string to_string() const;

 private:
  void normalize();
  std::vector<poly::IntPolynomial> coeffs_;
};

/// phi(s, T) = (tau_{n+1} - tau_n)(tau) + (T - s - 2) f_m g_{m-1} tau_n(tau),
/// tau = (T - s - 2) f_m^2 + 2, expanded exactly. tau_{-k} = -tau_k for n < 0.
RileyPolynomial riley_poly(const KnotParams& k);

/// Same polynomial, evaluated through the three-term recurrences.
double riley_eval(const KnotParams& k, double s, double T);

/// Smallest positive root of phi(s, 2): scan in steps of 1e-3 over (0, 64],
/// then bisect to 1e-12. Requires the elliptic case; NoRootFound otherwise.
double find_s0(const KnotParams& k);

/// All sign-change roots of phi(s, 2) in (0, s_max], ascending.
std::vector<double> positive_roots_at_T2(const KnotParams& k, double s_max = 64.0);

struct BracketConstants {
  double lower = 0.0;  // C1 (elliptic) or C3 (hyperbolic)
  double upper = 0.0;  // C2 (elliptic) or C4 (hyperbolic)
};

/// elliptic, n > 1: C1 = 2 - 2cos(pi/(2n+1)), C2 = 2 - 2cos(3pi/(2n+1)).
/// elliptic, n = 1: bounds on f_m/g_m over [0, s0], widened by 0.1%.
/// hyperbolic: C3 = 1/(2n m'), C4 = 1 for m = -2 and
/// max(1, 2/(sqrt(-1/r) - 1) + 1) otherwise, with m' = -m and r the largest
/// root of f_m.
BracketConstants bracket_constants(const KnotParams& k, BranchCase c);

struct BranchBracket {
  double s = 0.0;
  double T_low = 0.0;
  double T_high = 0.0;
  BranchCase branch = BranchCase::elliptic;

  bool contains(double T) const noexcept { return T_low <= T && T <= T_high; }
};

/// elliptic: [s+2 - C2/f_m^2, s+2 - C1/f_m^2]; hyperbolic: [s+2 + C3/f_m, s+2 + C4/f_m].
/// Preconditions: elliptic s > 0 (and s <= s0 when n = 1); hyperbolic
/// r_{f_m} < s < 0. Throws OutOfRange otherwise, CaseNotPermitted for a case
/// the parameters do not admit.
BranchBracket branch_bracket(const KnotParams& k, double s, BranchCase c);
/// The same bracket from precomputed constants, without precondition checks.
BranchBracket bracket_at(const KnotParams& k, double s, BranchCase c, const BracketConstants& C);

/// Where the elliptic bracket branch reaches T = 2: the first positive root of
/// phi(s, 2) at which T = 2 lies inside the bracket. Equals find_s0 for n = 1.
double parabolic_endpoint(const KnotParams& k);

/// Symmetric Laurent polynomial c_0 + sum_{i>=1} c_i (a^i + a^-i).
struct LaurentSymmetric {
  std::vector<mpz_class> c;

  int half_degree() const noexcept { return static_cast<int>(c.size()) - 1; }
  mpz_class at_one() const;
  double eval(double a) const;
  /// Coefficient of a^i for any integer i.
  mpz_class coeff(int i) const;
  /// Same polynomial in u = a + 1/a.
  poly::IntPolynomial as_u_polynomial() const;
  /// "c_N*a^N + ... + c_0 + ... + c_N*a^-N"
  std::string to_string() const;
  friend bool operator==(const LaurentSymmetric&, const LaurentSymmetric&) = default;
};

/// Alexander polynomial of the torus knot T(2, q), q odd (sign of q ignored).
LaurentSymmetric torus_alexander(int q);

/// (m+1) Delta_{T(2,2n+1)} - m Delta_{T(2,2n-1)}, leading coefficient positive.
LaurentSymmetric alexander_poly(const KnotParams& k);

struct AlexanderRoots {
  std::vector<double> unit_u;         // u = a + 1/a in (-2, 2)
  std::vector<double> unit_angles;    // theta = arccos(u/2) in (0, pi)
  std::vector<double> positive_u;     // u > 2
  std::vector<double> positive_real;  // a > 1 (the reciprocal 1/a is also a root)
  std::vector<double> negative_u;     // u < -2 (negative real roots)
  double residual_bound = 0.0;
};

/// Real u-roots of the Alexander polynomial, classified. Throws
/// ClassificationMismatch when a root type guaranteed for the parameters is
/// absent: a unit root for m != -1, n > 1 or m > 0, n = 1, a positive real root
/// for m < -1, n > 0 (parameters with n < 0 are first mirrored).
AlexanderRoots alexander_roots(const KnotParams& k);

/// Seed value of T at s = 0 for the bracket branch of the given case: the
/// Alexander u-root inside the s = 0 bracket. SeedFailure if there is none.
double alexander_seed(const KnotParams& k, BranchCase c);

}  // namespace dtk::riley
