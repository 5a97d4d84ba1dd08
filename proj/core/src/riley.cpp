#include "dtk/riley.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "dtk/error.hpp"
#include "dtk/recurrences.hpp"

namespace dtk::riley {

using poly::IntPolynomial;
using poly::Var;

KnotParams KnotParams::make(int m, int n) {
  KnotParams k{m, n};
  validate(k);
  return k;
}

void validate(const KnotParams& k) {
  if (k.m == 0 || k.m == -1)
    throw Error(ErrorCode::InvalidKnot, "m = " + std::to_string(k.m) +
                                            " gives a torus knot (m must not be 0 or -1)");
  if (k.n == 0) throw Error(ErrorCode::InvalidKnot, "n = 0 gives a torus knot (n must be nonzero)");
}

char const* case_name(BranchCase c) noexcept {
  return c == BranchCase::elliptic ? "elliptic" : "hyperbolic";
}

bool case_permitted(const KnotParams& k, BranchCase c) noexcept {
  if (c == BranchCase::elliptic) return (k.m > 0 && k.n >= 1) || (k.m < -1 && k.n > 1);
  return k.m < -1 && k.n > 0;
}

namespace {

void require_case(const KnotParams& k, BranchCase c) {
  validate(k);
  if (!case_permitted(k, c))
    throw Error(ErrorCode::CaseNotPermitted,
                std::string("case not permitted: no ") + case_name(c) + " branch for (m, n) = (" +
                    std::to_string(k.m) + ", " + std::to_string(k.n) + ")");
}

}  // namespace

// ---------------------------------------------------------------------------
// RileyPolynomial

RileyPolynomial::RileyPolynomial(std::vector<IntPolynomial> t_coeffs) : coeffs_(std::move(t_coeffs)) {
  normalize();
}

RileyPolynomial RileyPolynomial::from_s(const IntPolynomial& p) {
  return RileyPolynomial(std::vector<IntPolynomial>{p});
}

RileyPolynomial RileyPolynomial::T_var() {
  return RileyPolynomial({IntPolynomial(Var::s), IntPolynomial(Var::s, {1})});
}

void RileyPolynomial::normalize() {
  for (auto& c : coeffs_)
    if (c.is_zero()) c = IntPolynomial(Var::s);
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

IntPolynomial RileyPolynomial::coeff(int j) const {
  if (j < 0 || j > degree_T()) return IntPolynomial(Var::s);
  return coeffs_[j];
}

mpz_class RileyPolynomial::coeff(int i, int j) const { return coeff(j).coeff(i); }

double RileyPolynomial::eval(double s, double T) const {
  long double acc = 0.0L;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
    acc = acc * T + it->eval(static_cast<long double>(s));
  return static_cast<double>(acc);
}

RileyPolynomial& RileyPolynomial::operator+=(const RileyPolynomial& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), IntPolynomial(Var::s));
  for (std::size_t j = 0; j < o.coeffs_.size(); ++j) coeffs_[j] += o.coeffs_[j];
  normalize();
  return *this;
}

RileyPolynomial& RileyPolynomial::operator-=(const RileyPolynomial& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), IntPolynomial(Var::s));
  for (std::size_t j = 0; j < o.coeffs_.size(); ++j) coeffs_[j] -= o.coeffs_[j];
  normalize();
  return *this;
}

RileyPolynomial& RileyPolynomial::operator*=(const RileyPolynomial& o) {
  if (is_zero() || o.is_zero()) {
    coeffs_.clear();
    return *this;
  }
  std::vector<IntPolynomial> out(coeffs_.size() + o.coeffs_.size() - 1, IntPolynomial(Var::s));
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j) out[i + j] += coeffs_[i] * o.coeffs_[j];
  coeffs_ = std::move(out);
  normalize();
  return *this;
}

RileyPolynomial RileyPolynomial::operator-() const {
  RileyPolynomial r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

std::string RileyPolynomial::to_string() const {
  if (coeffs_.empty()) return "0";
  std::string out;
  for (std::size_t j = 0; j < coeffs_.size(); ++j) {
    const auto& cs = coeffs_[j].coefficients();
    for (std::size_t i = 0; i < cs.size(); ++i) {
      const mpz_class& c = cs[i];
      if (c == 0) continue;
      const mpz_class mag = c < 0 ? mpz_class(-c) : c;
      std::string term = mag.get_str();
      if (i >= 1) term += "*s" + (i >= 2 ? "^" + std::to_string(i) : std::string());
      if (j >= 1) term += "*T" + (j >= 2 ? "^" + std::to_string(j) : std::string());
      if (out.empty())
        out = (c < 0 ? "-" : "") + term;
      else
        out += (c < 0 ? " - " : " + ") + term;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Riley polynomial

RileyPolynomial riley_poly(const KnotParams& k) {
  validate(k);
  const RileyPolynomial f = RileyPolynomial::from_s(poly::f_poly(k.m));
  const RileyPolynomial gp = RileyPolynomial::from_s(poly::g_poly(k.m - 1));
  const RileyPolynomial D = RileyPolynomial::T_var() - RileyPolynomial::from_s(IntPolynomial(Var::s, {2, 1}));
  const RileyPolynomial tau = D * f * f + RileyPolynomial::from_s(IntPolynomial(Var::s, {2}));

  // tau_k(tau) by Horner substitution of the exact tau_k coefficients.
  const auto compose = [&tau](int idx) {
    const bool neg = idx < 0;
    const IntPolynomial tk = poly::tau_poly(neg ? -idx : idx);
    RileyPolynomial acc;
    const auto& cs = tk.coefficients();
    for (auto it = cs.rbegin(); it != cs.rend(); ++it)
      acc = acc * tau + RileyPolynomial::from_s(IntPolynomial::constant(*it));
    return neg ? -acc : acc;
  };

  const RileyPolynomial tn = compose(k.n);
  const RileyPolynomial tn1 = compose(k.n + 1);
  return (tn1 - tn) + D * f * gp * tn;
}

double riley_eval(const KnotParams& k, double s, double T) {
  return rec::riley_value<double>(k.m, k.n, s, T);
}

namespace {

template <class Fn>
double bisect_root(Fn&& fn, double lo, double hi, double width) {
  double flo = fn(lo);
  while (hi - lo > width) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = fn(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

constexpr double kScanStep = 1e-3;

}  // namespace

std::vector<double> positive_roots_at_T2(const KnotParams& k, double s_max) {
  validate(k);
  const auto phi = [&k](double s) { return riley_eval(k, s, 2.0); };
  std::vector<double> roots;
  double prev_s = 0.0;
  double prev_v = phi(0.0);
  const long steps = std::lround(s_max / kScanStep);
  for (long j = 1; j <= steps; ++j) {
    const double s = j * kScanStep;
    const double v = phi(s);
    if (v == 0.0) {
      roots.push_back(s);
    } else if (prev_v != 0.0 && (v < 0) != (prev_v < 0)) {
      roots.push_back(bisect_root(phi, prev_s, s, 1e-12));
    }
    prev_s = s;
    prev_v = v;
  }
  return roots;
}

double find_s0(const KnotParams& k) {
  require_case(k, BranchCase::elliptic);
  const auto phi = [&k](double s) { return riley_eval(k, s, 2.0); };
  double prev_s = 0.0;
  double prev_v = phi(0.0);
  const long steps = std::lround(64.0 / kScanStep);
  for (long j = 1; j <= steps; ++j) {
    const double s = j * kScanStep;
    const double v = phi(s);
    if (v == 0.0) return s;
    if ((v < 0) != (prev_v < 0)) return bisect_root(phi, prev_s, s, 1e-12);
    prev_s = s;
    prev_v = v;
  }
  throw NumericalError(ErrorCode::NoRootFound, "phi(s, 2) has no sign change in (0, 64]", 64.0);
}

BracketConstants bracket_constants(const KnotParams& k, BranchCase c) {
  require_case(k, c);
  const double pi = std::numbers::pi;
  if (c == BranchCase::elliptic) {
    if (k.n > 1) {
      const double q = 2.0 * k.n + 1.0;
      return {2.0 - 2.0 * std::cos(pi / q), 2.0 - 2.0 * std::cos(3.0 * pi / q)};
    }
    // n = 1: phi = (T - s - 2) f_m g_m + 1, so the root is T - s - 2 = -(f/g)/f^2.
    const double s0 = find_s0(k);
    double lo = 1.0, hi = 0.0;
    constexpr int kSamples = 1024;
    for (int i = 0; i <= kSamples; ++i) {
      const double s = s0 * i / kSamples;
      const double r = rec::f_value<double>(k.m, s) / rec::g_value<double>(k.m, s);
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
    return {0.999 * lo, std::min(1.0, 1.001 * hi)};
  }
  if (k.n == 1) {
    // n = 1: T - s - 2 = (-1/g_m) / f_m exactly; bound -1/g_m over [r_f, 0].
    const double rf = poly::largest_root_f(k.m);
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    constexpr int kSamples = 1024;
    for (int i = 0; i <= kSamples; ++i) {
      const double r = -1.0 / rec::g_value<double>(k.m, rf * i / kSamples);
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
    return {0.999 * lo, 1.001 * hi};
  }
  const int mp = -k.m;
  const double C3 = 1.0 / (2.0 * k.n * mp);
  if (k.m == -2) return {C3, 1.0};
  const double r = poly::largest_root_f(k.m);
  const double q = std::sqrt(1.0 / -r);
  return {C3, std::max(1.0, 2.0 / (q - 1.0) + 1.0)};
}

BranchBracket bracket_at(const KnotParams& k, double s, BranchCase c, const BracketConstants& C) {
  const double f = rec::f_value<double>(k.m, s);
  if (c == BranchCase::elliptic) {
    const double f2 = f * f;
    return {s, s + 2.0 - C.upper / f2, s + 2.0 - C.lower / f2, c};
  }
  return {s, s + 2.0 + C.lower / f, s + 2.0 + C.upper / f, c};
}

BranchBracket branch_bracket(const KnotParams& k, double s, BranchCase c) {
  require_case(k, c);
  if (c == BranchCase::elliptic) {
    if (!(s > 0.0))
      throw NumericalError(ErrorCode::OutOfRange, "elliptic bracket requires s > 0", s);
    if (k.n == 1) {
      const double s0 = find_s0(k);
      if (s > s0 * (1.0 + 1e-9))
        throw NumericalError(ErrorCode::OutOfRange, "elliptic bracket (n = 1) requires s <= s0", s);
    }
  } else {
    const double r = poly::largest_root_f(k.m);
    if (!(s > r && s < 0.0))
      throw NumericalError(ErrorCode::OutOfRange, "hyperbolic bracket requires r_f < s < 0", s);
  }
  return bracket_at(k, s, c, bracket_constants(k, c));
}

double parabolic_endpoint(const KnotParams& k) {
  require_case(k, BranchCase::elliptic);
  if (k.n == 1) return find_s0(k);
  const BracketConstants C = bracket_constants(k, BranchCase::elliptic);
  for (double r : positive_roots_at_T2(k)) {
    const BranchBracket b = bracket_at(k, r, BranchCase::elliptic, C);
    if (b.T_low < 2.0 && 2.0 < b.T_high) return r;
  }
  throw NumericalError(ErrorCode::NoRootFound, "no root of phi(s, 2) inside the elliptic bracket", 64.0);
}

// ---------------------------------------------------------------------------
// Alexander polynomial

mpz_class LaurentSymmetric::at_one() const {
  mpz_class acc = c.empty() ? mpz_class(0) : c[0];
  for (std::size_t i = 1; i < c.size(); ++i) acc += 2 * c[i];
  return acc;
}

double LaurentSymmetric::eval(double a) const {
  double acc = c.empty() ? 0.0 : c[0].get_d();
  for (std::size_t i = 1; i < c.size(); ++i) {
    const double ai = std::pow(a, static_cast<double>(i));
    acc += c[i].get_d() * (ai + 1.0 / ai);
  }
  return acc;
}

mpz_class LaurentSymmetric::coeff(int i) const {
  const int j = i < 0 ? -i : i;
  return j < static_cast<int>(c.size()) ? c[j] : mpz_class(0);
}

IntPolynomial LaurentSymmetric::as_u_polynomial() const {
  // V_0 = 2, V_1 = u, V_{i+1} = u V_i - V_{i-1} with V_i = a^i + a^-i; the
  // constant term c_0 enters once, not as c_0 V_0.
  IntPolynomial out = IntPolynomial::constant(c.empty() ? mpz_class(0) : c[0], Var::u);
  IntPolynomial prev(Var::u, {2});
  IntPolynomial cur = IntPolynomial::variable(Var::u);
  const IntPolynomial u = IntPolynomial::variable(Var::u);
  for (std::size_t i = 1; i < c.size(); ++i) {
    out += cur * c[i];
    IntPolynomial next = u * cur - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return out;
}

std::string LaurentSymmetric::to_string() const {
  const int N = half_degree();
  if (N < 0) return "0";
  std::string out;
  for (int i = N; i >= -N; --i) {
    const mpz_class v = coeff(i);
    if (v == 0) continue;
    const mpz_class mag = v < 0 ? mpz_class(-v) : v;
    std::string term = mag.get_str();
    if (i == 1) term += "*a";
    else if (i != 0) term += "*a^" + std::to_string(i);
    if (out.empty())
      out = (v < 0 ? "-" : "") + term;
    else
      out += (v < 0 ? " - " : " + ") + term;
  }
  return out;
}

LaurentSymmetric torus_alexander(int q) {
  if (q % 2 == 0) throw Error(ErrorCode::InvalidArgument, "torus_alexander requires odd q");
  const int h = (std::abs(q) - 1) / 2;
  LaurentSymmetric out;
  out.c.resize(h + 1);
  for (int i = 0; i <= h; ++i) out.c[i] = ((i + h) % 2 == 0) ? 1 : -1;
  return out;
}

LaurentSymmetric alexander_poly(const KnotParams& k) {
  validate(k);
  const LaurentSymmetric a = torus_alexander(2 * k.n + 1);
  const LaurentSymmetric b = torus_alexander(2 * k.n - 1);
  LaurentSymmetric out;
  out.c.assign(std::max(a.c.size(), b.c.size()), 0);
  for (std::size_t i = 0; i < out.c.size(); ++i) {
    const mpz_class ai = i < a.c.size() ? a.c[i] : mpz_class(0);
    const mpz_class bi = i < b.c.size() ? b.c[i] : mpz_class(0);
    out.c[i] = (k.m + 1) * ai - k.m * bi;
  }
  while (!out.c.empty() && out.c.back() == 0) out.c.pop_back();
  if (!out.c.empty() && out.c.back() < 0)
    for (auto& x : out.c) x = -x;
  return out;
}

AlexanderRoots alexander_roots(const KnotParams& k) {
  validate(k);
  const KnotParams pos = k.n > 0 ? k : KnotParams{-k.m - 1, -k.n};
  const IntPolynomial P = alexander_poly(k).as_u_polynomial();
  const poly::RootList rl = poly::real_roots(P, 1e-13);
  AlexanderRoots out;
  out.residual_bound = rl.residual_bound;
  for (double u : rl.roots) {
    if (u > -2.0 && u < 2.0) {
      out.unit_u.push_back(u);
      out.unit_angles.push_back(std::acos(u / 2.0));
    } else if (u > 2.0) {
      out.positive_u.push_back(u);
      out.positive_real.push_back(0.5 * (u + std::sqrt(u * u - 4.0)));
    } else if (u < -2.0) {
      out.negative_u.push_back(u);
    }
  }
  const bool need_unit = (pos.m != -1 && pos.n > 1) || (pos.m > 0 && pos.n == 1);
  const bool need_positive = pos.m < -1 && pos.n > 0;
  if (need_unit && out.unit_u.empty())
    throw Error(ErrorCode::ClassificationMismatch, "expected a unit-modulus Alexander root, found none");
  if (need_positive && out.positive_u.empty())
    throw Error(ErrorCode::ClassificationMismatch, "expected a positive real Alexander root, found none");
  return out;
}

double alexander_seed(const KnotParams& k, BranchCase c) {
  require_case(k, c);
  const BracketConstants C = bracket_constants(k, c);
  const AlexanderRoots roots = alexander_roots(k);
  // f_m(0) = 1, so the s = 0 bracket is [2 - C2, 2 - C1] or [2 + C3, 2 + C4].
  const double lo = c == BranchCase::elliptic ? 2.0 - C.upper : 2.0 + C.lower;
  const double hi = c == BranchCase::elliptic ? 2.0 - C.lower : 2.0 + C.upper;
  const auto& pool = c == BranchCase::elliptic ? roots.unit_u : roots.positive_u;
  std::vector<double> hits;
  for (double u : pool)
    if (u > lo && u < hi) hits.push_back(u);
  if (hits.empty())
    throw NumericalError(ErrorCode::SeedFailure,
                         std::string("no Alexander root inside the s = 0 ") + case_name(c) + " bracket", 0.0);
  if (hits.size() > 1)
    throw NumericalError(ErrorCode::SeedFailure,
                         "several Alexander roots inside the s = 0 bracket; branch is ambiguous", 0.0);
  return hits.front();
}

}  // namespace dtk::riley
