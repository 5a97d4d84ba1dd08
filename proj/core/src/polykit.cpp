#include "dtk/polykit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <utility>

#include "dtk/error.hpp"
#include "dtk/recurrences.hpp"

namespace dtk {

std::string NumericalError::format_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace dtk

namespace dtk::poly {

char const* var_name(Var v) noexcept {
  switch (v) {
    case Var::s: return "s";
    case Var::tau: return "tau";
    case Var::a: return "a";
    case Var::u: return "u";
    case Var::T: return "T";
  }
  return "?";
}

IntPolynomial::IntPolynomial(Var var, std::vector<mpz_class> coeffs)
    : var_(var), coeffs_(std::move(coeffs)) {
  normalize();
}

IntPolynomial::IntPolynomial(Var var, std::initializer_list<long> coeffs) : var_(var) {
  coeffs_.reserve(coeffs.size());
  for (long c : coeffs) coeffs_.emplace_back(c);
  normalize();
}

IntPolynomial IntPolynomial::constant(const mpz_class& c, Var var) {
  return IntPolynomial(var, std::vector<mpz_class>{c});
}

IntPolynomial IntPolynomial::variable(Var var) { return IntPolynomial(var, {0, 1}); }

void IntPolynomial::normalize() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

void IntPolynomial::require_same_var(const IntPolynomial& o) const {
  if (o.var_ != var_ && !o.is_zero() && !is_zero())
    throw Error(ErrorCode::InvalidArgument,
                std::string("polynomial variable mismatch: ") + var_name(var_) + " vs " +
                    var_name(o.var_));
}

mpz_class IntPolynomial::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(coeffs_.size())) return 0;
  return coeffs_[i];
}

const mpz_class& IntPolynomial::leading() const {
  if (coeffs_.empty()) throw Error(ErrorCode::InvalidArgument, "zero polynomial has no leading coefficient");
  return coeffs_.back();
}

IntPolynomial IntPolynomial::derivative() const {
  std::vector<mpz_class> d;
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d.push_back(coeffs_[i] * static_cast<unsigned long>(i));
  return IntPolynomial(var_, std::move(d));
}

double IntPolynomial::eval(double x) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + it->get_d();
  return acc;
}

long double IntPolynomial::eval(long double x) const {
  long double acc = 0.0L;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
    acc = acc * x + static_cast<long double>(it->get_d());
  return acc;
}

std::complex<double> IntPolynomial::eval(std::complex<double> x) const {
  std::complex<double> acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + it->get_d();
  return acc;
}

mpz_class IntPolynomial::eval(const mpz_class& x) const {
  mpz_class acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

IntPolynomial& IntPolynomial::operator+=(const IntPolynomial& o) {
  require_same_var(o);
  if (is_zero()) var_ = o.var_;
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), 0);
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  normalize();
  return *this;
}

IntPolynomial& IntPolynomial::operator-=(const IntPolynomial& o) {
  require_same_var(o);
  if (is_zero()) var_ = o.var_;
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), 0);
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  normalize();
  return *this;
}

IntPolynomial& IntPolynomial::operator*=(const IntPolynomial& o) {
  require_same_var(o);
  if (is_zero() || o.is_zero()) {
    coeffs_.clear();
    return *this;
  }
  std::vector<mpz_class> out(coeffs_.size() + o.coeffs_.size() - 1, 0);
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j) out[i + j] += coeffs_[i] * o.coeffs_[j];
  coeffs_ = std::move(out);
  normalize();
  return *this;
}

IntPolynomial& IntPolynomial::operator*=(const mpz_class& c) {
  for (auto& x : coeffs_) x *= c;
  normalize();
  return *this;
}

IntPolynomial IntPolynomial::operator-() const {
  IntPolynomial r = *this;
  for (auto& x : r.coeffs_) x = -x;
  return r;
}

std::string IntPolynomial::to_string() const {
  if (coeffs_.empty()) return "0";
  std::string out;
  const std::string v = var_name(var_);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const mpz_class& c = coeffs_[i];
    if (c == 0) continue;
    std::string mag = (c < 0 ? mpz_class(-c) : c).get_str();
    if (out.empty()) {
      out = (c < 0 ? "-" : "") + mag;
    } else {
      out += (c < 0 ? " - " : " + ") + mag;
    }
    if (i >= 1) out += "*" + v;
    if (i >= 2) out += "^" + std::to_string(i);
  }
  return out;
}

namespace {

// Three-term recurrence run over exact polynomials in s.
IntPolynomial run_recurrence(IntPolynomial p0, IntPolynomial p1, int m) {
  if (m == 0) return p0;
  const IntPolynomial c(Var::s, {2, 1});
  for (int k = 1; k < m; ++k) {
    IntPolynomial next = c * p1 - p0;
    p0 = std::move(p1);
    p1 = std::move(next);
  }
  return p1;
}

}  // namespace

IntPolynomial f_poly(int m) {
  if (m < 0) return f_poly(-m - 1);
  return run_recurrence(IntPolynomial(Var::s, {1}), IntPolynomial(Var::s, {1, 1}), m);
}

IntPolynomial g_poly(int m) {
  if (m == -1) return IntPolynomial(Var::s);
  if (m < -1) return -g_poly(-m - 2);
  return run_recurrence(IntPolynomial(Var::s, {1}), IntPolynomial(Var::s, {2, 1}), m);
}

IntPolynomial tau_poly(int k) {
  if (k < 0) throw Error(ErrorCode::InvalidArgument, "tau_poly requires k >= 0");
  IntPolynomial prev(Var::tau);
  if (k == 0) return prev;
  IntPolynomial cur(Var::tau, {1});
  const IntPolynomial tau = IntPolynomial::variable(Var::tau);
  for (int j = 1; j < k; ++j) {
    IntPolynomial next = tau * cur - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

RootList g_roots_closed(int m) {
  if (m < 1) throw Error(ErrorCode::InvalidArgument, "g_roots_closed requires m >= 1");
  RootList out;
  for (int k = m; k >= 1; --k)
    out.roots.push_back(2.0 * std::cos(k * std::numbers::pi / (m + 1)) - 2.0);
  for (double r : out.roots)
    out.residual_bound = std::max(out.residual_bound, std::abs(rec::g_value<double>(m, r)));
  return out;
}

namespace {

template <class Fn>
double bisect(Fn&& fn, double lo, double hi, double width) {
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

}  // namespace

RootList roots_f(int m) {
  if (m < 1) throw Error(ErrorCode::InvalidArgument, "roots_f requires m >= 1");
  const auto f = [m](double s) { return rec::f_value<double>(m, s); };
  const auto df = [m](double s) {
    // f_m' from the exact derivative would need the expanded form; a central
    // difference is enough for a single guarded step.
    const double h = 1e-7;
    return (rec::f_value<double>(m, s + h) - rec::f_value<double>(m, s - h)) / (2 * h);
  };

  // f_m = g_m - g_{m-1}, so at each root of g_{m-1} f_m takes the sign of g_m;
  // interlacing makes those signs alternate. Together with s = -4 and s = 0
  // this gives m sign-change brackets.
  std::vector<double> knots{-4.0};
  if (m >= 2) {
    const RootList inner = g_roots_closed(m - 1);
    knots.insert(knots.end(), inner.roots.begin(), inner.roots.end());
  }
  knots.push_back(0.0);

  RootList out;
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    const double lo = knots[i], hi = knots[i + 1];
    const double flo = f(lo), fhi = f(hi);
    if (flo == 0.0 || fhi == 0.0 || (flo < 0) == (fhi < 0))
      throw NumericalError(ErrorCode::BracketFailure,
                           "f_" + std::to_string(m) + " has no sign change on bracket", lo);
    double r = bisect(f, lo, hi, 1e-13);
    const double d = df(r);
    if (d != 0.0) {
      const double cand = r - f(r) / d;
      if (cand > lo && cand < hi && std::abs(f(cand)) <= std::abs(f(r))) r = cand;
    }
    out.roots.push_back(r);
    out.residual_bound = std::max(out.residual_bound, std::abs(f(r)));
  }
  return out;
}

double largest_root_f(int m) {
  const int k = m >= 0 ? m : -m - 1;
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "f_m has no roots for m in {0, -1}");
  return roots_f(k).roots.back();
}

namespace {

double cauchy_bound(const IntPolynomial& p) {
  const double lead = std::abs(p.leading().get_d());
  double mx = 0.0;
  for (int i = 0; i < p.degree(); ++i) mx = std::max(mx, std::abs(p.coeff(i).get_d()) / lead);
  return 1.0 + mx;
}

void isolate(const IntPolynomial& p, double lo, double hi, double tol, std::vector<double>& out) {
  if (p.degree() <= 0) return;
  if (p.degree() == 1) {
    const double r = -p.coeff(0).get_d() / p.coeff(1).get_d();
    if (r > lo && r < hi) out.push_back(r);
    return;
  }
  std::vector<double> crit;
  isolate(p.derivative(), lo, hi, tol, crit);
  std::vector<double> knots{lo};
  knots.insert(knots.end(), crit.begin(), crit.end());
  knots.push_back(hi);
  const auto fn = [&p](double x) { return static_cast<double>(p.eval(static_cast<long double>(x))); };
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    const double a = knots[i], b = knots[i + 1];
    const double fa = fn(a), fb = fn(b);
    if (fa == 0.0 && i == 0) {
      out.push_back(a);
      continue;
    }
    if (fb == 0.0) {
      if (out.empty() || out.back() != b) out.push_back(b);
      continue;
    }
    if (fa == 0.0) continue;
    if ((fa < 0) != (fb < 0)) out.push_back(bisect(fn, a, b, tol));
  }
}

}  // namespace

RootList real_roots(const IntPolynomial& p, double tol) {
  if (p.is_zero()) throw Error(ErrorCode::InvalidArgument, "real_roots of the zero polynomial");
  RootList out;
  if (p.degree() == 0) return out;
  const double bound = cauchy_bound(p);
  isolate(p, -bound, bound, tol, out.roots);
  std::sort(out.roots.begin(), out.roots.end());
  out.roots.erase(std::unique(out.roots.begin(), out.roots.end()), out.roots.end());
  for (double r : out.roots)
    out.residual_bound = std::max(out.residual_bound, std::abs(static_cast<double>(p.eval(static_cast<long double>(r)))));
  return out;
}

}  // namespace dtk::poly
