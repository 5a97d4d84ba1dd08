#include "verify.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <random>

#include <fmt/format.h>

#include "dtk/error.hpp"
#include "dtk/polykit.hpp"
#include "dtk/recurrences.hpp"
#include "dtk/rep.hpp"
#include "dtk/tracer.hpp"

namespace dtk::cli {

using poly::IntPolynomial;
using rep::cplx;

namespace {

const char* const kIdentitySum = "f_m + g_{m-1} = g_m";
const char* const kIdentityShift = "f_m + s*g_m = f_{m+1}";
const char* const kIdentitySquare = "f_m^2 = s*g_m*g_{m-1} + 1";
const char* const kClosedW = "closed-form W = word product of w";
const char* const kPowerW = "W^n from tau_n = repeated product";
const char* const kUEntries = "U entry formulas = Q-conjugate of W";
const char* const kTwist = "rho_s(w_*) = sigma-twist of rho_s(w)";
const char* const kRileyPaths = "expanded Riley polynomial = recurrence evaluation";
const char* const kAlexanderOne = "|Delta(1)| = 1";
const char* const kAlexanderRoots = "Alexander roots solve phi(0, u)";

Check exact_check(std::string name, long failures, std::string detail) {
  Check c;
  c.name = std::move(name);
  c.value = static_cast<double>(failures);
  c.tolerance = 0.0;
  c.passed = failures == 0;
  c.detail = std::move(detail);
  return c;
}

Check tol_check(std::string name, double value, double tol, std::string detail = {}) {
  Check c;
  c.name = std::move(name);
  c.value = value;
  c.tolerance = tol;
  c.passed = std::isfinite(value) && value <= tol;
  c.detail = std::move(detail);
  return c;
}

struct RandomPoint {
  double s;
  cplx t;
};

std::vector<RandomPoint> random_points(int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> us(-3.0, 3.0), ur(0.5, 2.0), ua(0.0, 2.0 * std::acos(-1.0));
  std::vector<RandomPoint> out;
  for (int i = 0; i < count; ++i) {
    const double s = us(rng);
    const double r = ur(rng), a = ua(rng);
    out.push_back({s, std::polar(r, a)});
  }
  return out;
}

void identity_checks(const VerifyOptions& opt, std::vector<Check>& out) {
  const IntPolynomial s = IntPolynomial::variable(poly::Var::s);
  const IntPolynomial one(poly::Var::s, {1});
  long sum_fail = 0, shift_fail = 0, square_fail = 0;
  for (int m = -10; m <= 10; ++m) {
    const IntPolynomial f = poly::f_poly(m), g = poly::g_poly(m), gp = poly::g_poly(m - 1);
    if (f + gp != g) ++sum_fail;
    if (f + s * g != poly::f_poly(m + 1)) ++shift_fail;
    IntPolynomial lhs = f * f;
    if (opt.inject_fault == kIdentitySquare && m == 3) lhs += one;
    if (lhs != s * g * gp + one) ++square_fail;
  }
  const std::string range = "exact over m in [-10, 10]";
  out.push_back(exact_check(kIdentitySum, sum_fail, range));
  out.push_back(exact_check(kIdentityShift, shift_fail, range));
  out.push_back(exact_check(kIdentitySquare, square_fail, range));
}

void matrix_checks(const riley::KnotParams& k, const VerifyOptions& opt, std::vector<Check>& out) {
  double wdiff = 0, pdiff = 0, udiff = 0, twdiff = 0;
  for (const auto& pt : random_points(50, 0x5eedULL + 7919ULL * (k.m + 64) + k.n)) {
    rep::Mat2 W = rep::w_matrix_closed(k.m, pt.s, pt.t);
    if (opt.inject_fault == kClosedW) W.b += 1e-3;
    const rep::Mat2 Wd = rep::word_matrix(rep::word_w(k.m), pt.s, pt.t);
    wdiff = std::max(wdiff, rep::max_rel_diff(W, Wd));

    const rep::Mat2 Wn = rep::w_power(k.n, Wd);
    const rep::Mat2 Wn_direct = rep::word_matrix(rep::word_w(k.m).power(k.n), pt.s, pt.t);
    pdiff = std::max(pdiff, rep::max_rel_diff(Wn, Wn_direct));

    const rep::Mat2 U = rep::u_matrix(k.m, pt.s, pt.t);
    udiff = std::max(udiff, rep::max_rel_diff(U, rep::conjugate(Wd, pt.t)));

    const cplx sig = rep::sigma(pt.s, pt.t);
    const rep::Mat2 Ustar = rep::word_matrix_conjugated(rep::word_wstar(k.m), pt.s, pt.t);
    twdiff = std::max(twdiff, rep::max_rel_diff(rep::sigma_twist(U, sig), Ustar));
  }
  const std::string where = "50 random (s, t)";
  out.push_back(tol_check(kClosedW, wdiff, opt.oracle_tol, where));
  out.push_back(tol_check(kPowerW, pdiff, opt.oracle_tol, where));
  out.push_back(tol_check(kUEntries, udiff, opt.oracle_tol, where));
  out.push_back(tol_check(kTwist, twdiff, opt.oracle_tol, where));
}

void riley_checks(const riley::KnotParams& k, std::vector<Check>& out) {
  const riley::RileyPolynomial phi = riley::riley_poly(k);
  std::mt19937_64 rng(0xa11ceULL);
  std::uniform_real_distribution<double> us(-1.0, 1.0), uT(-3.0, 3.0);
  double worst = 0;
  for (int i = 0; i < 100; ++i) {
    const double s = us(rng), T = uT(rng);
    const double a = phi.eval(s, T), b = riley::riley_eval(k, s, T);
    const double scale = std::max(1.0, std::abs(rec::riley_scale_shifted<double>(k.m, k.n, s, T - s - 2.0)));
    worst = std::max(worst, std::abs(a - b) / scale);
  }
  out.push_back(tol_check(kRileyPaths, worst, 1e-10, "100 random (s, T), relative"));

  const riley::LaurentSymmetric delta = riley::alexander_poly(k);
  const mpz_class at1 = delta.at_one();
  out.push_back(exact_check(kAlexanderOne, abs(at1) == 1 ? 0 : 1, "Delta = " + delta.to_string()));

  const riley::AlexanderRoots roots = riley::alexander_roots(k);
  double rworst = 0;
  std::vector<double> all = roots.unit_u;
  all.insert(all.end(), roots.positive_u.begin(), roots.positive_u.end());
  all.insert(all.end(), roots.negative_u.begin(), roots.negative_u.end());
  for (double u : all) rworst = std::max(rworst, std::abs(riley::riley_eval(k, 0.0, u)));
  out.push_back(tol_check(kAlexanderRoots, rworst, 1e-8, fmt::format("{} real u-roots", all.size())));
}

void branch_checks(const riley::KnotParams& k, riley::BranchCase c, const VerifyOptions& opt,
                   std::vector<Check>& out) {
  const std::string tag = riley::case_name(c);
  tracer::Branch b;
  try {
    b = tracer::trace_branch(k, c, std::max(64, opt.samples));
  } catch (const Error& e) {
    Check fail = tol_check("trace of the " + tag + " branch", std::numeric_limits<double>::infinity(), 0.0, e.what());
    out.push_back(fail);
    return;
  }
  double rel = 0, lon = 0;
  for (std::size_t i = 0; i < b.samples.size(); ++i) {
    const auto& p = b.samples[i];
    rel = std::max(rel, rep::relator_residual(k.m, k.n, p.s, p.t));
    if (i % 16 == 0) {
      const rep::Mat2 L = rep::longitude_matrix_oracle(k.m, k.n, p.s, p.t);
      lon = std::max(lon, std::abs(L.a - p.B));
    }
  }
  out.push_back(tol_check("relator residual along the " + tag + " branch", rel, 1e-8,
                          fmt::format("{} samples", b.samples.size())));
  out.push_back(tol_check("B_s = (1,1)-entry of the longitude product (" + tag + ")", lon, 1e-7,
                          "every 16th sample"));

  const auto& near0 = c == riley::BranchCase::elliptic ? b.samples.front() : b.samples.back();
  out.push_back(tol_check("B_s -> 1 as s -> 0 (" + tag + ")", std::abs(near0.B - 1.0), 1e-3));
  if (c == riley::BranchCase::hyperbolic) {
    const auto& tail = b.samples.front();
    out.push_back(tol_check("B_s*t^{2n} -> 1 as s -> r_f", std::abs(tail.B * std::pow(tail.t, 2.0 * k.n) - 1.0),
                            1e-3, fmt::format("t = {:.6g}", tail.t.real())));
  } else {
    const auto& tail = b.samples.back();
    const double v = std::max(std::abs(tail.B + 1.0), std::abs(tail.t - 1.0));
    out.push_back(tol_check("B_s -> -1 and t -> 1 at the parabolic end", v, 1e-2,
                            fmt::format("s = {:.9g}", tail.s)));
  }
}

}  // namespace

bool Report::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

const Check* Report::first_failure() const {
  for (const auto& c : checks)
    if (!c.passed) return &c;
  return nullptr;
}

nlohmann::json Report::to_json() const {
  nlohmann::json doc;
  doc["m"] = knot.m;
  doc["n"] = knot.n;
  doc["passed"] = passed();
  nlohmann::json list = nlohmann::json::array();
  for (const auto& c : checks) {
    list.push_back({{"name", c.name},
                    {"value", std::isfinite(c.value) ? nlohmann::json(c.value) : nlohmann::json(nullptr)},
                    {"tolerance", c.tolerance},
                    {"passed", c.passed},
                    {"detail", c.detail}});
  }
  doc["checks"] = std::move(list);
  if (const Check* f = first_failure()) doc["first_failure"] = f->name;
  return doc;
}

Report run_verification(const riley::KnotParams& k, const VerifyOptions& opt) {
  riley::validate(k);
  Report r;
  r.knot = k;
  identity_checks(opt, r.checks);
  matrix_checks(k, opt, r.checks);
  riley_checks(k, r.checks);
  // Branch work for n < 0 goes through the mirror, whose branches are the
  // ones the tracer covers.
  const riley::KnotParams tk = k.n > 0 ? k : riley::KnotParams{-k.m - 1, -k.n};
  for (auto c : {riley::BranchCase::elliptic, riley::BranchCase::hyperbolic})
    if (riley::case_permitted(tk, c)) branch_checks(tk, c, opt, r.checks);
  return r;
}

std::vector<std::string> fault_targets() { return {kIdentitySquare, kClosedW}; }

}  // namespace dtk::cli
