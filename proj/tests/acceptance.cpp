// Acceptance run: one PASS/FAIL line per criterion. Exits 0 iff the set of
// failing criteria equals --known-failures.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <functional>
#include <iostream>
#include <limits>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "dtk/error.hpp"
#include "dtk/polykit.hpp"
#include "dtk/rep.hpp"
#include "dtk/riley.hpp"
#include "dtk/slopes.hpp"
#include "dtk/tracer.hpp"

using namespace dtk;
using poly::IntPolynomial;
using poly::Var;
using rep::cplx;
using rep::Mat2;
using riley::BranchCase;
using riley::KnotParams;
using tracer::Branch;

namespace {

constexpr double kPi = std::numbers::pi;
const std::vector<KnotParams> kKnots{{1, 1}, {2, 2}, {1, 2}, {-2, 2}, {-3, 2}, {-2, 3}};

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes.push_back(what);
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string knot_text(const KnotParams& k) { return fmt::format("({},{})", k.m, k.n); }

std::vector<BranchCase> cases_of(const KnotParams& k) {
  std::vector<BranchCase> out;
  for (auto c : {BranchCase::elliptic, BranchCase::hyperbolic})
    if (riley::case_permitted(k, c)) out.push_back(c);
  return out;
}

const Branch& trace(const KnotParams& k, BranchCase c, int samples = 512) {
  static std::map<std::tuple<int, int, int, int>, Branch> cache;
  const auto key = std::make_tuple(k.m, k.n, static_cast<int>(c), samples);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, tracer::trace_branch(k, c, samples)).first;
  return it->second;
}

const Branch& beyond(const KnotParams& k, int samples = 512) {
  static std::map<std::tuple<int, int, int>, Branch> cache;
  const auto key = std::make_tuple(k.m, k.n, samples);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, tracer::trace_beyond_seed(k, samples)).first;
  return it->second;
}

// --- independent oracles --------------------------------------------------

mpz_class binomial(long n, long k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

Mat2 generator(char c, cplx s, cplx t) {
  const cplx r = std::sqrt(t);
  switch (c) {
    case 'x': return {r, 1.0 / r, 0.0, 1.0 / r};
    case 'X': return {1.0 / r, -1.0 / r, 0.0, r};
    case 'y': return {r, 0.0, -s * r, 1.0 / r};
    default: return {1.0 / r, 0.0, s * r, r};
  }
}

std::string w_text(int m) {
  std::string out;
  for (int i = 0; i < std::abs(m); ++i) out += m > 0 ? "xY" : "yX";
  out += "xy";
  for (int i = 0; i < std::abs(m); ++i) out += m > 0 ? "Xy" : "Yx";
  return out;
}

Mat2 product(const std::string& word, cplx s, cplx t) {
  Mat2 acc;
  for (char c : word) acc = acc * generator(c, s, t);
  return acc;
}

double rel_diff(const Mat2& p, const Mat2& q) {
  const double scale = std::max({1.0, std::abs(q.a), std::abs(q.b), std::abs(q.c), std::abs(q.d)});
  return std::max({std::abs(p.a - q.a), std::abs(p.b - q.b), std::abs(p.c - q.c), std::abs(p.d - q.d)}) / scale;
}

// --- criteria ---------------------------------------------------------------

Outcome criterion_identities() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const IntPolynomial s = IntPolynomial::variable(Var::s), one(Var::s, {1});
  for (int m = -10; m <= 10; ++m) {
    const auto f = poly::f_poly(m), g = poly::g_poly(m), gp = poly::g_poly(m - 1);
    o.require(f + gp == g, fmt::format("sum identity m={}", m));
    o.require(f + s * g == poly::f_poly(m + 1), fmt::format("shift identity m={}", m));
    o.require(f * f == s * g * gp + one, fmt::format("square identity m={}", m));
  }
  for (int m = 0; m <= 8; ++m) {
    std::vector<mpz_class> fc, gc;
    for (int i = 0; i <= m; ++i) {
      fc.push_back(binomial(m + i, m - i));
      gc.push_back(binomial(m + 1 + i, m - i));
    }
    o.require(poly::f_poly(m) == IntPolynomial(Var::s, fc), fmt::format("f closed form m={}", m));
    o.require(poly::g_poly(m) == IntPolynomial(Var::s, gc), fmt::format("g closed form m={}", m));
  }
  const double dt = seconds_since(t0);
  o.require(dt < 1.0, fmt::format("runtime {:.3f} s", dt));
  o.notes.push_back(fmt::format("{:.3f} s", dt));
  return o;
}

Outcome criterion_matrices() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> us(-2.0, 2.0), ur(0.5, 2.0), ua(0.0, 2 * kPi);
  double wmax = 0, pmax = 0, umax = 0, dmax = 0;
  for (const auto& k : kKnots) {
    for (int i = 0; i < 50; ++i) {
      const cplx s = us(rng), t = std::polar(ur(rng), ua(rng));
      const Mat2 direct = product(w_text(k.m), s, t);
      const Mat2 W = rep::w_matrix_closed(k.m, s, t);
      wmax = std::max(wmax, rel_diff(W, direct));
      Mat2 pw;
      for (int j = 0; j < k.n; ++j) pw = pw * direct;
      pmax = std::max(pmax, rel_diff(rep::w_power(k.n, W), pw));
      const cplx r = std::sqrt(t);
      const Mat2 Q{t - 1.0, 1.0, 0.0, r - 1.0 / r};
      const Mat2 U = rep::u_matrix(k.m, s, t);
      umax = std::max(umax, rel_diff(U, Q * direct * Q.inverse()));
      // Scaled by the size of the products ad and bc, whose cancellation bounds what double precision can resolve.
      for (const Mat2& M : {W, rep::w_power(k.n, W), U})
        dmax = std::max(dmax, std::abs(M.det() - 1.0) / std::max({1.0, std::abs(M.a * M.d), std::abs(M.b * M.c)}));
    }
  }
  o.require(wmax < 1e-9, fmt::format("closed W {:.2e}", wmax));
  o.require(pmax < 1e-9, fmt::format("W^n {:.2e}", pmax));
  o.require(umax < 1e-9, fmt::format("U {:.2e}", umax));
  o.require(dmax < 1e-9, fmt::format("det {:.2e}", dmax));
  const double dt = seconds_since(t0);
  o.require(dt < 5.0, fmt::format("runtime {:.3f} s", dt));
  o.notes.push_back(fmt::format("max rel diff W {:.1e}, W^n {:.1e}, U {:.1e}, det {:.1e}; {:.3f} s", wmax, pmax, umax,
                                dmax, dt));
  return o;
}

Outcome criterion_certificate() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  double rel = 0, lon = 0;
  for (const auto& k : kKnots)
    for (auto c : cases_of(k)) {
      const Branch& b = trace(k, c);
      for (std::size_t i = 0; i < b.samples.size(); ++i) {
        const auto& p = b.samples[i];
        rel = std::max(rel, rep::relator_residual(k.m, k.n, p.s, p.t));
        if (i % 16 == 0) {
          // Product of the longitude word, conjugated by Q, formed here.
          std::string word;
          const std::string w = w_text(k.m);
          const std::string ws(w.rbegin(), w.rend());
          for (int j = 0; j < k.n; ++j) word += ws;
          for (int j = 0; j < k.n; ++j) word += w;
          for (int j = 0; j < 4 * k.n; ++j) word += 'X';
          const cplx r = std::sqrt(p.t);
          const Mat2 Q{p.t - 1.0, 1.0, 0.0, r - 1.0 / r};
          const Mat2 L = Q * product(word, p.s, p.t) * Q.inverse();
          lon = std::max(lon, std::abs(L.a - p.B));
        }
      }
    }
  const double dt = seconds_since(t0);
  o.require(rel < 1e-8, fmt::format("relator residual {:.2e}", rel));
  o.require(lon < 1e-7, fmt::format("B vs longitude {:.2e}", lon));
  o.require(dt < 30.0, fmt::format("runtime {:.2f} s", dt));
  o.notes.push_back(fmt::format("relator {:.1e}, B vs longitude {:.1e}; {:.2f} s", rel, lon, dt));
  return o;
}

Outcome criterion_invariants() {
  Outcome o;
  for (const auto& k : kKnots)
    for (auto c : cases_of(k)) {
      const Branch& b = trace(k, c);
      const auto C = riley::bracket_constants(k, c);
      double tmin = std::numeric_limits<double>::infinity(), tmax = -tmin, unit = 0;
      bool real_t = true, in_bracket = true;
      for (const auto& p : b.samples) {
        tmin = std::min(tmin, p.T);
        tmax = std::max(tmax, p.T);
        if (c == BranchCase::elliptic)
          unit = std::max({unit, std::abs(std::abs(p.t) - 1.0), std::abs(std::abs(p.B) - 1.0)});
        else
          real_t = real_t && p.t.imag() == 0.0 && p.t.real() > 1.0;
        in_bracket = in_bracket && riley::bracket_at(k, p.s, c, C).contains(p.T);
      }
      const std::string tag = knot_text(k) + " " + riley::case_name(c);
      if (c == BranchCase::elliptic) {
        o.require(tmin > 0.0 && tmax < 2.0, fmt::format("{}: T in [{:.4f}, {:.4f}], not inside (0, 2)", tag, tmin, tmax));
        o.require(unit < 1e-9, fmt::format("{}: |t|, |B| off the unit circle by {:.1e}", tag, unit));
      } else {
        o.require(tmin > 2.0, fmt::format("{}: min T {:.4f}", tag, tmin));
        o.require(real_t, tag + ": t not real > 1");
      }
      o.require(in_bracket, tag + ": sample outside branch_bracket");
    }
  return o;
}

Outcome criterion_limits() {
  Outcome o;
  for (const auto& k : kKnots)
    for (auto c : cases_of(k)) {
      const Branch& b = trace(k, c);
      const std::string tag = knot_text(k) + " " + riley::case_name(c);
      const auto& near0 = c == BranchCase::elliptic ? b.samples.front() : b.samples.back();
      const double b0 = std::abs(near0.B - 1.0);
      o.require(b0 < 1e-3, fmt::format("{}: |B-1| = {:.1e} at s -> 0", tag, b0));
      if (c == BranchCase::hyperbolic) {
        const auto& tail = b.samples.front();
        const double v = std::abs(tail.B * std::pow(tail.t, 2.0 * k.n) - 1.0);
        o.require(v < 1e-3, fmt::format("{}: |B t^2n - 1| = {:.1e}", tag, v));
      } else {
        const auto& tail = b.samples.back();
        const double db = std::abs(tail.B + 1.0), dt = std::abs(tail.t - 1.0);
        o.require(dt < 1e-2, fmt::format("{}: |t-1| = {:.1e}", tag, dt));
        o.require(db < 1e-2, fmt::format("{}: |B+1| = {:.1e}", tag, db));
      }
    }
  return o;
}

Outcome criterion_elliptic_endpoint() {
  Outcome o;
  const Branch& b = trace({2, 2}, BranchCase::elliptic);
  const double height = b.samples.back().phase_B / kPi;
  o.require(std::abs(height - 3.0) < 0.05, fmt::format("endpoint height {:.4f}", height));
  const auto w = tracer::winding_integer(b);
  o.require(w.d == 2, fmt::format("d = {}", w.d));
  o.notes.push_back(fmt::format("height {:.5f}, d = {}", height, w.d));
  return o;
}

Outcome criterion_asymptotes() {
  Outcome o;
  const KnotParams k{-2, 2};
  const auto primary = tracer::estimate_asymptotes(trace(k, BranchCase::hyperbolic));
  const auto extra = tracer::estimate_asymptotes(beyond(k));
  o.require(primary.size() == 1 && extra.size() == 1, "expected one estimate per segment");
  if (!o.pass) return o;
  const double a = std::abs(primary[0].slope), c = std::abs(extra[0].slope);
  o.require(std::abs(a - 8.0) < 0.2, fmt::format("primary asymptote {:.4f}", a));
  o.require(std::abs(c - 4.0) < 0.2, fmt::format("continued asymptote {:.4f}", c));
  o.require(primary[0].evidence == tracer::Evidence::theorem, "8 not tagged theorem");
  o.require(extra[0].evidence == tracer::Evidence::conjectural, "4 not tagged conjectural");
  o.notes.push_back(fmt::format("|slopes| {:.4f} and {:.4f} (conjectural)", a, c));
  return o;
}

// Largest half-gap between consecutive sampled slopes inside [lo, hi].
double largest_gap(std::vector<double> v, double lo, double hi) {
  std::sort(v.begin(), v.end());
  double gap = 0;
  for (std::size_t i = 1; i < v.size(); ++i) {
    const double a = std::max(v[i - 1], lo), b = std::min(v[i], hi);
    if (b > a) gap = std::max(gap, (b - a) / 2);
  }
  return gap;
}

// slope_fn is continuous along a traced branch, so the image covers [lo, hi]
// once the sampled image reaches past both ends.
Outcome criterion_slope_image() {
  Outcome o;
  double worst = 0;
  for (const auto& k : kKnots)
    for (auto c : cases_of(k)) {
      std::vector<double> image;
      for (const auto& p : trace(k, c).samples) image.push_back(tracer::slope_fn(p));
      const double lo = c == BranchCase::hyperbolic ? 0.5 : -50.0;
      const double hi = c == BranchCase::hyperbolic ? 4.0 * k.n - 0.5 : -0.5;
      const auto [mn, mx] = std::minmax_element(image.begin(), image.end());
      o.require(*mn <= lo && *mx >= hi, fmt::format("{} {}: image [{:.4g}, {:.4g}] misses [{}, {}]", knot_text(k),
                                                    riley::case_name(c), *mn, *mx, lo, hi));
      worst = std::max(worst, largest_gap(image, lo, hi));
    }
  o.notes.push_back(fmt::format("largest half-gap between sampled slopes {:.3f}", worst));
  return o;
}

Outcome criterion_table() {
  Outcome o;
  const auto text = [](const KnotParams& k) { return slopes::orderable_interval(k).to_string(); };
  const auto rows = [](const KnotParams& k) {
    std::vector<std::string> out;
    for (const auto& r : slopes::orderable_intervals(k)) out.push_back(r.to_string());
    return out;
  };
  // The four rows, each on parameters where it applies.
  o.require(text({2, 2}) == "(-inf, 1)", "(2,2) -> " + text({2, 2}));
  o.require(text({-3, -2}) == "(-1, inf)", "(-3,-2) -> " + text({-3, -2}));
  o.require(text({-2, 2}) == "[0, 8)", "(-2,2) -> " + text({-2, 2}));
  o.require(text({2, -1}) == "(-4, 0]", "(2,-1) -> " + text({2, -1}));
  o.require(rows({-2, 2}) == std::vector<std::string>{"(-inf, 1)", "[0, 8)"}, "(-2,2) rows");
  // (1,-2) lies in two rows; the unbounded one is the "m > 0, n < -1" case.
  o.require(rows({1, -2}) == std::vector<std::string>{"(-1, inf)", "(-8, 0]"}, "(1,-2) rows");
  o.require(text(slopes::mirror_params({2, 2})) == "(-1, inf)", "mirror of (2,2)");
  int checked = 0;
  for (int m = -5; m <= 5; ++m)
    for (int n = -5; n <= 5; ++n) {
      if (m == 0 || m == -1 || n == 0) continue;
      const KnotParams k{m, n}, mk = slopes::mirror_params(k);
      ++checked;
      o.require(slopes::orderable_interval(mk) == slopes::orderable_interval(k).negate(),
                "mirror antisymmetry at " + knot_text(k));
      auto a = slopes::orderable_intervals(k), b = slopes::orderable_intervals(mk);
      std::vector<std::string> an, bn;
      for (auto& r : a) an.push_back(r.negate().to_string());
      for (auto& r : b) bn.push_back(r.to_string());
      std::sort(an.begin(), an.end());
      std::sort(bn.begin(), bn.end());
      o.require(an == bn, "row-set antisymmetry at " + knot_text(k));
    }
  for (auto k : {KnotParams{0, 2}, KnotParams{-1, 3}, KnotParams{3, 0}}) {
    bool rejected = false;
    try {
      slopes::orderable_interval(k);
    } catch (const Error& e) {
      rejected = e.code() == ErrorCode::InvalidKnot;
    }
    o.require(rejected, "torus parameters accepted: " + knot_text(k));
  }
  o.notes.push_back(fmt::format("{} mirror pairs", checked));
  return o;
}

Outcome criterion_alexander() {
  Outcome o;
  o.require(riley::alexander_poly({1, 1}).to_string() == "2*a - 3 + 2*a^-1", "Delta(1,1)");
  o.require(riley::alexander_poly({-2, 2}).to_string() == "1*a^2 - 3*a + 3 - 3*a^-1 + 1*a^-2", "Delta(-2,2)");
  double worst = 0;
  for (int m = -5; m <= 5; ++m)
    for (int n = 1; n <= 5; ++n) {
      if (m == 0 || m == -1) continue;
      const KnotParams k{m, n};
      const auto d = riley::alexander_poly(k);
      o.require(abs(d.at_one()) == 1, "|Delta(1)| at " + knot_text(k));
      const auto r = riley::alexander_roots(k);
      if (n > 1 || m > 0) o.require(!r.unit_u.empty(), "no unit root at " + knot_text(k));
      if (m < -1) o.require(!r.positive_real.empty(), "no positive real root at " + knot_text(k));
      std::vector<double> all = r.unit_u;
      all.insert(all.end(), r.positive_u.begin(), r.positive_u.end());
      all.insert(all.end(), r.negative_u.begin(), r.negative_u.end());
      for (double u : all) worst = std::max(worst, std::abs(riley::riley_eval(k, 0.0, u)));
    }
  const auto r = riley::alexander_roots({-2, 2});
  o.require(r.positive_real.size() == 1 && std::abs(r.positive_real[0] - 2.15372) < 1e-5, "positive root of (-2,2)");
  o.require(worst < 1e-8, fmt::format("phi(0, u) residual {:.1e}", worst));
  o.notes.push_back(fmt::format("max |phi(0,u)| {:.1e}", worst));
  return o;
}

Outcome criterion_boundary() {
  Outcome o;
  for (int m = -6; m <= -2; ++m)
    for (int n = 1; n <= 6; ++n) {
      const KnotParams k{m, n};
      const auto s = slopes::standard_cf(k), e = slopes::even_cf(k);
      o.require(slopes::boundary_slope_seifert(k) == -4 * n, "slope at " + knot_text(k));
      o.require(s.positive == 0 && s.negative == 2, "standard counts at " + knot_text(k));
      o.require(e.positive == 2 * n - 1 && e.negative == 1, "even counts at " + knot_text(k));
      o.require(s.value() == slopes::two_bridge_fraction(k) && e.value() == slopes::two_bridge_fraction(k),
                "expansion value at " + knot_text(k));
    }
  return o;
}

struct Reported {
  std::string name;
  double value;
};


double slope_at(const tracer::BranchSample& p) { return p.phase_t == 0.0 ? 0.0 : tracer::slope_fn(p); }

// Every reported limit, slope and asymptote for a trace at a given density.
std::vector<Reported> reported_values(const KnotParams& k, BranchCase c, int samples) {
  const Branch& b = trace(k, c, samples);
  const auto& lo = b.samples.front();
  const auto& hi = b.samples.back();
  std::vector<Reported> out{{"|B-1| near s=0", std::abs((c == BranchCase::elliptic ? lo : hi).B - 1.0)},
                            {"y near s=0", (c == BranchCase::elliptic ? lo : hi).y},
                            {"slope near s=0", slope_at(c == BranchCase::elliptic ? lo : hi)}};
  if (c == BranchCase::elliptic) {
    out.push_back({"|B+1| at parabolic end", std::abs(hi.B + 1.0)});
    out.push_back({"|t-1| at parabolic end", std::abs(hi.t - 1.0)});
    out.push_back({"endpoint height", hi.y});
    out.push_back({"d", b.d ? double(*b.d) : std::numeric_limits<double>::quiet_NaN()});
  } else {
    out.push_back({"|B t^2n - 1|", std::abs(lo.B * std::pow(lo.t, 2.0 * k.n) - 1.0)});
    out.push_back({"slope at r end", slope_at(lo)});
    out.push_back({"asymptote", tracer::estimate_asymptotes(b).at(0).slope});
    out.push_back({"continued asymptote", tracer::estimate_asymptotes(beyond(k, samples)).at(0).slope});
  }
  return out;
}

Outcome criterion_convergence() {
  Outcome o;
  double worst = 0;
  std::string where;
  for (const auto& k : kKnots)
    for (auto c : cases_of(k)) {
      const auto a = reported_values(k, c, 512), b = reported_values(k, c, 1024);
      for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = std::abs(a[i].value - b[i].value);
        if (!(d < 1e-3)) o.require(false, fmt::format("{} {} {}: {:.2e}", knot_text(k), riley::case_name(c), a[i].name, d));
        if (d > worst) {
          worst = d;
          where = knot_text(k) + " " + a[i].name;
        }
      }
    }
  o.notes.push_back(fmt::format("largest change {:.1e} ({})", worst, where));
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  std::vector<int> known;
  app.add_option("--known-failures", known, "Criteria documented as failing")->delimiter(',');
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"exact identity suite", criterion_identities},
      {"matrix oracle suite", criterion_matrices},
      {"representation certificate", criterion_certificate},
      {"branch invariants", criterion_invariants},
      {"limit checks", criterion_limits},
      {"J(5,4) elliptic endpoint height 3, d = 2", criterion_elliptic_endpoint},
      {"J(-3,4) asymptote magnitudes {8, 4}", criterion_asymptotes},
      {"slope-image coverage", criterion_slope_image},
      {"interval table and mirror antisymmetry", criterion_table},
      {"Alexander suite", criterion_alexander},
      {"boundary slope -4n", criterion_boundary},
      {"convergence under sample doubling", criterion_convergence},
  };

  std::set<int> failed;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    std::string detail;
    for (const auto& n : o.notes) detail += (detail.empty() ? "" : "; ") + n;
    std::cout << fmt::format("{} {:>2} {}{}\n", o.pass ? "PASS" : "FAIL", id, criteria[i].first,
                             detail.empty() ? "" : " -- " + detail);
    if (!o.pass) failed.insert(id);
  }
  const std::set<int> expected(known.begin(), known.end());
  if (failed != expected) {
    std::cout << "failing set differs from --known-failures\n";
    return 1;
  }
  return 0;
}
