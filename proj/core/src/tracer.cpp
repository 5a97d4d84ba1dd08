#include "dtk/tracer.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "dtk/error.hpp"
#include "dtk/recurrences.hpp"
#include "dtk/rep.hpp"

namespace dtk::tracer {

namespace {

constexpr double kPi = std::numbers::pi;

// Geometric grid in the distance from the singular end: distances
// standoff*L .. (1 - standoff)*L, returned in increasing order.
std::vector<double> graded_distances(double L, int samples, double standoff) {
  std::vector<double> out(samples);
  const double lo = standoff * L;
  const double ratio = std::pow((1.0 - standoff) / standoff, 1.0 / (samples - 1));
  for (int i = 0; i < samples; ++i) out[i] = lo * std::pow(ratio, i);
  out.back() = (1.0 - standoff) * L;
  return out;
}

struct Solver {
  KnotParams k;
  BranchCase c;
  riley::BracketConstants C;
  TraceOptions opt;

  // Newton in D = T - s - 2 from `guess`. Empty on failure to converge or on
  // leaving the bracket.
  std::optional<double> newton(double s, double guess, const riley::BranchBracket& br) const {
    double D = guess;
    for (int it = 0; it < opt.max_newton; ++it) {
      const auto [v, dv] = rec::riley_value_and_dD<double>(k.m, k.n, s, D);
      if (dv == 0.0 || !std::isfinite(dv)) return std::nullopt;
      const double step = v / dv;
      D -= step;
      if (!std::isfinite(D)) return std::nullopt;
      if (std::abs(step) <= opt.newton_tol * std::max(1.0, std::abs(D))) {
        const double T = D + s + 2.0;
        if (!br.contains(T)) return std::nullopt;
        return D;
      }
    }
    return std::nullopt;
  }

  std::optional<double> bisection(double s, const riley::BranchBracket& br) const {
    double lo = br.T_low - s - 2.0, hi = br.T_high - s - 2.0;
    const auto phi = [&](double D) { return rec::riley_value_shifted<double>(k.m, k.n, s, D); };
    double flo = phi(lo);
    const double fhi = phi(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo < 0) == (fhi < 0)) return std::nullopt;
    for (int it = 0; it < 200 && hi - lo > opt.newton_tol * std::max(1.0, std::abs(lo)); ++it) {
      const double mid = 0.5 * (lo + hi);
      const double fm = phi(mid);
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

  BranchSample make_sample(double s, double D, const BranchSample& prev) const {
    BranchSample p;
    p.s = s;
    p.T = D + s + 2.0;
    if (c == BranchCase::elliptic) {
      if (!(p.T > -2.0 && p.T < 2.0))
        throw NumericalError(ErrorCode::ContinuationStall, "elliptic branch left -2 < T < 2", s);
      const double theta = std::acos(p.T / 2.0);
      p.t = std::polar(1.0, theta);
      p.B = rep::holonomy_B(k.m, k.n, s, p.t);
      p.phase_t = theta;
      p.phase_B = prev.phase_B + std::arg(p.B / prev.B);
      p.x = p.phase_t / (2.0 * kPi);
      p.y = p.phase_B / kPi;
    } else {
      if (!(p.T > 2.0))
        throw NumericalError(ErrorCode::ContinuationStall, "hyperbolic branch left T > 2", s);
      const double t = 0.5 * (p.T + std::sqrt(p.T * p.T - 4.0));
      p.t = t;
      p.B = rep::holonomy_B(k.m, k.n, s, p.t);
      if (!(p.B.real() > 0.0))
        throw NumericalError(ErrorCode::ContinuationStall, "hyperbolic holonomy B is not positive", s);
      p.B = p.B.real();
      p.phase_t = std::log(t);
      p.phase_B = std::log(p.B.real());
      p.x = 0.5 * p.phase_t;
      p.y = p.phase_B;
    }
    return p;
  }

  double D_of(const BranchSample& p) const { return p.T - p.s - 2.0; }

  // Advances from `prev` to parameter `s`, halving the step whenever Newton
  // fails, leaves the bracket, or the phase of B jumps by the unwrap threshold
  // or more. Every intermediate point is appended to `out`.
  void advance(const BranchSample& prev, double s, std::vector<BranchSample>& out) const {
    const riley::BranchBracket br = riley::bracket_at(k, s, c, C);
    std::optional<double> D = newton(s, D_of(prev), br);
    const bool at_floor = std::abs(s - prev.s) <= opt.refine_floor;
    if (D) {
      const BranchSample p = make_sample(s, *D, prev);
      if (std::abs(p.phase_B - prev.phase_B) < opt.unwrap_threshold) {
        out.push_back(p);
        return;
      }
      if (at_floor)
        throw NumericalError(ErrorCode::UnwrapViolation,
                             "phase of B jumps by more than the unwrap threshold at the refinement floor", s);
    } else if (at_floor) {
      D = bisection(s, br);
      if (!D)
        throw NumericalError(ErrorCode::ContinuationStall,
                             "Newton and bracket bisection both failed", s);
      const BranchSample p = make_sample(s, *D, prev);
      if (std::abs(p.phase_B - prev.phase_B) >= opt.unwrap_threshold)
        throw NumericalError(ErrorCode::UnwrapViolation,
                             "phase of B jumps by more than the unwrap threshold at the refinement floor", s);
      out.push_back(p);
      return;
    }
    const double mid = 0.5 * (prev.s + s);
    advance(prev, mid, out);
    const BranchSample mid_sample = out.back();
    advance(mid_sample, s, out);
  }
};

}  // namespace

Branch trace_branch(const KnotParams& k, BranchCase c, int samples, const TraceOptions& opt) {
  riley::validate(k);
  if (!riley::case_permitted(k, c))
    throw Error(ErrorCode::CaseNotPermitted, std::string("case not permitted: no ") + riley::case_name(c) +
                                                 " branch for (m, n) = (" + std::to_string(k.m) + ", " +
                                                 std::to_string(k.n) + ")");
  if (samples < 64) throw Error(ErrorCode::InvalidArgument, "trace_branch needs at least 64 samples");

  Branch b;
  b.knot = k;
  b.branch = c;
  b.constants = riley::bracket_constants(k, c);
  b.seed_T = riley::alexander_seed(k, c);
  const Solver solver{k, c, b.constants, opt};

  // Virtual starting point at s = 0: the abelian limit, where B = 1.
  BranchSample seed;
  seed.s = 0.0;
  seed.T = b.seed_T;
  seed.B = 1.0;
  seed.phase_B = 0.0;

  std::vector<double> grid;  // processing order: moving away from s = 0
  if (c == BranchCase::elliptic) {
    b.singular_end = riley::parabolic_endpoint(k);
    const double L = b.singular_end;
    const auto dist = graded_distances(L, samples, opt.standoff);
    for (auto it = dist.rbegin(); it != dist.rend(); ++it) grid.push_back(L - *it);
    b.s_low = grid.front();
    b.s_high = grid.back();
  } else {
    b.singular_end = poly::largest_root_f(k.m);
    const double r = b.singular_end;
    const auto dist = graded_distances(-r, samples, opt.standoff);
    for (auto it = dist.rbegin(); it != dist.rend(); ++it) grid.push_back(r + *it);
    b.s_low = grid.back();
    b.s_high = grid.front();
  }

  std::vector<BranchSample> out;
  out.reserve(grid.size() + grid.size() / 8);
  for (double s : grid) {
    const BranchSample prev = out.empty() ? seed : out.back();
    solver.advance(prev, s, out);
  }
  std::sort(out.begin(), out.end(), [](const BranchSample& a, const BranchSample& z) { return a.s < z.s; });
  b.samples = std::move(out);

  if (c == BranchCase::elliptic) {
    try {
      const Winding w = winding_integer(b);
      b.d = w.d;
      b.d_residual = w.residual;
    } catch (const Error&) {
      b.d.reset();
    }
  }
  return b;
}

Branch trace_beyond_seed(const KnotParams& k, int samples, const TraceOptions& opt) {
  using R = boost::multiprecision::cpp_bin_float_50;
  riley::validate(k);
  if (!riley::case_permitted(k, BranchCase::hyperbolic))
    throw Error(ErrorCode::CaseNotPermitted, "case not permitted: no hyperbolic branch for (m, n) = (" +
                                                 std::to_string(k.m) + ", " + std::to_string(k.n) + ")");
  if (samples < 64) throw Error(ErrorCode::InvalidArgument, "trace_beyond_seed needs at least 64 samples");

  Branch b;
  b.knot = k;
  b.branch = BranchCase::hyperbolic;
  b.segment = Segment::beyond_seed;
  b.constants = riley::bracket_constants(k, BranchCase::hyperbolic);
  b.seed_T = riley::alexander_seed(k, BranchCase::hyperbolic);
  b.singular_end = std::numeric_limits<double>::infinity();

  const double s_lo = opt.standoff, s_hi = opt.beyond_seed_s_max;
  b.s_low = s_lo;
  b.s_high = s_hi;
  const R tol = R(1e-40);

  const auto newton = [&](const R& s, const R& guess) -> std::optional<R> {
    R D = guess;
    for (int it = 0; it < 2 * opt.max_newton; ++it) {
      const auto [v, dv] = rec::riley_value_and_dD<R>(k.m, k.n, s, D);
      if (dv == 0) return std::nullopt;
      const R step = v / dv;
      D -= step;
      if (abs(step) <= tol * std::max(R(1), R(abs(D)))) return D;
    }
    return std::nullopt;
  };

  // Accept a step only if T stays above 2 and D moves by less than half its size.
  const auto accept = [&](const R& s, const R& D, const R& D_prev) {
    const R T = D + s + 2;
    return T > 2 && abs(D - D_prev) <= R(0.5) * std::max(R(abs(D_prev)), R(1e-3));
  };

  struct State {
    R s, D;
  };
  std::vector<State> states;
  const auto step_to = [&](auto&& self, const State& prev, const R& s) -> void {
    const auto D = newton(s, prev.D);
    if (D && accept(s, *D, prev.D)) {
      states.push_back({s, *D});
      return;
    }
    if (abs(s - prev.s) <= R(opt.refine_floor))
      throw NumericalError(ErrorCode::ContinuationStall, "continuation beyond the seed stalled",
                           static_cast<double>(s));
    const R mid = (prev.s + s) / 2;
    self(self, prev, mid);
    const State m = states.back();
    self(self, m, s);
  };

  State prev{R(0), R(b.seed_T) - 2};
  const R ratio = pow(R(s_hi) / R(s_lo), R(1) / R(samples - 1));
  R s = s_lo;
  for (int i = 0; i < samples; ++i) {
    if (i == samples - 1) s = R(s_hi);
    step_to(step_to, prev, s);
    prev = states.back();
    s *= ratio;
  }

  for (const State& st : states) {
    const R T = st.D + st.s + 2;
    const R t = (T + sqrt(T * T - 4)) / 2;
    const R g = rec::g_value<R>(k.m, st.s);
    const R gp = rec::g_value<R>(k.m - 1, st.s);
    const R B = (g - t * gp) / (gp - t * g) * pow(t, R(-2 * k.n));
    if (!(B > 0))
      throw NumericalError(ErrorCode::ContinuationStall, "holonomy B is not positive beyond the seed",
                           static_cast<double>(st.s));
    BranchSample p;
    p.s = static_cast<double>(st.s);
    p.T = static_cast<double>(T);
    p.t = static_cast<double>(t);
    p.B = static_cast<double>(B);
    p.phase_t = static_cast<double>(log(t));
    p.phase_B = static_cast<double>(log(B));
    p.x = 0.5 * p.phase_t;
    p.y = p.phase_B;
    b.samples.push_back(p);
  }
  return b;
}

std::vector<LocusPoint> locus_points(const Branch& b) {
  std::vector<LocusPoint> out;
  out.reserve(b.samples.size());
  for (const auto& p : b.samples) out.push_back({p.x, p.y, 0, 0});
  return out;
}

namespace {

// Integer shifts k for which some x*eps + k can land in [x0, x1].
std::pair<long, long> shift_range(const std::vector<LocusPoint>& arc, const Window& w, int eps) {
  if (!std::isfinite(w.x0) || !std::isfinite(w.x1))
    throw Error(ErrorCode::InvalidArgument, "translation symmetry needs a finite x window");
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (const auto& p : arc) {
    lo = std::min(lo, eps * p.x);
    hi = std::max(hi, eps * p.x);
  }
  return {static_cast<long>(std::floor(w.x0 - hi)), static_cast<long>(std::ceil(w.x1 - lo))};
}

}  // namespace

std::vector<ArcImage> arc_images(const std::vector<LocusPoint>& arc, const Window& w, SymmetryMode mode) {
  std::vector<ArcImage> out;
  if (arc.empty()) return out;
  for (int eps : {1, -1}) {
    long k0 = 0, k1 = 0;
    if (mode == SymmetryMode::translations_and_reflection) std::tie(k0, k1) = shift_range(arc, w, eps);
    for (long shift = k0; shift <= k1; ++shift) {
      ArcImage img{eps, static_cast<int>(shift), {}};
      for (const auto& p : arc) {
        const double x = eps * p.x + shift, y = eps * p.y;
        if (w.contains(x, y)) img.points.push_back({x, y, p.i, p.j});
      }
      if (!img.points.empty()) out.push_back(std::move(img));
    }
  }
  return out;
}

std::vector<LocusPoint> locus_symmetries(const std::vector<LocusPoint>& points, const Window& w,
                                         SymmetryMode mode) {
  std::vector<LocusPoint> out;
  for (auto& img : arc_images(points, w, mode))
    out.insert(out.end(), img.points.begin(), img.points.end());
  return out;
}

double slope_fn(const BranchSample& p) {
  if (p.phase_t == 0.0) throw NumericalError(ErrorCode::DivisionByZero, "slope undefined at phase_t = 0", p.s);
  return -p.phase_B / (0.5 * p.phase_t);
}

namespace {

AsymptoteEstimate fit_line(const std::vector<BranchSample>& pts, std::size_t begin, std::size_t count) {
  double sx = 0, sy = 0;
  for (std::size_t i = begin; i < begin + count; ++i) {
    sx += pts[i].x;
    sy += pts[i].y;
  }
  const double mx = sx / count, my = sy / count;
  double sxx = 0, sxy = 0;
  for (std::size_t i = begin; i < begin + count; ++i) {
    sxx += (pts[i].x - mx) * (pts[i].x - mx);
    sxy += (pts[i].x - mx) * (pts[i].y - my);
  }
  if (sxx == 0.0) throw Error(ErrorCode::InsufficientTail, "degenerate asymptote window (constant x)");
  AsymptoteEstimate e;
  e.slope = sxy / sxx;
  double ss = 0;
  for (std::size_t i = begin; i < begin + count; ++i) {
    const double r = pts[i].y - (my + e.slope * (pts[i].x - mx));
    ss += r * r;
  }
  e.residual = std::sqrt(ss / count);
  e.points = count;
  return e;
}

}  // namespace

std::vector<AsymptoteEstimate> estimate_asymptotes(const Branch& b) {
  std::vector<AsymptoteEstimate> out;
  if (b.branch == BranchCase::elliptic) return out;
  const std::size_t N = b.samples.size();
  const std::size_t window = N / 10;
  if (window < 8)
    throw Error(ErrorCode::InsufficientTail, "asymptote window has " + std::to_string(window) + " < 8 samples");
  if (b.segment == Segment::primary) {
    AsymptoteEstimate e = fit_line(b.samples, 0, window);
    e.side = Side::low_s;
    e.evidence = Evidence::theorem;
    out.push_back(e);
  } else {
    AsymptoteEstimate e = fit_line(b.samples, N - window, window);
    e.side = Side::high_s;
    e.evidence = Evidence::conjectural;
    out.push_back(e);
  }
  return out;
}

Winding winding_integer(const Branch& b) {
  if (b.branch != BranchCase::elliptic || b.samples.empty())
    throw Error(ErrorCode::InvalidArgument, "winding integer needs an elliptic trace");
  const BranchSample& last = b.samples.back();
  if (std::abs(b.singular_end - last.s) > 1e-4)
    throw NumericalError(ErrorCode::NotConverged, "trace stops short of the parabolic endpoint", last.s);
  Winding w;
  w.d = static_cast<int>(std::lround(last.phase_B / (2.0 * kPi) + 0.5));
  w.residual = std::abs(last.phase_B - (2.0 * w.d - 1.0) * kPi);
  if (w.residual > 0.2)
    throw NumericalError(ErrorCode::NotConverged,
                         "phase of B is " + std::to_string(w.residual) + " away from an odd multiple of pi",
                         last.s);
  return w;
}

}  // namespace dtk::tracer
