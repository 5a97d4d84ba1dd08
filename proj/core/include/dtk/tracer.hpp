#pragma once

// Continuation of the distinguished real branch of the Riley polynomial in s,
// with the holonomy B_s, unwrapped phases, extension-locus coordinates, the
// slope function and asymptote / winding-number extraction.

#include <complex>
#include <limits>
#include <numbers>
#include <optional>
#include <vector>

#include "dtk/riley.hpp"

namespace dtk::tracer {

using riley::BranchCase;
using riley::KnotParams;
using cplx = std::complex<double>;

struct BranchSample {
  double s = 0.0;
  double T = 0.0;
  cplx t;        // e^{i theta} (elliptic) or real > 1 (hyperbolic)
  cplx B;        // holonomy of the longitude
  double x = 0.0;
  double y = 0.0;
  double phase_t = 0.0;  // unwrapped arg t (elliptic) or ln t (hyperbolic)
  double phase_B = 0.0;  // unwrapped arg B (elliptic) or ln B (hyperbolic)
};

/// Which part of the branch a trace covers. `primary` is the interval where
/// the branch is proved to exist; `beyond_seed` continues the hyperbolic branch
/// past the s = 0 seed into s > 0 and is exploratory only.
enum class Segment { primary, beyond_seed };

struct Branch {
  KnotParams knot;
  BranchCase branch = BranchCase::elliptic;
  Segment segment = Segment::primary;
  std::vector<BranchSample> samples;  // ascending in s
  std::optional<int> d;               // elliptic winding integer, when converged
  double d_residual = std::numeric_limits<double>::quiet_NaN();
  double s_low = 0.0;        // open parameter interval traced
  double s_high = 0.0;
  double singular_end = 0.0;  // parabolic endpoint (elliptic) or r_{f_m} (hyperbolic)
  double seed_T = 0.0;        // Alexander seed at s = 0
  riley::BracketConstants constants;
};

struct TraceOptions {
  double standoff = 1e-6;          // relative distance kept from open endpoints
  double newton_tol = 1e-12;       // relative step tolerance on T - s - 2
  int max_newton = 40;
  double refine_floor = 1e-9;      // smallest parameter step during refinement
  double unwrap_threshold = std::numbers::pi / 4;
  double beyond_seed_s_max = 1e4;  // upper end of the exploratory continuation
};

/// Traces the bracket branch with `samples` grid points (>= 64) graded
/// geometrically towards the singular end. Adaptive refinement may add points.
/// Throws CaseNotPermitted, SeedFailure, ContinuationStall, UnwrapViolation.
Branch trace_branch(const KnotParams& k, BranchCase c, int samples, const TraceOptions& opt = {});

/// Continues the hyperbolic branch through s = 0 into s in [standoff, s_max],
/// grid geometric in s, in 50-digit arithmetic (the holonomy there cancels to
/// roughly s^{-2n}). The result has segment = beyond_seed.
Branch trace_beyond_seed(const KnotParams& k, int samples, const TraceOptions& opt = {});

struct LocusPoint {
  double x = 0.0;
  double y = 0.0;
  int i = 0;  // component indices of the extension locus
  int j = 0;
};

std::vector<LocusPoint> locus_points(const Branch& b);

struct Window {
  double x0 = -std::numeric_limits<double>::infinity();
  double x1 = std::numeric_limits<double>::infinity();
  double y0 = -std::numeric_limits<double>::infinity();
  double y1 = std::numeric_limits<double>::infinity();

  bool contains(double x, double y) const noexcept { return x >= x0 && x <= x1 && y >= y0 && y <= y1; }
};

enum class SymmetryMode {
  translations_and_reflection,  // (x, y) -> (x + k, y) and (x, y) -> (-x, -y)
  reflection_only,              // (x, y) -> (-x, -y)
};

/// One image of an arc under x -> eps x + shift, y -> eps y, clipped to the window.
struct ArcImage {
  int eps = 1;
  int shift = 0;
  std::vector<LocusPoint> points;
};

/// All images of the arc with at least one point inside the window.
std::vector<ArcImage> arc_images(const std::vector<LocusPoint>& arc, const Window& w,
                                 SymmetryMode mode = SymmetryMode::translations_and_reflection);

/// Closure of the point set under the symmetries, restricted to the window.
std::vector<LocusPoint> locus_symmetries(const std::vector<LocusPoint>& points, const Window& w,
                                         SymmetryMode mode = SymmetryMode::translations_and_reflection);

/// -phase_B / (phase_t / 2). Throws DivisionByZero when phase_t = 0.
double slope_fn(const BranchSample& p);

enum class Side { low_s, high_s };
enum class Evidence { theorem, conjectural };

struct AsymptoteEstimate {
  double slope = 0.0;
  Side side = Side::low_s;
  double residual = 0.0;  // RMS deviation of the fitted points from the line
  Evidence evidence = Evidence::theorem;
  std::size_t points = 0;
};

/// Least-squares fit of y against x over the outer 10% of samples at each
/// unbounded end of the arc: the s -> r_{f_m} end of a primary hyperbolic
/// trace, the s -> infinity end of a beyond-seed trace. Elliptic arcs are
/// bounded and give no estimate. Throws InsufficientTail below 8 points.
std::vector<AsymptoteEstimate> estimate_asymptotes(const Branch& b);

struct Winding {
  int d = 0;
  double residual = 0.0;  // |phase_B - (2d - 1) pi| at the last sample
};

/// d = round(phase_B / (2 pi) + 1/2) at the s -> s_0 end of an elliptic trace.
/// Throws NotConverged if the residual exceeds 0.2 or the trace stops short of
/// the endpoint by more than 1e-4.
Winding winding_integer(const Branch& b);

}  // namespace dtk::tracer
