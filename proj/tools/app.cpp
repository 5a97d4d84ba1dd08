#include "app.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "dtk/error.hpp"
#include "dtk/riley.hpp"
#include "dtk/slopes.hpp"
#include "dtk/tracer.hpp"
#include "output.hpp"
#include "verify.hpp"

namespace dtk::cli {

using nlohmann::json;
using riley::BranchCase;
using riley::KnotParams;

namespace {

int exit_code_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidKnot:
    case ErrorCode::InvalidArgument:
    case ErrorCode::OutOfCase:
    case ErrorCode::OutOfRange:
      return kInvalidParameters;
    default:
      return kNumericalFailure;
  }
}

std::vector<double> split_numbers(const std::string& text, std::size_t expected, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidArgument, std::string("cannot parse ") + what + " from '" + text + "'");
    }
  }
  if (out.size() != expected)
    throw Error(ErrorCode::InvalidArgument,
                fmt::format("{} needs {} comma-separated numbers, got '{}'", what, expected, text));
  return out;
}

BranchCase parse_case(const std::string& s) {
  if (s == "elliptic") return BranchCase::elliptic;
  if (s == "hyperbolic") return BranchCase::hyperbolic;
  throw Error(ErrorCode::InvalidArgument, "unknown branch '" + s + "'");
}

BranchCase default_case(const KnotParams& k) {
  return riley::case_permitted(k, BranchCase::elliptic) ? BranchCase::elliptic : BranchCase::hyperbolic;
}

void emit(std::ostream& out, const std::string& path, const std::string& content) {
  if (path.empty())
    out << content;
  else
    write_atomic(path, content);
}

std::string interval_json_text(const slopes::SlopeInterval& i) { return i.to_string(); }

// ---------------------------------------------------------------------------

struct RileyArgs {
  int m = 0, n = 0;
  bool expand = false;
  std::string at;
  bool as_json = false;
};

int cmd_riley(const RileyArgs& a, std::ostream& out) {
  const KnotParams k = KnotParams::make(a.m, a.n);
  if (!a.at.empty()) {
    const auto v = split_numbers(a.at, 2, "--at s,T");
    const double value = riley::riley_eval(k, v[0], v[1]);
    if (a.as_json)
      out << json{{"m", k.m}, {"n", k.n}, {"s", v[0]}, {"T", v[1]}, {"value", value}}.dump() << "\n";
    else
      out << num(value) << "\n";
    return kOk;
  }
  const std::string text = riley::riley_poly(k).to_string();
  if (a.as_json)
    out << json{{"m", k.m}, {"n", k.n}, {"polynomial", text}}.dump() << "\n";
  else
    out << text << "\n";
  return kOk;
}

// ---------------------------------------------------------------------------

struct TraceArgs {
  int m = 0, n = 0;
  std::string branch;
  int samples = 512;
  std::string out_path;
  std::string format = "csv";
  bool beyond_seed = false;
  double tol = 1e-12;
};

tracer::Branch run_trace(const KnotParams& k, BranchCase c, int samples, bool beyond, double tol) {
  tracer::TraceOptions opt;
  opt.newton_tol = tol;
  if (beyond) {
    if (c != BranchCase::hyperbolic)
      throw Error(ErrorCode::CaseNotPermitted, "case not permitted: --beyond-seed continues the hyperbolic branch");
    return tracer::trace_beyond_seed(k, samples, opt);
  }
  return tracer::trace_branch(k, c, samples, opt);
}

int cmd_trace(const TraceArgs& a, std::ostream& out) {
  const KnotParams k = KnotParams::make(a.m, a.n);
  const BranchCase c = !a.branch.empty() ? parse_case(a.branch)
                       : a.beyond_seed    ? BranchCase::hyperbolic
                                          : default_case(k);
  const tracer::Branch b = run_trace(k, c, a.samples, a.beyond_seed, a.tol);
  const std::string content = a.format == "json" ? trace_json(b).dump(1) + "\n" : trace_csv(b);
  emit(out, a.out_path, content);
  return kOk;
}

// ---------------------------------------------------------------------------

struct LocusArgs {
  int m = 0, n = 0;
  std::string branch;
  int samples = 512;
  std::string format = "svg";
  std::string window;
  std::string out_path;
  bool beyond_seed = false;
  double tol = 1e-12;
};

tracer::Window default_window(BranchCase c, const std::vector<tracer::LocusPoint>& pts) {
  if (c == BranchCase::elliptic) return {-1.0, 2.0, -4.0, 4.0};
  double xm = 1.0, ym = 1.0;
  for (const auto& p : pts) {
    xm = std::max(xm, std::abs(p.x));
    ym = std::max(ym, std::abs(p.y));
  }
  xm = std::ceil(xm * 1.1);
  ym = std::ceil(ym * 1.1);
  return {-xm, xm, -ym, ym};
}

int cmd_locus(const LocusArgs& a, std::ostream& out) {
  const KnotParams k = KnotParams::make(a.m, a.n);
  const BranchCase c = !a.branch.empty() ? parse_case(a.branch)
                       : a.beyond_seed    ? BranchCase::hyperbolic
                                          : default_case(k);
  const tracer::Branch b = run_trace(k, c, a.samples, false, a.tol);
  std::vector<std::pair<std::string, std::vector<tracer::LocusPoint>>> raw;
  raw.emplace_back("primary", tracer::locus_points(b));
  if (a.beyond_seed) raw.emplace_back("beyond_seed", tracer::locus_points(run_trace(k, c, a.samples, true, a.tol)));

  tracer::Window w;
  if (a.window.empty()) {
    std::vector<tracer::LocusPoint> all;
    for (const auto& r : raw) all.insert(all.end(), r.second.begin(), r.second.end());
    w = default_window(c, all);
  } else {
    const auto v = split_numbers(a.window, 4, "--window x0,x1,y0,y1");
    w = {v[0], v[1], v[2], v[3]};
  }
  const auto mode = c == BranchCase::elliptic ? tracer::SymmetryMode::translations_and_reflection
                                              : tracer::SymmetryMode::reflection_only;
  std::vector<LocusArc> arcs;
  for (const auto& r : raw) arcs.push_back({r.first, tracer::arc_images(r.second, w, mode)});

  std::string content;
  if (a.format == "svg")
    content = locus_svg(arcs, w);
  else if (a.format == "json")
    content = locus_json(arcs, w).dump(1) + "\n";
  else
    content = locus_csv(arcs);
  emit(out, a.out_path, content);
  return kOk;
}

// ---------------------------------------------------------------------------

struct IntervalArgs {
  int m = 0, n = 0;
  bool observed = false;
  bool as_json = false;
  int samples = 512;
  double tol = 1e-12;
};

int cmd_interval(const IntervalArgs& a, std::ostream& out) {
  const KnotParams k = KnotParams::make(a.m, a.n);
  const slopes::SlopeInterval primary = slopes::orderable_interval(k);
  const auto rows = slopes::orderable_intervals(k);
  json doc;
  doc["m"] = k.m;
  doc["n"] = k.n;
  doc["theorem"] = interval_json_text(primary);
  doc["theorem_rows"] = json::array();
  for (const auto& r : rows) doc["theorem_rows"].push_back(r.to_string());

  std::vector<std::string> lines;
  lines.push_back("theorem: " + primary.to_string());
  if (rows.size() > 1) {
    std::string all;
    for (const auto& r : rows) all += (all.empty() ? "" : ", ") + r.to_string();
    lines.push_back("theorem rows: " + all);
  }

  if (a.observed) {
    // Branches are traced for n > 0; a negative n is handled through the
    // mirror, which negates every slope.
    const bool mirrored = k.n < 0;
    const KnotParams tk = mirrored ? slopes::mirror_params(k) : k;
    const double sign = mirrored ? -1.0 : 1.0;
    json obs = json::array();
    for (auto c : {BranchCase::elliptic, BranchCase::hyperbolic}) {
      if (!riley::case_permitted(tk, c)) continue;
      const tracer::Branch b = run_trace(tk, c, a.samples, false, a.tol);
      double lo = std::numeric_limits<double>::infinity(), hi = -lo;
      for (const auto& p : b.samples) {
        if (p.phase_t == 0.0) continue;
        const double v = sign * tracer::slope_fn(p);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
      json entry{{"case", riley::case_name(c)},
                 {"provenance", "observed"},
                 {"slope_min", lo},
                 {"slope_max", hi},
                 {"mirrored", mirrored}};
      lines.push_back(fmt::format("observed {} slope range: [{:.6g}, {:.6g}] (observed)", riley::case_name(c), lo, hi));
      if (c == BranchCase::elliptic) {
        if (b.d) {
          entry["d"] = *b.d;
          entry["parabolic_height"] = sign * (2 * *b.d - 1);
          entry["d_residual"] = b.d_residual;
          lines.push_back(fmt::format("observed parabolic height 2d-1: {} (observed, d = {})",
                                      static_cast<int>(sign) * (2 * *b.d - 1), *b.d));
        } else {
          entry["d"] = nullptr;
          lines.push_back("observed parabolic height: not converged");
        }
      } else {
        json asym = json::array();
        const auto add = [&](const tracer::AsymptoteEstimate& e) {
          const char* prov = e.evidence == tracer::Evidence::theorem ? "observed" : "conjectural";
          asym.push_back({{"slope", sign * e.slope}, {"residual", e.residual}, {"provenance", prov}});
          lines.push_back(fmt::format("asymptote slope: {:.6f} ({})", sign * e.slope, prov));
        };
        for (const auto& e : tracer::estimate_asymptotes(b)) add(e);
        for (const auto& e : tracer::estimate_asymptotes(run_trace(tk, c, a.samples, true, a.tol))) add(e);
        entry["asymptotes"] = std::move(asym);
      }
      obs.push_back(std::move(entry));
    }
    doc["observed"] = std::move(obs);
  }

  if (a.as_json) {
    out << doc.dump(1) << "\n";
  } else {
    for (const auto& l : lines) out << l << "\n";
  }
  return kOk;
}

// ---------------------------------------------------------------------------

struct VerifyArgs {
  std::optional<int> m, n;
  int samples = 128;
  bool seed_grid = false;
  int grid = 3;
  double tol = 1e-9;
  std::string inject_fault;
};

int cmd_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err) {
  VerifyOptions opt;
  opt.samples = a.samples;
  opt.oracle_tol = a.tol;
  opt.inject_fault = a.inject_fault;
  if (!opt.inject_fault.empty()) {
    const auto targets = fault_targets();
    if (std::find(targets.begin(), targets.end(), opt.inject_fault) == targets.end())
      throw Error(ErrorCode::InvalidArgument, "unknown fault target '" + opt.inject_fault + "'");
  }

  std::vector<KnotParams> jobs;
  if (a.seed_grid) {
    for (int m = -a.grid; m <= a.grid; ++m)
      for (int n = 1; n <= a.grid; ++n)
        if (m != 0 && m != -1) jobs.push_back({m, n});
  } else {
    if (!a.m || !a.n) throw Error(ErrorCode::InvalidArgument, "verify needs --m and --n (or --seed-grid)");
    jobs.push_back(KnotParams::make(*a.m, *a.n));
  }

  // Each (m, n) is independent; a single verification stays sequential.
  std::vector<std::future<Report>> futures;
  for (const auto& k : jobs)
    futures.push_back(std::async(std::launch::async, [k, opt] { return run_verification(k, opt); }));
  std::vector<Report> reports;
  for (auto& f : futures) reports.push_back(f.get());

  bool ok = true;
  const Check* first = nullptr;
  for (const auto& r : reports) {
    if (!r.passed()) {
      ok = false;
      if (!first) first = r.first_failure();
    }
  }
  if (a.seed_grid) {
    json doc;
    doc["passed"] = ok;
    doc["reports"] = json::array();
    for (const auto& r : reports) doc["reports"].push_back(r.to_json());
    out << doc.dump(1) << "\n";
  } else {
    out << reports.front().to_json().dump(1) << "\n";
  }
  if (!ok) {
    err << "verification failed: " << first->name << "\n";
    return kVerificationFailed;
  }
  return kOk;
}

// ---------------------------------------------------------------------------

struct BoundaryArgs {
  int m = 0, n = 0;
  bool as_json = false;
};

int cmd_boundary_slope(const BoundaryArgs& a, std::ostream& out) {
  const KnotParams k = KnotParams::make(a.m, a.n);
  const long slope = slopes::boundary_slope_seifert(k);
  const auto st = slopes::standard_cf(k);
  const auto ev = slopes::even_cf(k);
  const long second = slopes::conjectural_second_slope(k);
  if (a.as_json) {
    out << json{{"m", k.m},
                {"n", k.n},
                {"boundary_slope", slope},
                {"standard_cf", st.entries},
                {"standard_counts", {st.positive, st.negative}},
                {"even_cf", ev.entries},
                {"even_counts", {ev.positive, ev.negative}},
                {"two_bridge_fraction", slopes::two_bridge_fraction(k).get_str()},
                {"second_slope", {{"value", second}, {"provenance", "conjectural"}}}}
               .dump(1)
        << "\n";
    return kOk;
  }
  out << slope << "\n";
  out << "two-bridge fraction: " << slopes::two_bridge_fraction(k).get_str() << "\n";
  out << fmt::format("standard expansion: {} counts ({},{})\n", st.to_string(), st.positive, st.negative);
  out << fmt::format("even expansion: {} counts ({},{})\n", ev.to_string(), ev.positive, ev.negative);
  out << second << " (conjectural)\n";
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Riley polynomials, representation branches and orderable slope intervals of J(2m+1, 2n)", "dtk"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  const auto knot_opts = [](CLI::App* sub, int& m, int& n) {
    sub->add_option("--m", m, "Twist parameter m (knot J(2m+1, 2n)); m not in {0, -1}")->required();
    sub->add_option("--n", n, "Twist parameter n; n != 0")->required();
  };

  RileyArgs riley_args;
  auto* riley_cmd = app.add_subcommand("riley", "Print the expanded Riley polynomial or evaluate it");
  knot_opts(riley_cmd, riley_args.m, riley_args.n);
  riley_cmd->add_flag("--expand", riley_args.expand, "Print the exactly expanded polynomial (default)");
  riley_cmd->add_option("--at", riley_args.at, "Evaluate at s,T instead");
  riley_cmd->add_flag("--json", riley_args.as_json, "JSON output");

  TraceArgs trace_args;
  auto* trace_cmd = app.add_subcommand("trace", "Trace a real representation branch");
  knot_opts(trace_cmd, trace_args.m, trace_args.n);
  trace_cmd->add_option("--branch", trace_args.branch, "elliptic or hyperbolic (default: elliptic when permitted)")
      ->check(CLI::IsMember({"elliptic", "hyperbolic"}));
  trace_cmd->add_option("--samples", trace_args.samples, "Grid points (>= 64)")->capture_default_str();
  trace_cmd->add_option("--out", trace_args.out_path, "Output file (default: stdout)");
  trace_cmd->add_option("--format", trace_args.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  trace_cmd->add_flag("--beyond-seed", trace_args.beyond_seed,
                      "Continue the hyperbolic branch past s = 0 (exploratory, 50-digit arithmetic)");
  trace_cmd->add_option("--tol", trace_args.tol, "Newton tolerance on T")->capture_default_str();

  LocusArgs locus_args;
  auto* locus_cmd = app.add_subcommand("locus", "Extension-locus arc and its symmetry images");
  knot_opts(locus_cmd, locus_args.m, locus_args.n);
  locus_cmd->add_option("--branch", locus_args.branch, "elliptic or hyperbolic")
      ->check(CLI::IsMember({"elliptic", "hyperbolic"}));
  locus_cmd->add_option("--samples", locus_args.samples, "Grid points (>= 64)")->capture_default_str();
  locus_cmd->add_option("--format", locus_args.format, "svg, csv or json")
      ->check(CLI::IsMember({"svg", "csv", "json"}))
      ->capture_default_str();
  locus_cmd->add_option("--window", locus_args.window, "x0,x1,y0,y1 (default: fitted to the arc)");
  locus_cmd->add_option("--out", locus_args.out_path, "Output file (default: stdout)");
  locus_cmd->add_flag("--beyond-seed", locus_args.beyond_seed, "Add the exploratory continuation past s = 0");
  locus_cmd->add_option("--tol", locus_args.tol, "Newton tolerance on T")->capture_default_str();

  IntervalArgs interval_args;
  auto* interval_cmd = app.add_subcommand("interval", "Slope interval with left-orderable fillings");
  knot_opts(interval_cmd, interval_args.m, interval_args.n);
  interval_cmd->add_flag("--observed", interval_args.observed, "Also trace branches and report observed slopes");
  interval_cmd->add_option("--samples", interval_args.samples, "Trace grid points")->capture_default_str();
  interval_cmd->add_option("--tol", interval_args.tol, "Newton tolerance on T")->capture_default_str();
  interval_cmd->add_flag("--json", interval_args.as_json, "JSON output");

  VerifyArgs verify_args;
  int vm = 0, vn = 0;
  auto* verify_cmd = app.add_subcommand("verify", "Run the oracle suite; exit 1 naming the first failed check");
  auto* vm_opt = verify_cmd->add_option("--m", vm, "Twist parameter m");
  auto* vn_opt = verify_cmd->add_option("--n", vn, "Twist parameter n");
  verify_cmd->add_option("--samples", verify_args.samples, "Trace grid points per branch")->capture_default_str();
  verify_cmd->add_flag("--seed-grid", verify_args.seed_grid,
                       "Verify every valid (m, n) with |m|, n <= --grid, concurrently");
  verify_cmd->add_option("--grid", verify_args.grid, "Grid radius for --seed-grid")->capture_default_str();
  verify_cmd->add_option("--tol", verify_args.tol, "Relative tolerance of the matrix oracles")->capture_default_str();
  verify_cmd->add_option("--inject-fault", verify_args.inject_fault, "Corrupt the named check (self-test)")
      ->group("");

  BoundaryArgs boundary_args;
  auto* boundary_cmd = app.add_subcommand("boundary-slope", "Seifert-surface boundary slope for m < -1, n > 0");
  knot_opts(boundary_cmd, boundary_args.m, boundary_args.n);
  boundary_cmd->add_flag("--json", boundary_args.as_json, "JSON output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInvalidParameters;
  }

  try {
    if (*riley_cmd) return cmd_riley(riley_args, out);
    if (*trace_cmd) return cmd_trace(trace_args, out);
    if (*locus_cmd) return cmd_locus(locus_args, out);
    if (*interval_cmd) return cmd_interval(interval_args, out);
    if (*verify_cmd) {
      if (*vm_opt) verify_args.m = vm;
      if (*vn_opt) verify_args.n = vn;
      return cmd_verify(verify_args, out, err);
    }
    if (*boundary_cmd) return cmd_boundary_slope(boundary_args, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kNumericalFailure;
  }
  return kInvalidParameters;
}

}  // namespace dtk::cli
