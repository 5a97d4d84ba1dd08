#include "output.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <system_error>

#include <fmt/format.h>
#include <unistd.h>

#include "dtk/error.hpp"

namespace dtk::cli {

using nlohmann::json;

void write_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += fmt::format(".tmp.{}", static_cast<long>(::getpid()));
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw Error(ErrorCode::InvalidArgument, "cannot open " + tmp.string() + " for writing");
    os << content;
    os.flush();
    if (!os) throw Error(ErrorCode::InvalidArgument, "failed writing " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw Error(ErrorCode::InvalidArgument, "cannot rename onto " + path + ": " + ec.message());
  }
}

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return fmt::format("{:.17g}", v);
}

namespace {

double safe_slope(const tracer::BranchSample& p) {
  return p.phase_t == 0.0 ? std::nan("") : tracer::slope_fn(p);
}

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

std::string trace_csv(const tracer::Branch& b) {
  std::string out = std::string(kTraceHeader) + "\n";
  for (const auto& p : b.samples) {
    out += fmt::format("{},{},{},{},{},{},{},{},{}\n", num(p.s), num(p.T), num(p.t.real()), num(p.t.imag()),
                       num(p.B.real()), num(p.B.imag()), num(p.x), num(p.y), num(safe_slope(p)));
  }
  return out;
}

json branch_metadata(const tracer::Branch& b) {
  json meta;
  meta["m"] = b.knot.m;
  meta["n"] = b.knot.n;
  meta["case"] = riley::case_name(b.branch);
  meta["segment"] = b.segment == tracer::Segment::primary ? "primary" : "beyond_seed";
  meta["d"] = b.d ? json(*b.d) : json(nullptr);
  meta["d_residual"] = finite_or_null(b.d_residual);
  meta["d_tolerance"] = 0.2;
  meta["s_low"] = b.s_low;
  meta["s_high"] = b.s_high;
  meta["singular_end"] = finite_or_null(b.singular_end);
  meta["seed_T"] = b.seed_T;
  meta["bracket_constants"] = {{"lower", b.constants.lower}, {"upper", b.constants.upper}};
  meta["sample_count"] = b.samples.size();
  return meta;
}

json trace_json(const tracer::Branch& b) {
  json doc = branch_metadata(b);
  json rows = json::array();
  for (const auto& p : b.samples) {
    rows.push_back({{"s", p.s},
                    {"T", p.T},
                    {"re_t", p.t.real()},
                    {"im_t", p.t.imag()},
                    {"re_B", p.B.real()},
                    {"im_B", p.B.imag()},
                    {"x", p.x},
                    {"y", p.y},
                    {"phase_t", p.phase_t},
                    {"phase_B", p.phase_B},
                    {"slope", finite_or_null(safe_slope(p))}});
  }
  doc["samples"] = std::move(rows);
  return doc;
}

std::string locus_csv(const std::vector<LocusArc>& arcs) {
  std::string out = "x,y,i,j,eps,shift,segment\n";
  for (const auto& arc : arcs)
    for (const auto& img : arc.images)
      for (const auto& p : img.points)
        out += fmt::format("{},{},{},{},{},{},{}\n", num(p.x), num(p.y), p.i, p.j, img.eps, img.shift, arc.segment);
  return out;
}

json locus_json(const std::vector<LocusArc>& arcs, const tracer::Window& w) {
  json doc;
  doc["window"] = {finite_or_null(w.x0), finite_or_null(w.x1), finite_or_null(w.y0), finite_or_null(w.y1)};
  json images = json::array();
  for (const auto& arc : arcs) {
    for (const auto& img : arc.images) {
      json pts = json::array();
      for (const auto& p : img.points) pts.push_back({{"x", p.x}, {"y", p.y}, {"i", p.i}, {"j", p.j}});
      images.push_back({{"segment", arc.segment}, {"eps", img.eps}, {"shift", img.shift}, {"points", std::move(pts)}});
    }
  }
  doc["arcs"] = std::move(images);
  return doc;
}

namespace {

double nice_step(double span) {
  if (!(span > 0)) return 1.0;
  const double raw = span / 8.0;
  const double p = std::pow(10.0, std::floor(std::log10(raw)));
  for (double f : {1.0, 2.0, 5.0, 10.0})
    if (f * p >= raw) return f * p;
  return 10.0 * p;
}

std::string fmt_coord(double v) { return fmt::format("{:.3f}", v); }

}  // namespace

std::string locus_svg(const std::vector<LocusArc>& arcs, const tracer::Window& w) {
  constexpr double W = 640, H = 480, pad = 40;
  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">\n",
      W, H, W, H);
  out += fmt::format("<rect x=\"0\" y=\"0\" width=\"{}\" height=\"{}\" fill=\"white\"/>\n", W, H);

  const bool usable = std::isfinite(w.x0) && std::isfinite(w.x1) && std::isfinite(w.y0) && std::isfinite(w.y1) &&
                      w.x1 > w.x0 && w.y1 > w.y0;
  if (!usable) {
    out += "</svg>\n";
    return out;
  }
  const auto px = [&](double x) { return pad + (x - w.x0) / (w.x1 - w.x0) * (W - 2 * pad); };
  const auto py = [&](double y) { return H - pad - (y - w.y0) / (w.y1 - w.y0) * (H - 2 * pad); };

  out += "<g stroke=\"#888\" stroke-width=\"1\">\n";
  if (w.y0 <= 0 && 0 <= w.y1)
    out += fmt::format("<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>\n", fmt_coord(px(w.x0)), fmt_coord(py(0)),
                       fmt_coord(px(w.x1)), fmt_coord(py(0)));
  if (w.x0 <= 0 && 0 <= w.x1)
    out += fmt::format("<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>\n", fmt_coord(px(0)), fmt_coord(py(w.y0)),
                       fmt_coord(px(0)), fmt_coord(py(w.y1)));
  out += "</g>\n";

  out += "<g font-family=\"sans-serif\" font-size=\"10\" fill=\"#444\">\n";
  const double sx = nice_step(w.x1 - w.x0), sy = nice_step(w.y1 - w.y0);
  for (double x = std::ceil(w.x0 / sx) * sx; x <= w.x1 + 1e-12; x += sx)
    out += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n", fmt_coord(px(x)),
                       fmt_coord(H - pad + 14), fmt::format("{:g}", std::abs(x) < 1e-12 ? 0.0 : x));
  for (double y = std::ceil(w.y0 / sy) * sy; y <= w.y1 + 1e-12; y += sy)
    out += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"end\">{}</text>\n", fmt_coord(pad - 4),
                       fmt_coord(py(y) + 3), fmt::format("{:g}", std::abs(y) < 1e-12 ? 0.0 : y));
  out += "</g>\n";

  for (const auto& arc : arcs) {
    const char* colour = arc.segment == "primary" ? "#1f4e9c" : "#b5471b";
    for (const auto& img : arc.images) {
      out += fmt::format("<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\" data-eps=\"{}\" data-shift=\"{}\" points=\"",
                         colour, img.eps, img.shift);
      bool first = true;
      for (const auto& p : img.points) {
        if (!first) out += ' ';
        first = false;
        out += fmt_coord(px(p.x)) + "," + fmt_coord(py(p.y));
      }
      out += "\"/>\n";
    }
  }
  out += "</svg>\n";
  return out;
}

}  // namespace dtk::cli
