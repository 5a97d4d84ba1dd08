#pragma once

// Serialisation of traces and loci: CSV, JSON and a deterministic SVG.

#include <string>
#include <vector>

#include <json.hpp>

#include "dtk/tracer.hpp"

namespace dtk::cli {

/// Writes `content` to `path` through a temporary file in the same directory
/// and an atomic rename.
void write_atomic(const std::string& path, const std::string& content);

/// 17 significant digits; "inf", "-inf", "nan" for non-finite values.
std::string num(double v);

inline constexpr const char* kTraceHeader = "s,T,re_t,im_t,re_B,im_B,x,y,slope";

std::string trace_csv(const tracer::Branch& b);
nlohmann::json branch_metadata(const tracer::Branch& b);
nlohmann::json trace_json(const tracer::Branch& b);

struct LocusArc {
  std::string segment;  // "primary" or "beyond_seed"
  std::vector<tracer::ArcImage> images;
};

std::string locus_csv(const std::vector<LocusArc>& arcs);
nlohmann::json locus_json(const std::vector<LocusArc>& arcs, const tracer::Window& w);
/// One polyline per arc image, plus axes and tick labels, viewBox fixed by the window.
std::string locus_svg(const std::vector<LocusArc>& arcs, const tracer::Window& w);

}  // namespace dtk::cli
