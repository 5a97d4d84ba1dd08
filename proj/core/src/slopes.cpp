#include "dtk/slopes.hpp"

#include <cmath>
#include <sstream>

#include "dtk/error.hpp"

namespace dtk::slopes {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string format_endpoint(double v) {
  if (v == kInf) return "inf";
  if (v == -kInf) return "-inf";
  std::ostringstream os;
  os << v;
  return os.str();
}

std::string params_text(const KnotParams& k) {
  return "(m, n) = (" + std::to_string(k.m) + ", " + std::to_string(k.n) + ")";
}

}  // namespace

char const* provenance_name(Provenance p) noexcept {
  switch (p) {
    case Provenance::theorem: return "theorem";
    case Provenance::observed: return "observed";
    case Provenance::conjectural: return "conjectural";
  }
  return "?";
}

SlopeInterval SlopeInterval::negate() const {
  SlopeInterval r = *this;
  r.low = high == 0.0 ? 0.0 : -high;
  r.high = low == 0.0 ? 0.0 : -low;
  r.low_closed = high_closed;
  r.high_closed = low_closed;
  return r;
}

bool SlopeInterval::contains(double r) const noexcept {
  const bool above = low_closed ? r >= low : r > low;
  const bool below = high_closed ? r <= high : r < high;
  return above && below;
}

std::string SlopeInterval::to_string() const {
  return std::string(low_closed ? "[" : "(") + format_endpoint(low) + ", " + format_endpoint(high) +
         (high_closed ? "]" : ")");
}

std::vector<SlopeInterval> orderable_intervals(const KnotParams& k) {
  riley::validate(k);
  const int m = k.m, n = k.n;
  std::vector<SlopeInterval> out;
  if ((m > 0 && n > 0) || (m < -1 && n > 1)) out.push_back({-kInf, 1.0, false, false, Provenance::theorem});
  if ((m < -1 && n < 0) || (m > 0 && n < -1)) out.push_back({-1.0, kInf, false, false, Provenance::theorem});
  if (m < -1 && n > 0) out.push_back({0.0, 4.0 * n, true, false, Provenance::theorem});
  if (m > 0 && n < 0) out.push_back({4.0 * n, 0.0, false, true, Provenance::theorem});
  return out;
}

SlopeInterval orderable_interval(const KnotParams& k) {
  const auto rows = orderable_intervals(k);
  if (rows.empty()) throw Error(ErrorCode::OutOfCase, "no interval row applies to " + params_text(k));
  for (const auto& r : rows)
    if (std::isfinite(r.low) && std::isfinite(r.high)) return r;
  return rows.front();
}

KnotParams mirror_params(const KnotParams& k) { return {-k.m - 1, -k.n}; }

mpq_class two_bridge_fraction(const KnotParams& k) {
  riley::validate(k);
  mpq_class q(2 * k.n, (2 * k.m + 1) * 2 * k.n + 1);
  q.canonicalize();
  return q;
}

mpq_class ContinuedFraction::value() const {
  if (entries.empty()) throw Error(ErrorCode::InvalidArgument, "empty continued fraction");
  // Innermost first: x_k = a_k, x_i = a_i + 1/x_{i+1}; value = 1/x_1.
  mpq_class x = 0;
  for (std::size_t j = entries.size(); j-- > 0;) {
    const long a = (j % 2 == 0) ? entries[j] : -entries[j];
    x = (j + 1 == entries.size()) ? mpq_class(a) : mpq_class(a) + 1 / x;
  }
  mpq_class v = 1 / x;
  v.canonicalize();
  return v;
}

std::string ContinuedFraction::to_string() const {
  std::string out = "[";
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(entries[i]);
  }
  return out + "]";
}

namespace {

void count_signs(ContinuedFraction& cf) {
  cf.positive = cf.negative = 0;
  for (long e : cf.entries) (e > 0 ? cf.positive : cf.negative) += 1;
}

}  // namespace

ContinuedFraction standard_cf(const KnotParams& k) {
  riley::validate(k);
  if (k.m >= -1)
    throw Error(ErrorCode::OutOfCase, "standard expansion is only worked out for m < -1, got " + params_text(k));
  ContinuedFraction cf;
  cf.entries = {2L * k.m + 1, -2L * k.n};
  cf.convention = CfConvention::standard;
  count_signs(cf);
  return cf;
}

ContinuedFraction even_cf(const KnotParams& k) {
  riley::validate(k);
  if (k.m >= -1 || k.n <= 0)
    throw Error(ErrorCode::OutOfCase, "even expansion is only worked out for m < -1, n > 0, got " + params_text(k));
  ContinuedFraction cf;
  cf.entries.push_back(2L * k.m + 2);
  for (int i = 0; i < 2 * k.n - 1; ++i) cf.entries.push_back(2);
  cf.convention = CfConvention::even;
  count_signs(cf);
  return cf;
}

long boundary_slope_seifert(const KnotParams& k) {
  const ContinuedFraction st = standard_cf(k);
  const ContinuedFraction ev = even_cf(k);
  return 2L * ((st.positive - st.negative) - (ev.positive - ev.negative));
}

long conjectural_second_slope(const KnotParams& k) {
  riley::validate(k);
  if (k.m >= -1 || k.n <= 0)
    throw Error(ErrorCode::OutOfCase, "second slope is only observed for m < -1, n > 0, got " + params_text(k));
  return -(4L * k.m + 4);
}

}  // namespace dtk::slopes
