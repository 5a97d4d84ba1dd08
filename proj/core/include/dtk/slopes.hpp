#pragma once

// Intervals of Dehn-filling slopes with left-orderable fundamental group for
// J(2m+1, 2n), mirror bookkeeping, the two-bridge fraction with its
// continued-fraction expansions, and the Seifert-surface boundary slope.

#include <gmpxx.h>

#include <limits>
#include <string>
#include <vector>

#include "dtk/riley.hpp"

namespace dtk::slopes {

using riley::KnotParams;

enum class Provenance { theorem, observed, conjectural };

char const* provenance_name(Provenance p) noexcept;

struct SlopeInterval {
  double low = -std::numeric_limits<double>::infinity();
  double high = std::numeric_limits<double>::infinity();
  bool low_closed = false;
  bool high_closed = false;
  Provenance provenance = Provenance::theorem;

  /// r -> -r: endpoints swap and change sign, closure flags travel with them.
  SlopeInterval negate() const;
  bool contains(double r) const noexcept;
  /// "[0, 8)", "(-inf, 1)".
  std::string to_string() const;
  friend bool operator==(const SlopeInterval&, const SlopeInterval&) = default;
};

/// Every row of the interval table that applies to (m, n). Rows:
///   (-inf, 1)  m > 0, n > 0   or  m < -1, n > 1
///   (-1, inf)  m < -1, n < 0  or  m > 0, n < -1
///   [0, 4n)    m < -1, n > 0
///   (4n, 0]    m > 0, n < 0
/// Throws InvalidKnot for torus-knot parameters.
std::vector<SlopeInterval> orderable_intervals(const KnotParams& k);

/// The preferred single interval: the bounded [0, 4n) / (4n, 0] row when it
/// applies, otherwise the unbounded row. OutOfCase if no row applies.
SlopeInterval orderable_interval(const KnotParams& k);

/// (m, n) -> (-m-1, -n): J(2m+1, 2n) -> J(-(2m+1), -2n), the mirror image.
KnotParams mirror_params(const KnotParams& k);

/// 2n / ((2m+1) 2n + 1), reduced, sign kept.
mpq_class two_bridge_fraction(const KnotParams& k);

enum class CfConvention { standard, even };

/// Displayed entries [e_1, ..., e_k]; the value is 1/(a_1 + 1/(a_2 + ...))
/// with a_i = (-1)^{i+1} e_i.
struct ContinuedFraction {
  std::vector<long> entries;
  CfConvention convention = CfConvention::standard;
  int positive = 0;  // displayed entries > 0
  int negative = 0;  // displayed entries < 0

  mpq_class value() const;
  std::string to_string() const;
};

/// [2m+1, -2n]. Only for m < -1 (OutOfCase otherwise).
ContinuedFraction standard_cf(const KnotParams& k);

/// [2m+2, 2, ..., 2] with 2n-1 twos. Only for m < -1, n > 0 (OutOfCase otherwise).
ContinuedFraction even_cf(const KnotParams& k);

/// 2[(n+ - n-) - (n0+ - n0-)] from the two expansions; equals -4n.
long boundary_slope_seifert(const KnotParams& k);

/// The second boundary slope -(4m+4) suggested by computed data; conjectural.
long conjectural_second_slope(const KnotParams& k);

}  // namespace dtk::slopes
