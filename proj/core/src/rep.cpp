#include "dtk/rep.hpp"

#include <algorithm>
#include <cmath>

#include "dtk/error.hpp"
#include "dtk/recurrences.hpp"

namespace dtk::rep {

namespace {

void require_nonzero_t(cplx t) {
  if (t == cplx(0.0)) throw Error(ErrorCode::DegenerateParameter, "t = 0");
}

double entry_max(const Mat2& p) {
  return std::max({std::abs(p.a), std::abs(p.b), std::abs(p.c), std::abs(p.d)});
}

}  // namespace

Mat2 Mat2::inverse() const {
  const cplx det_ = det();
  if (det_ == cplx(0.0)) throw Error(ErrorCode::DegenerateParameter, "singular matrix");
  return {d / det_, -b / det_, -c / det_, a / det_};
}

double Mat2::max_abs() const { return entry_max(*this); }

double max_abs_diff(const Mat2& p, const Mat2& q) { return entry_max(p - q); }

double max_rel_diff(const Mat2& p, const Mat2& q) {
  return max_abs_diff(p, q) / std::max({1.0, entry_max(p), entry_max(q)});
}

Letter inverse(Letter l) noexcept {
  switch (l) {
    case Letter::x: return Letter::X;
    case Letter::X: return Letter::x;
    case Letter::y: return Letter::Y;
    case Letter::Y: return Letter::y;
  }
  return l;
}

GroupWord GroupWord::parse(std::string_view text) {
  std::vector<Letter> out;
  out.reserve(text.size());
  for (char ch : text) {
    switch (ch) {
      case 'x': out.push_back(Letter::x); break;
      case 'X': out.push_back(Letter::X); break;
      case 'y': out.push_back(Letter::y); break;
      case 'Y': out.push_back(Letter::Y); break;
      default:
        throw Error(ErrorCode::InvalidArgument, std::string("bad letter '") + ch + "' in word");
    }
  }
  return GroupWord(std::move(out));
}

GroupWord GroupWord::inverse() const {
  std::vector<Letter> out(letters_.rbegin(), letters_.rend());
  for (auto& l : out) l = rep::inverse(l);
  return GroupWord(std::move(out));
}

GroupWord GroupWord::reversed() const {
  return GroupWord(std::vector<Letter>(letters_.rbegin(), letters_.rend()));
}

GroupWord GroupWord::power(int k) const {
  const GroupWord base = k < 0 ? inverse() : *this;
  std::vector<Letter> out;
  const int reps = k < 0 ? -k : k;
  out.reserve(base.size() * static_cast<std::size_t>(reps));
  for (int i = 0; i < reps; ++i) out.insert(out.end(), base.letters_.begin(), base.letters_.end());
  return GroupWord(std::move(out));
}

GroupWord GroupWord::reduced() const {
  std::vector<Letter> out;
  for (Letter l : letters_) {
    if (!out.empty() && out.back() == rep::inverse(l))
      out.pop_back();
    else
      out.push_back(l);
  }
  return GroupWord(std::move(out));
}

GroupWord operator*(const GroupWord& u, const GroupWord& v) {
  std::vector<Letter> out = u.letters_;
  out.insert(out.end(), v.letters_.begin(), v.letters_.end());
  return GroupWord(std::move(out));
}

std::string GroupWord::to_string() const {
  std::string out;
  for (Letter l : letters_) {
    switch (l) {
      case Letter::x: out += 'x'; break;
      case Letter::X: out += 'X'; break;
      case Letter::y: out += 'y'; break;
      case Letter::Y: out += 'Y'; break;
    }
  }
  return out;
}

GroupWord word_w(int m) {
  return GroupWord::parse("xY").power(m) * GroupWord::parse("xy") * GroupWord::parse("Xy").power(m);
}

GroupWord word_wstar(int m) { return word_w(m).reversed(); }

GroupWord longitude_word(int m, int n) {
  return word_wstar(m).power(n) * word_w(m).power(n) * GroupWord::parse("x").power(-4 * n);
}

Generators rho_generators(cplx s, cplx t) {
  require_nonzero_t(t);
  const cplx r = std::sqrt(t);
  const cplx ri = 1.0 / r;
  return {Mat2{r, ri, 0.0, ri}, Mat2{r, 0.0, -s * r, ri}};
}

Mat2 letter_matrix(Letter l, const Generators& g) {
  switch (l) {
    case Letter::x: return g.x;
    case Letter::X: return g.x.inverse_sl2();
    case Letter::y: return g.y;
    case Letter::Y: return g.y.inverse_sl2();
  }
  return Mat2::identity();
}

Mat2 word_matrix(const GroupWord& w, cplx s, cplx t) {
  const Generators g = rho_generators(s, t);
  Mat2 acc;
  for (Letter l : w.letters()) acc = acc * letter_matrix(l, g);
  return acc;
}

Mat2 w_matrix_closed(int m, cplx s, cplx t) {
  require_nonzero_t(t);
  const cplx f = rec::f_value<cplx>(m, s);
  const cplx g = rec::g_value<cplx>(m, s);
  const cplx gp = rec::g_value<cplx>(m - 1, s);
  return {t * f * f - s * g * g, f * g / t - f * gp, s * t * f * gp - s * f * g,
          f * f / t - s * gp * gp};
}

Mat2 w_power(int n, const Mat2& W) {
  const cplx tau = W.trace();
  const cplx tn = rec::tau_value<cplx>(n, tau);
  const cplx tn1 = rec::tau_value<cplx>(n - 1, tau);
  return {W.a * tn - tn1, W.b * tn, W.c * tn, W.d * tn - tn1};
}

cplx sigma(cplx s, cplx t) {
  require_nonzero_t(t);
  const cplx r = std::sqrt(t);
  const cplx q = r - 1.0 / r;
  const cplx d = q * q;
  if (d == s) throw Error(ErrorCode::PoleAtParameter, "sigma denominator (sqrt t - 1/sqrt t)^2 - s vanishes");
  return s * d / (d - s);
}

Mat2 conjugating_matrix(cplx t) {
  require_nonzero_t(t);
  if (t == cplx(1.0)) throw Error(ErrorCode::PoleAtParameter, "conjugating matrix degenerates at t = 1");
  const cplx r = std::sqrt(t);
  return {t - 1.0, 1.0, 0.0, r - 1.0 / r};
}

Mat2 conjugate(const Mat2& M, cplx t) {
  const Mat2 Q = conjugating_matrix(t);
  return Q * M * Q.inverse();
}

Mat2 word_matrix_conjugated(const GroupWord& w, cplx s, cplx t) {
  const Mat2 Q = conjugating_matrix(t);
  const Mat2 Qi = Q.inverse();
  const Generators g = rho_generators(s, t);
  const Generators gs{Q * g.x * Qi, Q * g.y * Qi};
  Mat2 acc;
  for (Letter l : w.letters()) acc = acc * letter_matrix(l, gs);
  return acc;
}

Mat2 u_matrix(int m, cplx s, cplx t) {
  require_nonzero_t(t);
  if (t == cplx(1.0)) throw Error(ErrorCode::PoleAtParameter, "u_matrix undefined at t = 1");
  const Mat2 W = w_matrix_closed(m, s, t);
  const cplx r = std::sqrt(t);
  const cplx tm1 = t - 1.0;
  const cplx u22 = W.d - W.c / tm1;
  return {W.a + W.c / tm1, r * (W.b - W.a / tm1) + (r / tm1) * u22, W.c / r, u22};
}

Mat2 sigma_twist(const Mat2& M, cplx sig) {
  if (sig == cplx(0.0)) throw Error(ErrorCode::PoleAtParameter, "sigma twist with sigma = 0");
  return {M.a, M.c / sig, M.b * sig, M.d};
}

cplx holonomy_B(int m, int n, cplx s, cplx t) {
  require_nonzero_t(t);
  const cplx g = rec::g_value<cplx>(m, s);
  const cplx gp = rec::g_value<cplx>(m - 1, s);
  const cplx den = gp - t * g;
  if (den == cplx(0.0)) throw Error(ErrorCode::PoleAtParameter, "g_{m-1} - t g_m vanishes");
  return (g - t * gp) / den * std::pow(t, -2.0 * n);
}

Mat2 longitude_matrix_oracle(int m, int n, cplx s, cplx t) {
  require_nonzero_t(t);
  if (t == cplx(1.0)) throw Error(ErrorCode::PoleAtParameter, "longitude image undefined at t = 1");
  const cplx D = t + 1.0 / t - s - 2.0;
  const double resid = std::abs(rec::riley_value_shifted<cplx>(m, n, s, D));
  const double scale = std::max(1.0, std::abs(rec::riley_scale_shifted<cplx>(m, n, s, D)));
  if (resid / scale >= 1e-8)
    throw Error(ErrorCode::NotOnVariety,
                "Riley residual " + std::to_string(resid / scale) + " exceeds 1e-8");
  // Q rho(L) Q^-1 equals the product of the conjugated letter images; forming
  // the product before conjugating avoids the 1/(t-1) growth of every factor
  // near the parabolic end.
  return conjugate(word_matrix(longitude_word(m, n), s, t), t);
}

double relator_residual(int m, int n, cplx s, cplx t) {
  const GroupWord wn = word_w(m).power(n);
  const Mat2 lhs = word_matrix(wn * GroupWord::parse("x"), s, t);
  const Mat2 rhs = word_matrix(GroupWord::parse("y") * wn, s, t);
  return max_abs_diff(lhs, rhs) / std::max(1.0, entry_max(lhs));
}

CoverElement cover_mul(const CoverElement& g, const CoverElement& h) {
  const cplx e = std::polar(1.0, -2.0 * g.omega);
  const cplx z = 1.0 + std::conj(g.gamma) * h.gamma * e;
  // Re z > 0 because |conj(gamma) gamma'| < 1, so the principal argument is
  // the principal branch of (1/2i) log(z / conj z).
  return {(g.gamma + h.gamma * e) / z, g.omega + h.omega + std::arg(z)};
}

CoverElement cover_inverse(const CoverElement& g) {
  // (gamma, omega)^-1 = (-gamma e^{2 i omega}, -omega).
  return {-g.gamma * std::polar(1.0, 2.0 * g.omega), -g.omega};
}

Mat2 to_su11(const CoverElement& g) {
  const double n2 = std::norm(g.gamma);
  if (n2 >= 1.0) throw Error(ErrorCode::InvalidArgument, "cover element requires |gamma| < 1");
  const cplx alpha = std::polar(1.0 / std::sqrt(1.0 - n2), g.omega);
  const cplx beta = -std::conj(g.gamma) * std::conj(alpha);
  return {alpha, beta, std::conj(beta), std::conj(alpha)};
}

}  // namespace dtk::rep
