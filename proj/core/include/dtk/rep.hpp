#pragma once

// SL(2,C) images of the knot group of J(2m+1, 2n) with presentation
// <x, y | w^n x = y w^n>, closed forms for the images of w, w^n and of the
// longitude in the frame where the meridian is diagonal, and the group law of
// the universal cover of SU(1,1).

#include <complex>
#include <string>
#include <string_view>
#include <vector>

namespace dtk::rep {

using cplx = std::complex<double>;

struct Mat2 {
  cplx a{1}, b{0}, c{0}, d{1};  // [[a, b], [c, d]]

  static Mat2 identity() { return {}; }

  cplx det() const { return a * d - b * c; }
  cplx trace() const { return a + d; }
  /// Inverse of a unimodular matrix (adjugate); no division by the determinant.
  Mat2 inverse_sl2() const { return {d, -b, -c, a}; }
  Mat2 inverse() const;
  double max_abs() const;

  friend Mat2 operator*(const Mat2& p, const Mat2& q) {
    return {p.a * q.a + p.b * q.c, p.a * q.b + p.b * q.d, p.c * q.a + p.d * q.c,
            p.c * q.b + p.d * q.d};
  }
  friend Mat2 operator-(const Mat2& p, const Mat2& q) {
    return {p.a - q.a, p.b - q.b, p.c - q.c, p.d - q.d};
  }
};

/// Largest entrywise |p - q|.
double max_abs_diff(const Mat2& p, const Mat2& q);
/// max_abs_diff scaled by max(1, largest entry of p or q).
double max_rel_diff(const Mat2& p, const Mat2& q);

enum class Letter { x, X, y, Y };  // X = x^-1, Y = y^-1

Letter inverse(Letter l) noexcept;

class GroupWord {
 public:
  GroupWord() = default;
  explicit GroupWord(std::vector<Letter> letters) : letters_(std::move(letters)) {}
  /// Parses a string over {x, X, y, Y}; throws InvalidArgument on other characters.
  static GroupWord parse(std::string_view text);

  const std::vector<Letter>& letters() const noexcept { return letters_; }
  std::size_t size() const noexcept { return letters_.size(); }

  GroupWord inverse() const;
  GroupWord reversed() const;
  /// k-th power; negative k gives powers of the inverse.
  GroupWord power(int k) const;
  GroupWord reduced() const;

  friend GroupWord operator*(const GroupWord& u, const GroupWord& v);
  friend bool operator==(const GroupWord&, const GroupWord&) = default;

  std::string to_string() const;

 private:
  std::vector<Letter> letters_;
};

/// w = (x y^-1)^m x y (x^-1 y)^m.
GroupWord word_w(int m);
/// w_* = (y x^-1)^m y x (y^-1 x)^m, the letter reversal of w.
GroupWord word_wstar(int m);
/// Longitude w_*^n w^n x^{-4n}.
GroupWord longitude_word(int m, int n);

struct Generators {
  Mat2 x, y;
};

/// rho(x) = [[sqrt t, 1/sqrt t], [0, 1/sqrt t]], rho(y) = [[sqrt t, 0], [-s sqrt t, 1/sqrt t]],
/// principal square root. Throws DegenerateParameter at t = 0.
Generators rho_generators(cplx s, cplx t);

Mat2 letter_matrix(Letter l, const Generators& g);
/// Left-to-right product of the letter images.
Mat2 word_matrix(const GroupWord& w, cplx s, cplx t);

/// Closed form of rho(w) in terms of f_m, g_m, g_{m-1}.
Mat2 w_matrix_closed(int m, cplx s, cplx t);

/// W^n from the Chebyshev-type identity W^n = tau_n(tr W) W - tau_{n-1}(tr W) I;
/// valid for every integer n when det W = 1.
Mat2 w_power(int n, const Mat2& W);

/// sigma = s d / (d - s), d = (sqrt t - 1/sqrt t)^2. Throws PoleAtParameter when d = s.
cplx sigma(cplx s, cplx t);

/// Q = [[t-1, 1], [0, sqrt t - 1/sqrt t]]; conjugation by Q diagonalises rho(x).
/// Throws PoleAtParameter at t = 1.
Mat2 conjugating_matrix(cplx t);
/// Q M Q^-1.
Mat2 conjugate(const Mat2& M, cplx t);
/// Product of the conjugated letter images rho_s(letter) = Q rho(letter) Q^-1.
Mat2 word_matrix_conjugated(const GroupWord& w, cplx s, cplx t);

/// rho_s(w) from the entries of W by the explicit entry formulas.
Mat2 u_matrix(int m, cplx s, cplx t);

/// The involution [[a, b], [c, d]] -> [[a, c/sigma], [b sigma, d]]; reverses
/// products, and maps rho_s(w) to rho_s(w_*).
Mat2 sigma_twist(const Mat2& M, cplx sig);

/// B_s = (g_m - t g_{m-1}) / (g_{m-1} - t g_m) * t^{-2n}.
cplx holonomy_B(int m, int n, cplx s, cplx t);

/// rho_s(L) = Q rho(L) Q^-1 with rho(L) the direct product over the letters of
/// the longitude. Requires (s, t + 1/t) to solve the Riley polynomial to
/// relative residual < 1e-8 (NotOnVariety otherwise) and t != 1 (PoleAtParameter).
Mat2 longitude_matrix_oracle(int m, int n, cplx s, cplx t);

/// Max-norm of rho(w^n x) - rho(y w^n) from direct word products, divided by
/// max(1, max-norm of rho(w^n x)). Zero on Riley solutions.
double relator_residual(int m, int n, cplx s, cplx t);

/// Element of the universal cover of SU(1,1): |gamma| < 1, omega real.
struct CoverElement {
  cplx gamma{0.0};
  double omega = 0.0;
};

CoverElement cover_mul(const CoverElement& g, const CoverElement& h);
CoverElement cover_inverse(const CoverElement& g);
/// Projection to SU(1,1): alpha = e^{i omega}/sqrt(1-|gamma|^2),
/// beta = -conj(gamma) conj(alpha), matrix [[alpha, beta], [conj beta, conj alpha]].
Mat2 to_su11(const CoverElement& g);

}  // namespace dtk::rep
