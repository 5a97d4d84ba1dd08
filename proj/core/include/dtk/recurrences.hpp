#pragma once

// Scalar evaluation of the three-term families f_m, g_m, tau_k and of the
// Riley polynomial. Templated on the scalar so the same code runs in double,
// std::complex<double> and extended-precision floats.
//
// On the root intervals of f_m and g_m (s in [-4, 0]) the recurrence is the
// Chebyshev recurrence and stays well conditioned, unlike Horner evaluation of
// the expanded coefficients.

#include <utility>

namespace dtk::rec {

/// f_m(s), any integer m. Negative indices follow f_{-m} = f_{m-1}.
template <class R>
R f_value(int m, const R& s) {
  if (m < 0) return f_value<R>(-m - 1, s);
  R prev = R(1);
  if (m == 0) return prev;
  R cur = s + R(1);
  const R c = s + R(2);
  for (int k = 1; k < m; ++k) {
    R next = c * cur - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

/// g_m(s), any integer m. g_{-1} = 0 and g_{-m} = -g_{m-2} for m >= 2.
template <class R>
R g_value(int m, const R& s) {
  if (m == -1) return R(0);
  if (m < -1) return -g_value<R>(-m - 2, s);
  R prev = R(1);
  if (m == 0) return prev;
  R cur = s + R(2);
  const R c = s + R(2);
  for (int k = 1; k < m; ++k) {
    R next = c * cur - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

/// tau_k(tau) for any integer k, with tau_{-k} = -tau_k.
template <class R>
R tau_value(int k, const R& tau) {
  if (k < 0) return -tau_value<R>(-k, tau);
  R prev = R(0);
  if (k == 0) return prev;
  R cur = R(1);
  for (int j = 1; j < k; ++j) {
    R next = tau * cur - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

/// phi(s, T) written in D = T - s - 2, which avoids cancellation when T ~ s.
template <class R>
R riley_value_shifted(int m, int n, const R& s, const R& D) {
  const R f = f_value<R>(m, s);
  const R g_prev = g_value<R>(m - 1, s);
  const R tau = D * f * f + R(2);
  const R tn = tau_value<R>(n, tau);
  const R tn1 = tau_value<R>(n + 1, tau);
  return (tn1 - tn) + D * f * g_prev * tn;
}

template <class R>
R riley_value(int m, int n, const R& s, const R& T) {
  return riley_value_shifted<R>(m, n, s, T - s - R(2));
}

/// phi and its partial derivative in D at (s, D), D = T - s - 2 (so also the
/// derivative in T at fixed s).
template <class R>
std::pair<R, R> riley_value_and_dD(int m, int n, const R& s, const R& D) {
  const R f = f_value<R>(m, s);
  const R g_prev = g_value<R>(m - 1, s);
  const R tau = D * f * f + R(2);
  // tau_k and d tau_k / d tau side by side; tau_{-k} = -tau_k.
  const auto tau_pair = [&tau](int k) {
    const bool neg = k < 0;
    const int kk = neg ? -k : k;
    R p0 = R(0), d0 = R(0);
    R p1 = R(1), d1 = R(0);
    if (kk == 0) return std::pair<R, R>(p0, d0);
    for (int j = 1; j < kk; ++j) {
      R p2 = tau * p1 - p0;
      R d2 = p1 + tau * d1 - d0;
      p0 = std::move(p1);
      d0 = std::move(d1);
      p1 = std::move(p2);
      d1 = std::move(d2);
    }
    if (neg) return std::pair<R, R>(-p1, -d1);
    return std::pair<R, R>(p1, d1);
  };
  const auto [tn, dtn] = tau_pair(n);
  const auto [tn1, dtn1] = tau_pair(n + 1);
  const R fg = f * g_prev;
  const R value = (tn1 - tn) + D * fg * tn;
  const R deriv = f * f * ((dtn1 - dtn) + D * fg * dtn) + fg * tn;
  return {value, deriv};
}

/// A magnitude for phi at (s, T) obtained by evaluating every term with
/// absolute values; used to turn |phi| into a relative residual.
template <class R>
R riley_scale_shifted(int m, int n, const R& s, const R& D) {
  using std::abs;
  const R f = abs(f_value<R>(m, s));
  const R g_prev = abs(g_value<R>(m - 1, s));
  const R tau = abs(D) * f * f + R(2);
  const R tn = abs(tau_value<R>(n, tau));
  const R tn1 = abs(tau_value<R>(n + 1, tau));
  return tn1 + tn + abs(D) * f * g_prev * tn;
}

}  // namespace dtk::rec
