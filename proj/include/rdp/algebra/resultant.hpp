#pragma once

#include <utility>
#include <vector>

#include "rdp/algebra/mpoly.hpp"

namespace rdp {

/// Resultant over an integral domain R by the subresultant PRS. Only exact
/// divisions occur; no leading coefficient is ever inverted.
template <class R> auto subresultant(Poly<R> A, Poly<R> B) -> R {
  const R zero = A.zero_elem();
  if (A.is_zero() || B.is_zero()) return zero;
  R s = ring_one(zero);
  auto negate = [&](const R &x) { return zero - x; };
  if (A.degree() < B.degree()) {
    std::swap(A, B);
    if ((A.degree() % 2) && (B.degree() % 2)) s = negate(s);
  }
  if (B.degree() == 0) {
    R r = ring_one(zero);
    for (int i = 0; i < A.degree(); ++i) r = r * B.lc();
    return s * r;
  }
  R g = ring_one(zero), h = ring_one(zero);
  for (;;) {
    const int delta = A.degree() - B.degree();
    if ((A.degree() % 2) && (B.degree() % 2)) s = negate(s);
    Poly<R> Rm = prem(A, B);
    if (Rm.is_zero()) return zero;
    A = B;
    R den = g;
    for (int i = 0; i < delta; ++i) den = den * h;
    B = Poly<R>(Rm.coeffs(), zero);
    {
      std::vector<R> c;
      for (const auto &x : B.coeffs()) c.push_back(ring_divexact(x, den));
      B = Poly<R>(std::move(c), zero);
    }
    g = A.lc();
    // h <- g^delta / h^(delta-1)
    R gd = ring_one(zero), hd = ring_one(zero);
    for (int i = 0; i < delta; ++i) gd = gd * g;
    for (int i = 1; i < delta; ++i) hd = hd * h;
    h = ring_divexact(gd, hd);
    if (B.degree() == 0) {
      const int da = A.degree();
      R num = ring_one(zero), hh = ring_one(zero);
      for (int i = 0; i < da; ++i) num = num * B.lc();
      for (int i = 1; i < da; ++i) hh = hh * h;
      return s * ring_divexact(num, hh);
    }
  }
}

/// Determinant by fraction-free Bareiss elimination with row pivoting.
template <class R> auto bareiss_determinant(std::vector<std::vector<R>> M, const R &like) -> R {
  const std::size_t n = M.size();
  const R zero = ring_zero(like);
  if (n == 0) return ring_one(like);
  R prev = ring_one(like);
  bool neg = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (ring_is_zero(M[k][k])) {
      std::size_t r = k + 1;
      while (r < n && ring_is_zero(M[r][k])) ++r;
      if (r == n) return zero;
      std::swap(M[k], M[r]);
      neg = !neg;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j)
        M[i][j] = ring_divexact(M[k][k] * M[i][j] - M[i][k] * M[k][j], prev);
      M[i][k] = zero;
    }
    prev = M[k][k];
  }
  R d = M[n - 1][n - 1];
  return neg ? zero - d : d;
}

/// Resultant as the determinant of the Sylvester matrix. Independent of the
/// remainder sequence; used as a cross-check and as the fallback route.
template <class R> auto sylvester_resultant(const Poly<R> &A, const Poly<R> &B) -> R {
  const R zero = A.zero_elem();
  if (A.is_zero() || B.is_zero()) return zero;
  const int m = A.degree(), n = B.degree();
  if (m == 0 && n == 0) return ring_one(zero);
  const auto N = static_cast<std::size_t>(m + n);
  std::vector<std::vector<R>> S(N, std::vector<R>(N, zero));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= m; ++j)
      S[static_cast<std::size_t>(i)][static_cast<std::size_t>(i + j)] =
          A.coeff(static_cast<std::size_t>(m - j));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= n; ++j)
      S[static_cast<std::size_t>(n + i)][static_cast<std::size_t>(i + j)] =
          B.coeff(static_cast<std::size_t>(n - j));
  return bareiss_determinant(std::move(S), zero);
}

/// Res_{x_i}(a, b) for sparse multivariate polynomials.
inline auto resultant(const MPoly &a, const MPoly &b, unsigned i) -> MPoly {
  return subresultant(a.as_univariate(i), b.as_univariate(i));
}

inline auto resultant_sylvester(const MPoly &a, const MPoly &b, unsigned i) -> MPoly {
  return sylvester_resultant(a.as_univariate(i), b.as_univariate(i));
}

} // namespace rdp
