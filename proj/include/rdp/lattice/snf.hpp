#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <utility>
#include <vector>

#include "rdp/algebra/field.hpp"

namespace rdp {

using IntMatrix = std::vector<std::vector<std::int64_t>>;

/// Structure of Z^rows / (column span): free rank and invariant factors > 1.
struct QuotientInvariants {
  int free_rank = 0;
  std::vector<std::int64_t> torsion; // d1 | d2 | ..., ones suppressed

  friend auto operator==(const QuotientInvariants &, const QuotientInvariants &) -> bool = default;
  friend auto operator<(const QuotientInvariants &a, const QuotientInvariants &b) -> bool {
    if (a.free_rank != b.free_rank) return a.free_rank < b.free_rank;
    return a.torsion < b.torsion;
  }
  /// Number of cyclic factors whose order is divisible by l: the rank of the l-torsion.
  [[nodiscard]] auto l_rank(std::int64_t l) const -> int {
    int n = 0;
    for (auto d : torsion)
      if (d % l == 0) ++n;
    return n;
  }
  [[nodiscard]] auto to_string() const -> std::string {
    std::string out = "Z^" + std::to_string(free_rank);
    for (auto d : torsion) out += " + Z/" + std::to_string(d);
    return out;
  }
};

/// Diagonal of the Smith normal form of an integer matrix (nonzero entries
/// only, in divisibility order).
inline auto smith_diagonal(IntMatrix A) -> std::vector<std::int64_t> {
  const std::size_t m = A.size();
  const std::size_t n = m ? A[0].size() : 0;
  std::vector<std::int64_t> diag;
  std::size_t k = 0;
  while (k < m && k < n) {
    // pivot: smallest nonzero |entry| in the lower-right block
    std::size_t pi = m, pj = n;
    for (std::size_t i = k; i < m; ++i)
      for (std::size_t j = k; j < n; ++j)
        if (A[i][j] != 0 && (pi == m || std::llabs(A[i][j]) < std::llabs(A[pi][pj]))) {
          pi = i;
          pj = j;
        }
    if (pi == m) break;
    std::swap(A[k], A[pi]);
    for (auto &row : A) std::swap(row[k], row[pj]);
    bool clean = false;
    while (!clean) {
      clean = true;
      for (std::size_t i = k + 1; i < m; ++i) {
        if (A[i][k] == 0) continue;
        std::int64_t q = A[i][k] / A[k][k];
        for (std::size_t j = k; j < n; ++j) A[i][j] -= q * A[k][j];
        if (A[i][k] != 0) {
          std::swap(A[k], A[i]);
          clean = false;
        }
      }
      for (std::size_t j = k + 1; j < n; ++j) {
        if (A[k][j] == 0) continue;
        std::int64_t q = A[k][j] / A[k][k];
        for (std::size_t i = k; i < m; ++i) A[i][j] -= q * A[i][k];
        if (A[k][j] != 0) {
          for (auto &row : A) std::swap(row[k], row[j]);
          clean = false;
        }
      }
      if (!clean) continue;
      // divisibility: fold a row with an entry not divisible by the pivot
      for (std::size_t i = k + 1; i < m && clean; ++i)
        for (std::size_t j = k + 1; j < n; ++j)
          if (A[i][j] % A[k][k] != 0) {
            for (std::size_t c = k; c < n; ++c) A[k][c] += A[i][c];
            clean = false;
            break;
          }
    }
    diag.push_back(std::llabs(A[k][k]));
    ++k;
  }
  return diag;
}

/// Quotient of Z^rows by the span of the columns of B; the columns must be
/// linearly independent.
inline auto quotient_of_columns(const IntMatrix &B) -> QuotientInvariants {
  const std::size_t m = B.size();
  const std::size_t n = m ? B[0].size() : 0;
  auto d = smith_diagonal(B);
  if (d.size() != n) throw Error("not a basis");
  QuotientInvariants q;
  q.free_rank = static_cast<int>(m - n);
  for (auto x : d)
    if (x != 1) q.torsion.push_back(x);
  std::sort(q.torsion.begin(), q.torsion.end());
  return q;
}

} // namespace rdp
