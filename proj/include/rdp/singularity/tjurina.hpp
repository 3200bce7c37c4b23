#pragma once

#include <climits>
#include <unordered_map>
#include <vector>

#include "rdp/algebra/mpoly.hpp"

namespace rdp {

struct TjurinaResult {
  unsigned m = 0;
  unsigned truncation = 0; // N at which the value was certified
  bool certified = false;
};

namespace detail {

/// Monomials in n variables of total degree < N, sorted by degree.
struct MonomialIndex {
  std::vector<std::uint64_t> keys;
  std::vector<unsigned> degree;
  std::unordered_map<std::uint64_t, std::size_t> col;

  MonomialIndex(unsigned n, unsigned N) {
    for (unsigned d = 0; d < N; ++d) {
      MPoly::Exps e{};
      enumerate(n, d, 0, e);
    }
    for (std::size_t i = 0; i < keys.size(); ++i) col.emplace(keys[i], i);
  }

private:
  void enumerate(unsigned n, unsigned left, unsigned i, MPoly::Exps &e) {
    if (i + 1 == n) {
      e[i] = left;
      keys.push_back(MPoly::key(e));
      degree.push_back(MPoly::key_degree(keys.back()));
      e[i] = 0;
      return;
    }
    for (unsigned k = left + 1; k-- > 0;) {
      e[i] = k;
      enumerate(n, left - k, i + 1, e);
    }
    e[i] = 0;
  }
};

struct TruncatedSpan {
  std::size_t columns = 0;
  std::vector<bool> pivot;
};

/// Row-reduce { g * mono mod m^N : g in gens, deg mono < N }, pivoting on
/// the lowest column (lowest degree) of every row.
inline auto truncated_ideal_span(const std::vector<MPoly> &gens, unsigned nvars, unsigned N) -> TruncatedSpan {
  const MonomialIndex idx(nvars, N);
  const std::size_t C = idx.keys.size();
  const Field &F = gens.front().field();
  using Row = std::vector<std::pair<std::uint32_t, std::uint64_t>>; // (column, field index), sorted
  std::vector<Row> piv(C);
  std::vector<bool> has(C, false);

  Row tmp;
  auto reduce_and_insert = [&](Row row) {
    while (!row.empty()) {
      const std::uint32_t c = row.front().first;
      if (!has[c]) {
        const std::uint64_t inv = F.inv(row.front().second);
        for (auto &x : row) x.second = F.mul(x.second, inv);
        piv[c] = std::move(row);
        has[c] = true;
        return;
      }
      // row -= row[c] * piv[c]
      const std::uint64_t k = row.front().second;
      const Row &P = piv[c];
      tmp.clear();
      std::size_t i = 0, j = 0;
      while (i < row.size() || j < P.size()) {
        if (j == P.size() || (i < row.size() && row[i].first < P[j].first)) {
          tmp.push_back(row[i++]);
        } else if (i == row.size() || P[j].first < row[i].first) {
          tmp.emplace_back(P[j].first, F.neg(F.mul(k, P[j].second)));
          ++j;
        } else {
          std::uint64_t v = F.sub(row[i].second, F.mul(k, P[j].second));
          if (v) tmp.emplace_back(row[i].first, v);
          ++i;
          ++j;
        }
      }
      row.swap(tmp);
    }
  };

  for (const auto &g : gens) {
    if (g.is_zero()) continue;
    const unsigned og = static_cast<unsigned>(g.order());
    if (og >= N) continue;
    for (std::size_t mi = 0; mi < C; ++mi) {
      if (idx.degree[mi] + og >= N) break; // monomials are sorted by degree
      Row row;
      for (auto &[k, c] : g.terms()) {
        const std::uint64_t key = k + idx.keys[mi];
        if (MPoly::key_degree(key) >= N) continue;
        row.emplace_back(static_cast<std::uint32_t>(idx.col.at(key)), c.index());
      }
      std::sort(row.begin(), row.end());
      reduce_and_insert(std::move(row));
    }
  }
  TruncatedSpan s;
  s.columns = C;
  s.pivot = std::move(has);
  return s;
}

} // namespace detail

/// dim k[x]_(x) / (f, df/dx_i) for f with f(0) = 0, computed modulo m^N.
/// The value is certified once every monomial of some degree d0 < N lies in
/// the span, since then m^d0 is contained in the ideal. `precision` is the
/// degree from which the terms of f are unknown (truncated input).
inline auto tjurina_dimension(const MPoly &f, unsigned precision = UINT_MAX) -> TjurinaResult {
  if (!f.constant_term().is_zero()) throw Error("polynomial does not vanish at the origin");
  const unsigned n = f.nvars();
  std::vector<MPoly> gens{f};
  for (unsigned i = 0; i < n; ++i) gens.push_back(f.derivative(i));

  auto attempt = [&](unsigned N, unsigned &m) -> bool {
    if (precision != UINT_MAX && N + 1 > precision)
      throw Error("truncated polynomial lacks the precision for degree " + std::to_string(N));
    const detail::MonomialIndex idx(n, N);
    auto span = detail::truncated_ideal_span(gens, n, N);
    // smallest d0 such that every column of degree >= d0 is a pivot
    std::vector<bool> full(N, true);
    for (std::size_t c = 0; c < span.columns; ++c)
      if (!span.pivot[c]) full[idx.degree[c]] = false;
    unsigned d0 = N;
    while (d0 > 0 && full[d0 - 1]) --d0;
    if (d0 >= N) return false;
    m = 0;
    for (std::size_t c = 0; c < span.columns; ++c)
      if (!span.pivot[c]) ++m;
    return true;
  };

  for (unsigned N : {8u, 16u, 24u}) {
    unsigned m1 = 0, m2 = 0;
    if (!attempt(N, m1)) continue;
    if (!attempt(N + 1, m2) || m1 != m2) throw Error("internal: Tjurina dimension unstable in the truncation degree");
    return {m1, N, true};
  }
  throw Error("non-isolated or too degenerate");
}

} // namespace rdp
