#pragma once

#include <algorithm>
#include <bitset>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "rdp/lattice/e8.hpp"
#include "rdp/lattice/snf.hpp"

namespace rdp {

/// The primes for which condition flags are tabulated.
inline constexpr std::array<std::int64_t, 4> kFlagPrimes{2, 3, 5, 7};

/// (E8+T[l]): the l-torsion of the quotient has rank at most 2.
inline auto satisfies_T_ell(const QuotientInvariants &q, std::int64_t l) -> bool { return q.l_rank(l) <= 2; }

/// (E8+T[p]): p-torsion of rank at most 1, or the quotient is (Z/p)^n.
/// Vacuous for p = 0.
inline auto satisfies_T_p(const QuotientInvariants &q, std::int64_t p) -> bool {
  if (p == 0) return true;
  if (q.l_rank(p) <= 1) return true;
  return q.free_rank == 0 && std::all_of(q.torsion.begin(), q.torsion.end(), [&](auto d) { return d == p; });
}

/// A root subsystem of E8 given by an explicit simple-root basis.
struct SubsystemClass {
  AdeType type;
  std::vector<RootVec> basis; // grouped by component, in the order of type.components()
  QuotientInvariants quotient;

  [[nodiscard]] auto flag_T_ell(std::int64_t l) const -> bool { return satisfies_T_ell(quotient, l); }
  [[nodiscard]] auto flag_T_p(std::int64_t p) const -> bool { return satisfies_T_p(quotient, p); }
};

/// A connected component of a root basis: its type and the basis positions in
/// the component's own Cartan order.
struct BasisComponent {
  AdeComponent type;
  std::vector<std::size_t> nodes;
};

namespace detail {

// Order the nodes of a simply-laced Dynkin tree so that its Cartan matrix
// matches cartan_matrix(type). Returns nullopt-equivalent (empty type) when
// the graph is not of finite ADE type.
inline auto classify_tree(const std::vector<std::vector<int>> &adj, const std::vector<std::size_t> &nodes)
    -> std::pair<bool, BasisComponent> {
  const std::size_t n = nodes.size();
  std::map<std::size_t, std::vector<std::size_t>> nb;
  std::size_t edges = 0;
  for (auto a : nodes)
    for (auto b : nodes)
      if (a != b && adj[a][b]) {
        if (adj[a][b] != -1) return {false, {}};
        nb[a].push_back(b);
        if (a < b) ++edges;
      }
  if (edges + 1 != n) return {false, {}};
  std::vector<std::size_t> branch;
  for (auto a : nodes) {
    if (nb[a].size() > 3) return {false, {}};
    if (nb[a].size() == 3) branch.push_back(a);
  }
  auto walk = [&](std::size_t from, std::size_t prev) {
    std::vector<std::size_t> path;
    std::size_t cur = from, last = prev;
    for (;;) {
      path.push_back(cur);
      std::size_t next = SIZE_MAX;
      for (auto x : nb[cur])
        if (x != last) next = x;
      if (next == SIZE_MAX) break;
      last = cur;
      cur = next;
    }
    return path;
  };
  BasisComponent bc;
  if (branch.empty()) {
    std::size_t end = nodes.front();
    for (auto a : nodes)
      if (nb[a].size() <= 1) {
        end = a;
        break;
      }
    bc.type = {Letter::A, static_cast<int>(n)};
    bc.nodes = walk(end, SIZE_MAX);
    if (bc.nodes.size() != n) return {false, {}};
    // canonical direction: start from the smaller end index
    if (bc.nodes.back() < bc.nodes.front()) std::reverse(bc.nodes.begin(), bc.nodes.end());
    return {true, bc};
  }
  if (branch.size() != 1) return {false, {}};
  const std::size_t c = branch[0];
  std::vector<std::vector<std::size_t>> arms;
  for (auto x : nb[c]) arms.push_back(walk(x, c));
  std::sort(arms.begin(), arms.end(), [](auto &a, auto &b) { return a.size() < b.size(); });
  const std::size_t a0 = arms[0].size(), a1 = arms[1].size(), a2 = arms[2].size();
  if (a0 == 1 && a1 == 1) {
    // D_n: chain = long arm reversed, centre, one short arm; the other short arm last
    bc.type = {Letter::D, static_cast<int>(n)};
    std::vector<std::size_t> chain(arms[2].rbegin(), arms[2].rend());
    chain.push_back(c);
    chain.push_back(arms[0][0]);
    chain.push_back(arms[1][0]);
    bc.nodes = chain;
    return {true, bc};
  }
  if (a0 == 1 && a1 == 2 && (a2 == 2 || a2 == 3 || a2 == 4)) {
    // Bourbaki E_n: 1 = end of a length-2 arm, 3 = its neighbour, 4 = centre,
    // 2 = the length-1 arm, 5.. = the long arm
    bc.type = {Letter::E, static_cast<int>(n)};
    bc.nodes = {arms[1][1], arms[0][0], arms[1][0], c};
    for (auto x : arms[2]) bc.nodes.push_back(x);
    return {true, bc};
  }
  return {false, {}};
}

} // namespace detail

/// Split a root basis into Dynkin components. Throws when the pairings are
/// not those of a simple system of finite ADE type.
inline auto dynkin_components(const std::vector<RootVec> &basis) -> std::vector<BasisComponent> {
  const auto &E = RootSystemE8::instance();
  const std::size_t n = basis.size();
  std::vector<std::vector<int>> adj(n, std::vector<int>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    if (E.cartan_form(basis[i], basis[i]) != 2) throw Error("basis vector is not a root");
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) adj[i][j] = E.cartan_form(basis[i], basis[j]);
  }
  std::vector<int> comp(n, -1);
  std::vector<BasisComponent> out;
  for (std::size_t s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    std::vector<std::size_t> nodes{s};
    comp[s] = static_cast<int>(out.size());
    for (std::size_t k = 0; k < nodes.size(); ++k)
      for (std::size_t j = 0; j < n; ++j)
        if (adj[nodes[k]][j] && comp[j] < 0) {
          comp[j] = comp[s];
          nodes.push_back(j);
        }
    std::sort(nodes.begin(), nodes.end());
    auto [ok, bc] = detail::classify_tree(adj, nodes);
    if (!ok) throw Error("basis is not a simple system of ADE type");
    out.push_back(bc);
  }
  std::stable_sort(out.begin(), out.end(), [](auto &a, auto &b) { return a.type < b.type; });
  return out;
}

/// Highest root of the root system spanned by one component, in ambient coordinates.
inline auto highest_root(const std::vector<RootVec> &comp_basis) -> RootVec {
  const auto &E = RootSystemE8::instance();
  const std::size_t n = comp_basis.size();
  std::vector<std::vector<int>> C(n, std::vector<int>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) C[i][j] = E.cartan_form(comp_basis[i], comp_basis[j]);
  std::set<std::vector<int>> seen;
  std::vector<std::vector<int>> todo;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<int> e(n, 0);
    e[i] = 1;
    seen.insert(e);
    todo.push_back(e);
  }
  while (!todo.empty()) {
    auto r = todo.back();
    todo.pop_back();
    for (std::size_t i = 0; i < n; ++i) {
      int c = 0;
      for (std::size_t j = 0; j < n; ++j) c += r[j] * C[j][i];
      auto s = r;
      s[i] -= c;
      if (seen.insert(s).second) todo.push_back(s);
    }
  }
  std::vector<int> best;
  int best_h = -1;
  for (auto &r : seen) {
    int h = 0;
    for (auto x : r) h += x;
    if (h > best_h) {
      best_h = h;
      best = r;
    }
  }
  RootVec out{};
  for (std::size_t i = 0; i < n; ++i) out = out + scaled(comp_basis[i], best[i]);
  return out;
}

inline auto quotient_invariants(const std::vector<RootVec> &basis) -> QuotientInvariants {
  IntMatrix B(8, std::vector<std::int64_t>(basis.size()));
  for (std::size_t j = 0; j < basis.size(); ++j)
    for (std::size_t i = 0; i < 8; ++i) B[i][j] = basis[j][i];
  return quotient_of_columns(B);
}

/// Type and component-ordered basis of a root basis.
inline auto canonical_subsystem(const std::vector<RootVec> &basis) -> SubsystemClass {
  SubsystemClass sc;
  std::vector<AdeComponent> types;
  for (auto &bc : dynkin_components(basis)) {
    types.push_back(bc.type);
    for (auto i : bc.nodes) sc.basis.push_back(basis[i]);
  }
  sc.type = AdeType(types);
  sc.quotient = quotient_invariants(sc.basis);
  return sc;
}

/// All root subsystems of E8 up to (type, quotient invariants), by iterated
/// node deletion from ordinary and extended Dynkin diagrams starting at E8.
/// Sorted by type, then by quotient.
inline auto enumerate_subsystems() -> std::vector<SubsystemClass> {
  const auto &E = RootSystemE8::instance();
  using Key = std::pair<AdeType, QuotientInvariants>;
  // exploration is keyed more finely than the output so that merged classes
  // cannot hide descendants
  using ExploreKey = std::tuple<AdeType, QuotientInvariants, std::vector<std::pair<std::string, QuotientInvariants>>>;
  std::map<Key, SubsystemClass> classes;
  std::set<ExploreKey> visited;
  std::deque<std::vector<RootVec>> queue;
  queue.push_back(E.simple_roots());
  while (!queue.empty()) {
    auto basis = std::move(queue.front());
    queue.pop_front();
    auto comps = dynkin_components(basis);
    SubsystemClass sc = canonical_subsystem(basis);
    std::vector<std::pair<std::string, QuotientInvariants>> fine;
    for (std::size_t c = 0; c < comps.size(); ++c) {
      std::vector<RootVec> rest;
      for (std::size_t d = 0; d < comps.size(); ++d)
        if (d != c)
          for (auto i : comps[d].nodes) rest.push_back(basis[i]);
      fine.emplace_back(comps[c].type.name(), quotient_invariants(rest));
    }
    std::sort(fine.begin(), fine.end());
    if (!visited.insert({sc.type, sc.quotient, fine}).second) continue;
    classes.emplace(Key{sc.type, sc.quotient}, sc);
    for (std::size_t c = 0; c < comps.size(); ++c) {
      std::vector<RootVec> others, mine;
      for (std::size_t d = 0; d < comps.size(); ++d)
        for (auto i : comps[d].nodes) (d == c ? mine : others).push_back(basis[i]);
      for (std::size_t v = 0; v < mine.size(); ++v) {
        std::vector<RootVec> child = others;
        for (std::size_t w = 0; w < mine.size(); ++w)
          if (w != v) child.push_back(mine[w]);
        queue.push_back(child);
      }
      const RootVec theta = -highest_root(mine);
      for (std::size_t v = 0; v < mine.size(); ++v) {
        std::vector<RootVec> child = others;
        for (std::size_t w = 0; w < mine.size(); ++w)
          if (w != v) child.push_back(mine[w]);
        child.push_back(theta);
        queue.push_back(child);
      }
    }
  }
  std::vector<SubsystemClass> out;
  for (auto &[k, v] : classes) out.push_back(v);
  return out;
}

/// Enumerated table, built once.
inline auto subsystem_table() -> const std::vector<SubsystemClass> & {
  static const std::vector<SubsystemClass> table = enumerate_subsystems();
  return table;
}

inline auto classes_of_type(const AdeType &t) -> std::vector<SubsystemClass> {
  std::vector<SubsystemClass> out;
  for (auto &c : subsystem_table())
    if (c.type == t) out.push_back(c);
  return out;
}

/// Every ADE type of total rank between 0 and max_rank (E-ranks 6..8, D-ranks >= 4).
inline auto all_ade_types(int max_rank) -> std::vector<AdeType> {
  std::vector<AdeComponent> atoms;
  for (int n = 1; n <= max_rank; ++n) atoms.push_back({Letter::A, n});
  for (int n = 4; n <= max_rank; ++n) atoms.push_back({Letter::D, n});
  for (int n = 6; n <= std::min(8, max_rank); ++n) atoms.push_back({Letter::E, n});
  std::vector<AdeType> out;
  std::vector<AdeComponent> cur;
  std::function<void(std::size_t, int)> rec = [&](std::size_t from, int left) {
    out.emplace_back(cur);
    for (std::size_t i = from; i < atoms.size(); ++i) {
      if (atoms[i].rank > left) continue;
      cur.push_back(atoms[i]);
      rec(i, left - atoms[i].rank);
      cur.pop_back();
    }
  };
  rec(0, max_rank);
  std::sort(out.begin(), out.end());
  return out;
}

/// Independent embeddability test: backtracking search for roots with the
/// Cartan pairings of the type. Returns the basis found, or empty.
inline auto find_embedding(const AdeType &t) -> std::vector<RootVec> {
  const auto &E = RootSystemE8::instance();
  const auto &R = E.roots();
  const std::size_t N = R.size();
  using Bits = std::bitset<240>;
  static const auto tables = [&] {
    std::vector<Bits> orth(N), adj(N);
    for (std::size_t a = 0; a < N; ++a)
      for (std::size_t b = 0; b < N; ++b) {
        int c = E.cartan_form(R[a], R[b]);
        if (c == 0) orth[a].set(b);
        if (c == -1) adj[a].set(b);
      }
    return std::make_pair(orth, adj);
  }();
  const auto &orth = tables.first;
  const auto &adj = tables.second;
  if (t.empty()) return {};
  // nodes: components in order, each in its Cartan order
  std::vector<std::vector<int>> pair;
  std::vector<int> comp_of, first_of_comp;
  std::vector<int> start;
  for (auto &c : t.components()) {
    auto C = cartan_matrix(c);
    const int base = static_cast<int>(comp_of.size());
    start.push_back(base);
    for (int i = 0; i < c.rank; ++i) comp_of.push_back(static_cast<int>(start.size()) - 1);
    pair.resize(comp_of.size());
    for (int i = 0; i < c.rank; ++i) {
      auto &row = pair[static_cast<std::size_t>(base + i)];
      row.assign(comp_of.size(), 0);
      for (int j = 0; j < i; ++j) row[static_cast<std::size_t>(base + j)] = C[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
  }
  const std::size_t n = comp_of.size();
  for (auto &row : pair) row.resize(n, 0);
  std::vector<int> chosen(n, -1);
  const auto &comps = t.components();
  // positive roots: first nonzero coordinate positive
  auto positive = [&](std::size_t r) {
    for (auto x : R[r])
      if (x) return x > 0;
    return false;
  };
  std::function<bool(std::size_t)> rec = [&](std::size_t k) -> bool {
    if (k == n) return true;
    Bits cand;
    cand.set();
    for (std::size_t j = 0; j < k; ++j) cand &= pair[k][j] == -1 ? adj[static_cast<std::size_t>(chosen[j])] : orth[static_cast<std::size_t>(chosen[j])];
    const int ci = comp_of[k];
    const bool comp_start = static_cast<int>(k) == start[static_cast<std::size_t>(ci)];
    // symmetry breaking: the first root may be fixed; equal consecutive
    // components are chosen with increasing first roots; A1 roots up to sign
    int min_first = -1;
    if (comp_start && ci > 0 && comps[static_cast<std::size_t>(ci)] == comps[static_cast<std::size_t>(ci - 1)])
      min_first = chosen[static_cast<std::size_t>(start[static_cast<std::size_t>(ci - 1)])];
    for (std::size_t r = 0; r < N; ++r) {
      if (!cand[r]) continue;
      if (k == 0 && r != 0) break;
      if (comp_start && static_cast<int>(r) <= min_first) continue;
      if (comps[static_cast<std::size_t>(ci)].rank == 1 && !positive(r) && k != 0) continue;
      chosen[k] = static_cast<int>(r);
      if (rec(k + 1)) return true;
    }
    chosen[k] = -1;
    return false;
  };
  if (!rec(0)) return {};
  std::vector<RootVec> out;
  for (auto r : chosen) out.push_back(R[static_cast<std::size_t>(r)]);
  return out;
}

} // namespace rdp
