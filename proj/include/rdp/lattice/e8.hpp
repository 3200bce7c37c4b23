#pragma once

#include <array>
#include <map>
#include <set>
#include <vector>

#include "rdp/lattice/ade.hpp"

namespace rdp {

using RootVec = std::array<int, 8>;

/// The E8 root system in coordinates over its simple roots (Bourbaki order).
/// Those coordinates span the lattice over Z, and the lattice is unimodular.
/// The Gram form is the negated Cartan form, so roots have square -2.
class RootSystemE8 {
public:
  static auto instance() -> const RootSystemE8 & {
    static const RootSystemE8 R;
    return R;
  }

  [[nodiscard]] auto roots() const -> const std::vector<RootVec> & { return roots_; }
  [[nodiscard]] auto simple_roots() const -> std::vector<RootVec> {
    std::vector<RootVec> out;
    for (int i = 0; i < 8; ++i) {
      RootVec v{};
      v[static_cast<std::size_t>(i)] = 1;
      out.push_back(v);
    }
    return out;
  }
  /// Lattice pairing (negative definite).
  [[nodiscard]] auto gram(const RootVec &a, const RootVec &b) const -> int { return -cartan_form(a, b); }
  /// Cartan pairing (positive definite); roots have square 2.
  [[nodiscard]] auto cartan_form(const RootVec &a, const RootVec &b) const -> int {
    int s = 0;
    for (std::size_t i = 0; i < 8; ++i) {
      if (!a[i]) continue;
      for (std::size_t j = 0; j < 8; ++j) s += a[i] * C_[i][j] * b[j];
    }
    return s;
  }
  [[nodiscard]] auto index_of(const RootVec &r) const -> int {
    auto it = idx_.find(r);
    return it == idx_.end() ? -1 : it->second;
  }

private:
  RootSystemE8() {
    auto C = cartan_matrix({Letter::E, 8});
    for (std::size_t i = 0; i < 8; ++i)
      for (std::size_t j = 0; j < 8; ++j) C_[i][j] = C[i][j];
    // closure of the simple roots under simple reflections
    std::set<RootVec> seen;
    std::vector<RootVec> todo = simple_roots();
    for (auto &r : todo) seen.insert(r);
    while (!todo.empty()) {
      RootVec r = todo.back();
      todo.pop_back();
      for (std::size_t i = 0; i < 8; ++i) {
        int c = 0;
        for (std::size_t j = 0; j < 8; ++j) c += r[j] * C_[j][i];
        RootVec s = r;
        s[i] -= c;
        if (seen.insert(s).second) todo.push_back(s);
      }
    }
    roots_.assign(seen.begin(), seen.end());
    for (std::size_t k = 0; k < roots_.size(); ++k) idx_[roots_[k]] = static_cast<int>(k);
  }

  std::array<std::array<int, 8>, 8> C_{};
  std::vector<RootVec> roots_;
  std::map<RootVec, int> idx_;
};

inline auto operator+(const RootVec &a, const RootVec &b) -> RootVec {
  RootVec r{};
  for (std::size_t i = 0; i < 8; ++i) r[i] = a[i] + b[i];
  return r;
}
inline auto operator-(const RootVec &a) -> RootVec {
  RootVec r{};
  for (std::size_t i = 0; i < 8; ++i) r[i] = -a[i];
  return r;
}
inline auto scaled(const RootVec &a, int k) -> RootVec {
  RootVec r{};
  for (std::size_t i = 0; i < 8; ++i) r[i] = k * a[i];
  return r;
}

} // namespace rdp
