#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "rdp/algebra/field.hpp"

namespace rdp {

enum class Letter { A, D, E };

inline auto letter_char(Letter l) -> char { return l == Letter::A ? 'A' : (l == Letter::D ? 'D' : 'E'); }

/// One irreducible root lattice, e.g. D4.
struct AdeComponent {
  Letter letter = Letter::A;
  int rank = 1;

  friend auto operator==(const AdeComponent &, const AdeComponent &) -> bool = default;
  // Display order: E before D before A, larger rank first.
  friend auto operator<(const AdeComponent &a, const AdeComponent &b) -> bool {
    if (a.letter != b.letter) return static_cast<int>(a.letter) > static_cast<int>(b.letter);
    return a.rank > b.rank;
  }
  [[nodiscard]] auto name() const -> std::string { return std::string(1, letter_char(letter)) + std::to_string(rank); }
  [[nodiscard]] auto valid() const -> bool {
    switch (letter) {
    case Letter::A: return rank >= 1;
    case Letter::D: return rank >= 4;
    case Letter::E: return rank >= 6 && rank <= 8;
    }
    return false;
  }
};

/// Cartan matrix (positive definite; the lattice Gram matrix is its negative).
inline auto cartan_matrix(const AdeComponent &c) -> std::vector<std::vector<int>> {
  const int n = c.rank;
  std::vector<std::vector<int>> C(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), 0));
  auto edge = [&](int i, int j) {
    C[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = -1;
    C[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = -1;
  };
  for (int i = 0; i < n; ++i) C[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 2;
  switch (c.letter) {
  case Letter::A:
    for (int i = 0; i + 1 < n; ++i) edge(i, i + 1);
    break;
  case Letter::D:
    // chain 0..n-2, node n-1 attached to n-3
    for (int i = 0; i + 2 < n; ++i) edge(i, i + 1);
    edge(n - 3, n - 1);
    break;
  case Letter::E:
    // Bourbaki: 1-3-4-5-6-7-8 chain with 2 attached to 4
    edge(0, 2);
    edge(1, 3);
    for (int i = 2; i + 1 < n; ++i) edge(i, i + 1);
    break;
  }
  return C;
}

inline auto cartan_determinant(const AdeComponent &c) -> std::int64_t {
  switch (c.letter) {
  case Letter::A: return c.rank + 1;
  case Letter::D: return 4;
  case Letter::E: return 9 - c.rank;
  }
  return 0;
}

/// A finite sum of irreducible root lattices, kept sorted.
class AdeType {
public:
  AdeType() = default;
  explicit AdeType(std::vector<AdeComponent> c) : c_(std::move(c)) {
    for (auto &x : c_)
      if (!x.valid()) throw Error("invalid root lattice " + x.name());
    std::sort(c_.begin(), c_.end());
  }

  [[nodiscard]] auto components() const -> const std::vector<AdeComponent> & { return c_; }
  [[nodiscard]] auto rank() const -> int {
    int r = 0;
    for (auto &x : c_) r += x.rank;
    return r;
  }
  [[nodiscard]] auto determinant() const -> std::int64_t {
    std::int64_t d = 1;
    for (auto &x : c_) d *= cartan_determinant(x);
    return d;
  }
  [[nodiscard]] auto empty() const -> bool { return c_.empty(); }

  friend auto operator==(const AdeType &, const AdeType &) -> bool = default;
  friend auto operator<(const AdeType &a, const AdeType &b) -> bool {
    return std::lexicographical_compare(a.c_.begin(), a.c_.end(), b.c_.begin(), b.c_.end());
  }

  /// "D4+4A1"; the empty type prints as "0".
  [[nodiscard]] auto to_string() const -> std::string {
    if (c_.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < c_.size();) {
      std::size_t j = i;
      while (j < c_.size() && c_[j] == c_[i]) ++j;
      if (!out.empty()) out += "+";
      if (j - i > 1) out += std::to_string(j - i);
      out += c_[i].name();
      i = j;
    }
    return out;
  }

  static auto parse(const std::string &text) -> AdeType;

private:
  std::vector<AdeComponent> c_;
};

/// A rational double point: Dynkin type and Artin coindex (0 for taut types).
struct RdpClass {
  AdeComponent type;
  int coindex = 0;

  friend auto operator==(const RdpClass &, const RdpClass &) -> bool = default;
  friend auto operator<(const RdpClass &a, const RdpClass &b) -> bool {
    if (!(a.type == b.type)) return a.type < b.type;
    return a.coindex < b.coindex;
  }
};

/// Largest Artin coindex of a Dynkin type in characteristic p (0 when taut).
inline auto max_coindex(const AdeComponent &c, std::uint64_t p) -> int {
  if (p == 2) {
    if (c.letter == Letter::D) return c.rank / 2 - 1;
    if (c.letter == Letter::E) return c.rank == 6 ? 1 : (c.rank == 7 ? 3 : 4);
    return 0;
  }
  if (p == 3 && c.letter == Letter::E) return c.rank == 8 ? 2 : 1;
  if (p == 5 && c.letter == Letter::E && c.rank == 8) return 1;
  return 0;
}

inline auto is_taut(const AdeComponent &c, std::uint64_t p) -> bool { return max_coindex(c, p) == 0; }

/// "D6^2" or, for taut types, "A1".
inline auto rdp_name(const RdpClass &r, std::uint64_t p) -> std::string {
  if (is_taut(r.type, p)) return r.type.name();
  return r.type.name() + "^" + std::to_string(r.coindex);
}

/// A multiset of RDPs in a fixed characteristic.
class RdpConfiguration {
public:
  RdpConfiguration() = default;
  RdpConfiguration(std::vector<RdpClass> c, std::uint64_t p) : c_(std::move(c)), p_(p) {
    std::sort(c_.begin(), c_.end());
  }

  [[nodiscard]] auto classes() const -> const std::vector<RdpClass> & { return c_; }
  [[nodiscard]] auto characteristic() const -> std::uint64_t { return p_; }
  [[nodiscard]] auto lattice() const -> AdeType {
    std::vector<AdeComponent> v;
    for (auto &r : c_) v.push_back(r.type);
    return AdeType(v);
  }
  [[nodiscard]] auto rank() const -> int { return lattice().rank(); }
  [[nodiscard]] auto has_non_taut_summand() const -> bool {
    return std::any_of(c_.begin(), c_.end(), [&](const RdpClass &r) { return !is_taut(r.type, p_); });
  }

  /// Throws when some coindex is out of range for its type in this characteristic.
  void validate() const {
    for (auto &r : c_)
      if (r.coindex < 0 || r.coindex > max_coindex(r.type, p_))
        throw Error("no such singularity in characteristic " + std::to_string(p_) + ": " + r.type.name() +
                    "^" + std::to_string(r.coindex));
  }

  friend auto operator==(const RdpConfiguration &a, const RdpConfiguration &b) -> bool {
    return a.p_ == b.p_ && a.c_ == b.c_;
  }
  friend auto operator<(const RdpConfiguration &a, const RdpConfiguration &b) -> bool {
    return std::lexicographical_compare(a.c_.begin(), a.c_.end(), b.c_.begin(), b.c_.end());
  }

  /// Taut summands carry multiplicity prefixes ("3A1"); repeated non-taut
  /// summands are written out ("D4^0+D4^0"). The empty configuration is "0".
  [[nodiscard]] auto to_string() const -> std::string {
    if (c_.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < c_.size();) {
      std::size_t j = i;
      while (j < c_.size() && c_[j] == c_[i]) ++j;
      const bool taut = is_taut(c_[i].type, p_);
      for (std::size_t k = i; k < (taut ? i + 1 : j); ++k) {
        if (!out.empty()) out += "+";
        if (taut && j - i > 1) out += std::to_string(j - i);
        out += rdp_name(c_[i], p_);
      }
      i = j;
    }
    return out;
  }

  static auto parse(const std::string &text, std::uint64_t p) -> RdpConfiguration;

private:
  std::vector<RdpClass> c_;
  std::uint64_t p_ = 0;
};

namespace detail {

// One summand "3A1", "D4^0", "2D4^1", "E_8^1" (underscores ignored).
struct Summand {
  int mult = 1;
  AdeComponent comp;
  int coindex = -1; // -1: not given
};

inline auto parse_summands(const std::string &raw) -> std::vector<Summand> {
  std::string text;
  for (char ch : raw)
    if (!std::isspace(static_cast<unsigned char>(ch)) && ch != '_' && ch != '{' && ch != '}') text += ch;
  if (text.empty() || text == "0") return {};
  std::vector<Summand> out;
  std::size_t i = 0;
  auto fail = [&](const std::string &why) -> Error {
    return Error("cannot parse configuration '" + raw + "' at position " + std::to_string(i) + ": " + why);
  };
  auto number = [&]() -> int {
    if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i]))) throw fail("expected a number");
    int v = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      v = v * 10 + (text[i] - '0');
      if (v > 1000) throw fail("number too large");
      ++i;
    }
    return v;
  };
  for (;;) {
    Summand s;
    if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) s.mult = number();
    if (i >= text.size()) throw fail("expected A, D or E");
    char L = static_cast<char>(std::toupper(static_cast<unsigned char>(text[i])));
    if (L != 'A' && L != 'D' && L != 'E') throw fail("expected A, D or E");
    ++i;
    s.comp.letter = L == 'A' ? Letter::A : (L == 'D' ? Letter::D : Letter::E);
    s.comp.rank = number();
    if (!s.comp.valid()) throw fail("invalid root lattice " + s.comp.name());
    if (i < text.size() && text[i] == '^') {
      ++i;
      s.coindex = number();
    }
    if (s.mult < 1) throw fail("zero multiplicity");
    out.push_back(s);
    if (i == text.size()) break;
    if (text[i] != '+') throw fail("expected '+'");
    ++i;
  }
  return out;
}

} // namespace detail

inline auto AdeType::parse(const std::string &text) -> AdeType {
  std::vector<AdeComponent> v;
  for (auto &s : detail::parse_summands(text)) {
    if (s.coindex > 0) throw Error("a root lattice type carries no coindex: " + text);
    for (int k = 0; k < s.mult; ++k) v.push_back(s.comp);
  }
  return AdeType(v);
}

inline auto RdpConfiguration::parse(const std::string &text, std::uint64_t p) -> RdpConfiguration {
  std::vector<RdpClass> v;
  for (auto &s : detail::parse_summands(text)) {
    int k = s.coindex;
    if (k < 0) {
      if (!is_taut(s.comp, p))
        throw Error("coindex required for " + s.comp.name() + " in characteristic " + std::to_string(p));
      k = 0;
    }
    for (int m = 0; m < s.mult; ++m) v.push_back({s.comp, k});
  }
  RdpConfiguration c(v, p);
  c.validate();
  return c;
}

} // namespace rdp
