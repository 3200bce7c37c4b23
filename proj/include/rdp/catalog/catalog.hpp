#pragma once

#include <fstream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "rdp/catalog_data.hpp"
#include "rdp/lattice/decide.hpp"
#include "rdp/weierstrass/kind.hpp"
#include "rdp/weierstrass/parse.hpp"

namespace rdp {

// ---------------------------------------------------------------------------
// predicates on parameter values

/// Boolean combination of polynomial (in)equalities between parameters.
struct Predicate {
  enum class Op { True, Zero, NonZero, And, Or };
  Op op = Op::True;
  SymPoly diff; // Zero / NonZero: lhs - rhs
  std::vector<Predicate> kids;

  [[nodiscard]] auto eval(const Field &F, const std::map<std::string, Fq> &values) const -> bool {
    switch (op) {
    case Op::True: return true;
    case Op::Zero:
    case Op::NonZero: {
      std::map<std::string, BiPoly> env;
      for (auto &[k, v] : values) env.emplace(k, BiPoly::constant(v));
      const bool z = eval_form(diff, F, env).is_zero();
      return op == Op::Zero ? z : !z;
    }
    case Op::And:
      for (auto &k : kids)
        if (!k.eval(F, values)) return false;
      return true;
    case Op::Or:
      for (auto &k : kids)
        if (k.eval(F, values)) return true;
      return false;
    }
    return false;
  }

  [[nodiscard]] auto symbols() const -> std::set<std::string> {
    std::set<std::string> out = diff.symbols();
    for (auto &k : kids)
      for (auto &v : k.symbols()) out.insert(v);
    return out;
  }
};

namespace detail {

// pred := conj ("|" conj)*;  conj := atom ("&" atom)*
// atom := "(" pred ")" | expr (("=" | "!=") expr)+
class PredicateParser {
public:
  PredicateParser(const std::string &text, std::function<bool(const std::string &)> allowed)
      : P_(text, std::move(allowed)) {}

  auto parse_all() -> Predicate {
    Predicate r = disj();
    if (!P_.at_end()) P_.fail("unexpected trailing input");
    return r;
  }

private:
  auto disj() -> Predicate {
    Predicate r{Predicate::Op::Or, {}, {conj()}};
    while (P_.accept('|')) r.kids.push_back(conj());
    return r.kids.size() == 1 ? r.kids[0] : r;
  }
  auto conj() -> Predicate {
    Predicate r{Predicate::Op::And, {}, {atom()}};
    while (P_.accept('&')) r.kids.push_back(atom());
    return r.kids.size() == 1 ? r.kids[0] : r;
  }
  auto atom() -> Predicate {
    const std::size_t start = P_.position();
    if (P_.accept('(')) {
      // a parenthesized predicate, or an expression that starts with "("
      try {
        Predicate inner = disj();
        if (P_.accept(')')) return inner;
      } catch (const Error &) {
      }
      P_.seek(start);
    }
    Predicate r{Predicate::Op::And, {}, {}};
    SymPoly lhs = P_.expr();
    for (;;) {
      Predicate::Op op;
      if (P_.accept('=')) {
        op = Predicate::Op::Zero;
      } else if (P_.accept('!')) {
        if (!P_.accept('=')) P_.fail("expected '=' after '!'");
        op = Predicate::Op::NonZero;
      } else {
        break;
      }
      SymPoly rhs = P_.expr();
      r.kids.push_back(Predicate{op, lhs - rhs, {}});
      lhs = rhs;
    }
    if (r.kids.empty()) P_.fail("expected '=' or '!='");
    return r.kids.size() == 1 ? r.kids[0] : r;
  }

  ExprParser P_;
};

} // namespace detail

inline auto parse_predicate(const std::string &text, const std::set<std::string> &params) -> Predicate {
  detail::PredicateParser P(text, [&](const std::string &v) { return params.count(v) > 0; });
  return P.parse_all();
}

// ---------------------------------------------------------------------------
// rows

struct SubRow {
  std::string label;
  std::string extra; // configuration added to the base
  std::string condition;
  Predicate when;
};

struct CatalogRow {
  std::string id;
  int table = 0;
  std::uint64_t p = 0;
  std::string type_label;
  FibrationKind kind = FibrationKind::Elliptic;
  std::vector<std::string> params;
  std::string equation_text;
  std::optional<SymEquation> equation;
  std::vector<std::string> require_text;
  std::vector<Predicate> require;
  std::string config;
  std::vector<SubRow> extras;
  std::string delta_text;
  SymPoly delta;
  std::string j_text;
  bool j_undefined = false;
  SymPoly j_num, j_den;
  bool degree2_only = false;
  bool skip_degenerate = false;
  int line = 0;

  /// Sub-row 0 is the base case; i >= 1 is extras[i-1].
  [[nodiscard]] auto sub_rows() const -> std::size_t { return extras.size() + 1; }
  [[nodiscard]] auto sub_label(std::size_t i) const -> std::string { return i ? extras[i - 1].label : "base"; }
  [[nodiscard]] auto expected(std::size_t i) const -> RdpConfiguration {
    return RdpConfiguration::parse(i ? config + "+" + extras[i - 1].extra : config, p);
  }
  [[nodiscard]] auto satisfies_constraints(const Field &F, const std::map<std::string, Fq> &v) const -> bool {
    for (auto &r : require)
      if (!r.eval(F, v)) return false;
    return true;
  }
  /// The sub-row an assignment falls in: the unique extra whose condition
  /// holds, 0 when none holds, nullopt when several hold.
  [[nodiscard]] auto sub_row_of(const Field &F, const std::map<std::string, Fq> &v) const
      -> std::optional<std::size_t> {
    std::optional<std::size_t> hit;
    for (std::size_t i = 0; i < extras.size(); ++i)
      if (extras[i].when.eval(F, v)) {
        if (hit) return std::nullopt;
        hit = i + 1;
      }
    return hit ? hit : std::optional<std::size_t>(0);
  }
};

struct Catalog {
  std::vector<CatalogRow> rows;
  std::vector<std::pair<std::uint64_t, std::string>> absent;

  [[nodiscard]] auto find(const std::string &id) const -> const CatalogRow * {
    for (auto &r : rows)
      if (r.id == id) return &r;
    return nullptr;
  }

  /// Configurations listed for characteristic p, by printed form.
  [[nodiscard]] auto membership(std::uint64_t p) const -> CatalogMembership {
    CatalogMembership m;
    for (auto &r : rows) {
      if (r.p != p) continue;
      for (std::size_t i = 0; i < r.sub_rows(); ++i)
        (r.degree2_only ? m.degree2_only : m.degree1).insert(r.expected(i).to_string());
    }
    return m;
  }
};

namespace detail {

inline auto trim(const std::string &s) -> std::string {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  return s.substr(a, s.find_last_not_of(" \t\r") - a + 1);
}

inline void finish_row(CatalogRow &r, const std::set<std::string> &seen_keys) {
  auto fail = [&](const std::string &why) { return Error("catalog line " + std::to_string(r.line) + ": row " + r.id + ": " + why); };
  if (!seen_keys.count("char")) throw fail("missing char");
  if (!seen_keys.count("config")) throw fail("missing config");
  try {
    for (std::size_t i = 0; i < r.sub_rows(); ++i) {
      const auto c = r.expected(i);
      c.validate();
      if (c.rank() > 8) throw fail("configuration rank above 8");
    }
  } catch (const Error &e) {
    const std::string w = e.what();
    if (w.rfind("catalog line", 0) == 0) throw;
    throw fail(w);
  }
  if (r.degree2_only) {
    for (auto &k : seen_keys)
      if (k != "char" && k != "config" && k != "table" && k != "degree-2-only") throw fail("degree-2-only row with " + k);
    return;
  }
  for (auto k : {"eq", "delta", "j", "kind"})
    if (!seen_keys.count(k)) throw fail(std::string("missing ") + k);
  const bool qe = r.kind == FibrationKind::QuasiElliptic;
  if (qe && r.p != 2 && r.p != 3) throw fail("quasi-elliptic row outside characteristic 2 and 3");
  if (qe != r.delta.is_zero()) throw fail("discriminant inconsistent with the fibration kind");
  if (qe != r.j_undefined) throw fail("j inconsistent with the fibration kind");
  for (auto &[m, c] : r.delta.terms()) {
    unsigned d = 0;
    for (auto &[v, e] : m)
      if (v == "t" || v == "s") d += e;
    if (d != 12) throw fail("discriminant is not of degree 12");
  }
  const std::set<std::string> declared(r.params.begin(), r.params.end());
  std::set<std::string> used = r.equation->parameters();
  for (auto &p : r.require)
    for (auto &v : p.symbols()) used.insert(v);
  for (auto &e : r.extras)
    for (auto &v : e.when.symbols()) used.insert(v);
  for (auto &v : declared)
    if (!used.count(v)) throw fail("parameter " + v + " is never used");
}

} // namespace detail

/// Parses the catalog text. Errors name the line.
inline auto parse_catalog(const std::string &text) -> Catalog {
  Catalog cat;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  std::optional<CatalogRow> cur;
  std::set<std::string> keys;
  std::set<std::string> ids;
  auto fail = [&](const std::string &why) { return Error("catalog line " + std::to_string(lineno) + ": " + why); };
  while (std::getline(in, raw)) {
    ++lineno;
    const std::string line = detail::trim(raw);
    if (line.empty() || line[0] == '#') continue;
    const auto sp = line.find(' ');
    const std::string key = line.substr(0, sp);
    const std::string val = sp == std::string::npos ? "" : detail::trim(line.substr(sp + 1));
    if (!cur) {
      if (key == "row") {
        if (val.empty()) throw fail("row without id");
        if (!ids.insert(val).second) throw fail("duplicate row id " + val);
        cur = CatalogRow{};
        cur->id = val;
        cur->line = lineno;
        keys.clear();
      } else if (key == "absent") {
        std::istringstream vs(val);
        std::uint64_t p = 0;
        std::string c;
        if (!(vs >> p >> c)) throw fail("expected 'absent <p> <configuration>'");
        try {
          RdpConfiguration::parse(c, p).validate();
        } catch (const Error &e) {
          throw fail(e.what());
        }
        cat.absent.emplace_back(p, c);
      } else {
        throw fail("unexpected '" + key + "' outside a row");
      }
      continue;
    }
    CatalogRow &r = *cur;
    if (key == "end") {
      detail::finish_row(r, keys);
      cat.rows.push_back(std::move(r));
      cur.reset();
      continue;
    }
    if (key != "extra" && key != "require" && !keys.insert(key).second) throw fail("repeated key " + key);
    keys.insert(key);
    const std::set<std::string> params(r.params.begin(), r.params.end());
    try {
      if (key == "table") {
        r.table = std::stoi(val);
      } else if (key == "char") {
        r.p = std::stoull(val);
        if (!detail::is_prime(r.p)) throw Error("characteristic must be prime");
      } else if (key == "type") {
        r.type_label = val;
      } else if (key == "kind") {
        if (val == "elliptic") r.kind = FibrationKind::Elliptic;
        else if (val == "quasi-elliptic") r.kind = FibrationKind::QuasiElliptic;
        else throw Error("unknown kind " + val);
      } else if (key == "params") {
        if (keys.count("eq")) throw Error("params must precede eq");
        std::istringstream vs(val);
        for (std::string v; vs >> v;) {
          if (v == "t" || v == "s" || v == "x" || v == "y" || v == "a" || v == "Delta")
            throw Error("reserved parameter name " + v);
          r.params.push_back(v);
        }
      } else if (key == "eq") {
        if (!r.p) throw Error("char must precede eq");
        r.equation_text = val;
        r.equation = parse_symbolic_equation(val, r.p, params);
      } else if (key == "require") {
        r.require_text.push_back(val);
        r.require.push_back(parse_predicate(val, params));
      } else if (key == "config") {
        r.config = val;
      } else if (key == "extra") {
        // extra "label" C when PRED
        if (val.empty() || val[0] != '"') throw Error("expected a quoted sub-row label");
        const auto close = val.find('"', 1);
        if (close == std::string::npos) throw Error("unterminated sub-row label");
        SubRow s;
        s.label = val.substr(1, close - 1);
        const std::string rest = detail::trim(val.substr(close + 1));
        const auto w = rest.find(" when ");
        if (w == std::string::npos) throw Error("expected 'when'");
        s.extra = detail::trim(rest.substr(0, w));
        s.condition = detail::trim(rest.substr(w + 6));
        s.when = parse_predicate(s.condition, params);
        r.extras.push_back(std::move(s));
      } else if (key == "delta") {
        r.delta_text = val;
        r.delta = parse_expression(val, [&](const std::string &v) { return v == "t" || v == "s" || params.count(v); });
      } else if (key == "j") {
        r.j_text = val;
        if (val == "undefined") {
          r.j_undefined = true;
        } else {
          auto allowed = [&](const std::string &v) {
            return v == "t" || v == "s" || v == "Delta" || params.count(v);
          };
          const auto slash = val.find('/');
          r.j_num = parse_expression(val.substr(0, slash), allowed);
          r.j_den = slash == std::string::npos ? SymPoly::constant(1) : parse_expression(val.substr(slash + 1), allowed);
        }
      } else if (key == "degree-2-only") {
        r.degree2_only = true;
      } else if (key == "skip-degenerate") {
        r.skip_degenerate = true;
      } else {
        throw Error("unknown key " + key);
      }
    } catch (const Error &e) {
      throw fail("row " + r.id + ": " + e.what());
    } catch (const std::logic_error &) {
      throw fail("row " + r.id + ": malformed value for " + key);
    }
  }
  if (cur) throw fail("row " + cur->id + " is not terminated by 'end'");
  return cat;
}

/// The catalog compiled into the library.
inline auto load_catalog() -> const Catalog & {
  static const Catalog cat = parse_catalog(generated::kCatalogText);
  return cat;
}

} // namespace rdp
