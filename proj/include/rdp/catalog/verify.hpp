#pragma once

#include <future>
#include <random>

#include "rdp/catalog/catalog.hpp"
#include "rdp/surface.hpp"

namespace rdp {

// ---------------------------------------------------------------------------
// sampling

struct Assignment {
  const Field *field = nullptr;
  std::map<std::string, Fq> values;

  [[nodiscard]] auto to_string() const -> std::string {
    if (values.empty()) return "-";
    std::string out;
    for (auto &[k, v] : values) out += (out.empty() ? "" : ", ") + k + " = " + v.to_string();
    return out;
  }
  [[nodiscard]] auto field_name() const -> std::string {
    const std::string p = std::to_string(field->characteristic());
    return field->degree() == 1 ? "GF(" + p + ")" : "GF(" + p + "^" + std::to_string(field->degree()) + ")";
  }
};

struct SubRowSample {
  std::size_t sub = 0;
  std::vector<Assignment> assignments;
  [[nodiscard]] auto vacuous() const -> bool { return assignments.empty(); }
};

namespace detail {

inline constexpr std::size_t kFromPrimeField = 2;
inline constexpr std::size_t kPerSubRow = 4;
inline constexpr std::size_t kMinPerSubRow = 3;

// FNV-1a, so that the enumeration order does not depend on the library.
inline auto stable_hash(const std::string &s) -> std::uint64_t {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) h = (h ^ c) * 1099511628211ULL;
  return h;
}

// All tuples over F in a fixed pseudo-random order; with `new_only` only
// tuples that leave the prime subfield.
inline auto tuples(const Field &F, std::size_t n, bool new_only, std::uint64_t seed)
    -> std::vector<std::vector<std::uint64_t>> {
  std::vector<std::vector<std::uint64_t>> out;
  std::vector<std::uint64_t> cur(n, 0);
  const std::uint64_t q = F.size(), p = F.characteristic();
  for (;;) {
    bool fresh = false;
    for (auto v : cur) fresh = fresh || v >= p;
    if (!new_only || fresh) out.push_back(cur);
    std::size_t i = 0;
    while (i < n && ++cur[i] == q) cur[i++] = 0;
    if (i == n) break;
  }
  std::mt19937_64 rng(seed);
  std::shuffle(out.begin(), out.end(), rng);
  return out;
}

} // namespace detail

/// Parameter assignments per sub-row: each satisfies the side constraints
/// and exactly that sub-row's condition. Up to two come from GF(p), the rest
/// from GF(p^2), four in all; GF(p) tops up when GF(p^2) falls short of
/// three. Deterministic.
inline auto sample_row_instances(const CatalogRow &row) -> std::vector<SubRowSample> {
  std::vector<SubRowSample> out(row.sub_rows());
  for (std::size_t i = 0; i < out.size(); ++i) out[i].sub = i;
  if (row.degree2_only) return {};
  const std::size_t n = row.params.size();
  const Field &Fp = Field::get(row.p), &Fp2 = Field::get(row.p, 2);
  const std::uint64_t seed = detail::stable_hash(row.id);

  auto fill = [&](const Field &F, bool new_only, std::size_t cap) {
    for (auto &tup : detail::tuples(F, n, new_only, seed)) {
      Assignment a{&F, {}};
      for (std::size_t i = 0; i < n; ++i) a.values.emplace(row.params[i], Fq(F, tup[i]));
      if (!row.satisfies_constraints(F, a.values)) continue;
      const auto sub = row.sub_row_of(F, a.values);
      if (!sub) continue;
      auto &slot = out[*sub].assignments;
      if (slot.size() < cap) slot.push_back(std::move(a));
    }
  };
  if (n == 0) {
    out[0].assignments.push_back({&Fp, {}});
    return out;
  }
  fill(Fp, false, detail::kFromPrimeField);
  fill(Fp2, true, detail::kPerSubRow);
  // top up from GF(p) without repeating what is there already
  for (auto &tup : detail::tuples(Fp, n, false, seed)) {
    Assignment a{&Fp, {}};
    for (std::size_t i = 0; i < n; ++i) a.values.emplace(row.params[i], Fq(Fp, tup[i]));
    if (!row.satisfies_constraints(Fp, a.values)) continue;
    const auto sub = row.sub_row_of(Fp, a.values);
    if (!sub) continue;
    auto &have = out[*sub].assignments;
    if (have.size() >= detail::kMinPerSubRow) continue;
    bool dup = false;
    for (auto &h : have) dup = dup || (h.field == &Fp && h.values == a.values);
    if (!dup) have.push_back(std::move(a));
  }
  return out;
}

// ---------------------------------------------------------------------------
// verification

struct InstanceResult {
  std::size_t sub = 0;
  std::string sub_label;
  std::string field;
  std::string assignment;
  std::string equation;
  std::string delta, expected_delta;
  std::string j, expected_j;
  bool delta_ok = false, j_ok = false;
  std::string kind, expected_kind;
  std::string configuration, expected_configuration;
  bool configuration_ok = false;
  // elliptic rows: singular points whose Tate type was compared with the
  // resolution type, and whether every comparison agreed
  std::size_t dual_checked = 0;
  bool dual_ok = true;
  int total_v_delta = 0;
  bool skipped = false;
  std::string error;
  bool pass = false;
};

struct RowVerdict {
  std::string id;
  std::vector<InstanceResult> instances;
  std::vector<std::string> warnings;
  bool pass = false;

  /// Sub-rows (by index) with at least one passing instance.
  [[nodiscard]] auto covered(std::size_t sub_rows) const -> std::vector<bool> {
    std::vector<bool> c(sub_rows, false);
    for (auto &i : instances)
      if (i.pass && !i.skipped) c[i.sub] = true;
    return c;
  }
};

inline auto verify_instance(const CatalogRow &row, std::size_t sub, const Assignment &a) -> InstanceResult {
  InstanceResult r;
  r.sub = sub;
  r.sub_label = row.sub_label(sub);
  r.field = a.field_name();
  r.assignment = a.to_string();
  r.expected_kind = kind_name(row.kind);
  const RdpConfiguration expected = row.expected(sub);
  r.expected_configuration = expected.to_string();
  const Field &F = *a.field;
  try {
    const WeierstrassEq e = row.equation->instantiate(F, a.values);
    r.equation = e.to_string();
    std::map<std::string, BiPoly> env;
    for (auto &[k, v] : a.values) env.emplace(k, BiPoly::constant(v));

    const SurfaceInvariants I = compute_invariants(e);
    const BiPoly want_delta = eval_form(row.delta, F, env);
    r.delta = I.delta.to_string();
    r.expected_delta = want_delta.to_string();
    r.delta_ok = I.delta == want_delta;
    r.j = I.j_string();
    if (row.j_undefined) {
      r.expected_j = "undefined";
      r.j_ok = !I.j_defined;
    } else {
      env.emplace("Delta", want_delta);
      const BiPoly den = eval_form(row.j_den, F, env);
      if (den.is_zero()) throw Error("expected j has a zero denominator");
      const FormRatio want_j = FormRatio::make(eval_form(row.j_num, F, env), den);
      r.expected_j = want_j.to_string();
      r.j_ok = I.j_defined && I.j == want_j;
    }

    SurfaceReport S;
    try {
      S = analyze_surface(e);
    } catch (const Error &err) {
      if (row.skip_degenerate && std::string(err.what()) == "not a rational double point") {
        r.skipped = true;
        r.error = err.what();
        r.pass = true;
        return r;
      }
      throw;
    }
    r.kind = kind_name(S.kind);
    r.configuration = S.singular.configuration.to_string();
    r.configuration_ok = S.singular.configuration == expected;
    if (S.fibers) {
      r.total_v_delta = S.fibers->total_v_delta;
      for (std::size_t i = 0; i < S.singular.points.size(); ++i) {
        const auto &fr = S.fibers->fibers[*S.fiber_of_point[i]];
        ++r.dual_checked;
        r.dual_ok = r.dual_ok && fr.type.rdp() == S.singular.verdicts[i].cls.type;
      }
      r.dual_ok = r.dual_ok && S.fibers->gamma == expected.lattice();
    }
    const bool kind_ok = S.kind == row.kind;
    const bool fibers_ok = row.kind != FibrationKind::Elliptic || (r.total_v_delta == 12 && r.dual_ok);
    r.pass = r.delta_ok && r.j_ok && kind_ok && r.configuration_ok && fibers_ok;
  } catch (const Error &err) {
    r.error = err.what();
    r.pass = false;
  }
  return r;
}

/// Every sampled instance of the row. The row passes when every instance
/// passes and every sub-row has a passing instance.
inline auto verify_row(const CatalogRow &row) -> RowVerdict {
  if (row.degree2_only) throw Error("row " + row.id + " has no equation");
  RowVerdict v;
  v.id = row.id;
  for (auto &s : sample_row_instances(row)) {
    if (s.vacuous()) v.warnings.push_back("vacuous sub-row " + row.sub_label(s.sub));
    for (auto &a : s.assignments) v.instances.push_back(verify_instance(row, s.sub, a));
  }
  v.pass = true;
  for (auto &i : v.instances) v.pass = v.pass && i.pass;
  for (auto &i : v.instances)
    if (i.skipped) v.warnings.push_back("skipped degenerate instance " + i.assignment + " over " + i.field);
  // a sub-row without a passing instance is unverified, hence a failure
  const auto cov = v.covered(row.sub_rows());
  for (std::size_t k = 0; k < cov.size(); ++k)
    if (!cov[k]) {
      v.warnings.push_back("uncovered sub-row " + row.sub_label(k));
      v.pass = false;
    }
  return v;
}

// ---------------------------------------------------------------------------
// global consistency

namespace detail {

inline auto all_components() -> std::vector<AdeComponent> {
  std::vector<AdeComponent> out;
  for (int n = 1; n <= 8; ++n) out.push_back({Letter::A, n});
  for (int n = 4; n <= 8; ++n) out.push_back({Letter::D, n});
  for (int n = 6; n <= 8; ++n) out.push_back({Letter::E, n});
  return out;
}

} // namespace detail

/// Every configuration of total rank <= 8 in characteristic p, each
/// coindex ranging over its admissible values.
inline auto enumerate_configurations(std::uint64_t p) -> std::vector<RdpConfiguration> {
  const auto comps = detail::all_components();
  std::set<RdpConfiguration> seen;
  std::vector<RdpClass> cur;
  std::function<void(std::size_t, int)> rec = [&](std::size_t from, int rank) {
    seen.insert(RdpConfiguration(cur, p));
    for (std::size_t i = from; i < comps.size(); ++i) {
      if (rank + comps[i].rank > 8) continue;
      for (int c = 0; c <= max_coindex(comps[i], p); ++c) {
        cur.push_back({comps[i], c});
        rec(i, rank + comps[i].rank);
        cur.pop_back();
      }
    }
  };
  rec(0, 0);
  return {seen.begin(), seen.end()};
}

struct ConsistencyReport {
  std::vector<std::string> problems;
  std::size_t configurations_checked = 0;
  std::map<std::uint64_t, std::size_t> e8_rows; // equation rows whose configuration is a single E8

  [[nodiscard]] auto ok() const -> bool { return problems.empty(); }
};

/// Catalog membership against decide_occurrence in each listed
/// characteristic, and the list of absent configurations against both.
inline auto check_consistency(const Catalog &cat, const std::vector<std::uint64_t> &chars) -> ConsistencyReport {
  ConsistencyReport rep;
  for (auto p : chars) {
    const CatalogMembership M = cat.membership(p);
    for (auto &c : enumerate_configurations(p)) {
      ++rep.configurations_checked;
      Occurrence o;
      try {
        o = decide_occurrence(c, &M);
      } catch (const Error &e) {
        rep.problems.push_back(e.what());
        continue;
      }
      if (!c.has_non_taut_summand()) continue;
      if (o.occurs != M.contains(c.to_string()))
        rep.problems.push_back("characteristic " + std::to_string(p) + ": " + c.to_string() +
                               (o.occurs ? " is decided to occur but is not listed" : " is listed but decided not to occur"));
    }
    for (auto &r : cat.rows) {
      if (r.p != p) continue;
      for (std::size_t i = 0; i < r.sub_rows(); ++i) {
        const auto c = r.expected(i);
        if (!check_conditions(c.lattice(), p).e8)
          rep.problems.push_back(r.id + ": " + c.to_string() + " does not embed into E8");
        const auto o = decide_occurrence(c, &M);
        const Witness want = r.degree2_only ? Witness::OnlyDegree2 : Witness::Yes;
        if (!o.occurs || o.degree1_witness != want)
          rep.problems.push_back(r.id + ": decided " + witness_name(o.degree1_witness) + " for " + c.to_string());
      }
      if (!r.degree2_only && r.expected(0).lattice().to_string() == "E8") ++rep.e8_rows[p];
    }
    for (auto &[ap, text] : cat.absent) {
      if (ap != p) continue;
      const auto c = RdpConfiguration::parse(text, p);
      if (M.contains(c.to_string())) rep.problems.push_back("absent configuration " + text + " is listed");
      if (decide_occurrence(c, &M).occurs) rep.problems.push_back("absent configuration " + text + " is decided to occur");
    }
  }
  return rep;
}

struct CatalogReport {
  std::vector<RowVerdict> rows;
  ConsistencyReport consistency;

  [[nodiscard]] auto pass() const -> bool {
    if (!consistency.ok()) return false;
    for (auto &r : rows)
      if (!r.pass) return false;
    return true;
  }
};

/// Verifies the rows with an equation, optionally filtered by table and
/// characteristic, in parallel; results keep catalog order.
inline auto verify_all(const Catalog &cat, std::optional<int> table = std::nullopt,
                       std::optional<std::uint64_t> p = std::nullopt) -> CatalogReport {
  CatalogReport rep;
  std::vector<const CatalogRow *> chosen;
  std::set<std::uint64_t> chars;
  for (auto &r : cat.rows) {
    if ((table && r.table != *table) || (p && r.p != *p)) continue;
    chars.insert(r.p);
    if (!r.degree2_only) chosen.push_back(&r);
  }
  std::vector<std::future<RowVerdict>> jobs;
  for (auto *r : chosen) jobs.push_back(std::async(std::launch::async, [r] { return verify_row(*r); }));
  for (auto &j : jobs) rep.rows.push_back(j.get());
  rep.consistency = check_consistency(cat, {chars.begin(), chars.end()});
  return rep;
}

} // namespace rdp
