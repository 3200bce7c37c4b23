// Acceptance run: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "rdp/catalog/verify.hpp"
#include "support/local_changes.hpp"
#include "support/random_forms.hpp"

using namespace rdp;
using namespace rdp::testing;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  std::vector<std::string> failures;

  void require(bool ok, const std::string &what) {
    if (ok) return;
    pass = false;
    if (failures.size() < 8) failures.push_back(what);
  }
};

using Clock = std::chrono::steady_clock;

auto seconds_since(Clock::time_point t0) -> double {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Shared with criterion 6, which reads the same report.
const CatalogReport *g_report = nullptr;

void table_reproduction(Outcome &o) {
  const Catalog &cat = load_catalog();
  const auto t0 = Clock::now();
  static const CatalogReport rep = verify_all(cat);
  g_report = &rep;
  const double secs = seconds_since(t0);

  std::size_t equation_rows = 0, instances = 0, sub_rows = 0;
  for (auto &r : cat.rows)
    if (!r.degree2_only) {
      ++equation_rows;
      sub_rows += r.sub_rows();
    }
  o.require(rep.rows.size() == equation_rows, "not every equation row was verified");
  for (auto &v : rep.rows) {
    const CatalogRow &row = *cat.find(v.id);
    o.require(v.pass, "row " + v.id + " fails");
    for (auto &i : v.instances) {
      ++instances;
      const std::string p = std::to_string(row.p);
      o.require(i.field == "GF(" + p + ")" || i.field == "GF(" + p + "^2)", "instance over " + i.field);
      if (!i.pass)
        o.require(false, v.id + " " + i.sub_label + " at " + i.assignment + ": " +
                             (i.error.empty() ? i.configuration + " vs " + i.expected_configuration : i.error));
    }
    const auto cov = v.covered(row.sub_rows());
    for (std::size_t k = 0; k < cov.size(); ++k) o.require(cov[k], v.id + " sub-row " + row.sub_label(k) + " uncovered");
  }
  o.require(secs < 300, "took longer than five minutes");
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f s", secs);
  o.detail << rep.rows.size() << " rows, " << sub_rows << " sub-rows, " << instances << " instances, " << buf;
}

// m column of the table of normal forms, written out independently of the
// calibration data in the library.
void tjurina_table(Outcome &o) {
  struct Row {
    const char *name;
    std::uint64_t p;
    std::vector<std::array<unsigned, 3>> monos; // all coefficients 1
    unsigned m;
  };
  const std::vector<Row> rows{
      {"E8^0", 5, {{0, 0, 2}, {3, 0, 0}, {0, 5, 0}}, 10},
      {"E8^1", 5, {{0, 0, 2}, {3, 0, 0}, {0, 5, 0}, {1, 4, 0}}, 8},
      {"E6^0", 3, {{0, 0, 2}, {3, 0, 0}, {0, 4, 0}}, 9},
      {"E6^1", 3, {{0, 0, 2}, {3, 0, 0}, {0, 4, 0}, {2, 2, 0}}, 7},
      {"E7^0", 3, {{0, 0, 2}, {3, 0, 0}, {1, 3, 0}}, 9},
      {"E7^1", 3, {{0, 0, 2}, {3, 0, 0}, {1, 3, 0}, {2, 2, 0}}, 7},
      {"E8^0", 3, {{0, 0, 2}, {3, 0, 0}, {0, 5, 0}}, 12},
      {"E8^1", 3, {{0, 0, 2}, {3, 0, 0}, {0, 5, 0}, {2, 3, 0}}, 10},
      {"E8^2", 3, {{0, 0, 2}, {3, 0, 0}, {0, 5, 0}, {2, 2, 0}}, 8},
      {"E6^0", 2, {{0, 0, 2}, {3, 0, 0}, {0, 2, 1}}, 8},
      {"E6^1", 2, {{0, 0, 2}, {3, 0, 0}, {0, 2, 1}, {1, 1, 1}}, 6},
      {"E7^0", 2, {{0, 0, 2}, {3, 0, 0}, {1, 3, 0}}, 14},
      {"E7^1", 2, {{0, 0, 2}, {3, 0, 0}, {1, 3, 0}, {2, 1, 1}}, 12},
      {"E7^2", 2, {{0, 0, 2}, {3, 0, 0}, {1, 3, 0}, {0, 3, 1}}, 10},
      {"E7^3", 2, {{0, 0, 2}, {3, 0, 0}, {1, 3, 0}, {1, 1, 1}}, 8},
      {"E8^0", 2, {{0, 0, 2}, {3, 0, 0}, {0, 5, 0}}, 16},
      {"E8^1", 2, {{0, 0, 2}, {3, 0, 0}, {0, 5, 0}, {1, 3, 1}}, 14},
      {"E8^2", 2, {{0, 0, 2}, {3, 0, 0}, {0, 5, 0}, {1, 2, 1}}, 12},
      {"E8^3", 2, {{0, 0, 2}, {3, 0, 0}, {0, 5, 0}, {0, 3, 1}}, 10},
      {"E8^4", 2, {{0, 0, 2}, {3, 0, 0}, {0, 5, 0}, {1, 1, 1}}, 8},
  };
  std::size_t checked = 0;
  for (auto &r : rows) {
    const Field &F = Field::get(r.p);
    MPoly f(F, 3);
    for (auto &e : r.monos) f += MPoly::monomial(Fq::one(F), 3, {e[0], e[1], e[2], 0});
    const unsigned m = tjurina_dimension(f).m;
    o.require(m == r.m, std::string(r.name) + " in characteristic " + std::to_string(r.p) + ": m = " +
                            std::to_string(m) + ", want " + std::to_string(r.m));
    ++checked;
  }
  // D_{2n}^r: z^2 + x^2 y + x y^n + x y^(n-r) z, D_{2n+1}^r: z^2 + x^2 y + y^n z + x y^(n-r) z
  Loc L(2);
  for (unsigned n = 2; 2 * n <= 8; ++n)
    for (unsigned r = 0; r < n; ++r) {
      const MPoly extra = r ? L.x * L.y.pow(n - r) * L.z : MPoly(L.F, 3);
      const MPoly even = L.z * L.z + L.x * L.x * L.y + L.x * L.y.pow(n) + extra;
      const unsigned want = 4 * n - 2 * r;
      o.require(tjurina_dimension(even).m == want, "D" + std::to_string(2 * n) + "^" + std::to_string(r));
      ++checked;
      if (2 * n + 1 > 8) continue;
      const MPoly odd = L.z * L.z + L.x * L.x * L.y + L.y.pow(n) * L.z + extra;
      o.require(tjurina_dimension(odd).m == want, "D" + std::to_string(2 * n + 1) + "^" + std::to_string(r));
      ++checked;
    }
  o.detail << checked << " normal forms";
}

void worked_examples(Outcome &o) {
  std::size_t e7 = 0, d6 = 0;
  {
    // characteristic 3, E7^1: y^2 = x^3 + t^2 x^2 + a t^5 - t^4 + t^3, every a in GF(9)
    Loc L(3, 2);
    const MPoly &t = L.x, &x = L.y, &y = L.z;
    for (std::uint64_t a = 0; a < L.F.size(); ++a) {
      const MPoly f = y * y - (x.pow(3) + t * t * x * x + L.k(Fq(L.F, a)) * t.pow(5) - t.pow(4) + t.pow(3));
      o.require(tjurina_dimension(f).m == 7, "E7^1 example at a = " + Fq(L.F, a).to_string());
      ++e7;
    }
  }
  {
    // characteristic 2, D6^2: y^2 + t x y + x^3 + a t x^2 + b t^5 + t^4 with a != 0
    Loc L(2, 2);
    const MPoly &t = L.x, &x = L.y, &y = L.z;
    for (std::uint64_t a = 1; a < L.F.size(); ++a)
      for (std::uint64_t b = 0; b < L.F.size(); ++b) {
        const MPoly f =
            y * y + t * x * y + x.pow(3) + L.k(Fq(L.F, a)) * t * x * x + L.k(Fq(L.F, b)) * t.pow(5) + t.pow(4);
        o.require(tjurina_dimension(f).m == 8, "D6^2 example at a = " + Fq(L.F, a).to_string() +
                                                   ", b = " + Fq(L.F, b).to_string());
        ++d6;
      }
  }
  o.detail << "m = 7 for " << e7 << " values, m = 8 for " << d6 << " pairs";
}

void lattice_failure_sets(Outcome &o) {
  std::set<AdeType> types;
  for (auto &c : subsystem_table()) types.insert(c.type);
  std::set<std::string> fail_ell, fail_p;
  for (auto &t : types) {
    const auto f = check_conditions(t, 2);
    if (!f.t_ell2) fail_ell.insert(t.to_string());
    if (!f.t_p) fail_p.insert(t.to_string());
  }
  o.require(fail_ell == std::set<std::string>{"D4+4A1", "8A1", "7A1"}, "failure set of E8+T[l=2]");
  o.require(fail_p == std::set<std::string>{"D4+3A1", "2A3+2A1", "A3+4A1", "7A1", "6A1"}, "failure set of E8+T[p=2]");

  auto only = [&](const char *t) -> std::optional<QuotientInvariants> {
    auto cls = classes_of_type(AdeType::parse(t));
    if (cls.size() != 1) return std::nullopt;
    return cls.front().quotient;
  };
  o.require(only("D4+4A1") == QuotientInvariants{0, {2, 2, 2}}, "E8/(D4+4A1) is not (Z/2)^3");
  o.require(only("8A1") == QuotientInvariants{0, {2, 2, 2, 2}}, "E8/8A1 is not (Z/2)^4");
  const auto q7 = only("7A1");
  o.require(q7 && q7->free_rank == 1 && q7->l_rank(2) >= 3, "E8/7A1 lacks rank 1 with (Z/2)^3 in its 2-torsion");
  o.detail << types.size() << " types, " << subsystem_table().size() << " classes";
  if (q7) o.detail << ", E8/7A1 = " << q7->to_string();
}

void occurrence_consistency(Outcome &o) {
  const Catalog &cat = load_catalog();
  const std::vector<std::uint64_t> chars{0, 2, 3, 5, 7};
  const ConsistencyReport rep = check_consistency(cat, chars);
  for (auto &pr : rep.problems) o.require(false, pr);
  o.require(rep.e8_rows.count(5) && rep.e8_rows.at(5) == 2, "characteristic 5 does not have exactly two E8 rows");

  // taut configurations against the class flags directly
  std::size_t taut = 0;
  for (auto p : chars) {
    const CatalogMembership M = cat.membership(p);
    for (auto &c : enumerate_configurations(p)) {
      if (c.has_non_taut_summand()) continue;
      ++taut;
      bool any_ell = false, any_p = false, embeds = false;
      for (auto &cls : classes_of_type(c.lattice())) {
        embeds = true;
        any_ell = any_ell || cls.flag_T_ell(2);
        any_p = any_p || cls.flag_T_p(static_cast<std::int64_t>(p));
      }
      const Occurrence occ = decide_occurrence(c, &M);
      if (p != 2) {
        o.require(occ.occurs == any_ell, c.to_string() + " in characteristic " + std::to_string(p));
      } else if (occ.occurs) {
        o.require(embeds, c.to_string() + " occurs without embedding");
        o.require((occ.degree1_witness == Witness::Yes) == any_p, c.to_string() + " degree-1 witness");
      }
    }
  }
  o.detail << rep.configurations_checked << " configurations (" << taut << " taut)";
  for (auto &[p, n] : rep.e8_rows) o.detail << ", char " << p << ": " << n << " E8 rows";
}

// Tate's algorithm against the blow-up classifier with no type hints.
void dual_oracle(Outcome &o) {
  std::size_t instances = 0, points = 0;
  for (auto &row : load_catalog().rows) {
    if (row.degree2_only || row.kind != FibrationKind::Elliptic) continue;
    for (auto &s : sample_row_instances(row))
      for (auto &a : s.assignments) {
        const std::string where = row.id + " at " + a.to_string() + " over " + a.field_name();
        try {
          const WeierstrassEq e = row.equation->instantiate(*a.field, a.values);
          const FiberConfiguration fc = fiber_configuration(e);
          const SurfaceSingularities S = classify_points(e, singular_points(e));
          ++instances;
          o.require(fc.total_v_delta == 12, where + ": sum of v(delta) is " + std::to_string(fc.total_v_delta));
          std::vector<int> hits(fc.fibers.size(), 0);
          for (std::size_t i = 0; i < S.points.size(); ++i) {
            ++points;
            std::optional<std::size_t> which;
            for (std::size_t k = 0; k < fc.fibers.size(); ++k)
              if (detail::point_on_place(S.points[i], fc.fibers[k].place)) which = k;
            if (!which) {
              o.require(false, where + ": singular point off the singular fibers");
              continue;
            }
            ++hits[*which];
            const auto tate = fc.fibers[*which].type.rdp();
            o.require(tate && *tate == S.verdicts[i].cls.type,
                      where + ": " + fc.fibers[*which].type.to_string() + " vs " + S.verdicts[i].cls.type.name());
          }
          for (std::size_t k = 0; k < fc.fibers.size(); ++k)
            o.require(hits[k] == (fc.fibers[k].type.rdp() ? 1 : 0), where + ": fiber " + fc.fibers[k].place.name());
        } catch (const Error &err) {
          o.require(row.skip_degenerate && std::string(err.what()) == "not a rational double point",
                    where + ": " + err.what());
        }
      }
  }
  o.require(instances > 0, "no elliptic instances");
  // the verifier's own dual check over the same instances
  if (g_report)
    for (auto &v : g_report->rows)
      for (auto &i : v.instances)
        if (i.expected_kind == "elliptic" && !i.skipped)
          o.require(i.dual_ok && i.total_v_delta == 12, v.id + " " + i.assignment + ": verifier dual check");
  o.detail << instances << " elliptic instances, " << points << " singular points";
}

void property_suites(Outcome &o) {
  std::size_t subs = 0, changes = 0, factored = 0;
  // j-invariance and delta-scaling, 200 admissible substitutions per characteristic
  std::mt19937_64 rng(20241018);
  for (std::uint64_t p : {2, 3, 5, 7}) {
    const Field &F = Field::get(p, p == 2 ? 2 : 1);
    for (int trial = 0; trial < 200; ++trial, ++subs) {
      Substitution sub;
      std::array<bool, 5> shape{true, true, true, true, true};
      if (p == 2 && trial % 2 == 0) {
        sub.kind = SubstitutionKind::W2;
        shape = {true, true, false, true, true};
        sub.f = random_form(F, 1, rng);
        sub.g = random_form(F, 3, rng);
      } else if (p == 2) {
        sub.kind = SubstitutionKind::W2prime;
        shape = {false, true, true, true, true};
        sub.f = random_form(F, 2, rng);
        sub.g = random_form(F, 1, rng);
        sub.h = random_form(F, 3, rng);
      } else if (p == 3) {
        sub.kind = SubstitutionKind::W3;
        shape = {false, true, false, true, true};
        sub.f = random_form(F, 2, rng);
      } else {
        sub.kind = SubstitutionKind::W0;
        shape = {false, false, false, true, true};
      }
      sub.lambda = random_unit(F, rng);
      const WeierstrassEq e = random_equation(F, rng, shape);
      const WeierstrassEq a = apply_substitution(e, sub);
      const std::string where = "substitution " + kind_name(sub.kind) + " on " + e.to_string();
      o.require(a == expand_substitution(e, sub), where + ": closed formula and expansion differ");
      const auto I = compute_invariants(e), J = compute_invariants(a);
      o.require(J.delta == sub.lambda.inv().pow(12) * I.delta, where + ": delta does not scale by lambda^-12");
      o.require(I.j_defined == J.j_defined && (!I.j_defined || I.j == J.j), where + ": j changed");
    }
  }
  // Tjurina dimension under 40 coordinate changes per equation
  std::vector<MPoly> samples;
  {
    Loc L(2);
    samples.push_back(L.z * L.z + L.x.pow(3) + L.y.pow(5) + L.x * L.y * L.z);
    samples.push_back(L.z * L.z + L.x * L.x * L.y + L.y.pow(3) * L.z + L.x * L.y * L.z);
  }
  {
    Loc L(3);
    samples.push_back(L.z * L.z + L.x.pow(3) + L.y.pow(5) + L.x * L.x * L.y * L.y);
    samples.push_back(L.x * L.y + L.z.pow(6));
  }
  {
    Loc L(5);
    samples.push_back(L.z * L.z + L.x.pow(3) + L.y.pow(5) + L.x * L.y.pow(4));
  }
  constexpr unsigned N = 26;
  for (auto &f : samples) {
    Loc L(f.field().characteristic());
    const unsigned m = tjurina_dimension(f).m;
    for (int i = 0; i < 40; ++i, ++changes) {
      const auto img = i % 2 ? random_triangular(L, rng) : random_linear(L, rng);
      o.require(tjurina_dimension(compose(f, img, N), N).m == m, "Tjurina dimension of " + f.to_string({"x", "y", "z"}));
    }
  }
  // fingerprint map injectivity; the calibration itself throws on a collision
  for (std::uint64_t p : {2, 3, 5, 7}) {
    try {
      std::set<std::pair<std::string, unsigned>> seen;
      for (auto &e : RdpCalibration::get(p).entries())
        o.require(seen.insert({e.shape, e.m}).second, "fingerprint collision in characteristic " + std::to_string(p));
    } catch (const Error &err) {
      o.require(false, err.what());
    }
  }
  // factorization round trip
  for (std::uint64_t p : {2, 3, 5})
    for (unsigned k = 1; k <= 3; ++k) {
      const Field &F = Field::get(p, k);
      for (int it = 0; it < 56; ++it, ++factored) {
        std::vector<Fq> c(rng() % 9 + 1, Fq::zero(F));
        for (auto &x : c) x = random_elem(F, rng);
        FPoly f(std::move(c), Fq::zero(F));
        if (f.is_zero()) f = FPoly::constant(Fq::one(F));
        if (it % 4 == 0 && f.degree() <= 4) f = f * f;
        const auto fac = factor_univariate(f);
        FPoly prod = FPoly::constant(fac.unit);
        bool ok = true;
        for (auto &[h, mult] : fac.factors) {
          ok = ok && h.lc() == Fq::one(F) && is_irreducible(h);
          prod = prod * pow(h, static_cast<std::uint64_t>(mult));
        }
        o.require(ok && prod == f, "factorization of " + to_string(f));
      }
    }
  o.require(factored >= 500, "fewer than 500 factorizations");
  o.detail << subs << " substitutions, " << changes << " coordinate changes, " << factored << " factorizations";
}

} // namespace

auto main() -> int {
  const std::vector<std::pair<const char *, std::function<void(Outcome &)>>> criteria{
      {"table reproduction", table_reproduction},
      {"Tjurina dimensions of the normal forms", tjurina_table},
      {"worked local examples", worked_examples},
      {"lattice failure sets and quotients", lattice_failure_sets},
      {"occurrence decisions against the catalog", occurrence_consistency},
      {"Tate types against resolution types", dual_oracle},
      {"property suites", property_suites},
  };
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      criteria[i].second(o);
    } catch (const std::exception &e) {
      o.pass = false;
      o.failures.push_back(std::string("exception: ") + e.what());
    }
    all = all && o.pass;
    std::cout << "criterion " << i + 1 << ": " << (o.pass ? "PASS" : "FAIL") << "  " << criteria[i].first << " ("
              << o.detail.str() << ")\n";
    for (auto &f : o.failures) std::cout << "    " << f << "\n";
  }
  return all ? 0 : 1;
}
