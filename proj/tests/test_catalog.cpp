#include <gtest/gtest.h>

#include "rdp/catalog/verify.hpp"

using namespace rdp;

namespace {

auto row(const std::string &id) -> const CatalogRow & {
  const CatalogRow *r = load_catalog().find(id);
  if (!r) throw Error("no row " + id);
  return *r;
}

auto parse_error(const std::string &text) -> std::string {
  try {
    (void)parse_catalog(text);
  } catch (const Error &e) {
    return e.what();
  }
  return "";
}

const char *kTinyRow = R"(row R
table 9
char 5
type X
kind elliptic
eq y^2 = x^3 + t^5*s
config CONFIG
delta -2*t^10*s^2
j 0
end
)";

auto tiny(const std::string &config) -> std::string {
  std::string s = kTinyRow;
  s.replace(s.find("CONFIG"), 6, config);
  return s;
}

} // namespace

TEST(Catalog, LoadsEveryTable) {
  const Catalog &cat = load_catalog();
  std::map<int, int> per_table;
  for (auto &r : cat.rows) ++per_table[r.table];
  EXPECT_EQ(per_table[2], 2);
  EXPECT_EQ(per_table[3], 11);
  EXPECT_EQ(per_table[4], 9);
  EXPECT_EQ(per_table[5], 8);
  EXPECT_EQ(per_table[6], 9);
  EXPECT_EQ(per_table[0], 1);
  EXPECT_EQ(cat.absent.size(), 19u);

  const auto &x22 = row("T2-X22");
  EXPECT_EQ(x22.p, 5u);
  EXPECT_EQ(x22.expected(0).to_string(), "E8^0");
  EXPECT_EQ(x22.delta_text, "-2*t^10*s^2");
  EXPECT_EQ(x22.j_text, "0");

  const auto &a4 = row("T4-4A");
  ASSERT_EQ(a4.extras.size(), 4u);
  EXPECT_EQ(a4.extras[3].label, "4A. 5.");
  EXPECT_EQ(a4.expected(4).to_string(), "D4^1+A3");

  const auto &d6 = row("T5-D6^0+A1");
  EXPECT_TRUE(d6.degree2_only);
  EXPECT_FALSE(d6.equation.has_value());
  EXPECT_TRUE(sample_row_instances(d6).empty());
  EXPECT_EQ(row("T5-5B").type_label, "5B. (I2*)");
}

TEST(Catalog, RowInvariants) {
  for (auto &r : load_catalog().rows) {
    for (std::size_t i = 0; i < r.sub_rows(); ++i) EXPECT_LE(r.expected(i).rank(), 8) << r.id;
    if (r.degree2_only) continue;
    if (r.kind == FibrationKind::QuasiElliptic) {
      EXPECT_TRUE(r.p == 2 || r.p == 3) << r.id;
      EXPECT_TRUE(r.delta.is_zero()) << r.id;
    } else {
      const Field &F = Field::get(r.p);
      std::map<std::string, BiPoly> env;
      for (auto &v : r.params) env.emplace(v, BiPoly::constant(Fq::one(F)));
      const BiPoly d = eval_form(r.delta, F, env);
      if (!d.is_zero()) {
        EXPECT_EQ(d.degree(), 12) << r.id;
      }
    }
  }
}

TEST(Catalog, MalformedTextNamesTheLine) {
  EXPECT_EQ(parse_error("row A\nchar 5\nbogus 1\nend\n"), "catalog line 3: row A: unknown key bogus");
  EXPECT_EQ(parse_error("row A\nchar 5\n"), "catalog line 2: row A is not terminated by 'end'");
  EXPECT_EQ(parse_error(tiny("E8^0") + tiny("E8^0")), "catalog line 11: duplicate row id R");
  EXPECT_EQ(parse_error("config E8^0\n"), "catalog line 1: unexpected 'config' outside a row");
  EXPECT_NE(parse_error(tiny("E9^0")).find("catalog line 1: row R:"), std::string::npos);
  // the shape check of the equation grammar applies to catalog equations
  std::string bad = tiny("E8^0");
  bad.replace(bad.find("x^3 + t^5*s"), 11, "2*x^3 + t^5*s");
  EXPECT_EQ(parse_error(bad), "catalog line 6: row R: not a Weierstraß sextic");
  EXPECT_EQ(parse_error(""), "");
}

TEST(Predicates, ParseAndEvaluate) {
  const Field &F = Field::get(2, 2);
  const std::set<std::string> params{"a", "b", "c"};
  auto at = [&](std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    return std::map<std::string, Fq>{{"a", Fq(F, a)}, {"b", Fq(F, b)}, {"c", Fq(F, c)}};
  };
  auto P = parse_predicate("a = b = 0", params);
  EXPECT_TRUE(P.eval(F, at(0, 0, 3)));
  EXPECT_FALSE(P.eval(F, at(0, 1, 3)));
  auto Q = parse_predicate("(a + c) != 0 & (b = 0 | b = a^2)", params);
  EXPECT_TRUE(Q.eval(F, at(2, 3, 0))); // generator squared is generator + 1
  EXPECT_FALSE(Q.eval(F, at(2, 2, 0)));
  EXPECT_FALSE(Q.eval(F, at(1, 0, 1)));
  EXPECT_THROW(parse_predicate("a = d", params), Error);
  EXPECT_THROW(parse_predicate("a + b", params), Error);
  EXPECT_THROW(parse_predicate("a = 0 &", params), Error);
}

TEST(Sampling, ExamplesAndDeterminism) {
  // base case of 6A in characteristic 3 needs a65 != 0
  auto S = sample_row_instances(row("T3-6A-E6^0"));
  ASSERT_EQ(S.size(), 2u);
  std::set<std::uint64_t> prime;
  for (auto &a : S[0].assignments) {
    EXPECT_FALSE(a.values.at("a65").is_zero());
    if (a.field->degree() == 1) prime.insert(a.values.at("a65").index());
  }
  EXPECT_EQ(prime, (std::set<std::uint64_t>{1, 2}));
  EXPECT_EQ(S[0].assignments.size(), 4u);
  // a65 = 0 is the only instance of the extra A1, in any field
  ASSERT_EQ(S[1].assignments.size(), 1u);

  // 4A "+A2" with its side constraint
  const auto &a4 = row("T4-4A");
  const auto a4s = sample_row_instances(a4);
  for (auto &a : a4s[3].assignments) {
    const Field &F = *a.field;
    EXPECT_FALSE((a.values.at("a21") + a.values.at("a63")).is_zero());
    EXPECT_TRUE(a4.extras[2].when.eval(F, a.values));
  }

  auto again = sample_row_instances(row("T3-6A-E6^0"));
  for (std::size_t i = 0; i < S.size(); ++i) {
    ASSERT_EQ(S[i].assignments.size(), again[i].assignments.size());
    for (std::size_t k = 0; k < S[i].assignments.size(); ++k)
      EXPECT_EQ(S[i].assignments[k].to_string(), again[i].assignments[k].to_string());
  }
}

// Every sampled assignment falls in exactly its sub-row and satisfies the
// side constraints; every sub-row gets three assignments or, failing that,
// all assignments over GF(p^2) that exist (counted by brute force).
TEST(SamplingProperty, AssignmentsLandInTheirSubRow) {
  for (auto &r : load_catalog().rows) {
    if (r.degree2_only) continue;
    const Field &F2 = Field::get(r.p, 2);
    std::vector<std::size_t> exist(r.sub_rows(), 0);
    std::vector<std::uint64_t> idx(r.params.size(), 0);
    for (;;) {
      std::map<std::string, Fq> v;
      for (std::size_t i = 0; i < idx.size(); ++i) v.emplace(r.params[i], Fq(F2, idx[i]));
      if (r.satisfies_constraints(F2, v))
        if (auto sub = r.sub_row_of(F2, v)) ++exist[*sub];
      std::size_t i = 0;
      while (i < idx.size() && ++idx[i] == F2.size()) idx[i++] = 0;
      if (i == idx.size()) break;
    }
    for (auto &s : sample_row_instances(r)) {
      EXPECT_GE(s.assignments.size(), std::min<std::size_t>(3, exist[s.sub])) << r.id << " " << r.sub_label(s.sub);
      EXPECT_GT(exist[s.sub], 0u) << r.id << " " << r.sub_label(s.sub);
      EXPECT_LE(s.assignments.size(), 4u);
      for (auto &a : s.assignments) {
        EXPECT_TRUE(r.satisfies_constraints(*a.field, a.values)) << r.id;
        EXPECT_EQ(r.sub_row_of(*a.field, a.values), std::optional<std::size_t>(s.sub)) << r.id << " " << a.to_string();
      }
    }
  }
}

TEST(Verify, Examples) {
  auto x211 = verify_row(row("T2-X211"));
  ASSERT_EQ(x211.instances.size(), 1u);
  EXPECT_TRUE(x211.pass);
  EXPECT_EQ(x211.instances[0].delta, "t^12 - 2*t^10*s^2");
  EXPECT_EQ(x211.instances[0].configuration, "E8^1");
  EXPECT_EQ(x211.instances[0].total_v_delta, 12);

  auto qe = verify_row(row("T6-5.2a"));
  EXPECT_TRUE(qe.pass);
  EXPECT_EQ(qe.instances[0].kind, "quasi-elliptic");
  EXPECT_EQ(qe.instances[0].delta, "0");
  EXPECT_EQ(qe.instances[0].j, "undefined");

  auto b6 = verify_row(row("T3-6B"));
  EXPECT_TRUE(b6.pass);
  for (auto &i : b6.instances)
    if (i.sub == 0) {
      EXPECT_EQ(i.configuration, "E6^1");
    }
}

TEST(Verify, MismatchIsReportedNotThrown) {
  const Catalog cat = parse_catalog(tiny("E8^1"));
  auto v = verify_row(cat.rows[0]);
  EXPECT_FALSE(v.pass);
  ASSERT_EQ(v.instances.size(), 1u);
  EXPECT_EQ(v.instances[0].configuration, "E8^0");
  EXPECT_EQ(v.instances[0].expected_configuration, "E8^1");
  EXPECT_TRUE(v.instances[0].delta_ok);
  EXPECT_FALSE(v.instances[0].configuration_ok);

  std::string wrong_delta = tiny("E8^0");
  wrong_delta.replace(wrong_delta.find("-2*t^10"), 7, "2*t^10");
  auto w = verify_row(parse_catalog(wrong_delta).rows[0]);
  EXPECT_FALSE(w.pass);
  EXPECT_FALSE(w.instances[0].delta_ok);
}

TEST(Verify, CharacteristicFilter) {
  auto rep = verify_all(load_catalog(), std::nullopt, 5);
  ASSERT_EQ(rep.rows.size(), 2u);
  EXPECT_TRUE(rep.pass());
  EXPECT_EQ(rep.consistency.e8_rows[5], 2u);
  auto none = verify_all(load_catalog(), std::nullopt, 7);
  EXPECT_TRUE(none.rows.empty());
  EXPECT_EQ(none.consistency.configurations_checked, 0u);
}

// Every instantiation of every equation row reproduces delta, j and the
// configuration with coindices; every sub-row has a passing instance.
TEST(VerifyProperty, AllRowsPass) {
  auto rep = verify_all(load_catalog());
  for (auto &v : rep.rows) {
    EXPECT_TRUE(v.pass) << v.id;
    const auto cov = v.covered(load_catalog().find(v.id)->sub_rows());
    for (std::size_t i = 0; i < cov.size(); ++i) EXPECT_TRUE(cov[i]) << v.id << " sub-row " << i;
    for (auto &i : v.instances)
      if (!i.pass) ADD_FAILURE() << v.id << " " << i.assignment << ": " << i.configuration << " vs " << i.expected_configuration << " " << i.error;
  }
  for (auto &p : rep.consistency.problems) ADD_FAILURE() << p;
  EXPECT_TRUE(rep.pass());
}

TEST(Consistency, AbsentListAndDecisions) {
  const Catalog &cat = load_catalog();
  const auto M = cat.membership(2);
  EXPECT_FALSE(M.contains("E8^2"));
  EXPECT_FALSE(decide_occurrence(RdpConfiguration::parse("E8^2", 2), &M).occurs);
  for (auto &[p, c] : cat.absent) EXPECT_FALSE(M.contains(RdpConfiguration::parse(c, p).to_string())) << c;
  EXPECT_EQ(decide_occurrence(RdpConfiguration::parse("7A1", 2), &M).degree1_witness, Witness::OnlyDegree2);
  EXPECT_EQ(decide_occurrence(RdpConfiguration::parse("D4^0+3A1", 2), &M).degree1_witness, Witness::OnlyDegree2);
  auto rep = check_consistency(cat, {2, 3, 5});
  EXPECT_TRUE(rep.ok());
  EXPECT_GT(rep.configurations_checked, 300u);
}

// 12B has free coefficients and no sub-rows; no value over GF(2) or GF(4)
// degenerates the D4^0 point.
TEST(Verify, TwelveBNeverDegenerates) {
  const auto &r = row("T4-12B");
  for (unsigned k : {1u, 2u}) {
    const Field &F = Field::get(2, k);
    for (std::uint64_t a = 0; a < F.size(); ++a)
      for (std::uint64_t b = 0; b < F.size(); ++b)
        for (std::uint64_t c = 0; c < F.size(); ++c) {
          Assignment as{&F, {{"a42", Fq(F, a)}, {"a43", Fq(F, b)}, {"a44", Fq(F, c)}}};
          auto res = verify_instance(r, 0, as);
          EXPECT_TRUE(res.pass && !res.skipped) << as.to_string() << " " << res.error;
        }
  }
}
