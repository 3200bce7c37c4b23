#include <gtest/gtest.h>

#include <random>
#include <set>

#include "rdp/lattice/decide.hpp"

using namespace rdp;

namespace {

auto failing_set(bool use_p, std::uint64_t p) -> std::set<std::string> {
  std::set<std::string> out;
  std::set<AdeType> types;
  for (auto &c : subsystem_table()) types.insert(c.type);
  for (auto &t : types) {
    auto f = check_conditions(t, p);
    if (!(use_p ? f.t_p : f.t_ell2)) out.insert(t.to_string());
  }
  return out;
}

auto basis_of(const std::string &type) -> std::vector<RootVec> {
  auto cls = classes_of_type(AdeType::parse(type));
  EXPECT_FALSE(cls.empty()) << type;
  return cls.empty() ? std::vector<RootVec>{} : cls.front().basis;
}

} // namespace

TEST(RootSystem, HasTwoHundredFortyRoots) {
  const auto &E = RootSystemE8::instance();
  ASSERT_EQ(E.roots().size(), 240u);
  for (auto &r : E.roots()) {
    EXPECT_EQ(E.gram(r, r), -2);
    EXPECT_GE(E.index_of(-r), 0);
    for (auto &s : E.roots()) {
      int g = E.gram(r, s);
      EXPECT_TRUE(g >= -2 && g <= 2);
    }
  }
}

TEST(Ade, ParseAndPrint) {
  EXPECT_EQ(AdeType::parse("4A1+D4").to_string(), "D4+4A1");
  EXPECT_EQ(AdeType::parse("A1+2A3+A1").to_string(), "2A3+2A1");
  EXPECT_EQ(RdpConfiguration::parse("D4^0+3A1", 2).to_string(), "D4^0+3A1");
  EXPECT_EQ(RdpConfiguration::parse("D4^1+D4^0", 2).to_string(), "D4^0+D4^1");
  EXPECT_EQ(RdpConfiguration::parse("E_8^1", 5).to_string(), "E8^1");
  EXPECT_THROW(AdeType::parse("D3"), Error);
  EXPECT_THROW(AdeType::parse("E9"), Error);
  try {
    (void)RdpConfiguration::parse("E8^5", 2);
    FAIL();
  } catch (const Error &e) {
    EXPECT_NE(std::string(e.what()).find("no such singularity in characteristic 2"), std::string::npos);
  }
  EXPECT_THROW(RdpConfiguration::parse("E8^1", 7), Error);
  EXPECT_EQ(max_coindex({Letter::D, 8}, 2), 3);
  EXPECT_EQ(max_coindex({Letter::D, 7}, 2), 2);
}

TEST(Quotient, Examples) {
  EXPECT_EQ(quotient_invariants(basis_of("D4+4A1")), (QuotientInvariants{0, {2, 2, 2}}));
  EXPECT_EQ(quotient_invariants(basis_of("8A1")), (QuotientInvariants{0, {2, 2, 2, 2}}));
  EXPECT_EQ(quotient_invariants(RootSystemE8::instance().simple_roots()), (QuotientInvariants{0, {}}));
  auto b = basis_of("A1");
  b.push_back(b.front());
  try {
    (void)quotient_invariants(b);
    FAIL();
  } catch (const Error &e) {
    EXPECT_STREQ(e.what(), "not a basis");
  }
}

TEST(Subsystems, Examples) {
  auto seven = classes_of_type(AdeType::parse("7A1"));
  ASSERT_EQ(seven.size(), 1u);
  EXPECT_EQ(seven[0].quotient.free_rank, 1);
  EXPECT_GE(seven[0].quotient.l_rank(2), 3);
  auto a1 = classes_of_type(AdeType::parse("A1"));
  ASSERT_EQ(a1.size(), 1u);
  EXPECT_EQ(a1[0].quotient, (QuotientInvariants{7, {}}));
  EXPECT_TRUE(classes_of_type(AdeType::parse("E6+2A1")).empty());
}

TEST(Subsystems, KnownPairsOfClassesAreSeparated) {
  // types with two non-conjugate embeddings, told apart by the quotient
  for (const char *t : {"A7", "2A3", "A5+A1", "A3+2A1", "4A1"})
    EXPECT_EQ(classes_of_type(AdeType::parse(t)).size(), 2u) << t;
}

TEST(Subsystems, BasesHaveDeclaredType) {
  for (auto &c : subsystem_table()) {
    EXPECT_EQ(canonical_subsystem(c.basis).type, c.type);
    EXPECT_EQ(c.quotient.free_rank, 8 - c.type.rank());
  }
}

TEST(Conditions, Examples) {
  auto a = check_conditions(AdeType::parse("8A1"), 3);
  EXPECT_TRUE(a.e8);
  EXPECT_FALSE(a.t_ell2);
  auto b = check_conditions(AdeType::parse("D4+3A1"), 2);
  EXPECT_TRUE(b.e8);
  EXPECT_FALSE(b.t_p);
  for (std::uint64_t p : {0, 2, 3, 5, 7}) {
    auto c = check_conditions(AdeType::parse("E8"), p);
    EXPECT_TRUE(c.e8 && c.t_ell2 && c.t_p);
  }
}

TEST(Conditions, FailingSetsMatchQuotients) {
  EXPECT_EQ(failing_set(false, 3), (std::set<std::string>{"D4+4A1", "8A1", "7A1"}));
  EXPECT_EQ(failing_set(true, 2),
            (std::set<std::string>{"D4+3A1", "2A3+2A1", "A3+4A1", "7A1", "6A1"}));
  // (E8+T[q]) holds for every q != 2
  for (std::uint64_t q : {3, 5, 7}) EXPECT_TRUE(failing_set(true, q).empty()) << q;
}

TEST(Decide, Examples) {
  auto o = decide_occurrence(RdpConfiguration::parse("8A1", 7));
  EXPECT_FALSE(o.occurs);
  auto s = decide_occurrence(RdpConfiguration::parse("7A1", 2));
  EXPECT_TRUE(s.occurs);
  EXPECT_EQ(s.degree1_witness, Witness::OnlyDegree2);
  CatalogMembership m;
  m.degree1 = {"E8^0", "E8^4"};
  auto e = decide_occurrence(RdpConfiguration::parse("E8^1", 2), &m);
  EXPECT_FALSE(e.occurs);
  auto f = decide_occurrence(RdpConfiguration::parse("E8^1", 5));
  EXPECT_TRUE(f.occurs);
  EXPECT_EQ(f.degree1_witness, Witness::Yes);
  EXPECT_THROW(decide_occurrence(RdpConfiguration::parse("E8^1", 2)), Error);
}

TEST(LatticeProperty, SmithInvariantsIgnoreBasisChange) {
  std::mt19937_64 rng(17);
  const auto &table = subsystem_table();
  for (int trial = 0; trial < 100; ++trial) {
    const auto &c = table[rng() % table.size()];
    if (c.basis.empty()) continue;
    std::vector<RootVec> b = c.basis;
    // random elementary unimodular operations
    for (int k = 0; k < 12; ++k) {
      std::size_t i = rng() % b.size(), j = rng() % b.size();
      if (i == j) {
        b[i] = -b[i];
        continue;
      }
      int m = static_cast<int>(rng() % 5) - 2;
      b[i] = b[i] + scaled(b[j], m);
    }
    EXPECT_EQ(quotient_invariants(b), c.quotient) << c.type.to_string();
  }
}

TEST(LatticeProperty, IndexSquareIdentityAtFullRank) {
  for (auto &c : subsystem_table()) {
    if (c.type.rank() != 8) continue;
    std::int64_t prod = 1;
    for (auto d : c.quotient.torsion) prod *= d * d;
    EXPECT_EQ(prod, c.type.determinant()) << c.type.to_string();
  }
}

TEST(LatticeProperty, EnumerationAgreesWithEmbeddingSearch) {
  std::set<AdeType> enumerated;
  for (auto &c : subsystem_table()) enumerated.insert(c.type);
  for (auto &t : all_ade_types(8)) {
    bool found = t.empty() || !find_embedding(t).empty();
    EXPECT_EQ(found, enumerated.count(t) > 0) << t.to_string();
  }
}
