#include <gtest/gtest.h>

#include <random>

#include "rdp/singularity/points.hpp"
#include "support/local_changes.hpp"
#include "support/random_forms.hpp"

using namespace rdp;
using rdp::testing::compose;
using rdp::testing::Loc;
using rdp::testing::random_linear;
using rdp::testing::random_triangular;

namespace {

auto name_of(const MPoly &f) -> std::string {
  return rdp_name(classify_rdp(f).cls, f.field().characteristic());
}

} // namespace

TEST(Tjurina, TableOneDFamilies) {
  // D_{2n}^r: z^2 + x^2 y + x y^n + x y^(n-r) z and
  // D_{2n+1}^r: z^2 + x^2 y + y^n z + x y^(n-r) z, both with m = 4n - 2r
  Loc L(2);
  for (unsigned n = 2; 2 * n <= 8; ++n)
    for (unsigned r = 0; r < n; ++r) {
      MPoly extra = r ? L.x * L.y.pow(n - r) * L.z : MPoly(L.F, 3);
      MPoly even = L.z * L.z + L.x * L.x * L.y + L.x * L.y.pow(n) + extra;
      EXPECT_EQ(tjurina_dimension(even).m, 4 * n - 2 * r) << "D" << 2 * n << "^" << r;
      if (2 * n + 1 > 8) continue;
      MPoly odd = L.z * L.z + L.x * L.x * L.y + L.y.pow(n) * L.z + extra;
      EXPECT_EQ(tjurina_dimension(odd).m, 4 * n - 2 * r) << "D" << 2 * n + 1 << "^" << r;
    }
}

TEST(Tjurina, TableOneExceptionalRows) {
  struct Row {
    std::uint64_t p;
    std::vector<std::array<unsigned, 3>> monos;
    unsigned m;
  };
  const std::vector<Row> rows{
      {5, {{0, 0, 2}, {3, 0, 0}, {0, 5, 0}}, 10},
      {5, {{0, 0, 2}, {3, 0, 0}, {0, 5, 0}, {1, 4, 0}}, 8},
      {3, {{0, 0, 2}, {3, 0, 0}, {0, 4, 0}}, 9},
      {3, {{0, 0, 2}, {3, 0, 0}, {0, 4, 0}, {2, 2, 0}}, 7},
      {3, {{0, 0, 2}, {3, 0, 0}, {1, 3, 0}}, 9},
      {3, {{0, 0, 2}, {3, 0, 0}, {1, 3, 0}, {2, 2, 0}}, 7},
      {3, {{0, 0, 2}, {3, 0, 0}, {0, 5, 0}}, 12},
      {3, {{0, 0, 2}, {3, 0, 0}, {0, 5, 0}, {2, 3, 0}}, 10},
      {3, {{0, 0, 2}, {3, 0, 0}, {0, 5, 0}, {2, 2, 0}}, 8},
      {2, {{0, 0, 2}, {3, 0, 0}, {0, 2, 1}}, 8},
      {2, {{0, 0, 2}, {3, 0, 0}, {0, 2, 1}, {1, 1, 1}}, 6},
      {2, {{0, 0, 2}, {3, 0, 0}, {1, 3, 0}}, 14},
      {2, {{0, 0, 2}, {3, 0, 0}, {1, 3, 0}, {2, 1, 1}}, 12},
      {2, {{0, 0, 2}, {3, 0, 0}, {1, 3, 0}, {0, 3, 1}}, 10},
      {2, {{0, 0, 2}, {3, 0, 0}, {1, 3, 0}, {1, 1, 1}}, 8},
      {2, {{0, 0, 2}, {3, 0, 0}, {0, 5, 0}}, 16},
      {2, {{0, 0, 2}, {3, 0, 0}, {0, 5, 0}, {1, 3, 1}}, 14},
      {2, {{0, 0, 2}, {3, 0, 0}, {0, 5, 0}, {1, 2, 1}}, 12},
      {2, {{0, 0, 2}, {3, 0, 0}, {0, 5, 0}, {0, 3, 1}}, 10},
      {2, {{0, 0, 2}, {3, 0, 0}, {0, 5, 0}, {1, 1, 1}}, 8},
  };
  for (auto &r : rows) {
    const Field &F = Field::get(r.p);
    MPoly f(F, 3);
    for (auto &e : r.monos) f += MPoly::monomial(Fq::one(F), 3, {e[0], e[1], e[2], 0});
    EXPECT_EQ(tjurina_dimension(f).m, r.m) << f << " in characteristic " << r.p;
  }
}

TEST(Tjurina, ExamplesFromLocalEquations) {
  {
    // char 3: y^2 - (x^3 + t^2 x^2 + a t^5 - t^4 + t^3) has m = 7 for every a
    Loc L(3, 2);
    for (std::uint64_t a = 0; a < 9; ++a) {
      const MPoly &t = L.x, &x = L.y, &y = L.z;
      MPoly f = y * y - (x.pow(3) + t * t * x * x + L.k(Fq(L.F, a)) * t.pow(5) - t.pow(4) + t.pow(3));
      EXPECT_EQ(tjurina_dimension(f).m, 7u) << a;
    }
  }
  {
    // char 2: y^2 + t x y + x^3 + a t x^2 + b t^5 + t^4 with a != 0 has m = 8
    Loc L(2, 2);
    for (std::uint64_t a = 1; a < 4; ++a)
      for (std::uint64_t b = 0; b < 4; ++b) {
        const MPoly &t = L.x, &x = L.y, &y = L.z;
        MPoly f = y * y + t * x * y + x.pow(3) + L.k(Fq(L.F, a)) * t * x * x + L.k(Fq(L.F, b)) * t.pow(5) + t.pow(4);
        EXPECT_EQ(tjurina_dimension(f).m, 8u) << a << " " << b;
      }
  }
  {
    Loc L(2);
    EXPECT_EQ(tjurina_dimension(L.z * L.z + L.x * L.x * L.y + L.x * L.y.pow(4)).m, 16u);
  }
}

TEST(Tjurina, Errors) {
  Loc L(2);
  EXPECT_THROW(tjurina_dimension(L.c(1) + L.x), Error);
  try {
    (void)tjurina_dimension(L.z * L.z);
    FAIL();
  } catch (const Error &e) {
    EXPECT_STREQ(e.what(), "non-isolated or too degenerate");
  }
}

TEST(TjurinaProperty, InvariantUnderCoordinateChanges) {
  std::mt19937_64 rng(11);
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
  constexpr unsigned N = 26; // above every certification degree used here
  for (auto &f : samples) {
    Loc L(f.field().characteristic());
    const unsigned m = tjurina_dimension(f).m;
    for (int i = 0; i < 20; ++i) {
      EXPECT_EQ(tjurina_dimension(compose(f, random_linear(L, rng), N), N).m, m) << f;
      EXPECT_EQ(tjurina_dimension(compose(f, random_triangular(L, rng), N), N).m, m) << f;
    }
  }
}

TEST(Blowup, Examples) {
  Loc L(2);
  auto a1 = blow_up_once({L.z * L.z + L.x * L.y});
  EXPECT_EQ(a1.components, 1u);
  EXPECT_TRUE(a1.children.empty());
  auto e8 = blow_up_once({L.z * L.z + L.x.pow(3) + L.y.pow(5)});
  EXPECT_EQ(e8.components, 1u);
  EXPECT_EQ(e8.children.size(), 1u);
  try {
    (void)blow_up_once({L.x + L.y * L.z});
    FAIL();
  } catch (const Error &e) {
    EXPECT_STREQ(e.what(), "already smooth");
  }
  EXPECT_THROW(blow_up_once({L.x.pow(3) + L.y.pow(3) + L.z.pow(3)}), Error);
}

TEST(Blowup, ResolutionShapesOfKnownChains) {
  Loc L(7);
  auto shape = [](const MPoly &f) { return BlowupTree::build({f}).shape(); };
  // A1 leaves nothing; A_n leaves A_(n-2) on two lines; D4 leaves three A1
  EXPECT_EQ(shape(L.x * L.y + L.z * L.z), "1[]");
  EXPECT_EQ(shape(L.x * L.y + L.z.pow(6)), "2[1*2[1*1[]]]");
  EXPECT_EQ(shape(L.z * L.z + L.x * L.x * L.y + L.y.pow(3)), "1[3*1[]]");
  // E8 -> E7 -> D6 -> D4 + A1 chain
  auto t = BlowupTree::build({L.z * L.z + L.x.pow(3) + L.y.pow(5)});
  EXPECT_EQ(t.depth(), 5u);
  EXPECT_LE(t.depth(), kMaxBlowupDepth);
}

TEST(Classify, Examples) {
  {
    Loc L(2);
    auto v = classify_rdp(L.z * L.z + L.x.pow(3) + L.y.pow(5));
    EXPECT_EQ(rdp_name(v.cls, 2), "E8^0");
    EXPECT_EQ(v.m, 16u);
    // the D6 point of type 5B, in local coordinates (t, x, y)
    const MPoly &t = L.x, &x = L.y, &y = L.z;
    auto d6 = classify_rdp(y * y + t * x * y + x.pow(3) + t * x * x + t.pow(5) + t.pow(4));
    EXPECT_EQ(rdp_name(d6.cls, 2), "D6^2");
    EXPECT_EQ(d6.m, 8u);
    EXPECT_EQ(name_of(L.z * L.z + L.x * L.y), "A1");
  }
  {
    Loc L(3);
    try {
      (void)classify_rdp(L.z * L.z + L.x.pow(3) + L.y.pow(7));
      FAIL();
    } catch (const Error &e) {
      EXPECT_STREQ(e.what(), "not a rational double point");
    }
    EXPECT_THROW(classify_rdp(L.x.pow(3) + L.y.pow(3) + L.z.pow(3)), Error);
  }
}

TEST(Classify, CalibrationIsInjective) {
  for (std::uint64_t p : {2, 3, 5, 7, 11}) {
    const auto &cal = RdpCalibration::get(p); // throws on a collision
    std::set<std::pair<std::string, unsigned>> seen;
    for (auto &e : cal.entries()) EXPECT_TRUE(seen.insert({e.shape, e.m}).second) << rdp_name(e.cls, p);
  }
  EXPECT_EQ(RdpCalibration::get(2).entries().size(), taut_forms(2).size() + non_taut_forms(2).size());
}

// Every normal form keeps its class under random linear coordinate changes.
TEST(ClassifyProperty, NormalFormsSurviveCoordinateChanges) {
  std::mt19937_64 rng(3);
  for (std::uint64_t p : {2, 3, 5}) {
    Loc L(p);
    auto forms = taut_forms(p);
    for (auto &n : non_taut_forms(p)) forms.push_back(n);
    for (auto &n : forms) {
      const MPoly f = n.polynomial(L.F);
      for (int i = 0; i < 3; ++i) {
        auto g = compose(f, random_linear(L, rng), 64);
        EXPECT_EQ(classify_rdp(g).cls, n.cls) << rdp_name(n.cls, p) << " in characteristic " << p;
      }
    }
  }
}

TEST(SingularPoints, Examples) {
  {
    const Field &F = Field::get(2);
    auto t = BiPoly::t(F), s = BiPoly::s(F);
    WeierstrassEq e(F, t, BiPoly(F), BiPoly(F), BiPoly(F), t.pow(5) * s);
    auto pts = singular_points(e);
    ASSERT_EQ(pts.size(), 1u);
    EXPECT_FALSE(pts[0].t_chart);
    for (auto &c : pts[0].point.coords) EXPECT_TRUE(c.is_zero());
    EXPECT_TRUE(pts[0].local.constant_term().is_zero());
  }
  {
    const Field &F = Field::get(3);
    auto t = BiPoly::t(F), s = BiPoly::s(F);
    WeierstrassEq e(F, BiPoly(F), BiPoly(F), BiPoly(F), BiPoly(F), t.pow(4) * s.pow(2));
    auto S = analyze_singularities(e);
    EXPECT_EQ(S.points.size(), 2u);
    EXPECT_EQ(S.configuration.to_string(), "E6^0+A2");
  }
  {
    // y^2 = x^3 + x (t^4 + s^4) + ... would be smooth; a surface with a singular line is rejected
    const Field &F = Field::get(2);
    try {
      (void)singular_points(WeierstrassEq(F));
      FAIL();
    } catch (const Error &e) {
      EXPECT_STREQ(e.what(), "positive-dimensional singular locus");
    }
  }
  for (std::uint64_t p : {2, 3, 5}) {
    WeierstrassEq e(Field::get(p));
    EXPECT_TRUE(base_point_is_smooth(e));
  }
}
