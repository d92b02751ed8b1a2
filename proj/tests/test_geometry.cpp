#include <gtest/gtest.h>

#include "helpers.hpp"

using namespace fatpoints;

namespace {

const Field Q = Field::rational();

ProjectivePoint pt(long long x, long long y, long long z, const Field& f = Q) {
  return ProjectivePoint::from_ints(f, x, y, z);
}

HomoPoly mono(long long c, int a, int b, int e, const Field& f = Q) {
  return HomoPoly::monomial(Scalar::from_int(f, c), {a, b, e});
}

Line line(long long a, long long b, long long c) {
  return Line(Scalar::from_int(Q, a), Scalar::from_int(Q, b), Scalar::from_int(Q, c));
}

}  // namespace

TEST(Line, NormalizationAndIncidence) {
  EXPECT_EQ(line(2, 4, -6).to_string(), "[1,2,-3]");
  EXPECT_EQ(line(0, -3, 3), line(0, 1, -1));
  EXPECT_THROW(line(0, 0, 0), std::invalid_argument);
  const Line l = Line::through(pt(0, 0, 1), pt(1, 1, 1));
  EXPECT_TRUE(l.contains(pt(5, 5, 1)));
  EXPECT_FALSE(l.contains(pt(5, 4, 1)));
  EXPECT_EQ(line(1, 0, 0).meet(line(0, 1, 0)), pt(0, 0, 1));
  EXPECT_THROW(l.meet(l), std::invalid_argument);
  EXPECT_THROW(Line::through(pt(1, 2, 3), pt(2, 4, 6)), std::invalid_argument);
}

TEST(AreCollinear, Examples) {
  const auto l = are_collinear({pt(0, 0, 1), pt(0, 1, 1), pt(0, 1, 0)});
  ASSERT_TRUE(l.has_value());
  EXPECT_EQ(*l, line(1, 0, 0));
  EXPECT_FALSE(are_collinear(general(3, 5)).has_value());
  const auto single = are_collinear({pt(2, 3, 1)});
  ASSERT_TRUE(single.has_value());
  EXPECT_TRUE(single->contains(pt(2, 3, 1)));
  EXPECT_EQ(*single, *are_collinear({pt(2, 3, 1)}));  // deterministic
  EXPECT_TRUE(are_collinear(on_conic(2)).has_value());
}

TEST(AreCollinear, ReturnedLineContainsEveryPoint) {
  Rng rng(1);
  for (int t = 0; t < 200; ++t) {
    const auto pts = testing_support::random_points(Q, static_cast<int>(rng.uniform(1, 4)), rng, 2);
    if (const auto l = are_collinear(pts)) {
      for (const auto& p : pts) EXPECT_TRUE(evaluate(l->to_poly(), p).is_zero());
    }
  }
}

TEST(CommonConic, Examples) {
  const auto c = common_conic(on_conic(5));
  ASSERT_TRUE(c.has_value());
  const HomoPoly want = mono(1, 0, 2, 0) + mono(-1, 1, 0, 1);
  const auto& [e, coeff] = *want.terms().begin();
  EXPECT_EQ((coeff / c->coefficient(e)) * *c, want);
  EXPECT_FALSE(common_conic(general(6, 42)).has_value());
  // Two triples on two lines: the conic is the product of the lines.
  const std::vector<ProjectivePoint> two_lines = {pt(0, 1, 1), pt(0, 2, 1), pt(0, 3, 1),
                                                  pt(1, 0, 1), pt(2, 0, 1), pt(3, 0, 1)};
  const auto degenerate = common_conic(two_lines);
  ASSERT_TRUE(degenerate.has_value());
  const HomoPoly xy = mono(1, 1, 1, 0);
  const auto& [e2, c2] = *xy.terms().begin();
  EXPECT_EQ((c2 / degenerate->coefficient(e2)) * *degenerate, xy);
  EXPECT_FALSE(common_conic(type9().points).has_value());
}

TEST(CommonConic, PassesThroughEveryPoint) {
  Rng rng(2);
  for (int t = 0; t < 200; ++t) {
    const auto pts = testing_support::random_points(Q, static_cast<int>(rng.uniform(1, 7)), rng, 2);
    if (const auto c = common_conic(pts)) {
      for (const auto& p : pts) EXPECT_GE(order_of_vanishing(*c, p), 1);
    }
  }
}

TEST(LineArrangement, Examples) {
  const auto s4 = star(4, 3);
  const auto w = detect_line_arrangement(s4.points);
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(w->lines.size(), 4u);
  for (const auto& inc : w->incidence) EXPECT_EQ(inc.size(), 2u);
  std::vector<Line> want = s4.lines, got = w->lines;
  std::sort(want.begin(), want.end());
  std::sort(got.begin(), got.end());
  EXPECT_EQ(got, want);

  const auto tri = detect_line_arrangement(general(3, 9));
  ASSERT_TRUE(tri.has_value());
  EXPECT_EQ(tri->lines.size(), 3u);

  const auto four = search_line_arrangement(general(4, 9));
  EXPECT_FALSE(four.witness.has_value());
  EXPECT_TRUE(four.exhaustive);
  EXPECT_EQ(four.candidates, 6u);
  EXPECT_THROW(detect_line_arrangement({pt(1, 1, 1)}), std::invalid_argument);
}

TEST(LineArrangement, WitnessInvariants) {
  for (int p = 3; p <= 6; ++p) {
    const auto c = star(p, static_cast<std::uint64_t>(p));
    const auto w = detect_line_arrangement(c.points);
    ASSERT_TRUE(w.has_value()) << "p=" << p;
    for (std::size_t i = 0; i < c.points.size(); ++i) {
      EXPECT_GE(w->incidence[i].size(), 2u);
      for (auto l : w->incidence[i]) EXPECT_TRUE(w->lines[l].contains(c.points[i]));
    }
    // Every pairwise intersection of witness lines is a point of the set.
    for (std::size_t a = 0; a < w->lines.size(); ++a) {
      for (std::size_t b = a + 1; b < w->lines.size(); ++b) {
        const auto meet = w->lines[a].meet(w->lines[b]);
        EXPECT_NE(std::find(c.points.begin(), c.points.end(), meet), c.points.end());
      }
    }
  }
  // Three concurrent lines x = 0, y = 0, x = y cut by x + y = z.
  const std::vector<ProjectivePoint> pencil = {pt(0, 0, 1), pt(1, 0, 1), pt(0, 1, 1), pt(1, 1, 2)};
  const auto w = detect_line_arrangement(pencil);
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(w->lines.size(), 4u);
  EXPECT_EQ(w->incidence[0].size(), 3u);
}

TEST(StarConfiguration, Examples) {
  const auto w = is_star_configuration(star(4, 1).points);
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(w->p, 4);
  EXPECT_FALSE(is_star_configuration(general(6, 42)).has_value());
  EXPECT_FALSE(is_star_configuration(type9().points).has_value());
  EXPECT_FALSE(is_star_configuration(general(5, 1)).has_value());
  EXPECT_THROW(is_star_configuration(general(2, 1)), std::invalid_argument);
}

TEST(Type9, Examples) {
  EXPECT_TRUE(is_type9(type9().points));
  EXPECT_FALSE(is_type9(on_conic(6)));
  EXPECT_FALSE(is_type9(star(4, 1).points));
  EXPECT_FALSE(is_type9(general(6, 42)));
  EXPECT_FALSE(is_type9(general(5, 42)));
  // Triangle with the extra points collinear: an extra line through D, E, F.
  const std::vector<ProjectivePoint> degenerate = {pt(0, 0, 1), pt(1, 0, 1), pt(0, 1, 1),
                                                   pt(0, 2, 1), pt(3, 0, 1), pt(-3, 4, 1)};
  ASSERT_TRUE(are_collinear({degenerate[3], degenerate[4], degenerate[5]}).has_value());
  EXPECT_FALSE(is_type9(degenerate));
}

TEST(RoundTrips, GeneratorsPassTheirDetectors) {
  EXPECT_TRUE(are_collinear(collinear(7)).has_value());
  for (int p = 3; p <= 6; ++p) {
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      const auto c = star(p, seed);
      const auto w = is_star_configuration(c.points);
      ASSERT_TRUE(w.has_value());
      EXPECT_EQ(w->p, p);
      EXPECT_TRUE(detect_line_arrangement(c.points).has_value());
    }
  }
  for (std::uint64_t seed = 0; seed < 10; ++seed) EXPECT_TRUE(is_type9(type9(seed).points));
}

TEST(RoundTrips, DetectorsRejectRandomGeneralConfigurations) {
  int star_hits = 0, type9_hits = 0, arrangement_hits = 0, collinear_hits = 0, checked = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    Rng rng(derive_seed(777, seed));
    const int r = static_cast<int>(rng.uniform(4, 10));
    // Sizes that match the star (6, 10) and type-9 (6) shapes come up often.
    const auto pts = general_config(r, seed, kDefaultHeight, false).points;
    ++checked;
    if (are_collinear(pts)) ++collinear_hits;
    if (is_star_configuration(pts)) ++star_hits;
    if (is_type9(pts)) ++type9_hits;
    if (detect_line_arrangement(pts)) ++arrangement_hits;
  }
  EXPECT_EQ(checked, 1000);
  EXPECT_EQ(collinear_hits, 0);
  EXPECT_EQ(star_hits, 0);
  EXPECT_EQ(type9_hits, 0);
  EXPECT_EQ(arrangement_hits, 0);
}

TEST(SingularPoints, Examples) {
  const Field f7 = Field::prime(7);
  const auto xyz = singular_points_over_Fp(mono(1, 1, 1, 1, f7));
  const std::vector<ProjectivePoint> vertices = {pt(0, 0, 1, f7), pt(0, 1, 0, f7), pt(1, 0, 0, f7)};
  std::vector<ProjectivePoint> sorted = vertices;
  std::sort(sorted.begin(), sorted.end());
  EXPECT_EQ(xyz, sorted);
  EXPECT_TRUE(singular_points_over_Fp(mono(1, 0, 2, 0, f7) - mono(1, 1, 0, 1, f7)).empty());
  // z y^2 - x^2 (x + z): node at the origin only.
  const HomoPoly nodal = mono(1, 0, 2, 1, f7) - mono(1, 3, 0, 0, f7) - mono(1, 2, 0, 1, f7);
  EXPECT_EQ(singular_points_over_Fp(nodal), (std::vector<ProjectivePoint>{pt(0, 0, 1, f7)}));
  EXPECT_THROW(singular_points_over_Fp(mono(1, 1, 1, 1)), FieldMismatch);
  EXPECT_THROW(singular_points_over_Fp(mono(1, 3, 0, 0, Field::prime(3))), CharacteristicTooSmall);
}

TEST(SingularPoints, AreSingular) {
  Rng rng(12);
  const Field f11 = Field::prime(11);
  for (int t = 0; t < 30; ++t) {
    const auto p = testing_support::random_points(f11, 2, rng);
    // Force singularities by multiplying lines through two points.
    HomoPoly f = testing_support::random_line_through(p[0], rng) * testing_support::random_line_through(p[0], rng) *
                 testing_support::random_form(f11, static_cast<int>(rng.uniform(1, 3)), rng);
    if (f.is_zero()) continue;
    const auto sing = singular_points_over_Fp(f);
    EXPECT_NE(std::find(sing.begin(), sing.end(), p[0]), sing.end());
    for (const auto& q : sing) EXPECT_GE(order_of_vanishing(f, q), 2);
    EXPECT_TRUE(std::is_sorted(sing.begin(), sing.end()));
  }
}

TEST(SingularPoints, MatchGradientScanOracle) {
  // Independent scan with the oracle's point list and plain evaluation.
  Rng rng(13);
  const Field f7 = Field::prime(7);
  for (int t = 0; t < 20; ++t) {
    const HomoPoly f = testing_support::random_form(f7, static_cast<int>(rng.uniform(2, 4)), rng);
    if (f.is_zero()) continue;
    std::vector<ProjectivePoint> want;
    for (const auto& m : oracle::all_points(7)) {
      const auto P = pt(m.c[0], m.c[1], m.c[2], f7);
      bool all = true;
      for (int v = 0; v < 3; ++v) all = all && evaluate(partial_derivative(f, v), P).is_zero();
      if (all) want.push_back(P);
    }
    std::sort(want.begin(), want.end());
    EXPECT_EQ(singular_points_over_Fp(f), want);
  }
}

TEST(ZerosOverFp, ConicHasPPlusOnePoints) {
  const Field f13 = Field::prime(13);
  EXPECT_EQ(zeros_over_Fp(mono(1, 0, 2, 0, f13) - mono(1, 1, 0, 1, f13)).size(), 14u);
}
