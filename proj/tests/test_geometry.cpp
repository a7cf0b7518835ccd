#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "curves.hpp"
#include "oracles/knot_bracket.hpp"
#include "sbridge/braid.hpp"
#include "sbridge/errors.hpp"
#include "sbridge/geometry.hpp"

using namespace sbridge;

namespace {

Direction random_direction(std::mt19937& rng) {
  std::normal_distribution<double> g(0, 1);
  return Direction(g(rng), g(rng), g(rng));
}

using Matrix = std::array<std::array<double, 3>, 3>;

Matrix random_rotation(std::mt19937& rng) {
  std::normal_distribution<double> g(0, 1);
  double w = g(rng), x = g(rng), y = g(rng), z = g(rng);
  const double n = std::sqrt(w * w + x * x + y * y + z * z);
  w /= n, x /= n, y /= n, z /= n;
  return {{{1 - 2 * (y * y + z * z), 2 * (x * y - z * w), 2 * (x * z + y * w)},
           {2 * (x * y + z * w), 1 - 2 * (x * x + z * z), 2 * (y * z - x * w)},
           {2 * (x * z - y * w), 2 * (y * z + x * w), 1 - 2 * (x * x + y * y)}}};
}

Point apply(const Matrix& m, const Point& p) {
  Point q{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) q[i] += m[i][j] * p[j];
  }
  return q;
}

// Two J-arcs meeting at the point (0,0,5), which shows up twice in the cycle.
SpaceCurve shared_point_curve() {
  return SpaceCurve({{0, 0, 5}, {1, 0, 1}, {2, 0, 2}, {0, 0, 5}, {-1, 0, 1},
                     {-2, 0, 2}},
                    {Tag::J, Tag::J, Tag::L, Tag::J, Tag::J, Tag::L},
                    {true, false, true, true, false, true});
}

// Brute force: probe a level midway between each pair of consecutive
// distinct heights and count segments straddling it.
int crossings_by_levels(const SpaceCurve& c, const Direction& v) {
  std::vector<double> h;
  for (const auto& p : c.vertices()) {
    h.push_back(p[0] * v[0] + p[1] * v[1] + p[2] * v[2]);
  }
  std::vector<double> sorted = h;
  std::sort(sorted.begin(), sorted.end());
  int best = 0;
  for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
    const double level = 0.5 * (sorted[i] + sorted[i + 1]);
    if (!(sorted[i] < level && level < sorted[i + 1])) continue;
    int k = 0;
    for (std::size_t s = 0; s < h.size(); ++s) {
      const double a = h[s] - level, b = h[(s + 1) % h.size()] - level;
      if (a * b < 0) ++k;
    }
    best = std::max(best, k);
  }
  return best;
}

}  // namespace

TEST(Curve, CsvRoundTrip) {
  const auto c = shared_point_curve();
  std::stringstream ss;
  write_curve_csv(ss, c);
  const auto back = read_curve_csv(ss);
  EXPECT_EQ(back.vertices(), c.vertices());
  EXPECT_EQ(back.tags(), c.tags());
  EXPECT_EQ(back.singular(), c.singular());

  const auto eta = SpaceCurve(testcurves::eta_points(97));
  std::stringstream s2;
  write_curve_csv(s2, eta);
  EXPECT_EQ(read_curve_csv(s2).vertices(), eta.vertices());  // bit exact
}

TEST(Curve, RejectsBadInput) {
  EXPECT_THROW(SpaceCurve({{0, 0, 0}, {1, 0, 0}}), InvalidCurve);
  EXPECT_THROW(SpaceCurve({{0, 0, 0}, {0, 0, 0}, {1, 0, 0}}), InvalidCurve);
  EXPECT_THROW(SpaceCurve({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}},
                          {Tag::J, Tag::L, Tag::J}, {false, false, false}),
               InvalidCurve);
  std::stringstream bad_header("x,y,z\n0,0,0\n");
  EXPECT_THROW(read_curve_csv(bad_header), ParseError);
  std::stringstream bad_cell("x,y,z,tag,singular\n0,0,zz,J,0\n");
  EXPECT_THROW(read_curve_csv(bad_cell), ParseError);
  std::stringstream bad_tag("x,y,z,tag,singular\n0,0,0,K,0\n");
  EXPECT_THROW(read_curve_csv(bad_tag), ParseError);
}

TEST(Extrema, HexagonHasOneTopOneBottom) {
  const auto e = count_extrema(testcurves::regular_polygon_xz(6),
                               Direction(0, 0, 1));
  EXPECT_EQ(e.maxima, 1);
  EXPECT_EQ(e.minima, 1);
}

TEST(Extrema, LevelEdgeIsNotGeneric) {
  // flat top edge when a side, not a vertex, faces up
  std::vector<Point> pts;
  for (int k = 0; k < 6; ++k) {
    const double t = std::numbers::pi * k / 3;
    pts.push_back({std::cos(t), 0.0, std::sin(t)});
  }
  EXPECT_THROW(count_extrema(SpaceCurve(pts), Direction(0, 0, 1)),
               GenericityFailure);
  const auto rep = sweep_directions(SpaceCurve(pts), {50, 1, false});
  EXPECT_EQ(rep.max_maxima, 1);
}

TEST(Extrema, EtaHasTwoMaxima) {
  const SpaceCurve eta(testcurves::eta_points(720));
  const auto e = count_extrema(eta, Direction(0, 0, 1));
  EXPECT_EQ(e.maxima, 2);
  EXPECT_EQ(e.minima, 2);
}

TEST(Extrema, HexagonalTrefoilIsKnottedWithAtMostThreeMaxima) {
  const auto pts = testcurves::hexagonal_trefoil();
  const auto tre = oracle::plat_bracket(braid::PlatDiagram(2, {2, 2, 2}));
  for (unsigned view : {1u, 2u, 3u}) {
    const auto b = oracle::polygon_bracket(pts, view);
    EXPECT_TRUE(oracle::equal_up_to_framing(b, tre) ||
                oracle::equal_up_to_framing(b, oracle::mirrored(tre)));
  }
  const SpaceCurve c(pts);
  std::mt19937 rng(2024);
  for (int i = 0; i < 1000; ++i) {
    const auto e = count_extrema(c, random_direction(rng));
    EXPECT_LE(e.maxima, 3);
    EXPECT_GE(e.maxima, 2);  // bridge number of a knotted curve
  }
}

TEST(Extrema, MaximaMatchMinimaAndAntipodes) {
  const SpaceCurve c(testcurves::hexagonal_trefoil());
  const SpaceCurve eta(testcurves::eta_points(301));
  std::mt19937 rng(8);
  for (int i = 0; i < 500; ++i) {
    const Direction v = random_direction(rng);
    for (const auto* curve : {&c, &eta}) {
      const auto e = count_extrema(*curve, v);
      EXPECT_EQ(e.maxima, e.minima);
      EXPECT_EQ(e.maxima, count_extrema(*curve, -v).minima);
    }
  }
}

TEST(Extrema, RotationInvariance) {
  const auto pts = testcurves::hexagonal_trefoil();
  const auto eta = testcurves::eta_points(181);
  std::mt19937 rng(10);
  for (int r = 0; r < 10; ++r) {
    const auto m = random_rotation(rng);
    for (const auto* base : {&pts, &eta}) {
      std::vector<Point> moved;
      for (const auto& p : *base) moved.push_back(apply(m, p));
      for (int i = 0; i < 50; ++i) {
        const Direction v = random_direction(rng);
        const auto w = apply(m, v.v);
        const auto a = count_extrema(SpaceCurve(*base), v);
        const auto b = count_extrema(SpaceCurve(moved), Direction(w[0], w[1], w[2]));
        EXPECT_EQ(a.maxima, b.maxima);
      }
    }
  }
}

TEST(Extrema, JArcsCountOneSidedEnds) {
  // arcs 0-1-2-3 and 4-5, L segments 3-4 and 5-0
  const SpaceCurve c({{0, 0, 0}, {1, 0, 2}, {2, 0, 1}, {3, 0, 3}, {4, 0, 0.5},
                      {2, 0, -1}},
                     {Tag::J, Tag::J, Tag::J, Tag::L, Tag::J, Tag::L},
                     {true, false, false, true, true, true});
  const Direction up(0, 0, 1);
  const auto j = count_extrema(c, up, Restrict::JOnly);
  EXPECT_EQ(j.maxima, 3);  // vertex 1, ends 3 and 4
  EXPECT_EQ(j.minima, 3);  // vertex 2, ends 0 and 5
  const auto all = count_extrema(c, up);
  EXPECT_EQ(all.maxima, 2);
}

TEST(Extrema, SharedSingularPointCountsOnce) {
  const auto c = shared_point_curve();
  const auto j = count_extrema(c, Direction(0, 0, 1), Restrict::JOnly);
  EXPECT_EQ(j.maxima, 3);  // (0,0,5) once, plus both far ends
  EXPECT_EQ(j.minima, 2);
}

TEST(Extrema, JOnlyBoundedByAllPlusSingular) {
  std::mt19937 rng(4);
  std::vector<SpaceCurve> curves{shared_point_curve()};
  // random tagged polygons
  std::uniform_real_distribution<double> u(-1, 1);
  for (int k = 0; k < 20; ++k) {
    std::vector<Point> pts(12);
    for (auto& p : pts) p = {u(rng), u(rng), u(rng)};
    std::vector<Tag> tags(12, Tag::J);
    for (int s : {2, 3, 7}) tags[s] = Tag::L;
    if (k % 2) tags[10] = Tag::L;
    std::vector<bool> sing(12);
    for (int i = 0; i < 12; ++i) sing[i] = tags[(i + 11) % 12] != tags[i];
    curves.emplace_back(pts, tags, sing);
  }
  for (const auto& c : curves) {
    const int e = static_cast<int>(c.singular_vertices().size());
    for (int i = 0; i < 100; ++i) {
      const Direction v = random_direction(rng);
      EXPECT_LE(count_extrema(c, v, Restrict::JOnly).maxima,
                count_extrema(c, v).maxima + e);
    }
  }
}

TEST(Sweep, ConvexPolygonsHaveOneMaximum) {
  for (int n : {3, 7, 40}) {
    const auto rep =
        sweep_directions(testcurves::regular_polygon_xz(n), {1000, 3});
    EXPECT_EQ(rep.min_maxima, 1);
    EXPECT_EQ(rep.max_maxima, 1);
    EXPECT_EQ(rep.parity_violations, 0);
  }
}

TEST(Sweep, EtaSuperbridgeTwo) {
  const SpaceCurve eta(testcurves::eta_points(720));
  const auto rep = sweep_directions(eta, {2000, 5});
  EXPECT_EQ(rep.max_maxima, 2);
  EXPECT_EQ(rep.min_maxima, 1);
  EXPECT_EQ(rep.parity_violations, 0);
  EXPECT_GE(rep.direction_count, 2006u);
}

TEST(Sweep, DeterministicAndRefinementOnlyHelps) {
  const SpaceCurve c(testcurves::hexagonal_trefoil());
  const auto a = sweep_directions(c, {300, 9});
  const auto b = sweep_directions(c, {300, 9});
  EXPECT_EQ(a.max_maxima, b.max_maxima);
  EXPECT_EQ(a.argmax_direction, b.argmax_direction);
  EXPECT_EQ(a.argmin_direction, b.argmin_direction);
  const auto flat = sweep_directions(c, {300, 9, false});
  EXPECT_GE(a.max_maxima, flat.max_maxima);
  EXPECT_LE(a.min_maxima, flat.min_maxima);
  EXPECT_EQ(count_extrema(c, a.argmax_direction).maxima, a.max_maxima);
  EXPECT_THROW(sweep_directions(c, {0, 1}), InvalidParams);
}

TEST(Degree, MatchesLevelProbe) {
  std::mt19937 rng(6);
  const SpaceCurve c(testcurves::hexagonal_trefoil());
  const SpaceCurve eta(testcurves::eta_points(200));
  for (int i = 0; i < 300; ++i) {
    const Direction v = random_direction(rng);
    EXPECT_EQ(plane_crossings(c, v), crossings_by_levels(c, v));
    EXPECT_EQ(plane_crossings(eta, v), crossings_by_levels(eta, v));
    EXPECT_EQ(plane_crossings(c, v) % 2, 0);
  }
}

TEST(Degree, KnownValues) {
  EXPECT_EQ(geometric_degree(testcurves::regular_polygon_xz(64), {500, 1}), 2);
  const SpaceCurve tre(testcurves::hexagonal_trefoil());
  EXPECT_GE(geometric_degree(tre, {2000, 1}), 6);
}

TEST(Certificate, Examples) {
  const SpaceCurve tre(testcurves::hexagonal_trefoil());
  const auto t = certify_inequalities(tre, {2000, 11});
  EXPECT_EQ(t.max_maxima, 3);
  EXPECT_EQ(t.stick_count, 6u);
  EXPECT_TRUE(t.degree_le_twice_maxima);
  EXPECT_TRUE(t.maxima_le_half_sticks);

  const SpaceCurve eta(testcurves::eta_points(720));
  const auto e = certify_inequalities(eta, {2000, 11});
  EXPECT_EQ(e.max_maxima, 2);
  EXPECT_LE(e.degree, 4);
  EXPECT_TRUE(e.degree_le_twice_maxima);

  const auto p = certify_inequalities(testcurves::regular_polygon_xz(9), {500, 2});
  EXPECT_EQ(p.degree, 2);
  EXPECT_EQ(p.max_maxima, 1);
}

TEST(Certificate, FlagsHoldOnRandomPolygons) {
  std::mt19937 rng(12);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int k = 0; k < 30; ++k) {
    std::vector<Point> pts(5 + k % 9);
    for (auto& p : pts) p = {u(rng), u(rng), u(rng)};
    const auto c = certify_inequalities(SpaceCurve(pts), {200, unsigned(k)});
    EXPECT_TRUE(c.degree_le_twice_maxima);
    EXPECT_TRUE(c.maxima_le_half_sticks);
    EXPECT_EQ(c.degree % 2, 0);
  }
}

TEST(Trace, Preconditions) {
  const auto plain = testcurves::regular_polygon_xz(6);
  EXPECT_THROW(maxima_transition_trace(plain, Direction(0, 0, 1),
                                       Direction(1, 0, 0), 10),
               InvalidCurve);
  const auto c = shared_point_curve();
  EXPECT_THROW(maxima_transition_trace(c, Direction(0, 0, 1),
                                       Direction(1, 0, 0), 1),
               InvalidParams);
}

TEST(Trace, FollowsTheGreatCircle) {
  const auto c = shared_point_curve();
  const auto tr = maxima_transition_trace(c, Direction(0.1, 0.2, 1),
                                          Direction(1, 0.3, 0.1), 90);
  ASSERT_EQ(tr.size(), 91u);
  EXPECT_NEAR(tr.front().direction[2], Direction(0.1, 0.2, 1)[2], 1e-5);
  EXPECT_NEAR(tr.back().direction[0], Direction(1, 0.3, 0.1)[0], 1e-5);
  for (const auto& e : tr) {
    ASSERT_TRUE(e.maxima.has_value());
    EXPECT_EQ(*e.maxima, count_extrema(c, e.direction, Restrict::JOnly).maxima);
  }
  const auto anti = maxima_transition_trace(c, Direction(0, 0, 1),
                                            Direction(0, 0, -1), 20);
  EXPECT_NEAR(anti[10].direction[2], 0.0, 1e-5);
  EXPECT_NEAR(anti.back().direction[2], -1.0, 1e-5);
}
