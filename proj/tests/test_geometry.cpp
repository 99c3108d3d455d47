#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "uwbsim/error.hpp"
#include "uwbsim/geometry.hpp"
#include "uwbsim/random.hpp"

using namespace uwbsim;

TEST(Geometry, TrueDistance) {
  EXPECT_DOUBLE_EQ(true_distance({0, 0, 0}, {3, 4, 0}), 5.0);
  EXPECT_EQ(true_distance({1.5, -2, 7}, {1.5, -2, 7}), 0.0);
  EXPECT_NEAR(true_distance({0, 0, 0}, {1, 1, 1}), std::sqrt(3.0), 1e-15);
  EXPECT_EQ(true_distance({1, 2, 3}, {-4, 0, 9}), true_distance({-4, 0, 9}, {1, 2, 3}));
}

TEST(Geometry, SegmentCrossing) {
  const Wall w{{4, 0}, {4, 3}, WallMaterial::drywall};
  EXPECT_TRUE(segment_crosses_wall({1, 1}, {8, 1}, w));
  EXPECT_FALSE(segment_crosses_wall({1, 1}, {2, 1}, w));
  EXPECT_TRUE(segment_crosses_wall({1, 3}, {8, 3}, w));  // touches the wall end
}

TEST(Geometry, GrazingAndCollinearContact) {
  const Wall w{{0, 0}, {4, 0}, WallMaterial::concrete};
  EXPECT_TRUE(segment_crosses_wall({2, 0}, {2, 5}, w));     // endpoint on the wall
  EXPECT_TRUE(segment_crosses_wall({3, 0}, {6, 0}, w));     // collinear overlap
  EXPECT_TRUE(segment_crosses_wall({4, 0}, {6, 0}, w));     // shared endpoint
  EXPECT_FALSE(segment_crosses_wall({5, 0}, {6, 0}, w));    // collinear, disjoint
  EXPECT_FALSE(segment_crosses_wall({0, 1}, {4, 1}, w));    // parallel
  EXPECT_FALSE(segment_crosses_wall({5, -1}, {5, 1}, w));   // past the end
}

TEST(Geometry, CrossingIsSymmetric) {
  RandomStream s(11);
  auto pt = [&] { return Point2{10.0 * s.uniform(), 10.0 * s.uniform()}; };
  for (int i = 0; i < 5000; ++i) {
    const Point2 p = pt(), q = pt();
    const Wall w{pt(), pt(), WallMaterial::drywall};
    const Wall r{w.b, w.a, w.material};
    const bool x = segment_crosses_wall(p, q, w);
    EXPECT_EQ(x, segment_crosses_wall(q, p, w));
    EXPECT_EQ(x, segment_crosses_wall(p, q, r));
    EXPECT_EQ(x, segment_crosses_wall(q, p, r));
  }
}

TEST(Geometry, ClassifyLink) {
  const Point3 tag{1, 1, 1.2};
  const Anchor a{"A", {8, 1, 3}};
  EXPECT_EQ(classify_link(tag, a, {}), LinkCondition::los);
  const std::vector<Wall> concrete{{{4, 0}, {4, 9}, WallMaterial::concrete}};
  EXPECT_EQ(classify_link(tag, a, concrete), LinkCondition::nlos_concrete);
  const std::vector<Wall> both{{{3, 0}, {3, 9}, WallMaterial::drywall}, {{4, 0}, {4, 9}, WallMaterial::concrete}};
  EXPECT_EQ(classify_link(tag, a, both), LinkCondition::nlos_concrete);
  const std::vector<Wall> flipped{both[1], both[0]};
  EXPECT_EQ(classify_link(tag, a, flipped), LinkCondition::nlos_concrete);
  const std::vector<Wall> drywall{both[0]};
  EXPECT_EQ(classify_link(tag, a, drywall), LinkCondition::nlos_drywall);
}

TEST(Geometry, HeightIsIgnored) {
  const std::vector<Wall> walls{{{4, 0}, {4, 9}, WallMaterial::drywall}};
  for (double z : {0.0, 1.2, 30.0})
    EXPECT_EQ(classify_link({1, 1, z}, {"A", {8, 1, 3}}, walls), LinkCondition::nlos_drywall);
}

TEST(Geometry, ClassificationSymmetryAndMonotoneSeverity) {
  RandomStream s(12);
  auto pt = [&] { return Point2{10.0 * s.uniform(), 10.0 * s.uniform()}; };
  auto severity = [](LinkCondition c) {
    return c == LinkCondition::nlos_concrete ? 2 : c == LinkCondition::nlos_drywall ? 1 : 0;
  };
  for (int i = 0; i < 2000; ++i) {
    const Point2 p = pt(), q = pt();
    const Point3 tag{p.x, p.y, 1.2}, anc{q.x, q.y, 3.0};
    std::vector<Wall> walls;
    int prev = 0;
    for (int k = 0; k < 4; ++k) {
      walls.push_back({pt(), pt(), s.uniform() < 0.5 ? WallMaterial::drywall : WallMaterial::concrete});
      const LinkCondition c = classify_link(tag, {"A", anc}, walls);
      EXPECT_EQ(c, classify_link(anc, {"B", tag}, walls));
      EXPECT_GE(severity(c), prev);
      prev = severity(c);
    }
  }
}

TEST(Geometry, Validation) {
  EXPECT_THROW(validate(Wall{{1, 1}, {1, 1}, WallMaterial::drywall}), InvalidParameter);
  EXPECT_THROW(validate(Wall{{0, 0}, {NAN, 1}, WallMaterial::drywall}), InvalidParameter);
  EXPECT_NO_THROW(validate(Wall{{0, 0}, {0, 1}, WallMaterial::drywall}));
  const std::vector<Anchor> dup{{"A", {0, 0, 0}}, {"A", {1, 0, 0}}};
  EXPECT_THROW(validate(dup), InvalidParameter);
  const std::vector<Anchor> bad{{"A", {0, 0, INFINITY}}};
  EXPECT_THROW(validate(bad), InvalidParameter);
}

TEST(Geometry, MaterialNames) {
  EXPECT_EQ(wall_material_from_string(to_string(WallMaterial::concrete)), WallMaterial::concrete);
  EXPECT_EQ(wall_material_from_string(to_string(WallMaterial::drywall)), WallMaterial::drywall);
  EXPECT_EQ(condition_for(WallMaterial::drywall), LinkCondition::nlos_drywall);
  EXPECT_EQ(condition_for(WallMaterial::concrete), LinkCondition::nlos_concrete);
}
