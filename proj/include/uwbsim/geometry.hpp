#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "uwbsim/ranging.hpp"

namespace uwbsim {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
  bool operator==(const Point2&) const = default;
};

struct Point3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  Point2 plan() const { return {x, y}; }
  bool operator==(const Point3&) const = default;
};

inline Point3 operator+(const Point3& a, const Point3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Point3 operator-(const Point3& a, const Point3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }

enum class WallMaterial { drywall, concrete };

std::string_view to_string(WallMaterial m);
WallMaterial wall_material_from_string(std::string_view name);
LinkCondition condition_for(WallMaterial m);

/// Full-height wall over the plan-view segment a-b.
struct Wall {
  Point2 a;
  Point2 b;
  WallMaterial material = WallMaterial::drywall;
};

struct Anchor {
  std::string id;
  Point3 position;
};

/// Throws InvalidParameter for non-finite coordinates or zero-length walls.
void validate(const Wall& w);
/// Throws InvalidParameter on duplicate ids or non-finite positions.
void validate(std::span<const Anchor> anchors);

double true_distance(const Point3& p, const Point3& q);

/// Closed-segment intersection: grazing contact (shared endpoint, an endpoint
/// on the other segment, collinear overlap) counts as a crossing.
bool segment_crosses_wall(const Point2& p, const Point2& q, const Wall& w);

/// LOS if the plan-view link crosses no wall. Otherwise the most severe
/// crossed material wins (concrete over drywall).
LinkCondition classify_link(const Point3& tag, const Anchor& anchor, std::span<const Wall> walls);

}  // namespace uwbsim
