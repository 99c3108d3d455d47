#include "uwbsim/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <fmt/format.h>

#include "uwbsim/error.hpp"

namespace uwbsim {

namespace {

constexpr double kOrientationEps = 1e-12;

// Sign of the cross product (b - a) x (c - a), with |value| <= eps treated as collinear.
int orientation(const Point2& a, const Point2& b, const Point2& c) {
  const double v = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
  if (v > kOrientationEps) return 1;
  if (v < -kOrientationEps) return -1;
  return 0;
}

// c is collinear with a-b; is it inside the bounding box of a-b?
bool on_segment(const Point2& a, const Point2& b, const Point2& c) {
  return std::min(a.x, b.x) - kOrientationEps <= c.x && c.x <= std::max(a.x, b.x) + kOrientationEps &&
         std::min(a.y, b.y) - kOrientationEps <= c.y && c.y <= std::max(a.y, b.y) + kOrientationEps;
}

int severity(LinkCondition c) {
  switch (c) {
    case LinkCondition::los: return 0;
    case LinkCondition::nlos_drywall: return 1;
    case LinkCondition::nlos_concrete: return 2;
    case LinkCondition::nlos_human: return 3;
  }
  return 0;
}

bool finite(const Point3& p) { return std::isfinite(p.x) && std::isfinite(p.y) && std::isfinite(p.z); }

}  // namespace

std::string_view to_string(WallMaterial m) { return m == WallMaterial::concrete ? "concrete" : "drywall"; }

WallMaterial wall_material_from_string(std::string_view name) {
  if (name == "drywall" || name == "gypsum") return WallMaterial::drywall;
  if (name == "concrete") return WallMaterial::concrete;
  throw DomainError(fmt::format("unknown wall material '{}'", name));
}

LinkCondition condition_for(WallMaterial m) {
  return m == WallMaterial::concrete ? LinkCondition::nlos_concrete : LinkCondition::nlos_drywall;
}

void validate(const Wall& w) {
  if (!std::isfinite(w.a.x) || !std::isfinite(w.a.y) || !std::isfinite(w.b.x) || !std::isfinite(w.b.y)) {
    throw InvalidParameter("wall endpoints must be finite");
  }
  if (w.a == w.b) throw InvalidParameter("wall endpoints must differ");
}

void validate(std::span<const Anchor> anchors) {
  std::set<std::string> ids;
  for (const Anchor& a : anchors) {
    if (!finite(a.position)) throw InvalidParameter(fmt::format("anchor '{}' has a non-finite position", a.id));
    if (!ids.insert(a.id).second) throw InvalidParameter(fmt::format("duplicate anchor id '{}'", a.id));
  }
}

double true_distance(const Point3& p, const Point3& q) { return std::hypot(p.x - q.x, p.y - q.y, p.z - q.z); }

bool segment_crosses_wall(const Point2& p, const Point2& q, const Wall& w) {
  const int o1 = orientation(p, q, w.a);
  const int o2 = orientation(p, q, w.b);
  const int o3 = orientation(w.a, w.b, p);
  const int o4 = orientation(w.a, w.b, q);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(p, q, w.a)) return true;
  if (o2 == 0 && on_segment(p, q, w.b)) return true;
  if (o3 == 0 && on_segment(w.a, w.b, p)) return true;
  if (o4 == 0 && on_segment(w.a, w.b, q)) return true;
  return false;
}

LinkCondition classify_link(const Point3& tag, const Anchor& anchor, std::span<const Wall> walls) {
  LinkCondition worst = LinkCondition::los;
  const Point2 p = tag.plan(), q = anchor.position.plan();
  for (const Wall& w : walls) {
    if (!segment_crosses_wall(p, q, w)) continue;
    const LinkCondition c = condition_for(w.material);
    if (severity(c) > severity(worst)) worst = c;
  }
  return worst;
}

}  // namespace uwbsim
