#include "irlc/geometry.hpp"

#include <cmath>

#include "irlc/errors.hpp"

namespace irlc::geometry {

namespace {

bool finite(const Point4& p) {
  return std::isfinite(p.t) && std::isfinite(p.x.x) && std::isfinite(p.x.y) &&
         std::isfinite(p.x.z);
}

}  // namespace

DoubleCone make_double_cone(const Point4& center, double radius) {
  if (!(radius > 0) || !std::isfinite(radius)) throw InvalidParameter("double cone radius must be > 0");
  if (!finite(center)) throw InvalidParameter("double cone center must be finite");
  return {center, radius};
}

bool contains(const DoubleCone& dc, const Point4& p) {
  return std::abs(p.t - dc.center.t) + norm(p.x - dc.center.x) < dc.radius;
}

bool contains(const ConeRegion& cone, const Point4& p) {
  const double dt = p.t - cone.apex.t;
  const double r = norm(p.x - cone.apex.x);
  return cone.orientation == Orientation::forward ? r < dt : r < -dt;
}

// The double cone is the convex hull of its tips and its base sphere, and the
// cone is convex, so containment reduces to the near tip. That tip itself is
// not in the open double cone, so it may sit on the cone boundary.
bool double_cone_in_cone(const DoubleCone& dc, const ConeRegion& cone) {
  const double dt = dc.center.t - cone.apex.t;
  const double dx = norm(dc.center.x - cone.apex.x);
  const double lead = cone.orientation == Orientation::forward ? dt : -dt;
  return dx + dc.radius <= lead;
}

Separation causally_separated(const DoubleCone& a, const DoubleCone& b) {
  const double dt = std::abs(a.center.t - b.center.t);
  const double dx = norm(a.center.x - b.center.x);
  const double rs = a.radius + b.radius;
  if (dx - dt >= rs) return Separation::spacelike;
  if (dt - dx >= rs) return Separation::timelike;
  return Separation::neither;
}

const char* to_string(Separation s) {
  switch (s) {
    case Separation::spacelike: return "spacelike";
    case Separation::timelike: return "timelike";
    default: return "neither";
  }
}

}  // namespace irlc::geometry
