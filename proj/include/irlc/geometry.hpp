#pragma once

#include <variant>

#include "irlc/vec3.hpp"

namespace irlc::geometry {

struct Point4 {
  double t = 0;
  Vec3 x;
};

struct DoubleCone {
  Point4 center;
  double radius = 1;
};

enum class Orientation { forward, backward };

struct ConeRegion {
  Orientation orientation = Orientation::forward;
  Point4 apex;
};

enum class Separation { spacelike, timelike, neither };

DoubleCone make_double_cone(const Point4& center, double radius);

bool contains(const DoubleCone& dc, const Point4& p);
bool contains(const ConeRegion& cone, const Point4& p);

bool double_cone_in_cone(const DoubleCone& dc, const ConeRegion& cone);

Separation causally_separated(const DoubleCone& a, const DoubleCone& b);

const char* to_string(Separation s);

}  // namespace irlc::geometry
