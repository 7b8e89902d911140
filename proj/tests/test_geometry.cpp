#include <doctest.h>

#include <random>

#include "irlc/geometry.hpp"

using namespace irlc;
using namespace irlc::geometry;

namespace {
const ConeRegion forward{Orientation::forward, {0, {}}};
const ConeRegion backward{Orientation::backward, {0, {}}};
}  // namespace

TEST_CASE("cone membership is open") {
  CHECK(contains(forward, Point4{1, {0, 0, 0.5}}));
  CHECK_FALSE(contains(forward, Point4{1, {0, 0, 1}}));
  CHECK_FALSE(contains(forward, Point4{-1, {0, 0, 0.5}}));
  CHECK(contains(backward, Point4{-1, {0, 0.5, 0}}));
}

TEST_CASE("double cone membership") {
  const auto dc = make_double_cone({5, {}}, 1);
  CHECK(contains(dc, Point4{5.5, {0.4, 0, 0}}));
  CHECK_FALSE(contains(dc, Point4{5.5, {0.5, 0, 0}}));  // boundary
  CHECK_FALSE(contains(dc, Point4{6, {}}));
  CHECK_THROWS(make_double_cone({0, {}}, 0));
}

TEST_CASE("double cone inside a cone") {
  CHECK(double_cone_in_cone(make_double_cone({5, {}}, 1), forward));
  CHECK_FALSE(double_cone_in_cone(make_double_cone({0, {}}, 1), forward));
  CHECK(double_cone_in_cone(make_double_cone({-5, {}}, 1), backward));
  CHECK_FALSE(double_cone_in_cone(make_double_cone({5, {}}, 1), backward));
  // both regions are open: a lower tip on the cone boundary still leaves every point inside
  CHECK(double_cone_in_cone(make_double_cone({1, {}}, 1), forward));
  CHECK(double_cone_in_cone(make_double_cone({3, {1.2, 0, 0}}, 1), forward));
  CHECK_FALSE(double_cone_in_cone(make_double_cone({3, {2.1, 0, 0}}, 1), forward));
  CHECK_FALSE(double_cone_in_cone(make_double_cone({0.99, {}}, 1), forward));
}

TEST_CASE("causal separation examples") {
  CHECK(causally_separated(make_double_cone({0, {10, 0, 0}}, 1), make_double_cone({0, {-10, 0, 0}}, 1)) ==
        Separation::spacelike);
  CHECK(causally_separated(make_double_cone({10, {}}, 1), make_double_cone({-10, {}}, 1)) == Separation::timelike);
  CHECK(causally_separated(make_double_cone({0, {}}, 1), make_double_cone({1.5, {1.5, 0, 0}}, 1)) ==
        Separation::neither);
}

TEST_CASE("region properties on random samples") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-4, 4);
  for (int i = 0; i < 2000; ++i) {
    const Point4 c{u(rng), {u(rng), u(rng), u(rng)}};
    const Point4 p{u(rng), {u(rng), u(rng), u(rng)}};
    const double r = 0.1 + std::abs(u(rng));
    // monotone in the radius
    if (contains(make_double_cone(c, r), p)) CHECK(contains(make_double_cone(c, r + 0.5), p));
    const auto a = make_double_cone(c, r);
    const auto b = make_double_cone(p, 0.1 + std::abs(u(rng)) / 4);
    CHECK(causally_separated(a, b) == causally_separated(b, a));
    if (double_cone_in_cone(a, forward) && double_cone_in_cone(b, backward))
      CHECK(causally_separated(a, b) == Separation::timelike);
  }
}

TEST_CASE("contained double cones agree with point sampling") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1, 1);
  for (const auto& dc : {make_double_cone({3, {0.5, 0.2, 0}}, 1), make_double_cone({2.1, {0, 0, 1}}, 1),
                         make_double_cone({2, {1.2, 0, 0}}, 1), make_double_cone({1.9, {0, 0.5, 0}}, 1)}) {
    const bool inside = double_cone_in_cone(dc, forward);
    bool all = true;
    for (int i = 0; i < 20000; ++i) {
      const Point4 p{dc.center.t + u(rng), dc.center.x + Vec3{u(rng), u(rng), u(rng)}};
      if (contains(dc, p) && !contains(forward, p)) all = false;
    }
    CHECK(inside == all);
  }
}
