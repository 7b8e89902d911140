#include <doctest.h>

#include <cmath>
#include <numbers>

#include "irlc/quadrature.hpp"

using namespace irlc;
using namespace irlc::quad;

TEST_CASE("Gauss-Legendre nodes") {
  const auto& g2 = gauss_legendre(2);
  CHECK(g2.x[0] == doctest::Approx(-1 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(g2.w[1] == doctest::Approx(1.0).epsilon(1e-15));
  const auto& g3 = gauss_legendre(3);
  CHECK(std::abs(g3.x[1]) < 1e-15);
  CHECK(g3.w[1] == doctest::Approx(8.0 / 9).epsilon(1e-15));
  CHECK(g3.x[2] == doctest::Approx(std::sqrt(0.6)).epsilon(1e-15));
}

TEST_CASE("Gauss-Legendre is exact to degree 2n-1") {
  for (int n : {4, 16, 32}) {
    const auto& g = gauss_legendre(n);
    for (int d = 0; d <= 2 * n - 1; ++d) {
      double s = 0;
      for (int i = 0; i < n; ++i) s += g.w[i] * std::pow(g.x[i], d);
      const double exact = d % 2 ? 0.0 : 2.0 / (d + 1);
      CHECK(std::abs(s - exact) < 1e-14);
    }
  }
}

TEST_CASE("adaptive integration") {
  double err = 0;
  CHECK(integrate([](double x) { return std::exp(x); }, 0, 1, 1e-13, &err) ==
        doctest::Approx(std::exp(1.0) - 1).epsilon(1e-14));
  CHECK(err >= 0);
  // endpoint singularity: tolerance honoured
  CHECK(integrate([](double x) { return std::sqrt(x); }, 0, 1, 1e-10) == doctest::Approx(2.0 / 3).epsilon(1e-9));
  const auto z = integrate_complex([](double x) { return std::polar(1.0, x); }, 0, std::numbers::pi);
  CHECK(std::abs(z - cplx(0, 2)) < 1e-13);
}

TEST_CASE("sphere rule avoids the axis and integrates polynomials") {
  const auto d = sphere_rule(32, 8);
  double total = 0, z2 = 0;
  for (std::size_t i = 0; i < d.dirs.size(); ++i) {
    const auto& k = d.dirs[i];
    CHECK(k.x * k.x + k.y * k.y > 1e-6);
    CHECK(norm(k) == doctest::Approx(1.0).epsilon(1e-15));
    total += d.weights[i];
    z2 += d.weights[i] * k.z * k.z;
  }
  CHECK(total == doctest::Approx(4 * std::numbers::pi).epsilon(1e-14));
  CHECK(z2 == doctest::Approx(4 * std::numbers::pi / 3).epsilon(1e-14));
}

TEST_CASE("radial panels reproduce simple integrals") {
  QuadratureSpec q;
  const auto n = radial_nodes(q, {1e-8, 10, 0, {}}, 16, 1);
  double s = 0;
  for (std::size_t i = 0; i < n.r.size(); ++i) s += n.w[i] * n.r[i] * n.r[i] * std::exp(-n.r[i]);
  CHECK(s == doctest::Approx(2 - 122 * std::exp(-10.0)).epsilon(1e-12));
}

TEST_CASE("compensated summation") {
  KahanSum k;
  k.add(1.0);
  for (int i = 0; i < 1000; ++i) k.add(1e-17);
  k.add(-1.0);
  CHECK(k.value() == doctest::Approx(1e-14).epsilon(1e-10));
}

TEST_CASE("quadrature settings validation") {
  QuadratureSpec q;
  CHECK_NOTHROW(q.validate());
  q.radial.r_min = 0;
  CHECK_THROWS(q.validate());
  q = {};
  q.oscillation.nodes_per_wavelength = 3;
  CHECK_THROWS(q.validate());
}
