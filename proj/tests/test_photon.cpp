#include <doctest.h>

#include <cmath>
#include <random>

#include "irlc/errors.hpp"
#include "irlc/photon.hpp"
#include "irlc/testfields.hpp"

using namespace irlc;
using namespace irlc::photon;

namespace {
Vec3 random_dir(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  Vec3 v{n(rng), n(rng), n(rng)};
  return v / norm(v);
}

PhotonWaveFunction local_field(double t0, const Vec3& c) {
  testfields::Term e;
  e.time = testfields::make_bump(t0, 0.4, 1);
  e.space.center = c;
  e.space.halfwidth = 0.5;
  e.direction = {1, 0.3, 0.2};
  testfields::Term b = e;
  b.channel = testfields::Channel::magnetic;
  b.direction = {0, 1, 1};
  b.time.amplitude = 0.6;
  return testfields::photon_wavefunction(testfields::make_pair({e, b}, {{t0, c}, 1}));
}
}  // namespace

TEST_CASE("polarisation vectors from the printed formula") {
  auto p = polarisation({1, 0, 0});
  CHECK(norm(p.plus - Vec3{0, -1, 0}) < 1e-15);
  CHECK(norm(p.minus - Vec3{0, 0, -1}) < 1e-15);
  p = polarisation({0, 1, 0});
  CHECK(norm(p.plus - Vec3{1, 0, 0}) < 1e-15);
  CHECK(norm(p.minus - Vec3{0, 0, -1}) < 1e-15);
  CHECK_THROWS_AS(polarisation({0, 0, 1}), AxisSingularity);
  CHECK_THROWS_AS(polarisation({0, 0, -1}), AxisSingularity);
}

TEST_CASE("projector identities") {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> n;
  for (int i = 0; i < 1000; ++i) {
    const Vec3 k = random_dir(rng);
    const CVec3 u{{n(rng), n(rng)}, {n(rng), n(rng)}, {n(rng), n(rng)}};
    const auto pu = transverse_project(k, u);
    CHECK(norm(transverse_project(k, pu) - pu) < 1e-14);
    CHECK(std::abs(dot(k, pu)) < 1e-14);
    CHECK(norm(transverse_project_frame(k, u) - pu) < 1e-13);
    CHECK(norm(transverse_project(k, k)) < 1e-15);
  }
  CHECK(norm(transverse_project(Vec3{1, 0, 0}, Vec3{0, 1, 0}) - Vec3{0, 1, 0}) == 0.0);
  CHECK_NOTHROW(transverse_project(Vec3{0, 0, 1}, Vec3{1, 1, 1}));
}

TEST_CASE("helicity components") {
  const auto f = local_field(0, {});
  std::mt19937_64 rng(2);
  for (int i = 0; i < 50; ++i) {
    const Vec3 k = 1.7 * random_dir(rng);
    const auto [fp, fm] = helicity_components(f, k);
    CHECK(std::norm(fp) + std::norm(fm) == doctest::Approx(norm2(f(k))).epsilon(1e-12));
  }
  CHECK_THROWS_AS(helicity_components(f, {0, 0, 2}), AxisSingularity);
}

TEST_CASE("inner product and symplectic form") {
  quad::QuadratureSpec q;
  const auto f = local_field(0, {});
  const auto g = local_field(0.2, {0.1, 0, 0.1});
  const cplx ff = inner_product(f, f, q);
  CHECK(ff.real() > 0);
  CHECK(std::abs(ff.imag()) < 1e-12 * ff.real());
  const cplx fg = inner_product(f, g, q);
  CHECK(std::abs(inner_product(f, g.scaled({0, 1}), q) - cplx(0, 1) * fg) < 1e-10 * std::abs(fg));
  CHECK(std::abs(inner_product(g, f, q) - std::conj(fg)) < 1e-10 * std::abs(fg));
  CHECK(std::abs(symplectic(f, f, q)) < 1e-12 * ff.real());
  CHECK(symplectic(f, f.scaled({0, 1}), q) == doctest::Approx(ff.real()).epsilon(1e-10));
  CHECK(symplectic(f, g, q) == doctest::Approx(-symplectic(g, f, q)).epsilon(1e-10));
  // Im <-i v, f> = Re <v, f>
  CHECK(inner_product(g.scaled({0, -1}), f, q).imag() == doctest::Approx(inner_product(g, f, q).real()).epsilon(1e-10));
}

TEST_CASE("translation matches shifting the test field") {
  quad::QuadratureSpec q;
  const auto f = local_field(0, {});
  const auto moved = local_field(0.5, {0.3, -0.2, 0.1});
  std::mt19937_64 rng(4);
  for (int i = 0; i < 10; ++i) {
    const Vec3 k = 2.0 * random_dir(rng);
    const auto a = f.translated(0.5, {0.3, -0.2, 0.1})(k);
    const auto b = moved(k);
    CHECK(norm(a - b) < 1e-12 * (1 + norm(b)));
  }
  CHECK(f.square_integrable());
}
