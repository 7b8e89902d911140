#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "irlc/errors.hpp"
#include "irlc/quadrature.hpp"
#include "irlc/testfields.hpp"

using namespace irlc;
using namespace irlc::testfields;

namespace {
constexpr double pi = std::numbers::pi;

Term term(Channel ch, double t0, const Vec3& c, const Vec3& dir, double amp = 1) {
  Term t;
  t.time = make_bump(t0, 0.4, amp);
  t.space.center = c;
  t.space.halfwidth = 0.5;
  t.direction = dir;
  t.channel = ch;
  return t;
}

TestFieldPair sample_pair() {
  return make_pair({term(Channel::electric, 0.1, {0.1, 0, 0}, {1, 0.2, 0.3}),
                    term(Channel::magnetic, -0.05, {0, 0.1, 0}, {0, 1, 1}, 0.7)},
                   {{0, {}}, 1.2});
}

Vec3 random_k(std::mt19937_64& rng, double scale) {
  std::uniform_real_distribution<double> u(-1, 1);
  return scale * Vec3{u(rng), u(rng), u(rng)};
}
}  // namespace

TEST_CASE("bump values") {
  CHECK(make_bump(0, 1, 1)(0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
  CHECK(make_bump(0, 1, 1)(1) == 0.0);
  CHECK(make_bump(0, 1, 1)(-1.5) == 0.0);
  CHECK(make_bump(2, 0.5, 3)(2) == doctest::Approx(3 * std::exp(-1.0)).epsilon(1e-15));
  CHECK_THROWS_AS(make_bump(0, 0, 1), InvalidParameter);
  CHECK_THROWS_AS(make_bump(0, -1, 1), InvalidParameter);
}

TEST_CASE("bump derivatives converge under step refinement") {
  const auto b = make_bump(0, 1, 1);
  auto d4 = [&](double x, double h) {
    return (b(x + 2 * h) - 4 * b(x + h) + 6 * b(x) - 4 * b(x - h) + b(x - 2 * h)) / std::pow(h, 4);
  };
  for (double x : {0.5, 0.8, 0.9}) {
    const double a = d4(x, 2e-3), c = d4(x, 1e-3);
    CHECK(std::isfinite(a));
    CHECK(std::abs(a - c) <= 1e-2 * std::abs(c));
  }
  // across the support edge every difference quotient vanishes to rounding
  for (double x : {1.0, 1.01}) CHECK(std::abs(d4(x, 1e-3)) < 1e-6);
}

TEST_CASE("1D Fourier transform") {
  const auto b = make_bump(0, 1, 1);
  for (double w : {0.0, 0.7, 3.0, 12.0}) CHECK(fourier_transform_1d(b, w).imag() == 0.0);
  // independent quadrature of the bump integral
  const double direct = quad::integrate([&](double t) { return b(t); }, -1, 1, 1e-13);
  CHECK(fourier_transform_1d(b, 0).real() == doctest::Approx(direct / std::sqrt(2 * pi)).epsilon(1e-10));
  CHECK(bump_integral(b) == doctest::Approx(direct).epsilon(1e-10));
  // direct transform of a shifted bump
  const auto s = make_bump(0.7, 0.4, 2);
  const double w = 5.3;
  const cplx ref = quad::integrate_complex([&](double t) { return std::polar(s(t), -w * t); }, 0.3, 1.1, 1e-13) /
                   std::sqrt(2 * pi);
  CHECK(std::abs(fourier_transform_1d(s, w) - ref) < 1e-10 * std::abs(ref));
  // decay ratios against a 30-digit quadrature of the same integral
  const double f0 = fourier_transform_1d(b, 0).real();
  CHECK(fourier_transform_1d(b, 50).real() / f0 == doctest::Approx(-1.50036005990776743e-4).epsilon(1e-9));
  CHECK(fourier_transform_1d(b, 100).real() / f0 == doctest::Approx(5.03385854882139548e-6).epsilon(1e-8));
  CHECK(fourier_transform_1d(b, 200).real() / f0 == doctest::Approx(-5.55496381804845908e-8).epsilon(1e-6));
  // faster than any power: |f~(w)| w^6 keeps falling
  CHECK(std::abs(fourier_transform_1d(b, 400).real()) * std::pow(400.0, 6) <
        std::abs(fourier_transform_1d(b, 200).real()) * std::pow(200.0, 6));
}

TEST_CASE("radial shape transform against direct quadrature") {
  for (double K : {0.0, 0.5, 4.0, 20.0}) {
    const double R = 0.6;
    const double ref = quad::integrate(
        [&](double r) {
          const double s = r / R;
          const double phi = s < 1 ? std::exp(-1 / (1 - s * s)) : 0.0;
          return r * r * phi * (K == 0 ? 1.0 : std::sin(K * r) / (K * r));
        },
        0, R, 1e-13);
    CHECK(radial_shape_transform(R, K) == doctest::Approx(ref).epsilon(1e-9).scale(1e-12));
  }
}

TEST_CASE("on-shell transform symmetries") {
  const auto p = sample_pair();
  std::mt19937_64 rng(3);
  for (int i = 0; i < 20; ++i) {
    const Vec3 k = random_k(rng, 3);
    // real components: conj F(k0, k) = F(-k0, -k), factor by factor
    for (const auto& t : p.terms) {
      CHECK(std::abs(t.space.transform(-k) - std::conj(t.space.transform(k))) < 1e-12);
      CHECK(std::abs(fourier_transform_1d(t.time, -norm(k)) - std::conj(fourier_transform_1d(t.time, norm(k)))) <
            1e-14);
    }
    // the on-shell value is the product of both factors at (k0, k) = (|k|, k)
    const auto a = onshell_transform(p, k);
    CVec3 e;
    for (const auto& t : p.terms)
      if (t.channel == Channel::electric)
        e += CVec3(t.direction) * (fourier_transform_1d(t.time, -norm(k)) * t.space.transform(k));
    CHECK(norm(a.e - e) < 1e-14);
  }
  const auto zero = make_pair({term(Channel::electric, 0, {}, {1, 0, 0}, 0.0)}, {{0, {}}, 1});
  CHECK(norm(onshell_transform(zero, {0.3, 0.2, 1}).e) == 0.0);
}

TEST_CASE("translation multiplies by the on-shell phase") {
  auto base = sample_pair();
  const double a0 = 0.3;
  const Vec3 a{0.2, -0.1, 0.4};
  auto shifted = base;
  for (auto& t : shifted.terms) {
    t.time.center += a0;
    t.space.center = t.space.center + a;
  }
  std::mt19937_64 rng(5);
  for (int i = 0; i < 10; ++i) {
    const Vec3 k = random_k(rng, 2);
    const cplx ph = std::polar(1.0, norm(k) * a0 - dot(k, a));
    const auto x = onshell_transform(base, k), y = onshell_transform(shifted, k);
    CHECK(norm(y.e - x.e * ph) < 1e-12 * (1 + norm(x.e)));
    CHECK(norm(y.b - x.b * ph) < 1e-12 * (1 + norm(x.b)));
  }
}

TEST_CASE("spatial transform against direct quadrature") {
  SpaceBump s;
  s.center = {0.2, 0, -0.1};
  s.halfwidth = 0.5;
  const Vec3 k{0.7, -1.1, 2.0};
  // radial: (2pi)^{-3/2} 4 pi int r^2 phi sin(Kr)/(Kr) dr times the center phase
  const double K = norm(k);
  const cplx ref = std::pow(2 * pi, -1.5) * 4 * pi * radial_shape_transform(0.5, K) *
                   std::polar(1.0, -dot(k, s.center));
  CHECK(std::abs(s.transform(k) - ref) < 1e-14);
}

TEST_CASE("photon wave function: transversality, small-k law, decay") {
  const auto f = photon_wavefunction(sample_pair());
  CHECK(f.meta().small_k_exponent == 0.5);
  std::mt19937_64 rng(9);
  for (int i = 0; i < 100; ++i) {
    const Vec3 k = random_k(rng, 4);
    const auto v = f(k);
    CHECK(std::abs(dot(k, v)) <= 1e-12 * norm(k) * (norm(v) + 1e-300));
  }
  const Vec3 dir = Vec3{0.3, 0.5, 0.8} / norm(Vec3{0.3, 0.5, 0.8});
  double worst = 0;
  for (int i = 0; i < 20; ++i) {
    const double r = std::pow(10.0, -8 + 8.0 * i / 19);
    worst = std::max(worst, norm(f(r * dir)) / std::sqrt(r));
  }
  CHECK(std::isfinite(worst));
  CHECK(worst < 1e3);
  const double R = truncation_radius(sample_pair(), 1e-10);
  CHECK(R > 0);
  for (double s : {1.5, 2.0, 3.0}) CHECK(norm(f(s * R * dir)) * std::pow(s * R, 4) < norm(f(dir)) * std::pow(R, 4));
}

TEST_CASE("photon wave function edge cases") {
  // magnetic term with k parallel to the direction: the cross product vanishes
  const auto mag = make_pair({term(Channel::magnetic, 0, {}, {0, 0, 1})}, {{0, {}}, 1});
  CHECK(norm(photon_wavefunction(mag)(Vec3{0, 0, 1.3})) < 1e-300);
  // electric term with longitudinal direction: projected out
  const auto el = make_pair({term(Channel::electric, 0, {}, {1, 0, 0})}, {{0, {}}, 1});
  CHECK(norm(photon_wavefunction(el)(Vec3{0.8, 0, 0})) < 1e-16);
}

TEST_CASE("support honesty") {
  const auto p = sample_pair();
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int i = 0; i < 20000; ++i) {
    const geometry::Point4 x{u(rng), {u(rng), u(rng), u(rng)}};
    if (!geometry::contains(p.support, x)) {
      const auto v = evaluate(p, x);
      CHECK(norm(v.e) == 0.0);
      CHECK(norm(v.b) == 0.0);
    }
  }
  CHECK_THROWS_AS(make_pair({term(Channel::electric, 0, {0.6, 0, 0}, {1, 0, 0})}, {{0, {}}, 1}), InvalidParameter);
}
