#include <doctest.h>

#include <cmath>
#include <numbers>

#include "irlc/errors.hpp"
#include "irlc/pairing.hpp"
#include "irlc/weyl.hpp"

using namespace irlc;
using namespace irlc::weyl;

namespace {
constexpr double two_pi = 2 * std::numbers::pi;

PhotonWaveFunction local(double t0, const Vec3& c, const Vec3& dir) {
  testfields::Term e;
  e.time = testfields::make_bump(t0, 0.4, 1);
  e.space.center = c;
  e.space.halfwidth = 0.45;
  e.direction = dir;
  return testfields::photon_wavefunction(testfields::make_pair({e}, {{t0, c}, 1}));
}

struct Fixture {
  std::shared_ptr<LabelSpace> s = LabelSpace::create();
  std::size_t a = s->add(local(0, {}, {1, 0, 0.3}));
  std::size_t b = s->add(local(0.3, {0.2, 0, 0}, {0, 1, 1}));
  std::size_t c = s->add(local(-0.2, {0, 0.3, 0.1}, {1, 1, 0}));
  Label f = Label(s, a, {0.7, 0.2}) + Label(s, b, 0.5);
  Label g = Label(s, b, {0, 1}) - Label(s, c, 0.4);
  Label h = Label(s, c, 1.1);
};
}  // namespace

TEST_CASE("symplectic form of labels") {
  Fixture x;
  CHECK(sigma(x.f, x.f) == 0.0);
  CHECK(sigma(x.f, x.g) == doctest::Approx(-sigma(x.g, x.f)).epsilon(1e-14));
  CHECK(sigma(x.f, x.f.scaled({0, 1})) == doctest::Approx(inner(x.f, x.f).real()).epsilon(1e-14));
  // agrees with a direct pairing of the assembled wave functions
  const cplx direct = pairing::pair(x.f.wavefunction(), x.g.wavefunction(), x.s->spec()).value;
  CHECK(std::abs(inner(x.f, x.g) - direct) < 1e-9 * std::abs(direct));
}

TEST_CASE("Weyl relations") {
  Fixture x;
  const WeylElement F(x.f, 0.4), G(x.g, 5.9), H(x.h, 2.0);
  const auto fg = multiply(F, G);
  CHECK(phase_distance(fg.phase(), 0.4 + 5.9 - sigma(x.f, x.g)) < 1e-14);
  CHECK(fg.phase() >= 0);
  CHECK(fg.phase() < two_pi);
  // W(f) W(-f) = W(0)
  const auto e = multiply(WeylElement(x.f), WeylElement(-x.f));
  CHECK(e.label().is_zero());
  CHECK(phase_distance(e.phase(), 0) < 1e-15);
  const auto ff = multiply(WeylElement(x.f), WeylElement(x.f));
  CHECK(phase_distance(ff.phase(), 0) < 1e-15);
  CHECK(same_element(ff, WeylElement(x.f.scaled(2.0)), 1e-15));
  // cocycle
  CHECK(phase_distance(multiply(fg, H).phase(), multiply(F, multiply(G, H)).phase()) < 1e-10);
}

TEST_CASE("involution") {
  Fixture x;
  const WeylElement F(x.f, 1.3);
  const auto s = adjoint(F);
  CHECK(same_element(adjoint(s), F, 1e-15));
  CHECK(phase_distance(s.phase(), two_pi - 1.3) < 1e-15);
  const auto one = multiply(F, s);
  CHECK(same_element(one, WeylElement::identity(x.s), 1e-15));
}

TEST_CASE("improper labels are rejected") {
  Fixture x;
  profiles::DressingParams p;
  const auto v = x.s->add(profiles::profile_wavefunction(p, profiles::ProfileKind::limit()));
  CHECK_FALSE(Label(x.s, v).proper());
  CHECK_THROWS_AS(WeylElement(Label(x.s, v)), InvalidParameter);
}

TEST_CASE("coherent automorphisms") {
  Fixture x;
  profiles::DressingParams p;
  const auto vp = x.s->add(profiles::profile_wavefunction(p, profiles::ProfileKind::limit()));
  const auto vh = x.s->add(profiles::profile_wavefunction(p, profiles::ProfileKind::hat()));
  const CoherentAutomorphism aP{Label(x.s, vp)}, aH{Label(x.s, vh)};
  const WeylElement F(x.f, 0.2), G(x.g, 1.0);

  // phase shift -2 Im <-i v, f>
  const auto m = apply_automorphism(aP, F);
  const double shift = -2 * inner(Label(x.s, vp).scaled({0, -1}), x.f).imag();
  CHECK(phase_distance(m.phase(), 0.2 + shift) < 1e-14);
  CHECK(same_element(WeylElement(m.label(), 0.2), F, 0));

  // distributes over products
  CHECK(phase_distance(apply_automorphism(aP, multiply(F, G)).phase(),
                       multiply(apply_automorphism(aP, F), apply_automorphism(aP, G)).phase()) < 1e-10);

  // difference acts by the difference of phases
  const auto d = compose_difference(aP, aH);
  const double s1 = apply_automorphism(aP, F).phase(), s2 = apply_automorphism(aH, F).phase();
  CHECK(phase_distance(apply_automorphism(d, F).phase() - 0.2, (s1 - 0.2) - (s2 - 0.2)) < 1e-9);
  CHECK(is_identity(compose_difference(aP, aP)));

  // v_P is not square integrable, v_P - v^_P is (Lemma 1 condition)
  CHECK_FALSE(check_inner(aP).square_integrable);
  const auto ci = check_inner(d);
  CHECK(ci.square_integrable);
  CHECK_FALSE(inner_element(aP).has_value());
  CHECK(inner_element(d).has_value());

  // w = 0: identity map
  profiles::DressingParams z = p;
  z.velocity = {};
  const auto v0 = x.s->add(profiles::profile_wavefunction(z, profiles::ProfileKind::limit()));
  CHECK(phase_distance(apply_automorphism({Label(x.s, v0)}, F).phase(), 0.2) == 0.0);
}

TEST_CASE("inner automorphism equals conjugation by W(-i v)") {
  Fixture x;
  const CoherentAutomorphism beta{x.h};
  const auto u = inner_element(beta);
  REQUIRE(u.has_value());
  const WeylElement F(x.f, 0.7);
  const auto lhs = apply_automorphism(beta, F);
  const auto rhs = multiply(*u, multiply(F, adjoint(*u)));
  CHECK(same_element(WeylElement(rhs.label(), rhs.phase()), WeylElement(lhs.label(), lhs.phase()), 1e-10));
  CHECK(phase_distance(lhs.phase(), rhs.phase()) < 1e-10);
}

TEST_CASE("state phase") {
  profiles::DressingParams p;
  quad::QuadratureSpec q;
  testfields::Term e;
  e.time = testfields::make_bump(0, 0.4, 1);
  e.space.halfwidth = 0.45;
  e.direction = {1, 0, 1};
  const auto f = testfields::make_pair({e}, {{0, {}}, 1});
  CHECK(std::abs(std::abs(state_phase(p, f, q)) - 1) < 1e-15);
  profiles::DressingParams z = p;
  z.velocity = {};
  CHECK(state_phase(z, f, q) == cplx(1, 0));
}

TEST_CASE("phase helpers") {
  CHECK(canonical_phase(-0.5) == doctest::Approx(two_pi - 0.5));
  CHECK(canonical_phase(two_pi) == 0.0);
  CHECK(phase_distance(0.1, two_pi - 0.1) == doctest::Approx(0.2));
}
