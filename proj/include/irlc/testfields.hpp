#pragma once

#include <array>
#include <map>
#include <mutex>
#include <tuple>
#include <vector>

#include "irlc/geometry.hpp"
#include "irlc/photon.hpp"
#include "irlc/vec3.hpp"

namespace irlc::testfields {

// amplitude * exp(-1/(1-s^2)), s = (x - center)/halfwidth, zero for |s| >= 1
struct BumpProfile {
  double center = 0;
  double halfwidth = 1;
  double amplitude = 1;

  double operator()(double x) const;
};

BumpProfile make_bump(double center, double halfwidth, double amplitude);

// (2 pi)^{-1/2} int exp(-i omega t) b(t) dt
cplx fourier_transform_1d(const BumpProfile& b, double omega);
double bump_integral(const BumpProfile& b);

// int_0^R r^2 phi(r/R) sin(K r)/(K r) dr with phi the unit bump shape
double radial_shape_transform(double radius, double K);

enum class SpaceKind { radial, product };

// spatial factor of a separable term, unit amplitude
struct SpaceBump {
  SpaceKind kind = SpaceKind::radial;
  Vec3 center;
  double halfwidth = 1;               // radial: support radius
  std::array<double, 3> widths{1, 1, 1};  // product: per-axis halfwidths

  double operator()(const Vec3& x) const;
  // (2 pi)^{-3/2} int exp(-i k.x) h(x) d^3x
  cplx transform(const Vec3& k) const;
  double support_radius() const;  // radius of a ball about `center` containing the support
};

enum class Channel { electric, magnetic };

struct Term {
  BumpProfile time;  // carries the amplitude
  SpaceBump space;
  Vec3 direction{1, 0, 0};
  Channel channel = Channel::electric;
};

struct TestFieldPair {
  std::vector<Term> terms;
  geometry::DoubleCone support;
};

// validates that every term sits inside the declared double cone
TestFieldPair make_pair(std::vector<Term> terms, const geometry::DoubleCone& support);

struct FieldValue {
  Vec3 e, b;
};
FieldValue evaluate(const TestFieldPair& p, const geometry::Point4& x);

struct OnShell {
  CVec3 e, b;
};

// transforms at (k0 = |k|, k), with exp(i(k0 t - k.x)) and (2 pi)^{-2}
OnShell onshell_transform(const TestFieldPair& p, const Vec3& k);

class OnShellTransform {
 public:
  explicit OnShellTransform(TestFieldPair p) : pair_(std::move(p)) {}
  OnShell operator()(const Vec3& k) const;
  const TestFieldPair& pair() const { return pair_; }

 private:
  TestFieldPair pair_;
  mutable std::mutex mu_;
  mutable std::map<std::tuple<double, double, double>, OnShell> cache_;
};

// f(k) = -i (2 pi)^2 (|k|^{1/2} P_tr f_e~ + |k|^{-1/2} k x f_b~)
photon::PhotonWaveFunction photon_wavefunction(const TestFieldPair& p);

// radius beyond which |f(k)| < rel * max |f|
double truncation_radius(const TestFieldPair& p, double rel = 1e-15);

}  // namespace irlc::testfields
