#pragma once

#include <span>
#include <vector>

#include "irlc/profiles.hpp"
#include "irlc/quadrature.hpp"
#include "irlc/testfields.hpp"
#include "irlc/vec3.hpp"

namespace irlc::wavecheck {

// sine: w(0) = 0, dw/dt(0) = f.  cosine: w(0) = f, dw/dt(0) = 0.
enum class WaveKind { sine, cosine };

struct WaveSolution {
  Vec3 center;
  double radius = 1;  // f = amplitude * bump(|x - center| / radius)
  double amplitude = 1;
  WaveKind kind = WaveKind::sine;

  double initial(const Vec3& x) const;
};

WaveSolution make_wave(const Vec3& center, double radius, double amplitude, WaveKind kind = WaveKind::sine);

struct WaveValue {
  double w = 0, dw = 0;  // w(t, x) and its time derivative
};

// spectral radial formula, uniform-step rule in |k|
WaveValue wave_evaluate(const WaveSolution& ws, double t, const Vec3& x);
// same, for many distances from the center at one t
std::vector<WaveValue> wave_evaluate_radii(const WaveSolution& ws, double t, std::span<const double> rho);

// Kirchhoff closed form for radial data, used as a reference
WaveValue kirchhoff(const WaveSolution& ws, double t, double rho);

struct GridSpec {
  double extent = 0;   // full edge length L; 0 means 4 (r + t_max)
  double spacing = 0;  // h; 0 means r / 16
};

// cubic grid centered on the solution center, stored as distinct radii with multiplicities
struct RadialGrid {
  double h = 0;
  int half = 0;  // points run over -half..half per axis
  std::vector<double> rho;
  std::vector<double> count;
};
RadialGrid make_radial_grid(double extent, double spacing);

struct InitialCheck {
  double value_at_zero = 0;  // max |w(0, x)| (sine) or max |w(0,x) - f| (cosine)
  double fd_error = 0;       // max |central difference - initial velocity| at dt
  double fd_error_half = 0;  // same at dt / 2
};
InitialCheck initial_condition_check(const WaveSolution& ws, std::span<const Vec3> points, double dt);

struct MassRow {
  double t = 0;
  double total = 0, outside = 0;  // grid sums of w^2 h^3
  double fraction() const { return total > 0 ? outside / total : 0; }
};
std::vector<MassRow> mass_outside(const WaveSolution& ws, const std::vector<double>& t_list, const GridSpec& g);

struct SymplecticRow {
  double t = 0;
  double S = 0;
  double scale = 0;  // grid sum of |w1 dw2| + |dw1 w2|
};
struct SymplecticTable {
  std::vector<SymplecticRow> rows;
  double h = 0, extent = 0;
  double max_drift = 0;  // max_t |S(t) - S(0)|
  double relative_drift = 0;
  double smeared = 0;  // int alpha(tau) S(tau) d tau, alpha a unit-mass bump of halfwidth 0.1
};
// the two solutions must share a center
SymplecticTable symplectic_time_invariance(const WaveSolution& a, const WaveSolution& b,
                                           const std::vector<double>& t_list, const GridSpec& g);

struct SupportCheck {
  double outside_fraction = 0;
  double total = 0;
  double k_max = 0;
};
// inverse transform of the cosine (magnetic) and sine/|k| (electric) combinations on a radial
// y-grid; terms must be radial, centered on the support center, with the cone centered at t = 0
SupportCheck bj_support_check(const testfields::TestFieldPair& f, double probe_radius);

enum class ProbeRoute { spacelike, forward_cone, unconstrained };
const char* to_string(ProbeRoute r);

struct RadiusCheck {
  double sigma = 0;  // Im <-i v^_{P,T}, f>
  double scale = 0;
  ProbeRoute route = ProbeRoute::unconstrained;
};
// strict: throw SupportPreconditionViolation unless the probe is spacelike to the double cone of
// radius u + T centered at (-(u + T), 0) or lies in the forward cone
RadiusCheck lemma_a2_radius_check(const profiles::DressingParams& p, double T, const testfields::TestFieldPair& probe,
                                  const quad::QuadratureSpec& q, bool strict = true);

}  // namespace irlc::wavecheck
