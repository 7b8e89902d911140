#pragma once

#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "irlc/vec3.hpp"

namespace irlc::quad {

// Gauss-Legendre nodes and weights on [-1, 1], ascending
struct GaussRule {
  std::vector<double> x;
  std::vector<double> w;
};
const GaussRule& gauss_legendre(int n);

// adaptive Gauss-Kronrod (21 point) on [a, b]; tolerance is relative to the L1 norm
double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = 1e-12, double* error = nullptr);
cplx integrate_complex(const std::function<cplx(double)>& f, double a, double b, double rel_tol = 1e-12,
                       double* error = nullptr);

struct RadialRule {
  double r_min = 1e-8;
  double r_max = 0;  // 0: chosen per pairing from decay scan
  double knee = 1.0;  // geometric grading below, uniform panels above
  int panels_per_decade = 4;
  int gauss_order = 16;
  double max_panel = 1.0;
  double tail_tolerance = 1e-10;
};

struct AngularRule {
  int polar_nodes = 32;      // Gauss-Legendre in cos(theta)
  int azimuthal_nodes = 8;   // uniform in phi, offset by half a step
  double nodes_per_feature = 2.0;  // extra nodes per (extent / feature) from wave metadata
  int max_nodes = 512;
};

struct OscillationRule {
  bool enabled = true;
  double nodes_per_wavelength = 6;
  double frequency = 0;  // added to the radial phase rate from metadata
};

struct Tolerance {
  double absolute = 0;
  double relative = 1e-8;
  int max_refinements = 1;
  bool adaptive = false;  // true: refine up to max_refinements and throw ToleranceNotMet past the target
};

struct QuadratureSpec {
  RadialRule radial;
  AngularRule angular;
  OscillationRule oscillation;
  Tolerance tolerance;
  double lower_cutoff = 0;
  double upper_cutoff = std::numeric_limits<double>::infinity();

  void validate() const;
};

struct RadialNodes {
  std::vector<double> r;
  std::vector<double> w;
};

struct MeshRequest {
  double lo = 0, hi = 1;
  double rate = 0;  // radial phase rate (1/length)
  std::vector<double> breaks;
};

// Gauss panels on [lo, hi]; `order` overrides the configured Gauss order, `split` multiplies
// the panel count (refinement level).
RadialNodes radial_nodes(const QuadratureSpec& q, const MeshRequest& m, int order, int split);

struct DirectionSet {
  std::vector<Vec3> dirs;
  std::vector<double> weights;
};
DirectionSet sphere_rule(int n_theta, int n_phi);

// Neumaier compensated accumulator
struct KahanSum {
  double s = 0, c = 0;
  void add(double v);
  double value() const { return s + c; }
};

}  // namespace irlc::quad
