#pragma once

#include <memory>
#include <vector>

#include "irlc/photon.hpp"
#include "irlc/quadrature.hpp"
#include "irlc/vec3.hpp"

namespace irlc::profiles {

struct DressingParams {
  double coupling = 0.01;  // alpha~
  double uv_cutoff = 1.0;  // kappa
  double ir_cutoff = 0.0;  // sigma
  Vec3 velocity{0, 0, 0.3};  // w, stands for grad E_P
  double v_max = 0.9;
  double bump_radius = 1.0;  // support radius of g
  double time_shift = 2.0;   // u
  double g0 = 1.0;           // g~(0); anything but 1 breaks square integrability of v_P - v^_P

  // kinematic constraints; throws InvalidParameter
  void validate() const;
  // validate() plus the normalization g~(0) = 1
  void validate_normalized() const;
};

enum class Kind { v_sigma, v_limit, v_hat, v_hat_T };

struct ProfileKind {
  Kind tag = Kind::v_limit;
  double T = 0;

  static ProfileKind sigma() { return {Kind::v_sigma, 0}; }
  static ProfileKind limit() { return {Kind::v_limit, 0}; }
  static ProfileKind hat() { return {Kind::v_hat, 0}; }
  static ProfileKind hat_T(double T) { return {Kind::v_hat_T, T}; }
};

// g~(|k|) for the radial dressing bump, memoized; safe for concurrent use
class DressingBump {
 public:
  DressingBump(double radius, double g0);
  double transform(double K) const;
  double value(double r) const;  // g(x) at |x| = r
  double radius() const { return radius_; }
  double truncation_radius() const { return trunc_; }

 private:
  struct Cache;
  double radius_, norm_;
  double trunc_ = 0;
  std::shared_ptr<Cache> cache_;
};

const DressingBump& dressing_bump(const DressingParams& p);

CVec3 evaluate(const DressingParams& p, ProfileKind kind, const Vec3& k);

// the three pieces of v^_{P,T}: v^_P, the bracket term and the exp(-i(|k|-w.k)T) term
struct ThreeTerms {
  CVec3 vhat, term2, term3;
  CVec3 total;  // evaluated by the stable closed form, not by summing
};
ThreeTerms v_hat_T_terms(const DressingParams& p, double T, const Vec3& k);

// brute force: nested adaptive quadrature of the double time integral
CVec3 v_hat_T_direct(const DressingParams& p, double T, const Vec3& k, double tol = 1e-11);

photon::PhotonWaveFunction profile_wavefunction(const DressingParams& p, ProfileKind kind);
// which = 2: bracket term, which = 3: the last term of the closed form
photon::PhotonWaveFunction term_wavefunction(const DressingParams& p, double T, int which);

// A(s) = 2 pi s^2 int_{-1}^{1} (1-u^2)/(1-s u)^2 du
double angular_factor(double speed);
// int dOmega |P_tr(w/(1-khat.w) - w'/(1-khat.w'))|^2 by a product rule
double pairwise_angular_integral(const Vec3& w, const Vec3& wp, int n = 96);

double shell_norm_squared(const DressingParams& p, double sigma_lo, const quad::QuadratureSpec& q);
double shell_norm_squared(const DressingParams& p, double sigma_lo, const quad::QuadratureSpec& q,
                          double* error);
double pairwise_shell_norm_squared(const DressingParams& p, const Vec3& w, const Vec3& wp,
                                   double sigma_lo, const quad::QuadratureSpec& q, double* error = nullptr);

struct SlopeFit {
  double slope = 0, intercept = 0;
  std::vector<double> sigma, value;
  std::vector<double> error;  // per point, when computed here
};
// least-squares slope of the norm against ln(1/sigma_lo)
SlopeFit pairwise_divergence_slope(const DressingParams& p, const Vec3& w, const Vec3& wp,
                                   const std::vector<double>& sigma_lo,
                                   const quad::QuadratureSpec& q);
SlopeFit fit_log_slope(const std::vector<double>& sigma, const std::vector<double>& value);

double difference_norm_squared(const DressingParams& p, double sigma_probe,
                               const quad::QuadratureSpec& q, double* error = nullptr);

}  // namespace irlc::profiles
