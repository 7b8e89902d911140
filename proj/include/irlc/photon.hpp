#pragma once

#include <array>
#include <functional>
#include <limits>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "irlc/kernels.hpp"
#include "irlc/quadrature.hpp"
#include "irlc/vec3.hpp"

namespace irlc::photon {

constexpr double axis_tolerance = 1e-12;

struct Polarisation {
  Vec3 plus;
  Vec3 minus;
};

Polarisation polarisation(const Vec3& khat);

// frame-free P_tr u = u - (khat.u) khat; valid everywhere including the axis
CVec3 transverse_project(const Vec3& khat, const CVec3& u);
Vec3 transverse_project(const Vec3& khat, const Vec3& u);
// sum over the printed polarisation frame; AxisSingularity on the axis
CVec3 transverse_project_frame(const Vec3& khat, const CVec3& u);

// values of a wave function on a batch of directions at one radius, stored as
// structure of arrays for the pairing kernels
class FieldBatch {
 public:
  FieldBatch() = default;
  explicit FieldBatch(std::size_t n) { resize(n); }

  void resize(std::size_t n);
  void zero();
  std::size_t size() const { return n_; }

  void set(std::size_t j, const CVec3& v);
  CVec3 get(std::size_t j) const;
  void add(std::size_t j, const CVec3& v);
  void axpy(cplx a, const FieldBatch& x);
  void scale(cplx a);

  double* re(int c) { return re_[c].data(); }
  double* im(int c) { return im_[c].data(); }
  kernels::CVecSoA soa() const;

 private:
  std::size_t n_ = 0;
  std::array<std::vector<double>, 3> re_, im_;
};

// evaluates the function on the shell |k| = radius at the given unit directions
using ShellEval = std::function<void(std::span<const Vec3> dirs, FieldBatch& out)>;
using ShellFactory = std::function<ShellEval(double radius)>;

struct WaveMeta {
  double small_k_exponent = 0.5;  // |f(k)| = O(|k|^p) as k -> 0
  double truncation_radius = std::numeric_limits<double>::infinity();
  double radial_rate = 0;  // bound on the phase growth rate along rays
  Vec3 anchor;             // phase center; extent and off_axis are measured from here
  double extent = 0;       // spatial size of the angular phase structure
  double off_axis = 0;     // part of `extent` away from the e3 axis
  double feature = std::numeric_limits<double>::infinity();  // smallest smooth length scale
  std::vector<double> breakpoints;  // radii where the function is not smooth
};

class PhotonWaveFunction {
 public:
  PhotonWaveFunction();  // the zero function
  PhotonWaveFunction(ShellFactory factory, WaveMeta meta);

  CVec3 operator()(const Vec3& k) const;
  ShellEval shell(double radius) const { return (*factory_)(radius); }
  const WaveMeta& meta() const { return meta_; }

  PhotonWaveFunction scaled(cplx a) const;
  // multiply by exp(i(|k| a0 - k.a)), i.e. translate the underlying field by (a0, a)
  PhotonWaveFunction translated(double a0, const Vec3& a) const;
  PhotonWaveFunction with_meta(WaveMeta meta) const;

  bool square_integrable() const;

  friend PhotonWaveFunction operator+(const PhotonWaveFunction& a, const PhotonWaveFunction& b);
  friend PhotonWaveFunction operator-(const PhotonWaveFunction& a, const PhotonWaveFunction& b);

 private:
  std::shared_ptr<const ShellFactory> factory_;
  WaveMeta meta_;
};

WaveMeta merge_meta(const WaveMeta& a, const WaveMeta& b);

std::pair<cplx, cplx> helicity_components(const PhotonWaveFunction& f, const Vec3& k);

// pairings by the quadrature engine (antilinear in the first slot)
cplx inner_product(const PhotonWaveFunction& f, const PhotonWaveFunction& g,
                   const quad::QuadratureSpec& q);
double symplectic(const PhotonWaveFunction& f, const PhotonWaveFunction& g,
                  const quad::QuadratureSpec& q);

}  // namespace irlc::photon
