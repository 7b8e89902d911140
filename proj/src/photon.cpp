#include "irlc/photon.hpp"

#include <algorithm>
#include <cmath>

#include "irlc/errors.hpp"

namespace irlc::photon {

Polarisation polarisation(const Vec3& khat) {
  const double rho2 = khat.x * khat.x + khat.y * khat.y;
  if (!(rho2 > axis_tolerance * axis_tolerance))
    throw AxisSingularity("polarisation frame undefined on the k3 axis");
  const double rho = std::sqrt(rho2);
  Polarisation p;
  p.plus = {khat.y / rho, -khat.x / rho, 0};
  p.minus = cross(khat, p.plus);
  return p;
}

CVec3 transverse_project(const Vec3& khat, const CVec3& u) {
  const cplx a = dot(khat, u);
  return {u.x - a * khat.x, u.y - a * khat.y, u.z - a * khat.z};
}

Vec3 transverse_project(const Vec3& khat, const Vec3& u) { return u - dot(khat, u) * khat; }

CVec3 transverse_project_frame(const Vec3& khat, const CVec3& u) {
  const Polarisation p = polarisation(khat);
  const cplx ap = dot(p.plus, u), am = dot(p.minus, u);
  return CVec3(p.plus) * ap + CVec3(p.minus) * am;
}

void FieldBatch::resize(std::size_t n) {
  n_ = n;
  for (int c = 0; c < 3; ++c) {
    re_[c].assign(n, 0.0);
    im_[c].assign(n, 0.0);
  }
}

void FieldBatch::zero() {
  for (int c = 0; c < 3; ++c) {
    std::fill(re_[c].begin(), re_[c].end(), 0.0);
    std::fill(im_[c].begin(), im_[c].end(), 0.0);
  }
}

void FieldBatch::set(std::size_t j, const CVec3& v) {
  for (int c = 0; c < 3; ++c) {
    re_[c][j] = v[c].real();
    im_[c][j] = v[c].imag();
  }
}

CVec3 FieldBatch::get(std::size_t j) const {
  return {{re_[0][j], im_[0][j]}, {re_[1][j], im_[1][j]}, {re_[2][j], im_[2][j]}};
}

void FieldBatch::add(std::size_t j, const CVec3& v) {
  for (int c = 0; c < 3; ++c) {
    re_[c][j] += v[c].real();
    im_[c][j] += v[c].imag();
  }
}

void FieldBatch::axpy(cplx a, const FieldBatch& x) {
  const double ar = a.real(), ai = a.imag();
  for (int c = 0; c < 3; ++c)
    for (std::size_t j = 0; j < n_; ++j) {
      const double xr = x.re_[c][j], xi = x.im_[c][j];
      re_[c][j] += ar * xr - ai * xi;
      im_[c][j] += ar * xi + ai * xr;
    }
}

void FieldBatch::scale(cplx a) {
  const double ar = a.real(), ai = a.imag();
  for (int c = 0; c < 3; ++c)
    for (std::size_t j = 0; j < n_; ++j) {
      const double xr = re_[c][j], xi = im_[c][j];
      re_[c][j] = ar * xr - ai * xi;
      im_[c][j] = ar * xi + ai * xr;
    }
}

kernels::CVecSoA FieldBatch::soa() const {
  return {{re_[0].data(), re_[1].data(), re_[2].data()},
          {im_[0].data(), im_[1].data(), im_[2].data()}};
}

PhotonWaveFunction::PhotonWaveFunction()
    : PhotonWaveFunction(
          [](double) -> ShellEval {
            return [](std::span<const Vec3>, FieldBatch& out) { out.zero(); };
          },
          WaveMeta{.small_k_exponent = std::numeric_limits<double>::infinity(),
                   .truncation_radius = 0.0,
                   .radial_rate = 0,
                   .anchor = {},
                   .extent = 0,
                   .off_axis = 0,
                   .feature = std::numeric_limits<double>::infinity(),
                   .breakpoints = {}}) {}

PhotonWaveFunction::PhotonWaveFunction(ShellFactory factory, WaveMeta meta)
    : factory_(std::make_shared<const ShellFactory>(std::move(factory))), meta_(std::move(meta)) {}

CVec3 PhotonWaveFunction::operator()(const Vec3& k) const {
  const double K = norm(k);
  const Vec3 khat = K > 0 ? k / K : Vec3{0, 0, 1};
  FieldBatch out(1);
  shell(K)(std::span<const Vec3>(&khat, 1), out);
  return out.get(0);
}

PhotonWaveFunction PhotonWaveFunction::scaled(cplx a) const {
  auto inner = factory_;
  return {[inner, a](double r) -> ShellEval {
            ShellEval s = (*inner)(r);
            return [s, a](std::span<const Vec3> dirs, FieldBatch& out) {
              s(dirs, out);
              out.scale(a);
            };
          },
          meta_};
}

PhotonWaveFunction PhotonWaveFunction::translated(double a0, const Vec3& a) const {
  auto inner = factory_;
  WaveMeta m = meta_;
  m.radial_rate += std::abs(a0) + norm(a);
  m.anchor = m.anchor + a;
  return {[inner, a0, a](double r) -> ShellEval {
            ShellEval s = (*inner)(r);
            return [s, a0, a, r](std::span<const Vec3> dirs, FieldBatch& out) {
              s(dirs, out);
              for (std::size_t j = 0; j < dirs.size(); ++j) {
                const double ph = r * (a0 - dot(dirs[j], a));
                const cplx e(std::cos(ph), std::sin(ph));
                for (int c = 0; c < 3; ++c) {
                  const cplx v = cplx(out.re(c)[j], out.im(c)[j]) * e;
                  out.re(c)[j] = v.real();
                  out.im(c)[j] = v.imag();
                }
              }
            };
          },
          m};
}

PhotonWaveFunction PhotonWaveFunction::with_meta(WaveMeta meta) const {
  PhotonWaveFunction f = *this;
  f.meta_ = std::move(meta);
  return f;
}

bool PhotonWaveFunction::square_integrable() const {
  // |f|^2 |k|^2 integrable at 0 needs 2p + 2 > -1
  return meta_.small_k_exponent > -1.5 && std::isfinite(meta_.truncation_radius);
}

WaveMeta merge_meta(const WaveMeta& a, const WaveMeta& b) {
  WaveMeta m;
  m.small_k_exponent = std::min(a.small_k_exponent, b.small_k_exponent);
  m.truncation_radius = std::max(a.truncation_radius, b.truncation_radius);
  m.radial_rate = std::max(a.radial_rate, b.radial_rate);
  const Vec3 d = b.anchor - a.anchor;
  m.anchor = a.anchor;
  m.extent = std::max(a.extent, b.extent + norm(d));
  m.off_axis = std::max(a.off_axis, b.off_axis + std::hypot(d.x, d.y));
  m.feature = std::min(a.feature, b.feature);
  m.breakpoints = a.breakpoints;
  m.breakpoints.insert(m.breakpoints.end(), b.breakpoints.begin(), b.breakpoints.end());
  std::sort(m.breakpoints.begin(), m.breakpoints.end());
  m.breakpoints.erase(std::unique(m.breakpoints.begin(), m.breakpoints.end()), m.breakpoints.end());
  return m;
}

namespace {

PhotonWaveFunction combine(const PhotonWaveFunction& a, const PhotonWaveFunction& b, double sign) {
  return {[a, b, sign](double r) -> ShellEval {
            ShellEval sa = a.shell(r), sb = b.shell(r);
            return [sa, sb, sign](std::span<const Vec3> dirs, FieldBatch& out) {
              sa(dirs, out);
              FieldBatch tmp(dirs.size());
              sb(dirs, tmp);
              out.axpy(sign, tmp);
            };
          },
          merge_meta(a.meta(), b.meta())};
}

}  // namespace

PhotonWaveFunction operator+(const PhotonWaveFunction& a, const PhotonWaveFunction& b) {
  return combine(a, b, 1.0);
}

PhotonWaveFunction operator-(const PhotonWaveFunction& a, const PhotonWaveFunction& b) {
  return combine(a, b, -1.0);
}

std::pair<cplx, cplx> helicity_components(const PhotonWaveFunction& f, const Vec3& k) {
  const double K = norm(k);
  if (K == 0) throw PointSingularity("helicity components undefined at k = 0");
  const Polarisation p = polarisation(k / K);
  const CVec3 v = f(k);
  return {dot(p.plus, v), dot(p.minus, v)};
}

}  // namespace irlc::photon
