#include "irlc/quadrature.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include "irlc/errors.hpp"

namespace irlc::quad {

namespace {

GaussRule build_gauss(int n) {
  GaussRule g;
  g.x.resize(n);
  g.w.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1;
      dp = n * (x * p1 - p0) / (x * x - 1);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // recompute the derivative at the converged node
    double p0 = 1, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n == 1 ? 1.0 : n * (x * p1 - p0) / (x * x - 1);
    const double w = 2 / ((1 - x * x) * dp * dp);
    g.x[i] = -x;
    g.x[n - 1 - i] = x;
    g.w[i] = w;
    g.w[n - 1 - i] = w;
  }
  if (n % 2 == 1) g.x[n / 2] = 0;
  return g;
}

}  // namespace

const GaussRule& gauss_legendre(int n) {
  if (n < 1) throw InvalidParameter("Gauss-Legendre order must be >= 1");
  static std::mutex mu;
  static std::map<int, std::unique_ptr<GaussRule>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<GaussRule>(build_gauss(n));
  return *slot;
}

double integrate(const std::function<double(double)>& f, double a, double b, double rel_tol,
                 double* error) {
  double err = 0;
  const double v = boost::math::quadrature::gauss_kronrod<double, 21>::integrate(f, a, b, 12, rel_tol, &err);
  if (error) *error = err;
  return v;
}

cplx integrate_complex(const std::function<cplx(double)>& f, double a, double b, double rel_tol,
               double* error) {
  double err = 0;
  const cplx v = boost::math::quadrature::gauss_kronrod<double, 21>::integrate(f, a, b, 12, rel_tol, &err);
  if (error) *error = err;
  return v;
}

void QuadratureSpec::validate() const {
  if (!(radial.r_min > 0)) throw InvalidParameter("quadrature: r_min must be > 0");
  if (radial.r_max < 0) throw InvalidParameter("quadrature: r_max must be >= 0");
  if (radial.panels_per_decade < 1) throw InvalidParameter("quadrature: panels_per_decade must be >= 1");
  if (radial.gauss_order < 4) throw InvalidParameter("quadrature: gauss_order must be >= 4");
  if (!(radial.max_panel > 0)) throw InvalidParameter("quadrature: max_panel must be > 0");
  if (!(radial.knee > 0)) throw InvalidParameter("quadrature: knee must be > 0");
  if (!(radial.tail_tolerance > 0)) throw InvalidParameter("quadrature: tail_tolerance must be > 0");
  if (angular.polar_nodes < 2 || angular.azimuthal_nodes < 3)
    throw InvalidParameter("quadrature: need >= 2 polar and >= 3 azimuthal nodes");
  if (oscillation.enabled && oscillation.nodes_per_wavelength < 6)
    throw InvalidParameter("quadrature: nodes_per_wavelength must be >= 6");
  if (tolerance.absolute < 0 || tolerance.relative < 0 || tolerance.max_refinements < 0)
    throw InvalidParameter("quadrature: tolerances must be non-negative");
  if (lower_cutoff < 0 || !(upper_cutoff > lower_cutoff))
    throw InvalidParameter("quadrature: need 0 <= lower_cutoff < upper_cutoff");
}

RadialNodes radial_nodes(const QuadratureSpec& q, const MeshRequest& m, int order, int split) {
  const double lo = m.lo, hi = m.hi;
  if (!(hi > lo) || !(lo > 0)) throw InvalidParameter("radial mesh needs 0 < lo < hi");
  std::vector<double> edges{lo};
  const double knee = std::min(q.radial.knee, hi);
  if (knee > lo) {
    const double ratio = std::pow(10.0, 1.0 / q.radial.panels_per_decade);
    const int n = static_cast<int>(std::ceil(std::log(knee / lo) / std::log(ratio) - 1e-9));
    const double step = std::pow(knee / lo, 1.0 / std::max(n, 1));
    for (int i = 1; i < n; ++i) edges.push_back(lo * std::pow(step, i));
    edges.push_back(knee);
  }
  if (hi > edges.back()) {
    const double start = edges.back();
    const int n = static_cast<int>(std::ceil((hi - start) / q.radial.max_panel - 1e-9));
    for (int i = 1; i < n; ++i) edges.push_back(start + (hi - start) * i / n);
    edges.push_back(hi);
  }
  for (double b : m.breaks)
    if (b > lo && b < hi) edges.push_back(b);
  std::sort(edges.begin(), edges.end());
  std::vector<double> uniq;
  for (double e : edges)
    if (uniq.empty() || e - uniq.back() > 1e-13 * std::max(1.0, e)) uniq.push_back(e);
  if (uniq.back() < hi) uniq.back() = hi;

  const GaussRule& g = gauss_legendre(order);
  // subpanel length so that each Gauss panel of the configured order covers a fixed number of
  // wavelengths; the reduced-order estimate rule reuses the same panels
  const double per_panel = q.radial.gauss_order / q.oscillation.nodes_per_wavelength;
  RadialNodes out;
  for (std::size_t p = 0; p + 1 < uniq.size(); ++p) {
    const double a = uniq[p], b = uniq[p + 1];
    int sub = 1;
    if (q.oscillation.enabled && m.rate > 0) {
      const double waves = (b - a) * m.rate / (2 * std::numbers::pi);
      sub = std::max(1, static_cast<int>(std::ceil(waves / per_panel)));
    }
    sub *= split;
    const double hw = 0.5 * (b - a) / sub;
    for (int s = 0; s < sub; ++s) {
      const double mid = a + (2 * s + 1) * hw;
      for (int i = 0; i < order; ++i) {
        out.r.push_back(mid + hw * g.x[i]);
        out.w.push_back(hw * g.w[i]);
      }
    }
  }
  return out;
}

DirectionSet sphere_rule(int n_theta, int n_phi) {
  const GaussRule& g = gauss_legendre(n_theta);
  DirectionSet d;
  d.dirs.reserve(static_cast<std::size_t>(n_theta) * n_phi);
  const double dphi = 2 * std::numbers::pi / n_phi;
  for (int i = 0; i < n_theta; ++i) {
    const double c = g.x[i];
    const double s = std::sqrt((1 - c) * (1 + c));
    for (int j = 0; j < n_phi; ++j) {
      const double phi = (j + 0.5) * dphi;
      d.dirs.push_back({s * std::cos(phi), s * std::sin(phi), c});
      d.weights.push_back(g.w[i] * dphi);
    }
  }
  return d;
}

void KahanSum::add(double v) {
  const double t = s + v;
  if (std::abs(s) >= std::abs(v))
    c += (s - t) + v;
  else
    c += (v - t) + s;
  s = t;
}

}  // namespace irlc::quad
