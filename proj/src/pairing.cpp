#include "irlc/pairing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "irlc/errors.hpp"
#include "irlc/kernels.hpp"

namespace irlc::pairing {

namespace {

using photon::FieldBatch;
using photon::PhotonWaveFunction;

struct Level {
  int order, split, n_theta, n_phi;
};

// peak-relative tail cut for the product integrand K^2 |conj(v).f|
double scan_r_max(std::span<const PhotonWaveFunction> vs, const PhotonWaveFunction& f, double lo,
                  double cap, double tail) {
  const quad::DirectionSet d = quad::sphere_rule(3, 5);
  const std::size_t nd = d.dirs.size();
  FieldBatch fb(nd), vb(nd);
  std::vector<double> ks, ms;
  double peak = 0;
  const double start = std::max(lo, 1e-3);
  auto probe = [&](double K) {
    f.shell(K)(d.dirs, fb);
    double m = 0;
    for (const auto& v : vs) {
      v.shell(K)(d.dirs, vb);
      for (std::size_t j = 0; j < nd; ++j) m = std::max(m, std::abs(cdot(vb.get(j), fb.get(j))));
    }
    ks.push_back(K);
    ms.push_back(m * K * K);
    peak = std::max(peak, ms.back());
  };
  for (double K = start; K < cap; K = K * 1.05 + 0.02) probe(K);
  probe(cap);
  if (peak == 0) return std::min(cap, std::max(2 * start, 1.0));
  for (std::size_t j = ms.size(); j-- > 0;)
    if (ms[j] > tail * peak) return std::min(cap, j + 1 < ks.size() ? ks[j + 1] : ks.back());
  return ks.front();
}

int clamp_nodes(double n, int cap) { return static_cast<int>(std::min<double>(std::ceil(n), cap)); }

struct Sums {
  std::vector<cplx> value;
  std::vector<double> magnitude;
  std::size_t nodes = 0;
};

Sums integrate(std::span<const PhotonWaveFunction> vs, const PhotonWaveFunction& f, const QuadratureSpec& q,
               const Plan& plan, const Level& lv) {
  quad::MeshRequest m{plan.r_lo, plan.r_hi, plan.rate, plan.breaks};
  const quad::RadialNodes rn = quad::radial_nodes(q, m, lv.order, lv.split);
  const quad::DirectionSet d = quad::sphere_rule(lv.n_theta, lv.n_phi);
  const std::size_t nd = d.dirs.size(), nv = vs.size();
  FieldBatch fb(nd), vb(nd);
  std::vector<quad::KahanSum> re(nv), im(nv), ab(nv);
  for (std::size_t i = 0; i < rn.r.size(); ++i) {
    const double K = rn.r[i];
    const double wk = rn.w[i] * K * K;
    f.shell(K)(d.dirs, fb);
    for (std::size_t a = 0; a < nv; ++a) {
      vs[a].shell(K)(d.dirs, vb);
      const kernels::PairSums s = kernels::weighted_cdot(d.weights.data(), vb.soa(), fb.soa(), nd);
      re[a].add(wk * s.re);
      im[a].add(wk * s.im);
      ab[a].add(wk * s.abs);
    }
  }
  Sums out;
  for (std::size_t a = 0; a < nv; ++a) {
    out.value.emplace_back(re[a].value(), im[a].value());
    out.magnitude.push_back(ab[a].value());
  }
  out.nodes = rn.r.size() * nd;
  return out;
}

}  // namespace

Plan make_plan(std::span<const PhotonWaveFunction> vs, const PhotonWaveFunction& f, const QuadratureSpec& q) {
  q.validate();
  if (vs.empty()) throw InvalidParameter("pairing needs at least one first slot");
  Plan p;
  p.r_lo = q.lower_cutoff > 0 ? q.lower_cutoff : q.radial.r_min;
  double trunc = 0, rate = 0, extent = 0, off = 0, feature = f.meta().feature;
  const Vec3 fa = f.meta().anchor;
  for (const auto& v : vs) {
    if (q.lower_cutoff == 0 && !(v.meta().small_k_exponent + f.meta().small_k_exponent > -3)) {
      std::ostringstream os;
      os << "pairing not absolutely integrable at k = 0 (exponents " << v.meta().small_k_exponent << " + "
         << f.meta().small_k_exponent << " <= -3)";
      throw NonIntegrablePairing(os.str());
    }
    trunc = std::max(trunc, std::min(v.meta().truncation_radius, f.meta().truncation_radius));
    rate = std::max(rate, v.meta().radial_rate);
    const Vec3 d = v.meta().anchor - fa;
    extent = std::max(extent, v.meta().extent + norm(d));
    off = std::max(off, v.meta().off_axis + std::hypot(d.x, d.y));
    feature = std::min(feature, v.meta().feature);
    p.breaks.insert(p.breaks.end(), v.meta().breakpoints.begin(), v.meta().breakpoints.end());
  }
  p.breaks.insert(p.breaks.end(), f.meta().breakpoints.begin(), f.meta().breakpoints.end());
  p.rate = rate + f.meta().radial_rate + q.oscillation.frequency;

  double cap = std::min(trunc, q.upper_cutoff);
  if (!std::isfinite(cap)) cap = 1e4;
  if (q.radial.r_max > 0) {
    p.r_hi = std::min(q.radial.r_max, q.upper_cutoff);
  } else if (std::isfinite(q.upper_cutoff) && q.upper_cutoff <= trunc) {
    p.r_hi = q.upper_cutoff;
  } else {
    p.r_hi = scan_r_max(vs, f, p.r_lo, cap, q.radial.tail_tolerance);
  }
  if (!(p.r_hi > p.r_lo)) p.r_hi = p.r_lo * 2;

  const double X = extent + f.meta().extent, O = off + f.meta().off_axis;
  const double per = std::isfinite(feature) && feature > 0 ? 4 * q.angular.nodes_per_feature / feature : 0;
  p.n_theta = clamp_nodes(q.angular.polar_nodes + per * X, q.angular.max_nodes);
  p.n_phi = clamp_nodes(q.angular.azimuthal_nodes + per * O, q.angular.max_nodes);
  return p;
}

std::vector<PairingResult> pair_many(std::span<const PhotonWaveFunction> vs, const PhotonWaveFunction& f,
                                     const QuadratureSpec& q) {
  const Plan plan = make_plan(vs, f, q);
  const int p = q.radial.gauss_order;
  const Level base{p, 1, plan.n_theta, plan.n_phi};
  const Level reduced{p - p / 4, 1, std::max(2, plan.n_theta - plan.n_theta / 4),
                      std::max(3, plan.n_phi - plan.n_phi / 4)};

  Sums fine = integrate(vs, f, q, plan, base);
  Sums coarse = integrate(vs, f, q, plan, reduced);
  std::size_t nodes = fine.nodes + coarse.nodes;
  int level = 0;
  auto errors = [&](const Sums& a, const Sums& b) {
    std::vector<double> e;
    for (std::size_t i = 0; i < a.value.size(); ++i) e.push_back(std::abs(a.value[i] - b.value[i]));
    return e;
  };
  std::vector<double> err = errors(fine, coarse);
  auto worst = [&]() {
    double r = 0;
    for (std::size_t i = 0; i < err.size(); ++i)
      r = std::max(r, err[i] / std::max(q.tolerance.absolute, q.tolerance.relative * fine.magnitude[i]));
    return r;
  };
  if (q.tolerance.adaptive) {
    while (worst() > 1 && level < q.tolerance.max_refinements) {
      ++level;
      const int s = 1 << level;
      Sums next = integrate(vs, f, q, plan, {p, s, plan.n_theta * s, plan.n_phi * s});
      err = errors(next, fine);
      nodes += next.nodes;
      fine = std::move(next);
    }
    if (worst() > 1) {
      std::ostringstream os;
      os << "pairing error estimate above target after " << level << " refinements (estimate/target = "
         << worst() << ")";
      throw ToleranceNotMet(os.str());
    }
  }
  std::vector<PairingResult> out;
  for (std::size_t i = 0; i < vs.size(); ++i)
    out.push_back({fine.value[i], err[i], nodes, fine.magnitude[i], level});
  return out;
}

PairingResult pair(const PhotonWaveFunction& v, const PhotonWaveFunction& f, const QuadratureSpec& q) {
  return pair_many(std::span<const PhotonWaveFunction>(&v, 1), f, q).front();
}

}  // namespace irlc::pairing

namespace irlc::photon {

cplx inner_product(const PhotonWaveFunction& f, const PhotonWaveFunction& g, const quad::QuadratureSpec& q) {
  return pairing::pair(f, g, q).value;
}

double symplectic(const PhotonWaveFunction& f, const PhotonWaveFunction& g, const quad::QuadratureSpec& q) {
  return inner_product(f, g, q).imag();
}

}  // namespace irlc::photon
