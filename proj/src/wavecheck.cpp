#include "irlc/wavecheck.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include "irlc/errors.hpp"
#include "irlc/geometry.hpp"
#include "irlc/kernels.hpp"
#include "irlc/pairing.hpp"

namespace irlc::wavecheck {

namespace {

constexpr double pi = std::numbers::pi;

// Radial functions are sums a_j sin(k_j rho) / rho with k_j = j dk, j >= 1: the uniform rule
// for int K^2 sinc(K rho) c(K) dK. For an integrand whose transform in K is supported in
// [-S, S] the rule is exact once dk < 2 pi / S; we take dk = pi / S.

// the grid runs until |amp(K)| stays below 1e-15 of its peak over `window` nodes. Columns that
// carry extra powers of K (dw of the cosine kind) keep a truncation error near 1e-7; weighting the
// stop by K^3 never terminates because the transform has a quadrature noise floor near 1e-18
template <class F>
std::vector<double> scan_amplitudes(double dk, F amp, std::size_t window) {
  std::vector<double> a;
  double peak = 0;
  std::size_t quiet = 0;
  const std::size_t limit = 4'000'000;
  for (std::size_t j = 1;; ++j) {
    const double v = amp(j * dk);
    a.push_back(v);
    peak = std::max(peak, std::abs(v));
    quiet = std::abs(v) <= 1e-15 * peak ? quiet + 1 : 0;
    if (quiet >= window && a.size() > 2 * window) break;
    if (j >= limit) throw ResolutionFailure("radial spectrum did not decay within the node limit");
  }
  a.resize(a.size() - window + 1);
  return a;
}

std::size_t window_for(double dk, double feature) {
  // a few periods of the slowest oscillation of the amplitude
  return std::max<std::size_t>(64, static_cast<std::size_t>(4 * pi / (feature * dk)));
}

// out[c][i] = sum_j cols[c][j] s_j(rho_i), s_j = sin(k_j rho)/rho or k_j at rho = 0
void radial_sums(double dk, std::size_t n, const std::vector<const double*>& cols, std::span<const double> rho,
                 std::vector<std::vector<double>>& out) {
  out.assign(cols.size(), std::vector<double>(rho.size()));
  std::vector<double> row(n);
  for (std::size_t i = 0; i < rho.size(); ++i) {
    const double r = rho[i];
    if (r == 0) {
      for (std::size_t j = 0; j < n; ++j) row[j] = (j + 1) * dk;
    } else {
      // rotation recurrence, reseeded every 32 steps
      const double th = dk * r, cd = std::cos(th), sd = std::sin(th);
      double c = 0, s = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j % 32 == 0) {
          c = std::cos((j + 1) * th);
          s = std::sin((j + 1) * th);
        } else {
          const double cn = c * cd - s * sd;
          s = s * cd + c * sd;
          c = cn;
        }
        row[j] = s / r;
      }
    }
    for (std::size_t c = 0; c < cols.size(); ++c) out[c][i] = kernels::weighted_dot(row.data(), cols[c], n);
  }
}

// (2A/pi) dk K rst(R, K) on a shared grid, memoized by (R, dk)
struct WaveSpectrum {
  double dk = 0;
  std::vector<double> k, a;
};

std::shared_ptr<const WaveSpectrum> wave_spectrum(double radius, double reach) {
  // quantize the step so nearby requests share a table
  const double S = std::exp2(std::ceil(std::log2(reach)));
  const double dk = pi / S;
  static std::mutex mu;
  static std::map<std::pair<double, double>, std::shared_ptr<const WaveSpectrum>> cache;
  {
    std::lock_guard lk(mu);
    if (auto it = cache.find({radius, dk}); it != cache.end()) return it->second;
  }
  auto sp = std::make_shared<WaveSpectrum>();
  sp->dk = dk;
  const auto amp = scan_amplitudes(dk, [&](double K) { return testfields::radial_shape_transform(radius, K); },
                                   window_for(dk, radius));
  for (std::size_t j = 0; j < amp.size(); ++j) {
    const double K = (j + 1) * dk;
    sp->k.push_back(K);
    sp->a.push_back(2 / pi * dk * K * amp[j]);
  }
  std::lock_guard lk(mu);
  return cache.emplace(std::pair{radius, dk}, sp).first->second;
}

// time factors of the two solution kinds
void time_columns(const WaveSolution& ws, const WaveSpectrum& sp, double t, std::vector<double>& w,
                  std::vector<double>& dw) {
  const std::size_t n = sp.k.size();
  w.resize(n);
  dw.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double K = sp.k[j], s = std::sin(K * t), c = std::cos(K * t), a = ws.amplitude * sp.a[j];
    if (ws.kind == WaveKind::sine) {
      w[j] = a * s / K;
      dw[j] = a * c;
    } else {
      w[j] = a * c;
      dw[j] = -a * K * s;
    }
  }
}

double bump(double s) { return std::abs(s) < 1 ? std::exp(-1 / (1 - s * s)) : 0; }
double bump_d1(double s) {
  if (std::abs(s) >= 1) return 0;
  const double q = 1 - s * s;
  return bump(s) * (-2 * s / (q * q));
}
double bump_d2(double s) {
  if (std::abs(s) >= 1) return 0;
  const double q = 1 - s * s, g = -2 * s / (q * q), gp = -2 / (q * q) - 8 * s * s / (q * q * q);
  return bump(s) * (g * g + gp);
}

void validate(const WaveSolution& ws) {
  if (!(ws.radius > 0)) throw InvalidParameter("wave: support radius must be > 0");
  if (!std::isfinite(ws.amplitude)) throw InvalidParameter("wave: amplitude must be finite");
}

}  // namespace

double WaveSolution::initial(const Vec3& x) const { return amplitude * bump(norm(x - center) / radius); }

WaveSolution make_wave(const Vec3& center, double radius, double amplitude, WaveKind kind) {
  WaveSolution ws{center, radius, amplitude, kind};
  validate(ws);
  return ws;
}

std::vector<WaveValue> wave_evaluate_radii(const WaveSolution& ws, double t, std::span<const double> rho) {
  validate(ws);
  double rmax = 0;
  for (double r : rho) {
    if (!(r >= 0)) throw InvalidParameter("wave: radii must be >= 0");
    rmax = std::max(rmax, r);
  }
  const auto sp = wave_spectrum(ws.radius, rmax + std::abs(t) + ws.radius);
  std::vector<double> cw, cd;
  time_columns(ws, *sp, t, cw, cd);
  std::vector<std::vector<double>> out;
  radial_sums(sp->dk, sp->k.size(), {cw.data(), cd.data()}, rho, out);
  std::vector<WaveValue> v(rho.size());
  for (std::size_t i = 0; i < rho.size(); ++i) v[i] = {out[0][i], out[1][i]};
  return v;
}

WaveValue wave_evaluate(const WaveSolution& ws, double t, const Vec3& x) {
  const double r = norm(x - ws.center);
  return wave_evaluate_radii(ws, t, std::span(&r, 1))[0];
}

WaveValue kirchhoff(const WaveSolution& ws, double t, double rho) {
  validate(ws);
  const double A = ws.amplitude, R = ws.radius;
  auto f = [&](double s) { return A * bump(s / R); };
  auto f1 = [&](double s) { return A / R * bump_d1(s / R); };
  auto f2 = [&](double s) { return A / (R * R) * bump_d2(s / R); };
  auto sf = [&](double s) { return s * f(std::abs(s)); };
  auto sf1 = [&](double s) { return f(std::abs(s)) + std::abs(s) * f1(std::abs(s)); };  // d/ds of s f(|s|)
  // G(t, rho) = rho g(t, rho) = (1/2) int_{rho-t}^{rho+t} s f(|s|) ds for the sine kind
  auto G = [&](double a, double b) {
    if (a > b) std::swap(a, b);
    double lo = std::max(a, -R), hi = std::min(b, R);
    if (!(hi > lo)) return 0.0;
    double sum = 0;
    std::vector<double> cuts{lo};
    if (lo < 0 && hi > 0) cuts.push_back(0);
    cuts.push_back(hi);
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) sum += quad::integrate(sf, cuts[i], cuts[i + 1], 1e-13);
    return sum;
  };
  const double sign = t < 0 ? -1 : 1;
  const double T = std::abs(t);  // g is odd in t for the sine kind, w even for the cosine kind
  if (rho == 0) {
    if (ws.kind == WaveKind::sine) return {sign * T * f(T), f(T) + T * f1(T)};
    return {f(T) + T * f1(T), sign * (2 * f1(T) + T * f2(T))};
  }
  if (ws.kind == WaveKind::sine) {
    const double g = 0.5 * G(rho - T, rho + T) / rho;
    const double dg = 0.5 * (sf(rho + T) + sf(rho - T)) / rho;
    return {sign * g, dg};
  }
  const double w = 0.5 * (sf(rho + T) + sf(rho - T)) / rho;
  const double dw = 0.5 * (sf1(rho + T) - sf1(rho - T)) / rho;
  return {w, sign * dw};
}

RadialGrid make_radial_grid(double extent, double spacing) {
  if (!(extent > 0) || !(spacing > 0)) throw InvalidParameter("grid extent and spacing must be > 0");
  RadialGrid g;
  g.h = spacing;
  g.half = static_cast<int>(std::lround(0.5 * extent / spacing));
  const long M = g.half;
  std::vector<double> counts(3 * M * M + 1, 0.0);
  for (long i = 0; i <= M; ++i)
    for (long j = 0; j <= M; ++j)
      for (long k = 0; k <= M; ++k)
        counts[i * i + j * j + k * k] += (i ? 2 : 1) * (j ? 2 : 1) * (k ? 2 : 1);
  for (std::size_t n = 0; n < counts.size(); ++n)
    if (counts[n] > 0) {
      g.rho.push_back(spacing * std::sqrt(static_cast<double>(n)));
      g.count.push_back(counts[n]);
    }
  return g;
}

InitialCheck initial_condition_check(const WaveSolution& ws, std::span<const Vec3> points, double dt) {
  if (!(dt > 0)) throw InvalidParameter("dt must be > 0");
  InitialCheck c;
  std::vector<double> rho;
  for (const auto& x : points) rho.push_back(norm(x - ws.center));
  const auto v0 = wave_evaluate_radii(ws, 0, rho);
  auto fd = [&](double h) {
    const auto p = wave_evaluate_radii(ws, h, rho), m = wave_evaluate_radii(ws, -h, rho);
    double e = 0;
    for (std::size_t i = 0; i < rho.size(); ++i) {
      const double d = (p[i].w - m[i].w) / (2 * h);
      const double want = ws.kind == WaveKind::sine ? ws.initial(points[i]) : 0.0;
      e = std::max(e, std::abs(d - want));
    }
    return e;
  };
  for (std::size_t i = 0; i < rho.size(); ++i) {
    const double want = ws.kind == WaveKind::sine ? 0.0 : ws.initial(points[i]);
    c.value_at_zero = std::max(c.value_at_zero, std::abs(v0[i].w - want));
  }
  c.fd_error = fd(dt);
  c.fd_error_half = fd(dt / 2);
  return c;
}

namespace {

struct Resolved {
  double L, h;
};

Resolved resolve(const GridSpec& g, double r, double t_max) {
  Resolved o{g.extent > 0 ? g.extent : 4 * (r + t_max), g.spacing > 0 ? g.spacing : r / 16};
  if (2 * r / o.h < 16) throw ResolutionFailure("grid spacing resolves the bump with fewer than 16 points");
  if (0.5 * o.L < r + t_max) throw ResolutionFailure("grid does not contain the solution support at t_max");
  return o;
}

double max_abs(const std::vector<double>& ts) {
  double m = 0;
  for (double t : ts) m = std::max(m, std::abs(t));
  return m;
}

}  // namespace

std::vector<MassRow> mass_outside(const WaveSolution& ws, const std::vector<double>& t_list, const GridSpec& gs) {
  validate(ws);
  const double tm = max_abs(t_list);
  const auto res = resolve(gs, ws.radius, tm);
  const RadialGrid g = make_radial_grid(res.L, res.h);
  const double h3 = g.h * g.h * g.h;
  const auto sp = wave_spectrum(ws.radius, g.rho.back() + tm + ws.radius);
  std::vector<std::vector<double>> cols(2 * t_list.size());
  std::vector<const double*> ptr;
  for (std::size_t i = 0; i < t_list.size(); ++i) {
    time_columns(ws, *sp, t_list[i], cols[2 * i], cols[2 * i + 1]);
    ptr.push_back(cols[2 * i].data());
  }
  std::vector<std::vector<double>> out;
  radial_sums(sp->dk, sp->k.size(), ptr, g.rho, out);
  std::vector<MassRow> rows;
  for (std::size_t i = 0; i < t_list.size(); ++i) {
    MassRow m;
    m.t = t_list[i];
    const double edge = ws.radius + std::abs(m.t);
    for (std::size_t n = 0; n < g.rho.size(); ++n) {
      const double v = out[i][n] * out[i][n] * g.count[n] * h3;
      m.total += v;
      if (g.rho[n] > edge) m.outside += v;
    }
    rows.push_back(m);
  }
  return rows;
}

SymplecticTable symplectic_time_invariance(const WaveSolution& a, const WaveSolution& b,
                                           const std::vector<double>& t_list, const GridSpec& gs) {
  validate(a);
  validate(b);
  if (norm(a.center - b.center) > 1e-12) throw InvalidParameter("symplectic check needs solutions with a common center");
  if (t_list.empty()) throw InvalidParameter("symplectic check needs at least one time");
  const double r = std::max(a.radius, b.radius);
  const double tm = std::max(max_abs(t_list), 0.1);
  const double rmin = std::min(a.radius, b.radius);
  const double L = gs.extent > 0 ? gs.extent : 4 * (r + tm), h = gs.spacing > 0 ? gs.spacing : rmin / 16;
  resolve({L, h}, rmin, 0);  // the finer bump sets the resolution
  resolve({L, h}, r, tm);    // the wider one the containment
  const RadialGrid g = make_radial_grid(L, h);
  const double h3 = g.h * g.h * g.h;

  // smearing: unit-mass bump of halfwidth 0.1 on 8 Gauss nodes, weights renormalized to sum 1
  const auto& gl = quad::gauss_legendre(8);
  std::vector<double> times = t_list, alpha;
  double asum = 0;
  for (std::size_t i = 0; i < gl.x.size(); ++i) {
    times.push_back(0.1 * gl.x[i]);
    alpha.push_back(gl.w[i] * bump(gl.x[i]));
    asum += alpha.back();
  }
  for (auto& x : alpha) x /= asum;

  const double reach = g.rho.back() + tm + r;
  const auto sa = wave_spectrum(a.radius, reach), sb = wave_spectrum(b.radius, reach);
  if (sa->dk != sb->dk) throw Error("wave spectra with different steps");
  const std::size_t n = std::max(sa->k.size(), sb->k.size());
  std::vector<std::vector<double>> cols;
  std::vector<const double*> ptr;
  for (double t : times) {
    for (const auto* ws : {&a, &b}) {
      const auto& sp = ws == &a ? *sa : *sb;
      std::vector<double> w, dw;
      time_columns(*ws, sp, t, w, dw);
      w.resize(n, 0.0);
      dw.resize(n, 0.0);
      cols.push_back(std::move(w));
      cols.push_back(std::move(dw));
    }
  }
  for (const auto& c : cols) ptr.push_back(c.data());
  std::vector<std::vector<double>> out;
  radial_sums(sa->dk, n, ptr, g.rho, out);

  SymplecticTable tab;
  tab.h = g.h;
  tab.extent = 2 * g.half * g.h;
  std::vector<double> S(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) {
    const auto &w1 = out[4 * i], &d1 = out[4 * i + 1], &w2 = out[4 * i + 2], &d2 = out[4 * i + 3];
    quad::KahanSum s, sc;
    for (std::size_t m = 0; m < g.rho.size(); ++m) {
      s.add(g.count[m] * h3 * (w1[m] * d2[m] - d1[m] * w2[m]));
      sc.add(g.count[m] * h3 * (std::abs(w1[m] * d2[m]) + std::abs(d1[m] * w2[m])));
    }
    S[i] = s.value();
    if (i < t_list.size()) tab.rows.push_back({times[i], S[i], sc.value()});
  }
  // drift against the first listed time
  double scale = 0;
  for (const auto& row : tab.rows) {
    tab.max_drift = std::max(tab.max_drift, std::abs(row.S - tab.rows.front().S));
    scale = std::max(scale, row.scale);
  }
  tab.relative_drift = scale > 0 ? tab.max_drift / scale : 0;
  for (std::size_t i = 0; i < alpha.size(); ++i) tab.smeared += alpha[i] * S[t_list.size() + i];
  return tab;
}

SupportCheck bj_support_check(const testfields::TestFieldPair& f, double probe_radius) {
  if (!(probe_radius > 0)) throw InvalidParameter("probe radius must be > 0");
  if (f.terms.empty()) throw InvalidParameter("support check needs at least one term");
  const Vec3 c = f.support.center.x;
  const double r = f.support.radius;
  if (std::abs(f.support.center.t) > 1e-12)
    throw SupportPreconditionViolation("support check needs a double cone centered at t = 0");
  double Rmin = INFINITY, Rmax = 0, tmax = 0, feature = INFINITY;
  for (const auto& t : f.terms) {
    if (t.space.kind != testfields::SpaceKind::radial || norm(t.space.center - c) > 1e-12)
      throw SupportPreconditionViolation("support check needs radial terms centered on the support center");
    Rmin = std::min(Rmin, t.space.halfwidth);
    Rmax = std::max(Rmax, t.space.halfwidth);
    tmax = std::max(tmax, std::abs(t.time.center) + t.time.halfwidth);
    feature = std::min({feature, t.space.halfwidth, t.time.halfwidth});
  }
  const double rho_max = 2 * std::max(probe_radius, r) + r;
  const double S = std::exp2(std::ceil(std::log2(rho_max + Rmax + tmax)));
  const double dk = pi / S;
  const double sqrt2pi = std::sqrt(2 * pi);

  // Phi_t(rho) = (2 pi)^{-2} 4 pi int K^2 sinc(K rho) C_t(K) 4 pi rst(R_t, K) dK
  std::vector<std::vector<double>> coef;
  std::size_t n = 0;
  for (const auto& t : f.terms) {
    auto C = [&](double K) {
      const cplx a = testfields::fourier_transform_1d(t.time, K);
      return t.channel == testfields::Channel::magnetic ? sqrt2pi * a.real() : -sqrt2pi * a.imag() / K;
    };
    auto amp = [&](double K) { return C(K) * testfields::radial_shape_transform(t.space.halfwidth, K); };
    auto a = scan_amplitudes(dk, amp, window_for(dk, feature));
    for (std::size_t j = 0; j < a.size(); ++j) a[j] *= 4 * dk * (j + 1) * dk;
    n = std::max(n, a.size());
    coef.push_back(std::move(a));
  }
  for (auto& a : coef) a.resize(n, 0.0);

  // radial y-quadrature: Gauss panels with breaks at r and the probe radius
  std::vector<double> cuts{0, rho_max, r, probe_radius};
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  const auto& gl = quad::gauss_legendre(16);
  const double pw = Rmin / 16;
  std::vector<double> rho, wts;
  std::vector<bool> outside;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (cuts[i + 1] > rho_max) break;
    const int np = std::max(1, static_cast<int>(std::ceil((cuts[i + 1] - cuts[i]) / pw)));
    const double w = (cuts[i + 1] - cuts[i]) / np;
    for (int p = 0; p < np; ++p)
      for (std::size_t q = 0; q < gl.x.size(); ++q) {
        const double y = cuts[i] + w * (p + 0.5 * (gl.x[q] + 1));
        rho.push_back(y);
        wts.push_back(0.5 * w * gl.w[q] * 4 * pi * y * y);
        outside.push_back(cuts[i] >= probe_radius);
      }
  }
  std::vector<const double*> ptr;
  for (const auto& a : coef) ptr.push_back(a.data());
  std::vector<std::vector<double>> phi;
  radial_sums(dk, n, ptr, rho, phi);

  SupportCheck out;
  out.k_max = n * dk;
  quad::KahanSum tot, outs;
  for (std::size_t i = 0; i < rho.size(); ++i) {
    double m2 = 0;
    for (std::size_t a = 0; a < f.terms.size(); ++a)
      for (std::size_t b = 0; b < f.terms.size(); ++b)
        m2 += dot(f.terms[a].direction, f.terms[b].direction) * phi[a][i] * phi[b][i];
    tot.add(wts[i] * m2);
    if (outside[i]) outs.add(wts[i] * m2);
  }
  out.total = tot.value();
  out.outside_fraction = out.total > 0 ? outs.value() / out.total : 0;
  return out;
}

const char* to_string(ProbeRoute r) {
  switch (r) {
    case ProbeRoute::spacelike: return "spacelike";
    case ProbeRoute::forward_cone: return "forward_cone";
    case ProbeRoute::unconstrained: return "unconstrained";
  }
  return "?";
}

RadiusCheck lemma_a2_radius_check(const profiles::DressingParams& p, double T, const testfields::TestFieldPair& probe,
                                  const quad::QuadratureSpec& q, bool strict) {
  if (!(T > 0)) throw InvalidParameter("T must be > 0");
  const double R = p.time_shift + T;
  const geometry::DoubleCone src{{-R, {}}, R};
  RadiusCheck out;
  if (geometry::causally_separated(src, probe.support) == geometry::Separation::spacelike)
    out.route = ProbeRoute::spacelike;
  else if (geometry::double_cone_in_cone(probe.support, {geometry::Orientation::forward, {}}))
    out.route = ProbeRoute::forward_cone;
  else if (strict)
    throw SupportPreconditionViolation("probe is neither spacelike to the dressing cone nor in the forward cone");
  const auto v = profiles::profile_wavefunction(p, profiles::ProfileKind::hat_T(T)).scaled(cplx(0, -1));
  const auto r = pairing::pair(v, testfields::photon_wavefunction(probe), q);
  out.sigma = r.value.imag();
  out.scale = r.magnitude;
  return out;
}

}  // namespace irlc::wavecheck
