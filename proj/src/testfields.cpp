#include "irlc/testfields.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "irlc/errors.hpp"
#include "irlc/quadrature.hpp"

namespace irlc::testfields {

namespace {

constexpr double pi = std::numbers::pi;
const double inv_sqrt_2pi = 1.0 / std::sqrt(2 * pi);

double shape(double s) {
  const double a = 1 - s * s;
  return a > 0 ? std::exp(-1 / a) : 0.0;
}

// int_{-1}^{1} shape(s) cos(q s) ds
double shape_cosine(double q) {
  return 2 * quad::integrate([q](double s) { return shape(s) * std::cos(q * s); }, 0.0, 1.0, 1e-11);
}

Vec3 unit(const Vec3& d) {
  const double n = norm(d);
  if (!(n > 0)) throw InvalidParameter("term direction must be nonzero");
  return d / n;
}

}  // namespace

double BumpProfile::operator()(double x) const { return amplitude * shape((x - center) / halfwidth); }

BumpProfile make_bump(double center, double halfwidth, double amplitude) {
  if (!(halfwidth > 0)) throw InvalidParameter("bump halfwidth must be > 0");
  return {center, halfwidth, amplitude};
}

cplx fourier_transform_1d(const BumpProfile& b, double omega) {
  // symmetric shape: the integral about the center is real, the offset is a phase
  const double mag = inv_sqrt_2pi * b.amplitude * b.halfwidth * shape_cosine(omega * b.halfwidth);
  const double ph = -omega * b.center;
  return {mag * std::cos(ph), mag * std::sin(ph)};
}

double bump_integral(const BumpProfile& b) { return b.amplitude * b.halfwidth * shape_cosine(0); }

double radial_shape_transform(double R, double K) {
  auto f = [R, K](double r) {
    const double x = K * r;
    const double sinc = std::abs(x) < 1e-4 ? 1 - x * x / 6 : std::sin(x) / x;
    return r * r * shape(r / R) * sinc;
  };
  return quad::integrate(f, 0.0, R, 1e-11);
}

double SpaceBump::operator()(const Vec3& x) const {
  const Vec3 d = x - center;
  if (kind == SpaceKind::radial) return shape(norm(d) / halfwidth);
  return shape(d.x / widths[0]) * shape(d.y / widths[1]) * shape(d.z / widths[2]);
}

cplx SpaceBump::transform(const Vec3& k) const {
  cplx v;
  if (kind == SpaceKind::radial) {
    v = std::pow(2 * pi, -1.5) * 4 * pi * radial_shape_transform(halfwidth, norm(k));
  } else {
    v = std::pow(inv_sqrt_2pi, 3) * widths[0] * shape_cosine(k.x * widths[0]) * widths[1] *
        shape_cosine(k.y * widths[1]) * widths[2] * shape_cosine(k.z * widths[2]);
  }
  const double ph = -dot(k, center);
  return v * cplx(std::cos(ph), std::sin(ph));
}

double SpaceBump::support_radius() const {
  if (kind == SpaceKind::radial) return halfwidth;
  return std::sqrt(widths[0] * widths[0] + widths[1] * widths[1] + widths[2] * widths[2]);
}

TestFieldPair make_pair(std::vector<Term> terms, const geometry::DoubleCone& support) {
  if (!(support.radius > 0)) throw InvalidParameter("support radius must be > 0");
  for (auto& t : terms) {
    if (!(t.time.halfwidth > 0)) throw InvalidParameter("time bump halfwidth must be > 0");
    if (t.space.kind == SpaceKind::radial && !(t.space.halfwidth > 0))
      throw InvalidParameter("space bump radius must be > 0");
    if (t.space.kind == SpaceKind::product &&
        !(t.space.widths[0] > 0 && t.space.widths[1] > 0 && t.space.widths[2] > 0))
      throw InvalidParameter("space bump widths must be > 0");
    t.direction = unit(t.direction);
    // the support box is [tc-a, tc+a] x ball(c, R); its farthest point from the cone center
    const double reach = std::abs(t.time.center - support.center.t) + t.time.halfwidth +
                         norm(t.space.center - support.center.x) + t.space.support_radius();
    if (!(reach < support.radius))
      throw InvalidParameter("test-field term leaves its declared double cone");
  }
  return {std::move(terms), support};
}

FieldValue evaluate(const TestFieldPair& p, const geometry::Point4& x) {
  FieldValue v;
  for (const auto& t : p.terms) {
    const double s = t.time(x.t) * t.space(x.x);
    if (s == 0) continue;
    (t.channel == Channel::electric ? v.e : v.b) += s * t.direction;
  }
  return v;
}

OnShell onshell_transform(const TestFieldPair& p, const Vec3& k) {
  const double K = norm(k);
  OnShell out;
  for (const auto& t : p.terms) {
    const cplx s = fourier_transform_1d(t.time, -K) * t.space.transform(k);
    (t.channel == Channel::electric ? out.e : out.b) += CVec3(t.direction) * s;
  }
  return out;
}

OnShell OnShellTransform::operator()(const Vec3& k) const {
  const auto key = std::make_tuple(k.x, k.y, k.z);
  {
    std::lock_guard lock(mu_);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  }
  const OnShell v = onshell_transform(pair_, k);
  std::lock_guard lock(mu_);
  cache_.emplace(key, v);
  return v;
}

namespace {

// |transform| envelope used to place the radial truncation
double envelope(const TestFieldPair& p, double K) {
  double e = 0;
  for (const auto& t : p.terms) {
    const double a = std::abs(fourier_transform_1d(t.time, K));
    double h;
    if (t.space.kind == SpaceKind::radial) {
      h = std::abs(t.space.transform({0, 0, K}));
    } else {
      h = 0;
      for (int ax = 0; ax < 3; ++ax) {
        Vec3 k;
        k[ax] = K;
        h = std::max(h, std::abs(t.space.transform(k)));
      }
    }
    e += a * h;
  }
  return e * std::sqrt(K);
}

}  // namespace

double truncation_radius(const TestFieldPair& p, double rel) {
  if (p.terms.empty()) return 0;
  std::vector<double> ks, es;
  double peak = 0;
  for (double K = 0.05; K < 5000; K *= 1.04) {
    ks.push_back(K);
    es.push_back(envelope(p, K));
    peak = std::max(peak, es.back());
    // stop after a sustained run below threshold
    if (ks.size() > 40) {
      bool quiet = true;
      for (std::size_t j = es.size() - 25; j < es.size(); ++j)
        if (es[j] > rel * peak) quiet = false;
      if (quiet) break;
    }
  }
  for (std::size_t j = es.size(); j-- > 0;)
    if (es[j] > rel * peak) return j + 1 < ks.size() ? ks[j + 1] : ks.back();
  return ks.front();
}

photon::PhotonWaveFunction photon_wavefunction(const TestFieldPair& p) {
  photon::WaveMeta m;
  m.small_k_exponent = 0.5;
  m.truncation_radius = truncation_radius(p);
  m.anchor = p.support.center.x;
  for (const auto& t : p.terms) {
    const double cs = norm(t.space.center), rs = t.space.support_radius();
    const Vec3 d = t.space.center - m.anchor;
    m.radial_rate = std::max(m.radial_rate, std::abs(t.time.center) + t.time.halfwidth + cs + rs);
    m.extent = std::max(m.extent, norm(d) + rs);
    m.off_axis = std::max(m.off_axis, std::hypot(d.x, d.y) + rs);
    const double smallest = t.space.kind == SpaceKind::radial
                                ? t.space.halfwidth
                                : *std::min_element(t.space.widths.begin(), t.space.widths.end());
    m.feature = std::min({m.feature, smallest, t.time.halfwidth});
  }
  if (p.terms.empty()) m.small_k_exponent = std::numeric_limits<double>::infinity();

  const auto terms = std::make_shared<const std::vector<Term>>(p.terms);
  const double pref = 4 * pi * pi;  // (2 pi)^2
  return {[terms, pref](double K) -> photon::ShellEval {
            struct Pre {
              cplx a;        // time transform at -K
              double radial;  // radial spatial transform (radial kind)
            };
            std::vector<Pre> pre;
            pre.reserve(terms->size());
            for (const auto& t : *terms) {
              Pre q{fourier_transform_1d(t.time, -K), 0.0};
              if (t.space.kind == SpaceKind::radial)
                q.radial = std::pow(2 * pi, -1.5) * 4 * pi * radial_shape_transform(t.space.halfwidth, K);
              pre.push_back(q);
            }
            const double sk = std::sqrt(K);
            return [terms, pre, K, sk, pref](std::span<const Vec3> dirs, photon::FieldBatch& out) {
              for (std::size_t j = 0; j < dirs.size(); ++j) {
                const Vec3& u = dirs[j];
                const Vec3 k = K * u;
                CVec3 fe, fb;
                for (std::size_t i = 0; i < terms->size(); ++i) {
                  const Term& t = (*terms)[i];
                  cplx h;
                  if (t.space.kind == SpaceKind::radial) {
                    const double ph = -dot(k, t.space.center);
                    h = pre[i].radial * cplx(std::cos(ph), std::sin(ph));
                  } else {
                    h = t.space.transform(k);
                  }
                  (t.channel == Channel::electric ? fe : fb) += CVec3(t.direction) * (pre[i].a * h);
                }
                // -i (2pi)^2 sqrt(K) (P_tr fe + khat x fb)
                const CVec3 v = photon::transverse_project(u, fe) + cross(u, fb);
                out.set(j, v * cplx(0, -pref * sk));
              }
            };
          },
          m};
}

}  // namespace irlc::testfields
