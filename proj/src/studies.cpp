#include <algorithm>
#include <cmath>

#include "irlc/errors.hpp"
#include "irlc/geometry.hpp"
#include "irlc/pairing.hpp"

namespace irlc::pairing {

namespace {

const geometry::ConeRegion forward_cone{geometry::Orientation::forward, {}};

}  // namespace

DefectResult huyghens_defect(const profiles::DressingParams& p, const testfields::TestFieldPair& f,
                             profiles::ProfileKind kind, const QuadratureSpec& q) {
  if (!geometry::double_cone_in_cone(f.support, forward_cone))
    throw SupportNotInForwardCone("test field support is not inside the forward lightcone");
  if (kind.tag != profiles::Kind::v_hat && kind.tag != profiles::Kind::v_hat_T)
    throw InvalidParameter("huyghens_defect takes v_hat or v_hat_T");
  const auto v = profiles::profile_wavefunction(p, kind).scaled(cplx(0, -1));
  const PairingResult r = pair(v, testfields::photon_wavefunction(f), q);
  return {r.value.imag(), r.magnitude, r.error_estimate};
}

std::vector<LimitRow> limit_T_study(const profiles::DressingParams& p, const testfields::TestFieldPair& f,
                                    const std::vector<double>& T_list, const QuadratureSpec& q) {
  for (std::size_t i = 0; i < T_list.size(); ++i) {
    if (!(T_list[i] > 0)) throw InvalidParameter("T values must be positive");
    if (i > 0 && !(T_list[i] > T_list[i - 1])) throw InvalidParameter("T values must be ascending");
  }
  const auto fp = testfields::photon_wavefunction(f);
  const auto vhat = profiles::profile_wavefunction(p, profiles::ProfileKind::hat());
  std::vector<LimitRow> rows;
  for (double T : T_list) {
    const std::vector<photon::PhotonWaveFunction> vs{
        profiles::profile_wavefunction(p, profiles::ProfileKind::hat_T(T)), vhat,
        profiles::term_wavefunction(p, T, 2), profiles::term_wavefunction(p, T, 3)};
    const auto r = pair_many(vs, fp, q);
    LimitRow row;
    row.T = T;
    row.total = r[0].value;
    row.vhat = r[1].value;
    row.term2 = r[2].value;
    row.term3 = r[3].value;
    for (const auto& x : r) {
      row.err = std::max(row.err, x.error_estimate);
      row.scale = std::max(row.scale, x.magnitude);
    }
    row.nodes = r[0].node_count;
    rows.push_back(row);
  }
  return rows;
}

double lemma1_phase(const profiles::DressingParams& p, const testfields::TestFieldPair& f,
                    const QuadratureSpec& q) {
  const auto d = profiles::profile_wavefunction(p, profiles::ProfileKind::limit()) -
                 profiles::profile_wavefunction(p, profiles::ProfileKind::hat());
  const auto r = pair(d.scaled(cplx(0, -1)), testfields::photon_wavefunction(f), q);
  return -2 * r.value.imag();
}

namespace {

testfields::TestFieldPair locality_field(double t0, const Vec3& c, const Vec3& de, const Vec3& db) {
  testfields::Term e;
  e.time = testfields::make_bump(t0, 0.4, 1);
  e.space.center = c;
  e.space.halfwidth = 0.45;
  e.direction = de;
  testfields::Term b = e;
  b.channel = testfields::Channel::magnetic;
  b.direction = db;
  b.time = testfields::make_bump(t0 + 0.1, 0.3, 0.7);
  return testfields::make_pair({e, b}, {{t0, c}, 1});
}

}  // namespace

std::vector<LocalityCase> builtin_locality_cases() {
  auto f = locality_field;
  return {
      {"spacelike-x", f(0, {3, 0, 0}, {0, 1, 0}, {0, 0, 1}), f(0, {-3, 0, 0}, {0, 1, 0.5}, {1, 0, 0})},
      {"spacelike-z", f(0, {0, 0, 2.5}, {1, 0, 0}, {0, 1, 0}), f(0.3, {0, 0, -2.5}, {1, 1, 0}, {0, 0, 1})},
      {"spacelike-oblique", f(0.5, {1, 2, 1}, {1, 0, 1}, {0, 1, 0}), f(-0.5, {-1, -1, -1.5}, {0, 1, 0}, {1, 0, 0})},
      {"spacelike-near", f(0, {0, 2.2, 0}, {1, 0, 0}, {0, 0, 1}), f(0.1, {0, -0.2, 0}, {0, 0, 1}, {1, 1, 0})},
      {"spacelike-skew", f(1, {2, 0, 2}, {0, 1, 0}, {1, 0, 0}), f(-1, {-2, 0, -1}, {1, 1, 1}, {0, 1, 0})},
      {"cones-axis", f(-3, {0, 0, 0}, {1, 0, 0}, {0, 1, 0}), f(3, {0, 0, 0}, {1, 0, 0}, {0, 1, 0})},
      {"cones-offset", f(-4, {0.5, 0, 0}, {0, 1, 0}, {0, 0, 1}), f(3, {0, 0.5, 0.5}, {1, 0, 0}, {0, 1, 1})},
      {"cones-z", f(-2.5, {0, 0, 1}, {1, 0, 0}, {0, 1, 0}), f(2, {0, 0, -0.5}, {0, 1, 0}, {1, 0, 1})},
      {"cones-near-apex", f(-1.5, {0.3, 0.2, 0}, {0, 0, 1}, {1, 0, 0}), f(1.6, {0, 0, 0.4}, {1, 1, 0}, {0, 0, 1})},
      {"cones-wide", f(-5, {2, 1, 0}, {1, 0, 0}, {0, 1, 1}), f(4, {-1, 0, 2}, {0, 1, 0}, {1, 0, 0})},
  };
}

const char* to_string(LocalityKind k) {
  switch (k) {
    case LocalityKind::spacelike: return "spacelike";
    case LocalityKind::cone_pair: return "backward/forward";
    case LocalityKind::other: return "other";
  }
  return "?";
}

LocalityResult locality_check(const testfields::TestFieldPair& a, const testfields::TestFieldPair& b,
                              const QuadratureSpec& q) {
  LocalityResult r;
  const geometry::ConeRegion back{geometry::Orientation::backward, {}};
  auto in = [](const testfields::TestFieldPair& f, const geometry::ConeRegion& c) {
    return geometry::double_cone_in_cone(f.support, c);
  };
  if (geometry::causally_separated(a.support, b.support) == geometry::Separation::spacelike)
    r.kind = LocalityKind::spacelike;
  else if ((in(a, back) && in(b, forward_cone)) || (in(a, forward_cone) && in(b, back)))
    r.kind = LocalityKind::cone_pair;
  const auto fa = testfields::photon_wavefunction(a), fb = testfields::photon_wavefunction(b);
  const auto s = pair(fa, fb, q);
  r.sigma = s.value.imag();
  r.error_estimate = s.error_estimate;
  r.norm1 = std::sqrt(pair(fa, fa, q).value.real());
  r.norm2 = std::sqrt(pair(fb, fb, q).value.real());
  r.relative = std::abs(r.sigma) / (r.norm1 * r.norm2);
  return r;
}

}  // namespace irlc::pairing
