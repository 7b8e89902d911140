#include "irlc/runner.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <ostream>
#include <random>

#include "irlc/errors.hpp"
#include "irlc/pairing.hpp"
#include "irlc/profiles.hpp"
#include "irlc/wavecheck.hpp"
#include "irlc/weyl.hpp"

namespace irlc::runner {

using nlohmann::json;

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

bool StudyReport::pass() const {
  if (!error.empty()) return false;
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

const Check* StudyReport::find(const std::string& check) const {
  for (const auto& c : checks)
    if (c.name == check) return &c;
  return nullptr;
}

bool RunReport::pass() const {
  return std::all_of(studies.begin(), studies.end(), [](const StudyReport& s) { return s.pass(); });
}

namespace {

constexpr double two_pi = 2 * std::numbers::pi;

Check at_most(std::string name, double value, double threshold) {
  return {std::move(name), value, "<=", threshold, value <= threshold};
}
Check at_least(std::string name, double value, double threshold) {
  return {std::move(name), value, ">=", threshold, value >= threshold};
}

json vec(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

std::vector<std::string> row(std::initializer_list<double> xs) {
  std::vector<std::string> r;
  for (double x : xs) r.push_back(fmt(x));
  return r;
}

std::string tag(const Vec3& w) { return fmt(w.x) + "_" + fmt(w.y) + "_" + fmt(w.z); }

// ---------------------------------------------------------------- ir-divergence

void ir_divergence(const config::ScenarioConfig& c, const config::IrDivergence& o, StudyReport& r) {
  r.input = {{"velocities", json::array()}, {"sigma_lo", o.sigma_lo}, {"slope_tolerance", o.slope_tolerance}};
  Table fits{"ir-divergence_fits.csv", {"w_x", "w_y", "w_z", "slope", "oracle", "rel_err"}, {}};
  for (std::size_t i = 0; i < o.velocities.size(); ++i) {
    const Vec3 w = o.velocities[i];
    r.input["velocities"].push_back(vec(w));
    profiles::DressingParams p = c.profile;
    p.velocity = w;
    p.validate_normalized();
    Table t{"ir-divergence_w" + std::to_string(i) + ".csv", {"sigma_lo", "shell_norm", "err"}, {}};
    std::vector<double> vals;
    for (double s : o.sigma_lo) {
      double err = 0;
      const double v = profiles::shell_norm_squared(p, s, c.quadrature, &err);
      vals.push_back(v);
      t.rows.push_back(row({s, v, err}));
    }
    const auto fit = profiles::fit_log_slope(o.sigma_lo, vals);
    const double oracle = p.coupling * profiles::angular_factor(norm(w));
    const std::string name = "slope[w=" + tag(w) + "]";
    if (norm(w) == 0) {
      r.checks.push_back(at_most(name + " |slope|", std::abs(fit.slope), o.zero_tolerance));
      fits.rows.push_back(row({w.x, w.y, w.z, fit.slope, oracle, 0.0}));
    } else {
      const double rel = std::abs(fit.slope - oracle) / oracle;
      r.checks.push_back(at_most(name + " rel_err", rel, o.slope_tolerance));
      fits.rows.push_back(row({w.x, w.y, w.z, fit.slope, oracle, rel}));
    }
    r.tables.push_back(std::move(t));
  }
  r.tables.push_back(std::move(fits));
}

// ---------------------------------------------------------------- superselection-slope

void superselection(const config::ScenarioConfig& c, const config::SuperselectionSlope& o, StudyReport& r) {
  r.input = {{"pairs", json::array()}, {"sigma_lo", o.sigma_lo}, {"slope_tolerance", o.slope_tolerance}};
  Table fits{"superselection-slope.csv",
             {"w_x", "w_y", "w_z", "wp_x", "wp_y", "wp_z", "slope", "oracle", "rel_err"},
             {}};
  for (std::size_t i = 0; i < o.pairs.size(); ++i) {
    const auto [w, wp] = o.pairs[i];
    r.input["pairs"].push_back({vec(w), vec(wp)});
    profiles::DressingParams p = c.profile;
    p.velocity = w;
    p.validate_normalized();
    profiles::DressingParams pp = p;
    pp.velocity = wp;
    pp.validate_normalized();
    const auto fit = profiles::pairwise_divergence_slope(p, w, wp, o.sigma_lo, c.quadrature);
    Table t{"superselection-slope_pair" + std::to_string(i) + ".csv", {"sigma_lo", "pair_norm", "err"}, {}};
    for (std::size_t k = 0; k < fit.sigma.size(); ++k)
      t.rows.push_back(row({fit.sigma[k], fit.value[k], fit.error[k]}));
    r.tables.push_back(std::move(t));
    const double oracle = p.coupling * profiles::pairwise_angular_integral(w, wp);
    const std::string name = "slope[" + tag(w) + " vs " + tag(wp) + "]";
    double rel = 0;
    if (norm(w - wp) == 0) {
      r.checks.push_back(at_most(name + " |slope|", std::abs(fit.slope), o.zero_tolerance));
    } else {
      rel = std::abs(fit.slope - oracle) / oracle;
      r.checks.push_back(at_least(name + " slope", fit.slope, 0.0));
      r.checks.back().pass = fit.slope > 0;
      r.checks.push_back(at_most(name + " rel_err", rel, o.slope_tolerance));
    }
    fits.rows.push_back(row({w.x, w.y, w.z, wp.x, wp.y, wp.z, fit.slope, oracle, rel}));
  }
  r.tables.push_back(std::move(fits));
}

// ---------------------------------------------------------------- difference-norm

void difference_norm(const config::ScenarioConfig& c, const config::DifferenceNorm& o, StudyReport& r) {
  r.input = {{"sigma_probe", o.sigma_probe},
             {"cauchy_tolerance", o.cauchy_tolerance},
             {"violation_g0", o.violation_g0},
             {"violation_sigma", o.violation_sigma}};
  c.profile.validate_normalized();
  Table t{"difference-norm.csv", {"sigma_probe", "norm_squared", "err"}, {}};
  std::vector<double> v;
  for (double s : o.sigma_probe) {
    double e = 0;
    v.push_back(profiles::difference_norm_squared(c.profile, s, c.quadrature, &e));
    t.rows.push_back(row({s, v.back(), e}));
  }
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  const double spread = *hi > 0 ? (*hi - *lo) / *hi : 0;
  r.checks.push_back(at_most("cauchy spread", spread, o.cauchy_tolerance));
  r.tables.push_back(std::move(t));

  profiles::DressingParams bad = c.profile;
  bad.g0 = o.violation_g0;
  Table tv{"difference-norm_violation.csv", {"sigma_probe", "norm_squared", "err"}, {}};
  std::vector<double> vv;
  for (double s : o.violation_sigma) {
    double e = 0;
    vv.push_back(profiles::difference_norm_squared(bad, s, c.quadrature, &e));
    tv.rows.push_back(row({s, vv.back(), e}));
  }
  const auto fit = profiles::fit_log_slope(o.violation_sigma, vv);
  r.checks.push_back(at_least("violation log-slope", fit.slope, 0.0));
  r.checks.back().pass = fit.slope > 0;
  r.results["violation_slope"] = fit.slope;
  // leading coefficient of the divergence: alpha (g0 - 1)^2 A(|w|)
  r.results["violation_slope_expected"] =
      c.profile.coupling * (o.violation_g0 - 1) * (o.violation_g0 - 1) * profiles::angular_factor(norm(c.profile.velocity));
  r.tables.push_back(std::move(tv));
}

// ---------------------------------------------------------------- huyghens

void huyghens(const config::ScenarioConfig& c, const config::Huyghens& o, StudyReport& r) {
  r.input = {{"field", o.field}, {"T_list", o.T_list}, {"include_limit", o.include_limit}, {"tolerance", o.tolerance}};
  c.profile.validate_normalized();
  const auto& f = c.fields.at(o.field);
  Table t{"huyghens.csv", {"T", "defect", "scale", "relative", "err"}, {}};
  auto one = [&](profiles::ProfileKind kind, const std::string& label) {
    const auto d = pairing::huyghens_defect(c.profile, f, kind, c.quadrature);
    const double rel = d.scale > 0 ? std::abs(d.defect) / d.scale : 0;
    t.rows.push_back({label, fmt(d.defect), fmt(d.scale), fmt(rel), fmt(d.error_estimate)});
    r.checks.push_back(at_most("defect[T=" + label + "]", rel, o.tolerance));
  };
  for (double T : o.T_list) one(profiles::ProfileKind::hat_T(T), fmt(T));
  if (o.include_limit) one(profiles::ProfileKind::hat(), "inf");
  r.tables.push_back(std::move(t));
}

// ---------------------------------------------------------------- limit-T

void limit_T(const config::ScenarioConfig& c, const config::LimitT& o, StudyReport& r) {
  r.input = {{"field", o.field},
             {"T_list", o.T_list},
             {"identity_tolerance", o.identity_tolerance},
             {"window", {o.window_lo, o.window_hi}},
             {"bounded_factor", o.bounded_factor},
             {"ratio_T", {o.ratio_T_ref, o.ratio_T}},
             {"term2_ratio", o.term2_ratio}};
  c.profile.validate_normalized();
  const auto rows = pairing::limit_T_study(c.profile, c.fields.at(o.field), o.T_list, c.quadrature);
  Table t{"limit-T.csv", {"T", "total_re", "total_im", "vhat_re", "vhat_im", "term2_abs", "term3_abs", "err"}, {}};
  double ident = 0, lo3 = INFINITY, hi3 = 0, lo2 = INFINITY, hi2 = 0;
  double t2_ref = NAN, t2_at = NAN;
  for (const auto& x : rows) {
    t.rows.push_back(row({x.T, x.total.real(), x.total.imag(), x.vhat.real(), x.vhat.imag(), std::abs(x.term2),
                          std::abs(x.term3), x.err}));
    const double id = std::abs(x.total - x.vhat - x.term2 - x.term3) / std::max(x.scale, 1e-300);
    ident = std::max(ident, id);
    if (x.T >= o.window_lo && x.T <= o.window_hi) {
      lo3 = std::min(lo3, x.T * std::abs(x.term3));
      hi3 = std::max(hi3, x.T * std::abs(x.term3));
      lo2 = std::min(lo2, x.T * std::abs(x.term2));
      hi2 = std::max(hi2, x.T * std::abs(x.term2));
    }
    if (x.T == o.ratio_T_ref) t2_ref = std::abs(x.term2);
    if (x.T == o.ratio_T) t2_at = std::abs(x.term2);
  }
  r.checks.push_back(at_most("row identity", ident, o.identity_tolerance));
  // no rows in the window leaves the spread undefined, which fails the check
  r.checks.push_back(at_most("T|term3| spread", lo3 < INFINITY ? hi3 / lo3 : NAN, o.bounded_factor));
  r.checks.push_back(at_most("|term2(" + fmt(o.ratio_T) + ")|/|term2(" + fmt(o.ratio_T_ref) + ")|", t2_at / t2_ref,
                             o.term2_ratio));
  if (lo2 < INFINITY) r.results["T_term2_spread"] = hi2 / lo2;  // same statistic for the other remainder, reported only
  r.results["T_term3_max"] = hi3;
  r.tables.push_back(std::move(t));

  Table reg{"limit-T_region.csv", {"T", "u", "t", "tau"}, {}};
  for (double T : o.region_T) {
    const double u = c.profile.time_shift;
    for (auto [a, b] : {std::pair{0.0, 0.0}, {0.0, T}, {T, T}, {0.0, 0.0}}) reg.rows.push_back(row({T, u, a, b}));
  }
  r.tables.push_back(std::move(reg));
}

// ---------------------------------------------------------------- weyl-laws

void weyl_laws(const config::ScenarioConfig& c, const config::WeylLaws& o, StudyReport& r) {
  using namespace weyl;
  r.input = {{"labels", o.labels},
             {"atoms", o.atoms},
             {"seed", o.seed},
             {"tolerance", o.tolerance},
             {"additivity_labels", o.additivity_labels},
             {"additivity_tolerance", o.additivity_tolerance}};
  c.profile.validate_normalized();
  std::mt19937_64 rng(o.seed);
  auto uni = [&](double a, double b) { return a + (b - a) * std::generate_canonical<double, 53>(rng); };

  auto space = LabelSpace::create(c.quadrature);
  std::vector<std::size_t> atoms;
  for (int i = 0; i < o.atoms; ++i) {
    testfields::Term e;
    const double t0 = uni(-1, 1);
    const Vec3 x{uni(-1, 1), uni(-1, 1), uni(-1, 1)};
    e.time = testfields::make_bump(t0, 0.4, uni(0.5, 1.5));
    e.space.center = x;
    e.space.halfwidth = 0.45;
    e.direction = {uni(-1, 1), uni(-1, 1), uni(-1, 1) + 2};
    e.channel = i % 2 ? testfields::Channel::magnetic : testfields::Channel::electric;
    atoms.push_back(space->add(testfields::photon_wavefunction(testfields::make_pair({e}, {{t0, x}, 1}))));
  }
  const std::size_t vP = space->add(profiles::profile_wavefunction(c.profile, profiles::ProfileKind::limit()));
  const std::size_t vH = space->add(profiles::profile_wavefunction(c.profile, profiles::ProfileKind::hat()));

  auto random_label = [&]() {
    Label l(space);
    for (auto a : atoms)
      if (uni(0, 1) < 0.6) l = l + Label(space, a, cplx(uni(-1, 1), uni(-1, 1)));
    if (l.is_zero()) l = Label(space, atoms[0], 1.0);
    return l;
  };
  std::vector<WeylElement> W;
  for (int i = 0; i < o.labels; ++i) W.emplace_back(random_label(), uni(0, two_pi));

  double group = 0, invol = 0, assoc = 0, autom = 0, inner_u = 0, additive = 0;
  const std::size_t n = W.size();
  const WeylElement one = WeylElement::identity(space);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = W[i];
    const auto& b = W[(i + 1) % n];
    const auto& d = W[(i + 2) % n];
    // W(f) W(g) = exp(-2 i sigma(f, g)) W(g) W(f);  W(f) W(f) = W(2f) up to the phases
    const auto ab = multiply(a, b), ba = multiply(b, a);
    group = std::max(group, phase_distance(ab.phase() - ba.phase(), -2 * sigma(a.label(), b.label())));
    const auto aa = multiply(a, a);
    group = std::max(group, phase_distance(aa.phase(), 2 * a.phase()));
    // involution
    const auto s = adjoint(a);
    invol = std::max(invol, same_element(adjoint(s), a, o.tolerance) ? 0.0 : 1.0);
    invol = std::max(invol, phase_distance(s.phase(), two_pi - a.phase()));
    const auto e = multiply(a, s);
    invol = std::max(invol, e.label().is_zero() ? phase_distance(e.phase(), 0) : 1.0);
    const auto u = multiply(one, a);
    invol = std::max(invol, phase_distance(u.phase(), a.phase()));
    // cocycle: (ab)d = a(bd)
    assoc = std::max(assoc, phase_distance(multiply(ab, d).phase(), multiply(a, multiply(b, d)).phase()));
    // automorphism by v_P distributes over products
    const CoherentAutomorphism alpha{Label(space, vP)};
    autom = std::max(autom, phase_distance(apply_automorphism(alpha, ab).phase(),
                                           multiply(apply_automorphism(alpha, a), apply_automorphism(alpha, b)).phase()));
    // square-integrable profile: alpha_v = Ad W(-i v)
    const CoherentAutomorphism beta{W[(i + 3) % n].label()};
    const auto h = *inner_element(beta);
    inner_u = std::max(inner_u, phase_distance(apply_automorphism(beta, a).phase(),
                                               multiply(h, multiply(a, adjoint(h))).phase()));
  }
  const CoherentAutomorphism aP{Label(space, vP)}, aH{Label(space, vH)};
  const auto diff = compose_difference(aP, aH);
  for (int i = 0; i < std::min<int>(o.additivity_labels, static_cast<int>(n)); ++i) {
    const auto& a = W[i];
    const double s1 = apply_automorphism(aP, a).phase(), s2 = apply_automorphism(aH, a).phase();
    const double sd = apply_automorphism(diff, a).phase();
    additive = std::max(additive, phase_distance(sd - a.phase(), (s1 - a.phase()) - (s2 - a.phase())));
  }
  r.checks.push_back(at_most("group law", group, o.tolerance));
  r.checks.push_back(at_most("involution", invol, o.tolerance));
  r.checks.push_back(at_most("cocycle", assoc, o.tolerance));
  r.checks.push_back(at_most("automorphism product", autom, o.tolerance));
  r.checks.push_back(at_most("inner unitary", inner_u, o.tolerance));
  r.checks.push_back(at_most("difference additivity", additive, o.additivity_tolerance));
  Table t{"weyl-laws.csv", {"identity", "max_phase_error"}, {}};
  for (const auto& ck : r.checks) t.rows.push_back({ck.name, fmt(ck.value)});
  r.tables.push_back(std::move(t));
}

// ---------------------------------------------------------------- locality

void locality(const config::ScenarioConfig& c, const config::Locality& o, StudyReport& r) {
  r.input = {{"tolerance", o.tolerance}, {"pairs", json::array()}};
  std::vector<pairing::LocalityCase> cases;
  if (o.pairs.empty()) {
    cases = pairing::builtin_locality_cases();
    r.input["pairs"] = "builtin";
  }
  for (const auto& p : o.pairs) {
    cases.push_back({p.first + "/" + p.second, c.fields.at(p.first), c.fields.at(p.second)});
    r.input["pairs"].push_back({p.first, p.second});
  }
  Table t{"locality.csv", {"case", "kind", "sigma", "norm1", "norm2", "relative", "err"}, {}};
  for (const auto& k : cases) {
    const auto x = pairing::locality_check(k.first, k.second, c.quadrature);
    t.rows.push_back({k.name, pairing::to_string(x.kind), fmt(x.sigma), fmt(x.norm1), fmt(x.norm2), fmt(x.relative),
                      fmt(x.error_estimate)});
    if (x.kind != pairing::LocalityKind::other)
      r.checks.push_back(at_most(k.name + " (" + pairing::to_string(x.kind) + ")", x.relative, o.tolerance));
  }
  r.tables.push_back(std::move(t));
}

// ---------------------------------------------------------------- wave-appendix

void wave_appendix(const config::ScenarioConfig& c, const config::WaveAppendix& o, StudyReport& r) {
  using namespace wavecheck;
  r.input = {{"radius", o.radius},
             {"second_radius", o.second_radius},
             {"t_list", o.t_list},
             {"extent", o.extent},
             {"spacing", o.spacing},
             {"drift_tolerance", o.drift_tolerance},
             {"halving_improvement", o.halving_improvement},
             {"mass_tolerance", o.mass_tolerance},
             {"support_field", o.support_field},
             {"lemma_T", o.lemma_T}};
  const auto a = make_wave({}, o.radius, 1.0, WaveKind::sine);
  const auto b = make_wave({}, o.second_radius, 0.7, WaveKind::cosine);

  // initial data
  std::vector<Vec3> pts;
  for (double s : {0.0, 0.15, 0.3, 0.45, 0.6, 0.75, 0.9}) pts.push_back({s * o.radius, 0.3 * s * o.radius, 0});
  const auto ia = initial_condition_check(a, pts, o.fd_dt), ib = initial_condition_check(b, pts, o.fd_dt);
  r.checks.push_back(at_most("sine w(0) = 0", ia.value_at_zero, 0.0));
  const double order = ia.fd_error / ia.fd_error_half;
  r.checks.push_back(at_least("sine dw/dt(0) central difference order (error ratio on dt/2)", order, 3.5));
  r.checks.push_back(at_most("cosine w(0) - f", ib.value_at_zero, 1e-8));
  r.results["initial"] = {{"sine_fd_error", ia.fd_error}, {"sine_fd_error_half", ia.fd_error_half}};

  // finite propagation speed
  Table tm{"wave-appendix_mass.csv", {"solution", "t", "total", "outside", "fraction"}, {}};
  double worst = 0;
  for (const auto* w : {&a, &b}) {
    const double rr = w->radius;
    for (const auto& m : mass_outside(*w, o.t_list, {o.extent, o.spacing > 0 ? o.spacing : rr / 16})) {
      tm.rows.push_back({w == &a ? "sine" : "cosine", fmt(m.t), fmt(m.total), fmt(m.outside), fmt(m.fraction())});
      worst = std::max(worst, m.fraction());
    }
  }
  r.checks.push_back(at_most("mass outside O_{r+|t|}", worst, o.mass_tolerance));
  r.tables.push_back(std::move(tm));

  // symplectic form at the default spacing and at half of it
  const double h0 = o.spacing > 0 ? o.spacing : std::min(o.radius, o.second_radius) / 16;
  const auto s1 = symplectic_time_invariance(a, b, o.t_list, {o.extent, h0});
  const auto s2 = symplectic_time_invariance(a, b, o.t_list, {o.extent, h0 / 2});
  Table ts{"wave-appendix_symplectic.csv", {"h", "t", "S", "scale"}, {}};
  for (const auto* s : {&s1, &s2})
    for (const auto& x : s->rows) ts.rows.push_back(row({s->h, x.t, x.S, x.scale}));
  r.tables.push_back(std::move(ts));
  r.checks.push_back(at_most("symplectic drift (relative)", s1.relative_drift, o.drift_tolerance));
  r.checks.push_back(at_least("drift improvement on halving h", s1.max_drift / s2.max_drift, o.halving_improvement));
  r.results["symplectic"] = {{"h", s1.h},
                             {"relative_drift", s1.relative_drift},
                             {"relative_drift_half", s2.relative_drift},
                             {"S0", s1.rows.front().S},
                             {"smeared", s1.smeared}};

  // support of the inverse transforms
  const auto& f = c.fields.at(o.support_field);
  const double rf = f.support.radius;
  const auto c1 = bj_support_check(f, rf), c2 = bj_support_check(f, 2 * rf);
  Table tb{"wave-appendix_support.csv", {"probe_radius", "outside_fraction", "total"}, {}};
  tb.rows.push_back(row({rf, c1.outside_fraction, c1.total}));
  tb.rows.push_back(row({2 * rf, c2.outside_fraction, c2.total}));
  r.tables.push_back(std::move(tb));
  r.checks.push_back(at_most("outside fraction at r", c1.outside_fraction, o.support_tolerance));
  r.checks.push_back(at_most("outside fraction at 2r", c2.outside_fraction, o.support_tolerance_double));

  // localization radius u + T of the dressing
  c.profile.validate_normalized();
  const double R = c.profile.time_shift + o.lemma_T;
  auto probe = [](double t0, const Vec3& x) {
    testfields::Term e;
    e.time = testfields::make_bump(t0, 0.45, 1);
    e.space.center = x;
    e.space.halfwidth = 0.45;
    e.direction = {0.3, 0, 1};
    return testfields::make_pair({e}, {{t0, x}, 1});
  };
  Table tl{"wave-appendix_lemma.csv", {"route", "T", "sigma", "scale", "relative"}, {}};
  struct P {
    testfields::TestFieldPair f;
    bool strict;
  };
  for (const auto& [pf, strict] : {P{probe(0, {R + 5, 0, 0}), true}, P{probe(5, {0, 0, 0}), true},
                                   P{probe(-R, {0.5, 0, 0}), false}}) {
    const auto x = lemma_a2_radius_check(c.profile, o.lemma_T, pf, c.quadrature, strict);
    const double rel = x.scale > 0 ? std::abs(x.sigma) / x.scale : 0;
    tl.rows.push_back({to_string(x.route), fmt(o.lemma_T), fmt(x.sigma), fmt(x.scale), fmt(rel)});
    if (x.route != ProbeRoute::unconstrained)
      r.checks.push_back(at_most(std::string("radius u+T, ") + to_string(x.route) + " probe", rel, o.lemma_tolerance));
  }
  r.tables.push_back(std::move(tl));
}

json input_common(const config::ScenarioConfig& c) {
  const auto& p = c.profile;
  return {{"coupling", p.coupling}, {"uv_cutoff", p.uv_cutoff}, {"velocity", vec(p.velocity)},
          {"time_shift", p.time_shift}, {"bump_radius", p.bump_radius}, {"g0", p.g0}};
}

}  // namespace

StudyReport run_study(const config::ScenarioConfig& c, const config::Study& s) {
  StudyReport r;
  r.name = s.name;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    if (s.name == "ir-divergence")
      ir_divergence(c, s.ir, r);
    else if (s.name == "superselection-slope")
      superselection(c, s.slope, r);
    else if (s.name == "difference-norm")
      difference_norm(c, s.diff, r);
    else if (s.name == "huyghens")
      huyghens(c, s.huyghens, r);
    else if (s.name == "limit-T")
      limit_T(c, s.limit, r);
    else if (s.name == "weyl-laws")
      weyl_laws(c, s.weyl, r);
    else if (s.name == "locality")
      locality(c, s.locality, r);
    else if (s.name == "wave-appendix")
      wave_appendix(c, s.wave, r);
    else
      throw InvalidParameter("unknown study " + s.name);
  } catch (const std::exception& e) {
    r.error = e.what();
  }
  r.input["profile"] = input_common(c);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

RunReport run_studies(const config::ScenarioConfig& c, std::ostream* log) {
  RunReport rep;
  for (const auto& s : c.studies) {
    if (log) *log << "[" << s.name << "] running\n" << std::flush;
    rep.studies.push_back(run_study(c, s));
    const auto& r = rep.studies.back();
    if (log) {
      for (const auto& ck : r.checks)
        *log << "  " << (ck.pass ? "ok   " : "FAIL ") << ck.name << " = " << fmt(ck.value) << " (" << ck.relation
             << " " << fmt(ck.threshold) << ")\n";
      if (!r.error.empty()) *log << "  error: " << r.error << "\n";
      *log << "[" << s.name << "] " << (r.pass() ? "pass" : "FAIL") << " in " << std::round(r.seconds * 10) / 10
           << " s\n"
           << std::flush;
    }
  }
  return rep;
}

json to_json(const RunReport& r) {
  json j;
  j["pass"] = r.pass();
  j["studies"] = json::array();
  for (const auto& s : r.studies) {
    json js{{"name", s.name}, {"pass", s.pass()}, {"seconds", s.seconds}, {"input", s.input}};
    if (!s.results.is_null()) js["results"] = s.results;
    js["checks"] = json::array();
    for (const auto& c : s.checks)
      js["checks"].push_back(
          {{"name", c.name}, {"value", c.value}, {"relation", c.relation}, {"threshold", c.threshold}, {"pass", c.pass}});
    js["tables"] = json::array();
    for (const auto& t : s.tables) js["tables"].push_back(t.file);
    if (!s.error.empty()) js["error"] = s.error;
    j["studies"].push_back(js);
  }
  return j;
}

void write_outputs(const RunReport& r, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  {
    std::ofstream out(dir / "report.json");
    if (!out) throw Error("cannot write " + (dir / "report.json").string());
    out << to_json(r).dump(2) << "\n";
  }
  for (const auto& s : r.studies)
    for (const auto& t : s.tables) {
      std::ofstream out(dir / t.file);
      if (!out) throw Error("cannot write " + (dir / t.file).string());
      for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
      out << "\n";
      for (const auto& rw : t.rows) {
        for (std::size_t i = 0; i < rw.size(); ++i) out << (i ? "," : "") << rw[i];
        out << "\n";
      }
      if (!out) throw Error("error writing " + (dir / t.file).string());
    }
}

std::filesystem::path output_directory(const config::ScenarioConfig& c) {
  if (const char* env = std::getenv("IRLC_OUTPUT_DIR"); env && *env) return env;
  return c.output_dir;
}

}  // namespace irlc::runner
