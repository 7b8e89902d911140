#include "irlc/config.hpp"

#include <yaml-cpp/yaml.h>

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "irlc/default_config.hpp"
#include "irlc/errors.hpp"

namespace irlc::config {

const std::vector<std::string>& study_names() {
  static const std::vector<std::string> names{"ir-divergence", "superselection-slope", "difference-norm", "huyghens",
                                              "limit-T",       "weyl-laws",            "locality",        "wave-appendix"};
  return names;
}

std::string defaults_yaml() { return kDefaultConfig; }

namespace {

int line_of(const YAML::Node& n) { return n.Mark().line >= 0 ? n.Mark().line + 1 : 0; }

[[noreturn]] void fail(const YAML::Node& n, const std::string& what) { throw ConfigError(what, line_of(n)); }

void only_keys(const YAML::Node& n, const std::set<std::string>& allowed, const std::string& where) {
  if (!n.IsMap()) fail(n, where + ": expected a mapping");
  for (const auto& kv : n) {
    const auto key = kv.first.as<std::string>();
    if (!allowed.count(key)) fail(kv.first, where + ": unknown key '" + key + "'");
  }
}

// the entry under n whose key is named in a validation message, else n itself
YAML::Node named_in(const YAML::Node& n, const std::string& msg) {
  if (!n.IsMap()) return n;
  for (const auto& kv : n) {
    if (kv.second.IsMap()) {
      const auto inner = named_in(kv.second, msg);
      if (inner != kv.second) return inner;
    }
    const auto key = kv.first.as<std::string>();
    const auto at = msg.find(key);
    if (at == std::string::npos) continue;
    const auto end = at + key.size();
    const auto word = [&](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; };
    if ((at == 0 || !word(msg[at - 1])) && (end == msg.size() || !word(msg[end]))) return kv.second;
  }
  return n;
}

template <class T>
T scalar(const YAML::Node& n, const std::string& what) {
  try {
    return n.as<T>();
  } catch (const YAML::Exception&) {
    fail(n, what + ": wrong type");
  }
}

template <class T>
void read(const YAML::Node& parent, const char* key, T& out) {
  if (const auto n = parent[key]) out = scalar<T>(n, key);
}

Vec3 vec3(const YAML::Node& n, const std::string& what) {
  if (!n.IsSequence() || n.size() != 3) fail(n, what + ": expected [x, y, z]");
  return {scalar<double>(n[0], what), scalar<double>(n[1], what), scalar<double>(n[2], what)};
}

std::vector<double> list(const YAML::Node& n, const std::string& what) {
  if (!n.IsSequence()) fail(n, what + ": expected a list");
  std::vector<double> v;
  for (const auto& x : n) v.push_back(scalar<double>(x, what));
  return v;
}

void read_list(const YAML::Node& parent, const char* key, std::vector<double>& out) {
  if (const auto n = parent[key]) out = list(n, key);
}

profiles::DressingParams parse_profile(const YAML::Node& n) {
  only_keys(n, {"coupling", "uv_cutoff", "ir_cutoff", "velocity", "v_max", "bump_radius", "time_shift", "g0"},
            "profile");
  profiles::DressingParams p;
  read(n, "coupling", p.coupling);
  read(n, "uv_cutoff", p.uv_cutoff);
  read(n, "ir_cutoff", p.ir_cutoff);
  read(n, "v_max", p.v_max);
  read(n, "bump_radius", p.bump_radius);
  read(n, "time_shift", p.time_shift);
  read(n, "g0", p.g0);
  if (n["velocity"]) p.velocity = vec3(n["velocity"], "velocity");
  try {
    p.validate();
  } catch (const InvalidParameter& e) {
    const auto at = n["velocity"] && std::string(e.what()).find("velocity") != std::string::npos ? n["velocity"] : n;
    fail(at, std::string("profile: ") + e.what());
  }
  return p;
}

quad::QuadratureSpec parse_quadrature(const YAML::Node& n) {
  only_keys(n, {"radial", "angular", "oscillation", "tolerance", "lower_cutoff", "upper_cutoff"}, "quadrature");
  quad::QuadratureSpec q;
  read(n, "lower_cutoff", q.lower_cutoff);
  read(n, "upper_cutoff", q.upper_cutoff);
  if (const auto r = n["radial"]) {
    only_keys(r, {"r_min", "r_max", "knee", "panels_per_decade", "gauss_order", "max_panel", "tail_tolerance"},
              "quadrature.radial");
    read(r, "r_min", q.radial.r_min);
    read(r, "r_max", q.radial.r_max);
    read(r, "knee", q.radial.knee);
    read(r, "panels_per_decade", q.radial.panels_per_decade);
    read(r, "gauss_order", q.radial.gauss_order);
    read(r, "max_panel", q.radial.max_panel);
    read(r, "tail_tolerance", q.radial.tail_tolerance);
  }
  if (const auto a = n["angular"]) {
    only_keys(a, {"polar_nodes", "azimuthal_nodes", "nodes_per_feature", "max_nodes"}, "quadrature.angular");
    read(a, "polar_nodes", q.angular.polar_nodes);
    read(a, "azimuthal_nodes", q.angular.azimuthal_nodes);
    read(a, "nodes_per_feature", q.angular.nodes_per_feature);
    read(a, "max_nodes", q.angular.max_nodes);
  }
  if (const auto o = n["oscillation"]) {
    only_keys(o, {"enabled", "nodes_per_wavelength"}, "quadrature.oscillation");
    read(o, "enabled", q.oscillation.enabled);
    read(o, "nodes_per_wavelength", q.oscillation.nodes_per_wavelength);
  }
  if (const auto t = n["tolerance"]) {
    only_keys(t, {"absolute", "relative", "max_refinements", "adaptive"}, "quadrature.tolerance");
    read(t, "absolute", q.tolerance.absolute);
    read(t, "relative", q.tolerance.relative);
    read(t, "max_refinements", q.tolerance.max_refinements);
    read(t, "adaptive", q.tolerance.adaptive);
  }
  try {
    q.validate();
  } catch (const InvalidParameter& e) {
    fail(named_in(n, e.what()), e.what());
  }
  return q;
}

testfields::TestFieldPair parse_field(const YAML::Node& n, const std::string& name) {
  const std::string where = "test_fields." + name;
  only_keys(n, {"support", "terms"}, where);
  const auto s = n["support"];
  if (!s) fail(n, where + ": missing support");
  only_keys(s, {"center", "radius"}, where + ".support");
  geometry::DoubleCone dc;
  if (const auto c = s["center"]) {
    if (!c.IsSequence() || c.size() != 4) fail(c, where + ".support.center: expected [t, x, y, z]");
    dc.center = {scalar<double>(c[0], "center"), {scalar<double>(c[1], "center"), scalar<double>(c[2], "center"),
                                                  scalar<double>(c[3], "center")}};
  }
  read(s, "radius", dc.radius);
  const auto ts = n["terms"];
  if (!ts || !ts.IsSequence() || ts.size() == 0) fail(n, where + ": needs a non-empty terms list");
  std::vector<testfields::Term> terms;
  for (const auto& tn : ts) {
    only_keys(tn, {"channel", "direction", "time", "space"}, where + ".terms");
    testfields::Term t;
    if (const auto c = tn["channel"]) {
      const auto v = scalar<std::string>(c, "channel");
      if (v == "electric")
        t.channel = testfields::Channel::electric;
      else if (v == "magnetic")
        t.channel = testfields::Channel::magnetic;
      else
        fail(c, where + ": channel must be electric or magnetic");
    }
    if (tn["direction"]) t.direction = vec3(tn["direction"], "direction");
    if (norm(t.direction) == 0) fail(tn, where + ": direction must be nonzero");
    const auto tm = tn["time"];
    if (!tm) fail(tn, where + ": term needs a time profile");
    only_keys(tm, {"center", "halfwidth", "amplitude"}, where + ".time");
    read(tm, "center", t.time.center);
    read(tm, "halfwidth", t.time.halfwidth);
    read(tm, "amplitude", t.time.amplitude);
    const auto sp = tn["space"];
    if (!sp) fail(tn, where + ": term needs a space profile");
    only_keys(sp, {"kind", "center", "radius", "widths"}, where + ".space");
    const auto kind = sp["kind"] ? scalar<std::string>(sp["kind"], "kind") : std::string("radial");
    if (sp["center"]) t.space.center = vec3(sp["center"], "space.center");
    if (kind == "radial") {
      t.space.kind = testfields::SpaceKind::radial;
      read(sp, "radius", t.space.halfwidth);
    } else if (kind == "product") {
      t.space.kind = testfields::SpaceKind::product;
      if (!sp["widths"]) fail(sp, where + ": product space bump needs widths");
      const Vec3 w = vec3(sp["widths"], "widths");
      t.space.widths = {w.x, w.y, w.z};
    } else {
      fail(sp, where + ": space kind must be radial or product");
    }
    terms.push_back(t);
  }
  try {
    return testfields::make_pair(std::move(terms), dc);
  } catch (const InvalidParameter& e) {
    fail(n, where + ": " + e.what());
  }
}

std::pair<double, double> pair_of(const YAML::Node& n, const std::string& what) {
  const auto v = list(n, what);
  if (v.size() != 2) fail(n, what + ": expected two values");
  return {v[0], v[1]};
}

Study parse_study(const YAML::Node& n, const std::map<std::string, testfields::TestFieldPair>& fields) {
  if (!n.IsMap() || !n["name"]) fail(n, "study entries need a name");
  Study s;
  s.name = scalar<std::string>(n["name"], "name");
  s.line = line_of(n);
  const std::string where = "study " + s.name;
  auto need_field = [&](const YAML::Node& at, const std::string& f) {
    if (!fields.count(f)) fail(at, where + ": unknown test field '" + f + "'");
  };
  if (s.name == "ir-divergence") {
    only_keys(n, {"name", "velocities", "sigma_lo", "slope_tolerance", "zero_tolerance"}, where);
    if (const auto v = n["velocities"]) {
      if (!v.IsSequence()) fail(v, where + ": velocities must be a list");
      s.ir.velocities.clear();
      for (const auto& w : v) s.ir.velocities.push_back(vec3(w, "velocities"));
    }
    read_list(n, "sigma_lo", s.ir.sigma_lo);
    read(n, "slope_tolerance", s.ir.slope_tolerance);
    read(n, "zero_tolerance", s.ir.zero_tolerance);
  } else if (s.name == "superselection-slope") {
    only_keys(n, {"name", "pairs", "sigma_lo", "slope_tolerance", "zero_tolerance"}, where);
    if (const auto ps = n["pairs"]) {
      if (!ps.IsSequence()) fail(ps, where + ": pairs must be a list");
      s.slope.pairs.clear();
      for (const auto& p : ps) {
        if (!p.IsSequence() || p.size() != 2) fail(p, where + ": each pair is [w, w']");
        s.slope.pairs.push_back({vec3(p[0], "pairs"), vec3(p[1], "pairs")});
      }
    }
    read_list(n, "sigma_lo", s.slope.sigma_lo);
    read(n, "slope_tolerance", s.slope.slope_tolerance);
    read(n, "zero_tolerance", s.slope.zero_tolerance);
  } else if (s.name == "difference-norm") {
    only_keys(n, {"name", "sigma_probe", "cauchy_tolerance", "violation_g0", "violation_sigma"}, where);
    read_list(n, "sigma_probe", s.diff.sigma_probe);
    read(n, "cauchy_tolerance", s.diff.cauchy_tolerance);
    read(n, "violation_g0", s.diff.violation_g0);
    read_list(n, "violation_sigma", s.diff.violation_sigma);
  } else if (s.name == "huyghens") {
    only_keys(n, {"name", "field", "T_list", "include_limit", "tolerance"}, where);
    read(n, "field", s.huyghens.field);
    need_field(n["field"] ? n["field"] : n, s.huyghens.field);
    read_list(n, "T_list", s.huyghens.T_list);
    read(n, "include_limit", s.huyghens.include_limit);
    read(n, "tolerance", s.huyghens.tolerance);
  } else if (s.name == "limit-T") {
    only_keys(n, {"name", "field", "T_list", "identity_tolerance", "window", "bounded_factor", "ratio_T",
                  "term2_ratio", "region_T"},
              where);
    read(n, "field", s.limit.field);
    need_field(n["field"] ? n["field"] : n, s.limit.field);
    read_list(n, "T_list", s.limit.T_list);
    read(n, "identity_tolerance", s.limit.identity_tolerance);
    if (n["window"]) std::tie(s.limit.window_lo, s.limit.window_hi) = pair_of(n["window"], "window");
    read(n, "bounded_factor", s.limit.bounded_factor);
    if (n["ratio_T"]) std::tie(s.limit.ratio_T_ref, s.limit.ratio_T) = pair_of(n["ratio_T"], "ratio_T");
    read(n, "term2_ratio", s.limit.term2_ratio);
    read_list(n, "region_T", s.limit.region_T);
  } else if (s.name == "weyl-laws") {
    only_keys(n, {"name", "labels", "atoms", "seed", "tolerance", "additivity_labels", "additivity_tolerance"},
              where);
    read(n, "labels", s.weyl.labels);
    read(n, "atoms", s.weyl.atoms);
    read(n, "seed", s.weyl.seed);
    read(n, "tolerance", s.weyl.tolerance);
    read(n, "additivity_labels", s.weyl.additivity_labels);
    read(n, "additivity_tolerance", s.weyl.additivity_tolerance);
    if (s.weyl.labels < 3 || s.weyl.atoms < 2) fail(n, where + ": needs at least 3 labels and 2 atoms");
  } else if (s.name == "locality") {
    only_keys(n, {"name", "pairs", "tolerance"}, where);
    read(n, "tolerance", s.locality.tolerance);
    if (const auto ps = n["pairs"]) {
      if (!ps.IsSequence()) fail(ps, where + ": pairs must be a list");
      for (const auto& p : ps) {
        if (!p.IsSequence() || p.size() != 2) fail(p, where + ": each pair is [field, field]");
        LocalityPair lp{scalar<std::string>(p[0], "pairs"), scalar<std::string>(p[1], "pairs")};
        need_field(p, lp.first);
        need_field(p, lp.second);
        s.locality.pairs.push_back(lp);
      }
    }
  } else if (s.name == "wave-appendix") {
    only_keys(n, {"name", "radius", "second_radius", "t_list", "extent", "spacing", "drift_tolerance",
                  "halving_improvement", "mass_tolerance", "fd_dt", "support_field", "support_tolerance",
                  "support_tolerance_double", "lemma_T", "lemma_tolerance"},
              where);
    auto& w = s.wave;
    read(n, "radius", w.radius);
    read(n, "second_radius", w.second_radius);
    read_list(n, "t_list", w.t_list);
    read(n, "extent", w.extent);
    read(n, "spacing", w.spacing);
    read(n, "drift_tolerance", w.drift_tolerance);
    read(n, "halving_improvement", w.halving_improvement);
    read(n, "mass_tolerance", w.mass_tolerance);
    read(n, "fd_dt", w.fd_dt);
    read(n, "support_field", w.support_field);
    need_field(n["support_field"] ? n["support_field"] : n, w.support_field);
    read(n, "support_tolerance", w.support_tolerance);
    read(n, "support_tolerance_double", w.support_tolerance_double);
    read(n, "lemma_T", w.lemma_T);
    read(n, "lemma_tolerance", w.lemma_tolerance);
    if (!(w.radius > 0 && w.second_radius > 0)) fail(n, where + ": radii must be > 0");
    if (w.t_list.empty()) fail(n, where + ": t_list must not be empty");
  } else {
    fail(n["name"], "unknown study '" + s.name + "'");
  }
  return s;
}

}  // namespace

ScenarioConfig parse(const std::string& text) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ConfigError(std::string("YAML syntax: ") + e.msg, e.mark.line >= 0 ? e.mark.line + 1 : 0);
  }
  ScenarioConfig c;
  if (!root || root.IsNull()) return c;
  only_keys(root, {"output_dir", "profile", "quadrature", "test_fields", "studies"}, "config");
  read(root, "output_dir", c.output_dir);
  if (const auto p = root["profile"]) c.profile = parse_profile(p);
  if (const auto q = root["quadrature"]) c.quadrature = parse_quadrature(q);
  if (const auto fs = root["test_fields"]) {
    if (!fs.IsMap()) fail(fs, "test_fields: expected a mapping of named fields");
    for (const auto& kv : fs) {
      const auto name = kv.first.as<std::string>();
      c.fields.emplace(name, parse_field(kv.second, name));
    }
  }
  if (const auto ss = root["studies"]) {
    if (!ss.IsSequence()) fail(ss, "studies: expected a list");
    std::map<std::string, Study> byname;
    for (const auto& sn : ss) {
      Study s = parse_study(sn, c.fields);
      if (byname.count(s.name)) fail(sn, "study '" + s.name + "' listed twice");
      byname.emplace(s.name, std::move(s));
    }
    for (const auto& name : study_names())
      if (auto it = byname.find(name); it != byname.end()) c.studies.push_back(std::move(it->second));
  }
  return c;
}

ScenarioConfig load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path, 0);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

}  // namespace irlc::config
