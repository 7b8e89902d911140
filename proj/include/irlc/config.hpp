#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "irlc/profiles.hpp"
#include "irlc/quadrature.hpp"
#include "irlc/testfields.hpp"
#include "irlc/vec3.hpp"

namespace irlc::config {

// canonical execution order
const std::vector<std::string>& study_names();

struct IrDivergence {
  std::vector<Vec3> velocities{{0, 0, 0.1}, {0, 0, 0.3}, {0, 0, 0}};
  std::vector<double> sigma_lo{1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
  double slope_tolerance = 0.02;  // relative to the angular oracle
  double zero_tolerance = 1e-12;  // absolute, for w = 0
};

struct SuperselectionSlope {
  std::vector<std::pair<Vec3, Vec3>> pairs{{{0, 0, 0.1}, {0, 0, 0.3}}, {{0.2, 0, 0}, {0, 0, 0.3}},
                                           {{0, 0, 0.3}, {0, 0, 0.3}}};
  std::vector<double> sigma_lo{1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
  double slope_tolerance = 0.02;
  double zero_tolerance = 1e-12;
};

struct DifferenceNorm {
  std::vector<double> sigma_probe{1e-2, 1e-4, 1e-6};
  double cauchy_tolerance = 0.01;
  double violation_g0 = 2.0;
  std::vector<double> violation_sigma{1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
};

struct Huyghens {
  std::string field = "forward_probe";
  std::vector<double> T_list{1, 10, 100};
  bool include_limit = true;
  double tolerance = 1e-5;  // relative to the pairing scale
};

struct LimitT {
  std::string field = "forward_probe";
  std::vector<double> T_list{1, 3, 10, 30, 100, 300, 1000};
  double identity_tolerance = 1e-10;  // relative to the pairing scale
  double window_lo = 10, window_hi = 1000;
  double bounded_factor = 10;
  double ratio_T_ref = 1, ratio_T = 100;
  double term2_ratio = 0.05;
  std::vector<double> region_T{3};
};

struct WeylLaws {
  int labels = 100;
  int atoms = 6;
  std::uint64_t seed = 20240601;
  double tolerance = 1e-10;
  double additivity_tolerance = 1e-9;
  int additivity_labels = 10;
};

struct LocalityPair {
  std::string first, second;
};
struct Locality {
  std::vector<LocalityPair> pairs;  // empty: built-in set of 5 spacelike + 5 timelike
  double tolerance = 1e-6;
};

struct WaveAppendix {
  double radius = 1.0, second_radius = 0.8;
  std::vector<double> t_list{0, 0.5, 1, 1.5, 2};
  double extent = 0, spacing = 0;  // 0: defaults from the radius
  double drift_tolerance = 1e-6;
  double halving_improvement = 4;
  double mass_tolerance = 1e-6;
  double fd_dt = 1e-2;
  std::string support_field = "bj_field";
  double support_tolerance = 1e-4;         // probe radius r
  double support_tolerance_double = 1e-6;  // probe radius 2r
  double lemma_T = 1;
  double lemma_tolerance = 1e-5;
};

struct Study {
  std::string name;
  int line = 0;
  IrDivergence ir;
  SuperselectionSlope slope;
  DifferenceNorm diff;
  Huyghens huyghens;
  LimitT limit;
  WeylLaws weyl;
  Locality locality;
  WaveAppendix wave;
};

struct ScenarioConfig {
  profiles::DressingParams profile;
  quad::QuadratureSpec quadrature;
  std::map<std::string, testfields::TestFieldPair> fields;
  std::vector<Study> studies;  // canonical order
  std::string output_dir = "irlc-out";
};

ScenarioConfig parse(const std::string& text);  // throws ConfigError with line numbers
ScenarioConfig load(const std::string& path);
std::string defaults_yaml();  // the bundled default scenario

}  // namespace irlc::config
