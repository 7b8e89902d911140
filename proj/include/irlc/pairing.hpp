#pragma once

#include <string>

#include <cstddef>
#include <span>
#include <vector>

#include "irlc/photon.hpp"
#include "irlc/profiles.hpp"
#include "irlc/quadrature.hpp"
#include "irlc/testfields.hpp"

namespace irlc::pairing {

using quad::QuadratureSpec;

struct PairingResult {
  cplx value;
  double error_estimate = 0;
  std::size_t node_count = 0;
  double magnitude = 0;  // int |conj(v).f| d^3k, the scale for relative tolerances
  int level = 0;         // refinement level that produced `value`
};

// the node layout chosen for a pairing
struct Plan {
  double r_lo = 0, r_hi = 0;
  double rate = 0;
  int n_theta = 0, n_phi = 0;
  std::vector<double> breaks;
};

Plan make_plan(std::span<const photon::PhotonWaveFunction> vs, const photon::PhotonWaveFunction& f,
               const QuadratureSpec& q);

// <v, f> = int d^3k conj(v(k)).f(k)
PairingResult pair(const photon::PhotonWaveFunction& v, const photon::PhotonWaveFunction& f,
                   const QuadratureSpec& q);
// several first slots against one f on a single shared node set
std::vector<PairingResult> pair_many(std::span<const photon::PhotonWaveFunction> vs,
                                     const photon::PhotonWaveFunction& f, const QuadratureSpec& q);

// Im <-i v^, f> for f supported in the forward cone
struct DefectResult {
  double defect = 0;
  double scale = 0;  // pairing magnitude
  double error_estimate = 0;
};
DefectResult huyghens_defect(const profiles::DressingParams& p, const testfields::TestFieldPair& f,
                             profiles::ProfileKind kind, const QuadratureSpec& q);

struct LimitRow {
  double T = 0;
  cplx total, vhat, term2, term3;
  double err = 0;
  double scale = 0;
  std::size_t nodes = 0;
};
std::vector<LimitRow> limit_T_study(const profiles::DressingParams& p, const testfields::TestFieldPair& f,
                                    const std::vector<double>& T_list, const QuadratureSpec& q);

// -2 Im <-i (v_P - v^_P), f>
double lemma1_phase(const profiles::DressingParams& p, const testfields::TestFieldPair& f,
                    const QuadratureSpec& q);

struct LocalityCase {
  std::string name;
  testfields::TestFieldPair first, second;
};
// five spacelike pairs, then five with one support in the backward and one in the forward cone
std::vector<LocalityCase> builtin_locality_cases();

enum class LocalityKind { spacelike, cone_pair, other };
const char* to_string(LocalityKind k);

struct LocalityResult {
  LocalityKind kind = LocalityKind::other;
  double sigma = 0;
  double norm1 = 0, norm2 = 0;  // ||f1||, ||f2||
  double relative = 0;          // |sigma| / (||f1|| ||f2||)
  double error_estimate = 0;
};
LocalityResult locality_check(const testfields::TestFieldPair& a, const testfields::TestFieldPair& b,
                              const QuadratureSpec& q);

}  // namespace irlc::pairing
