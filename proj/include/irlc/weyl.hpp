#pragma once

#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "irlc/photon.hpp"
#include "irlc/profiles.hpp"
#include "irlc/quadrature.hpp"
#include "irlc/testfields.hpp"

namespace irlc::weyl {

using photon::PhotonWaveFunction;
using quad::QuadratureSpec;

// A pool of wave functions ("atoms") with a lazily filled Gram matrix
// G(a, b) = <atom a, atom b>. Labels are finite combinations of atoms, so every
// inner product between labels reduces to the same memoized pairings.
class LabelSpace : public std::enable_shared_from_this<LabelSpace> {
 public:
  static std::shared_ptr<LabelSpace> create(QuadratureSpec q = {});

  std::size_t add(PhotonWaveFunction f);
  const PhotonWaveFunction& atom(std::size_t i) const;
  std::size_t size() const;
  const QuadratureSpec& spec() const { return q_; }

  cplx gram(std::size_t a, std::size_t b);
  // fill the missing entries (a, b), one shared node set per column
  void prefetch(const std::vector<std::pair<std::size_t, std::size_t>>& entries);

 private:
  explicit LabelSpace(QuadratureSpec q) : q_(std::move(q)) {}
  QuadratureSpec q_;
  mutable std::mutex m_;
  std::vector<PhotonWaveFunction> atoms_;
  std::map<std::pair<std::size_t, std::size_t>, cplx> gram_;  // a <= b
};

class Label {
 public:
  Label() = default;
  explicit Label(std::shared_ptr<LabelSpace> space) : space_(std::move(space)) {}  // zero
  Label(std::shared_ptr<LabelSpace> space, std::size_t atom, cplx c = 1.0);

  Label operator+(const Label& o) const;
  Label operator-(const Label& o) const;
  Label operator-() const { return scaled(-1.0); }
  Label scaled(cplx a) const;

  bool is_zero() const;
  // every atom carrying weight is square integrable on its own
  bool proper() const;
  const std::map<std::size_t, cplx>& coefficients() const { return c_; }
  const std::shared_ptr<LabelSpace>& space() const { return space_; }
  PhotonWaveFunction wavefunction() const;

 private:
  std::shared_ptr<LabelSpace> space_;
  std::map<std::size_t, cplx> c_;
};

cplx inner(const Label& a, const Label& b);
double sigma(const Label& a, const Label& b);
// int_{|k| >= cutoff} |label|^2 d^3k, pairings computed with the given lower cutoff
double cutoff_norm_squared(const Label& l, double cutoff);

double canonical_phase(double phase);  // into [0, 2 pi)
double phase_distance(double a, double b);  // on the circle

struct CoherentAutomorphism;

class WeylElement {
 public:
  // throws InvalidParameter unless the label is square integrable
  explicit WeylElement(Label label, double phase = 0);
  static WeylElement identity(std::shared_ptr<LabelSpace> space);

  const Label& label() const { return label_; }
  double phase() const { return phase_; }

 private:
  friend std::optional<WeylElement> inner_element(const CoherentAutomorphism&);
  friend WeylElement multiply(const WeylElement&, const WeylElement&);
  friend WeylElement adjoint(const WeylElement&);
  friend WeylElement apply_automorphism(const CoherentAutomorphism&, const WeylElement&);
  struct Unchecked {};
  WeylElement(Label label, double phase, Unchecked);
  Label label_;
  double phase_ = 0;
};

WeylElement multiply(const WeylElement& a, const WeylElement& b);
WeylElement adjoint(const WeylElement& w);
bool same_element(const WeylElement& a, const WeylElement& b, double tol);

struct CoherentAutomorphism {
  Label profile;
};

// phase shifted by -2 Im <-i v, f>
WeylElement apply_automorphism(const CoherentAutomorphism& alpha, const WeylElement& w);
CoherentAutomorphism compose_difference(const CoherentAutomorphism& a, const CoherentAutomorphism& b);
bool is_identity(const CoherentAutomorphism& a);

struct InnerCheck {
  bool square_integrable = false;
  std::vector<double> cutoffs, norms;  // empty when decided from metadata
};
// proper profile, or cutoff norms Cauchy within 1% over cutoffs 1e-2, 1e-4, 1e-6
InnerCheck check_inner(const CoherentAutomorphism& a);
// W(-i v) when alpha = Ad W(-i v)
std::optional<WeylElement> inner_element(const CoherentAutomorphism& a);

// exp(-2 i Im <-i v_P, f>)
cplx state_phase(const profiles::DressingParams& p, const testfields::TestFieldPair& f, const QuadratureSpec& q);

}  // namespace irlc::weyl
