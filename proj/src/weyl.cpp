#include "irlc/weyl.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "irlc/errors.hpp"
#include "irlc/pairing.hpp"

namespace irlc::weyl {

namespace {
constexpr double two_pi = 2 * std::numbers::pi;
}

std::shared_ptr<LabelSpace> LabelSpace::create(QuadratureSpec q) {
  q.validate();
  return std::shared_ptr<LabelSpace>(new LabelSpace(std::move(q)));
}

std::size_t LabelSpace::add(PhotonWaveFunction f) {
  std::lock_guard lk(m_);
  atoms_.push_back(std::move(f));
  return atoms_.size() - 1;
}

const PhotonWaveFunction& LabelSpace::atom(std::size_t i) const {
  std::lock_guard lk(m_);
  if (i >= atoms_.size()) throw InvalidParameter("unknown atom");
  return atoms_[i];
}

std::size_t LabelSpace::size() const {
  std::lock_guard lk(m_);
  return atoms_.size();
}

cplx LabelSpace::gram(std::size_t a, std::size_t b) {
  const bool swap = a > b;
  const auto key = swap ? std::pair{b, a} : std::pair{a, b};
  {
    std::lock_guard lk(m_);
    if (auto it = gram_.find(key); it != gram_.end()) return swap ? std::conj(it->second) : it->second;
  }
  prefetch({{a, b}});
  std::lock_guard lk(m_);
  const cplx g = gram_.at(key);
  return swap ? std::conj(g) : g;
}

void LabelSpace::prefetch(const std::vector<std::pair<std::size_t, std::size_t>>& entries) {
  std::map<std::size_t, std::vector<std::size_t>> columns;  // b -> rows a <= b still missing
  {
    std::lock_guard lk(m_);
    for (auto [a, b] : entries) {
      if (a > b) std::swap(a, b);
      if (b >= atoms_.size()) throw InvalidParameter("unknown atom");
      if (!gram_.count({a, b})) columns[b].push_back(a);
    }
  }
  for (auto& [b, rows] : columns) {
    std::sort(rows.begin(), rows.end());
    rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
    std::vector<PhotonWaveFunction> vs;
    PhotonWaveFunction fb;
    {
      std::lock_guard lk(m_);
      fb = atoms_[b];
      for (auto a : rows) vs.push_back(atoms_[a]);
    }
    const auto res = pairing::pair_many(vs, fb, q_);
    std::lock_guard lk(m_);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      cplx g = res[i].value;
      if (rows[i] == b) g = g.real();  // <f, f> is real
      gram_.emplace(std::pair{rows[i], b}, g);
    }
  }
}

Label::Label(std::shared_ptr<LabelSpace> space, std::size_t atom, cplx c) : space_(std::move(space)) {
  if (!space_ || atom >= space_->size()) throw InvalidParameter("label atom outside its space");
  if (c != 0.0) c_[atom] = c;
}

static void check_same(const Label& a, const Label& b) {
  if (a.space() && b.space() && a.space() != b.space())
    throw InvalidParameter("labels from different label spaces");
}

Label Label::operator+(const Label& o) const {
  check_same(*this, o);
  Label r = *this;
  if (!r.space_) r.space_ = o.space_;
  for (const auto& [i, c] : o.c_) {
    const cplx s = r.c_[i] + c;
    if (s == 0.0)
      r.c_.erase(i);
    else
      r.c_[i] = s;
  }
  return r;
}

Label Label::operator-(const Label& o) const { return *this + o.scaled(-1.0); }

Label Label::scaled(cplx a) const {
  Label r;
  r.space_ = space_;
  if (a == 0.0) return r;
  for (const auto& [i, c] : c_) r.c_[i] = a * c;
  return r;
}

bool Label::is_zero() const { return c_.empty(); }

bool Label::proper() const {
  for (const auto& [i, c] : c_)
    if (!space_->atom(i).square_integrable()) return false;
  return true;
}

PhotonWaveFunction Label::wavefunction() const {
  PhotonWaveFunction f;
  for (const auto& [i, c] : c_) f = f + space_->atom(i).scaled(c);
  return f;
}

cplx inner(const Label& a, const Label& b) {
  check_same(a, b);
  if (a.is_zero() || b.is_zero()) return 0.0;
  auto& s = *a.space();
  std::vector<std::pair<std::size_t, std::size_t>> need;
  for (const auto& [i, ci] : a.coefficients())
    for (const auto& [j, cj] : b.coefficients()) need.emplace_back(i, j);
  s.prefetch(need);
  cplx sum = 0;
  for (const auto& [i, ci] : a.coefficients())
    for (const auto& [j, cj] : b.coefficients()) sum += std::conj(ci) * cj * s.gram(i, j);
  return sum;
}

double sigma(const Label& a, const Label& b) { return inner(a, b).imag(); }

double cutoff_norm_squared(const Label& l, double cutoff) {
  if (l.is_zero()) return 0;
  QuadratureSpec q = l.space()->spec();
  q.lower_cutoff = cutoff;
  const auto& cs = l.coefficients();
  std::vector<std::size_t> ids;
  std::vector<PhotonWaveFunction> atoms;
  for (const auto& [i, c] : cs) {
    ids.push_back(i);
    atoms.push_back(l.space()->atom(i));
  }
  cplx sum = 0;
  for (std::size_t b = 0; b < ids.size(); ++b) {
    const auto res = pairing::pair_many(std::span(atoms).first(b + 1), atoms[b], q);
    const cplx cb = cs.at(ids[b]);
    for (std::size_t a = 0; a <= b; ++a) {
      const cplx t = std::conj(cs.at(ids[a])) * cb * res[a].value;
      sum += a == b ? cplx(t.real()) : 2.0 * cplx(t.real());
    }
  }
  return sum.real();
}

double canonical_phase(double phase) {
  double r = std::fmod(phase, two_pi);
  if (r < 0) r += two_pi;
  if (r >= two_pi) r = 0;
  return r;
}

double phase_distance(double a, double b) {
  const double d = canonical_phase(a - b);
  return std::min(d, two_pi - d);
}

WeylElement::WeylElement(Label label, double phase) : label_(std::move(label)), phase_(canonical_phase(phase)) {
  if (!label_.proper()) throw InvalidParameter("Weyl label is not square integrable");
}

WeylElement::WeylElement(Label label, double phase, Unchecked)
    : label_(std::move(label)), phase_(canonical_phase(phase)) {}

WeylElement WeylElement::identity(std::shared_ptr<LabelSpace> space) {
  return WeylElement(Label(std::move(space)), 0);
}

// W(f1) W(f2) = exp(-i sigma(f1, f2)) W(f1 + f2)
WeylElement multiply(const WeylElement& a, const WeylElement& b) {
  const double s = sigma(a.label(), b.label());
  return WeylElement(a.label() + b.label(), a.phase() + b.phase() - s, WeylElement::Unchecked{});
}

WeylElement adjoint(const WeylElement& w) {
  return WeylElement(-w.label(), -w.phase(), WeylElement::Unchecked{});
}

bool same_element(const WeylElement& a, const WeylElement& b, double tol) {
  const Label d = a.label() - b.label();
  for (const auto& [i, c] : d.coefficients())
    if (std::abs(c) > tol) return false;
  return phase_distance(a.phase(), b.phase()) <= tol;
}

WeylElement apply_automorphism(const CoherentAutomorphism& alpha, const WeylElement& w) {
  if (alpha.profile.is_zero() || w.label().is_zero()) return w;
  const double shift = -2 * sigma(alpha.profile.scaled(cplx(0, -1)), w.label());
  return WeylElement(w.label(), w.phase() + shift, WeylElement::Unchecked{});
}

CoherentAutomorphism compose_difference(const CoherentAutomorphism& a, const CoherentAutomorphism& b) {
  return {a.profile - b.profile};
}

bool is_identity(const CoherentAutomorphism& a) { return a.profile.is_zero(); }

InnerCheck check_inner(const CoherentAutomorphism& a) {
  InnerCheck r;
  if (a.profile.proper()) {
    r.square_integrable = true;
    return r;
  }
  r.cutoffs = {1e-2, 1e-4, 1e-6};
  for (double c : r.cutoffs) r.norms.push_back(cutoff_norm_squared(a.profile, c));
  const auto [lo, hi] = std::minmax_element(r.norms.begin(), r.norms.end());
  r.square_integrable = std::isfinite(*hi) && *hi - *lo <= 0.01 * std::abs(*hi);
  return r;
}

std::optional<WeylElement> inner_element(const CoherentAutomorphism& a) {
  if (!check_inner(a).square_integrable) return std::nullopt;
  return WeylElement(a.profile.scaled(cplx(0, -1)), 0, WeylElement::Unchecked{});
}

cplx state_phase(const profiles::DressingParams& p, const testfields::TestFieldPair& f, const QuadratureSpec& q) {
  const auto v = profiles::profile_wavefunction(p, profiles::ProfileKind::limit());
  const double s = pairing::pair(v.scaled(cplx(0, -1)), testfields::photon_wavefunction(f), q).value.imag();
  return std::polar(1.0, -2 * s);
}

}  // namespace irlc::weyl
