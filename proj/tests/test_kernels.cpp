#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "irlc/kernels.hpp"

using namespace irlc::kernels;

namespace {
struct Data {
  std::vector<double> w, a[6], b[6];
  CVecSoA sa, sb;
  explicit Data(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1, 1);
    w.resize(n);
    for (auto& x : w) x = std::abs(u(rng));
    for (int c = 0; c < 6; ++c) {
      a[c].resize(n);
      b[c].resize(n);
      for (std::size_t j = 0; j < n; ++j) {
        a[c][j] = u(rng);
        b[c][j] = u(rng);
      }
    }
    for (int c = 0; c < 3; ++c) {
      sa.re[c] = a[c].data();
      sa.im[c] = a[c + 3].data();
      sb.re[c] = b[c].data();
      sb.im[c] = b[c + 3].data();
    }
  }
};

PairSums naive(const Data& d, std::size_t n) {
  PairSums s;
  for (std::size_t j = 0; j < n; ++j) {
    double re = 0, im = 0;
    for (int c = 0; c < 3; ++c) {
      const double ar = d.a[c][j], ai = d.a[c + 3][j], br = d.b[c][j], bi = d.b[c + 3][j];
      re += ar * br + ai * bi;
      im += ar * bi - ai * br;
    }
    s.re += d.w[j] * re;
    s.im += d.w[j] * im;
    s.abs += d.w[j] * std::hypot(re, im);
  }
  return s;
}
}  // namespace

TEST_CASE("scalar conj-dot matches a direct loop") {
  for (std::size_t n : {0u, 1u, 3u, 4u, 7u, 64u, 1001u}) {
    Data d(n, n + 1);
    const auto r = scalar::weighted_cdot(d.w.data(), d.sa, d.sb, n);
    const auto o = naive(d, n);
    CHECK(r.re == doctest::Approx(o.re).epsilon(1e-13));
    CHECK(r.im == doctest::Approx(o.im).epsilon(1e-13));
    CHECK(r.abs == doctest::Approx(o.abs).epsilon(1e-13));
  }
}

TEST_CASE("avx2 kernels agree with the scalar reference") {
  if (!avx2_available()) return;
  for (std::size_t n : {0u, 1u, 2u, 3u, 4u, 5u, 8u, 13u, 256u, 4099u}) {
    Data d(n, 100 + n);
    const auto s = scalar::weighted_cdot(d.w.data(), d.sa, d.sb, n);
    const auto v = avx2::weighted_cdot(d.w.data(), d.sa, d.sb, n);
    const double scale = std::max(1.0, s.abs);
    CHECK(std::abs(s.re - v.re) <= 1e-13 * scale);
    CHECK(std::abs(s.im - v.im) <= 1e-13 * scale);
    CHECK(std::abs(s.abs - v.abs) <= 1e-13 * scale);
    const double ds = scalar::weighted_dot(d.a[0].data(), d.b[0].data(), n);
    const double dv = avx2::weighted_dot(d.a[0].data(), d.b[0].data(), n);
    CHECK(std::abs(ds - dv) <= 1e-13 * std::max(1.0, double(n)));
  }
}

TEST_CASE("forcing the scalar path is honoured") {
  const Isa before = active_isa();
  force_isa(Isa::scalar);
  CHECK(active_isa() == Isa::scalar);
  Data d(17, 3);
  const auto r = weighted_cdot(d.w.data(), d.sa, d.sb, 17);
  const auto s = scalar::weighted_cdot(d.w.data(), d.sa, d.sb, 17);
  CHECK(r.re == s.re);
  CHECK(r.im == s.im);
  force_isa(before);
  CHECK(std::string(isa_name(Isa::avx2)) == "avx2");
}
