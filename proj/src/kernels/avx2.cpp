#include "irlc/kernels.hpp"

#include <immintrin.h>

#include <cmath>

namespace irlc::kernels::avx2 {

namespace {

double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d sh = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}

}  // namespace

PairSums weighted_cdot(const double* w, const CVecSoA& a, const CVecSoA& b, std::size_t n) {
  __m256d sre = _mm256_setzero_pd();
  __m256d sim = _mm256_setzero_pd();
  __m256d sabs = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    __m256d re = _mm256_setzero_pd();
    __m256d im = _mm256_setzero_pd();
    for (int c = 0; c < 3; ++c) {
      const __m256d ar = _mm256_loadu_pd(a.re[c] + j);
      const __m256d ai = _mm256_loadu_pd(a.im[c] + j);
      const __m256d br = _mm256_loadu_pd(b.re[c] + j);
      const __m256d bi = _mm256_loadu_pd(b.im[c] + j);
      re = _mm256_fmadd_pd(ar, br, re);
      re = _mm256_fmadd_pd(ai, bi, re);
      im = _mm256_fmadd_pd(ar, bi, im);
      im = _mm256_fnmadd_pd(ai, br, im);
    }
    const __m256d wv = _mm256_loadu_pd(w + j);
    sre = _mm256_fmadd_pd(wv, re, sre);
    sim = _mm256_fmadd_pd(wv, im, sim);
    const __m256d mag = _mm256_sqrt_pd(_mm256_fmadd_pd(re, re, _mm256_mul_pd(im, im)));
    sabs = _mm256_fmadd_pd(wv, mag, sabs);
  }
  PairSums s{hsum(sre), hsum(sim), hsum(sabs)};
  for (; j < n; ++j) {
    double re = 0, im = 0;
    for (int c = 0; c < 3; ++c) {
      const double ar = a.re[c][j], ai = a.im[c][j];
      const double br = b.re[c][j], bi = b.im[c][j];
      re += ar * br + ai * bi;
      im += ar * bi - ai * br;
    }
    s.re += w[j] * re;
    s.im += w[j] * im;
    s.abs += w[j] * std::sqrt(re * re + im * im);
  }
  return s;
}

double weighted_dot(const double* a, const double* b, std::size_t n) {
  __m256d s0 = _mm256_setzero_pd();
  __m256d s1 = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 8 <= n; j += 8) {
    s0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + j), _mm256_loadu_pd(b + j), s0);
    s1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + j + 4), _mm256_loadu_pd(b + j + 4), s1);
  }
  double s = hsum(_mm256_add_pd(s0, s1));
  for (; j < n; ++j) s += a[j] * b[j];
  return s;
}

}  // namespace irlc::kernels::avx2
