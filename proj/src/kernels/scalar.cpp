#include "irlc/kernels.hpp"

#include <cmath>

namespace irlc::kernels::scalar {

PairSums weighted_cdot(const double* w, const CVecSoA& a, const CVecSoA& b, std::size_t n) {
  PairSums s;
  for (std::size_t j = 0; j < n; ++j) {
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
  double s = 0;
  for (std::size_t j = 0; j < n; ++j) s += a[j] * b[j];
  return s;
}

}  // namespace irlc::kernels::scalar
