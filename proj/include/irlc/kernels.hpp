#pragma once

#include <cstddef>

// Data-parallel inner loops. Each kernel has a scalar reference and an AVX2+FMA
// variant; the dispatcher picks one at first use.
namespace irlc::kernels {

// structure-of-arrays view of n complex 3-vectors
struct CVecSoA {
  const double* re[3];
  const double* im[3];
};

struct PairSums {
  double re = 0, im = 0;  // sum_j w_j conj(a_j).b_j
  double abs = 0;         // sum_j w_j |conj(a_j).b_j|
};

enum class Isa { scalar, avx2 };

PairSums weighted_cdot(const double* w, const CVecSoA& a, const CVecSoA& b, std::size_t n);
double weighted_dot(const double* a, const double* b, std::size_t n);

Isa active_isa();
bool avx2_available();
// testing hook; forcing avx2 on a machine without it is ignored
void force_isa(Isa isa);
const char* isa_name(Isa isa);

namespace scalar {
PairSums weighted_cdot(const double* w, const CVecSoA& a, const CVecSoA& b, std::size_t n);
double weighted_dot(const double* a, const double* b, std::size_t n);
}  // namespace scalar

namespace avx2 {
PairSums weighted_cdot(const double* w, const CVecSoA& a, const CVecSoA& b, std::size_t n);
double weighted_dot(const double* a, const double* b, std::size_t n);
}  // namespace avx2

}  // namespace irlc::kernels
