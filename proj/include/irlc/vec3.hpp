#pragma once

#include <cmath>
#include <complex>

namespace irlc {

using cplx = std::complex<double>;

struct Vec3 {
  double x = 0, y = 0, z = 0;

  double& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }
  double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }

  Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
  Vec3& operator-=(const Vec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }
  Vec3& operator*=(double s) { x *= s; y *= s; z *= s; return *this; }
};

inline Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
inline Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
inline Vec3 operator-(const Vec3& a) { return {-a.x, -a.y, -a.z}; }
inline Vec3 operator*(double s, Vec3 a) { return a *= s; }
inline Vec3 operator*(Vec3 a, double s) { return a *= s; }
inline Vec3 operator/(Vec3 a, double s) { return a *= (1.0 / s); }
inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

// complex 3-vector; dot() is bilinear, cdot() conjugates the left slot
struct CVec3 {
  cplx x{}, y{}, z{};

  CVec3() = default;
  CVec3(cplx a, cplx b, cplx c) : x(a), y(b), z(c) {}
  explicit CVec3(const Vec3& v) : x(v.x), y(v.y), z(v.z) {}

  cplx& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }
  const cplx& operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }

  CVec3& operator+=(const CVec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
  CVec3& operator-=(const CVec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }
  CVec3& operator*=(cplx s) { x *= s; y *= s; z *= s; return *this; }
};

inline CVec3 operator+(CVec3 a, const CVec3& b) { return a += b; }
inline CVec3 operator-(CVec3 a, const CVec3& b) { return a -= b; }
inline CVec3 operator*(cplx s, CVec3 a) { return a *= s; }
inline CVec3 operator*(CVec3 a, cplx s) { return a *= s; }
inline cplx dot(const CVec3& a, const CVec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline cplx dot(const Vec3& a, const CVec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline cplx cdot(const CVec3& a, const CVec3& b) {
  return std::conj(a.x) * b.x + std::conj(a.y) * b.y + std::conj(a.z) * b.z;
}
inline CVec3 cross(const Vec3& a, const CVec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm2(const CVec3& a) { return std::norm(a.x) + std::norm(a.y) + std::norm(a.z); }
inline double norm(const CVec3& a) { return std::sqrt(norm2(a)); }
inline CVec3 conj(const CVec3& a) { return {std::conj(a.x), std::conj(a.y), std::conj(a.z)}; }

}  // namespace irlc
