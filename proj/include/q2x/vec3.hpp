#pragma once

#include "q2x/real.hpp"

namespace q2x {

template <class Real>
struct Vec3 {
  Real x{}, y{}, z{};

  constexpr Vec3() = default;
  constexpr Vec3(Real x_, Real y_, Real z_) : x(x_), y(y_), z(z_) {}

  template <class Other>
  constexpr explicit Vec3(const Vec3<Other>& o) : x(Real(o.x)), y(Real(o.y)), z(Real(o.z)) {}

  constexpr Vec3& operator+=(const Vec3& o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
  constexpr Vec3& operator-=(const Vec3& o) {
    x -= o.x;
    y -= o.y;
    z -= o.z;
    return *this;
  }
  constexpr Vec3& operator*=(Real s) {
    x *= s;
    y *= s;
    z *= s;
    return *this;
  }

  friend constexpr Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
  friend constexpr Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
  friend constexpr Vec3 operator-(const Vec3& a) { return {-a.x, -a.y, -a.z}; }
  friend constexpr Vec3 operator*(Vec3 a, Real s) { return a *= s; }
  friend constexpr Vec3 operator*(Real s, Vec3 a) { return a *= s; }
  friend constexpr Vec3 operator/(const Vec3& a, Real s) { return {a.x / s, a.y / s, a.z / s}; }
  friend constexpr bool operator==(const Vec3&, const Vec3&) = default;
};

using Point3 = Vec3<double>;

template <class Real>
constexpr Real dot(const Vec3<Real>& a, const Vec3<Real>& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

template <class Real>
constexpr Vec3<Real> cross(const Vec3<Real>& a, const Vec3<Real>& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

template <class Real>
Real norm(const Vec3<Real>& a) {
  return rmath::sqrt(dot(a, a));
}

template <class Real>
bool is_finite(const Vec3<Real>& a) {
  // x - x is NaN exactly when x is inf or NaN; works for every Real.
  return (a.x - a.x) == Real(0) && (a.y - a.y) == Real(0) && (a.z - a.z) == Real(0);
}

}  // namespace q2x
