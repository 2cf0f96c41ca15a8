#pragma once

// Scalar plumbing shared by the numerical templates. Every kernel is written
// against a floating type `Real`; double is the production instantiation and
// __float128 (where the compiler provides it) is used to resolve errors below
// double round-off in the accuracy experiments.

#include <cmath>
#include <complex>
#include <limits>

#if defined(__SIZEOF_FLOAT128__) && !defined(__clang__)
#include <quadmath.h>
#define Q2X_HAVE_FLOAT128 1
#endif

namespace q2x {

template <class Real>
struct RealTraits {
  static constexpr Real epsilon = std::numeric_limits<Real>::epsilon();
  static constexpr Real newton_tolerance = Real(1e-15);
};

#ifdef Q2X_HAVE_FLOAT128
using float128 = __float128;

template <>
struct RealTraits<float128> {
  static constexpr float128 epsilon = FLT128_EPSILON;
  static constexpr float128 newton_tolerance = float128(1e-32);
};
#endif

namespace rmath {

using std::abs;
using std::atan2;
using std::log;
using std::pow;
using std::sqrt;

#ifdef Q2X_HAVE_FLOAT128
inline float128 atan2(float128 y, float128 x) { return atan2q(y, x); }
inline float128 log(float128 x) { return logq(x); }
inline float128 pow(float128 x, float128 y) { return powq(x, y); }
inline float128 sqrt(float128 x) { return sqrtq(x); }
inline float128 cos(float128 x) { return cosq(x); }
inline float128 sin(float128 x) { return sinq(x); }
#endif

using std::cos;
using std::sin;

template <class Real>
constexpr Real pi() {
  return Real(3.14159265358979323846264338327950288419716939937510L);
}

#ifdef Q2X_HAVE_FLOAT128
template <>
inline float128 pi<float128>() {
  return M_PIq;
}
#endif

// std::abs/std::norm on std::complex<T> are only usable for the standard
// floating types, so the templates go through these.
template <class Real>
inline Real cnorm(const std::complex<Real>& c) {
  return c.real() * c.real() + c.imag() * c.imag();
}

template <class Real>
inline Real cabs(const std::complex<Real>& c) {
  return sqrt(cnorm(c));
}

// Plain complex product. std::complex<double>::operator* goes through the
// Annex G NaN/inf recovery path which costs a library call per multiply.
template <class Real>
inline std::complex<Real> mul(const std::complex<Real>& a, const std::complex<Real>& b) {
  return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

}  // namespace rmath
}  // namespace q2x
