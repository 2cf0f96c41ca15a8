#pragma once

#include "q2x/expansion.hpp"

namespace q2x {

/// Truncated multipole series at r:
///   sum_{n<p} [ F~(n,0) S~(n,0) + 2 Re sum_{m=1..n} F~(n,m) S~(n,m) ],  S~ about c.center.
/// The m < 0 half of the double sum is the complex conjugate of the m > 0 half
/// because both F~ and S~ are conjugate-symmetric, so the pairing carries no
/// extra phase: a point charge q at r' has F~(n,m) = q (-1)^n conj(R~(n,m)(r' - c))/(4 pi)
/// and the series reproduces q G(r, r').
template <class Real>
Real evaluate_expansion(const MultipoleCoefficients<Real>& c, const Vec3<Real>& r) {
  const Vec3<Real> rel = r - c.center;
  if (!(dot(rel, rel) > Real(0))) throw DomainError("expansion evaluated at its center");
  const auto s = eval_singular_tilde(rel, c.p);
  const auto f = c.coeffs.data();
  const auto g = s.data();
  Real diag = Real(0), off = Real(0);
  for (int n = 0; n < c.p; ++n) {
    const std::size_t b = TriangularCoeffs<Real>::index(n, 0);
    diag += f[b].real() * g[b].real();
    for (int m = 1; m <= n; ++m) off += f[b + m].real() * g[b + m].real() - f[b + m].imag() * g[b + m].imag();
  }
  return diag + Real(2) * off;
}

/// |approx - exact| / |exact|; DomainError when exact is zero.
template <class Real>
Real relative_error(Real approx, Real exact) {
  if (exact == Real(0)) throw DomainError("relative error against a zero reference");
  return rmath::abs(approx - exact) / rmath::abs(exact);
}

/// Geometric-decay error model of a truncated expansion whose sources sit at
/// distance `source_distance` from the center, observed at distance d:
/// C (a/d)^p for K, L and N; C p (a/d)^(p-1) for the double layer M.
inline double error_bound(KernelKind kind, int p, double d, double source_distance, double C) {
  if (!(source_distance > 0.0) || !(d > source_distance))
    throw DomainError("error bound needs d > source distance > 0");
  const double ratio = source_distance / d;
  if (kind == KernelKind::M) return C * p * std::pow(ratio, p - 1);
  return C * std::pow(ratio, p);
}

}  // namespace q2x
