#pragma once

// Regular and singular solid harmonics of the Laplace equation in the tilde
// normalization
//
//   R~(n,m)(r) = (-1)^(n+m) r^n P_n^m(cos t) e^(i m f) / (n+m)!
//   S~(n,m)(r) = (-1)^m (n-m)! r^(-n-1) P_n^m(cos t) e^(i m f)
//
// (P_n^m with the Condon-Shortley phase), so that R~(n,-m) = conj(R~(n,m)),
// likewise for S~, and 1/(4 pi |r - r'|) = (1/4 pi) sum (-1)^n conj(R~(n,m)(r')) S~(n,m)(r)
// for |r| > |r'|.

#include "q2x/detail/degree_step.hpp"
#include "q2x/errors.hpp"
#include "q2x/triangular.hpp"
#include "q2x/vec3.hpp"

namespace q2x {

/// xi = (x + iy)/2, eta = (x - iy)/2 = conj(xi).
template <class Real>
struct ComplexSplit {
  std::complex<Real> xi{};
  std::complex<Real> eta{};
  Real z{};
};

template <class Real>
ComplexSplit<Real> complex_split(const Vec3<Real>& pt) {
  return {{pt.x / 2, pt.y / 2}, {pt.x / 2, -pt.y / 2}, pt.z};
}

/// All R~(n,m)(pt) for 0 <= m <= n < p, by the degree-ascending recursion
/// n R~(n,m) = -xi R~(n-1,m-1) + eta R~(n-1,m+1) - z R~(n-1,m).
template <class Real>
TriangularCoeffs<Real> eval_regular_tilde(const Vec3<Real>& pt, int p) {
  TriangularCoeffs<Real> out(p);
  const auto s = complex_split(pt);
  auto d = out.data().data();
  d[0] = {Real(1), Real(0)};
  for (int n = 1; n < p; ++n) {
    detail::degree_step<Real>(n, d + TriangularCoeffs<Real>::index(n - 1, 0), s.xi, s.eta, s.z, nullptr,
                              Real(1) / Real(n), d + TriangularCoeffs<Real>::index(n, 0));
  }
  return out;
}

/// All S~(n,m)(pt) for 0 <= m <= n < p. Sectoral terms come from
/// S~(m,m) = (2m-1) (x+iy)/r^2 S~(m-1,m-1); the rest from the three-term
/// associated-Legendre recursion in degree with the (n-m)! r^(-n-1) factor
/// carried along:
///   r^2 S~(n,m) = (2n-1) z S~(n-1,m) - (n+m-1)(n-m-1) S~(n-2,m).
template <class Real>
TriangularCoeffs<Real> eval_singular_tilde(const Vec3<Real>& pt, int p) {
  const Real r2 = dot(pt, pt);
  if (!(r2 > Real(0))) throw DomainError("singular harmonics evaluated at the origin");
  TriangularCoeffs<Real> out(p);
  const Real inv_r2 = Real(1) / r2;
  const std::complex<Real> w{pt.x * inv_r2, pt.y * inv_r2};  // (x+iy)/r^2
  const Real zr = pt.z * inv_r2;

  out(0, 0) = {Real(1) / rmath::sqrt(r2), Real(0)};
  for (int m = 0; m < p; ++m) {
    if (m > 0) out(m, m) = Real(2 * m - 1) * rmath::mul(w, out(m - 1, m - 1));
    if (m + 1 < p) out(m + 1, m) = Real(2 * m + 1) * zr * out(m, m);
    for (int n = m + 2; n < p; ++n) {
      out(n, m) = Real(2 * n - 1) * zr * out(n - 1, m) - Real((n + m - 1) * (n - m - 1)) * inv_r2 * out(n - 2, m);
    }
  }
  for (int n = 0; n < p; ++n) out(n, 0).imag(Real(0));
  return out;
}

/// Real basis: Re F~(n,m) for m >= 0, -Im F~(n,|m|) for m < 0.
template <class Real>
RealTriangular<Real> to_real_basis(const TriangularCoeffs<Real>& c) {
  const int p = c.truncation();
  RealTriangular<Real> out(p);
  for (int n = 0; n < p; ++n) {
    out(n, 0) = c(n, 0).real();
    for (int m = 1; m <= n; ++m) {
      out(n, m) = c(n, m).real();
      out(n, -m) = -c(n, m).imag();
    }
  }
  return out;
}

/// Inverse of to_real_basis (the m = 0 imaginary part is zero by symmetry).
template <class Real>
TriangularCoeffs<Real> from_real_basis(const RealTriangular<Real>& r) {
  const int p = r.truncation();
  TriangularCoeffs<Real> out(p);
  for (int n = 0; n < p; ++n) {
    out(n, 0) = {r(n, 0), Real(0)};
    for (int m = 1; m <= n; ++m) out(n, m) = {r(n, m), -r(n, -m)};
  }
  return out;
}

}  // namespace q2x
