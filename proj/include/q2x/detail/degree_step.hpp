#pragma once

#include <complex>

namespace q2x::detail {

// One degree step of the four-term recursion shared by the harmonic
// polynomials and all of their simplex integrals in the tilde basis:
//
//   out(n,m) = scale * [ -xi out(n-1,m-1) + eta out(n-1,m+1) - z out(n-1,m) + src(m) ],  m > 0
//   out(n,0) = scale * [ 2 Re{eta out(n-1,1)} - z out(n-1,0) + src(0) ]
//
// `prev` holds orders 0..n-1 of degree n-1, `out` receives orders 0..n.
// Orders above n-1 in `prev` are structural zeros. `src` may be null.
template <class Real>
inline void degree_step(int n, const std::complex<Real>* prev, std::complex<Real> xi, std::complex<Real> eta,
                        Real z, const std::complex<Real>* src, Real scale, std::complex<Real>* out) {
  const Real xr = xi.real(), xim = xi.imag();
  const Real er = eta.real(), ei = eta.imag();

  {
    Real acc = -z * prev[0].real();
    if (n >= 2) acc += Real(2) * (er * prev[1].real() - ei * prev[1].imag());
    if (src) acc += src[0].real();
    out[0] = {scale * acc, Real(0)};
  }
  for (int m = 1; m <= n; ++m) {
    const std::complex<Real> lo = prev[m - 1];
    Real re = -(xr * lo.real() - xim * lo.imag());
    Real im = -(xr * lo.imag() + xim * lo.real());
    if (m + 1 <= n - 1) {
      const std::complex<Real> hi = prev[m + 1];
      re += er * hi.real() - ei * hi.imag();
      im += er * hi.imag() + ei * hi.real();
    }
    if (m <= n - 1) {
      re -= z * prev[m].real();
      im -= z * prev[m].imag();
    }
    if (src) {
      re += src[m].real();
      im += src[m].imag();
    }
    out[m] = {scale * re, scale * im};
  }
}

}  // namespace q2x::detail
