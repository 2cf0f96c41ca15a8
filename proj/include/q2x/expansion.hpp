#pragma once

// Quadrature-to-expansion: multipole coefficients of layer-potential integrals
// over one simplex, generated degree by degree with O(1) work per coefficient.
//
// For an element mapped onto the unit simplex, the coefficient of S~(n,m)
// about a center r* is
//
//   F~(n,m) = density * J/(4 pi) * (-1)^n * conj( I(n,m) ),
//
// with I(n,m) the integral of R~(n,m)(R(u,..) - r*) over the unit simplex. The
// integrals are produced by nested recursions that descend from the volume to a
// face, from the face to an edge, and from the edge to its end point; every
// level is a degree_step with its own shift vector and 1/(n+k) factor.

#include <algorithm>
#include <string>

#include "q2x/detail/degree_step.hpp"
#include "q2x/simplex.hpp"
#include "q2x/solid_harmonics.hpp"

namespace q2x {

/// K: line integral of G over a segment. L: single layer over a triangle.
/// M: double layer (normal derivative of G) over a triangle. N: volume
/// integral of G over a tetrahedron.
enum class KernelKind { K, L, M, N };

constexpr std::string_view to_string(KernelKind k) {
  switch (k) {
    case KernelKind::K: return "K";
    case KernelKind::L: return "L";
    case KernelKind::M: return "M";
    case KernelKind::N: return "N";
  }
  return "?";
}

constexpr ElementKind element_kind_for(KernelKind k) {
  switch (k) {
    case KernelKind::K: return ElementKind::segment;
    case KernelKind::L:
    case KernelKind::M: return ElementKind::triangle;
    case KernelKind::N: return ElementKind::tetrahedron;
  }
  return ElementKind::segment;
}

template <class Real>
struct ExpansionRequest {
  Vec3<Real> center{};
  int p = 1;
  KernelKind kind = KernelKind::K;
};

template <class Real>
struct MultipoleCoefficients {
  Vec3<Real> center{};
  int p = 0;
  KernelKind kind = KernelKind::K;
  TriangularCoeffs<Real> coeffs;
};

template <class Real>
struct SegmentMoments {
  TriangularCoeffs<Real> endpoint;  ///< R~ at the far end point R0 + Ru
  TriangularCoeffs<Real> line;      ///< integral over u in [0,1]
};

template <class Real>
struct TriangleMoments {
  TriangularCoeffs<Real> endpoint;  ///< R~ at R0 + Ru
  TriangularCoeffs<Real> edge;      ///< integral along the edge u + v = 1
  TriangularCoeffs<Real> surface;   ///< integral over the unit triangle
};

template <class Real>
struct TetraMoments {
  TriangularCoeffs<Real> endpoint;  ///< R~ at R0 + Ru
  TriangularCoeffs<Real> edge;      ///< integral along the edge x2-x3
  TriangularCoeffs<Real> face;      ///< integral over the face u + v + w = 1
  TriangularCoeffs<Real> volume;    ///< integral over the unit tetrahedron
};

namespace detail {

template <class Real>
ComplexSplit<Real> add(const ComplexSplit<Real>& a, const ComplexSplit<Real>& b) {
  return {a.xi + b.xi, a.eta + b.eta, a.z + b.z};
}

template <class Real>
struct Level {
  ComplexSplit<Real> shift;
  int offset;  // scale is 1/(n + offset)
};

// Runs `levels` nested recursions in a single ascending sweep over degree. Level
// 0 is the end-point recursion (no source term); level k > 0 takes level k-1 at
// the same degree as its source. Seeds are the unit-simplex measures.
template <class Real, std::size_t L>
void nested_sweep(int p, const std::array<Level<Real>, L>& levels, const std::array<Real, L>& seeds,
                  std::array<TriangularCoeffs<Real>*, L> out) {
  for (std::size_t k = 0; k < L; ++k) {
    *out[k] = TriangularCoeffs<Real>(p);
    (*out[k])(0, 0) = {seeds[k], Real(0)};
  }
  for (int n = 1; n < p; ++n) {
    const std::size_t prev = TriangularCoeffs<Real>::index(n - 1, 0);
    const std::size_t cur = TriangularCoeffs<Real>::index(n, 0);
    const std::complex<Real>* src = nullptr;
    for (std::size_t k = 0; k < L; ++k) {
      auto d = out[k]->data().data();
      const auto& lv = levels[k];
      degree_step<Real>(n, d + prev, lv.shift.xi, lv.shift.eta, lv.shift.z, src, Real(1) / Real(n + lv.offset),
                        d + cur);
      src = d + cur;
    }
  }
}

template <class Real>
void require_kind(const ParametricFrame<Real>& f, ElementKind k) {
  if (f.kind != k) throw IncompatibleKindError("frame is a " + std::string(to_string(f.kind)) + ", expected " +
                                               std::string(to_string(k)));
}

}  // namespace detail

template <class Real>
SegmentMoments<Real> raw_segment_moments(const ParametricFrame<Real>& f, int p) {
  detail::require_kind(f, ElementKind::segment);
  SegmentMoments<Real> m;
  const std::array<detail::Level<Real>, 2> levels{{{detail::add(f.s0, f.su), 0}, {f.s0, 1}}};
  detail::nested_sweep<Real, 2>(p, levels, {Real(1), Real(1)}, {&m.endpoint, &m.line});
  return m;
}

template <class Real>
TriangleMoments<Real> raw_triangle_moments(const ParametricFrame<Real>& f, int p) {
  detail::require_kind(f, ElementKind::triangle);
  TriangleMoments<Real> m;
  const std::array<detail::Level<Real>, 3> levels{
      {{detail::add(f.s0, f.su), 0}, {detail::add(f.s0, f.sv), 1}, {f.s0, 2}}};
  detail::nested_sweep<Real, 3>(p, levels, {Real(1), Real(1), Real(1) / 2}, {&m.endpoint, &m.edge, &m.surface});
  return m;
}

template <class Real>
TetraMoments<Real> raw_tetra_moments(const ParametricFrame<Real>& f, int p) {
  detail::require_kind(f, ElementKind::tetrahedron);
  TetraMoments<Real> m;
  const std::array<detail::Level<Real>, 4> levels{{{detail::add(f.s0, f.su), 0},
                                                   {detail::add(f.s0, f.sv), 1},
                                                   {detail::add(f.s0, f.sw), 2},
                                                   {f.s0, 3}}};
  detail::nested_sweep<Real, 4>(p, levels, {Real(1), Real(1), Real(1) / 2, Real(1) / 6},
                                {&m.endpoint, &m.edge, &m.face, &m.volume});
  return m;
}

/// Normal-derivative integrals from the surface integrals one degree lower:
///   l(n,m) = i(n-1,m+1)(nx - i ny)/2 - i(n-1,m-1)(nx + i ny)/2 - nz i(n-1,m),  m > 0
///   l(n,0) = Re[i(n-1,1)(nx - i ny)] - nz i(n-1,0)
/// with l(0,0) = 0. `surface` must have truncation >= p - 1.
template <class Real>
TriangularCoeffs<Real> normal_derivative_moments(const TriangularCoeffs<Real>& surface, const Vec3<Real>& normal,
                                                 int p) {
  TriangularCoeffs<Real> l(p);
  const std::complex<Real> minus{normal.x / 2, -normal.y / 2};  // (nx - i ny)/2
  const std::complex<Real> plus{normal.x / 2, normal.y / 2};    // (nx + i ny)/2
  for (int n = 1; n < p; ++n) {
    const auto prev = surface.row(n - 1);
    {
      Real v = -normal.z * prev[0].real();
      if (n >= 2) v += Real(2) * rmath::mul(prev[1], minus).real();
      l(n, 0) = {v, Real(0)};
    }
    for (int m = 1; m <= n; ++m) {
      std::complex<Real> v = -rmath::mul(prev[m - 1], plus);
      if (m + 1 <= n - 1) v += rmath::mul(prev[m + 1], minus);
      if (m <= n - 1) v -= normal.z * prev[m];
      l(n, m) = v;
    }
  }
  return l;
}

/// F~(n,m) = density * J/(4 pi) * (-1)^n * conj(raw(n,m)).
template <class Real>
TriangularCoeffs<Real> assemble_coefficients(const TriangularCoeffs<Real>& raw, Real jac, Real density) {
  TriangularCoeffs<Real> out(raw.truncation());
  const Real base = density * jac / (Real(4) * rmath::pi<Real>());
  auto src = raw.data();
  auto dst = out.data();
  for (int n = 0; n < raw.truncation(); ++n) {
    const Real f = (n % 2 == 0) ? base : -base;
    const std::size_t b = TriangularCoeffs<Real>::index(n, 0);
    for (int m = 0; m <= n; ++m) dst[b + m] = {f * src[b + m].real(), -f * src[b + m].imag()};
  }
  return out;
}

template <class Real>
void require_compatible(const SimplexElement<Real>& e, KernelKind k) {
  if (element_kind_for(k) != e.kind)
    throw IncompatibleKindError("kernel " + std::string(to_string(k)) + " needs a " +
                                std::string(to_string(element_kind_for(k))) + ", got a " +
                                std::string(to_string(e.kind)));
}

/// Multipole coefficients of one element about req.center. The series built
/// from them converges only outside the sphere about the center enclosing the
/// element; that is not checked here.
template <class Real>
MultipoleCoefficients<Real> expand(const SimplexElement<Real>& e, const ExpansionRequest<Real>& req) {
  if (req.p < 1) throw std::invalid_argument("truncation number must be >= 1");
  require_compatible(e, req.kind);
  const Real jac = jacobian(e);
  const ParametricFrame<Real> f = frame_from_vertices(e, req.center);

  MultipoleCoefficients<Real> out{req.center, req.p, req.kind, {}};
  switch (req.kind) {
    case KernelKind::K: out.coeffs = assemble_coefficients(raw_segment_moments(f, req.p).line, jac, e.density); break;
    case KernelKind::L:
      out.coeffs = assemble_coefficients(raw_triangle_moments(f, req.p).surface, jac, e.density);
      break;
    case KernelKind::M: {
      const auto surface = raw_triangle_moments(f, std::max(1, req.p - 1)).surface;
      out.coeffs = assemble_coefficients(normal_derivative_moments(surface, unit_normal(e), req.p), jac, e.density);
      break;
    }
    case KernelKind::N:
      out.coeffs = assemble_coefficients(raw_tetra_moments(f, req.p).volume, jac, e.density);
      break;
  }
  return out;
}

}  // namespace q2x
