#pragma once

// Closed-form layer potentials of constant-density simplices, used as
// references for the truncated expansions. All refuse evaluation points within
// 1e-12 diameters of the element support.

#include <array>

#include "q2x/errors.hpp"
#include "q2x/simplex.hpp"

namespace q2x {

template <class Real>
Real green(const Vec3<Real>& r, const Vec3<Real>& rp) {
  const Real d = norm(r - rp);
  if (!(d > Real(0))) throw DomainError("Green's function at coincident points");
  return Real(1) / (Real(4) * rmath::pi<Real>() * d);
}

namespace detail {

template <class Real>
void require_off_support(const SimplexElement<Real>& e, const Vec3<Real>& r) {
  if (!is_finite(r)) throw DomainError("non-finite evaluation point");
  if (distance_to_support(e, r) <= Real(1e-12) * diameter(e))
    throw SingularInputError("evaluation point on the " + std::string(to_string(e.kind)));
}

}  // namespace detail

/// Integral of G along a straight segment, times its density.
///
/// With r0 the midpoint, J the length, zeta = |r - r0|/J and
/// cos(alpha) the angle between r - r0 and the segment direction, the integral
/// is (1/4pi) ln[(s1 + 1 - b)/(s2 - 1 - b)], b = 2 zeta cos(alpha),
/// s1,2 = sqrt(4 zeta^2 -+ 2b + 1). Both factors vanish on the segment's axis
/// beyond x2; multiplying each by its conjugate (both products equal c - b^2)
/// gives the equivalent ratio (s2 + 1 + b)/(s1 - 1 + b), used for b >= 0.
/// s1,2 are twice the distances to x2, x1 over J.
template <class Real>
Real segment_potential_exact(const SimplexElement<Real>& e, const Vec3<Real>& r) {
  if (e.kind != ElementKind::segment) throw IncompatibleKindError("segment_potential_exact needs a segment");
  const Real len = jacobian(e);
  detail::require_off_support(e, r);
  const Vec3<Real> mid = (e.vertices[0] + e.vertices[1]) / Real(2);
  const Vec3<Real> axis = e.vertices[1] - e.vertices[0];
  const Vec3<Real> rel = r - mid;

  // Endpoint distances and the axial offset are taken directly; forming
  // them from zeta by the law of cosines cancels near the axis.
  const Real b = Real(2) * dot(rel, axis) / (len * len);  // 2 zeta cos(alpha)
  const Real s1 = Real(2) * norm(r - e.vertices[1]) / len;
  const Real s2 = Real(2) * norm(r - e.vertices[0]) / len;
  const Real perp2 = Real(4) * dot(cross(rel, axis), cross(rel, axis)) / (len * len * len * len);  // c - b^2
  // x + t with x >= |t|, written so nothing cancels.
  const auto sum = [&](Real x, Real t) { return t >= Real(0) ? x + t : perp2 / (x - t); };
  const Real ratio = (b >= Real(0)) ? (s2 + Real(1) + b) / sum(s1, b - Real(1)) : (s1 + Real(1) - b) / sum(s2, -b - Real(1));
  return e.density * rmath::log(ratio) / (Real(4) * rmath::pi<Real>());
}

template <class Real>
struct LayerPotentials {
  Real single_layer{};  ///< integral of G
  Real double_layer{};  ///< integral of dG/dn(r'), n = unit_normal of the triangle
};

namespace detail {

// Edge primitives in the local frame of one triangle edge: x along the edge
// (relative to the foot of r), y the height of r above the plane, z the in-plane
// distance from the edge line (positive outward).
template <class Real>
Real edge_angle_primitive(Real x, Real y, Real z) {
  const Real r = rmath::sqrt(x * x + y * y + z * z);
  return -rmath::atan2(x * z * (r - y), r * z * z + y * x * x);
}

template <class Real>
Real edge_single_primitive(Real x, Real y, Real z) {
  Real value = -y * edge_angle_primitive(x, y, z);
  if (z != Real(0)) {
    const Real r = rmath::sqrt(x * x + y * y + z * z);
    // r + x without cancellation for x < 0.
    const Real rx = (x >= Real(0)) ? r + x : (y * y + z * z) / (r - x);
    value -= z * rmath::log(rx);
  }
  return value;
}

}  // namespace detail

/// Single and double layer potentials of a flat triangle, times its density,
/// by reduction to edge primitives.
template <class Real>
LayerPotentials<Real> triangle_layers_exact(const SimplexElement<Real>& e, const Vec3<Real>& r) {
  if (e.kind != ElementKind::triangle) throw IncompatibleKindError("triangle_layers_exact needs a triangle");
  const Vec3<Real> n = unit_normal(e);
  detail::require_off_support(e, r);

  const Real height = dot(r - e.vertices[0], n);
  const Real h = rmath::abs(height);
  Real single = Real(0), angle = Real(0);
  for (int q = 0; q < 3; ++q) {
    const Vec3<Real>& a = e.vertices[q];
    const Vec3<Real>& b = e.vertices[(q + 1) % 3];
    const Real len = norm(b - a);
    const Vec3<Real> along = (b - a) / len;
    const Vec3<Real> outward = cross(along, n);
    const Real x = dot(r - a, along);
    const Real z = dot(r - a, outward);
    single += detail::edge_single_primitive(len - x, h, z) - detail::edge_single_primitive(-x, h, z);
    angle += detail::edge_angle_primitive(len - x, h, z) - detail::edge_angle_primitive(-x, h, z);
  }
  const Real inv4pi = Real(1) / (Real(4) * rmath::pi<Real>());
  // The primitives see only |height|; the double layer is odd in it.
  const Real sign = height < Real(0) ? Real(-1) : Real(1);
  return {e.density * single * inv4pi, e.density * sign * angle * inv4pi};
}

/// The four faces of a tetrahedron, each ordered so that unit_normal points
/// out of the solid.
template <class Real>
std::array<SimplexElement<Real>, 4> outward_faces(const SimplexElement<Real>& e) {
  if (e.kind != ElementKind::tetrahedron) throw IncompatibleKindError("outward_faces needs a tetrahedron");
  static constexpr int face[4][4] = {{0, 1, 2, 3}, {0, 1, 3, 2}, {0, 2, 3, 1}, {1, 2, 3, 0}};
  std::array<SimplexElement<Real>, 4> out;
  const auto& v = e.vertices;
  for (int f = 0; f < 4; ++f) {
    Vec3<Real> a = v[face[f][0]], b = v[face[f][1]], c = v[face[f][2]];
    const Vec3<Real>& opposite = v[face[f][3]];
    if (dot(cross(b - a, c - a), opposite - a) > Real(0)) std::swap(b, c);
    out[f] = SimplexElement<Real>::triangle(a, b, c);
  }
  return out;
}

/// Volume integral of G over a tetrahedron, times its density, through the
/// divergence theorem: N(r) = -1/2 sum_faces n_j . (r - c_j) L_j(r).
template <class Real>
Real tetra_potential_exact(const SimplexElement<Real>& e, const Vec3<Real>& r) {
  if (e.kind != ElementKind::tetrahedron) throw IncompatibleKindError("tetra_potential_exact needs a tetrahedron");
  jacobian(e);
  detail::require_off_support(e, r);
  Real sum = Real(0);
  for (const auto& face : outward_faces(e)) {
    const Vec3<Real> n = unit_normal(face);
    sum += dot(n, r - centroid(face)) * triangle_layers_exact(face, r).single_layer;
  }
  return -e.density * sum / Real(2);
}

}  // namespace q2x
