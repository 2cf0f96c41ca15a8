#pragma once

#include <algorithm>
#include <array>
#include <span>
#include <string_view>

#include "q2x/errors.hpp"
#include "q2x/solid_harmonics.hpp"
#include "q2x/vec3.hpp"

namespace q2x {

enum class ElementKind { segment, triangle, tetrahedron };

constexpr int dimension(ElementKind k) {
  switch (k) {
    case ElementKind::segment: return 1;
    case ElementKind::triangle: return 2;
    case ElementKind::tetrahedron: return 3;
  }
  return 0;
}

constexpr int vertex_count(ElementKind k) { return dimension(k) + 1; }

constexpr std::string_view to_string(ElementKind k) {
  switch (k) {
    case ElementKind::segment: return "segment";
    case ElementKind::triangle: return "triangle";
    case ElementKind::tetrahedron: return "tetrahedron";
  }
  return "?";
}

/// Straight segment, flat triangle or tetrahedron with a constant density
/// (line charge / current magnitude, surface density, or volume source).
template <class Real>
struct SimplexElement {
  ElementKind kind = ElementKind::segment;
  std::array<Vec3<Real>, 4> vertices{};
  Real density = Real(1);

  static SimplexElement segment(const Vec3<Real>& a, const Vec3<Real>& b, Real density = Real(1)) {
    return {ElementKind::segment, {a, b, {}, {}}, density};
  }
  static SimplexElement triangle(const Vec3<Real>& a, const Vec3<Real>& b, const Vec3<Real>& c,
                                 Real density = Real(1)) {
    return {ElementKind::triangle, {a, b, c, {}}, density};
  }
  static SimplexElement tetrahedron(const Vec3<Real>& a, const Vec3<Real>& b, const Vec3<Real>& c,
                                    const Vec3<Real>& d, Real density = Real(1)) {
    return {ElementKind::tetrahedron, {a, b, c, d}, density};
  }

  std::span<const Vec3<Real>> points() const { return {vertices.data(), std::size_t(vertex_count(kind))}; }

  template <class Other>
  SimplexElement<Other> cast() const {
    SimplexElement<Other> e;
    e.kind = kind;
    for (int i = 0; i < 4; ++i) e.vertices[i] = Vec3<Other>(vertices[i]);
    e.density = Other(density);
    return e;
  }
};

/// Affine map R(u,v,w) = origin + du u + dv v + dw w onto the unit simplex,
/// with the origin already shifted by the expansion center. Unused directions
/// are zero.
template <class Real>
struct ParametricFrame {
  ElementKind kind = ElementKind::segment;
  Vec3<Real> origin{}, du{}, dv{}, dw{};
  ComplexSplit<Real> s0{}, su{}, sv{}, sw{};
};

template <class Real>
Real max_edge_length(const SimplexElement<Real>& e) {
  const auto pts = e.points();
  Real best = Real(0);
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) best = std::max(best, norm(pts[j] - pts[i]));
  return best;
}

template <class Real>
Real diameter(const SimplexElement<Real>& e) {
  return max_edge_length(e);
}

namespace detail {

template <class Real>
Real raw_jacobian(const SimplexElement<Real>& e) {
  const auto& v = e.vertices;
  switch (e.kind) {
    case ElementKind::segment: return norm(v[1] - v[0]);
    case ElementKind::triangle: return norm(cross(v[1] - v[0], v[2] - v[0]));
    case ElementKind::tetrahedron: return rmath::abs(dot(cross(v[1] - v[0], v[2] - v[0]), v[3] - v[0]));
  }
  return Real(0);
}

template <class Real>
void require_nondegenerate(const SimplexElement<Real>& e, Real jac) {
  for (const auto& p : e.points())
    if (!is_finite(p)) throw GeometryError("non-finite vertex coordinate");
  const Real h = max_edge_length(e);
  Real scale = Real(1);
  for (int i = 0; i < dimension(e.kind); ++i) scale *= h;
  if (!(jac >= Real(1e-14) * scale) || !(h > Real(0)))
    throw GeometryError("degenerate " + std::string(to_string(e.kind)));
}

}  // namespace detail

/// Measure ratio of the map: edge length, twice the area, six times the volume.
/// Throws GeometryError for degenerate elements (J < 1e-14 h^dim).
template <class Real>
Real jacobian(const SimplexElement<Real>& e) {
  const Real jac = detail::raw_jacobian(e);
  detail::require_nondegenerate(e, jac);
  return jac;
}

template <class Real>
Real measure(const SimplexElement<Real>& e) {
  const Real j = jacobian(e);
  switch (e.kind) {
    case ElementKind::segment: return j;
    case ElementKind::triangle: return j / 2;
    case ElementKind::tetrahedron: return j / 6;
  }
  return j;
}

template <class Real>
ParametricFrame<Real> frame_from_vertices(const SimplexElement<Real>& e, const Vec3<Real>& center) {
  detail::require_nondegenerate(e, detail::raw_jacobian(e));
  ParametricFrame<Real> f;
  f.kind = e.kind;
  const auto& v = e.vertices;
  f.origin = v[0] - center;
  f.du = v[1] - v[0];
  if (e.kind != ElementKind::segment) f.dv = v[2] - v[0];
  if (e.kind == ElementKind::tetrahedron) f.dw = v[3] - v[0];
  f.s0 = complex_split(f.origin);
  f.su = complex_split(f.du);
  f.sv = complex_split(f.dv);
  f.sw = complex_split(f.dw);
  return f;
}

/// (Ru x Rv)/|Ru x Rv|; orientation follows the vertex order.
template <class Real>
Vec3<Real> unit_normal(const SimplexElement<Real>& e) {
  if (e.kind != ElementKind::triangle) throw IncompatibleKindError("unit_normal requires a triangle");
  const Vec3<Real> c = cross(e.vertices[1] - e.vertices[0], e.vertices[2] - e.vertices[0]);
  const Real len = norm(c);
  detail::require_nondegenerate(e, len);
  return c / len;
}

template <class Real>
Vec3<Real> centroid(const SimplexElement<Real>& e) {
  Vec3<Real> c{};
  const auto pts = e.points();
  for (const auto& p : pts) c += p;
  return c / Real(pts.size());
}

/// Point of the affine map at parameters (u, v, w); unused parameters ignored.
template <class Real>
Vec3<Real> map_point(const ParametricFrame<Real>& f, Real u, Real v = Real(0), Real w = Real(0)) {
  return f.origin + f.du * u + f.dv * v + f.dw * w;
}

// Distance queries used to guard the closed-form potentials.

template <class Real>
Real distance_to_segment(const Vec3<Real>& r, const Vec3<Real>& a, const Vec3<Real>& b) {
  const Vec3<Real> ab = b - a;
  Real t = dot(r - a, ab) / dot(ab, ab);
  t = std::clamp(t, Real(0), Real(1));
  return norm(r - (a + ab * t));
}

template <class Real>
Real distance_to_triangle(const Vec3<Real>& r, const Vec3<Real>& a, const Vec3<Real>& b, const Vec3<Real>& c) {
  // Closest point by Voronoi-region classification.
  const Vec3<Real> ab = b - a, ac = c - a, ap = r - a;
  const Real d1 = dot(ab, ap), d2 = dot(ac, ap);
  if (d1 <= 0 && d2 <= 0) return norm(ap);
  const Vec3<Real> bp = r - b;
  const Real d3 = dot(ab, bp), d4 = dot(ac, bp);
  if (d3 >= 0 && d4 <= d3) return norm(bp);
  const Real vc = d1 * d4 - d3 * d2;
  if (vc <= 0 && d1 >= 0 && d3 <= 0) return norm(r - (a + ab * (d1 / (d1 - d3))));
  const Vec3<Real> cp = r - c;
  const Real d5 = dot(ab, cp), d6 = dot(ac, cp);
  if (d6 >= 0 && d5 <= d6) return norm(cp);
  const Real vb = d5 * d2 - d1 * d6;
  if (vb <= 0 && d2 >= 0 && d6 <= 0) return norm(r - (a + ac * (d2 / (d2 - d6))));
  const Real va = d3 * d6 - d5 * d4;
  if (va <= 0 && (d4 - d3) >= 0 && (d5 - d6) >= 0)
    return norm(r - (b + (c - b) * ((d4 - d3) / ((d4 - d3) + (d5 - d6)))));
  const Real denom = Real(1) / (va + vb + vc);
  return norm(r - (a + ab * (vb * denom) + ac * (vc * denom)));
}

/// Euclidean distance from r to the closed element (zero inside a tetrahedron).
template <class Real>
Real distance_to_support(const SimplexElement<Real>& e, const Vec3<Real>& r) {
  const auto& v = e.vertices;
  switch (e.kind) {
    case ElementKind::segment: return distance_to_segment(r, v[0], v[1]);
    case ElementKind::triangle: return distance_to_triangle(r, v[0], v[1], v[2]);
    case ElementKind::tetrahedron: {
      const Real vol = dot(cross(v[1] - v[0], v[2] - v[0]), v[3] - v[0]);
      const auto signed_sub = [&](const Vec3<Real>& a, const Vec3<Real>& b, const Vec3<Real>& c) {
        return dot(cross(b - a, c - a), r - a) / vol;
      };
      // Barycentric coordinates of r, all >= 0 inside.
      const Real l3 = signed_sub(v[0], v[1], v[2]);
      const Real l2 = -signed_sub(v[0], v[1], v[3]);
      const Real l1 = signed_sub(v[0], v[2], v[3]);
      const Real l0 = Real(1) - l1 - l2 - l3;
      if (l0 >= 0 && l1 >= 0 && l2 >= 0 && l3 >= 0) return Real(0);
      return std::min({distance_to_triangle(r, v[0], v[1], v[2]), distance_to_triangle(r, v[0], v[1], v[3]),
                       distance_to_triangle(r, v[0], v[2], v[3]), distance_to_triangle(r, v[1], v[2], v[3])});
    }
  }
  return Real(0);
}

}  // namespace q2x
