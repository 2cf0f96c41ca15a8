#pragma once

// Gauss-Legendre rules on the unit interval, collapsed tensor-product rules on
// the unit triangle and tetrahedron, and the quadrature route to the same
// multipole coefficients that expand() produces by recursion.

#include <algorithm>
#include <array>
#include <utility>
#include <limits>
#include <stdexcept>
#include <type_traits>
#include <vector>

#include "q2x/expansion.hpp"

namespace q2x {

template <class Real>
struct QuadratureRule {
  int dim = 1;
  std::vector<std::array<Real, 3>> nodes;  ///< (u, v, w), unused coordinates zero
  std::vector<Real> weights;
  int exact_degree = 0;

  std::size_t size() const { return weights.size(); }
};

namespace detail {

// (P_n(x), P_n'(x)) by the three-term recurrence; x must not be +-1.
template <class Real>
std::pair<Real, Real> legendre_and_derivative(int n, Real x) {
  Real prev = Real(1), cur = x;
  for (int k = 2; k <= n; ++k) {
    const Real next = (Real(2 * k - 1) * x * cur - Real(k - 1) * prev) / Real(k);
    prev = cur;
    cur = next;
  }
  return {cur, Real(n) * (x * cur - prev) / (x * x - Real(1))};
}

}  // namespace detail

/// N-point Gauss-Legendre rule mapped to [0,1], exact through degree 2N-1.
/// Roots by Newton iteration from the Chebyshev-based initial guess
/// cos(pi (i + 3/4)/(N + 1/2)).
template <class Real>
QuadratureRule<Real> gauss_legendre_unit(int count) {
  if (count < 1) throw std::invalid_argument("Gauss-Legendre rule needs at least one node");
  QuadratureRule<Real> rule;
  rule.dim = 1;
  rule.exact_degree = 2 * count - 1;
  rule.nodes.resize(count);
  rule.weights.resize(count);
  const Real pi = rmath::pi<Real>();
  for (int i = 0; i < (count + 1) / 2; ++i) {
    Real x = rmath::cos(pi * (Real(i) + Real(3) / 4) / (Real(count) + Real(1) / 2));
    for (int it = 0; it < 100; ++it) {
      const auto [value, slope] = detail::legendre_and_derivative(count, x);
      const Real dx = value / slope;
      x -= dx;
      if (rmath::abs(dx) <= RealTraits<Real>::newton_tolerance) break;
    }
    if (2 * i + 1 == count) x = Real(0);
    const Real slope = detail::legendre_and_derivative(count, x).second;
    const Real w = Real(1) / ((Real(1) - x * x) * slope * slope);  // half of the [-1,1] weight
    // Roots descend from near +1; store ascending on [0,1].
    rule.nodes[i] = {(Real(1) - x) / 2, Real(0), Real(0)};
    rule.nodes[count - 1 - i] = {(Real(1) + x) / 2, Real(0), Real(0)};
    rule.weights[i] = rule.weights[count - 1 - i] = w;
  }
  return rule;
}

/// Rule on the unit simplex of dimension `dim` exact for all polynomials of
/// total degree <= degree. Triangles use v = (1-u) t with weight factor (1-u);
/// tetrahedra add w = (1-u-v) s with factor (1-u-v). The collapse factors raise
/// the degree seen by the outer rules, hence the larger outer node counts.
template <class Real>
QuadratureRule<Real> simplex_rule(int dim, int degree);

namespace detail {

// Double rules are built in long double and rounded once, so the tensor
// weights carry one rounding instead of three (visible on tetrahedra as a
// few-ulp bias in the weight sum).
inline QuadratureRule<double> narrow_rule(const QuadratureRule<long double>& wide) {
  QuadratureRule<double> rule;
  rule.dim = wide.dim;
  rule.exact_degree = wide.exact_degree;
  for (const auto& x : wide.nodes) rule.nodes.push_back({double(x[0]), double(x[1]), double(x[2])});
  for (long double w : wide.weights) rule.weights.push_back(double(w));
  return rule;
}

}  // namespace detail

template <class Real>
QuadratureRule<Real> simplex_rule(int dim, int degree) {
  if constexpr (std::is_same_v<Real, double>) {
    if (std::numeric_limits<long double>::digits > std::numeric_limits<double>::digits)
      return detail::narrow_rule(simplex_rule<long double>(dim, degree));
  }
  if (degree < 0) throw std::invalid_argument("negative quadrature degree");
  const auto nodes_for = [](int d) { return (d + 2) / 2; };  // ceil((d+1)/2)
  QuadratureRule<Real> rule;
  rule.dim = dim;
  rule.exact_degree = degree;
  switch (dim) {
    case 1: {
      rule = gauss_legendre_unit<Real>(nodes_for(degree));
      rule.exact_degree = degree;
      break;
    }
    case 2: {
      const auto gu = gauss_legendre_unit<Real>(nodes_for(degree + 1));
      const auto gt = gauss_legendre_unit<Real>(nodes_for(degree));
      for (std::size_t i = 0; i < gu.size(); ++i) {
        const Real u = gu.nodes[i][0];
        for (std::size_t j = 0; j < gt.size(); ++j) {
          const Real t = gt.nodes[j][0];
          rule.nodes.push_back({u, (Real(1) - u) * t, Real(0)});
          rule.weights.push_back(gu.weights[i] * gt.weights[j] * (Real(1) - u));
        }
      }
      break;
    }
    case 3: {
      const auto gu = gauss_legendre_unit<Real>(nodes_for(degree + 2));
      const auto gt = gauss_legendre_unit<Real>(nodes_for(degree + 1));
      const auto gs = gauss_legendre_unit<Real>(nodes_for(degree));
      for (std::size_t i = 0; i < gu.size(); ++i) {
        const Real u = gu.nodes[i][0];
        for (std::size_t j = 0; j < gt.size(); ++j) {
          const Real v = (Real(1) - u) * gt.nodes[j][0];
          for (std::size_t k = 0; k < gs.size(); ++k) {
            const Real w = (Real(1) - u - v) * gs.nodes[k][0];
            rule.nodes.push_back({u, v, w});
            rule.weights.push_back(gu.weights[i] * gt.weights[j] * gs.weights[k] * (Real(1) - u) * (Real(1) - u - v));
          }
        }
      }
      break;
    }
    default: throw std::invalid_argument("simplex dimension must be 1, 2 or 3");
  }
  return rule;
}

/// Sum over the rule of R~(n,m) at the mapped nodes.
template <class Real>
TriangularCoeffs<Real> integrate_regular(const ParametricFrame<Real>& f, const QuadratureRule<Real>& rule, int p) {
  if (rule.dim != dimension(f.kind)) throw std::invalid_argument("rule dimension does not match the element");
  TriangularCoeffs<Real> acc(p);
  TriangularCoeffs<Real> values(p);
  auto out = acc.data();
  auto d = values.data().data();
  for (std::size_t q = 0; q < rule.size(); ++q) {
    const auto& uvw = rule.nodes[q];
    const auto s = complex_split(map_point(f, uvw[0], uvw[1], uvw[2]));
    d[0] = {Real(1), Real(0)};
    for (int n = 1; n < p; ++n)
      detail::degree_step<Real>(n, d + TriangularCoeffs<Real>::index(n - 1, 0), s.xi, s.eta, s.z, nullptr,
                                Real(1) / Real(n), d + TriangularCoeffs<Real>::index(n, 0));
    const Real w = rule.weights[q];
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += w * d[i];
  }
  return acc;
}

/// Polynomial degree the rule must integrate exactly for a request.
inline int required_degree(KernelKind kind, int p) {
  return kind == KernelKind::M ? std::max(0, p - 2) : p - 1;
}

/// Same coefficients as expand(), with the simplex integrals taken by a
/// precomputed rule of sufficient degree.
template <class Real>
MultipoleCoefficients<Real> expand_by_quadrature(const SimplexElement<Real>& e, const ExpansionRequest<Real>& req,
                                                 const QuadratureRule<Real>& rule) {
  if (req.p < 1) throw std::invalid_argument("truncation number must be >= 1");
  require_compatible(e, req.kind);
  if (rule.exact_degree < required_degree(req.kind, req.p))
    throw std::invalid_argument("quadrature rule not exact to the required degree");
  const Real jac = jacobian(e);
  const ParametricFrame<Real> f = frame_from_vertices(e, req.center);
  MultipoleCoefficients<Real> out{req.center, req.p, req.kind, {}};
  if (req.kind == KernelKind::M) {
    const auto surface = integrate_regular(f, rule, std::max(1, req.p - 1));
    out.coeffs = assemble_coefficients(normal_derivative_moments(surface, unit_normal(e), req.p), jac, e.density);
  } else {
    out.coeffs = assemble_coefficients(integrate_regular(f, rule, req.p), jac, e.density);
  }
  return out;
}

template <class Real>
MultipoleCoefficients<Real> expand_by_quadrature(const SimplexElement<Real>& e, const ExpansionRequest<Real>& req) {
  return expand_by_quadrature(e, req, simplex_rule<Real>(dimension(e.kind), required_degree(req.kind, req.p)));
}

}  // namespace q2x
