#pragma once

// Independent references shared by the unit and acceptance tests: harmonics
// from the Rodrigues formula, fixed high-order tensor Gauss integration over
// the unit simplices and nested adaptive Gauss-Kronrod integration.

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <array>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "q2x/experiments.hpp"

namespace q2x::testing {

using cd = std::complex<double>;

inline long double factorial(int n) {
  long double f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

// P_n^m(x) with the Condon-Shortley phase, from Rodrigues:
// P_n^m = (-1)^m (1-x^2)^(m/2) d^(n+m)/dx^(n+m) (x^2-1)^n / (2^n n!).
inline long double assoc_legendre_rodrigues(int n, int m, long double x) {
  // Coefficients of (x^2 - 1)^n in powers of x.
  std::vector<long double> c(2 * n + 1, 0.0L);
  for (int k = 0; k <= n; ++k) {
    long double binom = factorial(n) / (factorial(k) * factorial(n - k));
    c[2 * k] = binom * (((n - k) % 2) ? -1.0L : 1.0L);
  }
  for (int d = 0; d < n + m; ++d) {
    for (std::size_t j = 0; j + 1 < c.size(); ++j) c[j] = c[j + 1] * (long double)(j + 1);
    c.back() = 0.0L;
  }
  long double v = 0.0L;
  for (std::size_t j = c.size(); j-- > 0;) v = v * x + c[j];
  v /= std::pow(2.0L, n) * factorial(n);
  return ((m % 2) ? -1.0L : 1.0L) * std::pow(1.0L - x * x, m / 2.0L) * v;
}

struct Spherical {
  long double r, ct, phi;
};

inline Spherical to_spherical(const Point3& p) {
  const long double r = std::sqrt((long double)p.x * p.x + (long double)p.y * p.y + (long double)p.z * p.z);
  return {r, r > 0 ? p.z / r : 1.0L, std::atan2((long double)p.y, (long double)p.x)};
}

/// R~(n,m) = (-1)^(n+m) r^n P_n^m e^(i m phi) / (n+m)!, m >= 0.
inline cd regular_direct(const Point3& p, int n, int m) {
  const auto s = to_spherical(p);
  const long double mag = (((n + m) % 2) ? -1.0L : 1.0L) * std::pow(s.r, n) *
                          assoc_legendre_rodrigues(n, m, s.ct) / factorial(n + m);
  return {double(mag * std::cos(m * s.phi)), double(mag * std::sin(m * s.phi))};
}

/// S~(n,m) = (-1)^m (n-m)! r^(-n-1) P_n^m e^(i m phi), m >= 0.
inline cd singular_direct(const Point3& p, int n, int m) {
  const auto s = to_spherical(p);
  const long double mag =
      ((m % 2) ? -1.0L : 1.0L) * factorial(n - m) * std::pow(s.r, -n - 1) * assoc_legendre_rodrigues(n, m, s.ct);
  return {double(mag * std::cos(m * s.phi)), double(mag * std::sin(m * s.phi))};
}

// 20-point Gauss-Legendre on [0,1] from Boost's tables; exact to degree 39.
inline const std::vector<std::pair<double, double>>& gauss20() {
  static const std::vector<std::pair<double, double>> rule = [] {
    using G = boost::math::quadrature::gauss<double, 20>;
    std::vector<std::pair<double, double>> r;
    for (std::size_t i = 0; i < G::abscissa().size(); ++i) {
      const double x = G::abscissa()[i], w = G::weights()[i];
      r.push_back({(1 - x) / 2, w / 2});
      r.push_back({(1 + x) / 2, w / 2});
    }
    return r;
  }();
  return rule;
}

/// Integral over the unit simplex of dimension `dim` of f(u, v, w), a
/// TriangularCoeffs-valued polynomial of degree < 36, by collapsed tensor
/// Gauss-Legendre.
template <class F>
TriangularCoeffs<double> simplex_tensor_integral(int dim, int p, F&& f) {
  TriangularCoeffs<double> acc(p);
  auto out = acc.data();
  const auto& g = gauss20();
  const auto add = [&](const TriangularCoeffs<double>& v, double w) {
    auto d = v.data();
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += w * d[i];
  };
  for (const auto& [a, wa] : g) {
    if (dim == 1) {
      add(f(a, 0.0, 0.0), wa);
      continue;
    }
    for (const auto& [b, wb] : g) {
      const double v = (1 - a) * b;
      if (dim == 2) {
        add(f(a, v, 0.0), wa * wb * (1 - a));
        continue;
      }
      for (const auto& [c, wc] : g) add(f(a, v, (1 - a - v) * c), wa * wb * wc * (1 - a) * (1 - a - v));
    }
  }
  return acc;
}

/// Direct integral of R~ over a parametric frame's unit simplex.
inline TriangularCoeffs<double> direct_moments(const ParametricFrame<double>& fr, int p) {
  return simplex_tensor_integral(dimension(fr.kind), p,
                                 [&](double u, double v, double w) { return eval_regular_tilde(map_point(fr, u, v, w), p); });
}

using gk = boost::math::quadrature::gauss_kronrod<double, 15>;
inline constexpr unsigned gk_depth = 15;

template <class F>
double adaptive_1d(F&& f, double tol = 1e-12) {
  return gk::integrate(f, 0.0, 1.0, gk_depth, tol);
}

/// Integral over the unit triangle {u, v >= 0, u + v <= 1}.
template <class F>
double adaptive_2d(F&& f, double tol = 1e-12) {
  return gk::integrate([&](double u) { return gk::integrate([&](double v) { return f(u, v); }, 0.0, 1.0 - u, gk_depth, tol); },
                       0.0, 1.0, gk_depth, tol);
}

/// Integral over the unit tetrahedron.
template <class F>
double adaptive_3d(F&& f, double tol = 1e-11) {
  return gk::integrate(
      [&](double u) {
        return gk::integrate(
            [&](double v) {
              return gk::integrate([&](double w) { return f(u, v, w); }, 0.0, 1.0 - u - v, gk_depth, tol);
            },
            0.0, 1.0 - u, gk_depth, tol);
      },
      0.0, 1.0, gk_depth, tol);
}

/// The defining integral of each potential by adaptive quadrature of the
/// Green's function (or its normal derivative) over the element.
inline double adaptive_potential(KernelKind kind, const SimplexElement<double>& e, const Point3& r) {
  const auto f = frame_from_vertices(e, Point3{});
  const double J = detail::raw_jacobian(e);
  const double c = 1.0 / (4.0 * M_PI);
  switch (kind) {
    case KernelKind::K:
      return e.density * J * adaptive_1d([&](double u) { return c / norm(r - map_point(f, u)); });
    case KernelKind::L:
      return e.density * J * adaptive_2d([&](double u, double v) { return c / norm(r - map_point(f, u, v)); });
    case KernelKind::M: {
      const Point3 n = unit_normal(e);
      return e.density * J * adaptive_2d([&](double u, double v) {
               const Point3 d = r - map_point(f, u, v);
               const double l = norm(d);
               return c * dot(d, n) / (l * l * l);
             });
    }
    case KernelKind::N:
      return e.density * J * adaptive_3d([&](double u, double v, double w) { return c / norm(r - map_point(f, u, v, w)); });
  }
  return 0.0;
}

/// |a - b| at every (n, m), relative to the largest |b| of that degree.
inline double per_degree_difference(const TriangularCoeffs<double>& a, const TriangularCoeffs<double>& b) {
  double worst = 0.0;
  for (int n = 0; n < a.truncation(); ++n) {
    double scale = 0.0;
    for (int m = 0; m <= n; ++m) scale = std::max(scale, std::abs(b(n, m)));
    if (scale == 0.0) scale = 1.0;
    for (int m = 0; m <= n; ++m) worst = std::max(worst, std::abs(a(n, m) - b(n, m)) / scale);
  }
  return worst;
}

/// Random point at 0.2 to 3 diameters from the centroid and at least 0.1
/// diameter from the element's support.
inline Point3 exterior_point(const SimplexElement<double>& e, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> s(0.2, 3.0);
  for (;;) {
    const Point3 r = centroid(e) + random_direction(rng) * (s(rng) * diameter(e));
    if (distance_to_support(e, r) >= 0.1 * diameter(e)) return r;
  }
}

inline Point3 random_point(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  const double x = u(rng), y = u(rng), z = u(rng);
  return {x, y, z};
}

}  // namespace q2x::testing
