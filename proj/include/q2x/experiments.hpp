#pragma once

// Drivers behind the command-line tool and the acceptance runner: the
// reference accuracy sweep, the recursion/quadrature/oracle cross-check, the
// timing comparison and batch expansion of a mesh.

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "q2x/analytic.hpp"
#include "q2x/expansion.hpp"
#include "q2x/quadrature.hpp"
#include "q2x/series.hpp"

namespace q2x {

/// Arithmetic used by the accuracy sweep. binary128 needs GCC's __float128.
enum class Precision { binary64, binary128 };

bool precision_available(Precision p);

/// Distance of the reference element's center from the expansion center.
inline constexpr double reference_source_distance = 0.86602540378443864676;

/// Reference element centered at rc = (sqrt(3)/2, 0, 0), vertices on the
/// sphere of radius rt about rc; the expansion center is the origin.
template <class Real>
SimplexElement<Real> reference_element(ElementKind kind, Real rt) {
  const Real s3 = rmath::sqrt(Real(3));
  const Vec3<Real> rc{s3 / 2, Real(0), Real(0)};
  const auto at = [&](Real x, Real y, Real z) { return rc + Vec3<Real>{x, y, z} * rt; };
  switch (kind) {
    case ElementKind::segment: return SimplexElement<Real>::segment(at(-1, 0, 0), at(1, 0, 0));
    case ElementKind::triangle:
      return SimplexElement<Real>::triangle(at(1, 0, 0), at(Real(-1) / 2, s3 / 2, 0), at(Real(-1) / 2, -s3 / 2, 0));
    case ElementKind::tetrahedron: {
      const Real r2 = rmath::sqrt(Real(2));
      const Real r23 = rmath::sqrt(Real(2) / 3);
      return SimplexElement<Real>::tetrahedron(at(1, 0, 0), at(Real(-1) / 3, -r2 / 3, r23),
                                               at(Real(-1) / 3, -r2 / 3, -r23), at(Real(-1) / 3, 2 * r2 / 3, 0));
    }
  }
  throw std::invalid_argument("unknown element kind");
}

/// Evaluation point d (sqrt(3)/2, 0, 1/2).
template <class Real>
Vec3<Real> reference_point(Real d) {
  return Vec3<Real>{rmath::sqrt(Real(3)) / 2, Real(0), Real(1) / 2} * d;
}

/// Closed-form value of the potential `kind` of element e at r.
template <class Real>
Real exact_potential(KernelKind kind, const SimplexElement<Real>& e, const Vec3<Real>& r) {
  switch (kind) {
    case KernelKind::K: return segment_potential_exact(e, r);
    case KernelKind::L: return triangle_layers_exact(e, r).single_layer;
    case KernelKind::M: return triangle_layers_exact(e, r).double_layer;
    case KernelKind::N: return tetra_potential_exact(e, r);
  }
  throw std::invalid_argument("unknown kernel kind");
}

struct AccuracyRow {
  KernelKind kind;
  int p;
  double d;
  double error;
  double bound;
};

/// Relative series error on the reference geometry for every (p, d), with
/// the error model bound at constant C.
std::vector<AccuracyRow> accuracy_sweep(KernelKind kind, const std::vector<int>& ps, const std::vector<double>& ds,
                                        double rt, Precision precision, double C = 0.1);

/// n points log-spaced over [lo, hi]; n == 1 gives {lo}.
std::vector<double> log_spaced(double lo, double hi, int n);

/// Largest |a(n,m) - b(n,m)| / max_m' max(|a(n,m')|, |b(n,m')|) over all
/// degrees; degrees that are zero in both are skipped.
double max_normalized_difference(const TriangularCoeffs<double>& a, const TriangularCoeffs<double>& b);

/// Element with vertices uniform in [0,1]^3 and no interior angle/aspect
/// collapse (J >= 0.05 h^dim); density uniform in [0.5, 2].
SimplexElement<double> random_element(ElementKind kind, std::mt19937_64& rng);

/// Point uniform in the ball of radius `radius` about c.
Point3 random_point_in_ball(const Point3& c, double radius, std::mt19937_64& rng);

/// Uniform random unit vector.
Point3 random_direction(std::mt19937_64& rng);

struct CheckOptions {
  int p_max = 10;
  std::uint64_t seed = 1;
  int count = 100;
  bool inject_degenerate = false;
};

struct CheckFailure {
  KernelKind kind;
  int index;
  std::string what;
};

struct CheckSummary {
  KernelKind kind;
  int cases = 0;
  double max_coeff_diff = 0.0;     ///< recursion vs quadrature, normalized per degree
  double max_series_ratio = 0.0;   ///< series error / allowed error
};

struct CheckReport {
  std::vector<CheckSummary> summaries;
  std::vector<CheckFailure> failures;
  bool ok() const { return failures.empty(); }
};

/// Tolerance for recursion-vs-quadrature agreement.
inline constexpr double coefficient_tolerance = 1e-12;

/// Cross-check of `count` random elements per kind at p = p_max. Each element
/// is expanded about a random center within distance 2 of its centroid; the
/// series is compared against the oracle at distance 4 rho from the center,
/// rho being the farthest vertex, with the geometric-majorant tail bound plus a
/// 1e-13 round-off allowance.
CheckReport run_check(const CheckOptions& opts);

struct BenchTiming {
  double recursive_ns = 0.0;
  double quadrature_ns = 0.0;
  double max_coeff_diff = 0.0;
};

/// Median time per expansion of the reference element (rt = 0.1, center at
/// the origin) by both methods. The quadrature rule is built once outside the
/// timed region. Each repetition times a batch long enough to span about a
/// millisecond.
BenchTiming bench_kind(KernelKind kind, int p, int reps);

class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Multipole coefficients of every element about one center, computed on up
/// to `threads` workers; output order is element order regardless of threads.
/// Throws IncompatibleKindError naming the first offending element index.
std::vector<MultipoleCoefficients<double>> expand_mesh(const std::vector<SimplexElement<double>>& elements,
                                                       const Point3& center, int p, KernelKind kind, int threads);

}  // namespace q2x
