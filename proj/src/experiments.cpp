#include "q2x/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <sstream>
#include <thread>

namespace q2x {

bool precision_available(Precision p) {
#ifdef Q2X_HAVE_FLOAT128
  (void)p;
  return true;
#else
  return p == Precision::binary64;
#endif
}

namespace {

template <class Real>
std::vector<AccuracyRow> sweep_in(KernelKind kind, const std::vector<int>& ps, const std::vector<double>& ds,
                                  double rt, double C) {
  const auto e = reference_element<Real>(element_kind_for(kind), Real(rt));
  std::vector<Real> exact;
  exact.reserve(ds.size());
  for (double d : ds) exact.push_back(exact_potential(kind, e, reference_point<Real>(Real(d))));

  std::vector<AccuracyRow> rows;
  for (int p : ps) {
    const auto c = expand(e, ExpansionRequest<Real>{{}, p, kind});
    for (std::size_t i = 0; i < ds.size(); ++i) {
      const Real approx = evaluate_expansion(c, reference_point<Real>(Real(ds[i])));
      const double err = double(relative_error(approx, exact[i]));
      rows.push_back({kind, p, ds[i], err, error_bound(kind, p, ds[i], reference_source_distance, C)});
    }
  }
  return rows;
}

}  // namespace

std::vector<AccuracyRow> accuracy_sweep(KernelKind kind, const std::vector<int>& ps, const std::vector<double>& ds,
                                        double rt, Precision precision, double C) {
  if (!precision_available(precision)) throw std::invalid_argument("binary128 arithmetic not available in this build");
#ifdef Q2X_HAVE_FLOAT128
  if (precision == Precision::binary128) return sweep_in<float128>(kind, ps, ds, rt, C);
#endif
  return sweep_in<double>(kind, ps, ds, rt, C);
}

std::vector<double> log_spaced(double lo, double hi, int n) {
  if (n < 1) throw std::invalid_argument("need at least one sample");
  if (!(lo > 0.0) || !(hi >= lo)) throw std::invalid_argument("log spacing needs 0 < lo <= hi");
  std::vector<double> out(n);
  if (n == 1) {
    out[0] = lo;
    return out;
  }
  const double a = std::log(lo), b = std::log(hi);
  for (int i = 0; i < n; ++i) out[i] = std::exp(a + (b - a) * i / (n - 1));
  out.front() = lo;
  out.back() = hi;
  return out;
}

double max_normalized_difference(const TriangularCoeffs<double>& a, const TriangularCoeffs<double>& b) {
  if (a.truncation() != b.truncation()) throw std::invalid_argument("truncation mismatch");
  double worst = 0.0;
  for (int n = 0; n < a.truncation(); ++n) {
    const auto ra = a.row(n), rb = b.row(n);
    double scale = 0.0;
    for (int m = 0; m <= n; ++m) scale = std::max({scale, std::abs(ra[m]), std::abs(rb[m])});
    if (scale == 0.0) continue;
    for (int m = 0; m <= n; ++m) worst = std::max(worst, std::abs(ra[m] - rb[m]) / scale);
  }
  return worst;
}

SimplexElement<double> random_element(ElementKind kind, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> rho(0.5, 2.0);
  const auto pt = [&] {
    const double x = unit(rng), y = unit(rng), z = unit(rng);
    return Point3{x, y, z};
  };
  for (;;) {
    SimplexElement<double> e;
    e.kind = kind;
    for (int i = 0; i < vertex_count(kind); ++i) e.vertices[i] = pt();
    e.density = rho(rng);
    const double h = max_edge_length(e);
    const double jac = detail::raw_jacobian(e);
    if (h > 0.0 && jac >= 0.05 * std::pow(h, dimension(kind))) return e;
  }
}

Point3 random_direction(std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  for (;;) {
    const double x = g(rng), y = g(rng), z = g(rng);
    const Point3 v{x, y, z};
    const double len = norm(v);
    if (len > 1e-8) return v / len;
  }
}

Point3 random_point_in_ball(const Point3& c, double radius, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const Point3 dir = random_direction(rng);
  return c + dir * (radius * std::cbrt(unit(rng)));
}

namespace {

constexpr KernelKind all_kinds[] = {KernelKind::K, KernelKind::L, KernelKind::M, KernelKind::N};

// Allowed relative series error at distance ratio x = rho/d; see run_check.
double series_allowance(KernelKind kind, int p, double x) {
  if (kind == KernelKind::M) return std::pow(x, p - 1) * ((p + 1) - p * x) / ((1 - x) * (1 - x));
  return std::pow(x, p) * (1 + x) / (1 - x);
}

constexpr double roundoff_allowance = 1e-13;

std::string describe(KernelKind kind, std::uint64_t seed, int index) {
  std::ostringstream os;
  os << "kind=" << to_string(kind) << " seed=" << seed << " index=" << index;
  return os.str();
}

}  // namespace

CheckReport run_check(const CheckOptions& opts) {
  if (opts.p_max < 1) throw std::invalid_argument("p-max must be >= 1");
  if (opts.count < 0) throw std::invalid_argument("count must be >= 0");
  CheckReport report;
  const int p = opts.p_max;
  for (KernelKind kind : all_kinds) {
    std::mt19937_64 rng(opts.seed * 4 + std::uint64_t(kind));
    CheckSummary sum{kind};
    const auto rule = simplex_rule<double>(dimension(element_kind_for(kind)), required_degree(kind, p));
    const int total = opts.count + (opts.inject_degenerate && kind == KernelKind::L ? 1 : 0);
    for (int i = 0; i < total; ++i) {
      SimplexElement<double> e;
      Point3 center;
      if (i < opts.count) {
        e = random_element(element_kind_for(kind), rng);
        center = random_point_in_ball(centroid(e), 2.0, rng);
      } else {
        e = SimplexElement<double>::triangle({0, 0, 0}, {1, 1, 1}, {2, 2, 2});
        center = {};
      }
      const Point3 dir = random_direction(rng);
      try {
        const ExpansionRequest<double> req{center, p, kind};
        const auto rec = expand(e, req);
        const auto quad = expand_by_quadrature(e, req, rule);
        const double diff = max_normalized_difference(rec.coeffs, quad.coeffs);
        sum.max_coeff_diff = std::max(sum.max_coeff_diff, diff);
        if (!(diff <= coefficient_tolerance)) {
          std::ostringstream os;
          os << describe(kind, opts.seed, i) << ": recursion/quadrature difference " << diff << " > "
             << coefficient_tolerance;
          report.failures.push_back({kind, i, os.str()});
        }

        double rho = 0.0;
        for (const auto& v : e.points()) rho = std::max(rho, norm(v - center));
        const double d = 4.0 * rho;
        const Point3 r = center + dir * d;
        const double exact = exact_potential(kind, e, r);
        const double approx = evaluate_expansion(rec, r);
        const double scale = kind == KernelKind::M ? measure(e) * std::abs(e.density) / (4 * rmath::pi<double>() * d * d)
                                                   : std::abs(exact);
        const double allowed = series_allowance(kind, p, 0.25) + roundoff_allowance;
        const double ratio = std::abs(approx - exact) / scale / allowed;
        sum.max_series_ratio = std::max(sum.max_series_ratio, ratio);
        if (!(ratio <= 1.0)) {
          std::ostringstream os;
          os << describe(kind, opts.seed, i) << ": series error " << std::abs(approx - exact) / scale
             << " exceeds " << allowed;
          report.failures.push_back({kind, i, os.str()});
        }
      } catch (const GeometryError& err) {
        report.failures.push_back({kind, i, describe(kind, opts.seed, i) + ": geometry error: " + err.what()});
      }
      ++sum.cases;
    }
    report.summaries.push_back(sum);
  }
  return report;
}

namespace {

using bench_clock = std::chrono::steady_clock;

// Median over `reps` batches of the time per call, each batch sized to take
// at least ~10 ms so scheduler noise stays small against the batch.
template <class F>
double median_ns_per_call(F&& f, int reps) {
  long batch = 1;
  for (;;) {
    const auto t0 = bench_clock::now();
    for (long i = 0; i < batch; ++i) f();
    const double ns = std::chrono::duration<double, std::nano>(bench_clock::now() - t0).count();
    if (ns >= 1e7 || batch >= (1L << 24)) break;
    batch *= 2;
  }
  std::vector<double> samples;
  samples.reserve(reps);
  for (int r = 0; r < reps; ++r) {
    const auto t0 = bench_clock::now();
    for (long i = 0; i < batch; ++i) f();
    samples.push_back(std::chrono::duration<double, std::nano>(bench_clock::now() - t0).count() / double(batch));
  }
  std::nth_element(samples.begin(), samples.begin() + samples.size() / 2, samples.end());
  return samples[samples.size() / 2];
}

}  // namespace

BenchTiming bench_kind(KernelKind kind, int p, int reps) {
  if (reps < 1) throw std::invalid_argument("repetitions must be >= 1");
  if (p < 1) throw std::invalid_argument("truncation number must be >= 1");
  const auto e = reference_element<double>(element_kind_for(kind), 0.1);
  const ExpansionRequest<double> req{{}, p, kind};
  const auto rule = simplex_rule<double>(dimension(e.kind), required_degree(kind, p));

  BenchTiming t;
  t.max_coeff_diff = max_normalized_difference(expand(e, req).coeffs, expand_by_quadrature(e, req, rule).coeffs);
  volatile double sink = 0.0;
  t.recursive_ns = median_ns_per_call([&] { sink = sink + expand(e, req).coeffs(0, 0).real(); }, reps);
  t.quadrature_ns =
      median_ns_per_call([&] { sink = sink + expand_by_quadrature(e, req, rule).coeffs(0, 0).real(); }, reps);
  return t;
}

std::vector<MultipoleCoefficients<double>> expand_mesh(const std::vector<SimplexElement<double>>& elements,
                                                       const Point3& center, int p, KernelKind kind, int threads) {
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (elements[i].kind != element_kind_for(kind))
      throw IncompatibleKindError("element " + std::to_string(i) + " is a " + std::string(to_string(elements[i].kind)) +
                                  ", kernel " + std::string(to_string(kind)) + " needs a " +
                                  std::string(to_string(element_kind_for(kind))));
  }
  std::vector<MultipoleCoefficients<double>> out(elements.size());
  const ExpansionRequest<double> req{center, p, kind};
  const std::size_t workers =
      std::max<std::size_t>(1, std::min<std::size_t>(threads < 1 ? 1 : std::size_t(threads), elements.size()));
  if (workers == 1) {
    for (std::size_t i = 0; i < elements.size(); ++i) out[i] = expand(elements[i], req);
    return out;
  }
  // Errors are rethrown for the lowest failing index so the outcome does not
  // depend on scheduling.
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(elements.size());
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < elements.size(); i = next++) {
        try {
          out[i] = expand(elements[i], req);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  for (const auto& err : errors)
    if (err) std::rethrow_exception(err);
  return out;
}

}  // namespace q2x
