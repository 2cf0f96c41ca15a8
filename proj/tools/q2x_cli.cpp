// q2x: multipole expansions of simplex layer potentials from the command line.
//
// Exit codes: 0 ok, 1 tolerance/validation failure, 2 usage or input error.

#include <CLI11.hpp>

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include "q2x/experiments.hpp"
#include "q2x/mesh_io.hpp"

namespace {

using namespace q2x;

constexpr int exit_ok = 0;
constexpr int exit_validation = 1;
constexpr int exit_usage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string num(double v) {
  if (v == 0.0) v = 0.0;  // no "-0" in the output
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

KernelKind parse_kind(std::string s) {
  for (auto& c : s) c = char(std::tolower(static_cast<unsigned char>(c)));
  if (s == "k" || s == "segment") return KernelKind::K;
  if (s == "l" || s == "triangle") return KernelKind::L;
  if (s == "m") return KernelKind::M;
  if (s == "n" || s == "tetra" || s == "tetrahedron") return KernelKind::N;
  throw UsageError("unknown kind '" + s + "' (expected K, L, M or N)");
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  if (!s.empty() && s.back() == ',') out.emplace_back();
  return out;
}

std::vector<int> parse_p_list(const std::string& s) {
  std::vector<int> ps;
  for (const auto& item : split_commas(s)) {
    std::size_t used = 0;
    int p = 0;
    try {
      p = std::stoi(item, &used);
    } catch (const std::exception&) {
      throw UsageError("bad truncation number '" + item + "' in p-list");
    }
    if (used != item.size() || p < 1) throw UsageError("bad truncation number '" + item + "' in p-list");
    ps.push_back(p);
  }
  if (ps.empty()) throw UsageError("empty p-list");
  return ps;
}

Point3 parse_point(const std::string& s) {
  const auto parts = split_commas(s);
  if (parts.size() != 3) throw UsageError("expected x,y,z but got '" + s + "'");
  double v[3];
  for (int i = 0; i < 3; ++i) {
    std::size_t used = 0;
    try {
      v[i] = std::stod(parts[i], &used);
    } catch (const std::exception&) {
      throw UsageError("bad coordinate '" + parts[i] + "'");
    }
    if (used != parts[i].size() || !std::isfinite(v[i])) throw UsageError("bad coordinate '" + parts[i] + "'");
  }
  return {v[0], v[1], v[2]};
}

// Writes `text` to `path`, or stdout when the path is empty.
void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot open output file '" + path + "'");
  out << text;
  if (!out) throw UsageError("failed writing '" + path + "'");
}

struct AccuracyArgs {
  std::string kind, p_list = "4,8,12,16,20", out, precision = "double";
  double d_min = 1.5, d_max = 10.0, rt = 0.1;
  int d_steps = 50;
};

int cmd_accuracy(const AccuracyArgs& a) {
  const KernelKind kind = parse_kind(a.kind);
  const auto ps = parse_p_list(a.p_list);
  if (!(a.rt > 0.0) || !(a.rt < reference_source_distance)) throw UsageError("rt must lie in (0, sqrt(3)/2)");
  if (!(a.d_min > reference_source_distance + a.rt))
    throw UsageError("d-min must exceed sqrt(3)/2 + rt, the radius enclosing the element");
  if (!(a.d_max >= a.d_min) || !std::isfinite(a.d_max)) throw UsageError("d-max must be finite and >= d-min");
  if (a.d_steps < 1) throw UsageError("d-steps must be >= 1");
  Precision prec;
  if (a.precision == "double") prec = Precision::binary64;
  else if (a.precision == "quad") prec = Precision::binary128;
  else throw UsageError("precision must be 'double' or 'quad'");
  if (!precision_available(prec)) throw UsageError("quad precision is not available in this build");

  const auto rows = accuracy_sweep(kind, ps, log_spaced(a.d_min, a.d_max, a.d_steps), a.rt, prec);
  std::string csv = "kind,p,d,error,bound\n";
  for (const auto& r : rows)
    csv += std::string(to_string(r.kind)) + "," + std::to_string(r.p) + "," + num(r.d) + "," + num(r.error) + "," +
           num(r.bound) + "\n";
  emit(a.out, csv);
  return exit_ok;
}

struct CheckArgs {
  int p_max = 10, count = 100;
  std::uint64_t seed = 1;
  bool inject_degenerate = false;
  std::string out;
};

int cmd_check(const CheckArgs& a) {
  if (a.p_max < 1) throw UsageError("p-max must be >= 1");
  if (a.count < 0) throw UsageError("count must be >= 0");
  const auto report = run_check({a.p_max, a.seed, a.count, a.inject_degenerate});
  std::string text = "kind,cases,max_coeff_diff,max_series_ratio\n";
  if (a.count > 0 || a.inject_degenerate) {
    for (const auto& s : report.summaries)
      text += std::string(to_string(s.kind)) + "," + std::to_string(s.cases) + "," + num(s.max_coeff_diff) + "," +
              num(s.max_series_ratio) + "\n";
  }
  emit(a.out, text);
  for (const auto& f : report.failures) std::cerr << "FAIL " << f.what << "\n";
  return report.ok() ? exit_ok : exit_validation;
}

struct BenchArgs {
  std::string kind, p_list = "4,8,16,32", out;
  int reps = 5;
};

int cmd_bench(const BenchArgs& a) {
  const KernelKind kind = parse_kind(a.kind);
  const auto ps = parse_p_list(a.p_list);
  if (a.reps < 1) throw UsageError("reps must be >= 1");
  std::string csv = "kind,p,method,ns_per_expansion\n";
  bool agree = true;
  for (int p : ps) {
    const auto t = bench_kind(kind, p, a.reps);
    if (!(t.max_coeff_diff <= coefficient_tolerance)) {
      std::cerr << "FAIL kind=" << to_string(kind) << " p=" << p << ": methods differ by " << t.max_coeff_diff << "\n";
      agree = false;
    }
    csv += std::string(to_string(kind)) + "," + std::to_string(p) + ",recursive," + num(t.recursive_ns) + "\n";
    csv += std::string(to_string(kind)) + "," + std::to_string(p) + ",quadrature," + num(t.quadrature_ns) + "\n";
  }
  emit(a.out, csv);
  return agree ? exit_ok : exit_validation;
}

struct ExpandArgs {
  std::string mesh, kind, center = "0,0,0", out;
  int p = 10;
  int threads = 0;
};

int cmd_expand(const ExpandArgs& a) {
  const KernelKind kind = parse_kind(a.kind);
  if (a.p < 1) throw UsageError("p must be >= 1");
  const Point3 center = parse_point(a.center);
  const int threads = a.threads > 0 ? a.threads : int(std::max(1u, std::thread::hardware_concurrency()));
  const auto elements = read_mesh_file(a.mesh);
  const auto coeffs = expand_mesh(elements, center, a.p, kind, threads);
  std::string csv = "element_index,n,m,re,im\n";
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const auto& c = coeffs[i].coeffs;
    for (int n = 0; n < a.p; ++n)
      for (int m = 0; m <= n; ++m)
        csv += std::to_string(i) + "," + std::to_string(n) + "," + std::to_string(m) + "," + num(c(n, m).real()) +
               "," + num(c(n, m).imag()) + "\n";
  }
  emit(a.out, csv);
  return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multipole expansion coefficients of Laplace layer potentials over simplices"};
  app.require_subcommand(1);

  AccuracyArgs acc;
  auto* s_acc = app.add_subcommand("accuracy", "series error against closed-form potentials on the reference geometry");
  s_acc->add_option("--kind", acc.kind, "K, L, M or N")->required();
  s_acc->add_option("--p-list", acc.p_list, "comma-separated truncation numbers")->capture_default_str();
  s_acc->add_option("--d-min", acc.d_min)->capture_default_str();
  s_acc->add_option("--d-max", acc.d_max)->capture_default_str();
  s_acc->add_option("--d-steps", acc.d_steps, "log-spaced samples")->capture_default_str();
  s_acc->add_option("--rt", acc.rt, "vertex sphere radius")->capture_default_str();
  s_acc->add_option("--precision", acc.precision, "double or quad")->capture_default_str();
  s_acc->add_option("--out", acc.out, "CSV path (default stdout)");

  CheckArgs chk;
  auto* s_chk = app.add_subcommand("check", "recursion vs quadrature and series vs oracle on random elements");
  s_chk->add_option("--p-max", chk.p_max)->capture_default_str();
  s_chk->add_option("--seed", chk.seed)->capture_default_str();
  s_chk->add_option("--count", chk.count, "elements per kind")->capture_default_str();
  s_chk->add_flag("--inject-degenerate", chk.inject_degenerate, "append a collinear triangle");
  s_chk->add_option("--out", chk.out, "report path (default stdout)");

  BenchArgs bench;
  auto* s_bench = app.add_subcommand("bench", "time recursive and quadrature expansion");
  s_bench->add_option("--kind", bench.kind, "K, L, M or N")->required();
  s_bench->add_option("--p-list", bench.p_list)->capture_default_str();
  s_bench->add_option("--reps", bench.reps)->capture_default_str();
  s_bench->add_option("--out", bench.out, "CSV path (default stdout)");

  ExpandArgs ex;
  auto* s_ex = app.add_subcommand("expand", "expand every element of a mesh file");
  s_ex->add_option("--mesh", ex.mesh, "mesh file")->required();
  s_ex->add_option("--kind", ex.kind, "K, L, M or N")->required();
  s_ex->add_option("--p", ex.p)->capture_default_str();
  s_ex->add_option("--center", ex.center, "x,y,z")->capture_default_str();
  s_ex->add_option("--threads", ex.threads, "workers (0 = hardware)")->capture_default_str();
  s_ex->add_option("--out", ex.out, "CSV path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_usage;
  }

  try {
    if (s_acc->parsed()) return cmd_accuracy(acc);
    if (s_chk->parsed()) return cmd_check(chk);
    if (s_bench->parsed()) return cmd_bench(bench);
    if (s_ex->parsed()) return cmd_expand(ex);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const IncompatibleKindError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_validation;
  }
  return exit_usage;
}
