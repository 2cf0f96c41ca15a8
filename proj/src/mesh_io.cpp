#include "q2x/mesh_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string_view>

namespace q2x {
namespace {

bool parse_double(std::string_view tok, double& out) {
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc() && ptr == tok.data() + tok.size();
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

}  // namespace

std::vector<SimplexElement<double>> parse_mesh(std::istream& in) {
  std::vector<SimplexElement<double>> elements;
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string_view line(raw);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const auto tok = split(line);
    if (tok.empty()) continue;

    ElementKind kind;
    if (tok[0] == "S") kind = ElementKind::segment;
    else if (tok[0] == "T") kind = ElementKind::triangle;
    else if (tok[0] == "Q") kind = ElementKind::tetrahedron;
    else throw ParseError(lineno, "unknown element tag '" + std::string(tok[0]) + "' (expected S, T or Q)");

    const int nv = vertex_count(kind);
    const std::size_t expected = std::size_t(3 * nv + 1);
    if (tok.size() - 1 != expected)
      throw ParseError(lineno, std::string(to_string(kind)) + " needs " + std::to_string(expected) +
                                   " numbers, got " + std::to_string(tok.size() - 1));
    double v[13];
    for (std::size_t i = 0; i < expected; ++i) {
      if (!parse_double(tok[i + 1], v[i]) || !std::isfinite(v[i]))
        throw ParseError(lineno, "not a finite number: '" + std::string(tok[i + 1]) + "'");
    }
    SimplexElement<double> e;
    e.kind = kind;
    for (int k = 0; k < nv; ++k) e.vertices[k] = {v[3 * k], v[3 * k + 1], v[3 * k + 2]};
    e.density = v[3 * nv];
    try {
      jacobian(e);
    } catch (const GeometryError& err) {
      throw ParseError(lineno, err.what());
    }
    elements.push_back(e);
  }
  return elements;
}

std::vector<SimplexElement<double>> read_mesh_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open mesh file '" + path + "'");
  return parse_mesh(in);
}

}  // namespace q2x
