#include "rcdim/io.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <string>

#include "rcdim/errors.hpp"
#include "rcdim/geometry.hpp"

namespace rcdim {
namespace {

[[noreturn]] void parse_fail(const std::string& path, std::size_t line,
                             const std::string& what) {
  fail(ErrorCode::ParseError,
       path + ":" + std::to_string(line) + ": " + what);
}

}  // namespace

std::string format_double17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_point_csv(const std::string& path, const PointCloud& cloud) {
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) fail(ErrorCode::IoError, "cannot open " + path + " for writing");
  const std::size_t n = cloud.size();
  std::string line;
  for (std::size_t i = 0; i < n; ++i) {
    line.clear();
    const auto p = cloud.point(i);
    for (int k = 0; k < cloud.dim; ++k) {
      if (k) line += ',';
      line += format_double17(p[k]);
    }
    line += '\n';
    if (std::fwrite(line.data(), 1, line.size(), f) != line.size()) {
      std::fclose(f);
      fail(ErrorCode::IoError, "short write to " + path);
    }
  }
  if (std::fclose(f) != 0) fail(ErrorCode::IoError, "close failed: " + path);
}

PointCloud read_point_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::IoError, "cannot open " + path);
  std::vector<double> coords;
  int dim = 0;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const char* p = line.c_str();
    int cols = 0;
    for (;;) {
      char* end = nullptr;
      const double v = std::strtod(p, &end);
      if (end == p) parse_fail(path, lineno, "expected a number");
      coords.push_back(v);
      ++cols;
      p = end;
      while (*p == ' ' || *p == '\t') ++p;
      if (*p == ',') {
        ++p;
        continue;
      }
      if (*p == '\0') break;
      parse_fail(path, lineno, std::string("unexpected character '") + *p + "'");
    }
    if (dim == 0) {
      dim = cols;
    } else if (cols != dim) {
      parse_fail(path, lineno,
                 "row has " + std::to_string(cols) + " columns, expected " +
                     std::to_string(dim));
    }
  }
  if (dim == 0) fail(ErrorCode::ParseError, path + ": no data rows");
  PointCloud cloud(std::move(coords), dim);
  cloud.validate();
  return cloud;
}

std::vector<std::uint32_t> EdgeListGraph::degrees() const {
  std::vector<std::uint32_t> deg(n, 0);
  for (const auto& [i, j] : edges) {
    ++deg[i];
    ++deg[j];
  }
  return deg;
}

EdgeListGraph read_edge_list(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::IoError, "cannot open " + path);
  EdgeListGraph g;
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (!have_header) {
      char tag[8] = {0};
      unsigned long long count = 0;
      if (std::sscanf(line.c_str(), "%7s %llu", tag, &count) != 2 ||
          std::strcmp(tag, "n") != 0)
        parse_fail(path, lineno, "expected header 'n <count>'");
      g.n = static_cast<std::size_t>(count);
      have_header = true;
      continue;
    }
    unsigned long long i = 0, j = 0;
    if (std::sscanf(line.c_str(), "%llu %llu", &i, &j) != 2)
      parse_fail(path, lineno, "expected an 'i j' edge");
    if (!(i < j))
      parse_fail(path, lineno, "edges must satisfy i < j");
    if (j >= g.n)
      parse_fail(path, lineno, "vertex index out of range");
    g.edges.emplace_back(static_cast<std::uint32_t>(i),
                         static_cast<std::uint32_t>(j));
  }
  if (!have_header) fail(ErrorCode::ParseError, path + ": missing header");
  std::sort(g.edges.begin(), g.edges.end());
  if (std::adjacent_find(g.edges.begin(), g.edges.end()) != g.edges.end())
    fail(ErrorCode::ParseError, path + ": duplicate edge");
  return g;
}

void write_edge_list(const std::string& path, const EdgeListGraph& graph) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::IoError, "cannot open " + path + " for writing");
  out << "n " << graph.n << "\n";
  for (const auto& [i, j] : graph.edges) out << i << " " << j << "\n";
  if (!out) fail(ErrorCode::IoError, "write failed: " + path);
}

EdgeListGraph edges_from_cloud(const PointCloud& cloud, MetricSpec metric,
                               double radius, int threads) {
  (void)metric;
  (void)threads;
  const std::size_t n = cloud.size();
  if (n < 2) fail(ErrorCode::DegenerateCloud, "need at least 2 points");
  if (!(radius > 0.0)) fail(ErrorCode::InvalidRadius, "radius must be positive");
  const double r2 = radius * radius;
  EdgeListGraph g;
  g.n = n;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const auto pi = cloud.point(i);
    for (std::size_t j = i + 1; j < n; ++j) {
      if (squared_distance(pi, cloud.point(j)) <= r2)
        g.edges.emplace_back(static_cast<std::uint32_t>(i),
                             static_cast<std::uint32_t>(j));
    }
  }
  return g;
}

void validate_nested(const EdgeListGraph& at_eps,
                     const EdgeListGraph& at_2eps) {
  if (at_eps.n != at_2eps.n)
    fail(ErrorCode::NestednessViolation,
         "edge lists disagree on the vertex count");
  if (!std::includes(at_2eps.edges.begin(), at_2eps.edges.end(),
                     at_eps.edges.begin(), at_eps.edges.end()))
    fail(ErrorCode::NestednessViolation,
         "edges at the smaller radius are not a subset of the larger radius");
}

}  // namespace rcdim
