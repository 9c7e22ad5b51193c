#include "ccrheat/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "ccrheat/report.hpp"

namespace ccrheat::io {

namespace {

Json read_header(std::istream& in, const char* kind) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("# ", 0) != 0) throw std::runtime_error("missing JSON header line");
  Json h;
  try {
    h = Json::parse(line.substr(2));
  } catch (const Json::parse_error& e) {
    throw std::runtime_error(std::string("bad JSON header: ") + e.what());
  }
  if (h.value("kind", "") != kind) throw std::runtime_error(std::string("expected kind ") + kind);
  if (!std::getline(in, line)) throw std::runtime_error("missing CSV column line");
  return h;
}

std::vector<double> parse_row(const std::string& line, std::size_t fields) {
  std::vector<double> v;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    // strtod rather than stod: subnormal values must parse, not throw
    char* end = nullptr;
    const double d = std::strtod(cell.c_str(), &end);
    if (cell.empty() || end != cell.c_str() + cell.size()) throw std::runtime_error("bad number: " + cell);
    v.push_back(d);
  }
  if (v.size() != fields) throw std::runtime_error("wrong field count in row: " + line);
  return v;
}

void write_grid_values(std::ostream& out, const Json& header, const GridSpec& grid, std::span<const cplx> values) {
  out << "# " << header.dump() << "\n" << "x,y,re,im\n";
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const PhasePoint z = grid.point(k);
    out << exact(z.x) << ',' << exact(z.y) << ',' << exact(values[k].real()) << ',' << exact(values[k].imag())
        << '\n';
  }
}

std::vector<cplx> read_grid_values(std::istream& in, const GridSpec& grid) {
  std::vector<cplx> values(grid.size());
  std::string line;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (!std::getline(in, line)) throw std::runtime_error("truncated CSV body");
    const auto r = parse_row(line, 4);
    const PhasePoint z = grid.point(k);
    if (r[0] != z.x || r[1] != z.y) throw std::runtime_error("row coordinates do not match the grid");
    values[k] = {r[2], r[3]};
  }
  return values;
}

GridSpec header_grid(const Json& h) {
  return GridSpec(h.at("half_width").get<double>(), h.at("points").get<int>());
}

template <class T>
void save_impl(const std::string& path, const T& value) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  write(out, value);
}

}  // namespace

std::string exact(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write(std::ostream& out, const GridMeasure& mu) {
  const Json h{{"kind", "measure"}, {"half_width", mu.grid().half_width()}, {"points", mu.grid().points()}};
  write_grid_values(out, h, mu.grid(), mu.weights());
}

void write(std::ostream& out, const SampledFunction& f) {
  const Json h{{"kind", "sampled"}, {"half_width", f.grid().half_width()}, {"points", f.grid().points()}};
  write_grid_values(out, h, f.grid(), f.values());
}

void write(std::ostream& out, const CharFunction& f) {
  const Json h{{"kind", "char_function"},
               {"half_width", f.grid().half_width()},
               {"points", f.grid().points()},
               {"source_dim", f.source_dim()},
               {"support_radius", f.support_radius()}};
  write_grid_values(out, h, f.grid(), f.values());
}

void write(std::ostream& out, const FockOperator& a, const std::string& tag) {
  const Json h{{"kind", "operator"}, {"dim", a.dim()}, {"tag", tag}};
  out << "# " << h.dump() << "\n" << "row,col,re,im\n";
  for (int i = 0; i < a.dim(); ++i) {
    for (int j = 0; j < a.dim(); ++j) {
      out << i << ',' << j << ',' << exact(a(i, j).real()) << ',' << exact(a(i, j).imag()) << '\n';
    }
  }
}

GridMeasure read_measure(std::istream& in) {
  const Json h = read_header(in, "measure");
  const GridSpec grid = header_grid(h);
  return GridMeasure(grid, read_grid_values(in, grid));
}

SampledFunction read_sampled(std::istream& in) {
  const Json h = read_header(in, "sampled");
  const GridSpec grid = header_grid(h);
  return SampledFunction(grid, read_grid_values(in, grid));
}

CharFunction read_char_function(std::istream& in) {
  const Json h = read_header(in, "char_function");
  const GridSpec grid = header_grid(h);
  return CharFunction(grid, read_grid_values(in, grid), h.at("source_dim").get<int>(),
                      h.at("support_radius").get<double>());
}

FockOperator read_operator(std::istream& in, std::string* tag) {
  const Json h = read_header(in, "operator");
  const int dim = h.at("dim").get<int>();
  if (dim < 1) throw std::runtime_error("operator dim must be >= 1");
  if (tag) *tag = h.value("tag", "");
  Matrix m = Matrix::Zero(dim, dim);
  std::string line;
  for (long k = 0; k < static_cast<long>(dim) * dim; ++k) {
    if (!std::getline(in, line)) throw std::runtime_error("truncated CSV body");
    const auto r = parse_row(line, 4);
    const int i = static_cast<int>(r[0]);
    const int j = static_cast<int>(r[1]);
    if (i < 0 || j < 0 || i >= dim || j >= dim || i != r[0] || j != r[1]) {
      throw std::runtime_error("bad operator index in row: " + line);
    }
    m(i, j) = {r[2], r[3]};
  }
  return FockOperator(std::move(m));
}

void save(const std::string& path, const GridMeasure& mu) { save_impl(path, mu); }
void save(const std::string& path, const SampledFunction& f) { save_impl(path, f); }
void save(const std::string& path, const CharFunction& f) { save_impl(path, f); }
void save(const std::string& path, const FockOperator& a, const std::string& tag) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  write(out, a, tag);
}

}  // namespace ccrheat::io
