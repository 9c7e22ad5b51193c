#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

#include "ccrheat/io.hpp"
#include "doctest.h"

using namespace ccrheat;

namespace {

template <class A, class B>
bool bit_equal(const A& a, const B& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].real() != b[i].real() || a[i].imag() != b[i].imag()) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("exact formatting round-trips awkward doubles") {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 4.9e-324, 1.7976931348623157e308, -0.0}) {
    CHECK(std::strtod(io::exact(v).c_str(), nullptr) == v);
  }
}

TEST_CASE("GridMeasure and SampledFunction round trip bit-exactly") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  const GridSpec grid(2.5, 10);
  GridMeasure mu(grid);
  for (cplx& w : mu.weights()) w = {g(rng), g(rng) * 1e-310};
  std::stringstream s;
  io::write(s, mu);
  const GridMeasure back = io::read_measure(s);
  CHECK(back.grid() == grid);
  CHECK(bit_equal(back.weights(), mu.weights()));

  const SampledFunction f(GridSpec(1.0, 6), std::vector<cplx>(36, cplx{std::sqrt(2.0), -1.0 / 7.0}));
  std::stringstream s2;
  io::write(s2, f);
  const SampledFunction fb = io::read_sampled(s2);
  CHECK(bit_equal(fb.values(), f.values()));

  std::stringstream wrong(s2.str());
  CHECK_THROWS_AS(io::read_measure(wrong), std::runtime_error);
}

TEST_CASE("CharFunction round trip keeps source_dim and support") {
  const GridSpec grid = GridSpec::covering(2.0, 0.5);
  const CharFunction f = char_function(number_state(1, 12).op(), grid, 1.8);
  std::stringstream s;
  io::write(s, f);
  const CharFunction b = io::read_char_function(s);
  CHECK(b.source_dim() == 12);
  CHECK(b.support_radius() == 1.8);
  CHECK(bit_equal(b.values(), f.values()));
}

TEST_CASE("FockOperator round trip with tag") {
  std::mt19937_64 rng(9);
  const FockOperator a = random_density(7, 7, rng).op();
  std::stringstream s;
  io::write(s, a, "rho_7");
  std::string tag;
  const FockOperator b = io::read_operator(s, &tag);
  CHECK(tag == "rho_7");
  CHECK(b.matrix() == a.matrix());
}

TEST_CASE("malformed input is rejected") {
  std::stringstream no_header("x,y,re,im\n");
  CHECK_THROWS_AS(io::read_measure(no_header), std::runtime_error);
  std::stringstream bad_json("# {oops\nx,y,re,im\n");
  CHECK_THROWS_AS(io::read_measure(bad_json), std::runtime_error);

  std::stringstream good;
  io::write(good, point_mass(GridSpec(1.0, 2), {0, 0}));
  std::string text = good.str();
  std::stringstream truncated(text.substr(0, text.rfind('\n', text.size() - 2) + 1));
  CHECK_THROWS_AS(io::read_measure(truncated), std::runtime_error);
  std::string garbled = text;
  garbled[garbled.rfind(',') + 1] = 'z';
  std::stringstream gs(garbled);
  CHECK_THROWS_AS(io::read_measure(gs), std::runtime_error);
}

TEST_CASE("file helpers") {
  const auto dir = std::filesystem::temp_directory_path() / "ccrheat_io_test";
  std::filesystem::create_directories(dir);
  const std::string path = (dir / "op.csv").string();
  io::save(path, FockOperator::identity(3), "id");
  std::ifstream in(path);
  CHECK(io::read_operator(in).matrix() == FockOperator::identity(3).matrix());
  CHECK_THROWS_AS(io::save((dir / "missing" / "x.csv").string(), FockOperator::identity(2)), std::runtime_error);
  std::filesystem::remove_all(dir);
}
