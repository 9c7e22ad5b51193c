#pragma once
// Text serialization. Each file is one JSON header line prefixed by "# ",
// followed by a CSV table. Numbers are written with 17 significant digits so
// a write/read cycle reproduces every double exactly.
//
//   GridMeasure, SampledFunction, CharFunction: columns x,y,re,im (one row per
//   grid point, grid order); header {kind, half_width, points[, source_dim,
//   support_radius]}
//   FockOperator: columns row,col,re,im; header {kind, dim, tag}

#include <iosfwd>
#include <string>

#include "ccrheat/fock.hpp"
#include "ccrheat/phase_space.hpp"
#include "ccrheat/weyl_transform.hpp"

namespace ccrheat::io {

// Formats a double with %.17g.
std::string exact(double v);

void write(std::ostream& out, const GridMeasure& mu);
void write(std::ostream& out, const SampledFunction& f);
void write(std::ostream& out, const CharFunction& f);
void write(std::ostream& out, const FockOperator& a, const std::string& tag = "");

// Throw std::runtime_error on malformed input.
GridMeasure read_measure(std::istream& in);
SampledFunction read_sampled(std::istream& in);
CharFunction read_char_function(std::istream& in);
FockOperator read_operator(std::istream& in, std::string* tag = nullptr);

// File helpers; throw std::runtime_error if the file cannot be opened.
void save(const std::string& path, const GridMeasure& mu);
void save(const std::string& path, const SampledFunction& f);
void save(const std::string& path, const CharFunction& f);
void save(const std::string& path, const FockOperator& a, const std::string& tag = "");

}  // namespace ccrheat::io
