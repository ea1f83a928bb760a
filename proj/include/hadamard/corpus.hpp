#pragma once

// Deterministic sequence generators for convergent, periodic and
// counterexample families, and the JSON sequence document format.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hadamard/means.hpp"
#include "hadamard/space.hpp"

namespace hadamard {

enum class Family {
  constant,          // x_n = anchor
  convergent_power,  // d(x_n, anchor) = scale (n + 1)^-rate
  periodic,          // cycles `points`
  almost_periodic,   // commensurate patterns (`periods`) or a rotation (`frequencies`)
  alternating,       // points[0], points[1], points[0], ...
  block_01,          // euclidean(1): 1 on [4^m, 4^m + 2^m), else 0
  slow_step,         // d(x_n, x_{n-1}) = c / n^1.5 towards anchor
};

std::string family_name(Family f);
/// Throws Error on an unknown name.
Family family_from_name(const std::string& name);

struct GeneratorSpec {
  Family family = Family::constant;
  Space space = Space::euclidean(1);
  std::size_t length = 16;
  std::uint64_t seed = 0;
  std::string label;  // default: derived from the family

  std::optional<Point> anchor;  // limit / constant value; default origin(space)
  double rate = 1.0;            // convergent_power
  double scale = 1.0;           // convergent_power
  std::vector<Point> points;    // periodic (>= 1), alternating (exactly 2)
  std::vector<std::size_t> periods;  // almost_periodic, commensurate mode
  std::vector<double> frequencies;   // almost_periodic, rotation mode (euclidean(1))
  double amplitude = 0.5;            // almost_periodic
  double c = 1.0;                    // slow_step

  bool operator==(const GeneratorSpec&) const = default;
};

/// Same spec, bit-identical sequence. Throws Error on an invalid spec.
Seq generate(const GeneratorSpec& spec);

/// One instance of every family in every space it supports.
std::vector<GeneratorSpec> reference_corpus();

/// Sequence document: {"space": {...}, "label": ..., "points": [...]}, one
/// point per line, numbers with round-trip precision.
std::string serialize(const Seq& seq);
/// Throws ParseError with the offending field or line.
Seq parse_sequence(const std::string& text);

std::string serialize(const GeneratorSpec& spec);
GeneratorSpec parse_spec(const std::string& text);

/// Space document {"kind": ..., "dim"?: ..., "rays"?: ...} as a JSON string.
std::string serialize(const Space& space);
Space parse_space(const std::string& text);
/// A single point in document form, e.g. [1, 2] or {"x": 0, "y": 1}.
std::string serialize_point(const Space& space, const Point& p);
Point parse_point(const Space& space, const std::string& text);

/// File helpers; read errors surface as ParseError on field "file".
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace hadamard
