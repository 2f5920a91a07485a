#pragma once

// Custom variety descriptions in JSON:
//
//   {"matrix": {"shape": "symmetric", "rows": 3, "cols": 3}, "rank_bound": 2}
//   {"ambient_dim": 3, "generators": ["x0*x3 - x1*x2"],
//    "singular_generators": [...], "sample_points": [[...], ...]}

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "focal/errors.hpp"
#include "focal/expr_parser.hpp"
#include "focal/field.hpp"
#include "focal/rng.hpp"
#include "focal/varieties.hpp"

namespace focal {

namespace detail {

inline std::pair<std::size_t, std::size_t> line_col_of_byte(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

inline const nlohmann::json& require(const nlohmann::json& j, const char* key) {
  if (!j.contains(key)) throw Error(ErrorKind::ParseError, std::string("missing field \"") + key + "\"");
  return j.at(key);
}

inline std::size_t require_count(const nlohmann::json& j, const char* key) {
  const auto& v = require(j, key);
  if (!v.is_number_integer() || v.get<i64>() < 0)
    throw Error(ErrorKind::ParseError, std::string("field \"") + key + "\" must be a non-negative integer");
  return v.get<std::size_t>();
}

inline std::vector<PolyProgram> parse_expression_list(const nlohmann::json& list, const char* key,
                                                      std::size_t arity) {
  if (!list.is_array()) throw Error(ErrorKind::ParseError, std::string("field \"") + key + "\" must be an array");
  std::vector<PolyProgram> out;
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (!list[i].is_string())
      throw Error(ErrorKind::ParseError, std::string(key) + "[" + std::to_string(i) + "] must be a string");
    try {
      out.push_back(parse_expression(list[i].get<std::string>(), arity));
    } catch (const Error& e) {
      throw Error(e.kind(), std::string(key) + "[" + std::to_string(i) + "]: " + e.detail());
    }
  }
  return out;
}

inline MatrixShape parse_shape(const nlohmann::json& m) {
  const auto& kind = require(m, "shape");
  if (!kind.is_string()) throw Error(ErrorKind::ParseError, "matrix shape must be a string");
  const auto name = kind.get<std::string>();
  const std::size_t rows = require_count(m, "rows");
  const std::size_t cols = m.contains("cols") ? require_count(m, "cols") : rows;
  if (rows == 0 || cols == 0) throw Error(ErrorKind::InvalidArgument, "matrix dimensions must be positive");
  if (name == "generic") return MatrixShape::generic(rows, cols);
  if (rows != cols) throw Error(ErrorKind::InvalidArgument, name + " matrices must be square");
  if (name == "symmetric") return MatrixShape::symmetric(rows);
  if (name == "skew") return MatrixShape::skew(rows);
  throw Error(ErrorKind::ParseError, "unknown matrix shape \"" + name + "\"");
}

}  // namespace detail

/// Builds a variety from a parsed JSON description. Generators are checked
/// for homogeneity and sample points for lying on the variety.
inline VarietySpec parse_spec_json(const nlohmann::json& j, std::string default_name = "custom") {
  if (!j.is_object()) throw Error(ErrorKind::ParseError, "spec must be a JSON object");
  std::string name = j.contains("name") && j["name"].is_string() ? j["name"].get<std::string>() : default_name;

  if (j.contains("matrix")) {
    auto shape = detail::parse_shape(j["matrix"]);
    const std::size_t bound = detail::require_count(j, "rank_bound");
    if (bound == 0) throw Error(ErrorKind::InvalidArgument, "rank_bound must be at least 1");
    return rank_locus_spec(shape, bound, name);
  }

  VarietySpec spec;
  spec.name = std::move(name);
  spec.ambient_dim = detail::require_count(j, "ambient_dim");
  if (spec.ambient_dim == 0) throw Error(ErrorKind::InvalidArgument, "ambient_dim must be positive");
  const std::size_t arity = spec.ambient_dim + 1;
  spec.generators = detail::parse_expression_list(detail::require(j, "generators"), "generators", arity);
  if (spec.generators.empty()) throw Error(ErrorKind::InvalidArgument, "at least one generator is required");
  if (j.contains("singular_generators")) {
    auto sing = std::make_shared<VarietySpec>();
    sing->name = spec.name + "/sing";
    sing->ambient_dim = spec.ambient_dim;
    sing->generators = detail::parse_expression_list(j["singular_generators"], "singular_generators", arity);
    spec.singular = std::move(sing);
  }
  if (j.contains("sample_points")) {
    const auto& pts = j["sample_points"];
    if (!pts.is_array()) throw Error(ErrorKind::ParseError, "sample_points must be an array");
    for (const auto& pt : pts) {
      if (!pt.is_array() || pt.size() != arity)
        throw Error(ErrorKind::ParseError, "each sample point needs " + std::to_string(arity) + " integers");
      std::vector<i64> coords;
      for (const auto& c : pt) {
        if (!c.is_number_integer()) throw Error(ErrorKind::ParseError, "sample point coordinates must be integers");
        coords.push_back(c.get<i64>());
      }
      spec.sample_points.push_back(std::move(coords));
    }
  }
  if (!spec.is_hypersurface() && spec.sample_points.empty())
    throw Error(ErrorKind::InvalidArgument,
                "several generators need \"sample_points\" (points on the variety) to be analysed");

  Rng rng(0x5eed);
  PrimeField F(random_prime(rng));
  for (std::size_t i = 0; i < spec.generators.size(); ++i)
    if (!check_homogeneous(spec.generators[i], F, rng))
      throw Error(ErrorKind::InvalidArgument, "generators[" + std::to_string(i) + "] is not homogeneous");
  for (const auto& pt : spec.sample_points) {
    std::vector<Fp> x;
    for (auto c : pt) x.push_back(F(c));
    for (auto& g : spec.generators)
      if (!g.eval(x).is_zero()) throw Error(ErrorKind::InvalidArgument, "a sample point is not on the variety");
  }
  return spec;
}

inline VarietySpec parse_spec_text(const std::string& text, std::string default_name = "custom") {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    auto [line, col] = detail::line_col_of_byte(text, e.byte > 0 ? e.byte - 1 : 0);
    throw ParseFailure("invalid JSON", line, col);
  }
  return parse_spec_json(j, std::move(default_name));
}

inline VarietySpec parse_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  auto stem = path.substr(path.find_last_of('/') == std::string::npos ? 0 : path.find_last_of('/') + 1);
  if (auto dot = stem.rfind('.'); dot != std::string::npos && dot > 0) stem = stem.substr(0, dot);
  return parse_spec_text(buf.str(), stem);
}

}  // namespace focal
