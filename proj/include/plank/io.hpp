#pragma once

#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "plank/geometry.hpp"
#include "plank/solver.hpp"
#include "plank/types.hpp"

namespace plank {

struct GeometryInstance {
  Body body;
  std::vector<Hyperplane> hyperplanes;
};

using Instance = std::variant<PlankSystem, GeometryInstance>;

/// Reads and parses a JSON file; malformed JSON or structural problems raise
/// ParseError with position/field diagnostics.
nlohmann::json load_json_file(const std::string& path);

/// Parses an instance file of kind "matrix" or "geometry", validating the
/// instance invariants (unit diagonal, sum of widths, non-null normals).
Instance parse_instance(const nlohmann::json& j);

nlohmann::json matrix_solution_to_json(const Solution& sol);
nlohmann::json homothet_to_json(const HomothetResult& res);
nlohmann::json symmetrization_to_json(const SymmetrizationResult& sym);

Solution parse_matrix_solution(const nlohmann::json& j);
HomothetResult parse_homothet(const nlohmann::json& j);

void write_text_file(const std::string& path, const std::string& contents);

}  // namespace plank
