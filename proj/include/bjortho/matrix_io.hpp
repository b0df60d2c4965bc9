#pragma once

#include "bjortho/types.hpp"

#include "json.hpp"

#include <string>

namespace bjortho {

// Matrix file formats accepted everywhere a matrix is read:
//   JSON object {"rows": r, "cols": c, "data": [[...], ...]} (row-major), or
//   headerless CSV, one matrix row per line.
// All values must be finite; diagnostics name the offending row/column.

nlohmann::ordered_json matrix_to_json(const Matrix& M);
Matrix matrix_from_json(const nlohmann::json& j);

nlohmann::ordered_json vector_to_json(const Vector& v);  // plain JSON array
Vector vector_from_json(const nlohmann::json& j);

// Loads a matrix from a file, sniffing JSON (first printable character '{')
// versus CSV. Throws InvalidInput with a row/column diagnostic on malformed
// content.
Matrix load_matrix(const std::string& path);

// Loads a vector: a JSON array, a JSON matrix object with one row or one
// column, or a single-row/single-column CSV.
Vector load_vector(const std::string& path);

// Serializes with every floating-point number printed to 17 significant
// digits (round-trip exact for doubles). Arrays of scalars stay on one line;
// objects and nested arrays are indented. Output is byte-deterministic.
std::string dump_json(const nlohmann::ordered_json& j, int indent = 2);

}  // namespace bjortho
