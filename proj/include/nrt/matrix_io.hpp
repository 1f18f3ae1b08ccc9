#pragma once

#include <json.hpp>
#include <string>

#include "nrt/matrix_core.hpp"

namespace nrt {

// Matrix JSON format: {"n": int, "re": [[float;n];n], "im": [[float;n];n]}.
// Parsing rejects ragged arrays and non-finite values; extra keys are ignored.
ComplexMatrix matrix_from_json(const nlohmann::json& j);
nlohmann::json matrix_to_json(const MatrixRef& A);

ComplexMatrix read_matrix_file(const std::string& path);

// Writes the matrix JSON; when `extra` is non-null its members are merged
// into the same top-level object (used for power metadata).
void write_matrix_file(const std::string& path, const MatrixRef& A,
                       const nlohmann::json* extra = nullptr);

}  // namespace nrt
