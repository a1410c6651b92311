#pragma once

// JSON forms of modules and the other report objects. Entries are written
// as integers mod p.

#include <string>

#include "json.hpp"
#include "philab/module.hpp"

namespace philab {

using json = nlohmann::json;

json module_to_json(const Module& m);
/// The algebra must match the recorded algebra_id.
Module module_from_json(const json& j, const AlgebraPtr& alg);

json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const json& j, std::size_t rows, std::size_t cols);

/// Writes to a temporary file next to `path` and renames it into place.
void write_file_atomic(const std::string& path, const std::string& contents);

}  // namespace philab
