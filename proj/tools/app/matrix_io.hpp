#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "mukit/constructors.hpp"
#include "mukit/matrix.hpp"

namespace mukit::cli {

/// Matrix file text: a JSON object with "n" and "entries", one matrix row per
/// line, every entry an [re, im] pair printed with 17 significant digits.
std::string format_matrix(const Matrix& m);
Matrix parse_matrix(std::string_view text);

Matrix read_matrix_file(const std::filesystem::path& path);
void write_matrix_file(const std::filesystem::path& path, const Matrix& m);

nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j);

nlohmann::json complex_to_json(Complex z);
Complex complex_from_json(const nlohmann::json& j);

/// Certificate schema:
///   { "n", "delta", "theta": [...], "gamma": [...], "m",
///     "ds_terms": [ { "weight", "matrix": <matrix object> } ],
///     "cir_terms": [ { "weight", "parity": "even"|"odd", "a", "b",
///                      "alpha1", "alphas": [...] } ] }
/// Only the term lists are required when reading a cone description.
nlohmann::json certificate_to_json(const OmegaCertificate& cert);
OmegaCertificate certificate_from_json(const nlohmann::json& j);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

/// printf("%.17g") so doubles round-trip exactly.
std::string format_double(double v);

}  // namespace mukit::cli
