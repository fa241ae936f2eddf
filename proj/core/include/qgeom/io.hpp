#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "qgeom/configuration.hpp"
#include "qgeom/linalg.hpp"

namespace qgeom {

/// Shortest decimal text that parses back to exactly `v`.
std::string format_double(double v);

/// Writes to a sibling temporary file, then renames it over `path`.
void write_text_atomic(const std::filesystem::path& path, const std::string& text);

std::string read_text(const std::filesystem::path& path);

/// {"hilbert_dim": N, "feature_dim": D, "observables": [[[[re, im], ...] row] ...]}
std::string configuration_to_json(const MatrixConfiguration& cfg);
std::string matrices_to_json(const std::vector<HermitianMatrix>& mats);

/// Throws ParseError on malformed JSON or a schema mismatch and
/// ValidationError when a matrix is not Hermitian.
MatrixConfiguration configuration_from_json(const std::string& text);
std::vector<HermitianMatrix> matrices_from_json(const std::string& text);

void write_configuration(const std::filesystem::path& path, const MatrixConfiguration& cfg);
MatrixConfiguration read_configuration(const std::filesystem::path& path);

/// Comma-separated rows; `header` is written first when non-empty.
std::string matrix_to_csv(const RMatrix& m, const std::vector<std::string>& header = {});
void write_csv(const std::filesystem::path& path, const RMatrix& m,
               const std::vector<std::string>& header = {});

}  // namespace qgeom
