#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "pmc/core.hpp"

namespace pmc {

// Matrix CSV: one row per line, comma separated decimals, no header.
// Observation CSV: header "i,j,y", zero based indices, one sample per line.

Matrix read_matrix_csv(std::istream& in);
Matrix read_matrix_csv(const std::filesystem::path& path);
void write_matrix_csv(std::ostream& out, const Matrix& x);
void write_matrix_csv(const std::filesystem::path& path, const Matrix& x);

/// Grid shape is not stored in the file; pass it explicitly.
ObservationSet read_observations_csv(std::istream& in, int d1, int d2);
ObservationSet read_observations_csv(const std::filesystem::path& path, int d1, int d2);
void write_observations_csv(std::ostream& out, const ObservationSet& obs);
void write_observations_csv(const std::filesystem::path& path, const ObservationSet& obs);

/// Shortest decimal text that parses back to exactly `v`.
std::string format_double(double v);

} // namespace pmc
