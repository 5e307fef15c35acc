#pragma once

#include <string>

#include "ssv/core.hpp"

namespace ssv {

/// Repo-wide matrix file format: CSV, row-major, N lines of n
/// comma-separated decimals, no header.
Matrix read_matrix_csv(const std::string& path);
Matrix parse_matrix_csv(const std::string& text);
std::string matrix_to_csv(const Matrix& m);
void write_matrix_csv(const Matrix& m, const std::string& path);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& text, const std::string& path);

}  // namespace ssv
