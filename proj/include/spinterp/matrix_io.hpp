#pragma once

#include <Eigen/Core>
#include <filesystem>
#include <iosfwd>
#include <string>

namespace spinterp {

// Formats a double with 17 significant digits (lossless round trip).
std::string format_float(double v);

// Plain-text matrix format: header line "n" (square) or "n k", then n rows
// of space-separated decimals.
void write_matrix(std::ostream& os, const Eigen::MatrixXd& m);
Eigen::MatrixXd read_matrix(std::istream& is);

void save_matrix(const std::filesystem::path& path, const Eigen::MatrixXd& m);
Eigen::MatrixXd load_matrix(const std::filesystem::path& path);

}  // namespace spinterp
