#include "spinterp/matrix_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "spinterp/common.hpp"

namespace spinterp {

std::string format_float(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_matrix(std::ostream& os, const Eigen::MatrixXd& m) {
  if (m.rows() == m.cols()) {
    os << m.rows() << "\n";
  } else {
    os << m.rows() << " " << m.cols() << "\n";
  }
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j > 0) os << " ";
      os << format_float(m(i, j));
    }
    os << "\n";
  }
}

Eigen::MatrixXd read_matrix(std::istream& is) {
  std::string header;
  while (std::getline(is, header)) {
    if (header.find_first_not_of(" \t\r") != std::string::npos) break;
  }
  std::istringstream hs(header);
  Eigen::Index rows = 0, cols = 0;
  if (!(hs >> rows)) throw Error("matrix header: expected row count");
  if (!(hs >> cols)) cols = rows;
  if (rows < 0 || cols < 0) throw Error("matrix header: negative dimension");
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      if (!(is >> m(i, j))) {
        throw Error("matrix body: expected " + std::to_string(rows * cols) +
                    " entries");
      }
    }
  }
  return m;
}

void save_matrix(const std::filesystem::path& path, const Eigen::MatrixXd& m) {
  std::ofstream os(path);
  if (!os) throw Error("cannot open for writing: " + path.string());
  write_matrix(os, m);
}

Eigen::MatrixXd load_matrix(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw Error("cannot open for reading: " + path.string());
  return read_matrix(is);
}

}  // namespace spinterp
