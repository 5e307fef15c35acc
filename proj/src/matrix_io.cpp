#include "ssv/matrix_io.hpp"

#include <fstream>
#include <sstream>
#include <vector>

namespace ssv {

Matrix parse_matrix_csv(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<double> row;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) {
      try {
        row.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw ArgumentError("bad matrix entry '" + cell + "'");
      }
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw ArgumentError("ragged matrix CSV");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ArgumentError("empty matrix CSV");
  Matrix m(static_cast<Index>(rows.size()),
           static_cast<Index>(rows.front().size()));
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j)
      m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  return m;
}

Matrix read_matrix_csv(const std::string& path) {
  return parse_matrix_csv(read_text_file(path));
}

std::string matrix_to_csv(const Matrix& m) {
  std::ostringstream os;
  os.precision(17);
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      if (j) os << ',';
      os << m(i, j);
    }
    os << '\n';
  }
  return os.str();
}

void write_matrix_csv(const Matrix& m, const std::string& path) {
  write_text_file(matrix_to_csv(m), path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigurationError("cannot open file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_file(const std::string& text, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigurationError("cannot write file: " + path);
  out << text;
}

}  // namespace ssv
