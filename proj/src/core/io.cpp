#include "core/io.hpp"

#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

static_assert(std::endian::native == std::endian::little,
              "SDMAT001 writer assumes a little-endian host");

namespace sasica {

namespace {

constexpr char kMagic[8] = {'S', 'D', 'M', 'A', 'T', '0', '0', '1'};

std::ofstream open_out(const std::string& path, bool binary) {
  std::ofstream f(path, binary ? std::ios::binary : std::ios::out);
  if (!f) throw IoError("cannot open for writing: " + path);
  return f;
}

std::ifstream open_in(const std::string& path, bool binary) {
  std::ifstream f(path, binary ? std::ios::binary : std::ios::in);
  if (!f) throw IoError("cannot open for reading: " + path);
  return f;
}

}  // namespace

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_matrix_csv(const Matrix& m, const std::string& path) {
  std::ofstream f = open_out(path, false);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) f << ',';
      f << format_g17(m(i, j));
    }
    f << '\n';
  }
  if (!f) throw IoError("write failed: " + path);
}

Matrix read_matrix_csv(const std::string& path) {
  std::ifstream f = open_in(path, false);
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      if (end == cell.c_str())
        throw IoError("bad CSV cell '" + cell + "' in " + path);
      row.push_back(v);
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw IoError("ragged CSV rows in " + path);
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw IoError("empty CSV matrix in " + path);
  Matrix m(static_cast<Eigen::Index>(rows.size()),
           static_cast<Eigen::Index>(rows.front().size()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  return m;
}

void write_matrix_bin(const Matrix& m, const std::string& path) {
  std::ofstream f = open_out(path, true);
  f.write(kMagic, sizeof kMagic);
  const std::uint32_t rows = static_cast<std::uint32_t>(m.rows());
  const std::uint32_t cols = static_cast<std::uint32_t>(m.cols());
  f.write(reinterpret_cast<const char*>(&rows), 4);
  f.write(reinterpret_cast<const char*>(&cols), 4);
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      const double v = m(i, j);
      f.write(reinterpret_cast<const char*>(&v), 8);
    }
  if (!f) throw IoError("write failed: " + path);
}

Matrix read_matrix_bin(const std::string& path) {
  std::ifstream f = open_in(path, true);
  char magic[8];
  f.read(magic, 8);
  if (!f || std::memcmp(magic, kMagic, 8) != 0)
    throw IoError("bad SDMAT001 magic in " + path);
  std::uint32_t rows = 0, cols = 0;
  f.read(reinterpret_cast<char*>(&rows), 4);
  f.read(reinterpret_cast<char*>(&cols), 4);
  if (!f || rows == 0 || cols == 0 || rows > (1u << 20) || cols > (1u << 20))
    throw IoError("bad SDMAT001 header in " + path);
  Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      double v;
      f.read(reinterpret_cast<char*>(&v), 8);
      if (!f) throw IoError("truncated SDMAT001 payload in " + path);
      m(i, j) = v;
    }
  return m;
}

void write_columns_csv(const std::vector<std::string>& headers,
                       const std::vector<std::vector<double>>& columns,
                       const std::string& path) {
  if (headers.size() != columns.size())
    throw std::invalid_argument("write_columns_csv: header/column mismatch");
  std::ofstream f = open_out(path, false);
  for (std::size_t c = 0; c < headers.size(); ++c) {
    if (c) f << ',';
    f << headers[c];
  }
  f << '\n';
  const std::size_t n = columns.empty() ? 0 : columns.front().size();
  for (const auto& col : columns)
    if (col.size() != n)
      throw std::invalid_argument("write_columns_csv: ragged columns");
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t c = 0; c < columns.size(); ++c) {
      if (c) f << ',';
      f << format_g17(columns[c][i]);
    }
    f << '\n';
  }
  if (!f) throw IoError("write failed: " + path);
}

void write_report_csv(const CriterionReport& report, const std::string& path) {
  std::ofstream f = open_out(path, false);
  f << "n,hbar\n";
  for (Eigen::Index i = 0; i < report.hbars.size(); ++i)
    f << (i + 1) << ',' << format_g17(report.hbars[i]) << '\n';
  f << "value," << format_g17(report.value) << '\n';
  f << "kind," << (report.kind == CriterionKind::R ? "R" : "MSE") << '\n';
  if (!f) throw IoError("write failed: " + path);
}

void write_trace_csv(const std::vector<TracePoint>& trace,
                     const std::string& path) {
  std::ofstream f = open_out(path, false);
  f << "iter,value,mu,accepted\n";
  for (const TracePoint& t : trace)
    f << t.iter << ',' << format_g17(t.value) << ',' << format_g17(t.mu)
      << ',' << (t.accepted ? 1 : 0) << '\n';
  if (!f) throw IoError("write failed: " + path);
}

}  // namespace sasica
