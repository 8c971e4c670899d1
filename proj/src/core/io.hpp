// Serialization: CSV with 17-significant-digit round-trip and the SDMAT001
// raw binary matrix format (8-byte magic, u32 rows, u32 cols, row-major
// little-endian f64).

#pragma once

#include "core/criteria.hpp"
#include "core/model.hpp"
#include "core/optimizer.hpp"

#include <string>
#include <vector>

namespace sasica {

class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

void write_matrix_csv(const Matrix& m, const std::string& path);
Matrix read_matrix_csv(const std::string& path);

void write_matrix_bin(const Matrix& m, const std::string& path);
Matrix read_matrix_bin(const std::string& path);

// Column-oriented CSV with a header line.
void write_columns_csv(const std::vector<std::string>& headers,
                       const std::vector<std::vector<double>>& columns,
                       const std::string& path);

// One line per row n with hbar_n, then a footer with the scalar value.
void write_report_csv(const CriterionReport& report, const std::string& path);

// iter,value,mu,accepted
void write_trace_csv(const std::vector<TracePoint>& trace,
                     const std::string& path);

std::string format_g17(double v);

}  // namespace sasica
