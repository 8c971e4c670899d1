#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "core/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

using namespace sasica;

namespace {

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("sasica_io_" + std::to_string(std::random_device{}()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::string file(const std::string& name) const {
    return (path / name).string();
  }
};

Matrix awkward_matrix() {
  Matrix m(3, 4);
  m << 1.0, -2.5e-308, 3.141592653589793, 0.0,
      1e308, -1.0 / 3.0, 2.2250738585072014e-308, -0.0,
      123456789.123456789, 1e-17, -9.9e99, 0.1;
  return m;
}

}  // namespace

TEST_CASE("csv matrix round trip is exact") {
  TempDir dir;
  const Matrix m = awkward_matrix();
  write_matrix_csv(m, dir.file("m.csv"));
  const Matrix r = read_matrix_csv(dir.file("m.csv"));
  REQUIRE(r.rows() == m.rows());
  REQUIRE(r.cols() == m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) CHECK(r(i, j) == m(i, j));
}

TEST_CASE("binary matrix round trip is exact") {
  TempDir dir;
  const Matrix m = awkward_matrix();
  write_matrix_bin(m, dir.file("m.bin"));
  const Matrix r = read_matrix_bin(dir.file("m.bin"));
  REQUIRE(r.rows() == m.rows());
  REQUIRE(r.cols() == m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) CHECK(r(i, j) == m(i, j));
  // header layout: magic + dims
  std::ifstream f(dir.file("m.bin"), std::ios::binary);
  char head[16];
  f.read(head, 16);
  CHECK(std::string(head, 8) == "SDMAT001");
  CHECK(*reinterpret_cast<std::uint32_t*>(head + 8) == 3u);
  CHECK(*reinterpret_cast<std::uint32_t*>(head + 12) == 4u);
}

TEST_CASE("bad inputs raise IoError") {
  TempDir dir;
  CHECK_THROWS_AS(read_matrix_csv(dir.file("missing.csv")), IoError);
  CHECK_THROWS_AS(read_matrix_bin(dir.file("missing.bin")), IoError);
  {
    std::ofstream f(dir.file("bad.bin"), std::ios::binary);
    f << "NOTMAGIC012345";
  }
  CHECK_THROWS_AS(read_matrix_bin(dir.file("bad.bin")), IoError);
  {
    std::ofstream f(dir.file("bad.csv"));
    f << "1,2\nx,4\n";
  }
  CHECK_THROWS_AS(read_matrix_csv(dir.file("bad.csv")), IoError);
  {
    std::ofstream f(dir.file("ragged.csv"));
    f << "1,2\n3\n";
  }
  CHECK_THROWS_AS(read_matrix_csv(dir.file("ragged.csv")), IoError);
}

TEST_CASE("report and trace serialization") {
  TempDir dir;
  CriterionReport rep;
  rep.kind = CriterionKind::R;
  rep.hbars = Vector::LinSpaced(3, 1.0, 3.0);
  rep.value = 0.25;
  write_report_csv(rep, dir.file("rep.csv"));
  std::ifstream f(dir.file("rep.csv"));
  std::string line;
  std::getline(f, line);
  CHECK(line == "n,hbar");
  std::getline(f, line);
  CHECK(line == "1,1");
  std::getline(f, line);
  std::getline(f, line);
  std::getline(f, line);
  CHECK(line == "value,0.25");
  std::getline(f, line);
  CHECK(line == "kind,R");

  std::vector<TracePoint> tr{{1, 0.5, 0.125, true}, {2, 0.6, 0.11, false}};
  write_trace_csv(tr, dir.file("trace.csv"));
  std::ifstream g(dir.file("trace.csv"));
  std::getline(g, line);
  CHECK(line == "iter,value,mu,accepted");
  std::getline(g, line);
  CHECK(line == "1,0.5,0.125,1");
}

TEST_CASE("column csv writer") {
  TempDir dir;
  write_columns_csv({"a", "b"}, {{1.0, 2.0}, {3.0, 4.0}}, dir.file("c.csv"));
  std::ifstream f(dir.file("c.csv"));
  std::string line;
  std::getline(f, line);
  CHECK(line == "a,b");
  std::getline(f, line);
  CHECK(line == "1,3");
  CHECK_THROWS_AS(write_columns_csv({"a"}, {{1.0}, {2.0}}, dir.file("d.csv")),
                  std::invalid_argument);
}
