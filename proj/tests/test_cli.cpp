// End-to-end checks of the command-line tool: exit codes, determinism,
// output shapes, config round-trip. The binary path arrives as argv[1].

#define DOCTEST_CONFIG_IMPLEMENT
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace {

std::string g_cli;

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("sasica_cli_" + std::to_string(std::random_device{}()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::string file(const std::string& name) const {
    return (path / name).string();
  }
};

int run(const std::string& args) {
  const std::string cmd = g_cli + " " + args + " >/dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

std::string run_capture(const std::string& args, const TempDir& dir) {
  const std::string outfile = dir.file("stdout.txt");
  const std::string cmd = g_cli + " " + args + " > " + outfile + " 2>/dev/null";
  const int rc = std::system(cmd.c_str());
  REQUIRE(WEXITSTATUS(rc) == 0);
  std::ifstream f(outfile);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  REQUIRE(f.good());
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& body) {
  std::ofstream f(path);
  f << body;
}

std::size_t line_count(const std::string& text) {
  std::size_t n = 0;
  for (char c : text)
    if (c == '\n') ++n;
  return n;
}

}  // namespace

TEST_CASE("synth: deterministic per seed, sweep files") {
  TempDir dir;
  write_file(dir.file("cfg.ini"),
             "[model]\nkappa = 0.05\nN = 128\n"
             "[sweep]\nalpha = 0.5,1,1.5,2\n");
  const std::string out1 = dir.file("out1");
  const std::string out2 = dir.file("out2");
  CHECK(run("synth --config " + dir.file("cfg.ini") + " --out " + out1 +
            " --seed 7") == 0);
  CHECK(run("synth --config " + dir.file("cfg.ini") + " --out " + out2 +
            " --seed 7 --threads 2") == 0);
  for (const char* name :
       {"path_a0p5.csv", "path_a1.csv", "path_a1p5.csv", "path_a2.csv"}) {
    const std::string a = slurp(out1 + "/" + std::string(name));
    CHECK(a == slurp(out2 + "/" + std::string(name)));
    CHECK(line_count(a) == 129);  // header + N samples
  }
  const std::string out3 = dir.file("out3");
  CHECK(run("synth --config " + dir.file("cfg.ini") + " --out " + out3 +
            " --seed 8") == 0);
  CHECK(slurp(out1 + "/path_a1.csv") != slurp(out3 + "/path_a1.csv"));
}

TEST_CASE("synth: gaussian path increments pass a normality test") {
  TempDir dir;
  write_file(dir.file("cfg.ini"),
             "[model]\nalpha = 2.0\nkappa = 0\nN = 4096\n"
             "[sweep]\nalpha = 2\n");
  const std::string out = dir.file("out");
  REQUIRE(run("synth --config " + dir.file("cfg.ini") + " --out " + out +
              " --seed 11") == 0);
  std::ifstream f(out + "/path_a2.csv");
  std::string line;
  std::getline(f, line);  // header
  std::vector<double> w;
  while (std::getline(f, line)) {
    const std::size_t c1 = line.find(',');
    const std::size_t c2 = line.find(',', c1 + 1);
    w.push_back(std::atof(line.substr(c2 + 1).c_str()));
  }
  REQUIRE(w.size() == 4096);
  const double n = static_cast<double>(w.size());
  double m = 0;
  for (double v : w) m += v;
  m /= n;
  double m2 = 0, m3 = 0, m4 = 0;
  for (double v : w) {
    const double d = v - m;
    m2 += d * d;
    m3 += d * d * d;
    m4 += d * d * d * d;
  }
  m2 /= n;
  m3 /= n;
  m4 /= n;
  const double jb =
      n * (m3 * m3 / (m2 * m2 * m2) / 6.0 +
           (m4 / (m2 * m2) - 3.0) * (m4 / (m2 * m2) - 3.0) / 24.0);
  CHECK(jb < 13.8155);  // chi^2_2 at the 1e-3 level
}

TEST_CASE("eval: optimized criterion over an N sweep") {
  TempDir dir;
  write_file(dir.file("cfg.ini"),
             "[model]\nalpha = 2.0\nkappa = 0.2\n"
             "[sweep]\nN = 4,8\n"
             "[transforms]\nlist = dct,ica\n"
             "[criterion]\nkind = R\n"
             "[optimizer]\ninit = dct\nstarts = 1\nmax_iters = 20000\n");
  const std::string out = dir.file("out");
  REQUIRE(run("eval --config " + dir.file("cfg.ini") + " --out " + out) == 0);
  const std::string r = slurp(out + "/eval_R.csv");
  CHECK(r.substr(0, r.find('\n')) == "N,dct,ica");
  CHECK(line_count(r) == 3);
  // optimized column must not lose to the dct column
  std::stringstream ss(r);
  std::string line;
  std::getline(ss, line);
  while (std::getline(ss, line)) {
    const std::size_t c1 = line.find(',');
    const std::size_t c2 = line.find(',', c1 + 1);
    const double dct = std::atof(line.substr(c1 + 1, c2 - c1 - 1).c_str());
    const double ica = std::atof(line.substr(c2 + 1).c_str());
    CHECK(ica <= dct + 1e-9);
  }
}

TEST_CASE("eval: criteria table over transforms") {
  TempDir dir;
  write_file(dir.file("cfg.ini"),
             "[model]\nN = 16\nsigma = 1\n"
             "[sweep]\nalpha = 0.8,1.4,2.0\n"
             "[transforms]\nlist = identity,dct,haar\n"
             "[criterion]\nkind = both\n");
  const std::string out = dir.file("out");
  CHECK(run("eval --config " + dir.file("cfg.ini") + " --out " + out +
            " --threads 2") == 0);
  const std::string r = slurp(out + "/eval_R.csv");
  CHECK(r.substr(0, r.find('\n')) == "alpha,identity,dct,haar");
  CHECK(line_count(r) == 4);
  const std::string m = slurp(out + "/eval_MSE.csv");
  CHECK(line_count(m) == 4);
}

TEST_CASE("ica: optimizer artifacts and reference matching") {
  TempDir dir;
  write_file(dir.file("cfg.ini"),
             "[model]\nalpha = 2.0\nkappa = 0.2\nN = 8\n"
             "[criterion]\nkind = R\n"
             "[optimizer]\ninit = dct\nstarts = 1\nmax_iters = 30000\n");
  const std::string out = dir.file("out");
  CHECK(run("ica --config " + dir.file("cfg.ini") + " --out " + out +
            " --seed 3") == 0);
  CHECK(std::filesystem::exists(out + "/Hopt_a2.csv"));
  CHECK(std::filesystem::exists(out + "/Hopt_a2.bin"));
  CHECK(std::filesystem::exists(out + "/trace_a2.csv"));
  const std::string match = slurp(out + "/match_a2.csv");
  CHECK(match.find("reference,distance") == 0);
  CHECK(match.find("klt,") != std::string::npos);
  const std::string summary = slurp(out + "/ica_summary.csv");
  CHECK(summary.find("alpha,value,iterations,converged") == 0);
  // at alpha = 2 the gaussian optimum decouples: tiny best value
  std::stringstream ss(summary);
  std::string header, row;
  std::getline(ss, header);
  std::getline(ss, row);
  const double value = std::atof(row.substr(row.find(',') + 1).c_str());
  CHECK(value < 1e-6);
}

TEST_CASE("asympt: trend table and certificates") {
  TempDir dir;
  write_file(dir.file("cfg.ini"),
             "[model]\nalpha = 1.0\nkappa = 0\nsigma = 1\n"
             "[sweep]\nN = 16,64\n");
  const std::string out = dir.file("out");
  CHECK(run("asympt --config " + dir.file("cfg.ini") + " --out " + out) == 0);
  const std::string th = slurp(out + "/theorem1.csv");
  CHECK(th.find("N,R_dct,R_opwt,MSE_dct,MSE_opwt") == 0);
  CHECK(line_count(th) == 3);
  CHECK(std::filesystem::exists(out + "/limits.csv"));
  const std::string bounds = slurp(out + "/bounds.csv");
  // flags r_dct_increasing .. mse_opwt_bounded all 1
  CHECK(bounds.find(",1,1,1,1") != std::string::npos);
}

TEST_CASE("config errors exit with code 2") {
  TempDir dir;
  CHECK(run("eval --config " + dir.file("missing.ini")) == 2);
  write_file(dir.file("bad1.ini"), "[model]\nalpha = nonsense\n");
  CHECK(run("eval --config " + dir.file("bad1.ini") + " --out " +
            dir.file("o")) == 2);
  write_file(dir.file("bad2.ini"), "[model]\nalpha = 3.5\n");
  CHECK(run("eval --config " + dir.file("bad2.ini") + " --out " +
            dir.file("o")) == 2);
  write_file(dir.file("bad3.ini"), "[mdel]\nalpha = 1\n");
  CHECK(run("eval --config " + dir.file("bad3.ini") + " --out " +
            dir.file("o")) == 2);
  write_file(dir.file("bad4.ini"), "[model]\nalpha 1\n");
  CHECK(run("eval --config " + dir.file("bad4.ini") + " --out " +
            dir.file("o")) == 2);
  // klt needs kappa > 0: surfaces as a config-level error
  write_file(dir.file("bad5.ini"),
             "[model]\nkappa = 0\n[transforms]\nlist = klt\n");
  CHECK(run("eval --config " + dir.file("bad5.ini") + " --out " +
            dir.file("o")) == 2);
  // two sweep axes at once
  write_file(dir.file("bad6.ini"), "[sweep]\nalpha = 1,2\nN = 8,16\n");
  CHECK(run("eval --config " + dir.file("bad6.ini") + " --out " +
            dir.file("o")) == 2);
}

TEST_CASE("config round-trip: parse, dump, parse again") {
  TempDir dir;
  write_file(dir.file("cfg.ini"),
             "# comment\n[model]\nalpha = 1.5 ; trailing\nN = 32\n\n"
             "[optimizer]\ninit = haar\nmu0 = 0.2\n"
             "[sweep]\nalpha = 1,1.5\n");
  const std::string d1 =
      run_capture("eval --config " + dir.file("cfg.ini") + " --dump-config",
                  dir);
  CHECK(!d1.empty());
  write_file(dir.file("canon.ini"), d1);
  const std::string d2 = run_capture(
      "eval --config " + dir.file("canon.ini") + " --dump-config", dir);
  CHECK(d1 == d2);
  CHECK(d1.find("alpha = 1.5") != std::string::npos);
  CHECK(d1.find("init = haar") != std::string::npos);
}

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: test_cli <path-to-sasica-binary>\n");
    return 1;
  }
  g_cli = argv[1];
  doctest::Context ctx;
  return ctx.run();
}
