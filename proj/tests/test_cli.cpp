// Drives the installed CLI binary end to end: exit codes, file formats,
// determinism and the no-torn-outputs guarantee.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <doctest.h>

#ifndef ASYMSPEC_CLI_PATH
#error "ASYMSPEC_CLI_PATH must point at the asymspec binary"
#endif

namespace {

namespace fs = std::filesystem;

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("asymspec_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

int run(const std::string& args) {
  const std::string cmd = std::string(ASYMSPEC_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int ret = std::system(cmd.c_str());
  return WEXITSTATUS(ret);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

}  // namespace

TEST_CASE("asym emits a deterministic CSV") {
  TempDir dir;
  write(dir.file("q.json"), R"({"basis":"grid","values":[0.0,0.5,1.0]})");
  const std::string cmd = "asym --potential " + dir.file("q.json") +
                          " --lambda-min 0 --lambda-max 100 --count 16 --output ";
  REQUIRE(run(cmd + dir.file("a.csv")) == 0);
  const std::string csv = slurp(dir.file("a.csv"));
  CHECK(csv.rfind("lambda,a_re,a_im\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 17);  // header + 16 rows, LF endings
  CHECK(csv.find('\r') == std::string::npos);

  REQUIRE(run(cmd + dir.file("b.csv")) == 0);
  CHECK(slurp(dir.file("b.csv")) == csv);  // byte-identical rerun
}

TEST_CASE("spectrum then reconstruct round-trips through files") {
  TempDir dir;
  write(dir.file("q.json"), R"({"basis":"fourier","mean":0.5,"cos":[0.3],"sin":[0.4]})");
  REQUIRE(run("spectrum --potential " + dir.file("q.json") + " --n-max 16 --output " +
              dir.file("spec.json")) == 0);
  const std::string spec = slurp(dir.file("spec.json"));
  CHECK(spec.find("\"mu\"") != std::string::npos);
  CHECK(spec.find("\"alpha\"") != std::string::npos);
  CHECK(spec.find("\"meta\"") != std::string::npos);

  REQUIRE(run("reconstruct --target " + dir.file("spec.json") +
              " --modes 3 --tol 1e-9 --output " + dir.file("qhat.json") + " --report " +
              dir.file("rep.json")) == 0);
  const std::string rep = slurp(dir.file("rep.json"));
  CHECK(rep.find("\"converged\":true") != std::string::npos);
  const std::string qhat = slurp(dir.file("qhat.json"));
  CHECK(qhat.find("\"basis\":\"fourier\"") != std::string::npos);
}

TEST_CASE("interp and resample plumbing") {
  TempDir dir;
  write(dir.file("p.json"), R"({"basis":"fourier"})");
  write(dir.file("q.json"), R"({"basis":"grid","values":[0.0,0.5,1.0]})");
  REQUIRE(run("interp --potential " + dir.file("p.json") + " --sample-potential " +
              dir.file("q.json") +
              " --nodes 32 --lambda-min 5 --lambda-max 50 --count 4 --output " +
              dir.file("i.csv")) == 0);
  const std::string csv = slurp(dir.file("i.csv"));
  CHECK(csv.rfind("lambda,value,tail\n", 0) == 0);

  // explicit sample-array route
  write(dir.file("phi.json"), R"({"samples":[0.1,-0.05,0.02,-0.01,0.005,-0.002]})");
  REQUIRE(run("interp --potential " + dir.file("p.json") + " --samples " + dir.file("phi.json") +
              " --lambda-min 5 --lambda-max 30 --count 3 --output " + dir.file("i2.csv")) == 0);
  CHECK(slurp(dir.file("i2.csv")).rfind("lambda,value,tail\n", 0) == 0);

  write(dir.file("a.json"), R"({"samples":[0.1,-0.05,0.02,-0.01]})");
  REQUIRE(run("spectrum --potential " + dir.file("p.json") + " --n-max 4 --output " +
              dir.file("spec.json")) == 0);
  REQUIRE(run("resample --samples " + dir.file("a.json") + " --spectral " +
              dir.file("spec.json") + " --output " + dir.file("alpha.json")) == 0);
  CHECK(slurp(dir.file("alpha.json")).find("\"alpha\"") != std::string::npos);
}

TEST_CASE("verify passes on a well-behaved potential") {
  TempDir dir;
  write(dir.file("q.json"), R"({"basis":"fourier","mean":0.4,"cos":[0.2],"sin":[0.3]})");
  CHECK(run("verify --potential " + dir.file("q.json")) == 0);
}

TEST_CASE("exit codes and torn-output protection") {
  TempDir dir;
  // malformed input: exit 2 and no output file appears
  write(dir.file("bad.json"), R"({"basis":"fourier","bogus":1})");
  CHECK(run("spectrum --potential " + dir.file("bad.json") + " --n-max 4 --output " +
            dir.file("out.json")) == 2);
  CHECK_FALSE(fs::exists(dir.file("out.json")));
  CHECK_FALSE(fs::exists(dir.file("out.json") + ".tmp"));

  // missing file and bad flags are malformed input too
  CHECK(run("spectrum --potential " + dir.file("nope.json") + " --n-max 4 --output " +
            dir.file("o.json")) == 2);
  CHECK(run("spectrum --frobnicate 1") == 2);

  // convergence failure: exit 1, report still written, stderr names the op
  write(dir.file("q.json"), R"({"basis":"grid","values":[0.0,0.5,1.0]})");
  REQUIRE(run("spectrum --potential " + dir.file("q.json") + " --n-max 12 --output " +
              dir.file("spec.json")) == 0);
  const std::string cmd = std::string(ASYMSPEC_CLI_PATH) + " reconstruct --target " +
                          dir.file("spec.json") + " --modes 2 --tol 1e-14 --max-iter 1" +
                          " --output " + dir.file("qh.json") + " --report " +
                          dir.file("rep.json") + " 2> " + dir.file("err.txt");
  const int ret = WEXITSTATUS(std::system(cmd.c_str()));
  CHECK(ret == 1);
  CHECK(slurp(dir.file("err.txt")).find("reconstruct") != std::string::npos);
  CHECK(slurp(dir.file("rep.json")).find("\"converged\":false") != std::string::npos);
}

TEST_CASE("ASYMSPEC_THREADS caps the sweep but not the bytes") {
  TempDir dir;
  write(dir.file("q.json"), R"({"basis":"grid","values":[0.0,0.5,1.0]})");
  const std::string base = std::string(ASYMSPEC_CLI_PATH) + " asym --potential " +
                           dir.file("q.json") +
                           " --lambda-min 0 --lambda-max 500 --count 64 --output ";
  REQUIRE(WEXITSTATUS(std::system(("ASYMSPEC_THREADS=1 " + base + dir.file("one.csv") +
                                   " >/dev/null 2>&1").c_str())) == 0);
  REQUIRE(WEXITSTATUS(std::system(("ASYMSPEC_THREADS=0 " + base + dir.file("auto.csv") +
                                   " >/dev/null 2>&1").c_str())) == 0);
  CHECK(slurp(dir.file("one.csv")) == slurp(dir.file("auto.csv")));
}
