#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "bjq/cli.hpp"

using namespace bjq;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out, err;
  const int code = cli::run(args, in, out, err);
  return {code, out.str(), err.str()};
}

std::string ground_state_csv(std::size_t n = 256) {
  return run({"state", "--grid-n", std::to_string(n), "--xmin", "-8", "--xmax", "8"}).out;
}

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / ("bjq_test_" + name);
  std::ofstream(path) << content;
  return path;
}

}  // namespace

TEST_CASE("quantize") {
  CHECK(run({"quantize", "--rule", "bj", "x^2*p^2"}).out == "X^2*P^2 - 2*i*hbar*X*P - 2/3*hbar^2\n");
  CHECK(run({"quantize", "--rule", "weyl", "x*p"}).out == "X*P - 1/2*i*hbar\n");
  CHECK(run({"quantize", "x*p"}).out == "X*P - 1/2*i*hbar\n");
  CHECK(run({"quantize", "--rule", "tau:0", "p^2*x"}).out == "X*P^2\n");
  CHECK(run({"quantize", "x1", "--n", "2"}).out == "X1\n");
}

TEST_CASE("dequantize") {
  CHECK(run({"dequantize", "X*P"}).out == "x*p + 1/2*i*hbar\n");
  CHECK(run({"dequantize", "X"}).out == "x\n");
  const Result r = run({"dequantize", "Lsq_op"});
  CHECK(r.code == 0);
  CHECK(r.out.ends_with(" - 3/2*hbar^2\n"));
}

TEST_CASE("diff") {
  CHECK(run({"diff", "--rules", "bj,weyl", "lsq"}).out == "1/2*hbar^2\n");
  CHECK(run({"diff", "--rules", "bj,weyl", "x*p"}).out == "0\n");
  CHECK(run({"diff", "--rules", "bj,weyl", "cross12"}).out == "-1/6*hbar^2\n");
  CHECK(run({"diff", "lsq"}).out == "1/2*hbar^2\n");
  CHECK(run({"diff", "--rules", "bj", "lsq"}).code == cli::kSemantic);
}

TEST_CASE("dilemma report") {
  const Result r = run({"dilemma"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("Op_W(lsq) - Lsq_op = 3/2*hbar^2\n") != std::string::npos);
  CHECK(r.out.find("Op_BJ(lsq) - Op_W(lsq) = 1/2*hbar^2\n") != std::string::npos);
  CHECK(r.out.find("Op_BJ(lsq) - Lsq_op = 2*hbar^2\n") != std::string::npos);
  CHECK(r.out.find("[DISAGREES] Op_BJ(l^2) = Lsq_op + hbar^2") != std::string::npos);
  CHECK(r.out.find("FAILED") == std::string::npos);
  const auto j = nlohmann::json::parse(run({"dilemma", "--format", "json"}).out);
  CHECK(j["bj_minus_weyl"] == "1/2*hbar^2");
  CHECK(j["matrix_check_ok"] == true);
}

TEST_CASE("output formats") {
  const auto j = nlohmann::json::parse(run({"quantize", "x*p", "--format", "json"}).out);
  CHECK(j["schema"] == "bjq-result/1");
  CHECK(j["result"] == "X*P - 1/2*i*hbar");
  CHECK(j["rule"] == "weyl");
  CHECK(run({"quantize", "x*p", "--format", "csv"}).out ==
        "command,input,result\nquantize,\"x*p\",\"X*P - 1/2*i*hbar\"\n");
  CHECK(run({"quantize", "x*p", "--format", "xml"}).code == cli::kParse);
}

TEST_CASE("exit codes") {
  CHECK(run({"quantize", "x*X"}).code == cli::kParse);
  CHECK(run({"quantize", "x^"}).code == cli::kParse);
  CHECK(run({"quantize", "X*P"}).code == cli::kSemantic);
  CHECK(run({"dequantize", "x*p"}).code == cli::kSemantic);
  CHECK(run({"quantize", "lsq", "--n", "2"}).code == cli::kSemantic);
  CHECK(run({"quantize", "x", "--rule", "tau:1/0"}).code == cli::kSemantic);
  CHECK(run({}).code == cli::kParse);
  CHECK(run({"frobnicate"}).code == cli::kParse);
  CHECK(run({"quantize"}).code == cli::kParse);
  CHECK(run({"wigner", "/nonexistent/psi.csv"}).code == cli::kIo);
  CHECK(run({"wigner", "-"}, "").code == cli::kFormat);
  CHECK(run({"wigner", "-"}, "").err.find("no samples") != std::string::npos);
  CHECK(run({"wigner", "-"}, "x,y,z\n0,1,0\n1,1,0\n").code == cli::kFormat);
  CHECK(run({"wigner", "-"}, "x,re,im\n0,1,0\n1,1,0\n3,1,0\n").code == cli::kFormat);
  CHECK(run({"wigner", "-"}, "x,re,im\n0,1,0\n1,abc,0\n").code == cli::kFormat);
  CHECK(run({"wigner", "-"}, "x,re,im\n0,1,0\n1,1,0\n2,1,0\n").code == cli::kFormat);
  CHECK(run({"quantize", "--help"}).code == cli::kOk);
}

TEST_CASE("wavefunction CSV round trip") {
  const std::string csv = ground_state_csv(64);
  std::istringstream in(csv);
  const auto psi = cli::read_wavefunction_csv(in, 1.0);
  CHECK(psi.axes()[0].size == 64);
  CHECK(psi.axes()[0].min == -8.0);
  CHECK(psi.axes()[0].step == doctest::Approx(0.25));
  std::ostringstream out;
  cli::write_wavefunction_csv(out, psi);
  CHECK(out.str() == csv);
}

TEST_CASE("wigner and bjwigner") {
  const std::string csv = ground_state_csv();
  const Result w = run({"wigner", "-"}, csv);
  REQUIRE(w.code == 0);
  CHECK(w.out.starts_with("x,p,value\n"));
  CHECK(std::count(w.out.begin(), w.out.end(), '\n') == 256 * 256 + 1);
  CHECK(w.err.find("normalization: 1 ") != std::string::npos);
  const Result b = run({"bjwigner", "-"}, csv);
  CHECK(b.code == 0);
  CHECK(run({"wigner", "--kind", "bj", "-"}, csv).out == b.out);
  CHECK(b.err.find("p-marginal max deviation from Wigner") != std::string::npos);
  CHECK(run({"wigner", "-"}, csv).out == w.out);
}

TEST_CASE("grid flags must match the file") {
  const auto path = temp_file("ground.csv", ground_state_csv(64));
  CHECK(run({"wigner", path.string(), "--grid-n", "64", "--xmin", "-8", "--xmax", "8"}).code == 0);
  CHECK(run({"wigner", path.string(), "--grid-n", "128"}).code == cli::kFormat);
  CHECK(run({"wigner", path.string(), "--xmax", "9"}).code == cli::kFormat);
  const auto out = std::filesystem::temp_directory_path() / "bjq_test_grid_out.csv";
  CHECK(run({"wigner", path.string(), "-o", out.string()}).code == 0);
  CHECK(std::filesystem::file_size(out) > 1000);
  CHECK(run({"wigner", path.string(), "-o", "/nonexistent/dir/out.csv"}).code == cli::kIo);
}

TEST_CASE("expect") {
  const auto path = temp_file("expect.csv", ground_state_csv());
  CHECK(run({"expect", path.string(), "x^2*p^2", "--rule", "weyl"}).out == "0.25\n");
  CHECK(run({"expect", path.string(), "x^2*p^2", "--rule", "bj"}).out == "0.0833333333\n");
  CHECK(run({"expect", path.string(), "1"}).out == "1\n");
  CHECK(run({"expect", path.string(), "x", "--rule", "tau:1/2"}).code == cli::kSemantic);
  CHECK(run({"expect", path.string(), "x1*x2"}).code == cli::kSemantic);
  const auto j = nlohmann::json::parse(run({"expect", path.string(), "x^2", "--format", "json"}).out);
  CHECK(j["value"] == "0.5");
}

TEST_CASE("hbar from the environment") {
  const std::string csv = run({"state", "--grid-n", "256", "--xmin", "-5.65685425", "--xmax", "5.65685425",
                               "--hbar", "0.5"}).out;
  const auto path = temp_file("half.csv", csv);
  CHECK(run({"expect", path.string(), "x^2", "--hbar", "0.5"}).out == "0.25\n");
  setenv("BJQ_HBAR", "0.5", 1);
  CHECK(run({"expect", path.string(), "x^2"}).out == "0.25\n");
  unsetenv("BJQ_HBAR");
}

TEST_CASE("byte-identical output") {
  CHECK(run({"dilemma"}).out == run({"dilemma"}).out);
  CHECK(run({"quantize", "lsq", "--rule", "bj"}).out == run({"quantize", "lsq", "--rule", "bj"}).out);
}
