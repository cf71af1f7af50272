#include <catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <json.hpp>
#include <string>

#include "test_util.hpp"

using json = nlohmann::json;
using namespace lapprox;
using namespace lapprox::testing;

namespace {

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(LAPPROX_CLI_PATH) + " " + args + " 2>&1";
  std::array<char, 4096> buf{};
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
  int status = pclose(pipe);
  int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return {code, out};
}

}  // namespace

TEST_CASE("help lists every subcommand") {
  auto r = run_cli("--help");
  REQUIRE(r.exit_code == 0);
  for (const char* sub : {"eval", "oracle", "table", "error-table", "poles", "fe-check"})
    REQUIRE(r.out.find(sub) != std::string::npos);
}

TEST_CASE("eval emits JSON that matches the library value") {
  auto r = run_cli("eval --char 5.4 --u 5 --s 1/2+8i --prec 192");
  REQUIRE(r.exit_code == 0);
  json doc = json::parse(r.out);
  REQUIRE(doc["char"] == "5.4");
  REQUIRE(doc["prec"] == 192);
  std::string re = doc["results"][0]["value_re"].get<std::string>();
  Precision p(192, 32);
  auto chi = DirichletCharacter::from_label("5.4");
  Approximant ax(chi, TruncationLevel(5), p);
  BigComplex expect = ax.l_approx(cplx(1, 2, 8, 1, p)).value;
  BigFloat got = BigFloat::from_string(re, p);
  REQUIRE(nearly_equal(got, expect.real(), 120));
}

TEST_CASE("identical invocations produce byte-identical output") {
  std::string args = "eval --char 8.5 --u 7 --s 1/2+10i --s 0.3+2i --prec 160";
  auto a = run_cli(args);
  auto b = run_cli(args);
  REQUIRE(a.exit_code == 0);
  REQUIRE(a.out == b.out);
}

TEST_CASE("oracle agrees with eval to the displayed digits") {
  auto e = run_cli("eval --char 5.4 --u 7 --s 1/2+9i --prec 192");
  auto o = run_cli("oracle --char 5.4 --method hurwitz --s 1/2+9i --prec 192");
  REQUIRE(e.exit_code == 0);
  REQUIRE(o.exit_code == 0);
  Precision p(192, 32);
  BigFloat ev = BigFloat::from_string(json::parse(e.out)["results"][0]["value_re"], p);
  BigFloat ov = BigFloat::from_string(json::parse(o.out)["results"][0]["value_re"], p);
  // u = 7 approximation error ~ 1e-32 dwarfs the display rounding
  REQUIRE(abs(ev - ov) < BigFloat(1e-25, p));
}

TEST_CASE("poles CSV carries the expected first pole of the p = 2 line") {
  auto r = run_cli("poles --char 5.4 --u 3 --max-imag 6 --max-depth 4 --prec 128 --format csv");
  REQUIRE(r.exit_code == 0);
  REQUIRE(r.out.find("source,location_re,location_im,order,residue_re,residue_im") !=
          std::string::npos);
  REQUIRE(r.out.find("euler_factor(p=2,h=0)") != std::string::npos);
  REQUIRE(r.out.find("4.5323601418") != std::string::npos);  // pi / log 2
  REQUIRE(r.out.find("origin(c_1)") != std::string::npos);
}

TEST_CASE("fe-check passes at modest precision") {
  auto r = run_cli("fe-check --char 7.6 --u 5 --prec 160 --s 0.3+2i --s -1+4i");
  REQUIRE(r.exit_code == 0);
  json doc = json::parse(r.out);
  REQUIRE(doc["pass"] == true);
}

TEST_CASE("character errors surface stable machine-readable codes") {
  auto r = run_cli("eval --char 9.8 --u 5 --s 1,0");
  REQUIRE(r.exit_code != 0);
  REQUIRE(r.out.find("CHAR_NOT_PRIMITIVE") != std::string::npos);
  auto r2 = run_cli("eval --char 8.4 --u 5 --s 1,0");
  REQUIRE(r2.exit_code != 0);
  REQUIRE(r2.out.find("CHAR_BAD_LABEL") != std::string::npos);
  auto r3 = run_cli("eval --char 5.4 --u 5 --s what");
  REQUIRE(r3.exit_code != 0);
  REQUIRE(r3.out.find("PARSE") != std::string::npos);
}

TEST_CASE("single-cell table run exits zero with its invariants intact") {
  auto r = run_cli("table --char 5.4 --u 5 --s 1/2+8i --prec 256 --format json");
  REQUIRE(r.exit_code == 0);
  json doc = json::parse(r.out);
  REQUIRE(doc["all_ok"] == true);
  std::string exact = doc["chars"][0]["rows"][0]["cells"][0]["exact_abs"].get<std::string>();
  // the benchmark value 7.16e-13 to three digits
  REQUIRE(exact.substr(0, 4) == "7.15");
  REQUIRE(exact.find("e-13") != std::string::npos);
}

TEST_CASE("error-table CSV has the documented columns") {
  auto r = run_cli("error-table --char 7.6 --u 5 --s 1/2+8i --prec 192 --format csv");
  REQUIRE(r.exit_code == 0);
  REQUIRE(r.out.find("char,s0,u,exact_abs,series_abs,tail_bound,corollary_bound_xi") !=
          std::string::npos);
  REQUIRE(r.out.find("7.6,1/2+8i,5,") != std::string::npos);
}

TEST_CASE("--out writes the same bytes to a file") {
  std::string path = "/tmp/lapprox_cli_test_out.json";
  std::remove(path.c_str());
  auto direct = run_cli("eval --char 5.4 --u 3 --s 2,0 --prec 128");
  auto filed = run_cli("eval --char 5.4 --u 3 --s 2,0 --prec 128 --out " + path);
  REQUIRE(filed.exit_code == 0);
  FILE* f = fopen(path.c_str(), "rb");
  REQUIRE(f != nullptr);
  std::string content;
  std::array<char, 4096> buf{};
  size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), f)) > 0) content.append(buf.data(), got);
  fclose(f);
  REQUIRE(content == direct.out);
  std::remove(path.c_str());
}
