#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "stlab/cli.hpp"

using namespace stlab;
using Json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
  Json json() const { return Json::parse(out); }
};

Result call(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("family check") {
  const Result ok = call({"family", "check", "--f", "0,1", "--g", "0,1"});
  CHECK(ok.code == kExitOk);
  CHECK(ok.json()["nondeg_global"] == "pass");
  CHECK(ok.json()["deg_delta"] == 3);
  const Result bad = call({"family", "check", "--f", "0", "--g", "0,0,0,1"});
  CHECK(bad.code == kExitHypothesis);
  CHECK(bad.json()["nondeg_global"] == "j_constant");
}

TEST_CASE("trace command") {
  const Result r = call({"trace", "--f", "0,1", "--g", "0,1", "-p", "5", "-t", "1"});
  CHECK(r.code == kExitOk);
  CHECK(r.json()["a"] == -3);
  CHECK(r.json()["psi"].get<double>() == doctest::Approx(2.306111).epsilon(1e-6));
  CHECK(call({"trace", "--f", "0,1", "--g", "0,1", "-p", "31", "-t", "1"}).code == kExitHypothesis);
  CHECK(call({"trace", "--f", "0,1", "--g", "0,1", "-p", "9", "-t", "1"}).code == kExitUsage);
}

TEST_CASE("usage errors") {
  CHECK(call({}).code == kExitUsage);
  CHECK(call({"bogus"}).code == kExitUsage);
  CHECK(call({"trace", "--f", "0,1"}).code == kExitUsage);
  CHECK(call({"experiment", "vertical-subgroup", "--f", "0,1", "--g", "0,1", "-p", "13", "--r", "5"}).code ==
        kExitUsage);
  CHECK(call({"experiment", "vertical-subgroup", "--f", "0,1", "--g", "0,1", "-p", "13", "--r", "4", "--alpha",
              "2", "--beta", "1"})
            .code == kExitUsage);
  CHECK(call({"--help"}).code == kExitOk);
}

TEST_CASE("refused computations") {
  CHECK(call({"verify", "charsum", "--f", "0,1", "--g", "0,1", "-p", "4194319", "--n-max", "1"}).code ==
        kExitRefused);
}

TEST_CASE("report schema") {
  const std::vector<std::vector<std::string>> commands = {
      {"angles", "--f", "0,1", "--g", "0,1", "-p", "101"},
      {"verify", "charsum", "--f", "0,1", "--g", "0,1", "-p", "101", "--n-max", "2"},
      {"experiment", "vertical-subgroup", "--f", "0,1", "--g", "0,1", "-p", "101", "--r", "20"},
      {"experiment", "vertical-product", "--f", "0,1", "--g", "0,1", "-p", "101", "--U", "1..5", "--V", "2,3"},
      {"experiment", "vertical-primes", "--f", "0,1", "--g", "0,1", "-p", "101", "--L", "50"},
      {"experiment", "mixed-product", "--f", "0,1", "--g", "0,1", "--x", "60", "--U", "1..3", "--V", "1..3"},
      {"experiment", "mixed-geometric", "--f", "0,1", "--g", "0,1", "--x", "60", "--lambda", "2", "--T", "5"},
      {"experiment", "mixed-primes", "--f", "0,1", "--g", "0,1", "--x", "60", "--L", "20"},
      {"sums", "vaughan", "--f", "0,1", "--g", "0,1", "-p", "101", "--L", "200"},
      {"sums", "mobius", "--f", "0,1", "--g", "0,1", "-p", "101", "--L", "200"},
      {"sums", "prime-sym", "--f", "0,1", "--g", "0,1", "-p", "101", "--L", "200"},
      {"sums", "orders", "--x", "20", "--lambda", "2"},
  };
  for (const auto& args : commands) {
    const Result r = call(args);
    INFO(args[0] << " " << args[1]);
    REQUIRE(r.code == kExitOk);
    const Json j = r.json();
    for (const char* key : {"command", "family_fingerprint", "params", "mu", "count_or_average", "bracket", "ratio",
                            "runtime_ms"}) {
      CHECK(j.contains(key));
    }
  }
  const Json orders = call({"sums", "orders", "--x", "20", "--lambda", "2", "--exponent", "1", "--y", "3"}).json();
  CHECK(orders["order_sum"].get<double>() == doctest::Approx(1.44722).epsilon(1e-5));
  CHECK(orders["divisor_window_count"] == 6);
}

TEST_CASE("histogram files") {
  const fs::path csv = fs::temp_directory_path() / "stlab_cli_hist.csv";
  const fs::path svg = fs::temp_directory_path() / "stlab_cli_hist.svg";
  const Result r = call({"angles", "--f", "0,1", "--g", "0,1", "-p", "1009", "--bins", "8", "--csv", csv.string(),
                         "--svg", svg.string()});
  REQUIRE(r.code == kExitOk);
  std::ifstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "bin_lo,bin_hi,count,st_mass");
  std::getline(in, line);
  CHECK(line.rfind("0.000000,0.392699,", 0) == 0);
  int rows = 1;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 8);
  std::ifstream s(svg);
  std::string first;
  std::getline(s, first);
  CHECK(first.rfind("<svg", 0) == 0);
  fs::remove(csv);
  fs::remove(svg);
}

TEST_CASE("cache flag and environment override") {
  const fs::path a = fs::temp_directory_path() / "stlab_cli_a.cache";
  const fs::path b = fs::temp_directory_path() / "stlab_cli_b.cache";
  fs::remove(a);
  fs::remove(b);
  const std::vector<std::string> exp{"experiment", "vertical-subgroup", "--f", "0,1", "--g", "0,1",
                                     "-p",         "101",               "--r", "20",  "--cache", a.string()};
  const Result first = call(exp);
  REQUIRE(first.code == kExitOk);
  CHECK(fs::exists(a));
  const Json stats = call({"cache", "stats", "--f", "0,1", "--g", "0,1", "--cache", a.string()}).json();
  CHECK(stats["rows"] == first.json()["report"]["sample_size"]);
  CHECK(call({"cache", "stats", "--f", "1", "--g", "0,1", "--cache", a.string()}).code == kExitCache);

  setenv("STLAB_CACHE", b.string().c_str(), 1);
  REQUIRE(call(exp).code == kExitOk);
  unsetenv("STLAB_CACHE");
  CHECK(fs::exists(b));
  fs::remove(a);
  fs::remove(b);
}
