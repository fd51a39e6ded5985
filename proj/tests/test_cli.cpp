#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "droplet/error.hpp"

namespace fs = std::filesystem;
using droplet::cli::run;
using json = nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> v;
  std::istringstream is(text);
  for (std::string line; std::getline(is, line);) v.push_back(line);
  return v;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / "eqdroplet_cli_test";
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("complex parsing") {
  CHECK(droplet::cli::parse_complex("0.6,0.2") == droplet::Complex(0.6, 0.2));
  CHECK(droplet::cli::parse_complex("-1.5") == droplet::Complex(-1.5, 0.0));
  CHECK_THROWS_AS(droplet::cli::parse_complex("1,2,3"), droplet::DomainError);
  CHECK_THROWS_AS(droplet::cli::parse_complex("x"), droplet::DomainError);
}

TEST_CASE("droplet: two components after the transition") {
  const auto r = invoke({"droplet", "--tau", "0.5", "--c", "1", "--n", "64"});
  REQUIRE(r.code == 0);
  const auto rows = lines(r.out);
  REQUIRE(!rows.empty());
  CHECK(rows[0] == "coords,curve,re,im");
  int sym0 = 0, sym1 = 0, sq = 0;
  for (std::size_t k = 1; k < rows.size(); ++k) {
    if (rows[k].rfind("symmetric,0,", 0) == 0) ++sym0;
    if (rows[k].rfind("symmetric,1,", 0) == 0) ++sym1;
    if (rows[k].rfind("squared,", 0) == 0) ++sq;
  }
  CHECK(sym0 == 64);
  CHECK(sym1 == 64);
  CHECK(sq == 64);
  const json meta = json::parse(r.err);
  CHECK(meta["phase"] == "pre-critical");
  CHECK(meta["topology"]["components"] == 2);
  CHECK(meta["map"]["r2"].get<double>() == doctest::Approx(2.25));
}

TEST_CASE("droplet: doubly connected before the transition") {
  const auto r =
      invoke({"droplet", "--tau", "0.1666667", "--c", "1", "--n", "32", "--format", "json"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["phase"] == "post-critical");
  CHECK(j["topology"]["holes"] == 1);
  int symmetric_curves = 0;
  for (const auto& c : j["curves"]) symmetric_curves += c["coords"] == "symmetric" ? 1 : 0;
  CHECK(symmetric_curves == 2);
}

TEST_CASE("droplet: unit circle without charge") {
  const auto r = invoke({"droplet", "--tau", "0", "--c", "0", "--n", "16", "--format", "json"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  for (const auto& c : j["curves"]) {
    if (c["coords"] != "symmetric") continue;
    for (const auto& p : c["points"]) {
      CHECK(std::hypot(p[0].get<double>(), p[1].get<double>()) == doctest::Approx(1.0));
    }
  }
}

TEST_CASE("exit codes") {
  CHECK(invoke({"droplet", "--tau", "1.2"}).code == 2);
  CHECK(invoke({"droplet", "--tau", "abc"}).code == 2);
  CHECK(invoke({"droplet", "--bogus"}).code == 2);
  CHECK(invoke({"droplet", "--p", "1,2,3"}).code == 2);
  CHECK(invoke({"droplet", "--tau", "0.9", "--c", "1", "--p", "2,0"}).code == 3);
  CHECK(invoke({"moments", "--tau", "0.5", "--c", "1", "--p", "0.5,0"}).code == 3);
  CHECK(invoke({"spectrum1d", "--c", "1", "--p", "0,1"}).code == 2);
  CHECK(invoke({}).code == 2);
  CHECK(invoke({"--help"}).code == 0);
  const auto slow = invoke({"fekete", "--tau", "0.5", "--c", "1", "--n", "32", "--max-iter", "1"});
  CHECK(slow.code == 4);
  CHECK(lines(slow.out).size() == 33);
}

TEST_CASE("verify passes in both phases and without charge") {
  for (const auto& args : {std::vector<std::string>{"verify", "--tau", "0.5", "--c", "1"},
                           std::vector<std::string>{"verify", "--tau", "0.1", "--c", "1"},
                           std::vector<std::string>{"verify", "--tau", "0.5", "--c", "0"}}) {
    auto full = args;
    full.insert(full.end(), {"--format", "json", "--n", "12", "--k", "16"});
    const auto r = invoke(full);
    CHECK(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["pass"] == true);
    CHECK(j["equality"]["interior_max_residual"].get<double>() <= 1e-8);
  }
  const json j = json::parse(
      invoke({"verify", "--tau", "0.5", "--c", "0", "--format", "json", "--n", "8", "--k", "8"})
          .out);
  CHECK(j["area"].get<double>() == doctest::Approx(std::numbers::pi * 0.75));
}

TEST_CASE("fekete: single point and diagnostics") {
  const auto one = invoke({"fekete", "--n", "1"});
  REQUIRE(one.code == 0);
  const auto rows = lines(one.out);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0] == "re,im");

  const auto r = invoke({"fekete", "--tau", "0.5", "--c", "1", "--n", "96", "--seed", "7",
                         "--format", "json", "--deterministic"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["points"].size() == 96);
  CHECK(j["diagnostics"]["clusters"] == 2);
  CHECK_FALSE(j.contains("elapsed_seconds"));
}

TEST_CASE("spectrum1d and moments") {
  const auto s = invoke({"spectrum1d", "--c", "0", "--p", "0", "--n", "11", "--format", "json"});
  REQUIRE(s.code == 0);
  const json j = json::parse(s.out);
  CHECK(j["single_band"] == true);
  CHECK(j["edges"][0].get<double>() == doctest::Approx(-2.0));
  CHECK(j["mass_residual"].get<double>() <= 1e-8);
  CHECK(j["x"].size() == 11);

  const auto m = invoke({"moments", "--tau", "0.2", "--c", "1", "--p", "0.3", "--format", "json"});
  REQUIRE(m.code == 0);
  const json mj = json::parse(m.out);
  CHECK(mj["max_discrepancy"].get<double>() <= 1e-6);
  CHECK(mj["moments"].size() == 5);
}

TEST_CASE("deterministic runs are bytewise identical") {
  const fs::path dir = scratch_dir();
  for (const std::string cmd : {"fekete", "droplet", "verify", "spectrum1d", "moments"}) {
    std::vector<std::string> base{cmd, "--c", "1", "--deterministic"};
    if (cmd != "spectrum1d") base.insert(base.end(), {"--tau", "0.5"});
    if (cmd == "fekete") base.insert(base.end(), {"--n", "48", "--seed", "3"});
    if (cmd == "verify") base.insert(base.end(), {"--n", "8", "--k", "8"});
    for (const std::string fmt : {"csv", "json"}) {
      auto a = base, b = base;
      const fs::path pa = dir / (cmd + "_a." + fmt), pb = dir / (cmd + "_b." + fmt);
      a.insert(a.end(), {"--format", fmt, "--output", pa.string(), "--threads", "1"});
      b.insert(b.end(), {"--format", fmt, "--output", pb.string(), "--threads", "3"});
      REQUIRE(invoke(a).code == 0);
      REQUIRE(invoke(b).code == 0);
      CHECK(slurp(pa) == slurp(pb));
      CHECK(!slurp(pa).empty());
    }
  }
}

TEST_CASE("output directory from the environment") {
  const fs::path dir = scratch_dir() / "env";
  fs::remove_all(dir);
  setenv("DROPLET_OUTPUT_DIR", dir.c_str(), 1);
  const auto r = invoke({"droplet", "--tau", "0.2", "--c", "1", "--n", "8"});
  unsetenv("DROPLET_OUTPUT_DIR");
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  CHECK(fs::exists(dir / "droplet.csv"));
  REQUIRE(fs::exists(dir / "droplet.meta.json"));
  CHECK(json::parse(slurp(dir / "droplet.meta.json"))["phase"] == "post-critical");
}

TEST_CASE("csv numbers carry 17 significant digits") {
  const auto r = invoke({"spectrum1d", "--c", "1", "--p", "0", "--n", "3"});
  REQUIRE(r.code == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 4);
  const std::string x0 = rows[1].substr(0, rows[1].find(','));
  CHECK(std::stod(x0) == doctest::Approx(-(std::sqrt(3.0) + 1.0) - 0.5).epsilon(1e-15));
  CHECK(x0.size() >= 18);
}
