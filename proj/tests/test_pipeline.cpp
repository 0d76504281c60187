#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <fstream>

#include "suzuki/pipeline.hpp"
#include "suzuki/verify.hpp"

using namespace suzuki;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("suzuki_dr_test_" + name);
  fs::remove_all(dir);
  return dir;
}

bool same(const EModule& a, const EModule& b) {
  return a.dim == b.dim && a.F.matrix == b.F.matrix && a.V.matrix == b.V.matrix && a.F.twist == b.F.twist &&
         a.V.twist == b.V.twist && a.tau->matrix == b.tau->matrix;
}

}  // namespace

TEST_CASE("operator records round trip") {
  const DeRham dr{SuzukiCurve(1)};
  const EModule M = curve_module(dr);
  const auto j = op_to_json(1, "V", M.V);
  CHECK(j.at("operator") == "V");
  CHECK(j.at("twist") == -1);
  CHECK(j.at("dim") == 28);
  const SemilinearOp back = op_from_json(dr.field(), j);
  CHECK(back.matrix == M.V.matrix);
  CHECK(back.twist == -1);
  CHECK(op_to_json(1, "V", back).dump() == j.dump());

  nlohmann::json bad = j;
  bad["entries"].push_back({99, 0, 1});
  CHECK_THROWS_AS(op_from_json(dr.field(), bad), std::invalid_argument);
  CHECK_THROWS_AS(op_from_json(dr.field(), nlohmann::json{{"dim", 2}}), std::invalid_argument);

  const std::string csv = op_to_csv(M.F);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 28);
  CHECK(std::count(csv.begin(), csv.end(), ',') == 28 * 27);
}

TEST_CASE("basis hash depends on m") {
  CHECK(basis_hash(DeRham(SuzukiCurve(1))) == basis_hash(DeRham(SuzukiCurve(1))));
  CHECK(basis_hash(DeRham(SuzukiCurve(1))) != basis_hash(DeRham(SuzukiCurve(2))));
}

TEST_CASE("cache hit and miss agree") {
  const fs::path dir = fresh_dir("cache");
  const DeRham dr{SuzukiCurve(2)};
  bool hit = true;
  const EModule a = cached_curve_module(dr, dir, &hit);
  CHECK_FALSE(hit);
  const EModule b = cached_curve_module(dr, dir, &hit);
  CHECK(hit);
  CHECK(same(a, b));
  CHECK(same(a, curve_module(dr)));

  // A corrupt file is recomputed and replaced.
  for (const auto& entry : fs::directory_iterator(dir)) std::ofstream(entry.path()) << "{\"hash\": 3";
  const EModule c = cached_curve_module(dr, dir, &hit);
  CHECK_FALSE(hit);
  CHECK(same(a, c));
  cached_curve_module(dr, dir, &hit);
  CHECK(hit);

  // A file whose matrices violate FV = 0 is rejected too.
  for (const auto& entry : fs::directory_iterator(dir)) {
    std::ifstream in(entry.path());
    nlohmann::json j = nlohmann::json::parse(in);
    in.close();
    j["F"] = op_to_json(2, "F", {Matrix::identity(dr.field(), dr.dim()), 1});
    std::ofstream(entry.path()) << j.dump();
  }
  const EModule d = cached_curve_module(dr, dir, &hit);
  CHECK_FALSE(hit);
  CHECK(same(a, d));
  fs::remove_all(dir);
}

TEST_CASE("default cache directory from the environment") {
  ::setenv("SUZUKI_DR_CACHE", "/tmp/somewhere", 1);
  CHECK(default_cache_dir() == fs::path("/tmp/somewhere"));
  ::setenv("SUZUKI_DR_CACHE", "", 1);
  CHECK_FALSE(default_cache_dir().has_value());
  ::unsetenv("SUZUKI_DR_CACHE");
  CHECK_FALSE(default_cache_dir().has_value());
}

TEST_CASE("verification suites for m = 1") {
  Workbench wb;
  for (const auto& suite : suite_names()) {
    CAPTURE(suite);
    const auto checks = run_suite(wb, 1, suite);
    CHECK_FALSE(checks.empty());
    for (const auto& c : checks) {
      CAPTURE(c.name);
      CAPTURE(c.detail);
      CHECK(c.pass);
    }
  }
  CHECK_THROWS_AS(run_suite(wb, 1, "nope"), std::invalid_argument);
  CHECK_THROWS_AS(wb.module(5), std::invalid_argument);
  CHECK(to_json(std::vector<Check>{{"x", true, "d"}}).dump() == R"([{"detail":"d","name":"x","pass":true}])");
}
