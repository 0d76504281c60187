#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "suzuki/cohomology.hpp"
#include "suzuki/dieudonne.hpp"

namespace suzuki {

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

bool all_pass(const std::vector<Check>& checks);
nlohmann::json to_json(const std::vector<Check>& checks);

/// Lazily computed per-m data shared between suites. Not thread-safe.
class Workbench {
 public:
  explicit Workbench(std::optional<std::filesystem::path> cache = std::nullopt);

  const SuzukiCurve& curve(int m);
  const DeRham& derham(int m);
  const EModule& module(int m);
  /// Direct decomposition for m <= 2, per tau-orbit for larger m.
  const Decomposition& decomposition(int m);
  const TauSplit& split(int m);
  /// Seconds spent building module(m), including the curve and the basis.
  double module_seconds(int m);
  bool cache_hit(int m);

 private:
  struct Entry {
    std::unique_ptr<SuzukiCurve> curve;
    std::unique_ptr<DeRham> dr;
    std::optional<EModule> module;
    std::optional<Decomposition> decomposition;
    std::optional<TauSplit> split;
    double seconds = 0;
    bool hit = false;
  };
  Entry& entry(int m);

  std::optional<std::filesystem::path> cache_;
  std::map<int, Entry> entries_;
};

/// Basis sizes, pole orders and the structural dimensions g and 2g.
std::vector<Check> check_dimensions(Workbench& wb, int m);
/// The 15-row Cartier table (m = 1, 2).
std::vector<Check> check_cartier_table(Workbench& wb, int m);
/// The 28-row F/V table (m = 1 only).
std::vector<Check> check_vf_table(Workbench& wb);
/// a-number and p-rank against the closed forms; exact decomposition for m = 1, 2.
std::vector<Check> check_structure(Workbench& wb, int m);
/// Trivial tau-eigenspace of the curve module.
std::vector<Check> check_trivial_eigenspace(Workbench& wb, int m);
/// Explicit trivial-eigenspace model for m <= max_m (no curve needed).
std::vector<Check> check_trivial_model(int max_m);
/// Congruence criterion against a scan of the relations, m <= max_m.
std::vector<Check> check_w0_scan(int max_m);
/// E/E(F^{m+1}+V^{m+1}) occurs in the computed decomposition.
std::vector<Check> check_w0_in_curve(Workbench& wb, int m);
/// tau exponents against the good-subset prediction.
std::vector<Check> check_tau_exponents(Workbench& wb, int m);
/// Multiplicity of (F^-1)^{2m+1} V^{2m+1}; `gate` says whether 4^m is required.
std::vector<Check> check_conjecture(Workbench& wb, int m, bool gate);
/// FV = VF = 0 and ker F = im V of dimension g.
std::vector<Check> check_operator_identities(Workbench& wb, int m);
/// Cartier on random samples, cone round trips, point count, divisors.
std::vector<Check> check_curve_properties(Workbench& wb, int m, unsigned seed = 1);

/// Suites by name: dims, cartier, fv, props, trivial, w0, tau, conjecture,
/// properties, all ("table1" and "table2" are accepted for cartier and fv).
/// Throws std::invalid_argument for an unknown name.
std::vector<Check> run_suite(Workbench& wb, int m, const std::string& suite);
const std::vector<std::string>& suite_names();

}  // namespace suzuki
