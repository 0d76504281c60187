#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include <json.hpp>

#include "suzuki/dieudonne.hpp"

namespace suzuki {

/// Combinatorics of the trivial tau-eigenspace for c = q0 = 2^m.
struct TrivialEigenModel {
  int c = 0;
  /// I = {j : ceil((c+1)/2) <= j <= c}, increasing.
  std::vector<int> index;
  // Maps on I, keyed by j.
  std::map<int, int> ell;      // odd part of j
  std::map<int, int> e;        // j = 2^e ell
  std::map<int, int> s;        // c - (ell - 1)/2
  std::map<int, int> mm;       // 2c - 2j + 1
  std::map<int, int> epsilon;  // 2^epsilon mm lands in I
  std::map<int, int> t;        // 2^epsilon mm
  std::map<int, int> iota;     // t(iota(j)) = s(j)
};

/// Throws std::logic_error if s or t fails to permute I.
TrivialEigenModel trivial_eigen_model(int m);

/// The 2q0-dimensional module on X_1..X_c, Y_1..Y_c (coordinates 0..c-1 and
/// c..2c-1) over F_2.
EModule d_m0_action(int m);

/// One relation F^{b} X_j + V^{a} X_k per generator j, with k = iota(j),
/// b = e(j) + 1 and a = epsilon(k) + 1.
struct GeneratorRelation {
  int j = 0;
  int b = 0;
  int k = 0;
  int a = 0;
};
std::vector<GeneratorRelation> palg_relations(int m);

/// The cycles of the relations as presentations V^{a_i} X_i = F^{b_i} X_{i+1}.
std::vector<std::vector<std::pair<int, int>>> palg_presentations(int m);
/// Decomposition of the direct sum of the presentation modules.
Decomposition palg_decomposition(int m);

/// Generator index j with (F^{e+1} + V^{e+1}) X_j = 0 when
/// 2^m = 2^e mod 2^{e+1}+1, nothing otherwise. Requires 0 <= e and m <= 30.
std::optional<int> w0_occurrence(int m, int e);
/// The same question answered by scanning the relations.
std::optional<int> w0_occurrence_scan(int m, int e);

struct Expected {
  int m = 0;
  long long genus = 0;
  long long a_number = 0;
  std::vector<int> eo_trivial;
  long long point_count = 0;
};
Expected expected(int m);
nlohmann::json to_json(const Expected& x);

}  // namespace suzuki
