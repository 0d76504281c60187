#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include <json.hpp>

#include "suzuki/dieudonne.hpp"

namespace suzuki {

/// Multiset of exponents e (tau acting by zeta^e), reduced into [0, q-2].
using ExponentMultiset = std::map<long long, std::size_t>;

struct GoodSubset {
  std::vector<int> elements;  // increasing, in Z/(2m+1)
  std::size_t multiplicity = 0;  // 2^{m+1-|I|}
  std::size_t dimension = 0;     // 4^{|I|}
};

/// True when no two elements of I differ by +-m mod 2m+1.
bool is_good(const std::vector<int>& I, int m);
/// All good subsets ordered by size, then lexicographically. Requires 1 <= m <= 10.
std::vector<GoodSubset> good_subsets(int m);

/// Exponents of tau on V_I: sums over i in I of +-2^i w_i, w_i in {2^{m+1}+1, 1}.
ExponentMultiset vI_exponents(const std::vector<int>& I, int m);
/// Sum over good I of 2^{m+1-|I|} copies of vI_exponents(I). Requires m <= 4.
ExponentMultiset predicted_hdr_exponents(int m);
/// Tau exponents with multiplicity, from a tau_split record.
ExponentMultiset exponents_of(const TauSplit& split);

/// Checks phi_i^2 = 4 + 2 phi_{i+shift} + phi_{i+1} on tau-exponent multisets;
/// the true relation has shift = m + 1.
bool brauer_square_check(int i, int m, int shift);
inline bool brauer_square_check(int i, int m) { return brauer_square_check(i, m, m + 1); }

struct ConjectureReport {
  int m = 0;
  std::size_t multiplicity = 0;  // of the word (F^-1)^{2m+1} V^{2m+1}
  std::size_t predicted = 0;     // 4^m
  std::size_t w_dimension = 0;   // (2m+1) 4^m
  bool holds = false;
};
ConjectureReport conjecture_report(int m, const Decomposition& computed);

nlohmann::json to_json(const GoodSubset& s);
nlohmann::json to_json(const ConjectureReport& r);
nlohmann::json to_json(const ExponentMultiset& e);

}  // namespace suzuki
