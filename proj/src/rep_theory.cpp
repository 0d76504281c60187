#include "suzuki/rep_theory.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace suzuki {

namespace {

long long unit_order(int m) { return (1ll << (2 * m + 1)) - 1; }

long long reduce(long long x, long long n) { return ((x % n) + n) % n; }

ExponentMultiset sum_with(const ExponentMultiset& a, const ExponentMultiset& b, long long n) {
  ExponentMultiset out;
  for (const auto& [x, i] : a)
    for (const auto& [y, j] : b) out[reduce(x + y, n)] += i * j;
  return out;
}

void add_into(ExponentMultiset& acc, const ExponentMultiset& x, std::size_t times) {
  for (const auto& [e, k] : x) acc[e] += k * times;
}

}  // namespace

bool is_good(const std::vector<int>& I, int m) {
  const int n = 2 * m + 1;
  for (int a : I)
    for (int b : I) {
      const int d = ((b - a) % n + n) % n;
      if (d == m || d == n - m) return false;
    }
  return true;
}

std::vector<GoodSubset> good_subsets(int m) {
  if (m < 1 || m > 10) throw std::invalid_argument("m out of range");
  const int n = 2 * m + 1;
  std::vector<GoodSubset> out;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    std::vector<int> I;
    for (int i = 0; i < n; ++i)
      if (mask >> i & 1u) I.push_back(i);
    if (!is_good(I, m)) continue;
    GoodSubset s;
    s.elements = I;
    s.multiplicity = std::size_t{1} << (m + 1 - static_cast<int>(I.size()));
    s.dimension = std::size_t{1} << (2 * I.size());
    out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end(), [](const GoodSubset& a, const GoodSubset& b) {
    if (a.elements.size() != b.elements.size()) return a.elements.size() < b.elements.size();
    return a.elements < b.elements;
  });
  return out;
}

ExponentMultiset vI_exponents(const std::vector<int>& I, int m) {
  const long long n = unit_order(m);
  const long long w = (1ll << (m + 1)) + 1;
  ExponentMultiset acc{{0, 1}};
  for (int i : I) {
    const long long t = 1ll << ((i % (2 * m + 1) + 2 * m + 1) % (2 * m + 1));
    ExponentMultiset one;
    for (long long x : {w, 1ll, -1ll, -w}) ++one[reduce(x * t, n)];
    acc = sum_with(acc, one, n);
  }
  return acc;
}

ExponentMultiset predicted_hdr_exponents(int m) {
  if (m < 1 || m > 4) throw std::invalid_argument("m out of range");
  ExponentMultiset acc;
  for (const auto& s : good_subsets(m)) add_into(acc, vI_exponents(s.elements, m), s.multiplicity);
  return acc;
}

ExponentMultiset exponents_of(const TauSplit& split) {
  ExponentMultiset out;
  for (const auto& [e, k] : split.eigen_multiplicities) out[e] = k;
  return out;
}

bool brauer_square_check(int i, int m, int shift) {
  const long long n = unit_order(m);
  const ExponentMultiset vi = vI_exponents({i}, m);
  const ExponentMultiset lhs = sum_with(vi, vi, n);
  ExponentMultiset rhs{{0, 4}};
  add_into(rhs, vI_exponents({i + shift}, m), 2);
  add_into(rhs, vI_exponents({i + 1}, m), 1);
  return lhs == rhs;
}

ConjectureReport conjecture_report(int m, const Decomposition& computed) {
  ConjectureReport r;
  r.m = m;
  const std::size_t k = static_cast<std::size_t>(2 * m + 1);
  r.multiplicity = computed.multiplicity(std::string(k, 'F') + std::string(k, 'V'));
  r.predicted = std::size_t{1} << (2 * m);
  r.w_dimension = k * r.predicted;
  r.holds = r.multiplicity == r.predicted;
  return r;
}

nlohmann::json to_json(const GoodSubset& s) {
  return {{"subset", s.elements}, {"multiplicity", s.multiplicity}, {"dimension", s.dimension}};
}

nlohmann::json to_json(const ConjectureReport& r) {
  return {{"m", r.m},
          {"word_multiplicity", r.multiplicity},
          {"predicted", r.predicted},
          {"w_dimension", r.w_dimension},
          {"matches_expected", r.holds},
          {"established", r.m <= 2}};
}

nlohmann::json to_json(const ExponentMultiset& e) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [x, k] : e) out.push_back({x, k});
  return out;
}

}  // namespace suzuki
