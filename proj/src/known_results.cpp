#include "suzuki/known_results.hpp"

#include <set>
#include <stdexcept>

namespace suzuki {

namespace {

void require_m(int m, int hi) {
  if (m < 1 || m > hi) throw std::invalid_argument("m out of range");
}

}  // namespace

TrivialEigenModel trivial_eigen_model(int m) {
  require_m(m, 20);
  TrivialEigenModel M;
  const int c = 1 << m;
  M.c = c;
  for (int j = (c + 2) / 2; j <= c; ++j) M.index.push_back(j);
  const std::set<int> I(M.index.begin(), M.index.end());
  std::map<int, int> t_inv;
  for (int j : M.index) {
    int ell = j;
    int e = 0;
    while (ell % 2 == 0) {
      ell /= 2;
      ++e;
    }
    M.ell[j] = ell;
    M.e[j] = e;
    M.s[j] = c - (ell - 1) / 2;
    const int mm = 2 * c - 2 * j + 1;
    int eps = 0;
    int t = mm;
    while (!I.count(t)) {
      t *= 2;
      ++eps;
      if (t > c) throw std::logic_error("no power of two moves m(j) into I");
    }
    M.mm[j] = mm;
    M.epsilon[j] = eps;
    M.t[j] = t;
    if (!t_inv.emplace(t, j).second) throw std::logic_error("t is not injective on I");
  }
  std::set<int> s_values;
  for (int j : M.index) s_values.insert(M.s[j]);
  if (s_values != I) throw std::logic_error("s does not permute I");
  for (int j : M.index) M.iota[j] = t_inv.at(M.s[j]);
  return M;
}

EModule d_m0_action(int m) {
  require_m(m, 20);
  const int c = 1 << m;
  const Field f = Field::with_degree(1);
  EModule M;
  M.field = f;
  M.dim = static_cast<std::size_t>(2 * c);
  M.F = {Matrix(f, M.dim, M.dim), 1};
  M.V = {Matrix(f, M.dim, M.dim), -1};
  auto X = [](int j) { return static_cast<std::size_t>(j - 1); };
  auto Y = [c](int j) { return static_cast<std::size_t>(c + j - 1); };
  for (int j = 1; j <= c; ++j) {
    if (2 * j <= c) M.V.matrix.set(Y(2 * j), Y(j), f.one());
    if (j % 2 == 0)
      M.F.matrix.set(X(j / 2), X(j), f.one());
    else
      M.F.matrix.set(Y(c - (j - 1) / 2), X(j), f.one());
    // Zero exactly when 2c - 2j + 1 > c, i.e. j <= c/2.
    if (2 * j > c) M.V.matrix.set(Y(2 * c - 2 * j + 1), X(j), f.one());
  }
  return M;
}

std::vector<GeneratorRelation> palg_relations(int m) {
  const TrivialEigenModel T = trivial_eigen_model(m);
  std::vector<GeneratorRelation> out;
  for (int j : T.index) {
    const int k = T.iota.at(j);
    out.push_back({j, T.e.at(j) + 1, k, T.epsilon.at(k) + 1});
  }
  return out;
}

std::vector<std::vector<std::pair<int, int>>> palg_presentations(int m) {
  // F^b X_j = V^a X_k reads V^a X_k = F^b X_j: generator k is followed by j.
  std::map<int, GeneratorRelation> by_k;
  for (const auto& r : palg_relations(m)) by_k[r.k] = r;
  std::set<int> seen;
  std::vector<std::vector<std::pair<int, int>>> out;
  for (const auto& [start, unused] : by_k) {
    if (seen.count(start)) continue;
    std::vector<std::pair<int, int>> cycle;
    for (int k = start; !seen.count(k); k = by_k.at(k).j) {
      seen.insert(k);
      cycle.emplace_back(by_k.at(k).a, by_k.at(k).b);
    }
    out.push_back(std::move(cycle));
  }
  return out;
}

Decomposition palg_decomposition(int m) {
  std::vector<EModule> parts;
  for (const auto& p : palg_presentations(m)) parts.push_back(presentation_module(Field::with_degree(1), p));
  return decompose(direct_sum(parts));
}

std::optional<int> w0_occurrence(int m, int e) {
  require_m(m, 30);
  if (e < 0 || e > 30) throw std::invalid_argument("e out of range");
  const long long modulus = (1ll << (e + 1)) + 1;
  const long long q0 = 1ll << m;
  if ((q0 - (1ll << e)) % modulus != 0) return std::nullopt;
  return static_cast<int>(((1ll << (e + 1)) * q0 + (1ll << e)) / modulus);
}

std::optional<int> w0_occurrence_scan(int m, int e) {
  for (const auto& r : palg_relations(m))
    if (r.j == r.k && r.b == e + 1 && r.a == e + 1) return r.j;
  return std::nullopt;
}

Expected expected(int m) {
  require_m(m, 10);
  Expected x;
  const long long q0 = 1ll << m;
  const long long q = 2 * q0 * q0;
  x.m = m;
  x.genus = q0 * (q - 1);
  x.a_number = q0 * (q0 + 1) * (2 * q0 + 1) / 6;
  for (long long i = 1; i <= q0; ++i) x.eo_trivial.push_back(static_cast<int>(i / 2));
  x.point_count = q * q + 1;
  return x;
}

nlohmann::json to_json(const Expected& x) {
  return {{"m", x.m},
          {"genus", x.genus},
          {"a_number", x.a_number},
          {"eo_trivial", x.eo_trivial},
          {"point_count", x.point_count}};
}

}  // namespace suzuki
