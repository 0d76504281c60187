#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "suzuki/dieudonne.hpp"
#include "suzuki/pipeline.hpp"

using namespace suzuki;

namespace {

const Field F2 = Field::with_degree(1);

// Conjugate by a random invertible base change B: A' = B^{-1} A sigma^t(B).
EModule conjugate(const EModule& M, std::mt19937& rng) {
  const Field& f = M.field;
  std::uniform_int_distribution<std::uint32_t> coef(0, f.order() - 1);
  Matrix B(f, M.dim, M.dim);
  while (true) {
    for (std::size_t r = 0; r < M.dim; ++r)
      for (std::size_t c = 0; c < M.dim; ++c) B.set(r, c, f.from_bits(coef(rng)));
    if (rank(B) == M.dim) break;
  }
  const Matrix inv = inverse(B);
  EModule out = M;
  out.F.matrix = inv * M.F.matrix * B.frobenius(1);
  out.V.matrix = inv * M.V.matrix * B.frobenius(-1);
  out.tau.reset();
  return out;
}

std::string pi_word(int b, int a) { return std::string(static_cast<std::size_t>(b), 'F') + std::string(static_cast<std::size_t>(a), 'V'); }

}  // namespace

TEST_CASE("canonical filtration of small modules") {
  // E/E(F+V): F e1 = e2, V e1 = e2.
  EModule M;
  M.field = F2;
  M.dim = 2;
  M.F = {Matrix(F2, 2, 2), 1};
  M.V = {Matrix(F2, 2, 2), -1};
  M.F.matrix.set(1, 0, F2.one());
  M.V.matrix.set(1, 0, F2.one());
  check_module(M);
  const Filtration filt = canonical_filtration(M);
  CHECK(filt.dims() == std::vector<std::size_t>{0, 1, 2});
  CHECK(filt.steps[1] == Subspace::span(F2, 2, {{F2.zero(), F2.one()}}));
  CHECK(eo_type(M) == std::vector<int>{0});
  CHECK(decompose(M).pretty() == "E/E(F+V)");

  EModule Z = M;
  Z.F.matrix = Matrix(F2, 2, 2);
  Z.V.matrix = Matrix(F2, 2, 2);
  CHECK(canonical_filtration(Z).dims() == std::vector<std::size_t>{0, 2});
  CHECK(a_number(Z) == 2);
  CHECK(eo_type(Z) == std::vector<int>{0});

  Z.F.matrix = Matrix::identity(F2, 2);
  Z.V.matrix = Matrix::identity(F2, 2);
  CHECK_THROWS_AS(check_module(Z), std::invalid_argument);
}

TEST_CASE("standard modules E/E(F^t+V^t)") {
  for (int t = 1; t <= 6; ++t) {
    CAPTURE(t);
    const EModule M = standard_module(F2, t);
    check_module(M);
    CHECK(M.dim == static_cast<std::size_t>(2 * t));
    CHECK(a_number(M) == 1);
    CHECK(p_rank(M) == 0);
    std::vector<int> eo;
    for (int i = 0; i < t; ++i) eo.push_back(i);
    CHECK(eo_type(M) == eo);
    const Decomposition D = decompose(M);
    REQUIRE(D.summands.size() == 1);
    CHECK(D.summands[0].word == pi_word(t, t));
    CHECK(D.summands[0].multiplicity == 1);
    CHECK(D.summands[0].rank == static_cast<std::size_t>(2 * t));
    CHECK(D.pretty() == (t == 1 ? "E/E(F+V)" : "E/E(F^" + std::to_string(t) + "+V^" + std::to_string(t) + ")"));
    CHECK(format_word(D.summands[0].word) == (t == 1 ? "(F^-1) V" : "(F^-1)^" + std::to_string(t) + " V^" + std::to_string(t)));
  }
}

TEST_CASE("words") {
  CHECK(canonical_word("VFF") == "FFV");
  CHECK(canonical_word("VFVF") == "FVFV");
  CHECK(pretty_word("F") == "E/E(F-1,V)");
  CHECK(pretty_word("VV") == "E/E(V-1,F)");

  // Word modules recover their own word, including asymmetric ones.
  for (const std::string w : {"FFVFVVV", "FFFVVVVFFFVVVFFFFVVV", "FVV", "FFV"}) {
    CAPTURE(w);
    const EModule M = word_module(F2, w);
    check_module(M);
    const Decomposition D = decompose(M);
    REQUIRE(D.summands.size() == 1);
    CHECK(D.summands[0].word == canonical_word(w));
    CHECK(D.summands[0].multiplicity == 1);
    CHECK(eo_type(D) == eo_type(M));
  }
  // A periodic word is several copies of its primitive word.
  const Decomposition D = decompose(word_module(F2, "FVFV"));
  REQUIRE(D.summands.size() == 1);
  CHECK(D.summands[0].multiplicity == 2);
  CHECK(D.summands[0].word == "FV");
}

TEST_CASE("presentations") {
  const std::vector<std::pair<int, int>> rel = {{3, 3}, {4, 3}, {3, 4}};
  const EModule Z = presentation_module(F2, rel);
  check_module(Z);
  CHECK(Z.dim == 20);
  CHECK(a_number(Z) == 3);
  CHECK(p_rank(Z) == 0);
  const Decomposition D = decompose(Z);
  REQUIRE(D.summands.size() == 1);
  CHECK(D.summands[0].rank == 20);
  CHECK(D.summands[0].a_number == 3);
  CHECK(presentation_of(D.summands[0].word) == rel);
  CHECK(D.pretty() == "E<X1,X2,X3 : V^3X1=F^3X2, V^4X2=F^3X3, V^3X3=F^4X1>");

  const std::vector<std::pair<int, int>> one = {{2, 2}};
  CHECK(decompose(presentation_module(F2, one)) == decompose(standard_module(F2, 2)));
  CHECK_THROWS_AS(presentation_module(F2, {}), std::invalid_argument);
}

TEST_CASE("EO type is invariant under base change and matches the word path") {
  std::mt19937 rng(7);
  const Field f = Field::make(1);
  std::vector<EModule> parts;
  for (const std::string w : {"FFVFVVV", "FV", "FFFVVV"}) {
    EModule p = word_module(f, w);
    parts.push_back(p);
  }
  const EModule sum = direct_sum(parts);
  const auto eo = eo_type(sum);
  const Decomposition D = decompose(sum);
  CHECK(eo_type(D) == eo);
  CHECK(D.dim() == sum.dim);
  CHECK(D.a_number() == a_number(sum));
  for (int trial = 0; trial < 5; ++trial) {
    const EModule C = conjugate(sum, rng);
    check_module(C);
    CHECK(eo_type(C) == eo);
    CHECK(a_number(C) == a_number(sum));
    CHECK(decompose(C) == D);
  }
}

TEST_CASE("m = 1 curve module") {
  const DeRham dr(SuzukiCurve(1));
  const EModule M = curve_module(dr);
  check_module(M);
  CHECK(a_number(M) == 5);
  CHECK(p_rank(M) == 0);
  const Decomposition D = decompose(M);
  CHECK(D.pretty() == "E/E(F^2+V^2) + 4·E/E(F^3+V^3)");
  CHECK(D.dim() == 28);
  CHECK(D.a_number() == 5);
  CHECK(eo_type(D) == eo_type(M));
  CHECK(decompose_by_orbits(M) == D);

  const TauSplit s = tau_split(M);
  CHECK(s.trivial.dim == 4);
  CHECK(eo_type(s.trivial) == std::vector<int>{0, 1});
  CHECK(decompose(s.trivial).pretty() == "E/E(F^2+V^2)");
  for (int e = 0; e < 7; ++e) CHECK(s.eigen_multiplicities.at(e) == 4);
}

TEST_CASE("m = 2 curve module") {
  const DeRham dr(SuzukiCurve(2));
  const EModule M = curve_module(dr);
  check_module(M);
  CHECK(a_number(M) == 30);
  CHECK(p_rank(M) == 0);
  const Decomposition D = decompose(M);
  CHECK(D.dim() == 248);
  CHECK(D.a_number() == 30);
  CHECK(D.summands.size() == 4);
  CHECK(D.multiplicity(pi_word(5, 5)) == 16);
  CHECK(D.multiplicity(pi_word(3, 3)) == 1);
  CHECK(D.multiplicity(pi_word(1, 1)) == 1);
  const Decomposition Z = decompose(presentation_module(F2, {{3, 3}, {4, 3}, {3, 4}}));
  CHECK(D.multiplicity(Z.summands[0].word) == 4);
  CHECK(eo_type(D) == eo_type(M));
  CHECK(decompose_by_orbits(M) == D);

  const TauSplit s = tau_split(M);
  CHECK(s.trivial.dim == 8);
  CHECK(eo_type(s.trivial) == std::vector<int>{0, 1, 1, 2});
  CHECK(a_number(s.trivial) == 2);
}

TEST_CASE("tau split on a non-diagonal tau") {
  // A swap has order 2, which does not divide q - 1 = 7.
  const Field f = Field::make(1);
  EModule M = standard_module(f, 1);
  Matrix t(f, 2, 2);
  t.set(0, 1, f.one());
  t.set(1, 0, f.one());
  M.tau = SemilinearOp{t, 0};
  CHECK_THROWS_AS(tau_split(M), std::invalid_argument);

  // A conjugated diagonal tau goes through the eigenspace path.
  const DeRham dr(SuzukiCurve(1));
  const EModule C = curve_module(dr);
  Matrix B = Matrix::identity(f, C.dim);
  for (std::size_t k = 0; k + 1 < C.dim; ++k) B.set(k, k + 1, f.one());
  const Matrix inv = inverse(B);
  EModule D = C;
  D.F.matrix = inv * C.F.matrix * B.frobenius(1);
  D.V.matrix = inv * C.V.matrix * B.frobenius(-1);
  D.tau->matrix = inv * C.tau->matrix * B;
  const TauSplit s = tau_split(D);
  CHECK(s.eigen_multiplicities == tau_split(C).eigen_multiplicities);
  CHECK(decompose(s.trivial).pretty() == "E/E(F^2+V^2)");
  CHECK(decompose_by_orbits(D) == decompose(C));
}
