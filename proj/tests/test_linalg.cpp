#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "suzuki/linalg.hpp"

using namespace suzuki;

namespace {

Matrix random_matrix(const Field& f, std::size_t r, std::size_t c, std::mt19937& rng, int density = 2) {
  std::uniform_int_distribution<std::uint32_t> pick(0, f.order() - 1);
  std::uniform_int_distribution<int> keep(0, density);
  Matrix m(f, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      if (keep(rng) == 0) m.set(i, j, {static_cast<std::uint16_t>(pick(rng))});
  return m;
}

}  // namespace

TEST_CASE("identity and product") {
  const Field f = Field::make(1);
  std::mt19937 rng(1);
  const Matrix a = random_matrix(f, 5, 7, rng);
  CHECK(Matrix::identity(f, 5) * a == a);
  CHECK(a * Matrix::identity(f, 7) == a);
  const Matrix b = random_matrix(f, 7, 3, rng);
  const Matrix c = random_matrix(f, 3, 4, rng);
  CHECK((a * b) * c == a * (b * c));
  CHECK((a * b).transpose() == b.transpose() * a.transpose());
}

TEST_CASE("rank nullity and kernel") {
  std::mt19937 rng(2);
  for (int m = 1; m <= 3; ++m) {
    const Field f = Field::make(m);
    for (int it = 0; it < 20; ++it) {
      const Matrix a = random_matrix(f, 6 + it % 5, 9, rng);
      const Matrix k = null_space(a);
      CHECK(rank(a) + k.rows() == a.cols());
      CHECK((a * k.transpose()).is_zero());
      CHECK(rank(k) == k.rows());
    }
  }
}

TEST_CASE("inverse") {
  std::mt19937 rng(3);
  const Field f = Field::make(2);
  int found = 0;
  for (int it = 0; it < 40 && found < 10; ++it) {
    const Matrix a = random_matrix(f, 6, 6, rng, 1);
    if (rank(a) < 6) {
      CHECK_THROWS_AS(inverse(a), std::domain_error);
      continue;
    }
    ++found;
    CHECK(a * inverse(a) == Matrix::identity(f, 6));
  }
  CHECK(found > 0);
}

TEST_CASE("subspace operations") {
  std::mt19937 rng(4);
  const Field f = Field::make(1);
  for (int it = 0; it < 30; ++it) {
    const Subspace u = Subspace::span(random_matrix(f, 4, 8, rng));
    const Subspace w = Subspace::span(random_matrix(f, 5, 8, rng));
    const Subspace s = u + w;
    const Subspace i = intersect(u, w);
    CHECK(s.dim() + i.dim() == u.dim() + w.dim());
    CHECK(u.contains(i));
    CHECK(w.contains(i));
    CHECK(s.contains(u));
    CHECK(intersect(w, u) == i);
    for (std::size_t r = 0; r < u.dim(); ++r) CHECK(u.contains(u.basis().row_vector(r)));
    CHECK((u.annihilator() * u.basis().transpose()).is_zero());
    CHECK(u.annihilator().rows() + u.dim() == 8);
  }
}

TEST_CASE("image and preimage") {
  std::mt19937 rng(5);
  const Field f = Field::make(2);
  for (int it = 0; it < 20; ++it) {
    const Matrix a = random_matrix(f, 7, 7, rng);
    const Subspace w = Subspace::span(random_matrix(f, 3, 7, rng));
    const Subspace pre = preimage(a, w);
    // A(pre) = W intersect im A
    CHECK(image(a, pre) == intersect(w, column_space(a)));
    CHECK(pre.contains(Subspace::span(null_space(a))));
    const Subspace img = image(a, Subspace::full(f, 7));
    CHECK(img == column_space(a));
    CHECK(img.dim() == rank(a));
  }
}

TEST_CASE("coordinates round trip") {
  std::mt19937 rng(6);
  const Field f = Field::make(1);
  const Subspace u = Subspace::span(random_matrix(f, 4, 6, rng, 0));
  Vector c(u.dim());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = f.exp(static_cast<long long>(i) * 3);
  Vector v(6);
  for (std::size_t i = 0; i < u.dim(); ++i)
    for (std::size_t j = 0; j < 6; ++j) v[j] = f.add(v[j], f.mul(c[i], u.basis()(i, j)));
  CHECK(u.coordinates(v) == c);
  if (u.dim() < 6) {
    const Matrix ann = u.annihilator();
    // A vector with nonzero pairing against some annihilator row lies outside.
    Vector out(6);
    for (std::size_t j = 0; j < 6; ++j) out[j] = ann(0, j);
    bool pairs = false;
    FieldElem acc{};
    for (std::size_t j = 0; j < 6; ++j) acc = f.add(acc, f.mul(out[j], ann(0, j)));
    pairs = !acc.is_zero();
    if (pairs) CHECK_THROWS_AS(u.coordinates(out), std::domain_error);
  }
}
