#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "suzuki/gf2m.hpp"

using suzuki::Field;
using suzuki::FieldElem;

namespace {

// Carry-less product reduced by repeated shifting; independent of the tables.
std::uint32_t poly_mulmod(std::uint32_t a, std::uint32_t b, std::uint32_t modulus, int n) {
  std::uint32_t r = 0;
  for (int i = 0; i < n; ++i)
    if (b >> i & 1u) r ^= a << i;
  for (int k = 2 * n - 2; k >= n; --k)
    if (r >> k & 1u) r ^= modulus << (k - n);
  return r;
}

bool is_primitive_bruteforce(std::uint32_t p, int n) {
  // x generates the unit group iff its powers visit every nonzero residue.
  std::uint32_t v = 1;
  std::vector<bool> seen(1u << n, false);
  for (std::uint32_t k = 0; k < (1u << n) - 1; ++k) {
    if (seen[v]) return false;
    seen[v] = true;
    v = poly_mulmod(v, 2, p, n);
  }
  return v == 1;
}

}  // namespace

TEST_CASE("make_field sizes and range") {
  CHECK(Field::make(1).order() == 8);
  CHECK(Field::make(2).order() == 32);
  CHECK(Field::make(3).order() == 128);
  CHECK_THROWS_AS(Field::make(0), std::invalid_argument);
  CHECK_THROWS_AS(Field::make(5), std::invalid_argument);
}

TEST_CASE("modulus is the smallest primitive polynomial") {
  for (int n : {3, 5, 7, 9}) {
    std::uint32_t first = 0;
    for (std::uint32_t p = 1u << n; p < (2u << n); ++p)
      if (is_primitive_bruteforce(p, n)) {
        first = p;
        break;
      }
    CHECK(Field::with_degree(n).modulus() == first);
  }
  CHECK(Field::make(1).modulus() == 0b1011);
}

TEST_CASE("multiplication agrees with polynomial reduction") {
  for (int m = 1; m <= 3; ++m) {
    const Field f = Field::make(m);
    for (std::uint32_t a = 0; a < f.order(); a += 3)
      for (std::uint32_t b = 0; b < f.order(); b += 5)
        CHECK(f.mul({static_cast<std::uint16_t>(a)}, {static_cast<std::uint16_t>(b)}).bits ==
              poly_mulmod(a, b, f.modulus(), f.degree()));
  }
}

TEST_CASE("zeta cubed in F_8") {
  const Field f = Field::make(1);
  const FieldElem z = f.zeta();
  CHECK(f.mul(z, f.mul(z, z)) == f.add(z, f.one()));
  CHECK(f.mul(z, f.inv(z)) == f.one());
  CHECK(f.sqrt(f.one()) == f.one());
}

TEST_CASE("field identities") {
  std::mt19937 rng(7);
  for (int m = 1; m <= 4; ++m) {
    const Field f = Field::make(m);
    std::uniform_int_distribution<std::uint32_t> pick(0, f.order() - 1);
    for (int it = 0; it < 200; ++it) {
      const FieldElem x{static_cast<std::uint16_t>(pick(rng))};
      const FieldElem y{static_cast<std::uint16_t>(pick(rng))};
      CHECK(f.square(f.add(x, y)) == f.add(f.square(x), f.square(y)));
      CHECK(f.sqrt(f.square(x)) == x);
      CHECK(f.square(f.sqrt(x)) == x);
      CHECK(f.pow(x, f.order()) == x);
      CHECK(f.pow2(f.pow2(x, 3), -3) == x);
      if (!x.is_zero()) {
        CHECK(f.mul(x, f.inv(x)) == f.one());
        CHECK(f.exp(f.dlog(x)) == x);
      }
    }
    CHECK_THROWS_AS(f.inv(f.zero()), std::domain_error);
    CHECK_THROWS_AS(f.dlog(f.zero()), std::domain_error);
  }
}

TEST_CASE("dlog examples and order of zeta") {
  const Field f = Field::make(2);
  CHECK(f.dlog(f.one()) == 0);
  CHECK(f.dlog(f.zeta()) == 1);
  CHECK(f.dlog(f.pow(f.zeta(), f.order() - 1)) == 0);
  FieldElem v = f.zeta();
  std::uint32_t k = 1;
  while (v != f.one()) {
    v = f.mul(v, f.zeta());
    ++k;
  }
  CHECK(k == f.order() - 1);
}
