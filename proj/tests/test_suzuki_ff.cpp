#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "suzuki/suzuki_ff.hpp"

using namespace suzuki;

namespace {

FieldElem random_elem(const Field& f, std::mt19937& rng, bool nonzero = true) {
  std::uniform_int_distribution<std::uint32_t> pick(nonzero ? 1 : 0, f.order() - 1);
  return {static_cast<std::uint16_t>(pick(rng))};
}

RawFunc random_raw(const SuzukiCurve& C, std::mt19937& rng, int terms, int ylo, int yhi, int zhi) {
  std::uniform_int_distribution<int> yi(ylo, yhi);
  std::uniform_int_distribution<int> zj(0, zhi);
  RawFunc f;
  for (int t = 0; t < terms; ++t) f.add_term(yi(rng), zj(rng), random_elem(C.field(), rng));
  return f;
}

ConeFunc random_cone(const SuzukiCurve& C, std::mt19937& rng, int terms, int alo, int ahi) {
  std::uniform_int_distribution<int> a(alo, ahi);
  std::uniform_int_distribution<int> b(0, 1);
  std::uniform_int_distribution<int> cd(0, C.q0() - 1);
  ConeFunc f;
  for (int t = 0; t < terms; ++t) f.add_term({a(rng), b(rng), cd(rng), cd(rng)}, random_elem(C.field(), rng));
  return f;
}

// Multiply without intermediate reduction, reduce once at the end.
RawFunc naive_product(const SuzukiCurve& C, const std::vector<RawFunc>& factors) {
  std::map<RawFunc::Key, FieldElem> acc{{{0, 0}, C.field().one()}};
  for (const auto& g : factors) {
    std::map<RawFunc::Key, FieldElem> next;
    for (const auto& [ka, ca] : acc)
      for (const auto& [kb, cb] : g.terms) {
        auto& slot = next[{ka.first + kb.first, ka.second + kb.second}];
        slot = C.field().add(slot, C.field().mul(ca, cb));
      }
    acc.swap(next);
  }
  RawFunc out;
  for (const auto& [k, c] : acc) out.add_term(k.first, k.second, c);
  return C.z_reduce(out);
}

RawFunc one(const SuzukiCurve& C) { return C.monomial(0, 0, C.field().one()); }

}  // namespace

TEST_CASE("curve parameters and point counts") {
  const SuzukiCurve c1(1), c2(2), c3(3);
  CHECK(c1.genus() == 14);
  CHECK(c2.genus() == 124);
  CHECK(c3.genus() == 1016);
  CHECK(c1.count_points() == 65);
  CHECK(c2.count_points() == 1025);
  CHECK(c3.count_points() == 16385);
}

TEST_CASE("h1 and h2") {
  const SuzukiCurve C(1);
  const FieldElem e = C.field().one();
  RawFunc h1;
  h1.add_term(0, 4, e);
  h1.add_term(5, 0, e);
  CHECK(C.h1() == h1);
  RawFunc h1sq;
  h1sq.add_term(0, 1, e);
  h1sq.add_term(3, 0, e);
  CHECK(C.pow(C.h1(), 2) == h1sq);

  for (int m = 1; m <= 3; ++m) {
    const SuzukiCurve S(m);
    const FieldElem u = S.field().one();
    const int q0 = S.q0();
    std::vector<RawFunc> factors(2 * q0, S.h1());
    const RawFunc expected = S.monomial(1, 2 * q0, u) + naive_product(S, factors);
    CHECK(S.h2() == expected);
    RawFunc reduced;
    reduced.add_term(1, 2 * q0, u);
    reduced.add_term(0, 2, u);
    reduced.add_term(2 * q0 + 2, 0, u);
    CHECK(S.h2() == reduced);
  }
}

TEST_CASE("raw multiplication agrees with the unreduced oracle") {
  std::mt19937 rng(11);
  for (int m = 1; m <= 2; ++m) {
    const SuzukiCurve C(m);
    for (int it = 0; it < 50; ++it) {
      const RawFunc f = random_raw(C, rng, 4, -3, 5, C.q() - 1);
      const RawFunc g = random_raw(C, rng, 4, -3, 5, C.q() - 1);
      const RawFunc h = random_raw(C, rng, 3, -3, 5, C.q() - 1);
      CHECK(C.mul(f, g) == naive_product(C, {f, g}));
      CHECK(C.mul(C.mul(f, g), h) == C.mul(f, C.mul(g, h)));
      CHECK(C.mul(f, g + h) == C.mul(f, g) + C.mul(f, h));
    }
  }
}

TEST_CASE("derivative") {
  const SuzukiCurve C(1);
  const FieldElem e = C.field().one();
  CHECK(C.derivative(C.h1()) == C.monomial(4, 0, e));
  CHECK(C.derivative(C.h2()) == C.monomial(0, 4, e));
  std::mt19937 rng(12);
  for (int m = 1; m <= 2; ++m) {
    const SuzukiCurve S(m);
    for (int it = 0; it < 30; ++it) {
      const RawFunc f = random_raw(S, rng, 5, -4, 6, S.q() - 1);
      const RawFunc g = random_raw(S, rng, 5, -4, 6, S.q() - 1);
      CHECK(S.derivative(S.pow(f, 2)).is_zero());
      // Leibniz rule
      CHECK(S.derivative(S.mul(f, g)) == S.mul(S.derivative(f), g) + S.mul(f, S.derivative(g)));
    }
    // d/dy applied to the curve equation gives dz = y^{q0} dy.
    CHECK(S.derivative(S.z()) == S.monomial(S.q0(), 0, S.field().one()));
  }
}

TEST_CASE("valuations at infinity") {
  for (int m = 1; m <= 2; ++m) {
    const SuzukiCurve C(m);
    const int q = C.q();
    const int q0 = C.q0();
    CHECK(C.valuation_at_infinity(C.y()) == -q);
    CHECK(C.valuation_at_infinity(C.z()) == -(q + q0));
    CHECK(C.valuation_at_infinity(C.h1()) == -(q + 2 * q0));
    CHECK(C.valuation_at_infinity(C.h2()) == -(q + 2 * q0 + 1));
    CHECK(C.valuation_at_infinity(C.monomial(-1, 0, C.field().one())) == q);
  }
}

TEST_CASE("valuations on the fiber over y = 0") {
  for (int m = 1; m <= 2; ++m) {
    const SuzukiCurve C(m);
    const Field& F = C.field();
    const int q = C.q();
    const int q0 = C.q0();
    CHECK(C.valuation_at_point(C.z(), F.zero(), F.zero()) == q0 + 1);
    CHECK(C.valuation_at_point(C.h1(), F.zero(), F.zero()) == 2 * q0 + 1);
    CHECK(C.valuation_at_point(C.h2(), F.zero(), F.zero()) == q + 2 * q0 + 1);
    for (std::uint32_t z0 = 0; z0 < F.order(); ++z0)
      CHECK(C.valuation_at_point(C.y(), F.zero(), {static_cast<std::uint16_t>(z0)}) == 1);
    const LocalSeries s = C.expand_at_origin_fiber(C.monomial(-2, 1, F.one()), F.one(), 32);
    CHECK(s.valuation() == -2);
  }
}

TEST_CASE("divisors of y, z, h1, h2") {
  for (int m = 1; m <= 2; ++m) {
    const SuzukiCurve C(m);
    const Field& F = C.field();
    const long long q = C.q();
    const long long q0 = C.q0();
    std::map<std::pair<int, int>, long long> vy, vz, vh1, vh2;
    for (std::uint32_t yb = 0; yb < F.order(); ++yb)
      for (std::uint32_t zb = 0; zb < F.order(); ++zb) {
        const FieldElem y0{static_cast<std::uint16_t>(yb)}, z0{static_cast<std::uint16_t>(zb)};
        const auto key = std::make_pair(int(yb), int(zb));
        vy[key] = C.valuation_at_point(C.y(), y0, z0);
        vz[key] = C.valuation_at_point(C.z(), y0, z0);
        vh1[key] = C.valuation_at_point(C.h1(), y0, z0);
        vh2[key] = C.valuation_at_point(C.h2(), y0, z0);
      }
    long long sy = 0, sz = 0, s1 = 0, s2 = 0;
    long long set_size = 0;
    bool pattern = true;
    for (const auto& [k, v] : vy) {
      const auto [yb, zb] = k;
      const FieldElem y0{static_cast<std::uint16_t>(yb)}, z0{static_cast<std::uint16_t>(zb)};
      sy += v;
      sz += vz[k];
      s1 += vh1[k];
      s2 += vh2[k];
      const bool origin = yb == 0 && zb == 0;
      pattern &= v == (yb == 0 ? 1 : 0);
      pattern &= vz[k] == (origin ? q0 + 1 : (zb == 0 ? 1 : 0));
      const bool in_s = !origin && F.pow(y0, 2 * q0 + 1) == F.pow(z0, 2 * q0);
      set_size += in_s;
      pattern &= vh1[k] == (origin ? 2 * q0 + 1 : (in_s ? 1 : 0));
      pattern &= vh2[k] == (origin ? q + 2 * q0 + 1 : 0);
    }
    CHECK(pattern);
    CHECK(sy == -C.valuation_at_infinity(C.y()));
    CHECK(sz == -C.valuation_at_infinity(C.z()));
    CHECK(s1 == -C.valuation_at_infinity(C.h1()));
    CHECK(s2 == -C.valuation_at_infinity(C.h2()));
    CHECK(set_size == q - 1);
  }
}

TEST_CASE("series and norm agree at infinity") {
  std::mt19937 rng(19);
  for (int m = 1; m <= 2; ++m) {
    const SuzukiCurve C(m);
    int compared = 0;
    for (int it = 0; it < 60; ++it) {
      const RawFunc f = random_raw(C, rng, 3, -3, 4, C.q() - 1);
      Leading by_series;
      try {
        by_series = C.leading_at_infinity_by_series(f);
      } catch (const PrecisionError&) {
        continue;
      }
      const Leading by_norm = C.leading_at_infinity_by_norm(f);
      CHECK(by_series.valuation == by_norm.valuation);
      CHECK(by_series.coefficient == by_norm.coefficient);
      ++compared;
    }
    CHECK(compared >= 30);
    const Leading h2 = C.leading_at_infinity_by_norm(C.h2());
    CHECK(h2.valuation == -(C.q() + 2 * C.q0() + 1));
  }
}

TEST_CASE("valuation is additive") {
  std::mt19937 rng(13);
  const SuzukiCurve C(1);
  const Field& F = C.field();
  for (int it = 0; it < 40; ++it) {
    const RawFunc f = random_raw(C, rng, 3, -2, 3, C.q() - 1);
    const RawFunc g = random_raw(C, rng, 3, -2, 3, C.q() - 1);
    CHECK(C.valuation_at_infinity(C.mul(f, g)) == C.valuation_at_infinity(f) + C.valuation_at_infinity(g));
    const FieldElem z0 = random_elem(F, rng, false);
    CHECK(C.valuation_at_point(C.mul(f, g), F.zero(), z0) ==
          C.valuation_at_point(f, F.zero(), z0) + C.valuation_at_point(g, F.zero(), z0));
  }
}

TEST_CASE("cone numeration") {
  for (int m = 1; m <= 3; ++m) {
    const SuzukiCurve C(m);
    for (long long n = -3000; n <= 3000; ++n) {
      const Mono mono = C.cone_mono_for_pole(n);
      REQUIRE(C.in_cone_range(mono));
      REQUIRE(C.pole_order(mono) == n);
    }
    std::set<long long> poles;
    for (int a = -20; a <= 20; ++a)
      for (int b = 0; b < 2; ++b)
        for (int c = 0; c < C.q0(); ++c)
          for (int d = 0; d < C.q0(); ++d) poles.insert(C.pole_order({a, b, c, d}));
    CHECK(poles.size() == 41u * 2 * C.q0() * C.q0());
  }
}

TEST_CASE("cone conversion examples") {
  const SuzukiCurve C(1);
  const FieldElem e = C.field().one();
  ConeFunc z2;
  z2.add_term({1, 0, 1, 0}, e);
  z2.add_term({0, 0, 0, 1}, e);
  CHECK(C.to_cone(C.monomial(0, 2, e)) == z2);
  ConeFunc y7;
  y7.add_term({7, 0, 0, 0}, e);
  CHECK(C.to_cone(C.monomial(7, 0, e)) == y7);
  CHECK(C.to_cone(C.h2()) == C.normalize({0, 0, 0, 1}, e));
}

TEST_CASE("cone round trips") {
  std::mt19937 rng(14);
  for (int m = 1; m <= 3; ++m) {
    const SuzukiCurve C(m);
    const int rounds = m == 3 ? 100 : 1000;
    for (int it = 0; it < rounds; ++it) {
      const RawFunc f = random_raw(C, rng, 4, -10, 10, C.q() - 1);
      REQUIRE(C.to_raw(C.to_cone(f)) == f);
      const ConeFunc g = random_cone(C, rng, 4, -6, 6);
      REQUIRE(C.to_cone(C.to_raw(g)) == g);
    }
  }
}

TEST_CASE("cone conversion agrees with leading-term elimination") {
  std::mt19937 rng(15);
  for (int m = 1; m <= 2; ++m) {
    const SuzukiCurve C(m);
    int checked = 0;
    for (int it = 0; it < 40; ++it) {
      const ConeFunc g = random_cone(C, rng, 3, -2, 3);
      const RawFunc f = C.to_raw(g);
      ConeFunc h;
      try {
        h = C.to_cone_by_elimination(f);
      } catch (const PrecisionError&) {
        continue;
      }
      CHECK(h == g);
      ++checked;
    }
    CHECK(checked == 40);
  }
}

TEST_CASE("cone arithmetic matches raw arithmetic") {
  std::mt19937 rng(16);
  for (int m = 1; m <= 2; ++m) {
    const SuzukiCurve C(m);
    for (int it = 0; it < 100; ++it) {
      const ConeFunc f = random_cone(C, rng, 3, -4, 4);
      const ConeFunc g = random_cone(C, rng, 3, -4, 4);
      CHECK(C.to_raw(C.mul(f, g)) == C.mul(C.to_raw(f), C.to_raw(g)));
      CHECK(C.to_raw(C.square(f)) == C.pow(C.to_raw(f), 2));
      CHECK(C.to_raw(C.derivative(f)) == C.derivative(C.to_raw(f)));
      CHECK(C.to_raw(C.cartier(f)) == C.cartier(C.to_raw(f)));
    }
  }
}

TEST_CASE("Cartier operator") {
  for (int m = 1; m <= 2; ++m) {
    const SuzukiCurve C(m);
    const Field& F = C.field();
    const FieldElem e = F.one();
    const int q0 = C.q0();
    CHECK(C.cartier(C.z()) == C.monomial(q0 / 2, 0, e));
    CHECK(C.cartier(one(C)).is_zero());
    CHECK(C.cartier(C.y()) == one(C));
    CHECK(C.cartier(C.mul(C.h1(), C.h2())) == C.h1() + C.monomial(q0, 1, e));
    CHECK(C.cartier(C.monomial(1, 1, e)) == C.pow(C.h1(), q0 / 2));
  }
  std::mt19937 rng(17);
  for (int m = 1; m <= 2; ++m) {
    const SuzukiCurve C(m);
    for (int it = 0; it < 100; ++it) {
      const RawFunc h = random_raw(C, rng, 4, -5, 6, C.q() - 1);
      CHECK(C.cartier(C.derivative(h)).is_zero());
      const RawFunc f = random_raw(C, rng, 3, -3, 4, C.q() - 1);
      const RawFunc w = random_raw(C, rng, 3, -3, 4, C.q() - 1);
      CHECK(C.cartier(C.mul(C.pow(f, 2), w)) == C.mul(f, C.cartier(w)));
    }
    // Logarithmic differentials dy/y and dz/z are fixed.
    CHECK(C.cartier(C.monomial(-1, 0, C.field().one())) == C.monomial(-1, 0, C.field().one()));
  }
}

TEST_CASE("tau weights and equivariance") {
  const SuzukiCurve C(1);
  CHECK(C.tau_weight({1, 0, 0, 0}) == 1);
  CHECK(C.tau_weight({0, 1, 0, 0}) == 3);
  CHECK(C.tau_weight({0, 0, 0, 1}) == (8 + 4 + 1) % 7);
  std::mt19937 rng(18);
  for (int m = 1; m <= 2; ++m) {
    const SuzukiCurve S(m);
    // h1 and h2 are tau-eigenfunctions.
    CHECK(S.tau(S.h1()) == S.scale(S.h1(), S.field().exp(2 * S.q0() + 1)));
    CHECK(S.tau(S.h2()) == S.scale(S.h2(), S.field().exp(2 * S.q0() + 2)));
    for (int it = 0; it < 50; ++it) {
      const RawFunc f = random_raw(S, rng, 4, -5, 5, S.q() - 1);
      CHECK(S.to_cone(S.tau(f)) == S.tau(S.to_cone(f)));
    }
  }
}

TEST_CASE("errors") {
  const SuzukiCurve C(1);
  CHECK_THROWS_AS(C.valuation_at_infinity(RawFunc{}), std::invalid_argument);
  CHECK_THROWS_AS(SuzukiCurve(0), std::invalid_argument);
}
