#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <utility>
#include <vector>

#include "suzuki/gf2m.hpp"

namespace suzuki {

struct CurveParams {
  int m = 0;
  int q0 = 0;  // 2^m
  int q = 0;   // 2^{2m+1}
  int g = 0;   // q0 (q - 1)
  Field field = Field::with_degree(1);
};

/// Function regular away from P_inf and the fiber y = 0: a Laurent
/// polynomial in y with z-degree below q. Keys are (y-exponent, z-exponent).
struct RawFunc {
  using Key = std::pair<int, int>;
  std::map<Key, FieldElem> terms;

  bool is_zero() const { return terms.empty(); }
  void add_term(int i, int j, FieldElem c);
  friend bool operator==(const RawFunc&, const RawFunc&) = default;
};

RawFunc operator+(const RawFunc& f, const RawFunc& g);

/// Exponents of y^a z^b h1^c h2^d. Inside a ConeFunc the exponents satisfy
/// b in {0,1} and 0 <= c, d < q0; the rewriting engine also accepts larger
/// nonnegative b, c, d.
struct Mono {
  int a = 0;
  int b = 0;
  int c = 0;
  int d = 0;
  friend auto operator<=>(const Mono&, const Mono&) = default;
};

struct ConeFunc {
  std::map<Mono, FieldElem> terms;

  bool is_zero() const { return terms.empty(); }
  void add_term(const Mono& mono, FieldElem c);
  friend bool operator==(const ConeFunc&, const ConeFunc&) = default;
};

ConeFunc operator+(const ConeFunc& f, const ConeFunc& g);

/// Series expansion at a place. Exponents are stored as numerators over a
/// common denominator; `precision` bounds the exponents that are known, so
/// every coefficient at an exponent below it is exact.
struct LocalSeries {
  static constexpr std::int64_t kExact = std::numeric_limits<std::int64_t>::max();

  std::int64_t denom = 1;
  std::map<std::int64_t, FieldElem> terms;
  std::int64_t precision = kExact;

  /// Smallest exponent numerator with a certified nonzero coefficient.
  /// Throws PrecisionError when no such term is visible.
  std::int64_t leading_numerator() const;
  FieldElem leading_coefficient() const;
  /// Leading exponent as an integer. Throws std::logic_error if it is fractional.
  long long valuation() const;
};

class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Leading coefficient and valuation of a function at a place.
struct Leading {
  long long valuation = 0;
  FieldElem coefficient;
};

/// The Suzuki curve z^q + z = y^{q0}(y^q + y) over F_q, q = 2^{2m+1}.
///
/// Holds memo tables (cone forms of z^b h1^c h2^d, raw forms of cone
/// monomials, Cartier images of the parity monomials); these are filled
/// lazily under a mutex, so a curve may be shared between threads.
class SuzukiCurve {
 public:
  explicit SuzukiCurve(int m);

  const CurveParams& params() const { return params_; }
  const Field& field() const { return params_.field; }
  int m() const { return params_.m; }
  int q0() const { return params_.q0; }
  int q() const { return params_.q; }
  int genus() const { return params_.g; }

  // Raw arithmetic.
  RawFunc monomial(int i, int j, FieldElem c) const;
  RawFunc y() const { return monomial(1, 0, field().one()); }
  RawFunc z() const { return monomial(0, 1, field().one()); }
  RawFunc h1() const;
  RawFunc h2() const;
  /// Applies z^q = z + y^{q+q0} + y^{q0+1} until every z-degree is below q.
  RawFunc z_reduce(RawFunc f) const;
  RawFunc mul(const RawFunc& f, const RawFunc& g) const;
  RawFunc scale(const RawFunc& f, FieldElem c) const;
  RawFunc pow(const RawFunc& f, unsigned e) const;
  /// df/dy = partial_y f + y^{q0} partial_z f.
  RawFunc derivative(const RawFunc& f) const;
  /// Cartier operator on f dy, returning the coefficient of dy.
  RawFunc cartier(const RawFunc& f) const;
  /// Action of tau: y -> zeta y, z -> zeta^{q0+1} z.
  RawFunc tau(const RawFunc& f) const;

  // Cone monomials.
  long long pole_order(const Mono& mono) const;
  bool in_cone_range(const Mono& mono) const;
  /// The unique cone monomial with the given pole order at P_inf.
  Mono cone_mono_for_pole(long long n) const;
  int tau_weight(const Mono& mono) const;

  /// Rewrites y^a z^b h1^c h2^d (any b, c, d >= 0) into cone form.
  ConeFunc normalize(const Mono& mono, FieldElem c) const;
  ConeFunc normalize(const std::map<Mono, FieldElem>& general) const;
  ConeFunc mul(const ConeFunc& f, const ConeFunc& g) const;
  ConeFunc scale(const ConeFunc& f, FieldElem c) const;
  /// Multiplies by y^k.
  ConeFunc shift(const ConeFunc& f, int k) const;
  /// Squares coefficients and doubles exponents, then normalizes.
  ConeFunc square(const ConeFunc& f) const;
  ConeFunc derivative(const ConeFunc& f) const;
  ConeFunc cartier(const ConeFunc& f) const;
  ConeFunc tau(const ConeFunc& f) const;

  ConeFunc to_cone(const RawFunc& f) const;
  RawFunc to_raw(const ConeFunc& f) const;
  RawFunc to_raw(const Mono& mono) const;
  /// Leading-term elimination against series expansions at P_inf. Slow; kept
  /// as an independent check of to_cone.
  ConeFunc to_cone_by_elimination(const RawFunc& f) const;

  // Local expansions.
  /// y = s^{-q}; z is the Artin-Schreier root sum_{i=1..order} c^{1/q^i},
  /// c = y^{q+q0} + y^{q0+1}. Exponents are over the denominator q^order.
  LocalSeries expand_at_infinity(const RawFunc& f, int order) const;
  /// Power series in u = y - y0 at the affine point (y0, z0), known mod u^order.
  LocalSeries expand_at_point(const RawFunc& f, FieldElem y0, FieldElem z0, int order) const;
  LocalSeries expand_at_origin_fiber(const RawFunc& f, FieldElem z0, int order) const {
    return expand_at_point(f, field().zero(), z0, order);
  }
  /// Artin-Schreier norm prod_{alpha in F_q} f(y, z + alpha), a Laurent
  /// polynomial in y (returned with all z-exponents zero).
  RawFunc norm(const RawFunc& f) const;
  /// f(y, z + alpha).
  RawFunc translate_z(const RawFunc& f, FieldElem alpha) const;
  /// Exact leading term at P_inf from the norm: v = -deg_y N(f), and the
  /// leading coefficient is the top coefficient of N(f) (the inertia group is
  /// wild, so every conjugate has the same leading coefficient).
  Leading leading_at_infinity_by_norm(const RawFunc& f) const;
  /// Series expansion with automatic doubling of the truncation order; falls
  /// back to the norm when no order up to max_order certifies a term.
  Leading leading_at_infinity(const RawFunc& f, int max_order = 0) const;
  /// Series route only; throws PrecisionError instead of falling back.
  Leading leading_at_infinity_by_series(const RawFunc& f, int max_order = 0) const;
  Leading leading_at_point(const RawFunc& f, FieldElem y0, FieldElem z0) const;
  long long valuation_at_infinity(const RawFunc& f) const { return leading_at_infinity(f).valuation; }
  long long valuation_at_point(const RawFunc& f, FieldElem y0, FieldElem z0) const {
    return leading_at_point(f, y0, z0).valuation;
  }

  /// Affine F_q points plus the point at infinity, by enumeration.
  long long count_points() const;

 private:
  const ConeFunc& base_cone(int b, int c, int d) const;
  const RawFunc& base_raw(int b, int c, int d) const;
  const ConeFunc& cartier_parity(int ea, int b, int ec, int ed) const;
  ConeFunc rewrite(const Mono& start) const;

  CurveParams params_;
  RawFunc h1_;
  RawFunc h2_;

  struct Memo {
    std::mutex mu;
    std::map<std::tuple<int, int, int>, ConeFunc> cone;
    std::map<std::tuple<int, int, int>, RawFunc> raw;
    std::map<std::tuple<int, int, int, int>, ConeFunc> cartier;
  };
  std::shared_ptr<Memo> memo_;
};

}  // namespace suzuki
