#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <vector>

namespace suzuki {

/// Element of F_{2^n}: coefficient bitmask of the polynomial representative.
struct FieldElem {
  std::uint16_t bits = 0;

  constexpr bool is_zero() const { return bits == 0; }
  friend constexpr auto operator<=>(FieldElem, FieldElem) = default;
};

/// The binary field F_{2^n}, n = 2m+1, with its distinguished primitive
/// element zeta (the residue of x modulo the defining polynomial).
///
/// Copies share one immutable set of log/antilog tables, so a Field is cheap
/// to pass by value and safe to use from several threads.
class Field {
 public:
  /// F_{2^{2m+1}} with the lexicographically smallest primitive modulus.
  /// Throws std::invalid_argument unless 1 <= m <= 4.
  static Field make(int m);

  /// F_{2^n} for an arbitrary degree 1 <= n <= 15 (used for F_2 and tests).
  static Field with_degree(int n);

  int degree() const { return n_; }
  std::uint32_t modulus() const { return modulus_; }
  std::uint32_t order() const { return q_; }
  std::uint32_t unit_order() const { return q_ - 1; }

  FieldElem zero() const { return {}; }
  FieldElem one() const { return {1}; }
  FieldElem zeta() const { return q_ == 2 ? one() : FieldElem{2}; }
  /// Throws std::out_of_range when bits does not fit below the modulus.
  FieldElem from_bits(std::uint32_t bits) const;

  FieldElem add(FieldElem a, FieldElem b) const {
    return {static_cast<std::uint16_t>(a.bits ^ b.bits)};
  }
  FieldElem mul(FieldElem a, FieldElem b) const {
    if (a.is_zero() || b.is_zero()) return {};
    return {exp_[log_[a.bits] + log_[b.bits]]};
  }
  FieldElem square(FieldElem a) const { return mul(a, a); }
  /// Throws std::domain_error for zero.
  FieldElem inv(FieldElem a) const;
  FieldElem div(FieldElem a, FieldElem b) const { return mul(a, inv(b)); }
  FieldElem pow(FieldElem a, long long e) const;
  /// a^{2^k}; negative k applies the inverse Frobenius.
  FieldElem pow2(FieldElem a, int k) const;
  FieldElem sqrt(FieldElem a) const { return pow2(a, n_ - 1); }
  /// zeta^e for any integer e.
  FieldElem exp(long long e) const;
  /// Discrete logarithm to base zeta, in [0, q-2]. Throws std::domain_error for zero.
  std::uint32_t dlog(FieldElem a) const;

  /// Raw tables for the hot loops of the linear algebra.
  const std::uint16_t* log_table() const { return log_; }
  const std::uint16_t* exp_table() const { return exp_; }

  friend bool operator==(const Field& a, const Field& b) {
    return a.n_ == b.n_ && a.modulus_ == b.modulus_;
  }

 private:
  struct Tables {
    std::vector<std::uint16_t> log;
    std::vector<std::uint16_t> exp;  // length 2(q-1), so log sums need no reduction
  };

  Field(int n, std::uint32_t modulus);

  int n_ = 0;
  std::uint32_t modulus_ = 0;
  std::uint32_t q_ = 0;
  std::shared_ptr<const Tables> tables_;
  const std::uint16_t* log_ = nullptr;
  const std::uint16_t* exp_ = nullptr;
};

/// Multiplicative order of x modulo the polynomial `modulus` over F_2, or 0
/// when x is not a unit of finite order below 2^deg.
std::uint32_t order_of_x(std::uint32_t modulus);

/// Smallest (as an integer bitmask) primitive polynomial of degree n over F_2.
std::uint32_t smallest_primitive_modulus(int n);

}  // namespace suzuki
