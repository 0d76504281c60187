#include "suzuki/gf2m.hpp"

#include <bit>
#include <stdexcept>
#include <string>

namespace suzuki {

std::uint32_t order_of_x(std::uint32_t modulus) {
  const int n = std::bit_width(modulus) - 1;
  if (n < 1 || (modulus & 1u) == 0) return 0;
  const std::uint32_t top = 1u << n;
  std::uint32_t v = 1;
  for (std::uint32_t k = 1; k < top; ++k) {
    v <<= 1;
    if (v & top) v ^= modulus;
    if (v == 1) return k;
  }
  return 0;
}

std::uint32_t smallest_primitive_modulus(int n) {
  if (n < 1 || n > 15) throw std::invalid_argument("degree out of range: " + std::to_string(n));
  const std::uint32_t want = (1u << n) - 1;
  for (std::uint32_t p = (1u << n) | 1u; p < (2u << n); p += 2) {
    if (order_of_x(p) == want) return p;
  }
  throw std::logic_error("no primitive polynomial found");
}

Field Field::make(int m) {
  if (m < 1 || m > 4) throw std::invalid_argument("m must lie in [1, 4], got " + std::to_string(m));
  return with_degree(2 * m + 1);
}

Field Field::with_degree(int n) { return Field(n, smallest_primitive_modulus(n)); }

Field::Field(int n, std::uint32_t modulus) : n_(n), modulus_(modulus), q_(1u << n) {
  auto t = std::make_shared<Tables>();
  const std::uint32_t units = q_ - 1;
  t->log.assign(q_, 0);
  t->exp.assign(2 * units, 0);
  std::uint32_t v = 1;
  for (std::uint32_t k = 0; k < units; ++k) {
    t->exp[k] = static_cast<std::uint16_t>(v);
    t->exp[k + units] = static_cast<std::uint16_t>(v);
    t->log[v] = static_cast<std::uint16_t>(k);
    v <<= 1;
    if (v & q_) v ^= modulus_;
  }
  tables_ = std::move(t);
  log_ = tables_->log.data();
  exp_ = tables_->exp.data();
}

FieldElem Field::from_bits(std::uint32_t bits) const {
  if (bits >= q_) throw std::out_of_range("field element bitmask out of range");
  return {static_cast<std::uint16_t>(bits)};
}

FieldElem Field::inv(FieldElem a) const {
  if (a.is_zero()) throw std::domain_error("inverse of zero");
  const std::uint32_t units = q_ - 1;
  return {exp_[(units - log_[a.bits]) % units]};
}

FieldElem Field::exp(long long e) const {
  const long long units = q_ - 1;
  long long r = e % units;
  if (r < 0) r += units;
  return {exp_[r]};
}

FieldElem Field::pow(FieldElem a, long long e) const {
  if (a.is_zero()) {
    if (e == 0) return one();
    if (e < 0) throw std::domain_error("negative power of zero");
    return {};
  }
  const long long units = q_ - 1;
  long long r = (static_cast<long long>(log_[a.bits]) * (e % units)) % units;
  return exp(r);
}

FieldElem Field::pow2(FieldElem a, int k) const {
  int r = k % n_;
  if (r < 0) r += n_;
  return pow(a, 1ll << r);
}

std::uint32_t Field::dlog(FieldElem a) const {
  if (a.is_zero()) throw std::domain_error("discrete logarithm of zero");
  return log_[a.bits];
}

}  // namespace suzuki
