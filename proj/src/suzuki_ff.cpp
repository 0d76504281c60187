#include "suzuki/suzuki_ff.hpp"

#include <algorithm>
#include <string>
#include <tuple>

namespace suzuki {

namespace {

void add_into(std::map<Mono, FieldElem>& acc, const Mono& mono, FieldElem c) {
  if (c.is_zero()) return;
  auto [it, inserted] = acc.try_emplace(mono, c);
  if (!inserted) {
    it->second.bits ^= c.bits;
    if (it->second.is_zero()) acc.erase(it);
  }
}

void add_into(std::map<RawFunc::Key, FieldElem>& acc, const RawFunc::Key& key, FieldElem c) {
  if (c.is_zero()) return;
  auto [it, inserted] = acc.try_emplace(key, c);
  if (!inserted) {
    it->second.bits ^= c.bits;
    if (it->second.is_zero()) acc.erase(it);
  }
}

void add_into(std::map<std::int64_t, FieldElem>& acc, std::int64_t e, FieldElem c) {
  if (c.is_zero()) return;
  auto [it, inserted] = acc.try_emplace(e, c);
  if (!inserted) {
    it->second.bits ^= c.bits;
    if (it->second.is_zero()) acc.erase(it);
  }
}

long long floor_mod(long long a, long long n) {
  long long r = a % n;
  return r < 0 ? r + n : r;
}

// ---- series helpers ----

constexpr std::int64_t kExact = LocalSeries::kExact;

std::int64_t sat_add(std::int64_t a, std::int64_t b) {
  if (a == kExact || b == kExact) return kExact;
  return a + b;
}

std::int64_t low(const LocalSeries& s) { return s.terms.empty() ? s.precision : s.terms.begin()->first; }

void cap(LocalSeries& s, std::int64_t bound) {
  if (bound < s.precision) s.precision = bound;
  s.terms.erase(s.terms.lower_bound(s.precision), s.terms.end());
}

LocalSeries s_mul(const Field& f, const LocalSeries& a, const LocalSeries& b) {
  LocalSeries out;
  out.denom = a.denom;
  out.precision = std::min(sat_add(low(a), b.precision), sat_add(low(b), a.precision));
  for (const auto& [ea, ca] : a.terms) {
    for (const auto& [eb, cb] : b.terms) {
      const std::int64_t e = ea + eb;
      if (e >= out.precision) break;
      add_into(out.terms, e, f.mul(ca, cb));
    }
  }
  return out;
}

LocalSeries s_add(const LocalSeries& a, const LocalSeries& b) {
  LocalSeries out = a;
  for (const auto& [e, c] : b.terms) add_into(out.terms, e, c);
  cap(out, b.precision);
  return out;
}

LocalSeries s_frob(const Field& f, const LocalSeries& a, int k) {
  LocalSeries out;
  out.denom = a.denom;
  const std::int64_t scale = std::int64_t{1} << k;
  out.precision = a.precision == kExact ? kExact : a.precision * scale;
  for (const auto& [e, c] : a.terms) out.terms.emplace(e * scale, f.pow2(c, k));
  return out;
}

LocalSeries s_pow(const Field& f, const LocalSeries& base, unsigned e, std::int64_t bound) {
  LocalSeries result;
  result.denom = base.denom;
  result.terms.emplace(0, f.one());
  LocalSeries p = base;
  while (e) {
    if (e & 1u) {
      result = s_mul(f, result, p);
      cap(result, bound);
    }
    e >>= 1;
    if (e) {
      p = s_frob(f, p, 1);
      cap(p, bound);
    }
  }
  return result;
}

}  // namespace

void RawFunc::add_term(int i, int j, FieldElem c) { add_into(terms, {i, j}, c); }

RawFunc operator+(const RawFunc& f, const RawFunc& g) {
  RawFunc out = f;
  for (const auto& [k, c] : g.terms) add_into(out.terms, k, c);
  return out;
}

void ConeFunc::add_term(const Mono& mono, FieldElem c) { add_into(terms, mono, c); }

ConeFunc operator+(const ConeFunc& f, const ConeFunc& g) {
  ConeFunc out = f;
  for (const auto& [k, c] : g.terms) add_into(out.terms, k, c);
  return out;
}

std::int64_t LocalSeries::leading_numerator() const {
  if (terms.empty()) throw PrecisionError("no certified term below the truncation; increase order");
  return terms.begin()->first;
}

FieldElem LocalSeries::leading_coefficient() const {
  if (terms.empty()) throw PrecisionError("no certified term below the truncation; increase order");
  return terms.begin()->second;
}

long long LocalSeries::valuation() const {
  const std::int64_t e = leading_numerator();
  if (e % denom != 0) throw std::logic_error("leading exponent is not an integer");
  return e / denom;
}

SuzukiCurve::SuzukiCurve(int m) : memo_(std::make_shared<Memo>()) {
  params_.field = Field::make(m);
  params_.m = m;
  params_.q0 = 1 << m;
  params_.q = 1 << (2 * m + 1);
  params_.g = params_.q0 * (params_.q - 1);

  const FieldElem one = field().one();
  const int q0 = params_.q0;
  h1_.add_term(0, 2 * q0, one);
  h1_.add_term(2 * q0 + 1, 0, one);
  h1_ = z_reduce(h1_);
  h2_ = monomial(1, 2 * q0, one) + pow(h1_, 2 * q0);
}

RawFunc SuzukiCurve::h1() const { return h1_; }
RawFunc SuzukiCurve::h2() const { return h2_; }

RawFunc SuzukiCurve::monomial(int i, int j, FieldElem c) const {
  RawFunc f;
  f.add_term(i, j, c);
  return z_reduce(std::move(f));
}

RawFunc SuzukiCurve::z_reduce(RawFunc f) const {
  const int q = params_.q;
  const int q0 = params_.q0;
  while (true) {
    std::vector<std::pair<RawFunc::Key, FieldElem>> high;
    for (auto it = f.terms.begin(); it != f.terms.end();) {
      if (it->first.second >= q) {
        high.emplace_back(it->first, it->second);
        it = f.terms.erase(it);
      } else {
        ++it;
      }
    }
    if (high.empty()) return f;
    for (const auto& [k, c] : high) {
      const auto [i, j] = k;
      f.add_term(i, j - q + 1, c);
      f.add_term(i + q + q0, j - q, c);
      f.add_term(i + q0 + 1, j - q, c);
    }
  }
}

RawFunc SuzukiCurve::mul(const RawFunc& f, const RawFunc& g) const {
  if (f.is_zero() || g.is_zero()) return {};
  const int q = params_.q;
  const int q0 = params_.q0;
  int fj = 0, gj = 0;
  for (const auto& [k, c] : f.terms) fj = std::max(fj, k.second);
  for (const auto& [k, c] : g.terms) gj = std::max(gj, k.second);
  if (fj >= q || gj >= q) {
    // Unreduced inputs: fall back to the sparse product.
    RawFunc out;
    for (const auto& [kf, cf] : f.terms)
      for (const auto& [kg, cg] : g.terms)
        out.add_term(kf.first + kg.first, kf.second + kg.second, field().mul(cf, cg));
    return z_reduce(std::move(out));
  }
  // Dense accumulation: rows are y-exponents, columns z-exponents < 2q - 1.
  const int ylo = f.terms.begin()->first.first + g.terms.begin()->first.first;
  const int yhi = f.terms.rbegin()->first.first + g.terms.rbegin()->first.first + q + q0;
  const std::size_t width = 2 * static_cast<std::size_t>(q) - 1;
  std::vector<std::uint16_t> buf(static_cast<std::size_t>(yhi - ylo + 1) * width, 0);
  const std::uint16_t* lg = field().log_table();
  const std::uint16_t* ex = field().exp_table();
  for (const auto& [kf, cf] : f.terms) {
    const std::uint32_t lf = lg[cf.bits];
    for (const auto& [kg, cg] : g.terms) {
      const std::size_t at = static_cast<std::size_t>(kf.first + kg.first - ylo) * width + kf.second + kg.second;
      buf[at] ^= ex[lf + lg[cg.bits]];
    }
  }
  // One pass suffices: z^j with q <= j <= 2q-2 maps to z-degrees below q.
  const int rows = yhi - ylo + 1;
  for (int r = 0; r < rows; ++r) {
    std::uint16_t* row = buf.data() + static_cast<std::size_t>(r) * width;
    for (int j = q; j < static_cast<int>(width); ++j) {
      const std::uint16_t c = row[j];
      if (c == 0) continue;
      row[j] = 0;
      row[j - q + 1] ^= c;
      buf[static_cast<std::size_t>(r + q + q0) * width + (j - q)] ^= c;
      buf[static_cast<std::size_t>(r + q0 + 1) * width + (j - q)] ^= c;
    }
  }
  RawFunc out;
  auto hint = out.terms.end();
  for (int r = 0; r < rows; ++r) {
    const std::uint16_t* row = buf.data() + static_cast<std::size_t>(r) * width;
    for (int j = 0; j < q; ++j)
      if (row[j] != 0) hint = out.terms.emplace_hint(hint, RawFunc::Key{r + ylo, j}, FieldElem{row[j]});
  }
  return out;
}

RawFunc SuzukiCurve::scale(const RawFunc& f, FieldElem c) const {
  if (c.is_zero()) return {};
  RawFunc out = f;
  for (auto& [k, v] : out.terms) v = field().mul(v, c);
  return out;
}

RawFunc SuzukiCurve::pow(const RawFunc& f, unsigned e) const {
  RawFunc result = monomial(0, 0, field().one());
  RawFunc p = f;
  while (e) {
    if (e & 1u) result = mul(result, p);
    e >>= 1;
    if (e) {
      RawFunc sq;
      for (const auto& [k, c] : p.terms) sq.add_term(2 * k.first, 2 * k.second, field().square(c));
      p = z_reduce(std::move(sq));
    }
  }
  return result;
}

RawFunc SuzukiCurve::derivative(const RawFunc& f) const {
  RawFunc out;
  for (const auto& [k, c] : f.terms) {
    const auto [i, j] = k;
    if (i & 1) out.add_term(i - 1, j, c);
    if (j & 1) out.add_term(i + params_.q0, j - 1, c);
  }
  return out;
}

RawFunc SuzukiCurve::cartier(const RawFunc& f) const {
  const int q = params_.q;
  const int q0 = params_.q0;
  RawFunc even;
  for (const auto& [k, c] : f.terms) {
    const auto [i, j] = k;
    if (j & 1) {
      even.add_term(i, j - 1 + q, c);
      even.add_term(i + q + q0, j - 1, c);
      even.add_term(i + q0 + 1, j - 1, c);
    } else {
      even.add_term(i, j, c);
    }
  }
  RawFunc out;
  for (const auto& [k, c] : even.terms) {
    const auto [i, j] = k;
    if ((i & 1) == 0) continue;
    out.add_term(i >> 1, j / 2, field().sqrt(c));
  }
  return z_reduce(std::move(out));
}

RawFunc SuzukiCurve::tau(const RawFunc& f) const {
  RawFunc out;
  for (const auto& [k, c] : f.terms)
    out.add_term(k.first, k.second,
                 field().mul(c, field().exp(static_cast<long long>(k.first) + (params_.q0 + 1LL) * k.second)));
  return out;
}

long long SuzukiCurve::pole_order(const Mono& mono) const {
  const long long q = params_.q;
  const long long q0 = params_.q0;
  return mono.a * q + mono.b * (q + q0) + mono.c * (q + 2 * q0) + mono.d * (q + 2 * q0 + 1);
}

bool SuzukiCurve::in_cone_range(const Mono& mono) const {
  return (mono.b == 0 || mono.b == 1) && mono.c >= 0 && mono.c < params_.q0 && mono.d >= 0 && mono.d < params_.q0;
}

Mono SuzukiCurve::cone_mono_for_pole(long long n) const {
  const long long q = params_.q;
  const long long q0 = params_.q0;
  Mono mono;
  mono.d = static_cast<int>(floor_mod(n, q0));
  const long long r = (n - mono.d * (q + 2 * q0 + 1)) / q0;
  const long long bc = floor_mod(r, 2 * q0);
  mono.b = static_cast<int>(bc & 1);
  mono.c = static_cast<int>(bc >> 1);
  const long long rest = r - mono.b * (2 * q0 + 1) - mono.c * (2 * q0 + 2);
  mono.a = static_cast<int>(rest / (2 * q0));
  return mono;
}

int SuzukiCurve::tau_weight(const Mono& mono) const {
  const long long q0 = params_.q0;
  const long long w = mono.a + (q0 + 1) * mono.b + (2 * q0 + 1) * mono.c + (2 * q0 + 2) * mono.d;
  return static_cast<int>(floor_mod(w, params_.q - 1));
}

ConeFunc SuzukiCurve::rewrite(const Mono& start) const {
  // Worklist ordered by decreasing pole order, then increasing a. Each rule
  // below is an identity of functions whose other terms have strictly lower
  // priority, so a key is final once it reaches the front:
  //   z^2 = y h1 + h2,  h1^{q0} = z + y^{q0+1},  h2^{q0} = h1 + y^{q0} z.
  using Key = std::tuple<long long, int, int, int, int>;
  const int q0 = params_.q0;
  std::map<Key, FieldElem> work;
  auto push = [&](const Mono& mono, FieldElem c) {
    Key key{-pole_order(mono), mono.a, mono.b, mono.c, mono.d};
    auto [it, inserted] = work.try_emplace(key, c);
    if (!inserted) {
      it->second.bits ^= c.bits;
      if (it->second.is_zero()) work.erase(it);
    }
  };
  push(start, field().one());
  ConeFunc out;
  const std::size_t guard = 1u << 26;
  std::size_t steps = 0;
  while (!work.empty()) {
    if (++steps > guard) throw std::logic_error("cone rewriting did not terminate");
    auto it = work.begin();
    const auto [np, a, b, c, d] = it->first;
    const FieldElem coef = it->second;
    work.erase(it);
    const Mono mono{a, b, c, d};
    if (in_cone_range(mono)) {
      out.add_term(mono, coef);
      continue;
    }
    if (b >= 2) {
      const int k = b / 2;
      for (int i = k;; i = (i - 1) & k) {
        push({a + i, b % 2, c + i, d + k - i}, coef);
        if (i == 0) break;
      }
    } else if (c >= q0) {
      const int k = c / q0;
      for (int i = k;; i = (i - 1) & k) {
        push({a + (q0 + 1) * (k - i), b + i, c % q0, d}, coef);
        if (i == 0) break;
      }
    } else {
      const int k = d / q0;
      for (int i = k;; i = (i - 1) & k) {
        push({a + q0 * (k - i), b + k - i, c + i, d % q0}, coef);
        if (i == 0) break;
      }
    }
  }
  return out;
}

const ConeFunc& SuzukiCurve::base_cone(int b, int c, int d) const {
  const auto key = std::make_tuple(b, c, d);
  {
    std::lock_guard lock(memo_->mu);
    auto it = memo_->cone.find(key);
    if (it != memo_->cone.end()) return it->second;
  }
  ConeFunc value = rewrite({0, b, c, d});
  std::lock_guard lock(memo_->mu);
  return memo_->cone.try_emplace(key, std::move(value)).first->second;
}

ConeFunc SuzukiCurve::normalize(const Mono& mono, FieldElem c) const {
  std::map<Mono, FieldElem> one;
  add_into(one, mono, c);
  return normalize(one);
}

ConeFunc SuzukiCurve::normalize(const std::map<Mono, FieldElem>& general) const {
  ConeFunc out;
  const Field& F = field();
  for (const auto& [mono, c] : general) {
    if (mono.b < 0 || mono.c < 0 || mono.d < 0) throw std::invalid_argument("negative z, h1 or h2 exponent");
    if (in_cone_range(mono)) {
      out.add_term(mono, c);
      continue;
    }
    for (const auto& [bm, bc] : base_cone(mono.b, mono.c, mono.d).terms)
      out.add_term({bm.a + mono.a, bm.b, bm.c, bm.d}, F.mul(c, bc));
  }
  return out;
}

ConeFunc SuzukiCurve::mul(const ConeFunc& f, const ConeFunc& g) const {
  std::map<Mono, FieldElem> general;
  const Field& F = field();
  for (const auto& [mf, cf] : f.terms)
    for (const auto& [mg, cg] : g.terms)
      add_into(general, {mf.a + mg.a, mf.b + mg.b, mf.c + mg.c, mf.d + mg.d}, F.mul(cf, cg));
  return normalize(general);
}

ConeFunc SuzukiCurve::scale(const ConeFunc& f, FieldElem c) const {
  if (c.is_zero()) return {};
  ConeFunc out = f;
  for (auto& [k, v] : out.terms) v = field().mul(v, c);
  return out;
}

ConeFunc SuzukiCurve::shift(const ConeFunc& f, int k) const {
  ConeFunc out;
  for (const auto& [mono, c] : f.terms) out.terms.emplace(Mono{mono.a + k, mono.b, mono.c, mono.d}, c);
  return out;
}

ConeFunc SuzukiCurve::square(const ConeFunc& f) const {
  std::map<Mono, FieldElem> general;
  for (const auto& [mono, c] : f.terms)
    add_into(general, {2 * mono.a, 2 * mono.b, 2 * mono.c, 2 * mono.d}, field().square(c));
  return normalize(general);
}

ConeFunc SuzukiCurve::derivative(const ConeFunc& f) const {
  const int q0 = params_.q0;
  std::map<Mono, FieldElem> general;
  for (const auto& [mono, c] : f.terms) {
    const auto [a, b, cc, d] = mono;
    if (a & 1) add_into(general, {a - 1, b, cc, d}, c);
    if (b & 1) add_into(general, {a + q0, b - 1, cc, d}, c);
    if (cc & 1) add_into(general, {a + 2 * q0, b, cc - 1, d}, c);
    if (d & 1) {
      add_into(general, {a, b, cc + 1, d - 1}, c);
      add_into(general, {a + 2 * q0 + 1, b, cc, d - 1}, c);
    }
  }
  return normalize(general);
}

const ConeFunc& SuzukiCurve::cartier_parity(int ea, int b, int ec, int ed) const {
  const auto key = std::make_tuple(ea, b, ec, ed);
  {
    std::lock_guard lock(memo_->mu);
    auto it = memo_->cartier.find(key);
    if (it != memo_->cartier.end()) return it->second;
  }
  ConeFunc value = to_cone(cartier(to_raw(Mono{ea, b, ec, ed})));
  std::lock_guard lock(memo_->mu);
  return memo_->cartier.try_emplace(key, std::move(value)).first->second;
}

ConeFunc SuzukiCurve::cartier(const ConeFunc& f) const {
  // C(g^2 w) = g C(w): peel the square part off each monomial and look up
  // the image of the remaining parity monomial.
  std::map<Mono, FieldElem> general;
  const Field& F = field();
  for (const auto& [mono, c] : f.terms) {
    const FieldElem root = F.sqrt(c);
    const ConeFunc& base = cartier_parity(mono.a & 1, mono.b, mono.c & 1, mono.d & 1);
    for (const auto& [bm, bc] : base.terms)
      add_into(general, {bm.a + (mono.a >> 1), bm.b, bm.c + (mono.c >> 1), bm.d + (mono.d >> 1)}, F.mul(root, bc));
  }
  return normalize(general);
}

ConeFunc SuzukiCurve::tau(const ConeFunc& f) const {
  ConeFunc out;
  for (const auto& [mono, c] : f.terms) out.terms.emplace(mono, field().mul(c, field().exp(tau_weight(mono))));
  return out;
}

ConeFunc SuzukiCurve::to_cone(const RawFunc& f) const {
  std::map<Mono, FieldElem> general;
  for (const auto& [k, c] : f.terms) add_into(general, {k.first, k.second, 0, 0}, c);
  return normalize(general);
}

const RawFunc& SuzukiCurve::base_raw(int b, int c, int d) const {
  const auto key = std::make_tuple(b, c, d);
  {
    std::lock_guard lock(memo_->mu);
    auto it = memo_->raw.find(key);
    if (it != memo_->raw.end()) return it->second;
  }
  RawFunc value = mul(mul(pow(z(), static_cast<unsigned>(b)), pow(h1_, static_cast<unsigned>(c))),
                      pow(h2_, static_cast<unsigned>(d)));
  std::lock_guard lock(memo_->mu);
  return memo_->raw.try_emplace(key, std::move(value)).first->second;
}

RawFunc SuzukiCurve::to_raw(const Mono& mono) const {
  if (mono.b < 0 || mono.c < 0 || mono.d < 0) throw std::invalid_argument("negative z, h1 or h2 exponent");
  RawFunc out;
  for (const auto& [k, c] : base_raw(mono.b, mono.c, mono.d).terms) out.terms.emplace(RawFunc::Key{k.first + mono.a, k.second}, c);
  return out;
}

RawFunc SuzukiCurve::to_raw(const ConeFunc& f) const {
  RawFunc out;
  for (const auto& [mono, c] : f.terms) out = out + scale(to_raw(mono), c);
  return out;
}

ConeFunc SuzukiCurve::to_cone_by_elimination(const RawFunc& f) const {
  ConeFunc out;
  RawFunc rest = f;
  const std::size_t guard = 4 * (f.terms.size() + 1) * static_cast<std::size_t>(params_.q) + 64;
  for (std::size_t step = 0; !rest.is_zero(); ++step) {
    if (step > guard) throw std::logic_error("leading-term elimination did not terminate");
    const Leading lf = leading_at_infinity(rest);
    const Mono mono = cone_mono_for_pole(-lf.valuation);
    const RawFunc raw = to_raw(mono);
    const Leading lm = leading_at_infinity(raw);
    if (lm.valuation != lf.valuation) throw std::logic_error("cone monomial has unexpected pole order");
    const FieldElem c = field().div(lf.coefficient, lm.coefficient);
    out.add_term(mono, c);
    rest = rest + scale(raw, c);
  }
  return out;
}

LocalSeries SuzukiCurve::expand_at_infinity(const RawFunc& f, int order) const {
  if (order < 1) throw std::invalid_argument("order must be positive");
  const Field& F = field();
  const std::int64_t q = params_.q;
  const std::int64_t q0 = params_.q0;
  std::int64_t denom = 1;
  for (int i = 0; i < order; ++i) {
    if (denom > (std::int64_t{1} << 44) / q) throw std::invalid_argument("expansion order too large");
    denom *= q;
  }

  LocalSeries z;
  z.denom = denom;
  std::int64_t scale = q;  // q^{order+1-i} for i = order
  for (int i = order; i >= 1; --i) {
    z.terms.emplace(-(q + q0) * scale, F.one());
    z.terms.emplace(-(q0 + 1) * scale, F.one());
    scale *= q;
  }
  z.precision = -(q + q0);

  std::vector<LocalSeries> zpow2{z};
  for (int k = 1; k < F.degree(); ++k) zpow2.push_back(s_frob(F, zpow2.back(), 1));

  std::map<int, LocalSeries> by_j;
  for (const auto& [k, c] : f.terms) {
    auto [it, inserted] = by_j.try_emplace(k.second);
    it->second.denom = denom;
    add_into(it->second.terms, -q * k.first * denom, c);
  }

  LocalSeries out;
  out.denom = denom;
  out.precision = kExact;
  for (const auto& [j, poly] : by_j) {
    LocalSeries zj;
    zj.denom = denom;
    zj.terms.emplace(0, F.one());
    for (int k = 0; (j >> k) != 0; ++k)
      if ((j >> k) & 1) zj = s_mul(F, zj, zpow2[k]);
    out = s_add(out, s_mul(F, poly, zj));
  }
  return out;
}

LocalSeries SuzukiCurve::expand_at_point(const RawFunc& f, FieldElem y0, FieldElem z0, int order) const {
  if (order < 1) throw std::invalid_argument("order must be positive");
  const Field& F = field();
  const std::int64_t n = order;
  const int q = params_.q;
  const int q0 = params_.q0;
  if (!F.add(F.add(F.pow(z0, q), z0), F.mul(F.pow(y0, q0), F.add(F.pow(y0, q), y0))).is_zero())
    throw std::invalid_argument("point is not on the curve");

  LocalSeries y;
  if (!y0.is_zero()) y.terms.emplace(0, y0);
  y.terms.emplace(1, F.one());
  cap(y, n);

  LocalSeries yinv;
  if (y0.is_zero()) {
    yinv.terms.emplace(-1, F.one());
  } else {
    const FieldElem r = F.inv(y0);
    FieldElem c = r;
    for (std::int64_t k = 0; k < n; ++k) {
      yinv.terms.emplace(k, c);
      c = F.mul(c, r);
    }
  }
  cap(yinv, n);

  // C(u) = c(y0 + u) with c(Y) = Y^{q+q0} + Y^{q0+1}; c(y0) = 0 on F_q.
  std::map<std::int64_t, FieldElem> cu;
  for (int e : {q + q0, q0 + 1}) {
    for (int k = e;; k = (k - 1) & e) {
      add_into(cu, k, F.pow(y0, e - k));
      if (k == 0) break;
    }
  }
  if (cu.count(0)) throw std::logic_error("Artin-Schreier constant term does not vanish");
  LocalSeries z;
  if (!z0.is_zero()) z.terms.emplace(0, z0);
  const std::int64_t vc = cu.begin()->first;
  for (std::int64_t qi = 1; qi * vc < n; qi *= q)
    for (const auto& [e, c] : cu) add_into(z.terms, e * qi, c);
  z.precision = n;
  cap(z, n);

  std::map<int, LocalSeries> by_j;
  for (const auto& [k, c] : f.terms) {
    const auto [i, j] = k;
    LocalSeries yi = i >= 0 ? s_pow(F, y, static_cast<unsigned>(i), n) : s_pow(F, yinv, static_cast<unsigned>(-i), n);
    for (auto& [e, v] : yi.terms) v = F.mul(v, c);
    auto [it, inserted] = by_j.try_emplace(j);
    if (inserted) it->second.precision = kExact;
    it->second = s_add(it->second, yi);
  }

  LocalSeries out;
  out.precision = kExact;
  for (const auto& [j, poly] : by_j) {
    LocalSeries prod = s_mul(F, poly, s_pow(F, z, static_cast<unsigned>(j), n));
    cap(prod, n);
    out = s_add(out, prod);
  }
  return out;
}

RawFunc SuzukiCurve::translate_z(const RawFunc& f, FieldElem alpha) const {
  const Field& F = field();
  RawFunc out;
  for (const auto& [key, c] : f.terms) {
    const auto [i, j] = key;
    for (int k = j;; k = (k - 1) & j) {
      out.add_term(i, k, F.mul(c, F.pow(alpha, j - k)));
      if (k == 0) break;
    }
  }
  return out;
}

RawFunc SuzukiCurve::norm(const RawFunc& f) const {
  // Multiply over the translation group one F_2-basis vector at a time:
  // after step k, g is the norm down the subgroup spanned by the first k
  // basis vectors.
  RawFunc g = f;
  for (int k = 0; k < field().degree(); ++k) g = mul(g, translate_z(g, field().from_bits(1u << k)));
  for (const auto& [key, c] : g.terms)
    if (key.second != 0) throw std::logic_error("norm is not a Laurent polynomial in y");
  return g;
}

Leading SuzukiCurve::leading_at_infinity_by_norm(const RawFunc& f) const {
  if (f.is_zero()) throw std::invalid_argument("valuation of the zero function");
  const RawFunc n = norm(f);
  const auto& top = *n.terms.rbegin();
  return {-static_cast<long long>(top.first.first), top.second};
}

Leading SuzukiCurve::leading_at_infinity(const RawFunc& f, int max_order) const {
  try {
    return leading_at_infinity_by_series(f, max_order);
  } catch (const PrecisionError&) {
    return leading_at_infinity_by_norm(f);
  }
}

Leading SuzukiCurve::leading_at_infinity_by_series(const RawFunc& f, int max_order) const {
  if (f.is_zero()) throw std::invalid_argument("valuation of the zero function");
  if (max_order <= 0) max_order = params_.m == 1 ? 8 : 4;
  for (int order = 1; order <= max_order; order *= 2) {
    try {
      const LocalSeries s = expand_at_infinity(f, order);
      return {s.valuation(), s.leading_coefficient()};
    } catch (const PrecisionError&) {
    }
  }
  throw PrecisionError("valuation at infinity not certified up to order " + std::to_string(max_order) +
                       "; increase order");
}

Leading SuzukiCurve::leading_at_point(const RawFunc& f, FieldElem y0, FieldElem z0) const {
  if (f.is_zero()) throw std::invalid_argument("valuation of the zero function");
  for (int order = 16; order <= (1 << 16); order *= 2) {
    try {
      const LocalSeries s = expand_at_point(f, y0, z0, order);
      return {s.valuation(), s.leading_coefficient()};
    } catch (const PrecisionError&) {
    }
  }
  throw PrecisionError("valuation at affine point not certified; increase order");
}

long long SuzukiCurve::count_points() const {
  const Field& F = field();
  long long count = 1;
  const int q = params_.q;
  const int q0 = params_.q0;
  for (std::uint32_t yb = 0; yb < F.order(); ++yb) {
    const FieldElem yv{static_cast<std::uint16_t>(yb)};
    const FieldElem rhs = F.mul(F.pow(yv, q0), F.add(F.pow(yv, q), yv));
    for (std::uint32_t zb = 0; zb < F.order(); ++zb) {
      const FieldElem zv{static_cast<std::uint16_t>(zb)};
      if (F.add(F.pow(zv, q), zv) == rhs) ++count;
    }
  }
  return count;
}

}  // namespace suzuki
