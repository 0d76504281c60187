#include "suzuki/cohomology.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace suzuki {

namespace {

std::string mono_factors(const Mono& t) {
  std::string out;
  auto factor = [&out](const char* name, int e) {
    if (e == 0) return;
    if (!out.empty()) out += '*';
    out += name;
    if (e != 1) out += '^' + std::to_string(e);
  };
  factor("y", t.a);
  factor("z", t.b);
  factor("h1", t.c);
  factor("h2", t.d);
  return out.empty() ? "1" : out;
}

}  // namespace

std::string to_string(const Mono& t) {
  std::ostringstream os;
  os << '(' << t.a << ',' << t.b << ',' << t.c << ',' << t.d << ')';
  return os.str();
}

std::string to_string(const ConeFunc& f) {
  if (f.is_zero()) return "0";
  std::string out;
  for (const auto& [mono, c] : f.terms) {
    if (!out.empty()) out += " + ";
    if (c.bits != 1) out += '[' + std::to_string(c.bits) + "]*";
    out += mono_factors(mono);
  }
  return out;
}

DeRham::DeRham(const SuzukiCurve& curve) : curve_(curve) {
  const int q0 = curve.q0();
  const long long bound = 2LL * curve.genus() - 2;
  for (int a = 0; static_cast<long long>(a) * curve.q() <= bound; ++a)
    for (int b = 0; b <= 1; ++b)
      for (int c = 0; c < q0; ++c)
        for (int d = 0; d < q0; ++d) {
          const Mono t{a, b, c, d};
          if (curve.pole_order(t) <= bound) index_.push_back(t);
        }
  if (index_.size() != static_cast<std::size_t>(curve.genus()))
    throw std::logic_error("index set size differs from the genus");
  for (std::size_t k = 0; k < index_.size(); ++k) position_.emplace(index_[k], k);
  psi_split_.resize(index_.size());
}

std::optional<std::size_t> DeRham::index_of(const Mono& t) const {
  auto it = position_.find(t);
  if (it == position_.end()) return std::nullopt;
  return it->second;
}

Mono DeRham::h1O_basis_mono(const Mono& t) const {
  if (!index_of(t)) throw std::invalid_argument("tuple " + to_string(t) + " is not in the index set");
  const int q0 = curve_.q0();
  return Mono{-(t.a + 1), 1 - t.b, q0 - 1 - t.c, q0 - 1 - t.d};
}

ConeFunc DeRham::h1O_basis_fn(const Mono& t) const {
  ConeFunc f;
  f.add_term(h1O_basis_mono(t), field().one());
  return f;
}

std::string DeRham::label(std::size_t k) const {
  const std::size_t g = genus();
  if (k < g) return "psi(f_" + to_string(index_[k]) + ")";
  return "lambda(g_" + to_string(index_[k - g]) + ")";
}

DifferentialSplit DeRham::split_differential(const ConeFunc& mu) const {
  DifferentialSplit s;
  for (const auto& [mono, c] : mu.terms) {
    if (regular_on_u_inf(mono))
      s.inf.add_term(mono, c);
    else if (differential_regular_on_u0(mono))
      s.zero.add_term(mono, c);
    else
      throw std::domain_error("differential monomial " + to_string(mono) + " is regular on neither open set");
  }
  return s;
}

Vector DeRham::global_coords(const ConeFunc& mu) const {
  Vector out(genus(), field().zero());
  for (const auto& [mono, c] : mu.terms) {
    auto k = index_of(mono);
    if (!k) throw std::logic_error("differential " + to_string(mono) + " dy is not holomorphic");
    out[*k] = c;
  }
  return out;
}

const DifferentialSplit& DeRham::psi_split(std::size_t k) const {
  auto& slot = psi_split_[k];
  if (!slot) slot = split_differential(curve_.derivative(h1O_basis_fn(index_[k])));
  return *slot;
}

Vector DeRham::reduce_cocycle(const ConeFunc& f, const ConeFunc& w_inf, const ConeFunc& w_0) const {
  if (curve_.derivative(f) != w_inf + w_0) throw std::invalid_argument("cocycle condition df = w_inf - w_0 fails");
  for (const auto& [mono, c] : w_inf.terms)
    if (!regular_on_u_inf(mono)) throw std::invalid_argument("w_inf has a pole on U_inf");
  for (const auto& [mono, c] : w_0.terms)
    if (!differential_regular_on_u0(mono)) throw std::invalid_argument("w_0 has a pole on U_0");

  const Field& fld = field();
  const std::size_t g = genus();
  const int q0 = curve_.q0();
  Vector out(dim(), fld.zero());
  ConeFunc k_inf;
  ConeFunc k_0;
  ConeFunc rest_inf = w_inf;
  ConeFunc rest_0 = w_0;
  for (const auto& [mono, c] : f.terms) {
    if (regular_on_u_inf(mono)) {
      k_inf.add_term(mono, c);
    } else if (regular_on_u0(mono)) {
      k_0.add_term(mono, c);
    } else {
      const Mono t{-mono.a - 1, 1 - mono.b, q0 - 1 - mono.c, q0 - 1 - mono.d};
      auto k = index_of(t);
      if (!k) throw std::logic_error("function monomial " + to_string(mono) + " is not a basis function");
      out[*k] = c;
      const auto& s = psi_split(*k);
      rest_inf = rest_inf + curve_.scale(s.inf, c);
      rest_0 = rest_0 + curve_.scale(s.zero, c);
    }
  }
  rest_inf = rest_inf + curve_.derivative(k_inf);
  rest_0 = rest_0 + curve_.derivative(k_0);
  if (rest_inf != rest_0) throw std::logic_error("leftover pair is not a global differential");
  const Vector lam = global_coords(rest_inf);
  std::copy(lam.begin(), lam.end(), out.begin() + static_cast<std::ptrdiff_t>(g));
  return out;
}

SemilinearOp DeRham::frobenius_matrix() const {
  const std::size_t g = genus();
  Matrix a(field(), dim(), dim());
  for (std::size_t k = 0; k < g; ++k) {
    const ConeFunc f2 = curve_.square(h1O_basis_fn(index_[k]));
    a.set_col(k, reduce_cocycle(f2, {}, {}));
  }
  return {std::move(a), 1};
}

SemilinearOp DeRham::verschiebung_matrix() const {
  const std::size_t g = genus();
  Matrix a(field(), dim(), dim());
  Vector col(dim());
  for (std::size_t k = 0; k < g; ++k) {
    const auto& s = psi_split(k);
    const ConeFunc c_inf = curve_.cartier(s.inf);
    if (c_inf != curve_.cartier(s.zero))
      throw std::logic_error("Cartier images of the two halves of d" + label(k) + " differ");
    std::fill(col.begin(), col.end(), field().zero());
    const Vector lam = global_coords(c_inf);
    std::copy(lam.begin(), lam.end(), col.begin() + static_cast<std::ptrdiff_t>(g));
    a.set_col(k, col);
  }
  for (std::size_t k = 0; k < g; ++k) {
    ConeFunc gk;
    gk.add_term(index_[k], field().one());
    std::fill(col.begin(), col.end(), field().zero());
    const Vector lam = global_coords(curve_.cartier(gk));
    std::copy(lam.begin(), lam.end(), col.begin() + static_cast<std::ptrdiff_t>(g));
    a.set_col(g + k, col);
  }
  return {std::move(a), -1};
}

std::vector<int> DeRham::tau_weights() const {
  const std::size_t g = genus();
  const int order = curve_.q() - 1;
  std::vector<int> w(dim());
  for (std::size_t k = 0; k < g; ++k) {
    w[k] = curve_.tau_weight(h1O_basis_mono(index_[k]));
    w[g + k] = (curve_.tau_weight(index_[k]) + 1) % order;
  }
  return w;
}

SemilinearOp DeRham::tau_matrix() const {
  const auto w = tau_weights();
  Matrix a(field(), dim(), dim());
  for (std::size_t k = 0; k < dim(); ++k) a.set(k, k, field().exp(w[k]));
  return {std::move(a), 0};
}

// ---------------------------------------------------------------------------
// Cartier table

std::vector<CartierRow> verify_cartier_table(const SuzukiCurve& curve) {
  const Field& f = curve.field();
  const FieldElem one = f.one();
  const int q0 = curve.q0();
  const int h = q0 / 2;
  const RawFunc y = curve.y();
  const RawFunc z = curve.z();
  const RawFunc h1 = curve.h1();
  const RawFunc h2 = curve.h2();
  auto Y = [&](int e) { return curve.monomial(e, 0, one); };
  auto P = [&](const RawFunc& x, int e) { return curve.pow(x, static_cast<unsigned>(e)); };
  auto M = [&](const RawFunc& a, const RawFunc& b) { return curve.mul(a, b); };
  const RawFunc zero;

  struct Spec {
    const char* lhs;
    Mono mono;
    const char* printed;
    std::function<RawFunc()> rhs;
    bool flagged = false;
    const char* corrected = "";
    std::function<RawFunc()> fix;
    const char* note = "";
  };
  auto plain = [](const char* lhs, Mono mono, const char* printed, std::function<RawFunc()> rhs) {
    return Spec{lhs, mono, printed, std::move(rhs), false, "", {}, ""};
  };
  const std::vector<Spec> specs = {
      plain("1", {0, 0, 0, 0}, "0", [&] { return zero; }),
      plain("y", {1, 0, 0, 0}, "1", [&] { return Y(0); }),
      plain("z", {0, 1, 0, 0}, "y^(q0/2)", [&] { return Y(h); }),
      plain("h1", {0, 0, 1, 0}, "y^q0", [&] { return Y(q0); }),
      {"h2", {0, 0, 0, 1}, "(y h1)^(q0/2) + h2", [&] { return P(M(y, h1), h) + h2; }, true,
       "(y h1)^(q0/2) + h2^(q0/2)", [&] { return P(M(y, h1), h) + P(h2, h); },
       "printed h2 term lacks the exponent q0/2; the two readings agree only for q0 = 2"},
      plain("yz", {1, 1, 0, 0}, "h1^(q0/2)", [&] { return P(h1, h); }),
      {"yh1", {1, 0, 1, 0}, "(y h1)^(q0/2) + h2", [&] { return P(M(y, h1), h) + h2; }, true,
       "(y h1)^(q0/2) + h2^(q0/2)", [&] { return P(M(y, h1), h) + P(h2, h); },
       "same image as the h2 row, with the same missing exponent"},
      plain("zh1", {0, 1, 1, 0}, "(y h2)^(q0/2)", [&] { return P(M(y, h2), h); }),
      plain("zh2", {0, 1, 0, 1}, "(h1 h2)^(q0/2)", [&] { return P(M(h1, h2), h); }),
      plain("h1h2", {0, 0, 1, 1}, "h1 + z y^q0", [&] { return h1 + M(z, Y(q0)); }),
      plain("yzh1", {1, 1, 1, 0}, "y^(q0/2) z + (h1 h2)^(q0/2)", [&] { return M(Y(h), z) + P(M(h1, h2), h); }),
      plain("yzh2", {1, 1, 0, 1}, "z h1^(q0/2) + y^(q0/2+1) h2^(q0/2)",
            [&] { return M(z, P(h1, h)) + M(Y(h + 1), P(h2, h)); }),
      plain("zh1h2", {0, 1, 1, 1}, "z y^(q0/2) h2^(q0/2) + h1^(q0/2+1)",
            [&] { return M(M(z, Y(h)), P(h2, h)) + P(h1, h + 1); }),
      plain("yh1h2", {1, 0, 1, 1}, "(y h1)^(q0/2) z + h2^(q0/2) z",
            [&] { return M(P(M(y, h1), h), z) + M(P(h2, h), z); }),
      {"yzh1h2", {1, 1, 1, 1}, "y^(q0/2) h2 + z h1^(q0/2) h2^(q0 2)",
       [&] { return M(Y(h), h2) + M(M(z, P(h1, h)), P(h2, 2 * q0)); }, true,
       "y^(q0/2) h2 + z h1^(q0/2) h2^(q0/2)", [&] { return M(Y(h), h2) + M(M(z, P(h1, h)), P(h2, h)); },
       "printed exponent of h2 is garbled; the printed column is read as h2^(2 q0)"},
  };

  std::vector<CartierRow> rows;
  for (const auto& s : specs) {
    CartierRow row;
    row.lhs = s.lhs;
    row.printed = s.printed;
    row.flagged = s.flagged;
    row.note = s.note;
    const RawFunc image = curve.cartier(curve.to_raw(s.mono));
    row.computed = to_string(curve.to_cone(image));
    row.equal = image == curve.z_reduce(s.rhs());
    if (s.fix) {
      row.corrected = s.corrected;
      row.corrected_equal = image == curve.z_reduce(s.fix());
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Verschiebung/Frobenius table for m = 1

namespace {

Mono parse_tuple(const std::string& s) {
  std::vector<int> v;
  if (s.size() == 4 && std::all_of(s.begin(), s.end(), ::isdigit)) {
    for (char ch : s) v.push_back(ch - '0');
  } else {
    std::string body = s;
    if (body.size() >= 2 && body.front() == '(' && body.back() == ')') body = body.substr(1, body.size() - 2);
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) v.push_back(std::stoi(item));
  }
  if (v.size() != 4) throw std::invalid_argument("bad tuple '" + s + "'");
  return Mono{v[0], v[1], v[2], v[3]};
}

std::string compact(const Mono& t) {
  if (t.a < 10 && t.b < 10 && t.c < 10 && t.d < 10)
    return std::to_string(t.a) + std::to_string(t.b) + std::to_string(t.c) + std::to_string(t.d);
  return to_string(t);
}

}  // namespace

Vector parse_class(const DeRham& dr, const std::string& text) {
  const Field& f = dr.field();
  Vector v(dr.dim(), f.zero());
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s == "0") return v;
  std::size_t pos = 0;
  while (pos < s.size()) {
    // Split on '+' outside parentheses.
    std::size_t end = pos;
    int depth = 0;
    while (end < s.size() && (s[end] != '+' || depth > 0)) {
      if (s[end] == '(') ++depth;
      if (s[end] == ')') --depth;
      ++end;
    }
    const std::string term = s.substr(pos, end - pos);
    if (term.size() < 2 || (term[0] != 'P' && term[0] != 'L'))
      throw std::invalid_argument("bad class term '" + term + "'");
    auto k = dr.index_of(parse_tuple(term.substr(1)));
    if (!k) throw std::invalid_argument("tuple in '" + term + "' is not in the index set");
    const std::size_t slot = term[0] == 'P' ? *k : dr.genus() + *k;
    v[slot] = f.add(v[slot], f.one());
    pos = end + 1;
  }
  return v;
}

std::string format_class(const DeRham& dr, const Vector& v) {
  std::string out;
  const std::size_t g = dr.genus();
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (v[k].is_zero()) continue;
    if (!out.empty()) out += '+';
    if (v[k].bits != 1) out += '[' + std::to_string(v[k].bits) + ']';
    out += (k < g ? 'P' : 'L') + compact(dr.index_set()[k % g]);
  }
  return out.empty() ? "0" : out;
}

VFTableReport verify_vf_table(const DeRham& dr) {
  if (dr.curve().m() != 1) throw std::invalid_argument("the Verschiebung/Frobenius table is for m = 1");
  const std::vector<std::string> adapted = {"0000", "2000", "0100+3000", "2100+0010", "0001+1010",
                                            "1000", "2100", "1001",      "0011",      "1010",
                                            "3000", "1100", "0110",      "0101"};
  struct Printed {
    const char* element;
    const char* v;
    const char* f;
    bool flagged = false;
    const char* alt_element = "";
    const char* alt_f = "";
  };
  // F(P1000) is printed as P0110, the same image as F(P1001), and F(P0000) as
  // P1000. Both agree with the computation if the basis element is read as
  // f_(1,0,0,0) + f_(0,1,1,0).
  const std::vector<Printed> table = {
      {"L0000", "0", "0"},
      {"L2000", "0", "0"},
      {"L0100+L3000", "0", "0"},
      {"L2100+L0010", "0", "0"},
      {"L0001+L1010", "0", "0"},
      {"L1000", "L0000", "0"},
      {"L0010", "L2000", "0"},
      {"L1001", "L0100+L3000", "0"},
      {"L0011", "L2100+L0010", "0"},
      {"L1010", "L0001+L1010", "0"},
      {"L0100", "L1000", "0"},
      {"L1100", "L0010", "0"},
      {"L0110", "L1001", "0"},
      {"L0101", "L0011", "0"},
      {"P0101", "0", "L0000"},
      {"P0110", "0", "L2000"},
      {"P1100", "0", "L0100+L3000"},
      {"P0100+P3000", "0", "L2100+L0010"},
      {"P0001+P1010", "0", "L0001+L1010"},
      {"P0011", "0", "P0101"},
      {"P1001", "0", "P0110"},
      {"P2100+P0010", "0", "P1100"},
      {"P1000", "0", "P0110", true, "P1000+P0110", "P0100+P3000"},
      {"P1010", "L1010", "P0001+P1010"},
      {"P2100", "L0100", "P0011"},
      {"P3000", "L1100", "P1001"},
      {"P2000", "L0110", "P2100+P0010"},
      {"P0000", "L0101", "P1000", true, "P0000", "P1000+P0110"},
  };

  const Field& fld = dr.field();
  const std::size_t g = dr.genus();
  const std::size_t n = dr.dim();
  VFTableReport report;

  // Columns of the adapted basis change: psi(A) then lambda(B).
  Matrix change(fld, n, n);
  for (std::size_t i = 0; i < g; ++i) {
    std::string p;
    std::string l;
    std::stringstream ss(adapted[i]);
    std::string part;
    while (std::getline(ss, part, '+')) {
      p += (p.empty() ? "P" : "+P") + part;
      l += (l.empty() ? "L" : "+L") + part;
    }
    change.set_col(i, parse_class(dr, p));
    change.set_col(g + i, parse_class(dr, l));
  }
  try {
    inverse(change);
    report.basis_change_invertible = true;
  } catch (const std::domain_error&) {
  }
  // Triangular after sorting: the lowest-pole-order entry of each column is a
  // different basis vector.
  std::vector<std::pair<std::size_t, long long>> leads;
  for (std::size_t j = 0; j < n; ++j) {
    std::pair<std::size_t, long long> lead{n, 0};
    for (std::size_t i = 0; i < n; ++i) {
      if (change(i, j).is_zero()) continue;
      const long long pole = dr.curve().pole_order(dr.index_set()[i % g]);
      if (lead.first == n || pole < lead.second) lead = {i, pole};
    }
    leads.push_back(lead);
  }
  std::sort(leads.begin(), leads.end());
  report.basis_change_triangular =
      leads.back().first < n && std::adjacent_find(leads.begin(), leads.end(), [](const auto& a, const auto& b) {
                                  return a.first == b.first;
                                }) == leads.end();

  const SemilinearOp fo = dr.frobenius_matrix();
  const SemilinearOp vo = dr.verschiebung_matrix();

  // Unknowns W[s][t] (index s * g + t): psi'(f_t) = psi(f_t) + sum_s W[s][t] lambda(g_s).
  const std::size_t unknowns = g * g;
  std::vector<Vector> eqs;
  auto equation = [&]() { return Vector(unknowns + 1, fld.zero()); };
  for (const auto& row : table) {
    const Vector x = parse_class(dr, row.element);
    const Vector yv = parse_class(dr, row.v);
    const Vector yf = parse_class(dr, row.f);
    const Vector fx = fo.matrix.apply(x);
    const Vector vx = vo.matrix.apply(x);
    bool psi_part_ok = !row.flagged;
    for (std::size_t i = 0; i < g; ++i) psi_part_ok = psi_part_ok && fx[i] == yf[i];
    if (psi_part_ok) {
      for (std::size_t r = 0; r < g; ++r) {
        Vector e = equation();
        for (std::size_t t = 0; t < g; ++t) e[r * g + t] = yf[t];
        e[unknowns] = fld.add(fx[g + r], yf[g + r]);
        eqs.push_back(std::move(e));
      }
    }
    for (std::size_t r = 0; r < g; ++r) {
      Vector e = equation();
      for (std::size_t s2 = 0; s2 < g; ++s2) {
        const FieldElem c = vo.matrix(g + r, g + s2);
        if (c.is_zero()) continue;
        for (std::size_t t = 0; t < g; ++t) e[s2 * g + t] = fld.add(e[s2 * g + t], fld.mul(c, x[t]));
      }
      e[unknowns] = fld.add(vx[g + r], yv[g + r]);
      eqs.push_back(std::move(e));
    }
  }
  std::vector<std::size_t> piv;
  const Matrix solved = rref(Matrix::from_rows(fld, unknowns + 1, eqs), &piv);
  report.lift_found = piv.empty() || piv.back() != unknowns;
  Matrix lift = Matrix::identity(fld, n);
  if (report.lift_found) {
    for (std::size_t i = 0; i < piv.size(); ++i) {
      const std::size_t s2 = piv[i] / g;
      const std::size_t t = piv[i] % g;
      lift.set(g + s2, t, solved(i, unknowns));
    }
    for (std::size_t t = 0; t < g; ++t) {
      std::string rhs;
      for (std::size_t s2 = 0; s2 < g; ++s2) {
        if (lift(g + s2, t).is_zero()) continue;
        if (!rhs.empty()) rhs += " + ";
        rhs += dr.label(g + s2);
      }
      if (!rhs.empty()) report.lift_corrections.push_back(dr.label(t) + " += " + rhs);
    }
  }
  // Over F_2 the lift is an involution.
  const Matrix lift_inv = inverse(lift);
  const Matrix f_primed = lift_inv * fo.matrix * lift.frobenius(fo.twist);
  const Matrix v_primed = lift_inv * vo.matrix * lift.frobenius(vo.twist);
  for (const auto& row : table) {
    const Vector x = parse_class(dr, row.element);
    const Vector fx = f_primed.apply(frobenius(fld, x, fo.twist));
    const Vector vx = v_primed.apply(frobenius(fld, x, vo.twist));
    VFRow r;
    r.element = row.element;
    r.printed_v = row.v;
    r.printed_f = row.f;
    r.flagged = row.flagged;
    r.computed_v = format_class(dr, vx);
    r.computed_f = format_class(dr, fx);
    r.v_equal = vx == parse_class(dr, row.v);
    r.f_equal = fx == parse_class(dr, row.f);
    if (row.flagged) {
      const Vector ax = parse_class(dr, row.alt_element);
      r.alt_element = row.alt_element;
      r.alt_f = row.alt_f;
      r.alt_equal = f_primed.apply(frobenius(fld, ax, fo.twist)) == parse_class(dr, row.alt_f);
    }
    report.rows.push_back(std::move(r));
  }
  return report;
}

}  // namespace suzuki
