#include "suzuki/dieudonne.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace suzuki {

void check_module(const EModule& M) {
  const std::size_t n = M.dim;
  auto square = [n](const Matrix& a) { return a.rows() == n && a.cols() == n; };
  if (!square(M.F.matrix) || !square(M.V.matrix)) throw std::invalid_argument("F or V has the wrong shape");
  if (M.F.twist != 1 || M.V.twist != -1) throw std::invalid_argument("F and V must have twists +1 and -1");
  if (!compose(M.F, M.V).matrix.is_zero()) throw std::invalid_argument("FV != 0");
  if (!compose(M.V, M.F).matrix.is_zero()) throw std::invalid_argument("VF != 0");
  if (M.tau && (!square(M.tau->matrix) || M.tau->twist != 0)) throw std::invalid_argument("tau has the wrong shape");
}

SemilinearOp compose(const SemilinearOp& a, const SemilinearOp& b) {
  return {a.matrix * b.matrix.frobenius(a.twist), a.twist + b.twist};
}

Subspace kernel(const SemilinearOp& op) { return Subspace::span(null_space(op.matrix)).twisted(-op.twist); }

Subspace image(const SemilinearOp& op, const Subspace& w) { return image(op.matrix, w.twisted(op.twist)); }

Subspace preimage(const SemilinearOp& op, const Subspace& w) {
  return preimage(op.matrix, w).twisted(-op.twist);
}

std::size_t a_number(const EModule& M) { return intersect(kernel(M.F), kernel(M.V)).dim(); }

std::size_t p_rank(const EModule& M) {
  Subspace w = Subspace::full(M.field, M.dim);
  while (true) {
    Subspace next = image(M.F, w);
    if (next.dim() == w.dim()) return w.dim();
    w = std::move(next);
  }
}

// ---------------------------------------------------------------------------
// Canonical filtration

std::vector<std::size_t> Filtration::dims() const {
  std::vector<std::size_t> d;
  for (const auto& s : steps) d.push_back(s.dim());
  return d;
}

namespace {

// Closure of {0, N} under two maps on a totally ordered family, keyed by
// dimension. Works for any subspace type with a dim() and equality.
template <typename Space, typename VMap, typename FInvMap>
void close_flag(std::map<std::size_t, Space>& flag, std::map<std::size_t, std::size_t>& nu,
                std::map<std::size_t, std::size_t>& finv, VMap v_image, FInvMap f_preimage) {
  std::deque<std::size_t> todo;
  for (const auto& [d, s] : flag) todo.push_back(d);
  auto add = [&](Space s) {
    const std::size_t d = s.dim();
    auto it = flag.find(d);
    if (it == flag.end()) {
      flag.emplace(d, std::move(s));
      todo.push_back(d);
    } else if (!(it->second == s)) {
      throw std::logic_error("canonical filtration is not totally ordered");
    }
    return d;
  };
  while (!todo.empty()) {
    const std::size_t d = todo.front();
    todo.pop_front();
    Space vi = v_image(flag.at(d));
    Space fi = f_preimage(flag.at(d));
    nu[d] = add(std::move(vi));
    finv[d] = add(std::move(fi));
  }
}

std::vector<int> eo_from_steps(const std::vector<std::size_t>& dims, const std::vector<std::size_t>& nu,
                               std::size_t dim) {
  const std::size_t g = dim / 2;
  std::vector<int> out;
  std::size_t j = 1;
  for (std::size_t i = 1; i <= g; ++i) {
    while (dims[j] < i) ++j;
    const bool injective = nu[j] > nu[j - 1];
    out.push_back(static_cast<int>(nu[j - 1] + (injective ? i - dims[j - 1] : 0)));
  }
  return out;
}

struct BlockPermutation {
  std::vector<char> letter;       // per block 1..z (index 0 unused)
  std::vector<std::size_t> next;  // block index of the image
  std::vector<std::size_t> size;
};

BlockPermutation block_permutation(const std::vector<std::size_t>& dims, const std::vector<std::size_t>& nu,
                                   const std::vector<std::size_t>& finv) {
  std::map<std::size_t, std::size_t> index;
  for (std::size_t i = 0; i < dims.size(); ++i) index[dims[i]] = i;
  const std::size_t z = dims.size() - 1;
  BlockPermutation p;
  p.letter.assign(z + 1, 0);
  p.next.assign(z + 1, 0);
  p.size.assign(z + 1, 0);
  for (std::size_t i = 1; i <= z; ++i) {
    p.size[i] = dims[i] - dims[i - 1];
    std::size_t hi = 0;
    std::size_t lo = 0;
    if (nu[i] > nu[i - 1]) {
      p.letter[i] = 'V';
      hi = index.at(nu[i]);
      lo = index.at(nu[i - 1]);
    } else {
      p.letter[i] = 'F';
      hi = index.at(finv[i]);
      lo = index.at(finv[i - 1]);
    }
    if (hi != lo + 1 || dims[hi] - dims[lo] != p.size[i])
      throw std::logic_error("block map does not send a block onto a block");
    p.next[i] = hi;
  }
  return p;
}

Decomposition words_of(const BlockPermutation& p) {
  const std::size_t z = p.letter.size() - 1;
  std::map<std::string, std::size_t> mult;
  std::vector<bool> seen(z + 1, false);
  for (std::size_t start = 1; start <= z; ++start) {
    if (seen[start]) continue;
    std::string word;
    const std::size_t size = p.size[start];
    for (std::size_t i = start; !seen[i]; i = p.next[i]) {
      seen[i] = true;
      if (p.size[i] != size) throw std::logic_error("blocks in one orbit have different dimensions");
      word += p.letter[i];
    }
    // A periodic cycle u^k is k copies of the primitive word u.
    std::size_t period = word.size();
    for (std::size_t d = 1; d < word.size(); ++d) {
      if (word.size() % d != 0) continue;
      if (word.substr(d) + word.substr(0, d) == word) {
        period = d;
        break;
      }
    }
    mult[canonical_word(word.substr(0, period))] += size * (word.size() / period);
  }
  Decomposition D;
  for (const auto& [w, k] : mult) {
    Summand s;
    s.word = w;
    s.multiplicity = k;
    s.rank = w.size();
    s.a_number = a_number(word_module(Field::with_degree(1), w));
    s.presentation = pretty_word(w);
    D.summands.push_back(std::move(s));
  }
  std::sort(D.summands.begin(), D.summands.end(),
            [](const Summand& a, const Summand& b) { return std::tie(a.rank, a.word) < std::tie(b.rank, b.word); });
  return D;
}

}  // namespace

Filtration canonical_filtration(const EModule& M) {
  std::map<std::size_t, Subspace> flag;
  flag.emplace(0, Subspace::zero(M.field, M.dim));
  flag.emplace(M.dim, Subspace::full(M.field, M.dim));
  std::map<std::size_t, std::size_t> nu;
  std::map<std::size_t, std::size_t> finv;
  close_flag(
      flag, nu, finv, [&](const Subspace& w) { return image(M.V, w); },
      [&](const Subspace& w) { return preimage(M.F, w); });
  Filtration out;
  for (auto& [d, s] : flag) {
    if (!out.steps.empty() && !s.contains(out.steps.back()))
      throw std::logic_error("canonical filtration is not a chain");
    out.steps.push_back(s);
    out.nu.push_back(nu.at(d));
    out.finv.push_back(finv.at(d));
  }
  return out;
}

std::vector<int> eo_type(const Filtration& filt, std::size_t dim) { return eo_from_steps(filt.dims(), filt.nu, dim); }

std::vector<int> eo_type(const EModule& M) { return eo_type(canonical_filtration(M), M.dim); }

std::string format_eo(const std::vector<int>& nu) {
  std::string out = "[";
  for (std::size_t i = 0; i < nu.size(); ++i) out += (i ? "," : "") + std::to_string(nu[i]);
  return out + "]";
}

Decomposition decompose(const EModule& M) {
  const Filtration filt = canonical_filtration(M);
  return words_of(block_permutation(filt.dims(), filt.nu, filt.finv));
}

// ---------------------------------------------------------------------------
// Words

std::string canonical_word(const std::string& word) {
  std::string best = word;
  for (std::size_t r = 1; r < word.size(); ++r) best = std::min(best, word.substr(r) + word.substr(0, r));
  return best;
}

namespace {

// Maximal runs of equal letters, starting at position 0 of a rotation that
// begins a run.
std::vector<std::pair<char, int>> runs(const std::string& word) {
  std::vector<std::pair<char, int>> out;
  for (char ch : word) {
    if (!out.empty() && out.back().first == ch)
      ++out.back().second;
    else
      out.emplace_back(ch, 1);
  }
  if (out.size() > 1 && out.front().first == out.back().first) {
    out.front().second += out.back().second;
    out.pop_back();
  }
  return out;
}

std::string power(const std::string& base, int e) { return e == 1 ? base : base + "^" + std::to_string(e); }

// Circle word ("Kraft" orientation): letter k joins z_k to z_{k+1}; 'F' means
// F z_k = z_{k+1}, 'V' means V z_{k+1} = z_k. Block words read it backwards.
std::string circle_word(const std::string& word) { return std::string(word.rbegin(), word.rend()); }

}  // namespace

std::string format_word(const std::string& word) {
  std::string out;
  for (const auto& [ch, n] : runs(canonical_word(word))) {
    if (!out.empty()) out += ' ';
    out += ch == 'F' ? power("(F^-1)", n) : power("V", n);
  }
  return out;
}

std::vector<std::pair<int, int>> presentation_of(const std::string& word) {
  std::string circle = circle_word(word);
  if (circle.find('F') == std::string::npos || circle.find('V') == std::string::npos) return {};
  // Rotate so the circle starts with an F-run that follows a V-run.
  std::size_t start = 0;
  while (!(circle[start] == 'F' && circle[(start + circle.size() - 1) % circle.size()] == 'V')) ++start;
  circle = circle.substr(start) + circle.substr(0, start);
  // Circle runs F^{b_k} V^{a_k} give F^{b_k} X_k = V^{a_k} X_{k+1}; relabelling
  // the generators in reverse order gives V^a X_i = F^b X_{i+1}.
  const auto r = runs(circle);
  std::vector<std::pair<int, int>> rel;
  for (std::size_t k = 0; k < r.size(); k += 2) rel.emplace_back(r[k + 1].second, r[k].second);
  std::reverse(rel.begin(), rel.end());
  std::vector<std::pair<int, int>> best = rel;
  for (std::size_t s = 1; s < rel.size(); ++s) {
    std::vector<std::pair<int, int>> rot(rel.begin() + static_cast<std::ptrdiff_t>(s), rel.end());
    rot.insert(rot.end(), rel.begin(), rel.begin() + static_cast<std::ptrdiff_t>(s));
    best = std::min(best, rot);
  }
  return best;
}

std::string pretty_word(const std::string& word) {
  const std::string w = canonical_word(word);
  if (w.find('V') == std::string::npos) return "E/E(F-1,V)";
  if (w.find('F') == std::string::npos) return "E/E(V-1,F)";
  const auto rel = presentation_of(w);
  if (rel.size() == 1 && rel[0].first == rel[0].second) {
    const int t = rel[0].first;
    return "E/E(" + power("F", t) + "+" + power("V", t) + ")";
  }
  const std::size_t n = rel.size();
  std::string gens;
  std::string rels;
  for (std::size_t i = 0; i < n; ++i) {
    gens += (i ? "," : "") + ("X" + std::to_string(i + 1));
    rels += (i ? ", " : "") + power("V", rel[i].first) + "X" + std::to_string(i + 1) + "=" +
            power("F", rel[i].second) + "X" + std::to_string((i + 1) % n + 1);
  }
  return "E<" + gens + " : " + rels + ">";
}

EModule word_module(const Field& field, const std::string& word) {
  const std::string circle = circle_word(word);
  const std::size_t n = circle.size();
  EModule M;
  M.field = field;
  M.dim = n;
  M.F = {Matrix(field, n, n), 1};
  M.V = {Matrix(field, n, n), -1};
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t next = (k + 1) % n;
    if (circle[k] == 'F')
      M.F.matrix.set(next, k, field.one());
    else if (circle[k] == 'V')
      M.V.matrix.set(k, next, field.one());
    else
      throw std::invalid_argument("word letters must be F or V");
  }
  return M;
}

EModule presentation_module(const Field& field, const std::vector<std::pair<int, int>>& relations) {
  if (relations.empty()) throw std::invalid_argument("empty presentation");
  std::string circle;
  for (auto it = relations.rbegin(); it != relations.rend(); ++it) {
    if (it->first < 1 || it->second < 1) throw std::invalid_argument("relation exponents must be positive");
    circle += std::string(static_cast<std::size_t>(it->second), 'F') + std::string(static_cast<std::size_t>(it->first), 'V');
  }
  return word_module(field, circle_word(circle));
}

EModule standard_module(const Field& field, int t) {
  return word_module(field, std::string(static_cast<std::size_t>(t), 'F') + std::string(static_cast<std::size_t>(t), 'V'));
}

EModule direct_sum(const std::vector<EModule>& parts) {
  if (parts.empty()) throw std::invalid_argument("empty direct sum");
  EModule M;
  M.field = parts.front().field;
  for (const auto& p : parts) M.dim += p.dim;
  M.F = {Matrix(M.field, M.dim, M.dim), 1};
  M.V = {Matrix(M.field, M.dim, M.dim), -1};
  const bool with_tau = std::all_of(parts.begin(), parts.end(), [](const EModule& p) { return p.tau.has_value(); });
  if (with_tau) M.tau = SemilinearOp{Matrix(M.field, M.dim, M.dim), 0};
  std::size_t off = 0;
  for (const auto& p : parts) {
    for (std::size_t i = 0; i < p.dim; ++i)
      for (std::size_t j = 0; j < p.dim; ++j) {
        M.F.matrix.set(off + i, off + j, p.F.matrix(i, j));
        M.V.matrix.set(off + i, off + j, p.V.matrix(i, j));
        if (with_tau) M.tau->matrix.set(off + i, off + j, p.tau->matrix(i, j));
      }
    off += p.dim;
  }
  return M;
}

// ---------------------------------------------------------------------------
// Decompositions

std::size_t Decomposition::dim() const {
  std::size_t n = 0;
  for (const auto& s : summands) n += s.multiplicity * s.rank;
  return n;
}

std::size_t Decomposition::a_number() const {
  std::size_t n = 0;
  for (const auto& s : summands) n += s.multiplicity * s.a_number;
  return n;
}

std::size_t Decomposition::multiplicity(const std::string& word) const {
  const std::string w = canonical_word(word);
  for (const auto& s : summands)
    if (s.word == w) return s.multiplicity;
  return 0;
}

std::string Decomposition::pretty() const {
  std::string out;
  for (const auto& s : summands) {
    if (!out.empty()) out += " + ";
    if (s.multiplicity != 1) out += std::to_string(s.multiplicity) + "·";
    out += s.presentation;
  }
  return out.empty() ? "0" : out;
}

Decomposition merge(const std::vector<Decomposition>& parts) {
  std::map<std::string, Summand> acc;
  for (const auto& d : parts)
    for (const auto& s : d.summands) {
      auto [it, fresh] = acc.try_emplace(s.word, s);
      if (!fresh) it->second.multiplicity += s.multiplicity;
    }
  Decomposition D;
  for (auto& [w, s] : acc) D.summands.push_back(std::move(s));
  std::sort(D.summands.begin(), D.summands.end(),
            [](const Summand& a, const Summand& b) { return std::tie(a.rank, a.word) < std::tie(b.rank, b.word); });
  return D;
}

namespace {

// Coordinate subspaces of a direct sum of word modules, as sorted index sets.
struct CoordSpace {
  std::vector<std::size_t> idx;
  std::size_t dim() const { return idx.size(); }
  friend bool operator==(const CoordSpace&, const CoordSpace&) = default;
};

}  // namespace

std::vector<int> eo_type(const Decomposition& D) {
  // Partial maps on the combined circle basis.
  std::vector<long> fmap;
  std::vector<long> vmap;
  for (const auto& s : D.summands) {
    const std::string circle = circle_word(s.word);
    const std::size_t n = circle.size();
    for (std::size_t copy = 0; copy < s.multiplicity; ++copy) {
      const std::size_t off = fmap.size();
      fmap.resize(off + n, -1);
      vmap.resize(off + n, -1);
      for (std::size_t k = 0; k < n; ++k) {
        const std::size_t next = (k + 1) % n;
        if (circle[k] == 'F')
          fmap[off + k] = static_cast<long>(off + next);
        else
          vmap[off + next] = static_cast<long>(off + k);
      }
    }
  }
  const std::size_t n = fmap.size();
  std::map<std::size_t, CoordSpace> flag;
  CoordSpace all;
  all.idx.resize(n);
  std::iota(all.idx.begin(), all.idx.end(), 0);
  flag.emplace(0, CoordSpace{});
  flag.emplace(n, all);
  std::map<std::size_t, std::size_t> nu;
  std::map<std::size_t, std::size_t> finv;
  close_flag(
      flag, nu, finv,
      [&](const CoordSpace& w) {
        CoordSpace out;
        for (auto i : w.idx)
          if (vmap[i] >= 0) out.idx.push_back(static_cast<std::size_t>(vmap[i]));
        std::sort(out.idx.begin(), out.idx.end());
        return out;
      },
      [&](const CoordSpace& w) {
        std::vector<bool> in(n, false);
        for (auto i : w.idx) in[i] = true;
        CoordSpace out;
        for (std::size_t i = 0; i < n; ++i)
          if (fmap[i] < 0 || in[static_cast<std::size_t>(fmap[i])]) out.idx.push_back(i);
        return out;
      });
  std::vector<std::size_t> dims;
  std::vector<std::size_t> nus;
  for (const auto& [d, s] : flag) {
    dims.push_back(d);
    nus.push_back(nu.at(d));
  }
  return eo_from_steps(dims, nus, n);
}

// ---------------------------------------------------------------------------
// tau

namespace {

bool is_diagonal(const Matrix& a) {
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j && !a(i, j).is_zero()) return false;
  return true;
}

// Restriction to a coordinate subset that must be stable under F, V, tau.
EModule restrict_to(const EModule& M, const std::vector<std::size_t>& keep) {
  std::vector<bool> inside(M.dim, false);
  for (auto k : keep) inside[k] = true;
  auto check = [&](const Matrix& a) {
    for (auto c : keep)
      for (std::size_t r = 0; r < M.dim; ++r)
        if (!inside[r] && !a(r, c).is_zero()) throw std::logic_error("coordinate subset is not stable");
  };
  check(M.F.matrix);
  check(M.V.matrix);
  EModule out;
  out.field = M.field;
  out.dim = keep.size();
  out.F = {M.F.matrix.select(keep, keep), M.F.twist};
  out.V = {M.V.matrix.select(keep, keep), M.V.twist};
  if (M.tau) out.tau = SemilinearOp{M.tau->matrix.select(keep, keep), 0};
  return out;
}

// Module in a tau-eigenbasis together with the eigen-exponent of each vector.
std::pair<EModule, std::vector<int>> diagonalize(const EModule& M) {
  if (!M.tau) throw std::invalid_argument("module has no tau");
  const Field& f = M.field;
  const std::size_t n = M.dim;
  const int order = static_cast<int>(f.order()) - 1;
  const Matrix& T = M.tau->matrix;
  Matrix power = Matrix::identity(f, n);
  for (int i = 0; i < order; ++i) power = power * T;
  if (!(power == Matrix::identity(f, n))) throw std::invalid_argument("tau^(q-1) is not the identity");

  if (is_diagonal(T)) {
    std::vector<int> w(n);
    for (std::size_t k = 0; k < n; ++k) w[k] = static_cast<int>(f.dlog(T(k, k)));
    return {M, w};
  }
  // General path: eigenspaces of tau (semisimple since its order is odd).
  Matrix basis(f, n, n);
  std::vector<int> w;
  std::size_t col = 0;
  for (int e = 0; e < order; ++e) {
    Matrix shifted = T;
    const FieldElem lam = f.exp(e);
    for (std::size_t k = 0; k < n; ++k) shifted.set(k, k, f.add(shifted(k, k), lam));
    const Matrix kern = null_space(shifted);
    for (std::size_t r = 0; r < kern.rows(); ++r) {
      basis.set_col(col++, kern.row_vector(r));
      w.push_back(e);
    }
  }
  if (col != n) throw std::invalid_argument("tau is not diagonalizable over the field");
  const Matrix inv = inverse(basis);
  EModule out;
  out.field = f;
  out.dim = n;
  out.F = {inv * M.F.matrix * basis.frobenius(M.F.twist), M.F.twist};
  out.V = {inv * M.V.matrix * basis.frobenius(M.V.twist), M.V.twist};
  Matrix diag(f, n, n);
  for (std::size_t k = 0; k < n; ++k) diag.set(k, k, f.exp(w[k]));
  out.tau = SemilinearOp{diag, 0};
  return {out, w};
}

}  // namespace

TauSplit tau_split(const EModule& M) {
  const auto [D, w] = diagonalize(M);
  TauSplit out;
  std::vector<std::size_t> zero;
  std::vector<std::size_t> rest;
  for (std::size_t k = 0; k < w.size(); ++k) {
    ++out.eigen_multiplicities[w[k]];
    (w[k] == 0 ? zero : rest).push_back(k);
  }
  out.trivial = restrict_to(D, zero);
  out.nontrivial = restrict_to(D, rest);
  return out;
}

std::vector<std::pair<std::vector<int>, EModule>> weight_orbit_modules(const EModule& M) {
  const auto [D, w] = diagonalize(M);
  const int order = static_cast<int>(M.field.order()) - 1;
  std::set<int> present(w.begin(), w.end());
  std::set<int> done;
  std::vector<std::pair<std::vector<int>, EModule>> out;
  for (int e : present) {
    if (done.count(e)) continue;
    std::vector<int> orbit;
    for (int x = e; !done.count(x); x = order == 0 ? 0 : (2 * x) % order) {
      done.insert(x);
      orbit.push_back(x);
    }
    std::vector<std::size_t> keep;
    for (std::size_t k = 0; k < w.size(); ++k)
      if (std::find(orbit.begin(), orbit.end(), w[k]) != orbit.end()) keep.push_back(k);
    out.emplace_back(orbit, restrict_to(D, keep));
  }
  return out;
}

Decomposition decompose_by_orbits(const EModule& M) {
  std::vector<Decomposition> parts;
  for (const auto& [orbit, sub] : weight_orbit_modules(M)) parts.push_back(decompose(sub));
  return merge(parts);
}

}  // namespace suzuki
