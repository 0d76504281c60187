#include "suzuki/linalg.hpp"

#include <stdexcept>
#include <utility>

namespace suzuki {

Matrix::Matrix(Field field, std::size_t rows, std::size_t cols)
    : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

Matrix Matrix::identity(Field field, std::size_t n) {
  Matrix m(std::move(field), n, n);
  for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = 1;
  return m;
}

Matrix Matrix::from_rows(Field field, std::size_t cols, const std::vector<Vector>& rows) {
  Matrix m(std::move(field), rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw std::invalid_argument("row length mismatch");
    for (std::size_t c = 0; c < cols; ++c) m.data_[r * cols + c] = rows[r][c].bits;
  }
  return m;
}

Vector Matrix::row_vector(std::size_t r) const {
  Vector v(cols_);
  for (std::size_t c = 0; c < cols_; ++c) v[c] = (*this)(r, c);
  return v;
}

Vector Matrix::col_vector(std::size_t c) const {
  Vector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

void Matrix::set_col(std::size_t c, const Vector& v) {
  if (v.size() != rows_) throw std::invalid_argument("column length mismatch");
  for (std::size_t r = 0; r < rows_; ++r) set(r, c, v[r]);
}

Matrix Matrix::transpose() const {
  Matrix t(field_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t.data_[c * rows_ + r] = data_[r * cols_ + c];
  return t;
}

Matrix Matrix::frobenius(int k) const {
  Matrix out = *this;
  if (field_.order() == 2 || k % field_.degree() == 0) return out;
  for (auto& x : out.data_)
    if (x > 1) x = field_.pow2(FieldElem{x}, k).bits;
  return out;
}

Matrix Matrix::select(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const {
  Matrix out(field_, rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) out.data_[i * cols.size() + j] = data_[rows[i] * cols_ + cols[j]];
  return out;
}

bool Matrix::is_zero() const {
  for (auto x : data_)
    if (x != 0) return false;
  return true;
}

bool Matrix::is_binary() const {
  for (auto x : data_)
    if (x > 1) return false;
  return true;
}

std::size_t Matrix::nonzeros() const {
  std::size_t n = 0;
  for (auto x : data_) n += x != 0;
  return n;
}

Vector Matrix::apply(const Vector& v) const {
  if (v.size() != cols_) throw std::invalid_argument("vector length mismatch");
  Vector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    FieldElem acc{};
    for (std::size_t c = 0; c < cols_; ++c) {
      const FieldElem a = (*this)(r, c);
      if (!a.is_zero() && !v[c].is_zero()) acc = field_.add(acc, field_.mul(a, v[c]));
    }
    out[r] = acc;
  }
  return out;
}

void axpy(const Field& f, std::span<std::uint16_t> dst, std::span<const std::uint16_t> src, FieldElem c,
          std::size_t from) {
  if (c.is_zero()) return;
  const std::size_t n = dst.size();
  std::uint16_t* d = dst.data();
  const std::uint16_t* s = src.data();
  if (c.bits == 1) {
    for (std::size_t j = from; j < n; ++j) d[j] ^= s[j];
    return;
  }
  const std::uint16_t* lg = f.log_table();
  const std::uint16_t* ex = f.exp_table();
  const std::uint32_t lc = lg[c.bits];
  for (std::size_t j = from; j < n; ++j)
    if (s[j] != 0) d[j] ^= ex[lc + lg[s[j]]];
}

Vector frobenius(const Field& f, const Vector& v, int k) {
  Vector out(v);
  for (auto& x : out)
    if (x.bits > 1) x = f.pow2(x, k);
  return out;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product shape mismatch");
  Matrix c(a.field_, a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    auto out = c.row(i);
    for (std::size_t l = 0; l < a.cols_; ++l) {
      const FieldElem x = a(i, l);
      if (!x.is_zero()) axpy(a.field_, out, b.row(l), x);
    }
  }
  return c;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix sum shape mismatch");
  Matrix c = a;
  for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] ^= b.data_[i];
  return c;
}

Matrix rref(Matrix m, std::vector<std::size_t>* pivots) {
  const Field f = m.field();
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::vector<std::size_t> piv;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m(p, c).is_zero()) ++p;
    if (p == rows) continue;
    if (p != r) {
      auto a = m.row(p);
      auto b = m.row(r);
      for (std::size_t j = c; j < cols; ++j) std::swap(a[j], b[j]);
    }
    const FieldElem lead = m(r, c);
    if (lead.bits != 1) {
      const FieldElem s = f.inv(lead);
      auto row = m.row(r);
      for (std::size_t j = c; j < cols; ++j) row[j] = f.mul(s, FieldElem{row[j]}).bits;
    }
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r) continue;
      const FieldElem x = m(i, c);
      if (!x.is_zero()) axpy(f, m.row(i), m.row(r), x, c);
    }
    piv.push_back(c);
    ++r;
  }
  Matrix out(f, r, cols);
  for (std::size_t i = 0; i < r; ++i) {
    auto src = m.row(i);
    auto dst = out.row(i);
    std::copy(src.begin(), src.end(), dst.begin());
  }
  if (pivots) *pivots = std::move(piv);
  return out;
}

std::size_t rank(const Matrix& m) { return rref(m).rows(); }

Matrix null_space(const Matrix& m) {
  std::vector<std::size_t> piv;
  const Matrix r = rref(m, &piv);
  const std::size_t n = m.cols();
  std::vector<bool> is_pivot(n, false);
  for (auto p : piv) is_pivot[p] = true;
  Matrix out(m.field(), n - piv.size(), n);
  std::size_t k = 0;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    out.set(k, free, m.field().one());
    for (std::size_t i = 0; i < piv.size(); ++i) out.set(k, piv[i], r(i, free));  // char 2: -x = x
    ++k;
  }
  return out;
}

Matrix inverse(const Matrix& m) {
  const std::size_t n = m.rows();
  if (m.cols() != n) throw std::invalid_argument("inverse of a non-square matrix");
  Matrix aug(m.field(), n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug.set(i, j, m(i, j));
    aug.set(i, n + i, m.field().one());
  }
  std::vector<std::size_t> piv;
  const Matrix r = rref(aug, &piv);
  if (piv.size() < n || piv[n - 1] != n - 1) throw std::domain_error("matrix is singular");
  Matrix out(m.field(), n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out.set(i, j, r(i, n + j));
  return out;
}

Subspace Subspace::zero(Field field, std::size_t ambient) {
  Subspace s;
  s.basis_ = Matrix(std::move(field), 0, ambient);
  return s;
}

Subspace Subspace::full(Field field, std::size_t ambient) { return span(Matrix::identity(std::move(field), ambient)); }

Subspace Subspace::span(Matrix rows) {
  Subspace s;
  s.basis_ = rref(std::move(rows), &s.pivots_);
  return s;
}

Subspace Subspace::span(Field field, std::size_t ambient, const std::vector<Vector>& vectors) {
  return span(Matrix::from_rows(std::move(field), ambient, vectors));
}

Vector Subspace::coordinates(const Vector& v) const {
  if (v.size() != ambient()) throw std::invalid_argument("vector length mismatch");
  const Field& f = field();
  Vector coeffs(dim());
  Vector residual = v;
  for (std::size_t i = 0; i < dim(); ++i) {
    coeffs[i] = residual[pivots_[i]];
    if (coeffs[i].is_zero()) continue;
    for (std::size_t j = 0; j < residual.size(); ++j)
      residual[j] = f.add(residual[j], f.mul(coeffs[i], basis_(i, j)));
  }
  for (auto x : residual)
    if (!x.is_zero()) throw std::domain_error("vector is not in the subspace");
  return coeffs;
}

bool Subspace::contains(const Vector& v) const {
  try {
    coordinates(v);
    return true;
  } catch (const std::domain_error&) {
    return false;
  }
}

bool Subspace::contains(const Subspace& other) const {
  if (other.dim() > dim()) return false;
  return (*this + other).dim() == dim();
}

Matrix Subspace::annihilator() const { return null_space(basis_); }

Subspace Subspace::twisted(int k) const { return span(basis_.frobenius(k)); }

Subspace operator+(const Subspace& a, const Subspace& b) {
  if (a.ambient() != b.ambient()) throw std::invalid_argument("subspaces of different spaces");
  Matrix stacked(a.field(), a.dim() + b.dim(), a.ambient());
  for (std::size_t i = 0; i < a.dim(); ++i) {
    auto src = a.basis().row(i);
    std::copy(src.begin(), src.end(), stacked.row(i).begin());
  }
  for (std::size_t i = 0; i < b.dim(); ++i) {
    auto src = b.basis().row(i);
    std::copy(src.begin(), src.end(), stacked.row(a.dim() + i).begin());
  }
  return Subspace::span(std::move(stacked));
}

Subspace intersect(const Subspace& a, const Subspace& b) {
  if (a.ambient() != b.ambient()) throw std::invalid_argument("subspaces of different spaces");
  if (a.dim() == 0 || b.dim() == 0) return Subspace::zero(a.field(), a.ambient());
  // x = c^T A lies in b iff ann(b) A^T c = 0.
  const Matrix constraint = b.annihilator() * a.basis().transpose();
  const Matrix coeffs = null_space(constraint);
  return Subspace::span(coeffs * a.basis());
}

Subspace image(const Matrix& a, const Subspace& w) {
  if (w.dim() == 0) return Subspace::zero(a.field(), a.rows());
  return Subspace::span(w.basis() * a.transpose());
}

Subspace preimage(const Matrix& a, const Subspace& w) {
  const Matrix ann = w.annihilator();
  if (ann.rows() == 0) return Subspace::full(a.field(), a.cols());
  return Subspace::span(null_space(ann * a));
}

Subspace column_space(const Matrix& a) { return Subspace::span(a.transpose()); }

}  // namespace suzuki
