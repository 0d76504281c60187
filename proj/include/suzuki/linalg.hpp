#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "suzuki/gf2m.hpp"

namespace suzuki {

using Vector = std::vector<FieldElem>;

/// Dense row-major matrix over a binary field.
///
/// Operators act on column coordinate vectors: column j holds the image of
/// basis vector j. Products skip zero entries of the left factor, which keeps
/// the (very sparse) curve operators cheap.
class Matrix {
 public:
  Matrix() = default;
  Matrix(Field field, std::size_t rows, std::size_t cols);

  static Matrix identity(Field field, std::size_t n);
  /// Stacks vectors as rows.
  static Matrix from_rows(Field field, std::size_t cols, const std::vector<Vector>& rows);

  const Field& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  FieldElem operator()(std::size_t r, std::size_t c) const { return {data_[r * cols_ + c]}; }
  void set(std::size_t r, std::size_t c, FieldElem v) { data_[r * cols_ + c] = v.bits; }

  std::span<const std::uint16_t> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  std::span<std::uint16_t> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  Vector row_vector(std::size_t r) const;
  Vector col_vector(std::size_t c) const;
  void set_col(std::size_t c, const Vector& v);

  Matrix transpose() const;
  /// Entrywise x -> x^{2^k}.
  Matrix frobenius(int k) const;
  /// Submatrix on the given row and column index lists.
  Matrix select(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const;
  bool is_zero() const;
  /// True when every entry lies in the prime field.
  bool is_binary() const;
  std::size_t nonzeros() const;

  Vector apply(const Vector& v) const;

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator+(const Matrix& a, const Matrix& b);
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  Field field_ = Field::with_degree(1);
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::uint16_t> data_;
};

/// dst += c * src over the field.
void axpy(const Field& f, std::span<std::uint16_t> dst, std::span<const std::uint16_t> src, FieldElem c,
          std::size_t from = 0);

Vector frobenius(const Field& f, const Vector& v, int k);

/// Reduced row echelon form with zero rows dropped; pivot columns are reported.
Matrix rref(Matrix m, std::vector<std::size_t>* pivots = nullptr);
std::size_t rank(const Matrix& m);
/// Rows form a basis of {x : m x = 0}.
Matrix null_space(const Matrix& m);
/// Inverse of a square matrix. Throws std::domain_error when singular.
Matrix inverse(const Matrix& m);

/// A subspace of F^n held as a reduced row echelon basis, so equality is a
/// plain comparison of bases.
class Subspace {
 public:
  Subspace() = default;
  static Subspace zero(Field field, std::size_t ambient);
  static Subspace full(Field field, std::size_t ambient);
  static Subspace span(Matrix rows);
  static Subspace span(Field field, std::size_t ambient, const std::vector<Vector>& vectors);

  std::size_t dim() const { return basis_.rows(); }
  std::size_t ambient() const { return basis_.cols(); }
  const Field& field() const { return basis_.field(); }
  const Matrix& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  bool contains(const Vector& v) const;
  bool contains(const Subspace& other) const;
  /// Coordinates of v in the echelon basis. Throws std::domain_error if v is outside.
  Vector coordinates(const Vector& v) const;
  /// Rows span the functionals vanishing on this subspace.
  Matrix annihilator() const;
  /// Entrywise Frobenius of the basis (image under the coordinate twist).
  Subspace twisted(int k) const;

  friend bool operator==(const Subspace& a, const Subspace& b) { return a.basis_ == b.basis_; }

 private:
  Matrix basis_;
  std::vector<std::size_t> pivots_;
};

/// Op(v) = matrix * sigma^twist(v), sigma the coordinatewise Frobenius.
struct SemilinearOp {
  Matrix matrix;
  int twist = 0;
};

Subspace operator+(const Subspace& a, const Subspace& b);
Subspace intersect(const Subspace& a, const Subspace& b);
/// Linear image {A w : w in W}.
Subspace image(const Matrix& a, const Subspace& w);
/// Linear preimage {u : A u in W}.
Subspace preimage(const Matrix& a, const Subspace& w);
/// Column span of A.
Subspace column_space(const Matrix& a);

}  // namespace suzuki
