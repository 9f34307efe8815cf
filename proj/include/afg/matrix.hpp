#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "afg/field.hpp"

namespace afg {

/// Dense row-major matrix over a small finite field. Matrices act on column
/// vectors: the j-th column holds the image of the j-th basis vector.
class Matrix {
 public:
  Matrix() = default;
  Matrix(FieldPtr field, std::size_t rows, std::size_t cols);
  Matrix(FieldPtr field, std::size_t rows, std::size_t cols, std::vector<Elem> entries);

  static Matrix identity(FieldPtr field, std::size_t n);
  static Matrix zero(FieldPtr field, std::size_t rows, std::size_t cols);
  // Permutation matrix sending e_j to e_{perm[j]}.
  static Matrix permutation(FieldPtr field, std::span<const std::size_t> perm);

  const FieldPtr& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  Elem operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  Elem& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  std::span<const Elem> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  const std::vector<Elem>& data() const { return data_; }

  Matrix operator*(const Matrix& o) const;
  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  bool operator==(const Matrix& o) const;
  bool operator!=(const Matrix& o) const { return !(*this == o); }

  std::vector<Elem> apply(std::span<const Elem> v) const;

  Matrix transpose() const;
  // Entrywise a -> a^(p^k).
  Matrix frobenius(unsigned k) const;
  // Throws DomainError when singular.
  Matrix inverse() const;
  Matrix pow(std::uint64_t k) const;
  Elem det() const;
  std::size_t rank() const;
  // Reduced row echelon form; pivots receives pivot columns when given.
  Matrix rref(std::vector<std::size_t>* pivots = nullptr) const;
  // Basis of {v : M v = 0}, as the rows of the returned matrix.
  Matrix nullspace() const;
  bool is_identity() const;
  // Multiplicative order; the matrix must be invertible.
  std::uint64_t order() const;

  // Stack the rows of b below the rows of this.
  Matrix vstack(const Matrix& b) const;
  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const Matrix& b);

  // Packed byte string, usable as a hash key among matrices of one shape.
  std::string key() const;

 private:
  void check_same(const Matrix& o) const;

  FieldPtr field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Elem> data_;
};

Matrix conjugate(const Matrix& x, const Matrix& g);  // g^-1 x g
Matrix direct_sum(const std::vector<Matrix>& blocks);

// Text format: "rows cols q; e11 e12 ..." with integer-encoded entries.
std::string format_matrix(const Matrix& m);
Matrix parse_matrix(const std::string& text);
std::vector<Matrix> parse_matrix_list(const std::string& text);

}  // namespace afg
