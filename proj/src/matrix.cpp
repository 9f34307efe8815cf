#include "afg/matrix.hpp"

#include <sstream>

namespace afg {

Matrix::Matrix(FieldPtr field, std::size_t rows, std::size_t cols)
    : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

Matrix::Matrix(FieldPtr field, std::size_t rows, std::size_t cols, std::vector<Elem> entries)
    : field_(std::move(field)), rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows * cols) fail(ErrorKind::InvalidArgument, "matrix entry count mismatch");
  for (Elem v : data_)
    if (v >= field_->size()) fail(ErrorKind::InvalidArgument, "matrix entry out of range");
}

Matrix Matrix::identity(FieldPtr field, std::size_t n) {
  Matrix m(std::move(field), n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::zero(FieldPtr field, std::size_t rows, std::size_t cols) {
  return Matrix(std::move(field), rows, cols);
}

Matrix Matrix::permutation(FieldPtr field, std::span<const std::size_t> perm) {
  Matrix m(std::move(field), perm.size(), perm.size());
  for (std::size_t j = 0; j < perm.size(); ++j) m(perm[j], j) = 1;
  return m;
}

void Matrix::check_same(const Matrix& o) const {
  if (field_ != o.field_) fail(ErrorKind::InvalidArgument, "matrices over different fields");
}

Matrix Matrix::operator*(const Matrix& o) const {
  check_same(o);
  if (cols_ != o.rows_) fail(ErrorKind::InvalidArgument, "dimension mismatch in product");
  Matrix r(field_, rows_, o.cols_);
  const Field& f = *field_;
  for (std::size_t i = 0; i < rows_; ++i) {
    Elem* out = r.data_.data() + i * o.cols_;
    for (std::size_t k = 0; k < cols_; ++k) {
      const Elem a = data_[i * cols_ + k];
      if (a == 0) continue;
      const Elem* in = o.data_.data() + k * o.cols_;
      if (a == 1) {
        for (std::size_t j = 0; j < o.cols_; ++j) out[j] = f.add(out[j], in[j]);
      } else {
        for (std::size_t j = 0; j < o.cols_; ++j) out[j] = f.add(out[j], f.mul(a, in[j]));
      }
    }
  }
  return r;
}

Matrix Matrix::operator+(const Matrix& o) const {
  check_same(o);
  if (rows_ != o.rows_ || cols_ != o.cols_) fail(ErrorKind::InvalidArgument, "dimension mismatch in sum");
  Matrix r = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = field_->add(data_[i], o.data_[i]);
  return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
  check_same(o);
  if (rows_ != o.rows_ || cols_ != o.cols_) fail(ErrorKind::InvalidArgument, "dimension mismatch in difference");
  Matrix r = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = field_->sub(data_[i], o.data_[i]);
  return r;
}

bool Matrix::operator==(const Matrix& o) const {
  return field_ == o.field_ && rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

std::vector<Elem> Matrix::apply(std::span<const Elem> v) const {
  if (v.size() != cols_) fail(ErrorKind::InvalidArgument, "vector length mismatch");
  std::vector<Elem> r(rows_, 0);
  const Field& f = *field_;
  for (std::size_t i = 0; i < rows_; ++i) {
    Elem acc = 0;
    for (std::size_t j = 0; j < cols_; ++j) acc = f.add(acc, f.mul(data_[i * cols_ + j], v[j]));
    r[i] = acc;
  }
  return r;
}

Matrix Matrix::transpose() const {
  Matrix r(field_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
  return r;
}

Matrix Matrix::frobenius(unsigned k) const {
  Matrix r = *this;
  for (auto& v : r.data_) v = field_->frobenius(v, k);
  return r;
}

Matrix Matrix::rref(std::vector<std::size_t>* pivots) const {
  Matrix m = *this;
  const Field& f = *field_;
  if (pivots) pivots->clear();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
    std::size_t piv = r;
    while (piv < rows_ && m(piv, c) == 0) ++piv;
    if (piv == rows_) continue;
    if (piv != r)
      for (std::size_t j = 0; j < cols_; ++j) std::swap(m(piv, j), m(r, j));
    const Elem s = f.inv(m(r, c));
    for (std::size_t j = 0; j < cols_; ++j) m(r, j) = f.mul(m(r, j), s);
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == r || m(i, c) == 0) continue;
      const Elem t = f.neg(m(i, c));
      for (std::size_t j = 0; j < cols_; ++j) m(i, j) = f.add(m(i, j), f.mul(t, m(r, j)));
    }
    if (pivots) pivots->push_back(c);
    ++r;
  }
  return m;
}

std::size_t Matrix::rank() const {
  std::vector<std::size_t> piv;
  rref(&piv);
  return piv.size();
}

Matrix Matrix::nullspace() const {
  std::vector<std::size_t> piv;
  const Matrix r = rref(&piv);
  std::vector<bool> is_pivot(cols_, false);
  for (auto c : piv) is_pivot[c] = true;
  std::vector<std::size_t> free;
  for (std::size_t c = 0; c < cols_; ++c)
    if (!is_pivot[c]) free.push_back(c);
  Matrix basis(field_, free.size(), cols_);
  for (std::size_t b = 0; b < free.size(); ++b) {
    basis(b, free[b]) = 1;
    for (std::size_t i = 0; i < piv.size(); ++i) basis(b, piv[i]) = field_->neg(r(i, free[b]));
  }
  return basis;
}

Matrix Matrix::inverse() const {
  if (!square()) fail(ErrorKind::InvalidArgument, "inverse of non-square matrix");
  const std::size_t n = rows_;
  Matrix aug(field_, n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = (*this)(i, j);
    aug(i, n + i) = 1;
  }
  std::vector<std::size_t> piv;
  const Matrix r = aug.rref(&piv);
  if (piv.size() < n || piv[n - 1] != n - 1) fail(ErrorKind::InvalidArgument, "matrix is singular");
  return r.block(0, n, n, n);
}

Matrix Matrix::pow(std::uint64_t k) const {
  Matrix result = identity(field_, rows_);
  Matrix b = *this;
  while (k) {
    if (k & 1u) result = result * b;
    k >>= 1;
    if (k) b = b * b;
  }
  return result;
}

Elem Matrix::det() const {
  if (!square()) fail(ErrorKind::InvalidArgument, "determinant of non-square matrix");
  Matrix m = *this;
  const Field& f = *field_;
  Elem d = 1;
  const std::size_t n = rows_;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m(piv, c) == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(piv, j), m(c, j));
      d = f.neg(d);
    }
    d = f.mul(d, m(c, c));
    const Elem s = f.inv(m(c, c));
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m(i, c) == 0) continue;
      const Elem t = f.neg(f.mul(m(i, c), s));
      for (std::size_t j = c; j < n; ++j) m(i, j) = f.add(m(i, j), f.mul(t, m(c, j)));
    }
  }
  return d;
}

bool Matrix::is_identity() const {
  if (!square()) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if ((*this)(i, j) != (i == j ? 1 : 0)) return false;
  return true;
}

std::uint64_t Matrix::order() const {
  Matrix p = *this;
  std::uint64_t k = 1;
  while (!p.is_identity()) {
    p = p * *this;
    ++k;
    if (k > (std::uint64_t{1} << 32)) fail(ErrorKind::CapExceeded, "matrix order search exceeded bound");
  }
  return k;
}

Matrix Matrix::vstack(const Matrix& b) const {
  check_same(b);
  if (cols_ != b.cols_) fail(ErrorKind::InvalidArgument, "column mismatch in vstack");
  Matrix r(field_, rows_ + b.rows_, cols_);
  std::copy(data_.begin(), data_.end(), r.data_.begin());
  std::copy(b.data_.begin(), b.data_.end(), r.data_.begin() + data_.size());
  return r;
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  Matrix r(field_, nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) r(i, j) = (*this)(r0 + i, c0 + j);
  return r;
}

void Matrix::set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
  for (std::size_t i = 0; i < b.rows_; ++i)
    for (std::size_t j = 0; j < b.cols_; ++j) (*this)(r0 + i, c0 + j) = b(i, j);
}

std::string Matrix::key() const {
  std::string k;
  if (field_->size() <= 256) {
    k.resize(data_.size());
    for (std::size_t i = 0; i < data_.size(); ++i) k[i] = static_cast<char>(data_[i]);
  } else {
    k.resize(2 * data_.size());
    for (std::size_t i = 0; i < data_.size(); ++i) {
      k[2 * i] = static_cast<char>(data_[i] & 0xff);
      k[2 * i + 1] = static_cast<char>(data_[i] >> 8);
    }
  }
  return k;
}

Matrix conjugate(const Matrix& x, const Matrix& g) { return g.inverse() * x * g; }

Matrix direct_sum(const std::vector<Matrix>& blocks) {
  if (blocks.empty()) fail(ErrorKind::InvalidArgument, "direct sum of no blocks");
  std::size_t n = 0, m = 0;
  for (const auto& b : blocks) {
    n += b.rows();
    m += b.cols();
  }
  Matrix r(blocks.front().field(), n, m);
  std::size_t i = 0, j = 0;
  for (const auto& b : blocks) {
    r.set_block(i, j, b);
    i += b.rows();
    j += b.cols();
  }
  return r;
}

std::string format_matrix(const Matrix& m) {
  std::ostringstream out;
  out << m.rows() << ' ' << m.cols() << ' ' << m.field()->size() << ';';
  for (Elem v : m.data()) out << ' ' << v;
  return out.str();
}

Matrix parse_matrix(const std::string& text) {
  const auto semi = text.find(';');
  if (semi == std::string::npos) fail(ErrorKind::InvalidArgument, "matrix text lacks ';' separator");
  std::istringstream head(text.substr(0, semi));
  std::size_t rows = 0, cols = 0;
  std::uint32_t q = 0;
  if (!(head >> rows >> cols >> q)) fail(ErrorKind::InvalidArgument, "malformed matrix header");
  std::istringstream body(text.substr(semi + 1));
  std::vector<Elem> entries;
  long long v;
  while (body >> v) {
    if (v < 0 || v >= static_cast<long long>(q)) fail(ErrorKind::InvalidArgument, "matrix entry out of range");
    entries.push_back(static_cast<Elem>(v));
  }
  return Matrix(field_of_order(q), rows, cols, std::move(entries));
}

std::vector<Matrix> parse_matrix_list(const std::string& text) {
  std::vector<Matrix> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    out.push_back(parse_matrix(line));
  }
  return out;
}

}  // namespace afg
