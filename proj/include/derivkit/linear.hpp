#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "derivkit/error.hpp"
#include "derivkit/rational.hpp"

namespace derivkit {

using Vector = std::vector<Rational>;

/// Thrown when a vector does not live in the expected ambient space.
class DimensionMismatch : public PreconditionError {
public:
  DimensionMismatch(std::size_t index, std::size_t expected, std::size_t actual)
      : PreconditionError("vector " + std::to_string(index) + " has length " +
                          std::to_string(actual) + ", expected " + std::to_string(expected)),
        index_(index) {}

  std::size_t index() const noexcept { return index_; }

private:
  std::size_t index_;
};

inline Vector zero_vector(std::size_t n) { return Vector(n, Rational(0)); }

inline Vector unit_vector(std::size_t n, std::size_t i) {
  Vector v = zero_vector(n);
  v.at(i) = 1;
  return v;
}

inline bool is_zero(std::span<const Rational> v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return sgn(x) == 0; });
}

/// y += a * x
inline void axpy(Vector& y, const Rational& a, std::span<const Rational> x) {
  if (sgn(a) == 0)
    return;
  for (std::size_t i = 0; i < y.size(); ++i)
    if (sgn(x[i]) != 0)
      y[i] += a * x[i];
}

inline Vector scaled(const Rational& a, std::span<const Rational> x) {
  Vector out(x.begin(), x.end());
  for (auto& e : out)
    e *= a;
  return out;
}

inline Vector operator+(Vector a, const Vector& b) {
  if (a.size() != b.size())
    throw DimensionMismatch(1, a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    a[i] += b[i];
  return a;
}

inline Vector operator-(Vector a, const Vector& b) {
  if (a.size() != b.size())
    throw DimensionMismatch(1, a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    a[i] -= b[i];
  return a;
}

/// Dense row-major rational matrix.
class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {}
  Matrix(std::size_t rows, std::size_t cols, Vector entries)
      : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows_ * cols_)
      throw PreconditionError("matrix entry count " + std::to_string(entries_.size()) +
                              " does not match " + std::to_string(rows_) + "x" +
                              std::to_string(cols_));
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      m(i, i) = 1;
    return m;
  }

  /// Matrix whose columns are the given vectors.
  static Matrix from_columns(std::size_t rows, const std::vector<Vector>& columns) {
    Matrix m(rows, columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c) {
      if (columns[c].size() != rows)
        throw DimensionMismatch(c, rows, columns[c].size());
      for (std::size_t r = 0; r < rows; ++r)
        m(r, c) = columns[c][r];
    }
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  const Vector& entries() const noexcept { return entries_; }

  Rational& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  Vector row(std::size_t r) const {
    return Vector(entries_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                  entries_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
  }

  Vector column(std::size_t c) const {
    Vector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      v[r] = (*this)(r, c);
    return v;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c)
        t(c, r) = (*this)(r, c);
    return t;
  }

  Rational trace() const {
    Rational t = 0;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i)
      t += (*this)(i, i);
    return t;
  }

  bool is_zero() const { return derivkit::is_zero(entries_); }

  Vector apply(std::span<const Rational> v) const {
    if (v.size() != cols_)
      throw DimensionMismatch(0, cols_, v.size());
    Vector out = zero_vector(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c)
        if (sgn(v[c]) != 0 && sgn((*this)(r, c)) != 0)
          out[r] += (*this)(r, c) * v[c];
    return out;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_)
      throw PreconditionError("matrix product shape mismatch");
    Matrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Rational& aik = a(i, k);
        if (sgn(aik) == 0)
          continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          if (sgn(b(k, j)) != 0)
            out(i, j) += aik * b(k, j);
      }
    return out;
  }

  friend Matrix operator*(const Rational& s, Matrix m) {
    for (auto& e : m.entries_)
      e *= s;
    return m;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) {
    a.check_same_shape(b);
    for (std::size_t i = 0; i < a.entries_.size(); ++i)
      a.entries_[i] += b.entries_[i];
    return a;
  }

  friend Matrix operator-(Matrix a, const Matrix& b) {
    a.check_same_shape(b);
    for (std::size_t i = 0; i < a.entries_.size(); ++i)
      a.entries_[i] -= b.entries_[i];
    return a;
  }

  Matrix& operator+=(const Matrix& b) {
    check_same_shape(b);
    for (std::size_t i = 0; i < entries_.size(); ++i)
      entries_[i] += b.entries_[i];
    return *this;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

private:
  void check_same_shape(const Matrix& b) const {
    if (rows_ != b.rows_ || cols_ != b.cols_)
      throw PreconditionError("matrix shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  Vector entries_;
};

/// Kronecker product; index (i, a) of the result is i * b.rows() + a.
inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (sgn(a(i, j)) == 0)
        continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    }
  return out;
}

/// Matrix unit E_{rc} of size n.
inline Matrix matrix_unit(std::size_t n, std::size_t r, std::size_t c) {
  Matrix m(n, n);
  m(r, c) = 1;
  return m;
}

/// A subspace of Q^n stored by its reduced row-echelon basis. Two values
/// compare equal exactly when they describe the same subspace.
class Subspace {
public:
  Subspace() = default;

  static Subspace zero(std::size_t ambient) {
    Subspace s;
    s.ambient_dim_ = ambient;
    return s;
  }

  static Subspace full(std::size_t ambient) {
    Subspace s = zero(ambient);
    for (std::size_t i = 0; i < ambient; ++i) {
      s.basis_.push_back(unit_vector(ambient, i));
      s.pivots_.push_back(i);
    }
    return s;
  }

  std::size_t ambient_dim() const noexcept { return ambient_dim_; }
  std::size_t dim() const noexcept { return basis_.size(); }
  const std::vector<Vector>& basis() const noexcept { return basis_; }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

  /// Coordinates of v in the echelon basis, or nullopt when v is outside.
  std::optional<Vector> coords(std::span<const Rational> v) const {
    if (v.size() != ambient_dim_)
      throw DimensionMismatch(0, ambient_dim_, v.size());
    Vector c(basis_.size());
    Vector rebuilt = zero_vector(ambient_dim_);
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      c[i] = v[pivots_[i]];
      axpy(rebuilt, c[i], basis_[i]);
    }
    if (!std::equal(rebuilt.begin(), rebuilt.end(), v.begin()))
      return std::nullopt;
    return c;
  }

  bool contains(std::span<const Rational> v) const { return coords(v).has_value(); }

  bool is_subspace_of(const Subspace& other) const {
    if (other.ambient_dim_ != ambient_dim_)
      throw PreconditionError("ambient dimension mismatch");
    return std::all_of(basis_.begin(), basis_.end(),
                       [&](const Vector& b) { return other.contains(b); });
  }

  friend bool operator==(const Subspace&, const Subspace&) = default;

private:
  friend class EchelonBuilder;

  std::size_t ambient_dim_ = 0;
  std::vector<Vector> basis_;
  std::vector<std::size_t> pivots_;
};

/// Incremental reduced row-echelon form. Pivot choice: first nonzero entry.
class EchelonBuilder {
public:
  explicit EchelonBuilder(std::size_t ambient) : ambient_(ambient) {}

  explicit EchelonBuilder(const Subspace& start)
      : ambient_(start.ambient_dim()), rows_(start.basis()), pivots_(start.pivots()) {}

  std::size_t ambient_dim() const noexcept { return ambient_; }
  std::size_t dim() const noexcept { return rows_.size(); }

  /// Reduces v against the current rows. Returns the nonzero residual (which
  /// lies in the new span) when v was independent, nullopt otherwise.
  std::optional<Vector> insert(Vector v) {
    if (v.size() != ambient_)
      throw DimensionMismatch(0, ambient_, v.size());
    reduce(v);
    const auto lead = std::find_if(v.begin(), v.end(), [](const Rational& x) { return sgn(x) != 0; });
    if (lead == v.end())
      return std::nullopt;
    Vector residual = v;
    const auto p = static_cast<std::size_t>(lead - v.begin());
    const Rational inv = 1 / v[p];
    for (auto& e : v)
      e *= inv;
    for (auto& row : rows_)
      if (sgn(row[p]) != 0) {
        const Rational f = row[p];
        axpy(row, -f, v);
      }
    rows_.push_back(std::move(v));
    pivots_.push_back(p);
    return residual;
  }

  bool contains(Vector v) const {
    if (v.size() != ambient_)
      throw DimensionMismatch(0, ambient_, v.size());
    reduce(v);
    return is_zero(v);
  }

  Subspace build() const {
    std::vector<std::size_t> order(rows_.size());
    for (std::size_t i = 0; i < order.size(); ++i)
      order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return pivots_[a] < pivots_[b]; });
    Subspace s = Subspace::zero(ambient_);
    for (std::size_t i : order) {
      s.basis_.push_back(rows_[i]);
      s.pivots_.push_back(pivots_[i]);
    }
    return s;
  }

private:
  void reduce(Vector& v) const {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const std::size_t p = pivots_[i];
      if (sgn(v[p]) != 0) {
        const Rational f = v[p];
        axpy(v, -f, rows_[i]);
      }
    }
  }

  std::size_t ambient_;
  std::vector<Vector> rows_;
  std::vector<std::size_t> pivots_;
};

inline Subspace span_canonical(std::span<const Vector> vectors, std::size_t ambient) {
  for (std::size_t i = 0; i < vectors.size(); ++i)
    if (vectors[i].size() != ambient)
      throw DimensionMismatch(i, ambient, vectors[i].size());
  EchelonBuilder builder(ambient);
  for (const auto& v : vectors)
    builder.insert(v);
  return builder.build();
}

inline Subspace span_canonical(const std::vector<Vector>& vectors, std::size_t ambient) {
  return span_canonical(std::span<const Vector>(vectors), ambient);
}

inline std::optional<Vector> membership_with_coords(std::span<const Rational> v, const Subspace& s) {
  return s.coords(v);
}

struct MeetJoin {
  Subspace intersection;
  Subspace sum;
};

/// Zassenhaus: row-reduce [[S1 | S1], [S2 | 0]]; rows with zero left half
/// carry the intersection in their right half.
inline MeetJoin subspace_meet_join(const Subspace& s1, const Subspace& s2) {
  const std::size_t n = s1.ambient_dim();
  if (s2.ambient_dim() != n)
    throw PreconditionError("ambient dimension mismatch: " + std::to_string(n) + " vs " +
                            std::to_string(s2.ambient_dim()));
  EchelonBuilder builder(2 * n);
  for (const auto& b : s1.basis()) {
    Vector row(b);
    row.insert(row.end(), b.begin(), b.end());
    builder.insert(std::move(row));
  }
  for (const auto& b : s2.basis()) {
    Vector row(b);
    row.resize(2 * n, Rational(0));
    builder.insert(std::move(row));
  }
  const Subspace joint = builder.build();
  std::vector<Vector> sum, meet;
  for (std::size_t i = 0; i < joint.dim(); ++i) {
    const Vector& row = joint.basis()[i];
    if (joint.pivots()[i] < n)
      sum.emplace_back(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(n));
    else
      meet.emplace_back(row.begin() + static_cast<std::ptrdiff_t>(n), row.end());
  }
  return {span_canonical(meet, n), span_canonical(sum, n)};
}

inline Subspace row_space(const Matrix& m) {
  EchelonBuilder builder(m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    builder.insert(m.row(r));
  return builder.build();
}

inline std::size_t rank(const Matrix& m) { return row_space(m).dim(); }

/// Null space {v : m v = 0}.
inline Subspace kernel(const Matrix& m) {
  const Subspace rs = row_space(m);
  const std::size_t n = m.cols();
  std::vector<bool> is_pivot(n, false);
  for (std::size_t p : rs.pivots())
    is_pivot[p] = true;
  std::vector<Vector> basis;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free])
      continue;
    Vector v = zero_vector(n);
    v[free] = 1;
    for (std::size_t i = 0; i < rs.dim(); ++i)
      v[rs.pivots()[i]] = -rs.basis()[i][free];
    basis.push_back(std::move(v));
  }
  return span_canonical(basis, n);
}

/// Image of a subspace under a linear map.
inline Subspace image(const Matrix& m, const Subspace& s) {
  std::vector<Vector> imgs;
  imgs.reserve(s.dim());
  for (const auto& b : s.basis())
    imgs.push_back(m.apply(b));
  return span_canonical(imgs, m.rows());
}

/// Vertical concatenation.
inline Matrix stack(const Matrix& top, const Matrix& bottom) {
  if (top.cols() != bottom.cols())
    throw PreconditionError("stack: column count mismatch");
  Vector entries = top.entries();
  entries.insert(entries.end(), bottom.entries().begin(), bottom.entries().end());
  return Matrix(top.rows() + bottom.rows(), top.cols(), std::move(entries));
}

} // namespace derivkit
