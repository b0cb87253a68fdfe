#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "derivkit/linear.hpp"

namespace derivkit {

struct Term {
  std::size_t index;
  Rational coeff;

  friend bool operator==(const Term&, const Term&) = default;
};

/// Sparse coordinate vector, sorted by index, no zero coefficients.
using SparseVector = std::vector<Term>;

inline SparseVector sparsify(std::span<const Rational> v) {
  SparseVector out;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (sgn(v[i]) != 0)
      out.push_back({i, v[i]});
  return out;
}

/// Algebra elements are coordinate vectors in the algebra's basis.
using AlgElement = Vector;

/// Finite-dimensional associative algebra over Q given by structure
/// constants: table(i, j) holds the coordinates of e_i * e_j.
class FinAlg {
public:
  using Product = std::tuple<std::size_t, std::size_t, Vector>;

  FinAlg() = default;

  FinAlg(std::vector<std::string> labels, std::vector<SparseVector> table,
         std::optional<Vector> unit = std::nullopt)
      : labels_(std::move(labels)), table_(std::move(table)), unit_(std::move(unit)) {
    const std::size_t d = labels_.size();
    if (table_.size() != d * d)
      throw PreconditionError("structure table must have dim^2 entries");
    for (const auto& entry : table_)
      for (const auto& t : entry)
        if (t.index >= d)
          throw PreconditionError("structure constant index out of range");
    if (unit_ && unit_->size() != d)
      throw DimensionMismatch(0, d, unit_->size());
  }

  /// Builds from a list of nonzero products (i, j, coords); omitted pairs are zero.
  static FinAlg from_products(std::vector<std::string> labels, const std::vector<Product>& products,
                              std::optional<Vector> unit = std::nullopt) {
    const std::size_t d = labels.size();
    std::vector<SparseVector> table(d * d);
    for (std::size_t n = 0; n < products.size(); ++n) {
      const auto& [i, j, coords] = products[n];
      if (i >= d || j >= d)
        throw PreconditionError("product " + std::to_string(n) + " references basis index out of range");
      if (coords.size() != d)
        throw DimensionMismatch(n, d, coords.size());
      table[i * d + j] = sparsify(coords);
    }
    return FinAlg(std::move(labels), std::move(table), std::move(unit));
  }

  std::size_t dim() const noexcept { return labels_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::optional<Vector>& unit() const noexcept { return unit_; }
  bool is_unital() const noexcept { return unit_.has_value(); }

  const SparseVector& basis_product(std::size_t i, std::size_t j) const { return table_[i * dim() + j]; }

  Vector basis_element(std::size_t i) const { return unit_vector(dim(), i); }

  const Vector& require_unit(const char* what) const {
    if (!unit_)
      throw PreconditionError(std::string(what) + " requires a unital algebra");
    return *unit_;
  }

  Vector multiply(std::span<const Rational> u, std::span<const Rational> v) const {
    const std::size_t d = dim();
    if (u.size() != d)
      throw DimensionMismatch(0, d, u.size());
    if (v.size() != d)
      throw DimensionMismatch(1, d, v.size());
    Vector out = zero_vector(d);
    const SparseVector su = sparsify(u);
    const SparseVector sv = sparsify(v);
    Rational c;
    for (const auto& a : su)
      for (const auto& b : sv) {
        const auto& prod = table_[a.index * d + b.index];
        if (prod.empty())
          continue;
        c = a.coeff * b.coeff;
        for (const auto& t : prod)
          out[t.index] += c * t.coeff;
      }
    return out;
  }

  /// Matrix of x -> a x.
  Matrix left_multiplication(std::span<const Rational> a) const {
    std::vector<Vector> cols;
    for (std::size_t j = 0; j < dim(); ++j)
      cols.push_back(multiply(a, basis_element(j)));
    return Matrix::from_columns(dim(), cols);
  }

  /// Matrix of x -> x a.
  Matrix right_multiplication(std::span<const Rational> a) const {
    std::vector<Vector> cols;
    for (std::size_t j = 0; j < dim(); ++j)
      cols.push_back(multiply(basis_element(j), a));
    return Matrix::from_columns(dim(), cols);
  }

  /// Nonzero products in (i, j) order.
  std::vector<Product> products() const {
    std::vector<Product> out;
    for (std::size_t i = 0; i < dim(); ++i)
      for (std::size_t j = 0; j < dim(); ++j) {
        const auto& p = basis_product(i, j);
        if (p.empty())
          continue;
        Vector coords = zero_vector(dim());
        for (const auto& t : p)
          coords[t.index] = t.coeff;
        out.emplace_back(i, j, std::move(coords));
      }
    return out;
  }

  friend bool operator==(const FinAlg&, const FinAlg&) = default;

private:
  std::vector<std::string> labels_;
  std::vector<SparseVector> table_;
  std::optional<Vector> unit_;
};

inline Vector power(const FinAlg& a, std::span<const Rational> x, std::size_t k) {
  Vector result = a.require_unit("power");
  for (std::size_t i = 0; i < k; ++i)
    result = a.multiply(result, x);
  return result;
}

/// Evaluates sum_i coeffs[i] x^i by Horner's rule.
inline Vector evaluate_polynomial(const FinAlg& a, std::span<const Rational> coeffs,
                                  std::span<const Rational> x) {
  const Vector& one = a.require_unit("polynomial evaluation");
  Vector acc = zero_vector(a.dim());
  for (std::size_t i = coeffs.size(); i-- > 0;) {
    acc = a.multiply(acc, x);
    axpy(acc, coeffs[i], one);
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Standard constructions

/// M_n with matrix units e_ij at index i*n + j; e_ij e_kl = delta_jk e_il.
inline FinAlg matrix_algebra(std::size_t n) {
  if (n == 0)
    throw PreconditionError("matrix_algebra: n must be positive");
  const std::size_t d = n * n;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      labels.push_back(n < 10 ? "e" + std::to_string(i + 1) + std::to_string(j + 1)
                              : "e" + std::to_string(i + 1) + "_" + std::to_string(j + 1));
  std::vector<SparseVector> table(d * d);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t l = 0; l < n; ++l)
        table[(i * n + j) * d + (j * n + l)] = {{i * n + l, Rational(1)}};
  Vector unit = zero_vector(d);
  for (std::size_t i = 0; i < n; ++i)
    unit[i * n + i] = 1;
  return FinAlg(std::move(labels), std::move(table), std::move(unit));
}

/// D_n: diagonal matrices, basis of orthogonal idempotents.
inline FinAlg diagonal_algebra(std::size_t n) {
  if (n == 0)
    throw PreconditionError("diagonal_algebra: n must be positive");
  std::vector<std::string> labels;
  std::vector<SparseVector> table(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    labels.push_back("d" + std::to_string(i + 1));
    table[i * n + i] = {{i, Rational(1)}};
  }
  return FinAlg(std::move(labels), std::move(table), Vector(n, Rational(1)));
}

/// Q[x]/(p) with basis 1, x, ..., x^{deg-1}. `coeffs[i]` is the coefficient
/// of x^i in p; p must be monic of degree >= 1.
inline FinAlg poly_quotient(std::span<const Rational> coeffs) {
  if (coeffs.size() < 2)
    throw PreconditionError("poly_quotient: modulus must have degree >= 1");
  if (coeffs.back() != 1)
    throw PreconditionError("poly_quotient: modulus must be monic");
  const std::size_t d = coeffs.size() - 1;
  // powers[k] = x^k reduced mod p, for k < 2d - 1
  std::vector<Vector> powers;
  Vector cur = unit_vector(d, 0);
  for (std::size_t k = 0; k + 1 < 2 * d; ++k) {
    powers.push_back(cur);
    // multiply by x: shift up, fold the x^d coefficient back in
    Vector next = zero_vector(d);
    for (std::size_t i = 0; i + 1 < d; ++i)
      next[i + 1] = cur[i];
    const Rational top = cur[d - 1];
    for (std::size_t i = 0; i < d; ++i)
      next[i] -= top * coeffs[i];
    cur = std::move(next);
  }
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < d; ++i)
    labels.push_back(i == 0 ? "1" : (i == 1 ? "x" : "x^" + std::to_string(i)));
  std::vector<SparseVector> table(d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      table[i * d + j] = sparsify(powers[i + j]);
  return FinAlg(std::move(labels), std::move(table), unit_vector(d, 0));
}

/// The image of x in poly_quotient(coeffs).
inline Vector poly_quotient_generator(std::span<const Rational> coeffs) {
  const std::size_t d = coeffs.size() - 1;
  if (d == 1)
    return Vector{-coeffs[0]};
  return unit_vector(d, 1);
}

inline FinAlg direct_sum(const FinAlg& a, const FinAlg& b) {
  const std::size_t da = a.dim(), db = b.dim(), d = da + db;
  std::vector<std::string> labels;
  for (const auto& l : a.labels())
    labels.push_back(l + "@1");
  for (const auto& l : b.labels())
    labels.push_back(l + "@2");
  std::vector<SparseVector> table(d * d);
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < da; ++j)
      table[i * d + j] = a.basis_product(i, j);
  for (std::size_t i = 0; i < db; ++i)
    for (std::size_t j = 0; j < db; ++j) {
      SparseVector shifted = b.basis_product(i, j);
      for (auto& t : shifted)
        t.index += da;
      table[(da + i) * d + (da + j)] = std::move(shifted);
    }
  std::optional<Vector> unit;
  if (a.unit() && b.unit()) {
    Vector u = *a.unit();
    u.insert(u.end(), b.unit()->begin(), b.unit()->end());
    unit = std::move(u);
  }
  return FinAlg(std::move(labels), std::move(table), std::move(unit));
}

/// Adjoins a new unit at index 0: (s, a)(t, b) = (st, sb + ta + ab).
inline FinAlg unitization(const FinAlg& a) {
  const std::size_t d = a.dim() + 1;
  std::vector<std::string> labels{"1"};
  for (const auto& l : a.labels())
    labels.push_back(l);
  std::vector<SparseVector> table(d * d);
  for (std::size_t i = 0; i < d; ++i) {
    table[0 * d + i] = {{i, Rational(1)}};
    table[i * d + 0] = {{i, Rational(1)}};
  }
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) {
      SparseVector shifted = a.basis_product(i, j);
      for (auto& t : shifted)
        t.index += 1;
      table[(i + 1) * d + (j + 1)] = std::move(shifted);
    }
  return FinAlg(std::move(labels), std::move(table), unit_vector(d, 0));
}

/// Same space, reversed multiplication.
inline FinAlg opposite(const FinAlg& a) {
  const std::size_t d = a.dim();
  std::vector<SparseVector> table(d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      table[i * d + j] = a.basis_product(j, i);
  return FinAlg(a.labels(), std::move(table), a.unit());
}

namespace detail {

inline std::string describe(const FinAlg& a, std::span<const Rational> v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (sgn(v[i]) == 0)
      continue;
    if (!out.empty())
      out += " + ";
    out += to_string(v[i]) + "*" + a.labels()[i];
  }
  return out.empty() ? "0" : out;
}

} // namespace detail

/// A / I for a two-sided ideal I. The quotient basis is the set of
/// non-pivot coordinates of I's echelon basis.
inline FinAlg quotient(const FinAlg& a, const Subspace& ideal) {
  const std::size_t d = a.dim();
  if (ideal.ambient_dim() != d)
    throw PreconditionError("quotient: ideal lives in dimension " + std::to_string(ideal.ambient_dim()) +
                            ", algebra has dimension " + std::to_string(d));
  for (const auto& b : ideal.basis())
    for (std::size_t i = 0; i < d; ++i) {
      const Vector e = a.basis_element(i);
      for (const Vector& w : {a.multiply(e, b), a.multiply(b, e)})
        if (!ideal.contains(w))
          throw PreconditionError("quotient: subspace is not a two-sided ideal; product " +
                                  detail::describe(a, w) + " leaves it");
    }
  std::vector<bool> is_pivot(d, false);
  for (std::size_t p : ideal.pivots())
    is_pivot[p] = true;
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < d; ++i)
    if (!is_pivot[i])
      keep.push_back(i);
  auto reduce = [&](Vector v) {
    for (std::size_t r = 0; r < ideal.dim(); ++r) {
      const Rational f = v[ideal.pivots()[r]];
      axpy(v, -f, ideal.basis()[r]);
    }
    Vector out;
    for (std::size_t i : keep)
      out.push_back(v[i]);
    return out;
  };
  const std::size_t q = keep.size();
  std::vector<std::string> labels;
  for (std::size_t i : keep)
    labels.push_back(a.labels()[i]);
  std::vector<SparseVector> table(q * q);
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = 0; j < q; ++j)
      table[i * q + j] = sparsify(reduce(a.multiply(a.basis_element(keep[i]), a.basis_element(keep[j]))));
  std::optional<Vector> unit;
  if (a.unit())
    unit = reduce(*a.unit());
  return FinAlg(std::move(labels), std::move(table), std::move(unit));
}

/// B (x) B^op with basis e_i (x) e_j at index i*dim + j and product
/// (a (x) b)(c (x) d) = ac (x) db.
inline FinAlg tensor_square_op(const FinAlg& b) {
  const Vector& u = b.require_unit("tensor_square_op");
  const std::size_t d = b.dim(), D = d * d;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      labels.push_back(b.labels()[i] + "|" + b.labels()[j]);
  std::vector<SparseVector> table(D * D);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = 0; k < d; ++k) {
      const auto& left = b.basis_product(i, k);
      if (left.empty())
        continue;
      for (std::size_t j = 0; j < d; ++j)
        for (std::size_t l = 0; l < d; ++l) {
          const auto& right = b.basis_product(l, j);
          if (right.empty())
            continue;
          SparseVector entry;
          for (const auto& p : left)
            for (const auto& q : right)
              entry.push_back({p.index * d + q.index, p.coeff * q.coeff});
          std::sort(entry.begin(), entry.end(),
                    [](const Term& x, const Term& y) { return x.index < y.index; });
          table[(i * d + j) * D + (k * d + l)] = std::move(entry);
        }
    }
  Vector unit = zero_vector(D);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      unit[i * d + j] = u[i] * u[j];
  return FinAlg(std::move(labels), std::move(table), std::move(unit));
}

/// Coordinates of a (x) c in tensor_square_op(b).
inline Vector simple_tensor(std::span<const Rational> a, std::span<const Rational> c) {
  Vector out(a.size() * c.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < c.size(); ++j)
      out[i * c.size() + j] = a[i] * c[j];
  return out;
}

/// a (x) 1 - 1 (x) a
inline Vector derivation_generator(const FinAlg& b, std::span<const Rational> a) {
  const Vector& u = b.require_unit("derivation_generator");
  return simple_tensor(a, u) - simple_tensor(u, a);
}

struct MultiplicationMaps {
  Matrix m;    ///< sum a_k (x) b_k -> sum a_k b_k
  Matrix m_op; ///< sum a_k (x) b_k -> sum b_k a_k
};

inline MultiplicationMaps multiplication_maps(const FinAlg& b) {
  b.require_unit("multiplication_maps");
  const std::size_t d = b.dim();
  Matrix m(d, d * d), m_op(d, d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      for (const auto& t : b.basis_product(i, j))
        m(t.index, i * d + j) = t.coeff;
      for (const auto& t : b.basis_product(j, i))
        m_op(t.index, i * d + j) = t.coeff;
    }
  return {std::move(m), std::move(m_op)};
}

struct ValidationReport {
  bool associative = true;
  std::optional<std::array<std::size_t, 3>> failing_triple;
  bool has_unit = false;
  bool unit_valid = true;
  std::optional<std::size_t> unit_failure; ///< basis index where the unit axiom fails

  bool valid() const noexcept { return associative && unit_valid; }
};

inline ValidationReport validate_algebra(const FinAlg& a) {
  ValidationReport report;
  const std::size_t d = a.dim();
  for (std::size_t i = 0; i < d && report.associative; ++i)
    for (std::size_t j = 0; j < d && report.associative; ++j) {
      const Vector ij = a.multiply(a.basis_element(i), a.basis_element(j));
      for (std::size_t k = 0; k < d; ++k) {
        const Vector jk = a.multiply(a.basis_element(j), a.basis_element(k));
        if (a.multiply(ij, a.basis_element(k)) != a.multiply(a.basis_element(i), jk)) {
          report.associative = false;
          report.failing_triple = std::array<std::size_t, 3>{i, j, k};
          break;
        }
      }
    }
  if (a.unit()) {
    report.has_unit = true;
    for (std::size_t i = 0; i < d; ++i) {
      const Vector e = a.basis_element(i);
      if (a.multiply(*a.unit(), e) != e || a.multiply(e, *a.unit()) != e) {
        report.unit_valid = false;
        report.unit_failure = i;
        break;
      }
    }
  }
  return report;
}

} // namespace derivkit
