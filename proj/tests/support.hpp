#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "derivkit/derivkit.hpp"

namespace testgen {

using namespace derivkit;

/// Small-integer generators, seeded per test so failures replay.
class Gen {
public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  std::size_t index(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
  bool coin() { return integer(0, 1) == 1; }

  Rational rational() {
    const int den = integer(1, 3);
    return make_rational(integer(-4, 4), den);
  }

  Vector vector(std::size_t n, int sparsity = 0) {
    Vector v(n);
    for (auto& x : v)
      x = (sparsity > 0 && integer(0, sparsity) != 0) ? Rational(0) : rational();
    return v;
  }

  std::vector<Vector> vectors(std::size_t count, std::size_t n) {
    std::vector<Vector> out;
    for (std::size_t i = 0; i < count; ++i)
      out.push_back(vector(n));
    return out;
  }

  Subspace subspace(std::size_t ambient, std::size_t gens) { return span_canonical(vectors(gens, ambient), ambient); }

  Matrix matrix(std::size_t r, std::size_t c) {
    Matrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j)
        m(i, j) = integer(-3, 3);
    return m;
  }

  /// Random polynomial in (x, y) of total degree <= d.
  MultiPoly poly_xy(unsigned d, int terms) {
    MultiPoly p(doubled_variables(1));
    for (int t = 0; t < terms; ++t) {
      const unsigned i = static_cast<unsigned>(integer(0, static_cast<int>(d)));
      const unsigned j = static_cast<unsigned>(integer(0, static_cast<int>(d - i)));
      p.add_term({i, j}, rational());
    }
    return p;
  }

  /// Random polynomial with p(x, x) = 0: (x - y) q plus a random member part.
  MultiPoly diagonal_vanishing(unsigned max_degree) {
    const auto vars = doubled_variables(1);
    const MultiPoly diff = MultiPoly::variable(vars, 0) - MultiPoly::variable(vars, 1);
    return diff * poly_xy(max_degree - 1, integer(1, 6));
  }

  /// Monic polynomial of degree d with small integer coefficients, low to high.
  Vector monic(std::size_t d) {
    Vector c(d + 1);
    for (std::size_t i = 0; i < d; ++i)
      c[i] = integer(-2, 2);
    c[d] = 1;
    return c;
  }

  /// A small associative algebra of dimension <= 4 built from the standard constructions.
  FinAlg algebra() {
    switch (integer(0, 5)) {
    case 0:
      return poly_quotient(monic(1 + index(4)));
    case 1:
      return diagonal_algebra(1 + index(3));
    case 2:
      return direct_sum(poly_quotient(monic(1 + index(2))), poly_quotient(monic(1 + index(2))));
    case 3:
      return matrix_algebra(2);
    case 4:
      return opposite(poly_quotient(monic(2 + index(2))));
    default:
      return unitization(diagonal_algebra(1 + index(2)));
    }
  }

  std::mt19937_64& engine() { return rng_; }

private:
  std::mt19937_64 rng_;
};

inline Vector v(std::initializer_list<int> xs) {
  Vector out;
  for (int x : xs)
    out.emplace_back(x);
  return out;
}

inline Matrix mat(std::size_t r, std::size_t c, std::initializer_list<int> xs) { return Matrix(r, c, v(xs)); }

/// e_ij of M_n (1-based), flattened.
inline Vector unit(std::size_t n, std::size_t i, std::size_t j) { return unit_vector(n * n, (i - 1) * n + (j - 1)); }

} // namespace testgen
