#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <vector>

#include "derivkit/bimodule.hpp"

namespace derivkit {

/// All signed permutation matrices of size n (order 2^n n!).
inline std::vector<Matrix> signed_permutations(std::size_t n) {
  std::vector<Matrix> out;
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    for (std::size_t signs = 0; signs < (std::size_t{1} << n); ++signs) {
      Matrix g(n, n);
      for (std::size_t i = 0; i < n; ++i)
        g(perm[i], i) = (signs >> i) & 1 ? -1 : 1;
      out.push_back(std::move(g));
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

/// (1/|G|) sum g x g^-1 over signed permutations. The group has trivial
/// commutant in M_n, so the result is (tr x / n) I.
inline Matrix signed_perm_average(std::size_t n, const Matrix& x, std::size_t max_n = 4) {
  if (n == 0 || n > max_n)
    throw PreconditionError("signed_perm_average: n = " + std::to_string(n) + " outside 1.." +
                            std::to_string(max_n));
  if (x.rows() != n || x.cols() != n)
    throw PreconditionError("signed_perm_average: input is not " + std::to_string(n) + "x" + std::to_string(n));
  const auto group = signed_permutations(n);
  Matrix acc(n, n);
  for (const auto& g : group)
    acc += g * x * g.transpose();
  return Rational(1, static_cast<unsigned long>(group.size())) * acc;
}

/// Tr over the second tensor factor of an (nm) x (nm) matrix.
inline Matrix partial_trace_second(std::size_t n, std::size_t m, const Matrix& x) {
  Matrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t a = 0; a < m; ++a)
        out(i, j) += x(i * m + a, j * m + a);
  return out;
}

/// Average over 1_n (x) g, g a signed permutation of size m: the expectation
/// of M_n (x) M_m onto M_n (x) 1_m.
inline Matrix factor_expectation(std::size_t n, std::size_t m, const Matrix& x, std::size_t max_m = 4) {
  if (x.rows() != n * m || x.cols() != n * m)
    throw PreconditionError("factor_expectation: input must be " + std::to_string(n * m) + "x" +
                            std::to_string(n * m));
  if (m == 0 || m > max_m)
    throw PreconditionError("factor_expectation: m outside 1.." + std::to_string(max_m));
  const Matrix id = Matrix::identity(n);
  const auto group = signed_permutations(m);
  Matrix acc(n * m, n * m);
  for (const auto& g : group) {
    const Matrix u = kron(id, g);
    acc += u * x * u.transpose();
  }
  return Rational(1, static_cast<unsigned long>(group.size())) * acc;
}

struct ExpectationMembership {
  bool member = false;
  std::optional<Vector> coords;   ///< coordinates of E - I in the echelon basis of D_Lie(M_n)
  bool summands_in_nlie = false;  ///< each g (x) g^-1 - 1 (x) 1 satisfies both product conditions
  bool average_matches = false;   ///< (1/|G|) sum (L_g R_{g^-1} - I) equals E - I
  bool kills_scalars = false;
  std::size_t dlie_dim = 0;
};

/// E - I, with E the signed-permutation average on M_n, lies in the algebra
/// generated by the inner derivations of M_n acting on itself.
inline ExpectationMembership expectation_in_dlie(std::size_t n) {
  if (n < 2 || n > 3)
    throw PreconditionError("expectation_in_dlie: n must be 2 or 3");
  const FinAlg mn = matrix_algebra(n);
  const BimoduleRep rep = regular_bimodule(mn);
  const std::size_t m = n * n;
  std::vector<Vector> cols;
  for (std::size_t j = 0; j < m; ++j)
    cols.push_back(flatten(signed_perm_average(n, unflatten(n, unit_vector(m, j)))));
  const Matrix e_minus_i = Matrix::from_columns(m, cols) - Matrix::identity(m);

  ExpectationMembership r;
  const Subspace dlie = dlie_vs_mlie(rep).dlie;
  r.dlie_dim = dlie.dim();
  r.coords = dlie.coords(flatten(e_minus_i));
  r.member = r.coords.has_value();
  r.kills_scalars = e_minus_i.apply(flatten(Matrix::identity(n))) == zero_vector(m);

  const Subspace nlie = nlie_subspace(mn);
  const auto group = signed_permutations(n);
  const Vector one = *mn.unit();
  r.summands_in_nlie = true;
  Matrix acc(m, m);
  for (const auto& g : group) {
    const Vector gv = flatten(g), ginv = flatten(g.transpose());
    if (!nlie.contains(simple_tensor(gv, ginv) - simple_tensor(one, one)))
      r.summands_in_nlie = false;
    acc += rep.left_of(gv) * rep.right_of(ginv) - Matrix::identity(m);
  }
  r.average_matches = (Rational(1, static_cast<unsigned long>(group.size())) * acc == e_minus_i);
  return r;
}

} // namespace derivkit
