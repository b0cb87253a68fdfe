#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "derivkit/closures.hpp"

namespace derivkit {

/// e_i (x) 1 - 1 (x) e_i for every basis element of B.
inline std::vector<Vector> tlie_generators(const FinAlg& b) {
  std::vector<Vector> gens;
  for (std::size_t i = 0; i < b.dim(); ++i)
    gens.push_back(derivation_generator(b, b.basis_element(i)));
  return gens;
}

/// T_Lie(B) inside a precomputed tensor_square_op(B).
inline Subspace tlie_subspace(const FinAlg& b, const FinAlg& square) {
  return generated_subalgebra(square, tlie_generators(b));
}

/// The subalgebra of B (x) B^op generated by all a (x) 1 - 1 (x) a.
inline Subspace tlie_subspace(const FinAlg& b) { return tlie_subspace(b, tensor_square_op(b)); }

/// N_Lie(B) = ker m  /\  ker m_op.
inline Subspace nlie_subspace(const FinAlg& b) {
  b.require_unit("nlie_subspace");
  const auto maps = multiplication_maps(b);
  return subspace_meet_join(kernel(maps.m), kernel(maps.m_op)).intersection;
}

struct LPropertyVerdict {
  bool equal = false;
  std::size_t tlie_dim = 0;
  std::size_t nlie_dim = 0;
  std::optional<Vector> witness; ///< element of N_Lie outside T_Lie when not equal
};

/// Decides T_Lie(B) = N_Lie(B). On failure the witness is the first echelon
/// basis vector of N_Lie that is not in T_Lie.
inline LPropertyVerdict decide_L_property(const FinAlg& b) {
  const Subspace t = tlie_subspace(b);
  const Subspace n = nlie_subspace(b);
  LPropertyVerdict v;
  v.tlie_dim = t.dim();
  v.nlie_dim = n.dim();
  v.equal = (t == n);
  if (!v.equal)
    for (const auto& w : n.basis())
      if (!t.contains(w)) {
        v.witness = w;
        break;
      }
  return v;
}

struct SemiidealReport {
  std::size_t left_ideal_dim = 0;
  std::size_t right_ideal_dim = 0;
  std::size_t meet_dim = 0;
  std::size_t nlie_dim = 0;
  bool left_equals_ker_m = false;
  bool right_equals_ker_m_op = false;
  bool meet_equals_nlie = false;
  bool tlie_in_nlie = false;
  std::size_t samples = 0;
  std::size_t sample_failures = 0; ///< products t1 s t2 found outside N_Lie

  bool ok() const noexcept {
    return left_equals_ker_m && right_equals_ker_m_op && meet_equals_nlie && tlie_in_nlie &&
           sample_failures == 0;
  }
};

namespace detail {

inline Vector random_combination(const std::vector<Vector>& basis, std::size_t ambient, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coeff(-3, 3);
  Vector v = zero_vector(ambient);
  for (const auto& b : basis)
    axpy(v, Rational(coeff(rng)), b);
  return v;
}

} // namespace detail

/// Checks the one-sided ideal description of N_Lie and the inclusion
/// T (B (x) B^op) T in N on random samples.
inline SemiidealReport semiideal_verify(const FinAlg& b, std::size_t samples = 200, std::uint64_t seed = 7) {
  const FinAlg square = tensor_square_op(b);
  const auto maps = multiplication_maps(b);
  const auto gens = tlie_generators(b);
  const Subspace ker_m = kernel(maps.m);
  const Subspace ker_m_op = kernel(maps.m_op);
  const Subspace left = generated_one_sided_ideal(square, gens, Side::Left);
  const Subspace right = generated_one_sided_ideal(square, gens, Side::Right);
  const Subspace meet = subspace_meet_join(left, right).intersection;
  const Subspace nlie = subspace_meet_join(ker_m, ker_m_op).intersection;
  const Subspace tlie = tlie_subspace(b, square);

  SemiidealReport r;
  r.left_ideal_dim = left.dim();
  r.right_ideal_dim = right.dim();
  r.meet_dim = meet.dim();
  r.nlie_dim = nlie.dim();
  r.left_equals_ker_m = (left == ker_m);
  r.right_equals_ker_m_op = (right == ker_m_op);
  r.meet_equals_nlie = (meet == nlie);
  r.tlie_in_nlie = tlie.is_subspace_of(nlie);

  std::mt19937_64 rng(seed);
  std::vector<Vector> full;
  for (std::size_t i = 0; i < square.dim(); ++i)
    full.push_back(square.basis_element(i));
  for (std::size_t k = 0; k < samples; ++k) {
    const Vector t1 = detail::random_combination(tlie.basis(), square.dim(), rng);
    const Vector t2 = detail::random_combination(tlie.basis(), square.dim(), rng);
    const Vector s = detail::random_combination(full, square.dim(), rng);
    if (!nlie.contains(square.multiply(square.multiply(t1, s), t2)))
      ++r.sample_failures;
  }
  r.samples = samples;
  return r;
}

} // namespace derivkit
