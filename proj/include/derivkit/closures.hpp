#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "derivkit/algebra.hpp"

namespace derivkit {

struct ClosureResult {
  Subspace space;
  std::size_t rounds = 0; ///< expansion rounds, including the final one that added nothing
};

namespace detail {

/// Breadth-first span closure. `expand(v, emit)` must call `emit` on every
/// image of v that the closed subspace has to contain. Only vectors that
/// enlarged the span are expanded, so the loop stops once a round adds nothing.
template <typename Expand>
ClosureResult closure_rounds(std::size_t ambient, std::span<const Vector> gens, Expand&& expand) {
  EchelonBuilder builder(ambient);
  std::vector<Vector> frontier;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (gens[i].size() != ambient)
      throw DimensionMismatch(i, ambient, gens[i].size());
    if (auto r = builder.insert(gens[i]))
      frontier.push_back(std::move(*r));
  }
  std::size_t rounds = 0;
  while (!frontier.empty()) {
    ++rounds;
    std::vector<Vector> next;
    auto emit = [&](Vector w) {
      if (auto r = builder.insert(std::move(w)))
        next.push_back(std::move(*r));
    };
    for (const auto& v : frontier)
      expand(v, emit);
    frontier = std::move(next);
  }
  return {builder.build(), rounds};
}

} // namespace detail

/// Smallest subspace containing `gens` and closed under `mul`, where `mul`
/// is a bilinear associative product on Q^ambient. Closing the span under
/// left and right multiplication by the generators produces every word in
/// them, which is the whole generated subalgebra.
template <typename Mul>
ClosureResult generated_subalgebra_with(std::size_t ambient, std::span<const Vector> gens, Mul&& mul) {
  std::vector<Vector> nonzero;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (gens[i].size() != ambient)
      throw DimensionMismatch(i, ambient, gens[i].size());
    if (!is_zero(gens[i]))
      nonzero.push_back(gens[i]);
  }
  return detail::closure_rounds(ambient, nonzero, [&](const Vector& v, auto& emit) {
    for (const auto& g : nonzero) {
      emit(mul(g, v));
      emit(mul(v, g));
    }
  });
}

/// Non-unital subalgebra generated by `gens`; `adjoin_unit` adds the unit.
inline Subspace generated_subalgebra(const FinAlg& a, std::span<const Vector> gens, bool adjoin_unit = false) {
  std::vector<Vector> all(gens.begin(), gens.end());
  if (adjoin_unit)
    all.push_back(a.require_unit("unit adjunction"));
  return generated_subalgebra_with(a.dim(), all, [&](const Vector& x, const Vector& y) {
           return a.multiply(x, y);
         }).space;
}

enum class Side { Left, Right, TwoSided };

inline ClosureResult generated_ideal_rounds(const FinAlg& a, std::span<const Vector> gens, Side side) {
  const std::size_t d = a.dim();
  std::vector<Vector> basis;
  for (std::size_t i = 0; i < d; ++i)
    basis.push_back(a.basis_element(i));
  if (a.is_unital()) {
    // A*g already contains g and is closed under left multiplication, so a
    // single round of products with the basis suffices.
    std::vector<Vector> products;
    for (std::size_t gi = 0; gi < gens.size(); ++gi) {
      if (gens[gi].size() != d)
        throw DimensionMismatch(gi, d, gens[gi].size());
      const Vector& g = gens[gi];
      if (is_zero(g))
        continue;
      if (side == Side::Left)
        for (const auto& e : basis)
          products.push_back(a.multiply(e, g));
      else if (side == Side::Right)
        for (const auto& e : basis)
          products.push_back(a.multiply(g, e));
      else
        for (const auto& e : basis) {
          const Vector eg = a.multiply(e, g);
          for (const auto& f : basis)
            products.push_back(a.multiply(eg, f));
        }
    }
    return {span_canonical(products, d), products.empty() ? 0u : 1u};
  }
  return detail::closure_rounds(d, gens, [&](const Vector& v, auto& emit) {
    for (const auto& e : basis) {
      if (side != Side::Right)
        emit(a.multiply(e, v));
      if (side != Side::Left)
        emit(a.multiply(v, e));
    }
  });
}

inline Subspace generated_one_sided_ideal(const FinAlg& a, std::span<const Vector> gens, Side side) {
  return generated_ideal_rounds(a, gens, side).space;
}

/// Smallest subspace containing gens and invariant under every operator.
inline ClosureResult invariant_closure(std::size_t ambient, std::span<const Vector> gens,
                                       std::span<const Matrix> operators) {
  for (std::size_t i = 0; i < operators.size(); ++i)
    if (operators[i].rows() != ambient || operators[i].cols() != ambient)
      throw PreconditionError("operator " + std::to_string(i) + " is not " + std::to_string(ambient) +
                              "x" + std::to_string(ambient));
  return detail::closure_rounds(ambient, gens, [&](const Vector& v, auto& emit) {
    for (const auto& op : operators)
      emit(op.apply(v));
  });
}

struct WholeAlgebra {};

/// Acting set for inner derivations: the whole algebra or a subalgebra of it.
/// Closure under delta on a spanning set implies closure under its span.
using ActingSet = std::variant<WholeAlgebra, Subspace>;

/// Left and right actions of each basis element of an algebra on a module.
struct ModuleActions {
  std::vector<Matrix> left;
  std::vector<Matrix> right;
};

inline std::vector<Vector> acting_elements(const FinAlg& a, const ActingSet& acting) {
  if (const auto* sub = std::get_if<Subspace>(&acting)) {
    if (sub->ambient_dim() != a.dim())
      throw PreconditionError("acting subalgebra lives in the wrong ambient space");
    return sub->basis();
  }
  std::vector<Vector> out;
  for (std::size_t i = 0; i < a.dim(); ++i)
    out.push_back(a.basis_element(i));
  return out;
}

/// Operators x -> ax - xa for the acting elements, on A itself or on a module.
inline std::vector<Matrix> derivation_operators(const FinAlg& a, const ActingSet& acting,
                                                const std::optional<ModuleActions>& actions) {
  std::vector<Matrix> ops;
  const auto elems = acting_elements(a, acting);
  if (!actions) {
    for (const auto& e : elems)
      ops.push_back(a.left_multiplication(e) - a.right_multiplication(e));
    return ops;
  }
  if (actions->left.size() != a.dim() || actions->right.size() != a.dim())
    throw PreconditionError("module actions must list one matrix per basis element");
  const std::size_t m = actions->left.empty() ? 0 : actions->left.front().rows();
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (const Matrix* mat : {&actions->left[i], &actions->right[i]})
      if (mat->rows() != m || mat->cols() != m)
        throw PreconditionError("action matrix for basis element " + std::to_string(i) +
                                " has wrong shape");
  for (const auto& e : elems) {
    Matrix op(m, m);
    for (std::size_t i = 0; i < a.dim(); ++i)
      if (sgn(e[i]) != 0)
        op += e[i] * (actions->left[i] - actions->right[i]);
    ops.push_back(std::move(op));
  }
  return ops;
}

/// Lie submodule (or Lie ideal, without module actions) generated by gens.
inline Subspace lie_closure(const FinAlg& a, const ActingSet& acting, const std::optional<ModuleActions>& actions,
                            std::span<const Vector> gens) {
  const auto ops = derivation_operators(a, acting, actions);
  const std::size_t ambient = actions ? (actions->left.empty() ? 0 : actions->left.front().rows()) : a.dim();
  return invariant_closure(ambient, gens, ops).space;
}

} // namespace derivkit
