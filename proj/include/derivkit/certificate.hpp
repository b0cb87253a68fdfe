#pragma once

#include <type_traits>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "derivkit/derivations.hpp"
#include "derivkit/poly.hpp"

namespace derivkit {

/// Expression tree over generator differences. Gen(f) stands for
/// f(x) - f(y), or its image in whatever context the tree is replayed in.
class Certificate {
public:
  enum class Kind { Gen, Scale, Sum, Product };

  static Certificate gen(MultiPoly f) {
    if (f.variables() != base_variables(1))
      throw PreconditionError("certificate generators are polynomials in x");
    Certificate c(Kind::Gen);
    c.gen_ = std::move(f);
    return c;
  }

  static Certificate scale(Rational s, Certificate child) {
    Certificate c(Kind::Scale);
    c.scale_ = std::move(s);
    c.children_.push_back(std::move(child));
    return c;
  }

  static Certificate sum(std::vector<Certificate> children) {
    Certificate c(Kind::Sum);
    c.children_ = std::move(children);
    return c;
  }

  static Certificate product(std::vector<Certificate> children) {
    if (children.empty())
      throw PreconditionError("empty product in certificate");
    Certificate c(Kind::Product);
    c.children_ = std::move(children);
    return c;
  }

  Kind kind() const noexcept { return kind_; }
  const MultiPoly& generator() const noexcept { return gen_; }
  const Rational& factor() const noexcept { return scale_; }
  const std::vector<Certificate>& children() const noexcept { return children_; }

  std::size_t node_count() const {
    std::size_t n = 1;
    for (const auto& c : children_)
      n += c.node_count();
    return n;
  }

  friend bool operator==(const Certificate&, const Certificate&) = default;

private:
  explicit Certificate(Kind k) : kind_(k) {}

  Kind kind_;
  MultiPoly gen_;
  Rational scale_;
  std::vector<Certificate> children_;
};

/// Replays a certificate in a context providing zero(), gen(f), add(a, b),
/// scale(c, a) and multiply(a, b).
template <typename Context>
typename Context::Value evaluate(const Certificate& cert, const Context& ctx) {
  switch (cert.kind()) {
  case Certificate::Kind::Gen:
    return ctx.gen(cert.generator());
  case Certificate::Kind::Scale:
    return ctx.scale(cert.factor(), evaluate(cert.children().front(), ctx));
  case Certificate::Kind::Sum: {
    auto acc = ctx.zero();
    for (const auto& c : cert.children())
      acc = ctx.add(std::move(acc), evaluate(c, ctx));
    return acc;
  }
  case Certificate::Kind::Product: {
    auto acc = evaluate(cert.children().front(), ctx);
    for (std::size_t i = 1; i < cert.children().size(); ++i)
      acc = ctx.multiply(acc, evaluate(cert.children()[i], ctx));
    return acc;
  }
  }
  throw InternalError("unknown certificate node");
}

/// Gen(f) -> f(x) - f(y) in Q[x, y].
struct PolynomialContext {
  using Value = MultiPoly;

  Value zero() const { return MultiPoly(doubled_variables(1)); }

  Value gen(const MultiPoly& f) const {
    MultiPoly out(doubled_variables(1));
    for (const auto& [e, c] : f.terms()) {
      out.add_term({e[0], 0}, c);
      out.add_term({0, e[0]}, -c);
    }
    return out;
  }

  Value add(Value a, const Value& b) const { return a += b; }
  Value scale(const Rational& c, Value a) const { return a *= c; }
  Value multiply(const Value& a, const Value& b) const { return a * b; }
};

/// Gen(f) -> f(g) (x) 1 - 1 (x) f(g) inside B (x) B^op, for a fixed g in B.
class TensorAlgebraContext {
public:
  using Value = Vector;

  TensorAlgebraContext(FinAlg algebra, Vector generator)
      : algebra_(std::move(algebra)), square_(tensor_square_op(algebra_)), generator_(std::move(generator)) {
    if (generator_.size() != algebra_.dim())
      throw DimensionMismatch(0, algebra_.dim(), generator_.size());
  }

  const FinAlg& algebra() const noexcept { return algebra_; }
  const FinAlg& square() const noexcept { return square_; }

  Value zero() const { return zero_vector(square_.dim()); }
  Value gen(const MultiPoly& f) const {
    const Vector coeffs = univariate_coefficients(f);
    return derivation_generator(algebra_, evaluate_polynomial(algebra_, coeffs, generator_));
  }
  Value add(Value a, const Value& b) const { return std::move(a) + b; }
  Value scale(const Rational& c, const Value& a) const { return scaled(c, a); }
  Value multiply(const Value& a, const Value& b) const { return square_.multiply(a, b); }

private:
  FinAlg algebra_;
  FinAlg square_;
  Vector generator_;
};

template <typename Value>
struct VerifyResult {
  bool pass = false;
  Value residual; ///< evaluation minus target
};

template <typename Context>
VerifyResult<typename Context::Value> verify_certificate(const Certificate& cert, const Context& ctx,
                                                         const typename Context::Value& target) {
  auto value = evaluate(cert, ctx);
  auto residual = ctx.add(std::move(value), ctx.scale(Rational(-1), target));
  bool pass;
  if constexpr (std::is_same_v<typename Context::Value, MultiPoly>)
    pass = residual.is_zero();
  else if constexpr (std::is_same_v<typename Context::Value, Matrix>)
    pass = residual.is_zero();
  else
    pass = is_zero(residual);
  return {pass, std::move(residual)};
}

// ---------------------------------------------------------------------------
// Constructive decomposition in one variable

namespace detail {

/// q / (x - y) for a homogeneous q of degree n in (x, y) with q(x, x) = 0.
/// Writing q = sum a_i x^i y^(n-i), the quotient has b_i = -(a_0 + ... + a_i).
inline MultiPoly divide_by_difference(const MultiPoly& q, unsigned n) {
  MultiPoly u(q.variables());
  Rational running = 0;
  for (unsigned i = 0; i < n; ++i) {
    running += q.coefficient({i, n - i});
    u.add_term({i, n - 1 - i}, -running);
  }
  running += q.coefficient({n, 0});
  if (sgn(running) != 0)
    throw InternalError("exact division by (x - y) left a remainder");
  return u;
}

inline Rational coefficient_sum(const MultiPoly& p) {
  Rational s = 0;
  for (const auto& [e, c] : p.terms())
    s += c;
  return s;
}

/// x^(n-1) + x^(n-2) y + ... + y^(n-1)
inline MultiPoly complete_homogeneous(unsigned n) {
  MultiPoly h(doubled_variables(1));
  for (unsigned i = 0; i < n; ++i)
    h.add_term({i, n - 1 - i}, 1);
  return h;
}

inline Certificate scaled_gen(const Rational& c, MultiPoly f) {
  Certificate g = Certificate::gen(std::move(f));
  return c == 1 ? g : Certificate::scale(c, std::move(g));
}

/// q homogeneous of degree n >= 1, vanishing on the diagonal. Induction on n:
/// with u = q/(x - y) and lambda = s(u)/n, q = lambda (x^n - y^n) + (x - y) r
/// where r = u - lambda h_{n-1} is homogeneous of degree n - 1 with s(r) = 0.
inline Certificate decompose_uniform(const MultiPoly& q, unsigned n) {
  const auto x = base_variables(1);
  if (n == 1)
    return scaled_gen(q.coefficient({1, 0}), MultiPoly::variable(x, 0));
  const MultiPoly u = divide_by_difference(q, n);
  const Rational lambda = coefficient_sum(u) / n;
  const MultiPoly r = u - lambda * complete_homogeneous(n);
  std::vector<Certificate> parts;
  if (sgn(lambda) != 0)
    parts.push_back(scaled_gen(lambda, MultiPoly::monomial(x, {n})));
  if (!r.is_zero())
    parts.push_back(
        Certificate::product({Certificate::gen(MultiPoly::variable(x, 0)), decompose_uniform(r, n - 1)}));
  if (parts.size() == 1)
    return std::move(parts.front());
  return Certificate::sum(std::move(parts));
}

} // namespace detail

/// Writes p(x, y) with p(x, x) = 0 as an explicit element of the algebra
/// generated by the differences f(x) - f(y).
inline Certificate decompose_one_variable(const MultiPoly& p) {
  const MultiPoly diag = diagonal_restriction(p, 1);
  if (!diag.is_zero())
    throw PreconditionError("polynomial does not vanish on the diagonal: p(x, x) = " + format_poly(diag));
  std::vector<Certificate> parts;
  for (const auto& [deg, comp] : uniform_components(p))
    parts.push_back(detail::decompose_uniform(comp, deg));
  if (parts.size() == 1)
    return std::move(parts.front());
  return Certificate::sum(std::move(parts));
}

/// For t in N_Lie(Q[x]/(q)): lift t to g(x, y), subtract c(x) = g(x, x)
/// (which lies in the ideal (q)) and decompose the lift. Replaying the
/// certificate in TensorAlgebraContext(poly_quotient(q), x) gives back t.
inline Certificate transfer_quotient(const MultiPoly& modulus, std::span<const Rational> t) {
  const FinAlg c = poly_quotient(modulus);
  const std::size_t d = c.dim();
  if (t.size() != d * d)
    throw DimensionMismatch(0, d * d, t.size());
  if (!nlie_subspace(c).contains(t))
    throw PreconditionError("element is not in N_Lie of the quotient algebra");
  const auto vars = doubled_variables(1);
  MultiPoly lift(vars);
  for (unsigned i = 0; i < d; ++i)
    for (unsigned j = 0; j < d; ++j) {
      lift.add_term({i, j}, t[i * d + j]);
      lift.add_term({i + j, 0}, -t[i * d + j]);
    }
  return decompose_one_variable(lift);
}

/// TensorAlgebraContext for poly_quotient(modulus) with generator x.
inline TensorAlgebraContext quotient_context(const MultiPoly& modulus) {
  const Vector coeffs = univariate_coefficients(modulus);
  return TensorAlgebraContext(poly_quotient(modulus), poly_quotient_generator(coeffs));
}

} // namespace derivkit
