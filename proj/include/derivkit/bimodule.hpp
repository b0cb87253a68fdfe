#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "derivkit/certificate.hpp"

namespace derivkit {

/// A finite-dimensional bimodule: left and right action of each basis
/// element of the algebra, as module_dim x module_dim matrices.
struct BimoduleRep {
  FinAlg algebra;
  std::size_t module_dim = 0;
  std::vector<Matrix> left;
  std::vector<Matrix> right;

  Matrix left_of(std::span<const Rational> a) const { return combine(left, a); }
  Matrix right_of(std::span<const Rational> a) const { return combine(right, a); }

  ModuleActions actions() const { return {left, right}; }

private:
  Matrix combine(const std::vector<Matrix>& mats, std::span<const Rational> a) const {
    if (a.size() != algebra.dim())
      throw DimensionMismatch(0, algebra.dim(), a.size());
    Matrix out(module_dim, module_dim);
    for (std::size_t i = 0; i < a.size(); ++i)
      if (sgn(a[i]) != 0)
        out += a[i] * mats[i];
    return out;
  }
};

inline Vector flatten(const Matrix& m) { return m.entries(); }

inline Matrix unflatten(std::size_t n, const Vector& v) { return Matrix(n, n, v); }

/// B acting on itself by left and right multiplication.
inline BimoduleRep regular_bimodule(const FinAlg& b) {
  BimoduleRep rep{b, b.dim(), {}, {}};
  for (std::size_t i = 0; i < b.dim(); ++i) {
    rep.left.push_back(b.left_multiplication(b.basis_element(i)));
    rep.right.push_back(b.right_multiplication(b.basis_element(i)));
  }
  return rep;
}

/// M_n as a bimodule over the diagonal algebra D_n.
inline BimoduleRep diagonal_on_matrices(std::size_t n) {
  const FinAlg mn = matrix_algebra(n);
  BimoduleRep rep{diagonal_algebra(n), n * n, {}, {}};
  for (std::size_t i = 0; i < n; ++i) {
    const Vector eii = unit_vector(n * n, i * n + i);
    rep.left.push_back(mn.left_multiplication(eii));
    rep.right.push_back(mn.right_multiplication(eii));
  }
  return rep;
}

struct BimoduleValidation {
  bool left_homomorphism = true;
  bool right_antihomomorphism = true;
  bool actions_commute = true;
  bool ok() const noexcept { return left_homomorphism && right_antihomomorphism && actions_commute; }
};

inline BimoduleValidation validate_bimodule(const BimoduleRep& rep) {
  BimoduleValidation v;
  const FinAlg& b = rep.algebra;
  for (std::size_t i = 0; i < b.dim(); ++i)
    for (std::size_t j = 0; j < b.dim(); ++j) {
      const Vector prod = b.multiply(b.basis_element(i), b.basis_element(j));
      if (rep.left_of(prod) != rep.left[i] * rep.left[j])
        v.left_homomorphism = false;
      if (rep.right_of(prod) != rep.right[j] * rep.right[i])
        v.right_antihomomorphism = false;
      if (rep.left[i] * rep.right[j] != rep.right[j] * rep.left[i])
        v.actions_commute = false;
    }
  return v;
}

/// sum t_ij L_{e_i} R_{e_j}
inline Matrix represent_elementary(std::span<const Rational> t, const BimoduleRep& rep) {
  const std::size_t d = rep.algebra.dim();
  if (t.size() != d * d)
    throw DimensionMismatch(0, d * d, t.size());
  Matrix out(rep.module_dim, rep.module_dim);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      if (sgn(t[i * d + j]) != 0)
        out += t[i * d + j] * (rep.left[i] * rep.right[j]);
  return out;
}

struct DlieMlieReport {
  Subspace dlie; ///< flattened operators, ambient module_dim^2
  Subspace mlie;
  bool equal = false;
  bool dlie_in_mlie = false;
};

inline DlieMlieReport dlie_vs_mlie(const BimoduleRep& rep) {
  const FinAlg& b = rep.algebra;
  b.require_unit("dlie_vs_mlie");
  const std::size_t m = rep.module_dim;
  std::vector<Vector> gens;
  for (std::size_t i = 0; i < b.dim(); ++i)
    gens.push_back(flatten(rep.left[i] - rep.right[i]));
  DlieMlieReport r;
  r.dlie = generated_subalgebra_with(m * m, gens, [&](const Vector& x, const Vector& y) {
             return flatten(unflatten(m, x) * unflatten(m, y));
           }).space;
  std::vector<Vector> images;
  const Subspace nlie = nlie_subspace(b);
  for (const auto& t : nlie.basis())
    images.push_back(flatten(represent_elementary(t, rep)));
  r.mlie = span_canonical(images, m * m);
  r.equal = (r.dlie == r.mlie);
  r.dlie_in_mlie = r.dlie.is_subspace_of(r.mlie);
  return r;
}

/// Gen(f) -> L_{f(a)} - R_{f(a)} on a bimodule, for a fixed algebra element a.
class ElementaryOperatorContext {
public:
  using Value = Matrix;

  ElementaryOperatorContext(BimoduleRep rep, Vector a) : rep_(std::move(rep)), a_(std::move(a)) {
    if (a_.size() != rep_.algebra.dim())
      throw DimensionMismatch(0, rep_.algebra.dim(), a_.size());
  }

  Value zero() const { return Matrix(rep_.module_dim, rep_.module_dim); }
  Value gen(const MultiPoly& f) const {
    const Vector fa = evaluate_polynomial(rep_.algebra, univariate_coefficients(f), a_);
    return rep_.left_of(fa) - rep_.right_of(fa);
  }
  Value add(Value x, const Value& y) const { return std::move(x) + y; }
  Value scale(const Rational& c, Value x) const { return c * std::move(x); }
  Value multiply(const Value& x, const Value& y) const { return x * y; }

private:
  BimoduleRep rep_;
  Vector a_;
};

// ---------------------------------------------------------------------------
// D_n acting on M_n

using Position = std::pair<std::size_t, std::size_t>;

struct HadamardReport {
  std::size_t dim = 0;
  std::vector<Position> positions; ///< off-diagonal positions of the multipliers spanning the image
  bool image_is_hadamard = false;  ///< every image operator is diagonal in the matrix-unit basis
  bool kills_diagonal = false;     ///< every image operator annihilates D_n
  bool matches_multipliers = false; ///< image = all multipliers vanishing on the diagonal
  bool ok() const noexcept { return image_is_hadamard && kills_diagonal && matches_multipliers; }
};

/// N_Lie(D_n) acting on M_n is entrywise multiplication by matrices with
/// zero diagonal.
inline HadamardReport hadamard_check(std::size_t n) {
  if (n < 2)
    throw PreconditionError("hadamard_check: n must be >= 2");
  const BimoduleRep rep = diagonal_on_matrices(n);
  const std::size_t m = n * n;
  std::vector<Vector> images;
  HadamardReport r;
  r.image_is_hadamard = true;
  r.kills_diagonal = true;
  const Subspace nlie = nlie_subspace(rep.algebra);
  for (const auto& t : nlie.basis()) {
    const Matrix op = represent_elementary(t, rep);
    for (std::size_t p = 0; p < m; ++p)
      for (std::size_t q = 0; q < m; ++q)
        if (p != q && sgn(op(p, q)) != 0)
          r.image_is_hadamard = false;
    for (std::size_t i = 0; i < n; ++i)
      if (sgn(op(i * n + i, i * n + i)) != 0)
        r.kills_diagonal = false;
    images.push_back(flatten(op));
  }
  const Subspace image = span_canonical(images, m * m);
  std::vector<Vector> multipliers;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k)
      if (j != k) {
        r.positions.emplace_back(j, k);
        const std::size_t idx = j * n + k;
        multipliers.push_back(flatten(matrix_unit(m, idx, idx)));
      }
  r.dim = image.dim();
  r.matches_multipliers = (image == span_canonical(multipliers, m * m));
  return r;
}

/// S = G + Z(K): G a subspace of the diagonal (coordinates d_1..d_n), K a set
/// of off-diagonal positions.
struct LieSubmoduleForm {
  Subspace diagonal_part;
  std::set<Position> positions;

  friend bool operator==(const LieSubmoduleForm&, const LieSubmoduleForm&) = default;
};

/// G + Z(K) as a subspace of M_n (flattened row-major).
inline Subspace reconstruct(const LieSubmoduleForm& form, std::size_t n) {
  std::vector<Vector> vs;
  for (const auto& g : form.diagonal_part.basis()) {
    Vector v = zero_vector(n * n);
    for (std::size_t i = 0; i < n; ++i)
      v[i * n + i] = g[i];
    vs.push_back(std::move(v));
  }
  for (const auto& [j, k] : form.positions) {
    if (j == k)
      throw PreconditionError("Z(K) positions must be off-diagonal");
    vs.push_back(unit_vector(n * n, j * n + k));
  }
  return span_canonical(vs, n * n);
}

inline Subspace diagonal_matrices(std::size_t n) {
  std::vector<Vector> vs;
  for (std::size_t i = 0; i < n; ++i)
    vs.push_back(unit_vector(n * n, i * n + i));
  return span_canonical(vs, n * n);
}

inline std::vector<Vector> flatten_all(std::size_t n, const std::vector<Matrix>& gens) {
  std::vector<Vector> out;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (gens[i].rows() != n || gens[i].cols() != n)
      throw DimensionMismatch(i, n * n, gens[i].rows() * gens[i].cols());
    out.push_back(flatten(gens[i]));
  }
  return out;
}

/// Lie D_n-submodule of M_n generated by gens, in the form G + Z(K).
inline LieSubmoduleForm classify_dn_submodule(std::size_t n, const std::vector<Matrix>& gens) {
  if (n == 0)
    throw PreconditionError("classify_dn_submodule: n must be positive");
  const BimoduleRep rep = diagonal_on_matrices(n);
  const Subspace closure = lie_closure(rep.algebra, WholeAlgebra{}, rep.actions(), flatten_all(n, gens));
  const Subspace diag_part = subspace_meet_join(closure, diagonal_matrices(n)).intersection;
  LieSubmoduleForm form;
  std::vector<Vector> g;
  for (const auto& v : diag_part.basis()) {
    Vector d(n);
    for (std::size_t i = 0; i < n; ++i)
      d[i] = v[i * n + i];
    g.push_back(std::move(d));
  }
  form.diagonal_part = span_canonical(g, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k)
      if (j != k && closure.contains(unit_vector(n * n, j * n + k)))
        form.positions.emplace(j, k);
  if (reconstruct(form, n) != closure) {
    for (const auto& v : closure.basis())
      if (!reconstruct(form, n).contains(v))
        throw InternalError("Lie D_n-submodule does not split as G + Z(K); offending element " +
                            detail::describe(matrix_algebra(n), v));
    throw InternalError("Lie D_n-submodule does not split as G + Z(K)");
  }
  return form;
}

enum class LieIdealClass { Zero, Scalars, Traceless, Full };

inline std::string to_string(LieIdealClass c) {
  switch (c) {
  case LieIdealClass::Zero:
    return "Zero";
  case LieIdealClass::Scalars:
    return "Scalars";
  case LieIdealClass::Traceless:
    return "Traceless";
  case LieIdealClass::Full:
    return "Full";
  }
  return "?";
}

inline Subspace canonical_lie_ideal(std::size_t n, LieIdealClass c) {
  const std::size_t m = n * n;
  switch (c) {
  case LieIdealClass::Zero:
    return Subspace::zero(m);
  case LieIdealClass::Scalars:
    return span_canonical(std::vector<Vector>{flatten(Matrix::identity(n))}, m);
  case LieIdealClass::Traceless: {
    std::vector<Vector> vs;
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (j != k)
          vs.push_back(unit_vector(m, j * n + k));
    for (std::size_t i = 1; i < n; ++i)
      vs.push_back(flatten(matrix_unit(n, 0, 0) - matrix_unit(n, i, i)));
    return span_canonical(vs, m);
  }
  case LieIdealClass::Full:
    return Subspace::full(m);
  }
  throw InternalError("unknown Lie ideal class");
}

/// The Lie ideal of M_n generated by gens: one of 0, Q1, traceless, M_n.
inline LieIdealClass classify_lie_ideal(std::size_t n, const std::vector<Matrix>& gens) {
  if (n < 2)
    throw PreconditionError("classify_lie_ideal: n must be >= 2");
  const FinAlg mn = matrix_algebra(n);
  const Subspace closure = lie_closure(mn, WholeAlgebra{}, std::nullopt, flatten_all(n, gens));
  for (auto c : {LieIdealClass::Zero, LieIdealClass::Scalars, LieIdealClass::Traceless, LieIdealClass::Full})
    if (closure == canonical_lie_ideal(n, c))
      return c;
  throw InternalError("Lie ideal of M_" + std::to_string(n) + " of dimension " + std::to_string(closure.dim()) +
                      " matches no canonical class");
}

// ---------------------------------------------------------------------------
// Sandwich operators b -> sum lambda_{k,m} a^k b a^m

using LambdaMatrix = std::map<std::pair<unsigned, unsigned>, Rational>;

/// mu_n = sum_{k+m=n} lambda_{k,m}, indexed by n up to the largest k+m.
inline std::vector<Rational> antidiagonal_sums(const LambdaMatrix& lambda) {
  std::vector<Rational> mu;
  for (const auto& [km, c] : lambda) {
    const unsigned n = km.first + km.second;
    if (mu.size() <= n)
      mu.resize(n + 1, Rational(0));
    mu[n] += c;
  }
  return mu;
}

/// P(x, y) = sum lambda_{k,m} x^k y^m
inline MultiPoly lambda_polynomial(const LambdaMatrix& lambda) {
  MultiPoly p(doubled_variables(1));
  for (const auto& [km, c] : lambda)
    p.add_term({km.first, km.second}, c);
  return p;
}

inline Matrix matrix_power(const Matrix& a, unsigned k) {
  Matrix out = Matrix::identity(a.rows());
  for (unsigned i = 0; i < k; ++i)
    out = out * a;
  return out;
}

inline Matrix sandwich(const LambdaMatrix& lambda, const Matrix& a, const Matrix& b) {
  Matrix out(b.rows(), b.cols());
  for (const auto& [km, c] : lambda)
    out += c * (matrix_power(a, km.first) * b * matrix_power(a, km.second));
  return out;
}

/// Operator b -> sum lambda_{k,m} a^k b a^m on a bimodule, i.e. P(L_a, R_a).
inline Matrix sandwich_operator(const LambdaMatrix& lambda, const BimoduleRep& rep, std::span<const Rational> a) {
  Matrix out(rep.module_dim, rep.module_dim);
  for (const auto& [km, c] : lambda)
    out += c * (rep.left_of(power(rep.algebra, a, km.first)) * rep.right_of(power(rep.algebra, a, km.second)));
  return out;
}

/// Necessity witness: in A = Q[t]/(t^N), L = Qt is a Lie ideal (A is
/// commutative) and with a = b = t the sandwich equals sum mu_n t^(n+1).
struct LambdaWitness {
  unsigned ring_degree = 0; ///< N
  Vector value;             ///< sandwich(t, t) in the basis 1, t, ..., t^(N-1)
  bool outside_ideal = false;
};

inline LambdaWitness lambda_witness(const LambdaMatrix& lambda) {
  const auto mu = antidiagonal_sums(lambda);
  LambdaWitness w;
  w.ring_degree = static_cast<unsigned>(mu.size()) + 1; // (max k+m) + 2
  Vector modulus = zero_vector(w.ring_degree + 1);
  modulus.back() = 1;
  const FinAlg ring = poly_quotient(modulus);
  const Vector t = unit_vector(ring.dim(), 1);
  w.value = zero_vector(ring.dim());
  for (const auto& [km, c] : lambda)
    axpy(w.value, c, ring.multiply(ring.multiply(power(ring, t, km.first), t), power(ring, t, km.second)));
  w.outside_ideal = !span_canonical(std::vector<Vector>{t}, ring.dim()).contains(w.value);
  return w;
}

struct LambdaHarness {
  std::size_t checks = 0;
  std::size_t failures = 0;
  bool certificate_replays = false; ///< P(L_a, R_a) rebuilt from the decomposition of P
};

/// Samples a in M_n and b in each canonical Lie ideal of M_n and checks the
/// sandwich stays in the ideal; also replays the decomposition of P as an
/// elementary operator on M_n.
inline LambdaHarness lambda_harness(const LambdaMatrix& lambda, std::size_t n = 3, std::size_t samples = 10,
                                    std::uint64_t seed = 11) {
  LambdaHarness h;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coeff(-3, 3);
  auto random_matrix = [&] {
    Matrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        a(i, j) = coeff(rng);
    return a;
  };
  for (auto c : {LieIdealClass::Zero, LieIdealClass::Scalars, LieIdealClass::Traceless, LieIdealClass::Full}) {
    const Subspace ideal = canonical_lie_ideal(n, c);
    for (std::size_t s = 0; s < samples; ++s) {
      const Matrix a = random_matrix();
      Vector bv = zero_vector(n * n);
      for (const auto& v : ideal.basis())
        axpy(bv, Rational(coeff(rng)), v);
      ++h.checks;
      if (!ideal.contains(flatten(sandwich(lambda, a, unflatten(n, bv)))))
        ++h.failures;
    }
  }
  const BimoduleRep rep = regular_bimodule(matrix_algebra(n));
  const Vector a = flatten(random_matrix());
  const Certificate cert = decompose_one_variable(lambda_polynomial(lambda));
  h.certificate_replays =
      verify_certificate(cert, ElementaryOperatorContext(rep, a), sandwich_operator(lambda, rep, a)).pass;
  return h;
}

struct LambdaVerdict {
  bool valid = false;
  std::vector<Rational> antidiagonal_sums;
  std::optional<LambdaHarness> harness; ///< run when valid
  /// Absent when only mu_0 is nonzero: the operator is then mu_0 * id plus a
  /// valid part and preserves every subspace, so no witness exists.
  std::optional<LambdaWitness> witness;
};

/// The sandwich operator preserves every Lie ideal of every algebra iff all
/// anti-diagonal sums of lambda vanish.
inline LambdaVerdict lambda_preserver(const LambdaMatrix& lambda, std::size_t harness_samples = 10) {
  LambdaVerdict v;
  v.antidiagonal_sums = antidiagonal_sums(lambda);
  v.valid = std::all_of(v.antidiagonal_sums.begin(), v.antidiagonal_sums.end(),
                        [](const Rational& x) { return sgn(x) == 0; });
  if (v.valid) {
    v.harness = lambda_harness(lambda, 3, harness_samples);
    return v;
  }
  const bool positive_degree = std::any_of(v.antidiagonal_sums.begin() + 1, v.antidiagonal_sums.end(),
                                           [](const Rational& x) { return sgn(x) != 0; });
  if (positive_degree)
    v.witness = lambda_witness(lambda);
  return v;
}

} // namespace derivkit
