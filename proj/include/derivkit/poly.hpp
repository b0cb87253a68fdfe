#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "derivkit/algebra.hpp"

namespace derivkit {

using Exponents = std::vector<unsigned>;

/// Sparse commutative polynomial over Q. Terms are kept in descending
/// lexicographic order of exponent vectors (declared variable order).
class MultiPoly {
public:
  using TermMap = std::map<Exponents, Rational, std::greater<>>;

  MultiPoly() = default;
  explicit MultiPoly(std::vector<std::string> variables) : vars_(std::move(variables)) {}

  static MultiPoly constant(std::vector<std::string> variables, const Rational& c) {
    MultiPoly p(std::move(variables));
    p.add_term(Exponents(p.vars_.size(), 0), c);
    return p;
  }

  static MultiPoly monomial(std::vector<std::string> variables, Exponents e, const Rational& c = 1) {
    MultiPoly p(std::move(variables));
    p.add_term(std::move(e), c);
    return p;
  }

  static MultiPoly variable(std::vector<std::string> variables, std::size_t i) {
    Exponents e(variables.size(), 0);
    e.at(i) = 1;
    return monomial(std::move(variables), std::move(e));
  }

  const std::vector<std::string>& variables() const noexcept { return vars_; }
  const TermMap& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  void add_term(Exponents e, const Rational& c) {
    if (e.size() != vars_.size())
      throw PreconditionError("exponent vector has " + std::to_string(e.size()) + " entries, expected " +
                              std::to_string(vars_.size()));
    if (sgn(c) == 0)
      return;
    auto [it, inserted] = terms_.try_emplace(std::move(e), c);
    if (!inserted) {
      it->second += c;
      if (sgn(it->second) == 0)
        terms_.erase(it);
    }
  }

  Rational coefficient(const Exponents& e) const {
    const auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  static unsigned degree_of(const Exponents& e) {
    unsigned d = 0;
    for (unsigned x : e)
      d += x;
    return d;
  }

  /// Total degree; -1 for the zero polynomial.
  int total_degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_)
      d = std::max(d, static_cast<int>(degree_of(e)));
    return d;
  }

  bool is_homogeneous() const {
    std::optional<unsigned> d;
    for (const auto& [e, c] : terms_) {
      if (d && *d != degree_of(e))
        return false;
      d = degree_of(e);
    }
    return true;
  }

  MultiPoly& operator+=(const MultiPoly& o) {
    check_compatible(o);
    for (const auto& [e, c] : o.terms_)
      add_term(e, c);
    return *this;
  }

  MultiPoly& operator-=(const MultiPoly& o) {
    check_compatible(o);
    for (const auto& [e, c] : o.terms_)
      add_term(e, -c);
    return *this;
  }

  MultiPoly& operator*=(const Rational& s) {
    if (sgn(s) == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, c] : terms_)
      c *= s;
    return *this;
  }

  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const Rational& s, MultiPoly p) { return p *= s; }
  friend MultiPoly operator-(MultiPoly p) { return p *= Rational(-1); }

  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    a.check_compatible(b);
    MultiPoly out(a.vars_);
    Exponents e(a.vars_.size());
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        for (std::size_t i = 0; i < e.size(); ++i)
          e[i] = ea[i] + eb[i];
        out.add_term(e, ca * cb);
      }
    return out;
  }

  MultiPoly pow(unsigned k) const {
    MultiPoly out = constant(vars_, 1);
    for (unsigned i = 0; i < k; ++i)
      out = out * *this;
    return out;
  }

  friend bool operator==(const MultiPoly&, const MultiPoly&) = default;

private:
  void check_compatible(const MultiPoly& o) const {
    if (vars_ != o.vars_)
      throw PreconditionError("polynomials over different variable lists");
  }

  std::vector<std::string> vars_;
  TermMap terms_;
};

/// x, y for k = 1; x1..xk, y1..yk otherwise.
inline std::vector<std::string> doubled_variables(std::size_t k) {
  if (k == 1)
    return {"x", "y"};
  std::vector<std::string> v;
  for (std::size_t i = 1; i <= k; ++i)
    v.push_back("x" + std::to_string(i));
  for (std::size_t i = 1; i <= k; ++i)
    v.push_back("y" + std::to_string(i));
  return v;
}

inline std::vector<std::string> base_variables(std::size_t k) {
  if (k == 1)
    return {"x"};
  std::vector<std::string> v;
  for (std::size_t i = 1; i <= k; ++i)
    v.push_back("x" + std::to_string(i));
  return v;
}

// ---------------------------------------------------------------------------
// Text format: sums of terms c*x1^a*y2^b; the parser also accepts
// parentheses, products, integer powers and division by constants.

namespace detail {

class PolyParser {
public:
  PolyParser(std::string_view text, const std::vector<std::string>& vars) : text_(text), vars_(vars) {}

  MultiPoly parse() {
    MultiPoly p = expr();
    skip_ws();
    if (pos_ != text_.size())
      fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("polynomial text, column " + std::to_string(pos_ + 1) + ": " + what);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  MultiPoly expr() {
    MultiPoly acc(vars_);
    bool negate = false;
    if (accept('-'))
      negate = true;
    else
      accept('+');
    MultiPoly t = term();
    acc += negate ? -t : t;
    while (true) {
      if (accept('+'))
        acc += term();
      else if (accept('-'))
        acc -= term();
      else
        return acc;
    }
  }

  MultiPoly term() {
    MultiPoly acc = factor();
    while (true) {
      if (accept('*')) {
        acc = acc * factor();
      } else if (accept('/')) {
        const MultiPoly d = factor();
        if (d.total_degree() != 0)
          fail("division by a non-constant");
        acc *= 1 / d.terms().begin()->second;
      } else {
        return acc;
      }
    }
  }

  MultiPoly factor() {
    MultiPoly base = primary();
    if (accept('^')) {
      skip_ws();
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
        ++pos_;
      if (start == pos_)
        fail("expected exponent");
      base = base.pow(static_cast<unsigned>(std::stoul(std::string(text_.substr(start, pos_ - start)))));
    }
    return base;
  }

  MultiPoly primary() {
    skip_ws();
    if (pos_ >= text_.size())
      fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      MultiPoly inner = expr();
      if (!accept(')'))
        fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
        ++pos_;
      return MultiPoly::constant(vars_, Rational(mpz_class(std::string(text_.substr(start, pos_ - start)))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      const std::string name(text_.substr(start, pos_ - start));
      const auto it = std::find(vars_.begin(), vars_.end(), name);
      if (it == vars_.end()) {
        pos_ = start;
        fail("unknown variable '" + name + "'");
      }
      return MultiPoly::variable(vars_, static_cast<std::size_t>(it - vars_.begin()));
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  const std::vector<std::string>& vars_;
  std::size_t pos_ = 0;
};

} // namespace detail

inline MultiPoly parse_poly(std::string_view text, const std::vector<std::string>& variables) {
  return detail::PolyParser(text, variables).parse();
}

inline std::string format_monomial(const std::vector<std::string>& vars, const Exponents& e) {
  std::string out;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0)
      continue;
    if (!out.empty())
      out += '*';
    out += vars[i];
    if (e[i] > 1)
      out += '^' + std::to_string(e[i]);
  }
  return out;
}

/// Canonical text: leading term first, " + " / " - " separators.
inline std::string format_poly(const MultiPoly& p) {
  if (p.is_zero())
    return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : p.terms()) {
    const bool negative = sgn(c) < 0;
    const Rational mag = negative ? Rational(-c) : c;
    if (first)
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    first = false;
    const std::string mono = format_monomial(p.variables(), e);
    if (mono.empty())
      out += to_string(mag);
    else if (mag == 1)
      out += mono;
    else
      out += to_string(mag) + "*" + mono;
  }
  return out;
}

/// Splits p into homogeneous components keyed by degree.
inline std::map<unsigned, MultiPoly> uniform_components(const MultiPoly& p) {
  std::map<unsigned, MultiPoly> out;
  for (const auto& [e, c] : p.terms()) {
    auto [it, inserted] = out.try_emplace(MultiPoly::degree_of(e), MultiPoly(p.variables()));
    it->second.add_term(e, c);
  }
  return out;
}

/// Substitutes y_i := x_i in a polynomial over doubled_variables(k).
inline MultiPoly diagonal_restriction(const MultiPoly& p, std::size_t k) {
  if (p.variables() != doubled_variables(k))
    throw PreconditionError("polynomial is not over the doubled variables of k = " + std::to_string(k));
  MultiPoly out(p.variables());
  for (const auto& [e, c] : p.terms()) {
    Exponents f(2 * k, 0);
    for (std::size_t i = 0; i < k; ++i)
      f[i] = e[i] + e[k + i];
    out.add_term(std::move(f), c);
  }
  return out;
}

/// Coefficients c_0..c_n of a polynomial in a single variable.
inline Vector univariate_coefficients(const MultiPoly& f) {
  if (f.variables().size() != 1)
    throw PreconditionError("expected a polynomial in one variable");
  Vector coeffs;
  for (const auto& [e, c] : f.terms()) {
    if (coeffs.size() <= e[0])
      coeffs.resize(e[0] + 1, Rational(0));
    coeffs[e[0]] = c;
  }
  return coeffs;
}

/// Q[x]/(p) for a monic one-variable p of degree >= 1.
inline FinAlg poly_quotient(const MultiPoly& p) {
  if (p.total_degree() < 1)
    throw PreconditionError("poly_quotient: modulus must have degree >= 1");
  const Vector coeffs = univariate_coefficients(p);
  if (coeffs.back() != 1)
    throw PreconditionError("poly_quotient: modulus " + format_poly(p) + " is not monic");
  return poly_quotient(std::span<const Rational>(coeffs));
}

// ---------------------------------------------------------------------------
// Graded membership in T_Lie(P_k) = subalgebra of Q[x, y] generated by the
// differences a(x) - a(y). Its generators split into monomial differences,
// which are homogeneous, so membership is decided degree by degree.

/// Exponent vectors of total degree d in n variables, descending lex order.
inline std::vector<Exponents> slice_monomials(std::size_t n, unsigned d) {
  std::vector<Exponents> out;
  Exponents e(n, 0);
  std::function<void(std::size_t, unsigned)> rec = [&](std::size_t i, unsigned left) {
    if (n == 0)
      return;
    if (i + 1 == n) {
      e[i] = left;
      out.push_back(e);
      return;
    }
    for (unsigned a = left + 1; a-- > 0;) {
      e[i] = a;
      rec(i + 1, left - a);
    }
  };
  rec(0, d);
  return out;
}

/// Coordinates of a homogeneous degree-d polynomial in the slice basis.
inline Vector slice_vector(const MultiPoly& p, unsigned d) {
  const auto basis = slice_monomials(p.variables().size(), d);
  std::map<Exponents, std::size_t> index;
  for (std::size_t i = 0; i < basis.size(); ++i)
    index.emplace(basis[i], i);
  Vector v = zero_vector(basis.size());
  for (const auto& [e, c] : p.terms()) {
    const auto it = index.find(e);
    if (it == index.end())
      throw PreconditionError("polynomial has a term outside the degree-" + std::to_string(d) + " slice");
    v[it->second] = c;
  }
  return v;
}

inline MultiPoly from_slice_vector(const std::vector<std::string>& vars, unsigned d, std::span<const Rational> v) {
  const auto basis = slice_monomials(vars.size(), d);
  MultiPoly p(vars);
  for (std::size_t i = 0; i < basis.size(); ++i)
    p.add_term(basis[i], v[i]);
  return p;
}

namespace detail {

inline std::size_t binomial(std::size_t n, std::size_t r) {
  if (r > n)
    return 0;
  std::size_t out = 1;
  for (std::size_t i = 1; i <= r; ++i)
    out = out * (n - r + i) / i;
  return out;
}

/// m(x) - m(y) for a monomial m in the base variables.
inline MultiPoly monomial_difference(std::size_t k, const Exponents& m) {
  const auto vars = doubled_variables(k);
  Exponents ex(2 * k, 0), ey(2 * k, 0);
  for (std::size_t i = 0; i < k; ++i) {
    ex[i] = m[i];
    ey[k + i] = m[i];
  }
  MultiPoly p = MultiPoly::monomial(vars, ex);
  p.add_term(ey, -1);
  return p;
}

} // namespace detail

/// Span of all products prod_j (m_j(x) - m_j(y)) with sum deg m_j = d, in
/// the monomial basis of the degree-d slice of Q[x_1..x_k, y_1..y_k].
inline Subspace graded_tlie_component(std::size_t k, unsigned d) {
  if (k == 0)
    throw PreconditionError("graded_tlie_component: k must be >= 1");
  const std::size_t slice_dim = detail::binomial(d + 2 * k - 1, 2 * k - 1);
  if (d == 0)
    return Subspace::zero(slice_dim);
  // T_Lie lies inside the diagonal-vanishing slice; stop once it is filled.
  const std::size_t upper = slice_dim - detail::binomial(d + k - 1, k - 1);

  struct Part {
    unsigned degree;
    MultiPoly diff;
  };
  std::vector<Part> parts;
  for (unsigned e = 1; e <= d; ++e)
    for (const auto& m : slice_monomials(k, e))
      parts.push_back({e, detail::monomial_difference(k, m)});

  EchelonBuilder builder(slice_dim);
  const auto vars = doubled_variables(k);
  // Multisets of parts (non-increasing part index) with total degree d.
  std::function<void(std::size_t, unsigned, const MultiPoly&)> rec = [&](std::size_t max_part, unsigned left,
                                                                         const MultiPoly& acc) {
    if (builder.dim() == upper)
      return;
    if (left == 0) {
      builder.insert(slice_vector(acc, d));
      return;
    }
    for (std::size_t i = max_part + 1; i-- > 0;)
      if (parts[i].degree <= left)
        rec(i, left - parts[i].degree, acc * parts[i].diff);
  };
  rec(parts.size() - 1, d, MultiPoly::constant(vars, 1));
  return builder.build();
}

struct PolyMembership {
  bool member = false;
  unsigned degree = 0;                ///< first failing degree when not a member
  std::optional<MultiPoly> component; ///< the failing homogeneous component
};

/// Decides p in T_Lie(P_k) for p over doubled_variables(k).
inline PolyMembership decide_membership_poly(const MultiPoly& p, std::size_t k) {
  if (k == 0 || p.variables() != doubled_variables(k))
    throw PreconditionError("polynomial variables must be the doubled convention for k = " + std::to_string(k));
  for (const auto& [deg, comp] : uniform_components(p)) {
    if (deg == 0 || !graded_tlie_component(k, deg).contains(slice_vector(comp, deg)))
      return {false, deg, comp};
  }
  return {true, 0, std::nullopt};
}

} // namespace derivkit
