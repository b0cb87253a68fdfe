#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "derivkit/poly.hpp"

namespace derivkit {

/// A word in the free generators, as generator indices; empty = unit.
using Word = std::vector<unsigned>;
using Alphabet = std::vector<std::string>;

inline Word concat(const Word& u, const Word& v) {
  Word w(u);
  w.insert(w.end(), v.begin(), v.end());
  return w;
}

/// Element of the free algebra: a finite linear combination of words.
class FreePoly {
public:
  FreePoly() = default;
  explicit FreePoly(Alphabet alphabet) : alphabet_(std::move(alphabet)) {}

  static FreePoly word(Alphabet alphabet, Word w, const Rational& c = 1) {
    FreePoly p(std::move(alphabet));
    p.add_term(std::move(w), c);
    return p;
  }

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  const std::map<Word, Rational>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  void add_term(Word w, const Rational& c) {
    if (sgn(c) == 0)
      return;
    for (unsigned g : w)
      if (g >= alphabet_.size())
        throw PreconditionError("word uses a generator outside the alphabet");
    auto [it, inserted] = terms_.try_emplace(std::move(w), c);
    if (!inserted) {
      it->second += c;
      if (sgn(it->second) == 0)
        terms_.erase(it);
    }
  }

  FreePoly& operator+=(const FreePoly& o) {
    check(o);
    for (const auto& [w, c] : o.terms_)
      add_term(w, c);
    return *this;
  }

  friend FreePoly operator*(const FreePoly& a, const FreePoly& b) {
    a.check(b);
    FreePoly out(a.alphabet_);
    for (const auto& [u, cu] : a.terms_)
      for (const auto& [v, cv] : b.terms_)
        out.add_term(concat(u, v), cu * cv);
    return out;
  }

  friend bool operator==(const FreePoly&, const FreePoly&) = default;

private:
  void check(const FreePoly& o) const {
    if (alphabet_ != o.alphabet_)
      throw PreconditionError("free polynomials over different alphabets");
  }

  Alphabet alphabet_;
  std::map<Word, Rational> terms_;
};

/// Element of F (x) F^op as a map from word pairs to coefficients.
class FreeTensor {
public:
  using Key = std::pair<Word, Word>;

  FreeTensor() = default;
  explicit FreeTensor(Alphabet alphabet) : alphabet_(std::move(alphabet)) {}

  static FreeTensor simple(Alphabet alphabet, Word u, Word v, const Rational& c = 1) {
    FreeTensor t(std::move(alphabet));
    t.add_term(std::move(u), std::move(v), c);
    return t;
  }

  static FreeTensor one(Alphabet alphabet) { return simple(std::move(alphabet), {}, {}); }

  /// u (x) 1 - 1 (x) u for a single generator u.
  static FreeTensor derivation(Alphabet alphabet, unsigned g) {
    FreeTensor t(std::move(alphabet));
    t.add_term({g}, {}, 1);
    t.add_term({}, {g}, -1);
    return t;
  }

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  const std::map<Key, Rational>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  void add_term(Word u, Word v, const Rational& c) {
    if (sgn(c) == 0)
      return;
    for (const Word* w : {&u, &v})
      for (unsigned g : *w)
        if (g >= alphabet_.size())
          throw PreconditionError("word uses a generator outside the alphabet");
    auto [it, inserted] = terms_.try_emplace(Key{std::move(u), std::move(v)}, c);
    if (!inserted) {
      it->second += c;
      if (sgn(it->second) == 0)
        terms_.erase(it);
    }
  }

  FreeTensor& operator+=(const FreeTensor& o) {
    check(o);
    for (const auto& [k, c] : o.terms_)
      add_term(k.first, k.second, c);
    return *this;
  }

  FreeTensor& operator-=(const FreeTensor& o) {
    check(o);
    for (const auto& [k, c] : o.terms_)
      add_term(k.first, k.second, -c);
    return *this;
  }

  FreeTensor& operator*=(const Rational& s) {
    if (sgn(s) == 0)
      terms_.clear();
    for (auto& [k, c] : terms_)
      c *= s;
    return *this;
  }

  friend FreeTensor operator+(FreeTensor a, const FreeTensor& b) { return a += b; }
  friend FreeTensor operator-(FreeTensor a, const FreeTensor& b) { return a -= b; }
  friend FreeTensor operator*(const Rational& s, FreeTensor t) { return t *= s; }

  friend bool operator==(const FreeTensor&, const FreeTensor&) = default;

  void check(const FreeTensor& o) const {
    if (alphabet_ != o.alphabet_)
      throw PreconditionError("tensors over different alphabets");
  }

private:
  Alphabet alphabet_;
  std::map<Key, Rational> terms_;
};

/// (u (x) v)(w (x) z) = uw (x) zv, extended bilinearly.
inline FreeTensor free_tensor_multiply(const FreeTensor& s, const FreeTensor& t) {
  s.check(t);
  FreeTensor out(s.alphabet());
  for (const auto& [k1, c1] : s.terms())
    for (const auto& [k2, c2] : t.terms())
      out.add_term(concat(k1.first, k2.first), concat(k2.second, k1.second), c1 * c2);
  return out;
}

inline FreeTensor operator*(const FreeTensor& s, const FreeTensor& t) { return free_tensor_multiply(s, t); }

/// sum u v
inline FreePoly tensor_m(const FreeTensor& t) {
  FreePoly out(t.alphabet());
  for (const auto& [k, c] : t.terms())
    out.add_term(concat(k.first, k.second), c);
  return out;
}

/// sum v u
inline FreePoly tensor_m_op(const FreeTensor& t) {
  FreePoly out(t.alphabet());
  for (const auto& [k, c] : t.terms())
    out.add_term(concat(k.second, k.first), c);
  return out;
}

/// Sends every term whose left or right word contains one of the given
/// adjacent generator pairs to zero.
inline FreeTensor annihilate(const FreeTensor& t, const std::vector<std::pair<unsigned, unsigned>>& pairs) {
  auto killed = [&](const Word& w) {
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
      for (const auto& [p, q] : pairs)
        if (w[i] == p && w[i + 1] == q)
          return true;
    return false;
  };
  FreeTensor out(t.alphabet());
  for (const auto& [k, c] : t.terms())
    if (!killed(k.first) && !killed(k.second))
      out.add_term(k.first, k.second, c);
  return out;
}

/// The homomorphism F (x) F^op -> Q[x_1..x_k, y_1..y_k] induced by sending
/// generator g to base variable var_map[g].
inline MultiPoly abelianize(const FreeTensor& t, const std::vector<std::size_t>& var_map, std::size_t k) {
  if (var_map.size() != t.alphabet().size())
    throw PreconditionError("abelianize: variable map must cover the alphabet");
  for (std::size_t v : var_map)
    if (v >= k)
      throw PreconditionError("abelianize: variable index out of range");
  MultiPoly out(doubled_variables(k));
  for (const auto& [key, c] : t.terms()) {
    Exponents e(2 * k, 0);
    for (unsigned g : key.first)
      ++e[var_map[g]];
    for (unsigned g : key.second)
      ++e[k + var_map[g]];
    out.add_term(std::move(e), c);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Text formats: words "a.b.a" ("1" is the empty word), tensor terms "u|v".

inline std::string format_word(const Alphabet& alphabet, const Word& w) {
  if (w.empty())
    return "1";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i)
      out += '.';
    out += alphabet[w[i]];
  }
  return out;
}

inline Word parse_word(std::string_view text, const Alphabet& alphabet) {
  if (text == "1")
    return {};
  Word w;
  std::size_t start = 0;
  while (true) {
    const std::size_t dot = text.find('.', start);
    const std::string name(text.substr(start, dot == std::string_view::npos ? dot : dot - start));
    const auto it = std::find(alphabet.begin(), alphabet.end(), name);
    if (it == alphabet.end())
      throw ParseError("unknown generator '" + name + "' in word \"" + std::string(text) + "\"");
    w.push_back(static_cast<unsigned>(it - alphabet.begin()));
    if (dot == std::string_view::npos)
      return w;
    start = dot + 1;
  }
}

inline std::string format_tensor(const FreeTensor& t) {
  if (t.is_zero())
    return "0";
  std::string out;
  bool first = true;
  for (const auto& [k, c] : t.terms()) {
    const bool negative = sgn(c) < 0;
    const Rational mag = negative ? Rational(-c) : c;
    out += first ? (negative ? "-" : "") : (negative ? " - " : " + ");
    first = false;
    if (mag != 1)
      out += to_string(mag) + "*";
    out += format_word(t.alphabet(), k.first) + "|" + format_word(t.alphabet(), k.second);
  }
  return out;
}

/// Parses "c*u|v +/- ..." where c is an optional rational coefficient.
inline FreeTensor parse_tensor(std::string_view text, const Alphabet& alphabet) {
  FreeTensor t(alphabet);
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  };
  auto fail = [&](const std::string& what) {
    throw ParseError("tensor text, column " + std::to_string(pos + 1) + ": " + what);
  };
  skip();
  if (text.substr(pos) == "0")
    return t;
  bool first = true;
  while (true) {
    skip();
    if (pos >= text.size())
      break;
    int sign = 1;
    if (text[pos] == '+' || text[pos] == '-') {
      sign = text[pos] == '-' ? -1 : 1;
      ++pos;
      skip();
    } else if (!first) {
      fail("expected '+' or '-'");
    }
    first = false;
    std::size_t end = pos;
    while (end < text.size() && text[end] != '+' && text[end] != '-')
      ++end;
    std::string_view body = text.substr(pos, end - pos);
    while (!body.empty() && std::isspace(static_cast<unsigned char>(body.back())))
      body.remove_suffix(1);
    Rational c = sign;
    const auto star = body.find('*');
    if (star != std::string_view::npos) {
      c *= parse_rational(body.substr(0, star), false);
      body = body.substr(star + 1);
    }
    const auto bar = body.find('|');
    if (bar == std::string_view::npos)
      fail("expected 'u|v'");
    t.add_term(parse_word(body.substr(0, bar), alphabet), parse_word(body.substr(bar + 1), alphabet), c);
    pos = end;
  }
  return t;
}

// ---------------------------------------------------------------------------

struct TensorIdentityReport {
  /// 2(1|x^2 - x|x) - [(x|1 - 1|x)^2 - (x^2|1 - 1|x^2)]
  FreeTensor residual_i;
  /// P - a|x^3 after annihilating ax and xa, with
  /// P = (1|x^2 - x|x)(a|1 - 1|a)(x|1 - 1|x)
  FreeTensor residual_ii;
  /// P + a|x^3 after annihilation: P reduces to -a|x^3
  FreeTensor negated_residual_ii;
  /// P - a|x^3 without annihilation
  FreeTensor unreduced_residual_ii;

  bool ok() const { return residual_i.is_zero() && residual_ii.is_zero(); }
  /// a|x^3 lies in T_Lie either way: only the sign of P differs.
  bool membership_follows() const { return residual_i.is_zero() && negated_residual_ii.is_zero(); }
};

/// Expands 2(1|x^2 - x|x) = (x|1 - 1|x)^2 - (x^2|1 - 1|x^2) and, under
/// ax = xa = 0, the product (1|x^2 - x|x)(a|1 - 1|a)(x|1 - 1|x) against a|x^3.
inline TensorIdentityReport verify_lemma_identities() {
  TensorIdentityReport r;
  {
    const Alphabet al{"x"};
    const FreeTensor dx = FreeTensor::derivation(al, 0);
    const FreeTensor dx2 = FreeTensor::simple(al, {0, 0}, {}) - FreeTensor::simple(al, {}, {0, 0});
    const FreeTensor w = FreeTensor::simple(al, {}, {0, 0}) - FreeTensor::simple(al, {0}, {0});
    r.residual_i = Rational(2) * w - (dx * dx - dx2);
  }
  {
    const Alphabet al{"a", "x"};
    const FreeTensor w = FreeTensor::simple(al, {}, {1, 1}) - FreeTensor::simple(al, {1}, {1});
    const FreeTensor p = w * FreeTensor::derivation(al, 0) * FreeTensor::derivation(al, 1);
    const FreeTensor ax3 = FreeTensor::simple(al, {0}, {1, 1, 1});
    const std::vector<std::pair<unsigned, unsigned>> relations{{0, 1}, {1, 0}};
    const FreeTensor reduced = annihilate(p, relations);
    r.residual_ii = reduced - ax3;
    r.negated_residual_ii = reduced + ax3;
    r.unreduced_residual_ii = p - ax3;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Graded membership in T_Lie of the free algebra

/// Letter counts of u and v together.
using Multidegree = std::vector<unsigned>;

inline Multidegree multidegree(std::size_t letters, const FreeTensor::Key& key) {
  Multidegree d(letters, 0);
  for (unsigned g : key.first)
    ++d[g];
  for (unsigned g : key.second)
    ++d[g];
  return d;
}

/// w|1 - 1|w.
inline FreeTensor word_derivation(const Alphabet& al, const Word& w) {
  FreeTensor t(al);
  t.add_term(w, {}, 1);
  t.add_term({}, w, -1);
  return t;
}

namespace detail {

inline void words_within(const Multidegree& budget, Word& cur, Multidegree& used, std::vector<Word>& out) {
  for (unsigned g = 0; g < budget.size(); ++g) {
    if (used[g] == budget[g])
      continue;
    cur.push_back(g);
    ++used[g];
    out.push_back(cur);
    words_within(budget, cur, used, out);
    --used[g];
    cur.pop_back();
  }
}

inline void derivation_products(const Alphabet& al, const Multidegree& rem, const FreeTensor& acc, bool started,
                                std::vector<FreeTensor>& out) {
  if (std::all_of(rem.begin(), rem.end(), [](unsigned c) { return c == 0; })) {
    if (started)
      out.push_back(acc);
    return;
  }
  std::vector<Word> words;
  Word cur;
  Multidegree used(rem.size(), 0);
  words_within(rem, cur, used, words);
  for (const Word& w : words) {
    Multidegree next = rem;
    for (unsigned g : w)
      --next[g];
    derivation_products(al, next, acc * word_derivation(al, w), true, out);
  }
}

} // namespace detail

/// Products of word derivations with total letter counts d. Their span is the
/// multidegree-d part of T_Lie of the free algebra.
inline std::vector<FreeTensor> free_tlie_spanning_set(const Alphabet& al, const Multidegree& d) {
  if (d.size() != al.size())
    throw PreconditionError("multidegree has " + std::to_string(d.size()) + " entries for " +
                            std::to_string(al.size()) + " generators");
  std::vector<FreeTensor> out;
  detail::derivation_products(al, d, FreeTensor::one(al), false, out);
  return out;
}

struct FreeMembership {
  bool member = false;
  std::optional<Multidegree> degree;    ///< first failing multidegree
  std::optional<FreeTensor> component;  ///< the failing component
  std::size_t largest_spanning_set = 0;
};

/// Decides t in T_Lie(F) one multidegree at a time.
inline FreeMembership decide_membership_free(const FreeTensor& t, unsigned max_degree = 6) {
  const std::size_t letters = t.alphabet().size();
  std::map<Multidegree, FreeTensor> parts;
  for (const auto& [key, c] : t.terms()) {
    auto [it, inserted] = parts.try_emplace(multidegree(letters, key), FreeTensor(t.alphabet()));
    it->second.add_term(key.first, key.second, c);
  }
  FreeMembership r;
  for (const auto& [d, part] : parts) {
    const unsigned total = std::accumulate(d.begin(), d.end(), 0u);
    if (total > max_degree)
      throw PreconditionError("component of total degree " + std::to_string(total) + " exceeds the limit " +
                              std::to_string(max_degree));
    const auto spanning = total == 0 ? std::vector<FreeTensor>{} : free_tlie_spanning_set(t.alphabet(), d);
    r.largest_spanning_set = std::max(r.largest_spanning_set, spanning.size());
    std::map<FreeTensor::Key, std::size_t> index;
    for (const auto* e : {&part})
      for (const auto& kv : e->terms())
        index.try_emplace(kv.first, index.size());
    for (const auto& e : spanning)
      for (const auto& kv : e.terms())
        index.try_emplace(kv.first, index.size());
    const auto as_vector = [&](const FreeTensor& e) {
      Vector v = zero_vector(index.size());
      for (const auto& [key, c] : e.terms())
        v[index.at(key)] = c;
      return v;
    };
    EchelonBuilder span(index.size());
    for (const auto& e : spanning)
      span.insert(as_vector(e));
    if (!span.contains(as_vector(part))) {
      r.degree = d;
      r.component = part;
      return r;
    }
  }
  r.member = true;
  return r;
}

struct F2Refutation {
  FreeTensor z;           ///< (a|1 - 1|a)(b|1)(a|1 - 1|a)
  FreePoly m_of_z;        ///< sum uv, zero
  FreePoly m_op_of_z;     ///< sum vu, zero
  MultiPoly image;        ///< abelianization, (x1 - y1)^2 x2
  PolyMembership verdict; ///< membership of the image in T_Lie(P_2)
  FreeMembership direct;  ///< membership of z itself in T_Lie(F_2)

  bool z_in_nlie() const { return m_of_z.is_zero() && m_op_of_z.is_zero(); }
  /// The abelian image refutes z in T_Lie(F_2) only when it is a non-member.
  bool refuted() const { return z_in_nlie() && !verdict.member; }
};

/// Builds z in N_Lie(F_2) and tests it both through its abelian image in
/// T_Lie(P_2) and directly in the (2, 1) part of T_Lie(F_2).
inline F2Refutation f2_refutation() {
  const Alphabet al{"a", "b"};
  const FreeTensor da = FreeTensor::derivation(al, 0);
  F2Refutation r;
  r.z = da * FreeTensor::simple(al, {1}, {}) * da;
  r.m_of_z = tensor_m(r.z);
  r.m_op_of_z = tensor_m_op(r.z);
  r.image = abelianize(r.z, {0, 1}, 2);
  r.verdict = decide_membership_poly(r.image, 2);
  r.direct = decide_membership_free(r.z);
  return r;
}

} // namespace derivkit
