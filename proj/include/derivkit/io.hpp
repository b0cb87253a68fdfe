#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "derivkit/bimodule.hpp"
#include "derivkit/certificate.hpp"
#include "derivkit/freealg.hpp"

namespace derivkit::io {

using json = nlohmann::json;

/// Schema violation; `field` is a JSON-pointer-like path to the offending value.
class SchemaError : public ParseError {
public:
  SchemaError(const std::string& field, const std::string& what)
      : ParseError(field + ": " + what), field_(field) {}
  const std::string& field() const noexcept { return field_; }

private:
  std::string field_;
};

/// Two-space indented JSON with a trailing newline; object keys sorted.
inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

inline json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw ParseError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw ParseError("cannot write " + path);
  out << text;
}

// ---------------------------------------------------------------------------
// Scalars, vectors, matrices

inline json to_json(const Rational& r) { return to_string(r); }

inline Rational rational_from_json(const json& j, const std::string& field) {
  if (!j.is_string())
    throw SchemaError(field, "expected a rational string such as \"1/2\"");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const ParseError& e) {
    throw SchemaError(field, e.what());
  }
}

inline json to_json(const Vector& v) {
  json a = json::array();
  for (const auto& x : v)
    a.push_back(to_json(x));
  return a;
}

inline Vector vector_from_json(const json& j, const std::string& field) {
  if (!j.is_array())
    throw SchemaError(field, "expected an array of rationals");
  Vector v;
  for (std::size_t i = 0; i < j.size(); ++i)
    v.push_back(rational_from_json(j[i], field + "/" + std::to_string(i)));
  return v;
}

inline json to_json(const Matrix& m) {
  json a = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r)
    a.push_back(to_json(m.row(r)));
  return a;
}

inline Matrix matrix_from_json(const json& j, const std::string& field) {
  if (!j.is_array())
    throw SchemaError(field, "expected an array of rows");
  std::vector<Vector> rows;
  for (std::size_t r = 0; r < j.size(); ++r)
    rows.push_back(vector_from_json(j[r], field + "/" + std::to_string(r)));
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  Vector entries;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols)
      throw SchemaError(field + "/" + std::to_string(r), "row length differs from row 0");
    entries.insert(entries.end(), rows[r].begin(), rows[r].end());
  }
  return Matrix(rows.size(), cols, std::move(entries));
}

inline std::vector<Matrix> matrices_from_json(const json& j, const std::string& field) {
  if (!j.is_array())
    throw SchemaError(field, "expected an array of matrices");
  std::vector<Matrix> out;
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(matrix_from_json(j[i], field + "/" + std::to_string(i)));
  return out;
}

// ---------------------------------------------------------------------------
// Subspace: {ambient_dim, basis}

inline json to_json(const Subspace& s) {
  json basis = json::array();
  for (const auto& b : s.basis())
    basis.push_back(to_json(b));
  return {{"ambient_dim", s.ambient_dim()}, {"basis", basis}};
}

inline std::size_t count_from_json(const json& j, const std::string& field) {
  if (!j.is_number_unsigned())
    throw SchemaError(field, "expected a non-negative integer");
  return j.get<std::size_t>();
}

inline const json& require(const json& j, const char* key, const std::string& field) {
  if (!j.is_object())
    throw SchemaError(field, "expected an object");
  if (!j.contains(key))
    throw SchemaError(field + "/" + key, "missing field");
  return j.at(key);
}

/// Accepts only an already-canonical echelon basis.
inline Subspace subspace_from_json(const json& j, const std::string& field = "") {
  const std::size_t n = count_from_json(require(j, "ambient_dim", field), field + "/ambient_dim");
  const json& jb = require(j, "basis", field);
  if (!jb.is_array())
    throw SchemaError(field + "/basis", "expected an array of vectors");
  std::vector<Vector> basis;
  for (std::size_t i = 0; i < jb.size(); ++i) {
    Vector v = vector_from_json(jb[i], field + "/basis/" + std::to_string(i));
    if (v.size() != n)
      throw SchemaError(field + "/basis/" + std::to_string(i), "length differs from ambient_dim");
    basis.push_back(std::move(v));
  }
  Subspace s = span_canonical(basis, n);
  if (s.basis() != basis)
    throw SchemaError(field + "/basis", "basis is not in reduced row-echelon form");
  return s;
}

// ---------------------------------------------------------------------------
// Algebra: {dim, labels, structure: [[i, j, [coords...]], ...], unit?}

inline json to_json(const FinAlg& a) {
  json structure = json::array();
  for (const auto& [i, j, coords] : a.products())
    structure.push_back(json::array({i, j, to_json(coords)}));
  json out = {{"dim", a.dim()}, {"labels", a.labels()}, {"structure", structure}};
  if (a.unit())
    out["unit"] = to_json(*a.unit());
  return out;
}

inline FinAlg algebra_from_json(const json& j, const std::string& field = "") {
  const std::size_t d = count_from_json(require(j, "dim", field), field + "/dim");
  const json& jl = require(j, "labels", field);
  if (!jl.is_array() || jl.size() != d)
    throw SchemaError(field + "/labels", "expected " + std::to_string(d) + " label strings");
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < d; ++i) {
    if (!jl[i].is_string())
      throw SchemaError(field + "/labels/" + std::to_string(i), "expected a string");
    labels.push_back(jl[i].get<std::string>());
  }
  const json& js = require(j, "structure", field);
  if (!js.is_array())
    throw SchemaError(field + "/structure", "expected an array of [i, j, coords]");
  std::vector<FinAlg::Product> products;
  std::optional<std::pair<std::size_t, std::size_t>> last;
  for (std::size_t n = 0; n < js.size(); ++n) {
    const std::string f = field + "/structure/" + std::to_string(n);
    if (!js[n].is_array() || js[n].size() != 3)
      throw SchemaError(f, "expected [i, j, coords]");
    const std::size_t i = count_from_json(js[n][0], f + "/0");
    const std::size_t k = count_from_json(js[n][1], f + "/1");
    if (i >= d || k >= d)
      throw SchemaError(f, "basis index out of range");
    if (last && std::pair{i, k} <= *last)
      throw SchemaError(f, "structure entries must be strictly increasing in (i, j)");
    last = std::pair{i, k};
    Vector coords = vector_from_json(js[n][2], f + "/2");
    if (coords.size() != d)
      throw SchemaError(f + "/2", "expected " + std::to_string(d) + " coordinates");
    if (is_zero(coords))
      throw SchemaError(f + "/2", "zero products must be omitted");
    products.emplace_back(i, k, std::move(coords));
  }
  std::optional<Vector> unit;
  if (j.contains("unit")) {
    unit = vector_from_json(j.at("unit"), field + "/unit");
    if (unit->size() != d)
      throw SchemaError(field + "/unit", "expected " + std::to_string(d) + " coordinates");
  }
  return FinAlg::from_products(std::move(labels), products, std::move(unit));
}

// ---------------------------------------------------------------------------
// Polynomial JSON mirror: {variables, terms: [[[exponents...], "coeff"], ...]}

inline json to_json(const MultiPoly& p) {
  json terms = json::array();
  for (const auto& [e, c] : p.terms())
    terms.push_back(json::array({e, to_json(c)}));
  return {{"variables", p.variables()}, {"terms", terms}};
}

inline MultiPoly poly_from_json(const json& j, const std::string& field = "") {
  const json& jv = require(j, "variables", field);
  if (!jv.is_array())
    throw SchemaError(field + "/variables", "expected an array of names");
  std::vector<std::string> vars;
  for (std::size_t i = 0; i < jv.size(); ++i) {
    if (!jv[i].is_string())
      throw SchemaError(field + "/variables/" + std::to_string(i), "expected a string");
    vars.push_back(jv[i].get<std::string>());
  }
  const json& jt = require(j, "terms", field);
  if (!jt.is_array())
    throw SchemaError(field + "/terms", "expected an array of [exponents, coeff]");
  MultiPoly p(vars);
  std::optional<Exponents> last;
  for (std::size_t n = 0; n < jt.size(); ++n) {
    const std::string f = field + "/terms/" + std::to_string(n);
    if (!jt[n].is_array() || jt[n].size() != 2 || !jt[n][0].is_array())
      throw SchemaError(f, "expected [exponents, coeff]");
    Exponents e;
    for (std::size_t i = 0; i < jt[n][0].size(); ++i)
      e.push_back(static_cast<unsigned>(count_from_json(jt[n][0][i], f + "/0/" + std::to_string(i))));
    if (e.size() != vars.size())
      throw SchemaError(f + "/0", "exponent vector length differs from variable count");
    if (last && !(e < *last))
      throw SchemaError(f, "terms must be in strictly descending lexicographic order");
    last = e;
    const Rational c = rational_from_json(jt[n][1], f + "/1");
    if (sgn(c) == 0)
      throw SchemaError(f + "/1", "zero coefficients must be omitted");
    p.add_term(std::move(e), c);
  }
  return p;
}

// ---------------------------------------------------------------------------
// Certificate: {"gen": "<poly in x>"} | {"scale": "c", "child": node}
//            | {"sum": [nodes]} | {"product": [nodes]}

inline json to_json(const Certificate& c) {
  switch (c.kind()) {
  case Certificate::Kind::Gen:
    return {{"gen", format_poly(c.generator())}};
  case Certificate::Kind::Scale:
    return {{"scale", to_json(c.factor())}, {"child", to_json(c.children().front())}};
  case Certificate::Kind::Sum:
  case Certificate::Kind::Product: {
    json kids = json::array();
    for (const auto& k : c.children())
      kids.push_back(to_json(k));
    return {{c.kind() == Certificate::Kind::Sum ? "sum" : "product", kids}};
  }
  }
  throw InternalError("unknown certificate node");
}

inline Certificate certificate_from_json(const json& j, const std::string& field = "") {
  if (!j.is_object() || j.empty())
    throw SchemaError(field, "expected a certificate node object");
  if (j.contains("gen")) {
    if (j.size() != 1 || !j["gen"].is_string())
      throw SchemaError(field + "/gen", "expected {\"gen\": \"<polynomial in x>\"}");
    return Certificate::gen(parse_poly(j["gen"].get<std::string>(), base_variables(1)));
  }
  if (j.contains("scale")) {
    if (j.size() != 2)
      throw SchemaError(field, "scale node takes exactly \"scale\" and \"child\"");
    return Certificate::scale(rational_from_json(j["scale"], field + "/scale"),
                              certificate_from_json(require(j, "child", field), field + "/child"));
  }
  for (const char* key : {"sum", "product"}) {
    if (!j.contains(key))
      continue;
    const json& kids = j[key];
    if (j.size() != 1 || !kids.is_array())
      throw SchemaError(field + "/" + key, "expected an array of nodes");
    std::vector<Certificate> children;
    for (std::size_t i = 0; i < kids.size(); ++i)
      children.push_back(certificate_from_json(kids[i], field + "/" + key + "/" + std::to_string(i)));
    if (std::string(key) == "product" && children.empty())
      throw SchemaError(field + "/product", "empty product");
    return std::string(key) == "sum" ? Certificate::sum(std::move(children))
                                     : Certificate::product(std::move(children));
  }
  throw SchemaError(field, "unknown certificate node; expected gen, scale, sum or product");
}

// ---------------------------------------------------------------------------
// Lambda matrix: [[lambda_00, lambda_01, ...], [lambda_10, ...], ...], rows may be ragged

inline LambdaMatrix lambda_from_json(const json& j, const std::string& field = "") {
  if (!j.is_array())
    throw SchemaError(field, "expected an array of rows");
  LambdaMatrix lambda;
  for (std::size_t k = 0; k < j.size(); ++k) {
    const Vector row = vector_from_json(j[k], field + "/" + std::to_string(k));
    for (std::size_t m = 0; m < row.size(); ++m)
      if (sgn(row[m]) != 0)
        lambda[{static_cast<unsigned>(k), static_cast<unsigned>(m)}] = row[m];
  }
  return lambda;
}

inline json to_json(const LieSubmoduleForm& form) {
  json k = json::array();
  for (const auto& [r, c] : form.positions)
    k.push_back(json::array({r + 1, c + 1}));
  return {{"G", to_json(form.diagonal_part)}, {"K", k}};
}

// ---------------------------------------------------------------------------
// Files

enum class Kind { Algebra, Subspace, Poly, Certificate, Matrix };

template <Kind K>
auto load(const std::string& path) {
  const json j = parse_json(read_file(path));
  if constexpr (K == Kind::Algebra)
    return algebra_from_json(j);
  else if constexpr (K == Kind::Subspace)
    return subspace_from_json(j);
  else if constexpr (K == Kind::Poly)
    return poly_from_json(j);
  else if constexpr (K == Kind::Certificate)
    return certificate_from_json(j);
  else
    return matrix_from_json(j, "");
}

template <typename T>
void store(const std::string& path, const T& value) {
  write_file(path, dump(to_json(value)));
}

} // namespace derivkit::io
