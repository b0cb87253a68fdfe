#pragma once

#include <filesystem>
#include <iostream>
#include <regex>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "derivkit/expectation.hpp"
#include "derivkit/io.hpp"

namespace derivkit::cli {

using io::json;

enum ExitCode : int { Ok = 0, Internal = 1, InputError = 2, Precondition = 3 };

namespace detail {

/// `--input` accepts either a path or the value itself.
inline std::string path_or_inline(const std::string& arg) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(arg, ec))
    return io::read_file(arg);
  return arg;
}

/// M<n>, D<n> or P:<monic polynomial in x>.
inline FinAlg standard_algebra(const std::string& name) {
  std::smatch m;
  if (std::regex_match(name, m, std::regex("M([0-9]+)")))
    return matrix_algebra(std::stoul(m[1]));
  if (std::regex_match(name, m, std::regex("D([0-9]+)")))
    return diagonal_algebra(std::stoul(m[1]));
  if (name.rfind("P:", 0) == 0)
    return poly_quotient(parse_poly(name.substr(2), base_variables(1)));
  throw ParseError("unknown standard algebra \"" + name + "\"; expected M<n>, D<n> or P:<poly>");
}

/// Smallest k such that every identifier is one of doubled_variables(k).
inline std::size_t infer_k(const std::string& text) {
  std::size_t k = 1;
  bool indexed = false;
  const std::regex ident("[A-Za-z_][A-Za-z0-9_]*");
  for (auto it = std::sregex_iterator(text.begin(), text.end(), ident); it != std::sregex_iterator(); ++it) {
    const std::string name = it->str();
    std::smatch m;
    if (std::regex_match(name, m, std::regex("[xy]([1-9][0-9]*)"))) {
      indexed = true;
      k = std::max<std::size_t>(k, std::stoul(m[1]));
    }
  }
  return indexed ? std::max<std::size_t>(k, 2) : 1;
}

inline MultiPoly read_poly(const std::string& arg, const std::vector<std::string>& vars) {
  const std::string text = path_or_inline(arg);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    MultiPoly p = io::poly_from_json(io::parse_json(text));
    if (p.variables() != vars)
      throw PreconditionError("polynomial variables do not match the doubled convention");
    return p;
  }
  return parse_poly(text, vars);
}

inline void check_degree(const MultiPoly& p, unsigned max_degree) {
  if (p.total_degree() > static_cast<int>(max_degree))
    throw PreconditionError("polynomial degree " + std::to_string(p.total_degree()) + " exceeds --max-degree " +
                            std::to_string(max_degree));
}

inline json membership_json(const PolyMembership& v) {
  if (v.member)
    return {{"verdict", "Member"}};
  return {{"verdict", "NonMember"}, {"degree", v.degree}, {"component", format_poly(*v.component)}};
}

inline json lambda_json(const LambdaVerdict& v) {
  json out = {{"verdict", v.valid ? "Valid" : "Invalid"}, {"antidiagonal_sums", io::to_json(v.antidiagonal_sums)}};
  if (v.harness)
    out["harness"] = {{"checks", v.harness->checks},
                      {"failures", v.harness->failures},
                      {"certificate_replays", v.harness->certificate_replays}};
  if (v.witness)
    out["witness"] = {{"ring", "Q[t]/(t^" + std::to_string(v.witness->ring_degree) + ")"},
                      {"a", "t"},
                      {"b", "t"},
                      {"ideal", "Q*t"},
                      {"value", io::to_json(v.witness->value)},
                      {"outside_ideal", v.witness->outside_ideal}};
  else if (!v.valid)
    out["witness"] = nullptr;
  return out;
}

/// Human-readable rendering: one "key: value" line per top-level field.
inline void print_plain(std::ostream& out, const json& j) {
  for (const auto& [k, v] : j.items())
    out << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
}

} // namespace detail

/// Runs one CLI invocation. Analyses that end in a refutation still exit 0.
inline int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"derivkit: exact computations with algebras generated by inner derivations", "derivkit"};
  app.require_subcommand(1);
  app.fallthrough();
  bool as_json = false;
  unsigned max_degree = 12;
  app.add_flag("--json", as_json, "Emit machine-readable JSON");
  app.add_option("--max-degree", max_degree, "Largest polynomial degree accepted")->capture_default_str();

  json result;

  // lie-check
  auto* lie = app.add_subcommand("lie-check", "Compare T_Lie(B) with N_Lie(B) and check the semiideal identities");
  std::string algebra_path, standard;
  std::size_t samples = 200;
  auto* alg_opt = lie->add_option("--algebra", algebra_path, "Algebra JSON file");
  lie->add_option("--standard", standard, "M<n>, D<n> or P:<poly>")->excludes(alg_opt);
  lie->add_option("--samples", samples, "Random products t1*s*t2 to test")->capture_default_str();
  lie->callback([&] {
    if (algebra_path.empty() && standard.empty())
      throw ParseError("lie-check needs --algebra or --standard");
    const FinAlg b = algebra_path.empty() ? detail::standard_algebra(standard) : io::load<io::Kind::Algebra>(algebra_path);
    const auto check = validate_algebra(b);
    if (!check.valid())
      throw PreconditionError("algebra fails validation (" +
                              std::string(check.associative ? "unit axiom" : "associativity") + ")");
    const auto verdict = decide_L_property(b);
    const auto semi = semiideal_verify(b, samples);
    result = {{"tlie_dim", verdict.tlie_dim}, {"nlie_dim", verdict.nlie_dim},
              {"verdict", verdict.equal ? "Equal" : "StrictWitness"}};
    if (verdict.witness)
      result["witness"] = io::to_json(*verdict.witness);
    result["semiideal"] = {{"left_ideal_dim", semi.left_ideal_dim},
                           {"right_ideal_dim", semi.right_ideal_dim},
                           {"meet_dim", semi.meet_dim},
                           {"left_equals_ker_m", semi.left_equals_ker_m},
                           {"right_equals_ker_m_op", semi.right_equals_ker_m_op},
                           {"meet_equals_nlie", semi.meet_equals_nlie},
                           {"samples", semi.samples},
                           {"sample_failures", semi.sample_failures}};
  });

  // poly decompose | member
  auto* poly = app.add_subcommand("poly", "Polynomial membership in T_Lie(P_k)");
  poly->require_subcommand(1);
  std::string poly_input;
  auto* decompose = poly->add_subcommand("decompose", "Certificate for p(x, y) with p(x, x) = 0");
  decompose->add_option("--input", poly_input, "Polynomial text, JSON mirror, or a file holding either")->required();
  decompose->callback([&] {
    const MultiPoly p = detail::read_poly(poly_input, doubled_variables(1));
    detail::check_degree(p, max_degree);
    const Certificate cert = decompose_one_variable(p);
    const auto replay = verify_certificate(cert, PolynomialContext{}, p);
    result = {{"input", format_poly(p)}, {"certificate", io::to_json(cert)}, {"replay", replay.pass ? "pass" : "fail"}};
  });
  std::optional<std::size_t> k_opt;
  auto* member = poly->add_subcommand("member", "Decide p in T_Lie(P_k) degree by degree");
  member->add_option("--input", poly_input, "Polynomial in x1..xk, y1..yk (x, y for k = 1)")->required();
  member->add_option("--k", k_opt, "Number of base variables (inferred when omitted)");
  member->callback([&] {
    const std::size_t k = k_opt ? *k_opt : detail::infer_k(detail::path_or_inline(poly_input));
    if (k == 0)
      throw PreconditionError("--k must be positive");
    const MultiPoly p = detail::read_poly(poly_input, doubled_variables(k));
    detail::check_degree(p, max_degree);
    result = detail::membership_json(decide_membership_poly(p, k));
    result["k"] = k;
    result["input"] = format_poly(p);
  });

  // classify lie-ideal | dn-submodule
  auto* classify = app.add_subcommand("classify", "Lie ideals of M_n and Lie D_n-submodules of M_n");
  classify->require_subcommand(1);
  std::size_t n = 0;
  std::string gens_path;
  auto* lie_ideal = classify->add_subcommand("lie-ideal", "Lie ideal of M_n generated by matrices");
  lie_ideal->add_option("--n", n, "Matrix size")->required();
  lie_ideal->add_option("--gens", gens_path, "JSON array of matrices")->required();
  lie_ideal->callback([&] {
    const auto gens = io::matrices_from_json(io::parse_json(detail::path_or_inline(gens_path)), "");
    result = {{"n", n}, {"class", to_string(classify_lie_ideal(n, gens))}};
  });
  auto* dn = classify->add_subcommand("dn-submodule", "Lie D_n-submodule of M_n generated by matrices");
  dn->add_option("--n", n, "Matrix size")->required();
  dn->add_option("--gens", gens_path, "JSON array of matrices")->required();
  dn->callback([&] {
    const auto gens = io::matrices_from_json(io::parse_json(detail::path_or_inline(gens_path)), "");
    result = io::to_json(classify_dn_submodule(n, gens));
    result["n"] = n;
  });

  // counterexample p2 | p2-cubed | f2
  auto* counter = app.add_subcommand("counterexample", "Graded refutations: p2, p2-cubed, f2");
  std::string which;
  counter->add_option("which", which, "p2, p2-cubed or f2")->required()->check(CLI::IsMember({"p2", "p2-cubed", "f2"}));
  counter->callback([&] {
    if (which == "f2") {
      const auto r = f2_refutation();
      result = detail::membership_json(r.verdict);
      result["element"] = format_tensor(r.z);
      result["image"] = format_poly(r.image);
      result["in_nlie"] = r.z_in_nlie();
      result["direct_verdict"] = r.direct.member ? "Member" : "NonMember";
      result["refuted"] = r.refuted();
      return;
    }
    const auto vars = doubled_variables(2);
    const std::string text = which == "p2" ? "(x1 - y1)*x2" : "(x1 - y1)^2*x2";
    const MultiPoly p = parse_poly(text, vars);
    result = detail::membership_json(decide_membership_poly(p, 2));
    result["element"] = format_poly(p);
  });

  // lambda-check
  auto* lambda = app.add_subcommand("lambda-check", "Does b -> sum lambda_km a^k b a^m preserve Lie ideals?");
  std::string lambda_path;
  lambda->add_option("--matrix", lambda_path, "JSON array of rows lambda[k][m]")->required();
  lambda->callback([&] {
    const auto lam = io::lambda_from_json(io::parse_json(detail::path_or_inline(lambda_path)));
    result = detail::lambda_json(lambda_preserver(lam));
  });

  // expectation
  auto* expect = app.add_subcommand("expectation", "Signed-permutation averaging on M_n and M_n (x) M_m");
  std::size_t en = 0;
  std::optional<std::size_t> em;
  std::string x_input;
  expect->add_option("--n", en, "Matrix size")->required();
  expect->add_option("--m", em, "Size of the averaged tensor factor");
  expect->add_option("--input", x_input, "Matrix JSON (omit to test E - I against D_Lie(M_n))");
  expect->callback([&] {
    if (x_input.empty()) {
      const auto r = expectation_in_dlie(en);
      result = {{"n", en}, {"member", r.member}, {"dlie_dim", r.dlie_dim},
                {"summands_in_nlie", r.summands_in_nlie}, {"average_matches", r.average_matches}};
      if (r.coords)
        result["coords"] = io::to_json(*r.coords);
      return;
    }
    const Matrix x = io::matrix_from_json(io::parse_json(detail::path_or_inline(x_input)), "");
    result = {{"result", io::to_json(em ? factor_expectation(en, *em, x) : signed_perm_average(en, x))}};
  });

  // verify-cert
  auto* verify = app.add_subcommand("verify-cert", "Replay a certificate against a target");
  std::string cert_arg, target_arg, modulus_arg;
  verify->add_option("--cert", cert_arg, "Certificate JSON or file")->required();
  verify->add_option("--target", target_arg, "Polynomial in x, y; with --modulus, a JSON coordinate vector")->required();
  verify->add_option("--modulus", modulus_arg, "Replay in Q[x]/(modulus) (x) its opposite instead of Q[x, y]");
  verify->callback([&] {
    const Certificate cert = io::certificate_from_json(io::parse_json(detail::path_or_inline(cert_arg)));
    if (modulus_arg.empty()) {
      const auto r = verify_certificate(cert, PolynomialContext{}, detail::read_poly(target_arg, doubled_variables(1)));
      result = {{"result", r.pass ? "pass" : "fail"}, {"residual", format_poly(r.residual)}};
      return;
    }
    const auto ctx = quotient_context(parse_poly(modulus_arg, base_variables(1)));
    const Vector target = io::vector_from_json(io::parse_json(detail::path_or_inline(target_arg)), "target");
    if (target.size() != ctx.square().dim())
      throw PreconditionError("target has " + std::to_string(target.size()) + " coordinates, expected " +
                              std::to_string(ctx.square().dim()));
    const auto r = verify_certificate(cert, ctx, target);
    result = {{"result", r.pass ? "pass" : "fail"}, {"residual", io::to_json(r.residual)}};
  });

  std::vector<std::string> args(argv.rbegin(), argv.rend());
  try {
    app.parse(std::move(args));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return Ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return Ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return InputError;
  } catch (const ParseError& e) {
    err << "input error: " << e.what() << "\n";
    return InputError;
  } catch (const PreconditionError& e) {
    err << "precondition violated: " << e.what() << "\n";
    return Precondition;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return Internal;
  }
  if (as_json)
    out << io::dump(result);
  else
    detail::print_plain(out, result);
  return Ok;
}

} // namespace derivkit::cli
