#include <iostream>

#include "derivkit/derivkit.hpp"

using namespace derivkit;

int main() {
  const auto m3 = decide_L_property(matrix_algebra(3));
  std::cout << "M3: dim T_Lie = " << m3.tlie_dim << ", dim N_Lie = " << m3.nlie_dim << "\n";

  const MultiPoly p = parse_poly("x^2*y - x*y^2", doubled_variables(1));
  const Certificate cert = decompose_one_variable(p);
  std::cout << format_poly(p) << " replays: " << verify_certificate(cert, PolynomialContext{}, p).pass << "\n";

  const auto vars = doubled_variables(2);
  for (const char* text : {"(x1 - y1)*x2", "(x1 - y1)^2*x2"}) {
    const auto r = decide_membership_poly(parse_poly(text, vars), 2);
    std::cout << text << ": " << (r.member ? "member" : "not a member at degree " + std::to_string(r.degree)) << "\n";
  }

  const auto f2 = f2_refutation();
  std::cout << "z = " << format_tensor(f2.z) << "\n  image " << format_poly(f2.image)
            << (f2.direct.member ? ", z in T_Lie(F_2)" : ", z outside T_Lie(F_2)") << "\n";

  LambdaMatrix lambda;
  lambda[{1, 0}] = 1;
  lambda[{0, 1}] = -1;
  std::cout << "a b - b a preserves Lie ideals: " << lambda_preserver(lambda).valid << "\n";
}
