// Walks through the main operations on a few classical numbers.
#include <iostream>

#include "dimcf/dimcf.hpp"

using namespace dimcf;

int main() {
  RealValue phi = surd_normalize(1, 1, 2, 5);
  RealValue sqrt2 = surd_normalize(0, 1, 1, 2);

  std::cout << "phi     = " << text::format_cf(cf_expand(phi, 20)) << "\n";
  std::cout << "sqrt(2) = " << text::format_cf(cf_expand(sqrt2, 20)) << "\n";

  UniModMatrix m{{2, 1}, {1, 1}};
  RealValue image = mobius_apply(m, phi);
  std::cout << m.str() << " . phi = " << image.str() << ", equivalent to phi: "
            << to_string(gl2_equivalent(phi, image, 40).decision) << "\n";

  std::cout << "factor " << m.str() << " -> " << text::format_integers(factor_unimodular(m))
            << "\n";

  auto len = axis_length(m, 64);
  std::cout << "axis length of " << m.str() << " in [" << to_decimal(len.low(), 15) << ", "
            << to_decimal(len.high(), 15, true) << "]\n";

  for (const auto& row : legendre_audit(cf_expand(surd_normalize(1, 1, 1, 2), 10),
                                        CongruenceLevel(2), 4))
    std::cout << "T_" << row.k << " = " << row.t.str() << (row.member ? "  in" : "  not in")
              << " Gamma(2)\n";

  auto cbrt2 = PrecisionReal::kth_root(Rational(2), 3, 256);
  auto cbrt4 = PrecisionReal::kth_root(Rational(4), 3, 256);
  auto jp = jp_expand({RealValue(cbrt2), RealValue(cbrt4)}, 12);
  std::cout << "Jacobi-Perron of (cbrt 2, cbrt 4): " << text::format_jp(jp) << "\n";
  auto ratios = jp_ratios(jp_convergents(jp, 12));
  std::cout << "  step 12 ratios " << ratios[0].str() << ", " << ratios[1].str() << "\n";

  auto g = build_module({RealValue(1), RealValue(cbrt2), RealValue(cbrt4)});
  auto chain = simplicial_chain(g, 3);
  std::cout << "chain over (1, cbrt 2, cbrt 4):";
  for (const auto& c : chain.matrices) std::cout << " " << c.str();
  std::cout << "\n";
}
