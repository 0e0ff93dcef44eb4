// Hirzebruch surfaces: F_1 has no balanced fiber with trivial holonomy but W
// still has four critical points; F_2 comes with an inconsistency certificate.

#include <cstdio>

#include "toric_floer/floer.hpp"
#include "toric_floer/mirror.hpp"

using namespace toric_floer;

namespace {

Polytope trapezoid(int c, int a, int b) {
  return parse_polytope("dim 2\nnormal 1 0 offset 0\nnormal 0 1 offset 0\nnormal 0 -1 offset " + std::to_string(-a) +
                        "\nnormal -1 " + std::to_string(-c) + " offset " + std::to_string(-b - c * a) + "\n");
}

}  // namespace

int main() {
  const Polytope f1 = parse_polytope(
      "dim 2\n"
      "normal 1 0 offset -1\n"
      "normal 0 1 offset -1\n"
      "normal 0 -1 offset -1\n"
      "normal -1 1 offset -1\n");
  std::printf("F_1 trivial-holonomy fibers: %zu\n", balanced_fibers_novikov(f1).solutions.size());
  for (const auto& c : critical_points(f1).points) {
    const double a1 = c.theta.theta[0].real();
    const Complex x = std::polar(1.0, c.theta.holonomy().nu[0]) * std::exp(-a1);
    std::printf("  critical point a1 = %+.6f  X = %+.6f %+.6fi  |X^4 + X^3 - 1| = %.1e\n", a1, x.real(), x.imag(),
                std::abs(x * x * x * x + x * x * x - 1.0));
  }

  const auto r = balanced_fibers_with_holonomy(trapezoid(2, 2, 1));
  std::printf("\nF_2 (A = 2, B = 1) fibers: %zu\n", r.solutions.size());
  for (const auto& d : r.diagnostics) {
    if (!d.certificate) continue;
    std::printf("  %s, weights (", to_string(d.kind));
    for (std::size_t j = 0; j < d.certificate->size(); ++j)
      std::printf("%s%s", j ? ", " : "", to_string((*d.certificate)[j]).c_str());
    std::printf("), sum w lambda = %s\n", to_string(*d.certificate_value).c_str());
  }
}
