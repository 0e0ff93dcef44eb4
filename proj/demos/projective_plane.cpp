// Walk through CP^2: the balanced fiber, HF rank along the diagonal, and the
// critical points of the mirror superpotential.

#include <cstdio>
#include <numbers>

#include "toric_floer/floer.hpp"
#include "toric_floer/mirror.hpp"

using namespace toric_floer;

int main() {
  const Polytope p = parse_polytope(
      "dim 2\n"
      "normal 1 0 offset 0\n"
      "normal 0 1 offset 0\n"
      "normal -1 -1 offset -9\n");

  const auto balanced = balanced_fibers_with_holonomy(p);
  std::printf("balanced fibers with holonomy: %zu\n", balanced.solutions.size());
  for (const auto& s : balanced.solutions)
    std::printf("  A = (%g, %g)  nu = (%.6f, %.6f)\n", s.A.coords[0], s.A.coords[1], s.nu->nu[0], s.nu->nu[1]);

  std::printf("\nHF rank along A = (t, t), trivial holonomy:\n");
  for (int t = 1; t <= 4; ++t) {
    const auto a = FiberPoint::from_exact({Rational(t), Rational(t)});
    std::printf("  t = %d  rank %zu\n", t, hf_rank(p, a, HolonomyVector::zero(2)));
  }

  const auto crit = critical_points(p);
  std::printf("\ncritical points of W (expected %zu):\n", crit.expected);
  for (const auto& c : crit.points) {
    const auto a = c.theta.fiber();
    const auto nu = c.theta.holonomy();
    std::printf("  A = (%.6f, %.6f)  nu = (%.6f, %.6f)  |grad W| = %.1e\n", a[0], a[1], nu.nu[0], nu.nu[1],
                c.residual);
  }
}
