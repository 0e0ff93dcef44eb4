// The kernel K of Z^N -> Z^n, e_j -> v_j, and the symplectic reduction
// level r_a = -sum_j Q_{ja} lambda_j.

#ifndef TORIC_FLOER_KERNEL_LATTICE_HPP
#define TORIC_FLOER_KERNEL_LATTICE_HPP

#include <cstddef>
#include <vector>

#include "toric_floer/fan.hpp"
#include "toric_floer/polytope.hpp"
#include "toric_floer/rational.hpp"

namespace toric_floer {

struct KernelLattice {
  IntMatrix basis;               ///< (N-n) x N, rows Q_a with Q_a . V = 0, saturated, Hermite form
  RatVector reduction_level;     ///< r_a = -sum_j Q_{ja} lambda_j

  std::size_t rank() const noexcept { return basis.size(); }
};

inline KernelLattice kernel_lattice(const Fan& f, const Polytope& p) {
  KernelLattice k;
  k.basis = integer_left_kernel(f.ray_matrix());
  for (const auto& row : k.basis) {
    Rational r = 0;
    for (std::size_t j = 0; j < row.size(); ++j) r -= Rational(row[j]) * p.facet(j).offset;
    k.reduction_level.push_back(r);
  }
  return k;
}

}  // namespace toric_floer

#endif  // TORIC_FLOER_KERNEL_LATTICE_HPP
