// Holomorphic discs with boundary on a torus fiber: classes, Maslov index,
// symplectic area, and Blaschke-product lifts for numerical verification.
//
// A disc class is a multiplicity vector (mu_1, ..., mu_N); its homogeneous
// coordinates are z_j(w) = c_j prod_k (w - a_jk) / (1 - conj(a_jk) w).

#ifndef TORIC_FLOER_DISC_HPP
#define TORIC_FLOER_DISC_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "toric_floer/errors.hpp"
#include "toric_floer/fan.hpp"
#include "toric_floer/kernel_lattice.hpp"
#include "toric_floer/polytope.hpp"
#include "toric_floer/rational.hpp"

namespace toric_floer {

using Complex = std::complex<double>;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

/// A point A of the moment polytope, held exactly (rational) or numerically.
struct FiberPoint {
  std::vector<double> coords;
  std::optional<RatVector> exact;

  static FiberPoint from_exact(RatVector a) {
    FiberPoint p;
    p.coords = to_double(a);
    p.exact = std::move(a);
    return p;
  }
  static FiberPoint from_numeric(std::vector<double> a) {
    FiberPoint p;
    p.coords = std::move(a);
    return p;
  }

  bool is_exact() const noexcept { return exact.has_value(); }
  std::size_t dim() const noexcept { return coords.size(); }
};

/// Facet distances l_j(A), exact when A is.
struct FacetDistances {
  std::vector<double> value;
  std::optional<RatVector> exact;
};

/// Computes l_j(A) for all facets; throws GeometryError unless A is interior.
inline FacetDistances facet_distances(const Polytope& p, const FiberPoint& a) {
  if (a.dim() != p.dim()) throw GeometryError("fiber point has wrong dimension");
  FacetDistances d;
  if (a.exact) {
    d.exact.emplace();
    for (std::size_t j = 0; j < p.num_facets(); ++j) {
      const Rational l = p.facet_distance(j, *a.exact);
      if (l <= 0) throw GeometryError("fiber is singular: A lies on or outside facet " + std::to_string(j + 1));
      d.exact->push_back(l);
      d.value.push_back(to_double(l));
    }
  } else {
    for (std::size_t j = 0; j < p.num_facets(); ++j) {
      const double l = p.facet_distance(j, a.coords);
      if (!(l > 0)) throw GeometryError("fiber is singular: A lies on or outside facet " + std::to_string(j + 1));
      d.value.push_back(l);
    }
  }
  return d;
}

struct DiscClass {
  std::vector<std::uint32_t> multiplicities;

  static DiscClass basic(std::size_t num_facets, std::size_t j) {
    DiscClass d{std::vector<std::uint32_t>(num_facets, 0)};
    d.multiplicities.at(j) = 1;
    return d;
  }

  std::size_t size() const noexcept { return multiplicities.size(); }
  std::uint64_t total() const {
    std::uint64_t s = 0;
    for (auto m : multiplicities) s += m;
    return s;
  }
  bool is_constant() const { return total() == 0; }

  friend DiscClass operator+(const DiscClass& a, const DiscClass& b) {
    if (a.size() != b.size()) throw GeometryError("disc classes of different length");
    DiscClass c = a;
    for (std::size_t j = 0; j < c.size(); ++j) c.multiplicities[j] += b.multiplicities[j];
    return c;
  }
  friend bool operator==(const DiscClass&, const DiscClass&) = default;
};

/// Maslov index: twice the total intersection number with the toric divisors.
inline std::int64_t maslov_index(const DiscClass& d) { return 2 * static_cast<std::int64_t>(d.total()); }

/// Symplectic area.  `over_two_pi` is the exact rational area / 2 pi when the
/// fiber point is exact.
struct DiscArea {
  double value = 0.0;
  std::optional<Rational> over_two_pi;
};

inline DiscArea disc_area(const DiscClass& d, const FiberPoint& a, const Polytope& p) {
  if (d.size() != p.num_facets()) throw GeometryError("disc class length differs from facet count");
  const FacetDistances l = facet_distances(p, a);
  DiscArea area;
  if (l.exact) {
    Rational s = 0;
    for (std::size_t j = 0; j < d.size(); ++j) s += Rational(d.multiplicities[j]) * (*l.exact)[j];
    area.over_two_pi = s;
    area.value = two_pi * to_double(s);
  } else {
    double s = 0;
    for (std::size_t j = 0; j < d.size(); ++j) s += d.multiplicities[j] * l.value[j];
    area.value = two_pi * s;
  }
  return area;
}

/// The N basic classes D(v_j) of Maslov index 2, in facet order.
inline std::vector<DiscClass> index_two_classes(const Polytope& p) {
  std::vector<DiscClass> out;
  for (std::size_t j = 0; j < p.num_facets(); ++j) out.push_back(DiscClass::basic(p.num_facets(), j));
  return out;
}

/// Exponents of D(v_j) in torus coordinates: w -> (C_1 w^{v_j^1}, ..., C_n w^{v_j^n}).
inline LatticeVector torus_coordinate_form(std::size_t j, const Fan& f) { return f.ray(j); }

/// Radii |c_j| = sqrt(2 l_j(A)) of the homogeneous coordinates over the fiber;
/// they satisfy 1/2 sum_j Q_{ja} |c_j|^2 = r_a.
inline std::vector<double> lift_fiber(const FiberPoint& a, const Polytope& p, const KernelLattice& k) {
  const FacetDistances l = facet_distances(p, a);
  std::vector<double> c;
  for (double x : l.value) c.push_back(std::sqrt(2.0 * x));
  for (std::size_t row = 0; row < k.rank(); ++row) {
    double level = 0.0, scale = 0.0;
    for (std::size_t j = 0; j < c.size(); ++j) {
      level += 0.5 * to_double(k.basis[row][j]) * c[j] * c[j];
      scale += std::abs(to_double(k.basis[row][j])) * l.value[j];
    }
    if (std::abs(level - to_double(k.reduction_level[row])) > 1e-9 * (1.0 + scale))
      throw NumericalError("lifted fiber misses the reduction level");
  }
  return c;
}

struct BlaschkeLift {
  DiscClass cls;
  std::vector<std::vector<Complex>> roots;  ///< roots[j] has cls.multiplicities[j] entries, |root| < 1
  std::vector<double> moduli;               ///< |c_j| > 0
  std::vector<double> phases;               ///< arg c_j

  /// Lift with every root at 0 and zero phases.
  static BlaschkeLift with_default_roots(DiscClass cls, std::vector<double> moduli) {
    BlaschkeLift l;
    l.roots.resize(cls.size());
    for (std::size_t j = 0; j < cls.size(); ++j) l.roots[j].assign(cls.multiplicities[j], Complex(0.0));
    l.cls = std::move(cls);
    l.moduli = std::move(moduli);
    l.phases.assign(l.moduli.size(), 0.0);
    return l;
  }

  void validate() const {
    if (roots.size() != cls.size() || moduli.size() != cls.size() || phases.size() != cls.size())
      throw GeometryError("Blaschke lift has inconsistent lengths");
    for (std::size_t j = 0; j < cls.size(); ++j) {
      if (roots[j].size() != cls.multiplicities[j]) throw GeometryError("root count differs from multiplicity");
      for (const auto& r : roots[j])
        if (!(std::abs(r) < 1.0)) throw GeometryError("Blaschke root outside the open unit disc");
      if (!(moduli[j] > 0.0)) throw GeometryError("lift moduli must be positive");
    }
  }
};

/// z_j(w) = c_j prod_k (w - a_jk) / (1 - conj(a_jk) w).
inline std::vector<Complex> evaluate_lift(const BlaschkeLift& l, Complex w) {
  std::vector<Complex> z;
  z.reserve(l.cls.size());
  for (std::size_t j = 0; j < l.cls.size(); ++j) {
    Complex v = std::polar(l.moduli[j], l.phases[j]);
    for (const auto& a : l.roots[j]) v *= (w - a) / (1.0 - std::conj(a) * w);
    z.push_back(v);
  }
  return z;
}

struct WindingRecord {
  std::size_t facet = 0;
  std::int64_t winding = 0;
  double residual = 0.0;  ///< distance of the accumulated turning number from the nearest integer
  std::size_t samples = 0;
};

/// Winding number of each boundary loop w = e^{i theta} -> z_j(w) around 0,
/// by phase unwrapping.  The sample count doubles (up to 2^20) until no phase
/// step exceeds pi/2.  Sampling starts at least as fine as the phase speed
/// bound sum_k (1 + |a_k|) / (1 - |a_k|) requires, so a fast turn near a root
/// close to the circle cannot alias into a small step.
inline std::vector<WindingRecord> winding_records(const BlaschkeLift& l, std::size_t samples) {
  l.validate();
  if (samples < 4 * (l.cls.total() + 1))
    throw NumericalError("winding needs at least 4 (sum mu + 1) boundary samples");
  constexpr std::size_t max_samples = std::size_t{1} << 20;
  std::vector<WindingRecord> out;
  for (std::size_t j = 0; j < l.cls.size(); ++j) {
    double speed = 0.0;
    for (const auto& a : l.roots[j]) speed += (1.0 + std::abs(a)) / (1.0 - std::abs(a));
    std::size_t s = samples;
    while (static_cast<double>(s) < 8.0 * speed && s < max_samples) s *= 2;
    while (true) {
      auto coord = [&](std::size_t k) {
        const Complex w = std::polar(1.0, two_pi * static_cast<double>(k) / static_cast<double>(s));
        Complex v = std::polar(l.moduli[j], l.phases[j]);
        for (const auto& a : l.roots[j]) v *= (w - a) / (1.0 - std::conj(a) * w);
        return v;
      };
      double total = 0.0;
      bool coarse = false;
      Complex prev = coord(0);
      for (std::size_t k = 1; k <= s; ++k) {
        const Complex cur = coord(k % s);
        const double step = std::arg(cur / prev);
        if (std::abs(step) > std::numbers::pi / 2) {
          coarse = true;
          break;
        }
        total += step;
        prev = cur;
      }
      if (coarse) {
        if (s >= max_samples) throw NumericalError("winding: boundary loop unresolved at 2^20 samples");
        s *= 2;
        continue;
      }
      const double turns = total / two_pi;
      const double rounded = std::round(turns);
      const double residual = std::abs(turns - rounded);
      if (residual > 1e-6)
        throw NumericalError("winding of facet " + std::to_string(j + 1) + " is not integral (residual " +
                             std::to_string(residual) + ")");
      out.push_back({j, static_cast<std::int64_t>(rounded), residual, s});
      break;
    }
  }
  return out;
}

/// Maslov index recomputed from boundary windings: 2 sum_j wind(z_j).
inline std::int64_t winding_maslov(const BlaschkeLift& l, std::size_t samples) {
  std::int64_t s = 0;
  for (const auto& r : winding_records(l, samples)) s += r.winding;
  return 2 * s;
}

}  // namespace toric_floer

#endif  // TORIC_FLOER_DISC_HPP
