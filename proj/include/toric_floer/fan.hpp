// Complete simplicial fans: the normal fan of a simple polytope, smoothness
// and Fano checks, primitive collections and affine chart coordinates.

#ifndef TORIC_FLOER_FAN_HPP
#define TORIC_FLOER_FAN_HPP

#include <algorithm>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "toric_floer/errors.hpp"
#include "toric_floer/polytope.hpp"
#include "toric_floer/rational.hpp"

namespace toric_floer {

/// A cone spanned by a subset of the ray generators (indices sorted).
struct Cone {
  std::vector<std::size_t> generators;

  std::size_t dim() const noexcept { return generators.size(); }
  bool contains(std::size_t j) const { return std::binary_search(generators.begin(), generators.end(), j); }

  friend bool operator==(const Cone&, const Cone&) = default;
  friend auto operator<=>(const Cone&, const Cone&) = default;
};

class Fan {
 public:
  Fan() = default;

  /// Builds a simplicial fan from its rays and maximal cones; all faces of the
  /// maximal cones are generated.  Each maximal cone must have `dim`
  /// linearly independent generators.
  Fan(std::size_t dim, std::vector<LatticeVector> rays, std::vector<Cone> max_cones)
      : dim_(dim), rays_(std::move(rays)), max_cones_(std::move(max_cones)) {
    for (auto& c : max_cones_) {
      std::sort(c.generators.begin(), c.generators.end());
      if (c.dim() != dim_) throw GeometryError("maximal cone of wrong dimension");
      IntMatrix g;
      for (auto j : c.generators) g.push_back(rays_.at(j).to_integer());
      if (determinant(g) == 0) throw GeometryError("maximal cone generators are linearly dependent");
    }
    std::sort(max_cones_.begin(), max_cones_.end());
    cones_.assign(dim_ + 1, {});
    for (const auto& mc : max_cones_) {
      for (std::size_t k = 0; k <= dim_; ++k) {
        detail::for_each_subset(dim_, k, [&](const std::vector<std::size_t>& sub) {
          Cone c;
          for (auto i : sub) c.generators.push_back(mc.generators[i]);
          cones_[k].push_back(std::move(c));
        });
      }
    }
    for (auto& level : cones_) {
      std::sort(level.begin(), level.end());
      level.erase(std::unique(level.begin(), level.end()), level.end());
    }
  }

  std::size_t dim() const noexcept { return dim_; }
  std::size_t num_rays() const noexcept { return rays_.size(); }
  const std::vector<LatticeVector>& rays() const noexcept { return rays_; }
  const LatticeVector& ray(std::size_t j) const { return rays_.at(j); }
  const std::vector<Cone>& max_cones() const noexcept { return max_cones_; }
  /// Cones of dimension k (k = 0 is the origin).
  const std::vector<Cone>& cones(std::size_t k) const { return cones_.at(k); }

  /// True iff the generator subset spans a cone of the fan, i.e. lies in some
  /// maximal cone (valid for complete simplicial fans).
  bool spans_cone(const std::vector<std::size_t>& subset) const {
    for (const auto& mc : max_cones_)
      if (std::includes(mc.generators.begin(), mc.generators.end(), subset.begin(), subset.end())) return true;
    return false;
  }

  bool is_max_cone(const Cone& c) const { return std::binary_search(max_cones_.begin(), max_cones_.end(), c); }

  /// Generator matrix (rows = generators) of a cone.
  IntMatrix generator_matrix(const Cone& c) const {
    IntMatrix g;
    for (auto j : c.generators) g.push_back(rays_.at(j).to_integer());
    return g;
  }

  /// N x n matrix of ray generators.
  IntMatrix ray_matrix() const {
    IntMatrix v;
    for (const auto& r : rays_) v.push_back(r.to_integer());
    return v;
  }

 private:
  std::size_t dim_ = 0;
  std::vector<LatticeVector> rays_;
  std::vector<Cone> max_cones_;
  std::vector<std::vector<Cone>> cones_;
};

/// Normal fan of a simple polytope: one maximal cone per vertex, spanned by
/// the normals of the facets tight there.
inline Fan normal_fan(const Polytope& p) {
  const std::size_t n = p.dim();
  std::vector<bool> used(p.num_facets(), false);
  std::vector<Cone> max_cones;
  for (const auto& v : p.vertices()) {
    if (v.active.size() != n) {
      std::string pt;
      for (const auto& x : v.point) pt += (pt.empty() ? "" : ",") + to_string(x);
      throw GeometryError("polytope is not simple at vertex (" + pt + "): " + std::to_string(v.active.size()) +
                          " facets meet there");
    }
    for (auto j : v.active) used[j] = true;
    max_cones.push_back(Cone{v.active});
  }
  for (std::size_t j = 0; j < used.size(); ++j)
    if (!used[j])
      throw GeometryError("degenerate polytope: facet " + std::to_string(j + 1) + " inequality is never active");
  std::vector<LatticeVector> rays;
  for (const auto& f : p.facets()) rays.push_back(f.normal);
  return Fan(n, std::move(rays), std::move(max_cones));
}

inline bool is_smooth(const Fan& f) {
  for (const auto& c : f.max_cones()) {
    const Integer d = determinant(f.generator_matrix(c));
    if (d != 1 && d != -1) return false;
  }
  return true;
}

/// The linear functional u_sigma with <u_sigma, v_i> = 1 on the generators
/// of a maximal cone.
inline RatVector anticanonical_functional(const Fan& f, const Cone& sigma) {
  RatMatrix g;
  for (auto j : sigma.generators) g.push_back(to_rational(f.ray(j).to_integer()));
  const auto sol = solve_linear(g, RatVector(f.dim(), Rational(1)), f.dim());
  if (sol.kind != LinearSolve::Kind::unique) throw GeometryError("maximal cone is not full-dimensional");
  return sol.solution;
}

/// Strict convexity of the support function equal to 1 on every ray.
inline bool is_fano(const Fan& f) {
  for (const auto& sigma : f.max_cones()) {
    const RatVector u = anticanonical_functional(f, sigma);
    for (std::size_t k = 0; k < f.num_rays(); ++k) {
      if (sigma.contains(k)) continue;
      if (dot(u, f.ray(k).coords) >= 1) return false;
    }
  }
  return true;
}

/// Inclusion-minimal generator subsets spanning no cone, lexicographically sorted.
inline std::vector<std::vector<std::size_t>> primitive_collections(const Fan& f) {
  std::vector<std::vector<std::size_t>> out;
  const std::size_t count = f.num_rays();
  // every (dim+1)-subset is a non-cone, so minimal ones have at most dim+1 elements
  for (std::size_t k = 1; k <= std::min(count, f.dim() + 1); ++k) {
    detail::for_each_subset(count, k, [&](const std::vector<std::size_t>& s) {
      if (f.spans_cone(s)) return;
      std::vector<std::size_t> sub(s.size() - 1);
      for (std::size_t skip = 0; skip < s.size(); ++skip) {
        std::size_t w = 0;
        for (std::size_t i = 0; i < s.size(); ++i)
          if (i != skip) sub[w++] = s[i];
        if (!f.spans_cone(sub)) return;
      }
      out.push_back(s);
    });
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Number of maximal cones; equals the number of vertices of the polytope and
/// the number of torus fixed points.
inline std::size_t euler_characteristic(const Fan& f) { return f.max_cones().size(); }

/// Exponent matrix E (N x n) of the affine chart of a maximal cone:
/// E[j][a] = <v_j, u_a> where {u_a} is the basis dual to sigma's generators.
inline IntMatrix chart_exponents(const Fan& f, const Cone& sigma) {
  if (!f.is_max_cone(sigma)) throw GeometryError("chart requested for a cone that is not maximal");
  RatMatrix g;
  for (auto j : sigma.generators) g.push_back(to_rational(f.ray(j).to_integer()));
  const RatMatrix ginv = inverse(g);  // columns are the dual basis u_a
  IntMatrix e(f.num_rays(), IntVector(f.dim()));
  for (std::size_t j = 0; j < f.num_rays(); ++j)
    for (std::size_t a = 0; a < f.dim(); ++a) {
      Rational s = 0;
      for (std::size_t i = 0; i < f.dim(); ++i) s += Rational(f.ray(j)[i]) * ginv[i][a];
      if (denominator(s) != 1) throw GeometryError("chart of a non-smooth cone has fractional exponents");
      e[j][a] = numerator(s);
    }
  return e;
}

/// Affine coordinates x_a = prod_j z_j^{<v_j, u_a>} on the chart of sigma.
inline std::vector<std::complex<double>> chart_coordinates(const Fan& f, const Cone& sigma,
                                                           const std::vector<std::complex<double>>& z) {
  if (z.size() != f.num_rays()) throw GeometryError("homogeneous coordinate vector has wrong length");
  const IntMatrix e = chart_exponents(f, sigma);
  for (std::size_t j = 0; j < z.size(); ++j)
    if (!sigma.contains(j) && z[j] == std::complex<double>(0.0))
      throw GeometryError("homogeneous coordinate " + std::to_string(j + 1) + " vanishes outside the cone");
  std::vector<std::complex<double>> x(f.dim(), std::complex<double>(1.0));
  for (std::size_t a = 0; a < f.dim(); ++a)
    for (std::size_t j = 0; j < z.size(); ++j) {
      const int k = e[j][a].convert_to<int>();
      if (k == 0) continue;
      std::complex<double> w(1.0);
      for (int i = 0; i < (k < 0 ? -k : k); ++i) w *= z[j];
      x[a] *= k > 0 ? w : 1.0 / w;
    }
  return x;
}

}  // namespace toric_floer

#endif  // TORIC_FLOER_FAN_HPP
