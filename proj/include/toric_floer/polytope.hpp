// Moment polytopes { x : <x, v_j> >= lambda_j } with primitive integer
// normals and exact rational offsets, plus the text file format.

#ifndef TORIC_FLOER_POLYTOPE_HPP
#define TORIC_FLOER_POLYTOPE_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "toric_floer/errors.hpp"
#include "toric_floer/rational.hpp"

namespace toric_floer {

/// Element of the lattice N = Z^n.
struct LatticeVector {
  std::vector<std::int64_t> coords;

  std::size_t dim() const noexcept { return coords.size(); }
  std::int64_t operator[](std::size_t i) const { return coords[i]; }
  bool is_zero() const {
    return std::all_of(coords.begin(), coords.end(), [](std::int64_t x) { return x == 0; });
  }
  bool is_primitive() const {
    std::int64_t g = 0;
    for (auto x : coords) g = std::gcd(g, x < 0 ? -x : x);
    return g == 1;
  }
  IntVector to_integer() const { return IntVector(coords.begin(), coords.end()); }
  std::vector<double> to_double() const { return std::vector<double>(coords.begin(), coords.end()); }

  friend bool operator==(const LatticeVector&, const LatticeVector&) = default;
  friend auto operator<=>(const LatticeVector&, const LatticeVector&) = default;
};

/// One facet inequality <x, normal> >= offset.
struct Facet {
  LatticeVector normal;
  Rational offset;

  friend bool operator==(const Facet&, const Facet&) = default;
};

struct Vertex {
  RatVector point;
  std::vector<std::size_t> active;  ///< sorted indices of facets tight at the vertex
};

class Polytope {
 public:
  Polytope() = default;

  /// Validates and builds.  Throws ParseError (line 0) on invariant failure.
  Polytope(std::size_t dim, std::vector<Facet> facets) : dim_(dim), facets_(std::move(facets)) { validate(); }

  std::size_t dim() const noexcept { return dim_; }
  std::size_t num_facets() const noexcept { return facets_.size(); }
  const std::vector<Facet>& facets() const noexcept { return facets_; }
  const Facet& facet(std::size_t j) const { return facets_.at(j); }
  const LatticeVector& normal(std::size_t j) const { return facets_.at(j).normal; }
  const std::vector<Vertex>& vertices() const noexcept { return vertices_; }

  RatVector offsets() const {
    RatVector out;
    for (const auto& f : facets_) out.push_back(f.offset);
    return out;
  }
  std::vector<double> offsets_double() const {
    std::vector<double> out;
    for (const auto& f : facets_) out.push_back(toric_floer::to_double(f.offset));
    return out;
  }

  /// Facet distance l_j(x) = <x, v_j> - lambda_j.
  Rational facet_distance(std::size_t j, const RatVector& x) const {
    return dot(x, facets_.at(j).normal.coords) - facets_[j].offset;
  }
  double facet_distance(std::size_t j, const std::vector<double>& x) const {
    double s = -toric_floer::to_double(facets_.at(j).offset);
    for (std::size_t i = 0; i < dim_; ++i) s += x[i] * static_cast<double>(facets_[j].normal[i]);
    return s;
  }

  bool is_interior(const RatVector& x) const {
    for (std::size_t j = 0; j < facets_.size(); ++j)
      if (facet_distance(j, x) <= 0) return false;
    return true;
  }
  bool is_interior(const std::vector<double>& x) const {
    for (std::size_t j = 0; j < facets_.size(); ++j)
      if (!(facet_distance(j, x) > 0)) return false;
    return true;
  }

  /// Average of the vertices; lies in the interior.
  RatVector vertex_centroid() const {
    RatVector c(dim_, Rational(0));
    for (const auto& v : vertices_)
      for (std::size_t i = 0; i < dim_; ++i) c[i] += v.point[i];
    for (auto& x : c) x /= static_cast<long>(vertices_.size());
    return c;
  }

  /// Axis-aligned bounding box of the vertices, as (lo, hi) per axis.
  std::vector<std::pair<double, double>> bounding_box() const {
    std::vector<std::pair<double, double>> box(dim_, {std::numeric_limits<double>::infinity(),
                                                      -std::numeric_limits<double>::infinity()});
    for (const auto& v : vertices_)
      for (std::size_t i = 0; i < dim_; ++i) {
        const double x = toric_floer::to_double(v.point[i]);
        box[i].first = std::min(box[i].first, x);
        box[i].second = std::max(box[i].second, x);
      }
    return box;
  }

  /// Translates by an integer vector t: offsets become lambda_j + <t, v_j>.
  Polytope translated(const std::vector<std::int64_t>& t) const {
    std::vector<Facet> f = facets_;
    for (auto& facet : f) {
      Rational shift = 0;
      for (std::size_t i = 0; i < dim_; ++i) shift += Rational(t[i]) * facet.normal[i];
      facet.offset += shift;
    }
    return Polytope(dim_, std::move(f));
  }

  friend bool operator==(const Polytope& a, const Polytope& b) {
    return a.dim_ == b.dim_ && a.facets_ == b.facets_;
  }

 private:
  void validate();
  void enumerate_vertices();
  bool is_bounded() const;

  std::size_t dim_ = 0;
  std::vector<Facet> facets_;
  std::vector<Vertex> vertices_;
};

namespace detail {

/// Calls f(subset) for every k-subset of {0..n-1} in lexicographic order.
template <class F>
void for_each_subset(std::size_t n, std::size_t k, F&& f) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  while (true) {
    f(static_cast<const std::vector<std::size_t>&>(idx));
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace detail

inline void Polytope::enumerate_vertices() {
  vertices_.clear();
  const std::size_t n = dim_;
  const std::size_t count = facets_.size();
  detail::for_each_subset(count, n, [&](const std::vector<std::size_t>& subset) {
    RatMatrix m;
    RatVector b;
    for (auto j : subset) {
      RatVector row;
      for (auto x : facets_[j].normal.coords) row.emplace_back(x);
      m.push_back(std::move(row));
      b.push_back(facets_[j].offset);
    }
    const auto sol = solve_linear(m, b, n);
    if (sol.kind != LinearSolve::Kind::unique) return;
    std::vector<std::size_t> active;
    for (std::size_t j = 0; j < count; ++j) {
      const Rational d = facet_distance(j, sol.solution);
      if (d < 0) return;
      if (d == 0) active.push_back(j);
    }
    // each vertex is reported once, from its lexicographically first basis
    for (const auto& v : vertices_)
      if (v.point == sol.solution) return;
    vertices_.push_back({sol.solution, std::move(active)});
  });
}

inline bool Polytope::is_bounded() const {
  const std::size_t n = dim_;
  IntMatrix normals;
  for (const auto& f : facets_) normals.push_back(f.normal.to_integer());
  if (rank(normals) < n) return false;
  // The recession cone { y : <y, v_j> >= 0 } is pointed; it is nonzero iff it
  // has an extreme ray, cut out by n-1 independent tight normals.
  bool bounded = true;
  detail::for_each_subset(facets_.size(), n - 1, [&](const std::vector<std::size_t>& subset) {
    if (!bounded) return;
    RatMatrix m;
    for (auto j : subset) m.push_back(to_rational(facets_[j].normal.to_integer()));
    RatVector ray(n, Rational(0));
    if (n == 1) {
      ray[0] = 1;
    } else {
      auto reduced = m;
      const auto piv = rref(reduced);
      if (piv.size() != n - 1) return;
      std::size_t free_col = 0;
      while (std::find(piv.begin(), piv.end(), free_col) != piv.end()) ++free_col;
      ray[free_col] = 1;
      for (std::size_t r = 0; r < piv.size(); ++r) ray[piv[r]] = -reduced[r][free_col];
    }
    for (int sign : {1, -1}) {
      bool inside = true;
      for (const auto& f : facets_)
        if (sign * dot(ray, f.normal.coords) < 0) inside = false;
      if (inside) bounded = false;
    }
  });
  return bounded;
}

inline void Polytope::validate() {
  if (dim_ == 0) throw ParseError(0, "dimension must be positive");
  if (facets_.size() < dim_ + 1)
    throw ParseError(0, "need at least dim+1 = " + std::to_string(dim_ + 1) + " facets, got " +
                            std::to_string(facets_.size()));
  for (std::size_t j = 0; j < facets_.size(); ++j) {
    if (facets_[j].normal.dim() != dim_)
      throw ParseError(0, "facet " + std::to_string(j + 1) + " has wrong dimension");
    if (!facets_[j].normal.is_primitive())
      throw ParseError(0, "facet " + std::to_string(j + 1) + " has non-primitive normal");
    for (std::size_t k = 0; k < j; ++k)
      if (facets_[k].normal == facets_[j].normal)
        throw ParseError(0, "facets " + std::to_string(k + 1) + " and " + std::to_string(j + 1) +
                                " have the same normal direction");
  }
  if (!is_bounded()) throw ParseError(0, "polytope is unbounded");
  enumerate_vertices();
  if (vertices_.empty()) throw ParseError(0, "polytope is empty");
  if (!is_interior(vertex_centroid())) throw ParseError(0, "polytope has empty interior");
}

// ---------------------------------------------------------------------------
// Text format:
//   dim n
//   normal i1 ... in offset p/q      (one line per facet)
// '#' starts a comment line; blank lines are ignored.

namespace detail {

inline std::vector<std::string_view> split_words(std::string_view line) {
  std::vector<std::string_view> words;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) words.push_back(line.substr(i, j - i));
    i = j;
  }
  return words;
}

inline bool parse_int64(std::string_view text, std::int64_t& out) {
  Integer z;
  if (!parse_integer_text(text, z)) return false;
  if (z > std::numeric_limits<std::int64_t>::max() || z < std::numeric_limits<std::int64_t>::min()) return false;
  out = z.convert_to<std::int64_t>();
  return true;
}

}  // namespace detail

/// Parses polytope-file contents.  Syntax errors carry the 1-based line;
/// geometric invariant failures (unbounded, empty interior, non-primitive)
/// are reported with the line of the offending facet when there is one.
inline Polytope parse_polytope(std::string_view text) {
  std::size_t line_no = 0;
  std::size_t dim = 0;
  bool have_dim = false;
  std::vector<Facet> facets;
  std::vector<std::size_t> facet_lines;

  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    const std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    const auto words = detail::split_words(line);
    if (words.empty() || words[0].front() == '#') {
      if (end == text.size()) break;
      continue;
    }
    if (!have_dim) {
      std::int64_t d = 0;
      if (words.size() != 2 || words[0] != "dim" || !detail::parse_int64(words[1], d) || d <= 0)
        throw ParseError(line_no, "expected 'dim <positive integer>'");
      dim = static_cast<std::size_t>(d);
      have_dim = true;
    } else {
      if (words.size() != dim + 3 || words[0] != "normal" || words[dim + 1] != "offset")
        throw ParseError(line_no, "expected 'normal <" + std::to_string(dim) + " integers> offset <p or p/q>'");
      Facet f;
      for (std::size_t i = 0; i < dim; ++i) {
        std::int64_t c = 0;
        if (!detail::parse_int64(words[1 + i], c))
          throw ParseError(line_no, "bad integer '" + std::string(words[1 + i]) + "'");
        f.normal.coords.push_back(c);
      }
      const auto off = parse_rational(words[dim + 2]);
      if (!off) throw ParseError(line_no, "bad rational '" + std::string(words[dim + 2]) + "'");
      f.offset = *off;
      if (!f.normal.is_primitive()) throw ParseError(line_no, "non-primitive normal (gcd of coordinates != 1)");
      for (std::size_t k = 0; k < facets.size(); ++k)
        if (facets[k].normal == f.normal)
          throw ParseError(line_no, "normal direction repeats line " + std::to_string(facet_lines[k]));
      facets.push_back(std::move(f));
      facet_lines.push_back(line_no);
    }
    if (end == text.size()) break;
  }
  if (!have_dim) throw ParseError(line_no, "missing 'dim' line");
  return Polytope(dim, std::move(facets));
}

/// Canonical text form; parse_polytope(serialize_polytope(p)) == p.
inline std::string serialize_polytope(const Polytope& p) {
  std::ostringstream out;
  out << "dim " << p.dim() << "\n";
  for (const auto& f : p.facets()) {
    out << "normal";
    for (auto c : f.normal.coords) out << ' ' << c;
    out << " offset " << to_string(f.offset) << "\n";
  }
  return out.str();
}

}  // namespace toric_floer

#endif  // TORIC_FLOER_POLYTOPE_HPP
