// Floer cohomology of torus fibers: the boundary delta_2 of the point class,
// the rank dichotomy, and the search for balanced fibers.
//
// For a fiber A with holonomy nu,
//   delta_2<pt> = sum_j (-1)^n e^{i<nu, v_j>} T^{2 pi l_j(A)} q v_j,
// and HF is H^*(T^n) (rank 2^n) iff every area level of delta_2<pt>
// vanishes; otherwise HF = 0.  Over the formal Novikov ring the levels
// are separated by area; under T^{2 pi} = e^{-1} they are summed.

#ifndef TORIC_FLOER_FLOER_HPP
#define TORIC_FLOER_FLOER_HPP

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "toric_floer/disc.hpp"
#include "toric_floer/errors.hpp"
#include "toric_floer/fan.hpp"
#include "toric_floer/novikov.hpp"
#include "toric_floer/parallel.hpp"
#include "toric_floer/polytope.hpp"
#include "toric_floer/rational.hpp"

namespace toric_floer {

/// Holonomy angles of a flat unitary line bundle on the fiber, each in [0, 2 pi).
struct HolonomyVector {
  std::vector<double> nu;

  static HolonomyVector zero(std::size_t n) { return {std::vector<double>(n, 0.0)}; }

  /// h^{v} = e^{i <nu, v>}.
  Complex along(const LatticeVector& v) const {
    double s = 0.0;
    for (std::size_t i = 0; i < nu.size(); ++i) s += nu[i] * static_cast<double>(v[i]);
    return std::polar(1.0, s);
  }

  /// Reduces every angle into [0, 2 pi); angles within `snap` of 2 pi become 0.
  HolonomyVector canonical(double snap = 1e-12) const {
    HolonomyVector h = *this;
    for (auto& x : h.nu) {
      x = std::fmod(x, two_pi);
      if (x < 0) x += two_pi;
      if (x < snap || two_pi - x < snap) x = 0.0;
    }
    return h;
  }
};

/// Distance between angles on the circle.
inline double circle_distance(double a, double b) {
  double d = std::fmod(std::abs(a - b), two_pi);
  return std::min(d, two_pi - d);
}

enum class Coefficients { novikov, exponential };

struct Delta2Options {
  double area_tolerance = 1e-9;  ///< merge numeric areas closer than this (relative)
};

/// delta_2<pt> with one term per facet, merged by equal area.
inline NovikovVector delta2_point(const Polytope& p, const FiberPoint& a, const HolonomyVector& nu,
                                  const Delta2Options& opts = {}) {
  const FacetDistances l = facet_distances(p, a);
  const double sign = p.dim() % 2 == 0 ? 1.0 : -1.0;
  NovikovVector d(p.dim(), opts.area_tolerance);
  for (std::size_t j = 0; j < p.num_facets(); ++j) {
    NovikovTerm t;
    t.coefficient = sign * nu.along(p.normal(j));
    t.area = two_pi * l.value[j];
    if (l.exact) t.area_over_two_pi = (*l.exact)[j];
    t.q_power = 1;
    for (auto c : p.normal(j).coords) t.vector.emplace_back(static_cast<double>(c));
    t.sources = {j};
    d.add(std::move(t));
  }
  return d;
}

/// Total cohomology rank of the Koszul-type complex on Lambda(C^n) with
/// differential x -> (sum_j c_j L_j) ^ x.  Equals 2^n for c = 0 and 0 otherwise.
inline std::size_t spectral_rank_check(const std::vector<Complex>& c, double tol = 1e-12) {
  const std::size_t n = c.size();
  const std::size_t dim = std::size_t{1} << n;
  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  // basis: bitmask S <-> L_{s_1} ^ ... ^ L_{s_k}, s increasing
  for (std::size_t s = 0; s < dim; ++s)
    for (std::size_t j = 0; j < n; ++j) {
      if (s & (std::size_t{1} << j)) continue;
      // L_j ^ L_S: moving L_j past the generators of S with index < j
      const int below = std::popcount(s & ((std::size_t{1} << j) - 1));
      d(static_cast<Eigen::Index>(s | (std::size_t{1} << j)), static_cast<Eigen::Index>(s)) +=
          (below % 2 == 0 ? 1.0 : -1.0) * c[j];
    }
  double scale = 0.0;
  for (const auto& x : c) scale = std::max(scale, std::abs(x));
  if (scale == 0.0) return dim;
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(d);
  lu.setThreshold(tol);
  const auto r = static_cast<std::size_t>(lu.rank());
  return dim - 2 * r;
}

struct HfRankOptions {
  Coefficients coefficients = Coefficients::novikov;
  double tolerance = 1e-10;       ///< a level vanishes when its norm is below tolerance * (term magnitude)
  double area_tolerance = 1e-9;
};

/// Rank of the Bott-Morse Floer cohomology of the fiber A with holonomy nu.
/// Defined only for Fano fans.
inline std::size_t hf_rank(const Polytope& p, const FiberPoint& a, const HolonomyVector& nu,
                           const HfRankOptions& opts = {}) {
  if (!is_fano(normal_fan(p))) throw UnsupportedRegime("unsupported regime: the fan is not Fano");
  const NovikovVector d = delta2_point(p, a, nu, {opts.area_tolerance});
  const std::size_t n = p.dim();
  const FacetDistances l = facet_distances(p, a);
  if (opts.coefficients == Coefficients::novikov) {
    for (const auto& t : d.terms()) {
      // every source contributes a unit coefficient times an integer vector
      const double magnitude = static_cast<double>(t.sources.size());
      if (NovikovVector::norm(t) > opts.tolerance * magnitude)
        return spectral_rank_check(t.value());  // leading non-vanishing level decides
    }
    return std::size_t{1} << n;
  }
  const auto v = d.evaluate_exponential();
  double magnitude = 0.0;
  for (double x : l.value) magnitude += std::exp(-x);
  double norm = 0.0;
  for (const auto& x : v) norm += std::norm(x);
  if (std::sqrt(norm) > opts.tolerance * magnitude) return spectral_rank_check(v);
  return std::size_t{1} << n;
}

/// delta_k <pt> vanishes identically for even k >= 4 by dimension counting;
/// k = 2 must be computed.
inline bool delta_k_vanishing(int k) {
  if (k < 2 || k % 2 != 0) throw Error("delta_k is defined for even k >= 2 (Maslov indices of an oriented torus)");
  return k >= 4;
}

// ---------------------------------------------------------------------------
// Balanced fibers.

struct AreaPartition {
  std::vector<std::vector<std::size_t>> blocks;  ///< level sets of l_j(A), ordered by level
  std::vector<double> levels;                    ///< areas 2 pi l, strictly increasing
  std::optional<RatVector> exact_levels;         ///< l (areas / 2 pi) when A is exact
};

/// Groups facets by equal area at A (exactly for exact A).
inline AreaPartition area_partition(const Polytope& p, const FiberPoint& a, double tol = 1e-9) {
  const FacetDistances l = facet_distances(p, a);
  std::vector<std::size_t> order(p.num_facets());
  for (std::size_t j = 0; j < order.size(); ++j) order[j] = j;
  AreaPartition part;
  if (l.exact) {
    std::map<Rational, std::vector<std::size_t>> groups;
    for (std::size_t j = 0; j < order.size(); ++j) groups[(*l.exact)[j]].push_back(j);
    part.exact_levels.emplace();
    for (auto& [level, block] : groups) {
      part.blocks.push_back(block);
      part.levels.push_back(two_pi * to_double(level));
      part.exact_levels->push_back(level);
    }
    return part;
  }
  std::stable_sort(order.begin(), order.end(), [&](auto x, auto y) { return l.value[x] < l.value[y]; });
  for (auto j : order) {
    if (!part.blocks.empty() && std::abs(l.value[j] - part.levels.back() / two_pi) <= tol * std::max(1.0, l.value[j])) {
      part.blocks.back().push_back(j);
      continue;
    }
    part.blocks.push_back({j});
    part.levels.push_back(two_pi * l.value[j]);
  }
  for (auto& b : part.blocks) std::sort(b.begin(), b.end());
  return part;
}

struct BalancedSolution {
  FiberPoint A;
  std::optional<HolonomyVector> nu;  ///< absent for trivial holonomy (Novikov mode)
  AreaPartition partition;
  double residual = 0.0;             ///< max norm of delta_2<pt> over area levels
};

/// Why a candidate partition produced no (or a special) solution.
struct PartitionDiagnostic {
  enum class Kind { inconsistent, outside, underdetermined, no_convergence, shared_area, accepted };
  Kind kind = Kind::accepted;
  std::vector<std::vector<std::size_t>> blocks;
  std::optional<RatVector> A;              ///< exact solution of the equal-area system, when unique
  /// For inconsistent systems: weights w with sum_j w_j v_j = 0 and
  /// sum_{j in block} w_j = 0 per block, such that equal areas would force
  /// sum_j w_j lambda_j = 0; `certificate_value` is the actual sum.
  std::optional<RatVector> certificate;
  std::optional<Rational> certificate_value;
  std::string message;
};

inline const char* to_string(PartitionDiagnostic::Kind k) {
  switch (k) {
    case PartitionDiagnostic::Kind::inconsistent: return "inconsistent";
    case PartitionDiagnostic::Kind::outside: return "outside";
    case PartitionDiagnostic::Kind::underdetermined: return "underdetermined";
    case PartitionDiagnostic::Kind::no_convergence: return "no_convergence";
    case PartitionDiagnostic::Kind::shared_area: return "shared_area";
    case PartitionDiagnostic::Kind::accepted: return "accepted";
  }
  return "?";
}

struct BalancedReport {
  std::vector<BalancedSolution> solutions;
  std::vector<PartitionDiagnostic> diagnostics;
  std::vector<std::string> warnings;
};

struct BalancedOptions {
  std::size_t max_facets = 12;        ///< hard cap on N for partition enumeration
  std::size_t grid = 6;               ///< holonomy starts per axis, spacing 2 pi / grid
  double residual_tolerance = 1e-10;
  double dedup_tolerance = 1e-6;
  std::size_t max_iterations = 200;
  double initial_damping = 1e-3;
};

namespace detail {

/// All set partitions of {0..n-1} whose blocks satisfy `ok`.  Blocks are
/// built around the smallest unassigned element, so each partition appears
/// once; blocks are sorted and listed by smallest element.
inline void enumerate_partitions(std::size_t n, const std::function<bool(const std::vector<std::size_t>&)>& ok,
                                 std::vector<std::vector<std::vector<std::size_t>>>& out) {
  std::vector<std::vector<std::size_t>> current;
  std::function<void(std::uint64_t)> rec = [&](std::uint64_t remaining) {
    if (remaining == 0) {
      out.push_back(current);
      return;
    }
    const auto first = static_cast<std::size_t>(std::countr_zero(remaining));
    const std::uint64_t rest = remaining & ~(std::uint64_t{1} << first);
    // iterate over all submasks of rest
    for (std::uint64_t sub = rest;; sub = (sub - 1) & rest) {
      std::vector<std::size_t> block{first};
      for (std::size_t j = 0; j < n; ++j)
        if (sub & (std::uint64_t{1} << j)) block.push_back(j);
      if (ok(block)) {
        current.push_back(block);
        rec(rest & ~sub);
        current.pop_back();
      }
      if (sub == 0) break;
    }
  };
  rec(n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
  std::sort(out.begin(), out.end());
}

inline bool block_sums_to_zero(const Polytope& p, const std::vector<std::size_t>& block) {
  for (std::size_t i = 0; i < p.dim(); ++i) {
    std::int64_t s = 0;
    for (auto j : block) s += p.normal(j)[i];
    if (s != 0) return false;
  }
  return true;
}

/// Necessary condition for sum_j u_j v_j = 0 with every u_j a unit complex
/// number: at least two vectors, each in the span of the others.
inline bool block_admits_unit_relation(const Polytope& p, const std::vector<std::size_t>& block) {
  if (block.size() < 2) return false;
  IntMatrix all;
  for (auto j : block) all.push_back(p.normal(j).to_integer());
  const std::size_t r = rank(all);
  for (std::size_t skip = 0; skip < block.size(); ++skip) {
    IntMatrix others;
    for (std::size_t k = 0; k < block.size(); ++k)
      if (k != skip) others.push_back(all[k]);
    if (rank(others) != r) return false;
  }
  return true;
}

/// Solves l_i(A) = l_{i'}(A) for all i, i' in a common block.
inline PartitionDiagnostic solve_equal_areas(const Polytope& p, const std::vector<std::vector<std::size_t>>& blocks) {
  PartitionDiagnostic diag;
  diag.blocks = blocks;
  RatMatrix m;
  RatVector b;
  std::vector<std::pair<std::size_t, std::size_t>> rows;  // (i, first of block)
  for (const auto& block : blocks)
    for (std::size_t k = 1; k < block.size(); ++k) {
      const std::size_t i = block[k], f = block[0];
      RatVector row;
      for (std::size_t c = 0; c < p.dim(); ++c) row.emplace_back(p.normal(i)[c] - p.normal(f)[c]);
      m.push_back(std::move(row));
      b.push_back(p.facet(i).offset - p.facet(f).offset);
      rows.emplace_back(i, f);
    }
  const auto sol = solve_linear(m, b, p.dim());
  switch (sol.kind) {
    case LinearSolve::Kind::unique:
      diag.A = sol.solution;
      if (!p.is_interior(sol.solution)) {
        diag.kind = PartitionDiagnostic::Kind::outside;
        diag.message = "equal-area point lies outside the interior";
      } else {
        diag.kind = PartitionDiagnostic::Kind::accepted;
      }
      break;
    case LinearSolve::Kind::underdetermined:
      diag.kind = PartitionDiagnostic::Kind::underdetermined;
      diag.message = "equal-area conditions do not determine A";
      break;
    case LinearSolve::Kind::inconsistent: {
      diag.kind = PartitionDiagnostic::Kind::inconsistent;
      RatVector w(p.num_facets(), Rational(0));
      for (std::size_t r = 0; r < rows.size(); ++r) {
        w[rows[r].first] += sol.left_certificate[r];
        w[rows[r].second] -= sol.left_certificate[r];
      }
      // normalise: first nonzero weight is 1
      for (const auto& x : w)
        if (x != 0) {
          const Rational s = x;
          for (auto& y : w) y /= s;
          break;
        }
      Rational value = 0;
      for (std::size_t j = 0; j < w.size(); ++j) value += w[j] * p.facet(j).offset;
      diag.certificate = w;
      diag.certificate_value = value;
      diag.message = "equal areas require sum_j w_j lambda_j = 0, but it is " + toric_floer::to_string(value);
      break;
    }
  }
  return diag;
}

/// Stacked real residual of sum_{j in B} e^{i<nu, v_j>} v_j over blocks B.
inline Eigen::VectorXd holonomy_residual(const Polytope& p, const std::vector<std::vector<std::size_t>>& blocks,
                                         const Eigen::VectorXd& nu, Eigen::MatrixXd* jac) {
  const auto n = static_cast<Eigen::Index>(p.dim());
  const auto rows = static_cast<Eigen::Index>(2 * p.dim() * blocks.size());
  Eigen::VectorXd f = Eigen::VectorXd::Zero(rows);
  if (jac) *jac = Eigen::MatrixXd::Zero(rows, n);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const auto base = static_cast<Eigen::Index>(2 * p.dim() * b);
    for (auto j : blocks[b]) {
      Eigen::VectorXd v(n);
      for (Eigen::Index i = 0; i < n; ++i) v(i) = static_cast<double>(p.normal(j)[static_cast<std::size_t>(i)]);
      const double phase = nu.dot(v);
      const double c = std::cos(phase), s = std::sin(phase);
      f.segment(base, n) += c * v;
      f.segment(base + n, n) += s * v;
      if (jac) {
        jac->block(base, 0, n, n) += -s * v * v.transpose();
        jac->block(base + n, 0, n, n) += c * v * v.transpose();
      }
    }
  }
  return f;
}

/// Levenberg-Marquardt on the holonomy equations from one start.
inline std::optional<Eigen::VectorXd> solve_holonomy(const Polytope& p,
                                                     const std::vector<std::vector<std::size_t>>& blocks,
                                                     Eigen::VectorXd nu, const BalancedOptions& opts) {
  Eigen::MatrixXd jac;
  Eigen::VectorXd f = holonomy_residual(p, blocks, nu, &jac);
  double cost = f.squaredNorm();
  double damping = 0.0;  // pure Gauss-Newton until a step fails
  for (std::size_t it = 0; it < opts.max_iterations; ++it) {
    if (std::sqrt(cost) < opts.residual_tolerance * 1e-3) break;
    const Eigen::MatrixXd jtj = jac.transpose() * jac;
    const Eigen::VectorXd g = jac.transpose() * f;
    Eigen::MatrixXd a = jtj;
    a.diagonal().array() += damping * (1.0 + jtj.diagonal().array());
    const Eigen::VectorXd step = a.completeOrthogonalDecomposition().solve(-g);
    const Eigen::VectorXd trial = nu + step;
    Eigen::MatrixXd trial_jac;
    const Eigen::VectorXd trial_f = holonomy_residual(p, blocks, trial, &trial_jac);
    const double trial_cost = trial_f.squaredNorm();
    if (trial_cost < cost) {
      nu = trial;
      f = trial_f;
      jac = trial_jac;
      const double improvement = cost - trial_cost;
      cost = trial_cost;
      damping = damping == 0.0 ? 0.0 : damping / 10.0;
      if (step.norm() < 1e-15 && improvement < 1e-30) break;
    } else {
      damping = damping == 0.0 ? opts.initial_damping : damping * 10.0;
      if (damping > 1e12) break;
    }
  }
  if (std::sqrt(cost) < opts.residual_tolerance) return nu;
  return std::nullopt;
}

inline bool fiber_less(const BalancedSolution& a, const BalancedSolution& b) {
  if (a.A.coords != b.A.coords) return a.A.coords < b.A.coords;
  const std::vector<double> na = a.nu ? a.nu->nu : std::vector<double>{};
  const std::vector<double> nb = b.nu ? b.nu->nu : std::vector<double>{};
  return na < nb;
}

/// Max norm over area levels of delta_2<pt> (sign and q dropped).
inline double balanced_residual(const Polytope& p, const FiberPoint& a, const HolonomyVector& nu) {
  const NovikovVector d = delta2_point(p, a, nu);
  double worst = 0.0;
  for (const auto& t : d.terms()) worst = std::max(worst, NovikovVector::norm(t));
  return worst;
}

inline std::vector<std::string> regime_warnings(const Polytope& p) {
  const Fan f = normal_fan(p);
  std::vector<std::string> w;
  if (!is_smooth(f)) w.push_back("unsupported regime: the fan is not smooth");
  if (!is_fano(f)) w.push_back("unsupported regime: the fan is not Fano; the criterion is conjectural here");
  return w;
}

}  // namespace detail

/// Balanced fibers with trivial holonomy over the formal Novikov ring:
/// A such that every area level of {v_j} sums to zero.  Exact.
inline BalancedReport balanced_fibers_novikov(const Polytope& p, const BalancedOptions& opts = {}) {
  if (p.num_facets() > opts.max_facets)
    throw Error("partition enumeration capped at " + std::to_string(opts.max_facets) + " facets");
  BalancedReport report;
  report.warnings = detail::regime_warnings(p);
  std::vector<std::vector<std::vector<std::size_t>>> partitions;
  detail::enumerate_partitions(
      p.num_facets(), [&](const std::vector<std::size_t>& b) { return detail::block_sums_to_zero(p, b); },
      partitions);
  for (const auto& blocks : partitions) {
    auto diag = detail::solve_equal_areas(p, blocks);
    if (diag.kind == PartitionDiagnostic::Kind::accepted) {
      const auto a = FiberPoint::from_exact(*diag.A);
      BalancedSolution s{a, std::nullopt, area_partition(p, a), 0.0};
      if (s.partition.blocks.size() < blocks.size()) {
        diag.kind = PartitionDiagnostic::Kind::shared_area;
        diag.message = "distinct blocks share an area level; their union still sums to zero";
      }
      // post-hoc check: every exact level sums to zero
      for (const auto& level : s.partition.blocks)
        if (!detail::block_sums_to_zero(p, level)) throw NumericalError("balanced fiber fails verification");
      const bool dup = std::any_of(report.solutions.begin(), report.solutions.end(),
                                   [&](const BalancedSolution& o) { return *o.A.exact == *a.exact; });
      if (!dup) report.solutions.push_back(std::move(s));
    }
    report.diagnostics.push_back(std::move(diag));
  }
  std::stable_sort(report.solutions.begin(), report.solutions.end(), detail::fiber_less);
  return report;
}

/// Balanced fibers with arbitrary unitary holonomy over the formal Novikov
/// ring: A with equal-area blocks and nu with sum_{j in B} e^{i<nu,v_j>} v_j = 0.
inline BalancedReport balanced_fibers_with_holonomy(const Polytope& p, const BalancedOptions& opts = {}) {
  if (p.num_facets() > opts.max_facets)
    throw Error("partition enumeration capped at " + std::to_string(opts.max_facets) + " facets");
  BalancedReport report;
  report.warnings = detail::regime_warnings(p);
  const std::size_t n = p.dim();
  std::vector<std::vector<std::vector<std::size_t>>> partitions;
  detail::enumerate_partitions(
      p.num_facets(), [&](const std::vector<std::size_t>& b) { return detail::block_admits_unit_relation(p, b); },
      partitions);

  std::size_t starts = 1;
  for (std::size_t i = 0; i < n; ++i) starts *= opts.grid;

  for (const auto& blocks : partitions) {
    auto diag = detail::solve_equal_areas(p, blocks);
    if (diag.kind != PartitionDiagnostic::Kind::accepted) {
      report.diagnostics.push_back(std::move(diag));
      continue;
    }
    const auto a = FiberPoint::from_exact(*diag.A);
    const auto found = parallel_map(starts, [&](std::size_t s) -> std::optional<Eigen::VectorXd> {
      Eigen::VectorXd nu0(static_cast<Eigen::Index>(n));
      std::size_t code = s;
      for (std::size_t i = 0; i < n; ++i) {
        nu0(static_cast<Eigen::Index>(i)) = two_pi * static_cast<double>(code % opts.grid) / opts.grid;
        code /= opts.grid;
      }
      return detail::solve_holonomy(p, blocks, nu0, opts);
    });
    std::size_t accepted = 0;
    for (const auto& nu_opt : found) {
      if (!nu_opt) continue;
      HolonomyVector h{std::vector<double>(nu_opt->data(), nu_opt->data() + nu_opt->size())};
      h = h.canonical(opts.dedup_tolerance * 1e-3);
      const bool dup = std::any_of(report.solutions.begin(), report.solutions.end(), [&](const BalancedSolution& o) {
        if (*o.A.exact != *a.exact) return false;
        for (std::size_t i = 0; i < n; ++i)
          if (circle_distance(o.nu->nu[i], h.nu[i]) > opts.dedup_tolerance) return false;
        return true;
      });
      if (dup) continue;
      BalancedSolution s{a, h, area_partition(p, a), detail::balanced_residual(p, a, h)};
      if (s.residual >= opts.residual_tolerance) continue;  // re-verified on the true level sets
      if (s.partition.blocks.size() < blocks.size()) diag.kind = PartitionDiagnostic::Kind::shared_area;
      report.solutions.push_back(std::move(s));
      ++accepted;
    }
    if (accepted == 0 && std::none_of(found.begin(), found.end(), [](const auto& x) { return x.has_value(); })) {
      diag.kind = PartitionDiagnostic::Kind::no_convergence;
      diag.message = "holonomy equations did not converge from any start";
    }
    report.diagnostics.push_back(std::move(diag));
  }
  std::stable_sort(report.solutions.begin(), report.solutions.end(), detail::fiber_less);
  return report;
}

// ---------------------------------------------------------------------------
// Reduction by stages.

struct BalancedDescription {
  std::vector<std::vector<std::size_t>> blocks;  ///< zero-sum blocks I_l
  std::vector<std::size_t> factor_dims;          ///< d_l = |I_l|; factor is P^{d_l - 1}
  std::vector<Rational> factor_levels;           ///< lambda_{I_l} = sum_{i in I_l} lambda_i
  std::string text;
};

/// Describes a trivial-holonomy balanced fiber as a quotient of a product of
/// Clifford tori in projective spaces.  Each area level is split into the
/// finest zero-sum blocks (most blocks; lexicographically first on ties).
inline BalancedDescription describe_balanced(const Polytope& p, const BalancedSolution& s) {
  if (s.nu) throw UnsupportedRegime("reduction by stages is only described for trivial holonomy");
  BalancedDescription d;
  for (const auto& level : s.partition.blocks) {
    std::vector<std::vector<std::vector<std::size_t>>> splits;
    detail::enumerate_partitions(
        level.size(),
        [&](const std::vector<std::size_t>& local) {
          std::vector<std::size_t> b;
          for (auto i : local) b.push_back(level[i]);
          return detail::block_sums_to_zero(p, b);
        },
        splits);
    if (splits.empty()) throw GeometryError("area level does not sum to zero; fiber is not balanced");
    const auto best = std::max_element(splits.begin(), splits.end(),
                                       [](const auto& x, const auto& y) { return x.size() < y.size(); });
    for (const auto& local : *best) {
      std::vector<std::size_t> b;
      for (auto i : local) b.push_back(level[i]);
      d.blocks.push_back(std::move(b));
    }
  }
  std::sort(d.blocks.begin(), d.blocks.end());
  std::string factors, tori;
  for (const auto& b : d.blocks) {
    d.factor_dims.push_back(b.size());
    Rational lam = 0;
    for (auto i : b) lam += p.facet(i).offset;
    d.factor_levels.push_back(lam);
    if (!factors.empty()) {
      factors += " x ";
      tori += " x ";
    }
    factors += "P^" + std::to_string(b.size() - 1) + "[lambda=" + toric_floer::to_string(lam) + "]";
    tori += "Clifford(P^" + std::to_string(b.size() - 1) + ")";
  }
  const std::size_t quotient_rank = p.num_facets() - p.dim() - d.blocks.size();
  d.text = "L = (" + tori + ") / K_Delta in " + factors + ", K_Delta of rank " + std::to_string(quotient_rank);
  return d;
}

}  // namespace toric_floer

#endif  // TORIC_FLOER_FLOER_HPP
