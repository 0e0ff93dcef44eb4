// Grid brute-force oracle for balanced fibers.  Shares nothing with the
// pipeline beyond facet data: no partition enumeration, no linear solves,
// no Newton steps.
//
// 1. Walk A over a grid of cell centers inside P.  At each point, cluster
//    the facet distances (single linkage, gap eps = h * max |v_j|_1) into a
//    candidate partition.
// 2. Per partition, scan nu over a periodic grid and keep local minima of
//    sum_B |sum_{j in B} e^{i<nu, v_j>} v_j|^2 (nu fixed at 0 in trivial mode).
// 3. Refine (A, nu) by compass search on area spread plus holonomy residual.
//
// Also: the cohomology of c ^ . on Lambda(C^n) by per-degree Gaussian elimination.

#ifndef TORIC_FLOER_TESTS_ORACLES_HPP
#define TORIC_FLOER_TESTS_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <unordered_map>
#include <vector>

#include "toric_floer/floer.hpp"
#include "toric_floer/polytope.hpp"

namespace toric_floer::testing {

// Brute-force cohomology of the complex Lambda^k -> Lambda^{k+1}, x -> c ^ x,
// degree by degree, with a separate complex Gaussian elimination.
inline std::size_t koszul_rank_oracle(const std::vector<Complex>& c) {
  const std::size_t n = c.size();
  auto subsets = [&](std::size_t k) {
    std::vector<unsigned> out;
    for (unsigned s = 0; s < (1u << n); ++s)
      if (static_cast<std::size_t>(__builtin_popcount(s)) == k) out.push_back(s);
    return out;
  };
  auto matrix_rank = [](std::vector<std::vector<Complex>> m) {
    std::size_t r = 0;
    const std::size_t cols = m.empty() ? 0 : m[0].size();
    for (std::size_t col = 0; col < cols && r < m.size(); ++col) {
      std::size_t piv = r;
      for (std::size_t i = r; i < m.size(); ++i)
        if (std::abs(m[i][col]) > std::abs(m[piv][col])) piv = i;
      if (std::abs(m[piv][col]) < 1e-12) continue;
      std::swap(m[piv], m[r]);
      for (std::size_t i = r + 1; i < m.size(); ++i) {
        const Complex f = m[i][col] / m[r][col];
        for (std::size_t k = col; k < cols; ++k) m[i][k] -= f * m[r][k];
      }
      ++r;
    }
    return r;
  };
  std::vector<std::size_t> ranks(n + 1, 0);  // rank of d_k : Lambda^k -> Lambda^{k+1}
  for (std::size_t k = 0; k < n; ++k) {
    const auto src = subsets(k), dst = subsets(k + 1);
    std::vector<std::vector<Complex>> m(dst.size(), std::vector<Complex>(src.size()));
    for (std::size_t b = 0; b < src.size(); ++b)
      for (std::size_t j = 0; j < n; ++j) {
        if (src[b] & (1u << j)) continue;
        const unsigned t = src[b] | (1u << j);
        int sign = 1;
        for (std::size_t i = 0; i < j; ++i)
          if (src[b] & (1u << i)) sign = -sign;
        const auto row = static_cast<std::size_t>(std::find(dst.begin(), dst.end(), t) - dst.begin());
        m[row][b] += static_cast<double>(sign) * c[j];
      }
    ranks[k] = matrix_rank(m);
  }
  std::size_t total = 0;
  for (std::size_t k = 0; k <= n; ++k) {
    const std::size_t dim_k = subsets(k).size();
    const std::size_t kernel = dim_k - (k < n ? ranks[k] : 0);
    const std::size_t image = k > 0 ? ranks[k - 1] : 0;
    total += kernel - image;
  }
  return total;
}

struct OracleSolution {
  std::vector<double> A;
  std::vector<double> nu;
  double residual = 0.0;
};

struct OracleOptions {
  std::size_t grid_a = 200;
  std::size_t grid_nu = 60;
  bool trivial_holonomy = false;
  std::size_t candidates_per_partition = 40;
  double accept = 1e-8;
};

namespace oracle_detail {

using Blocks = std::vector<std::vector<std::size_t>>;

inline double holonomy_cost(const Polytope& p, const Blocks& blocks, const std::vector<double>& nu) {
  double s = 0.0;
  for (const auto& b : blocks) {
    std::vector<double> re(p.dim(), 0.0), im(p.dim(), 0.0);
    for (auto j : b) {
      double ph = 0.0;
      for (std::size_t i = 0; i < p.dim(); ++i) ph += nu[i] * static_cast<double>(p.normal(j)[i]);
      for (std::size_t i = 0; i < p.dim(); ++i) {
        re[i] += std::cos(ph) * static_cast<double>(p.normal(j)[i]);
        im[i] += std::sin(ph) * static_cast<double>(p.normal(j)[i]);
      }
    }
    for (std::size_t i = 0; i < p.dim(); ++i) s += re[i] * re[i] + im[i] * im[i];
  }
  return s;
}

inline double spread_cost(const Polytope& p, const Blocks& blocks, const std::vector<double>& a) {
  double s = 0.0;
  for (const auto& b : blocks) {
    const double l0 = p.facet_distance(b[0], a);
    for (std::size_t k = 1; k < b.size(); ++k) {
      const double d = p.facet_distance(b[k], a) - l0;
      s += d * d;
    }
  }
  return s;
}

/// Compass search over x = (A, nu); nu is frozen in trivial mode.
inline std::pair<std::vector<double>, double> refine(const Polytope& p, const Blocks& blocks, std::vector<double> x,
                                                     double step_a, double step_nu, bool trivial) {
  const std::size_t n = p.dim();
  auto cost = [&](const std::vector<double>& y) {
    const std::vector<double> a(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(n));
    const std::vector<double> nu(y.begin() + static_cast<std::ptrdiff_t>(n), y.end());
    if (!p.is_interior(a)) return std::numeric_limits<double>::infinity();
    return spread_cost(p, blocks, a) + holonomy_cost(p, blocks, nu);
  };
  double f = cost(x);
  std::vector<double> step(2 * n);
  for (std::size_t i = 0; i < n; ++i) step[i] = step_a, step[n + i] = trivial ? 0.0 : step_nu;
  for (int round = 0; round < 20000 && f > 1e-30; ++round) {
    bool improved = false;
    for (std::size_t i = 0; i < 2 * n; ++i) {
      if (step[i] == 0.0) continue;
      for (double dir : {1.0, -1.0}) {
        auto y = x;
        y[i] += dir * step[i];
        const double fy = cost(y);
        if (fy < f) {
          x = std::move(y);
          f = fy;
          improved = true;
          break;
        }
      }
    }
    if (!improved) {
      double largest = 0.0;
      for (auto& s : step) largest = std::max(largest, s *= 0.5);
      if (largest < 1e-14) break;
    }
  }
  return {x, std::sqrt(f)};
}

}  // namespace oracle_detail

inline std::vector<OracleSolution> oracle_balanced(const Polytope& p, const OracleOptions& opts = {}) {
  using namespace oracle_detail;
  const std::size_t n = p.dim(), nf = p.num_facets();
  const auto box = p.bounding_box();
  std::vector<double> h(n);
  for (std::size_t i = 0; i < n; ++i) h[i] = (box[i].second - box[i].first) / static_cast<double>(opts.grid_a);
  double vmax = 0.0;
  for (std::size_t j = 0; j < nf; ++j) {
    double s = 0.0;
    for (auto c : p.normal(j).coords) s += std::abs(static_cast<double>(c));
    vmax = std::max(vmax, s);
  }
  const double eps = *std::max_element(h.begin(), h.end()) * vmax;

  struct Entry {
    Blocks blocks;
    std::vector<std::vector<double>> points;
  };
  std::unordered_map<std::uint64_t, Entry> by_partition;

  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= opts.grid_a;
  std::vector<double> a(n), l(nf);
  std::vector<std::size_t> order(nf), label(nf);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t r = idx;
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = box[i].first + h[i] * (static_cast<double>(r % opts.grid_a) + 0.5);
      r /= opts.grid_a;
    }
    bool inside = true;
    for (std::size_t j = 0; j < nf && inside; ++j) inside = (l[j] = p.facet_distance(j, a)) > 0;
    if (!inside) continue;
    for (std::size_t j = 0; j < nf; ++j) order[j] = j;
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return l[x] < l[y]; });
    std::size_t cluster = 0;
    label[order[0]] = 0;
    bool nontrivial = false;
    for (std::size_t k = 1; k < nf; ++k) {
      if (l[order[k]] - l[order[k - 1]] > eps) ++cluster;
      else nontrivial = true;
      label[order[k]] = cluster;
    }
    if (!nontrivial) continue;  // all singletons: every block is a single nonzero v_j
    // canonical key: relabel clusters by first appearance in facet order
    std::vector<std::size_t> remap(nf, nf);
    std::uint64_t key = 0;
    std::size_t next = 0;
    for (std::size_t j = 0; j < nf; ++j) {
      if (remap[label[j]] == nf) remap[label[j]] = next++;
      key = key * 16 + remap[label[j]];
    }
    auto& e = by_partition[key];
    if (e.blocks.empty()) {
      e.blocks.resize(next);
      for (std::size_t j = 0; j < nf; ++j) e.blocks[remap[label[j]]].push_back(j);
    }
    if (e.points.size() >= opts.candidates_per_partition) continue;
    // keep well separated grid points only
    const bool far = std::all_of(e.points.begin(), e.points.end(), [&](const std::vector<double>& q) {
      double d = 0.0;
      for (std::size_t i = 0; i < n; ++i) d = std::max(d, std::abs(q[i] - a[i]) / h[i]);
      return d > 10.0;
    });
    if (far) e.points.push_back(a);
  }

  std::vector<OracleSolution> out;
  const double dnu = 2 * std::numbers::pi / static_cast<double>(opts.grid_nu);
  std::vector<std::uint64_t> keys;
  for (const auto& [k, e] : by_partition) keys.push_back(k);
  std::sort(keys.begin(), keys.end());
  for (auto k : keys) {
    const auto& e = by_partition.at(k);
    // nu starts: local minima of the holonomy cost on the periodic grid
    std::vector<std::vector<double>> starts;
    if (opts.trivial_holonomy) {
      if (holonomy_cost(p, e.blocks, std::vector<double>(n, 0.0)) == 0.0) starts.emplace_back(n, 0.0);
    } else {
      std::size_t cells = 1;
      for (std::size_t i = 0; i < n; ++i) cells *= opts.grid_nu;
      std::vector<double> cost(cells);
      std::vector<double> nu(n);
      auto at = [&](std::size_t c) {
        for (std::size_t i = 0; i < n; ++i) {
          nu[i] = dnu * static_cast<double>(c % opts.grid_nu);
          c /= opts.grid_nu;
        }
        return nu;
      };
      for (std::size_t c = 0; c < cells; ++c) cost[c] = holonomy_cost(p, e.blocks, at(c));
      for (std::size_t c = 0; c < cells; ++c) {
        bool minimum = true;
        std::size_t stride = 1;
        for (std::size_t i = 0; i < n && minimum; ++i, stride *= opts.grid_nu) {
          const std::size_t digit = (c / stride) % opts.grid_nu;
          const std::size_t up = c - digit * stride + ((digit + 1) % opts.grid_nu) * stride;
          const std::size_t down = c - digit * stride + ((digit + opts.grid_nu - 1) % opts.grid_nu) * stride;
          minimum = cost[c] <= cost[up] && cost[c] <= cost[down];
        }
        // a root is at most half a cell away; the cost there is O(cell^2 |v|^4)
        if (minimum && cost[c] < 1.0) starts.push_back(at(c));
      }
    }
    for (const auto& a0 : e.points)
      for (const auto& nu0 : starts) {
        std::vector<double> x = a0;
        x.insert(x.end(), nu0.begin(), nu0.end());
        const auto [y, res] = oracle_detail::refine(p, e.blocks, x, *std::max_element(h.begin(), h.end()), dnu,
                                                    opts.trivial_holonomy);
        if (res > opts.accept) continue;
        OracleSolution s{{y.begin(), y.begin() + static_cast<std::ptrdiff_t>(n)},
                         {y.begin() + static_cast<std::ptrdiff_t>(n), y.end()}, res};
        for (auto& v : s.nu) {
          v = std::fmod(v, 2 * std::numbers::pi);
          if (v < 0) v += 2 * std::numbers::pi;
        }
        const bool dup = std::any_of(out.begin(), out.end(), [&](const OracleSolution& o) {
          double d = 0.0;
          for (std::size_t i = 0; i < n; ++i)
            d = std::max({d, std::abs(o.A[i] - s.A[i]), circle_distance(o.nu[i], s.nu[i])});
          return d < 1e-4;
        });
        if (!dup) out.push_back(std::move(s));
      }
  }
  return out;
}

/// Distance in (A, nu mod 2 pi) from an oracle solution to a pipeline solution.
inline double oracle_distance(const OracleSolution& o, const BalancedSolution& s) {
  double d = 0.0;
  for (std::size_t i = 0; i < o.A.size(); ++i) {
    d = std::max(d, std::abs(o.A[i] - s.A.coords[i]));
    const double nu = s.nu ? s.nu->nu[i] : 0.0;
    d = std::max(d, circle_distance(o.nu[i], nu));
  }
  return d;
}

/// Oracle solutions farther than tol from every pipeline solution.
inline std::vector<OracleSolution> missed_by_pipeline(const std::vector<OracleSolution>& oracle,
                                                      const std::vector<BalancedSolution>& pipeline,
                                                      double tol = 1e-2) {
  std::vector<OracleSolution> missed;
  for (const auto& o : oracle)
    if (std::none_of(pipeline.begin(), pipeline.end(),
                     [&](const BalancedSolution& s) { return oracle_distance(o, s) <= tol; }))
      missed.push_back(o);
  return missed;
}

}  // namespace toric_floer::testing

#endif  // TORIC_FLOER_TESTS_ORACLES_HPP
