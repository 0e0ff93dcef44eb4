// Landau-Ginzburg mirror of a toric manifold.
//
//   W(Theta) = sum_i e^{-Y_i},  Y_i = <Theta, v_i> - lambda_i,  Theta = A - i nu.
//
// Critical points of W are the fibers (with holonomy) whose Floer cohomology
// survives the specialisation T^{2 pi} = e^{-1}.

#ifndef TORIC_FLOER_MIRROR_HPP
#define TORIC_FLOER_MIRROR_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "toric_floer/disc.hpp"
#include "toric_floer/errors.hpp"
#include "toric_floer/fan.hpp"
#include "toric_floer/floer.hpp"
#include "toric_floer/kernel_lattice.hpp"
#include "toric_floer/novikov.hpp"
#include "toric_floer/parallel.hpp"
#include "toric_floer/polytope.hpp"
#include "toric_floer/rational.hpp"

namespace toric_floer {

/// Exponents beyond this magnitude are refused rather than overflowed.
inline constexpr double max_exponent = 700.0;

struct SuperpotentialTerm {
  Rational lambda;  ///< weight e^{lambda}; y_i = -lambda_i
  LatticeVector exponent;
};

struct Superpotential {
  std::size_t dim = 0;
  std::vector<SuperpotentialTerm> terms;

  /// The exponents -Y_i(Theta); throws NumericalError past |Re| > 700.
  std::vector<Complex> exponents(const std::vector<Complex>& theta) const {
    if (theta.size() != dim) throw GeometryError("mirror point has wrong dimension");
    std::vector<Complex> out;
    out.reserve(terms.size());
    for (const auto& t : terms) {
      Complex y = -to_double(t.lambda);
      for (std::size_t a = 0; a < dim; ++a) y += theta[a] * static_cast<double>(t.exponent[a]);
      if (!(std::abs(y.real()) <= max_exponent)) throw NumericalError("superpotential exponent overflow");
      out.push_back(-y);
    }
    return out;
  }

  Complex operator()(const std::vector<Complex>& theta) const {
    Complex s = 0.0;
    for (const auto& e : exponents(theta)) s += std::exp(e);
    return s;
  }
};

inline Superpotential build_superpotential(const Polytope& p) {
  Superpotential w{p.dim(), {}};
  for (std::size_t j = 0; j < p.num_facets(); ++j) w.terms.push_back({p.facet(j).offset, p.normal(j)});
  return w;
}

/// Theta = A - i nu; the imaginary part is only meaningful mod 2 pi.
struct MirrorPoint {
  std::vector<Complex> theta;

  static MirrorPoint from_fiber(const std::vector<double>& a, const std::vector<double>& nu) {
    if (a.size() != nu.size()) throw GeometryError("fiber and holonomy differ in dimension");
    MirrorPoint m;
    for (std::size_t i = 0; i < a.size(); ++i) m.theta.emplace_back(a[i], -nu[i]);
    return m;
  }

  std::size_t dim() const noexcept { return theta.size(); }
  std::vector<double> fiber() const {
    std::vector<double> a;
    for (const auto& t : theta) a.push_back(t.real());
    return a;
  }
  HolonomyVector holonomy() const {
    HolonomyVector h;
    for (const auto& t : theta) h.nu.push_back(-t.imag());
    return h.canonical();
  }
  /// Im Theta reduced into [0, 2 pi).
  MirrorPoint canonical(double snap = 1e-12) const {
    MirrorPoint m = *this;
    for (auto& t : m.theta) {
      double im = std::fmod(t.imag(), two_pi);
      if (im < 0) im += two_pi;
      if (im < snap || two_pi - im < snap) im = 0.0;
      t = Complex(t.real(), im);
    }
    return m;
  }
};

/// Max over coordinates of |Re difference| and circle distance of Im parts.
inline double mirror_distance(const MirrorPoint& a, const MirrorPoint& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    d = std::max({d, std::abs(a.theta[i].real() - b.theta[i].real()),
                  circle_distance(a.theta[i].imag(), b.theta[i].imag())});
  return d;
}

struct MirrorCoordinates {
  std::vector<Complex> Y;
};

inline MirrorCoordinates mirror_coordinates(const Polytope& p, const MirrorPoint& m) {
  if (m.dim() != p.dim()) throw GeometryError("mirror point has wrong dimension");
  MirrorCoordinates c;
  for (std::size_t j = 0; j < p.num_facets(); ++j) {
    Complex y = -to_double(p.facet(j).offset);
    for (std::size_t a = 0; a < p.dim(); ++a) y += m.theta[a] * static_cast<double>(p.normal(j)[a]);
    c.Y.push_back(y);
  }
  return c;
}

/// Theta with rational real and imaginary parts.
struct ExactMirrorPoint {
  RatVector re, im;
};

struct ExactMirrorCoordinates {
  RatVector re, im;
};

inline ExactMirrorCoordinates mirror_coordinates(const Polytope& p, const ExactMirrorPoint& m) {
  if (m.re.size() != p.dim() || m.im.size() != p.dim()) throw GeometryError("mirror point has wrong dimension");
  ExactMirrorCoordinates c;
  for (std::size_t j = 0; j < p.num_facets(); ++j) {
    c.re.push_back(dot(p.normal(j).to_integer(), m.re) - p.facet(j).offset);
    c.im.push_back(dot(p.normal(j).to_integer(), m.im));
  }
  return c;
}

/// sum_i Q_{ia} Y_i - t_a for every row a of the kernel lattice; exactly zero.
inline std::vector<std::pair<Rational, Rational>> constraint_residual(const KernelLattice& k,
                                                                      const ExactMirrorCoordinates& y) {
  std::vector<std::pair<Rational, Rational>> out;
  for (std::size_t a = 0; a < k.rank(); ++a) {
    Rational re = -k.reduction_level[a], im = 0;
    for (std::size_t i = 0; i < y.re.size(); ++i) {
      re += Rational(k.basis[a][i]) * y.re[i];
      im += Rational(k.basis[a][i]) * y.im[i];
    }
    out.emplace_back(re, im);
  }
  return out;
}

/// Numeric counterpart: max_a |sum_i Q_{ia} Y_i - t_a|.
inline double constraint_residual(const KernelLattice& k, const MirrorCoordinates& y) {
  double worst = 0.0;
  for (std::size_t a = 0; a < k.rank(); ++a) {
    Complex s = -to_double(k.reduction_level[a]);
    for (std::size_t i = 0; i < y.Y.size(); ++i) s += to_double(Rational(k.basis[a][i])) * y.Y[i];
    worst = std::max(worst, std::abs(s));
  }
  return worst;
}

/// dW/dTheta_alpha = -sum_i e^{-Y_i} v_i^alpha.
inline std::vector<Complex> gradient_W(const Superpotential& w, const MirrorPoint& m) {
  const auto e = w.exponents(m.theta);
  std::vector<Complex> g(w.dim, 0.0);
  for (std::size_t i = 0; i < w.terms.size(); ++i) {
    const Complex x = std::exp(e[i]);
    for (std::size_t a = 0; a < w.dim; ++a) g[a] -= x * static_cast<double>(w.terms[i].exponent[a]);
  }
  return g;
}

/// d^2W/dTheta_alpha dTheta_beta = sum_i e^{-Y_i} v_i^alpha v_i^beta.
inline Eigen::MatrixXcd hessian_W(const Superpotential& w, const MirrorPoint& m) {
  const auto e = w.exponents(m.theta);
  const auto n = static_cast<Eigen::Index>(w.dim);
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(n, n);
  for (std::size_t i = 0; i < w.terms.size(); ++i) {
    Eigen::VectorXd v(n);
    for (Eigen::Index a = 0; a < n; ++a) v(a) = static_cast<double>(w.terms[i].exponent[static_cast<std::size_t>(a)]);
    h += std::exp(e[i]) * (v * v.transpose()).cast<Complex>();
  }
  return h;
}

struct CriticalPoint {
  MirrorPoint theta;
  double residual = 0.0;  ///< ||grad W||
  double hessian_condition = 0.0;
  bool degenerate = false;
};

struct CriticalOptions {
  std::size_t real_grid = 4;        ///< starts per axis over the inflated bounding box
  std::size_t imaginary_grid = 8;   ///< K: starts per axis at spacing 2 pi / K
  double imaginary_offset = 0.0;    ///< shifts every imaginary start by offset * 2 pi / K
  double residual_tolerance = 1e-12;
  double dedup_tolerance = 1e-8;
  double degenerate_condition = 1e10;
  std::size_t max_iterations = 100;
};

struct CriticalReport {
  std::vector<CriticalPoint> points;
  std::size_t expected = 0;  ///< Euler characteristic
  std::size_t starts = 0;
  std::vector<std::string> warnings;
};

namespace detail {

inline double norm(const std::vector<Complex>& v) {
  double s = 0.0;
  for (const auto& x : v) s += std::norm(x);
  return std::sqrt(s);
}

/// Scale of the gradient terms, sum_i |e^{-Y_i}| |v_i|.
inline double gradient_scale(const Superpotential& w, const MirrorPoint& m) {
  const auto e = w.exponents(m.theta);
  double s = 0.0;
  for (std::size_t i = 0; i < w.terms.size(); ++i) {
    double v2 = 0.0;
    for (auto c : w.terms[i].exponent.coords) v2 += static_cast<double>(c * c);
    s += std::exp(e[i].real()) * std::sqrt(v2);
  }
  return s;
}

/// Damped Newton on grad W = 0 from one start; nullopt when the start
/// diverges, overflows, or stalls above tolerance.
inline std::optional<MirrorPoint> newton_critical(const Superpotential& w, MirrorPoint m, const CriticalOptions& opts) {
  try {
    auto g = gradient_W(w, m);
    double gn = norm(g);
    for (std::size_t it = 0; it < opts.max_iterations; ++it) {
      const Eigen::MatrixXcd h = hessian_W(w, m);
      Eigen::VectorXcd rhs(static_cast<Eigen::Index>(w.dim));
      for (std::size_t a = 0; a < w.dim; ++a) rhs(static_cast<Eigen::Index>(a)) = -g[a];
      const Eigen::VectorXcd step = h.fullPivLu().solve(rhs);
      if (!step.allFinite()) return std::nullopt;
      double t = 1.0;
      bool moved = false;
      for (int halving = 0; halving < 30; ++halving, t *= 0.5) {
        MirrorPoint trial = m;
        for (std::size_t a = 0; a < w.dim; ++a) trial.theta[a] += t * step(static_cast<Eigen::Index>(a));
        std::vector<Complex> tg;
        try {
          tg = gradient_W(w, trial);
        } catch (const NumericalError&) {
          continue;
        }
        const double tn = norm(tg);
        if (tn < gn) {
          m = std::move(trial);
          g = std::move(tg);
          gn = tn;
          moved = true;
          break;
        }
      }
      if (!moved || step.norm() * t < 1e-15) break;
    }
    if (gn < opts.residual_tolerance && gn <= 1e-10 * gradient_scale(w, m)) return m;
  } catch (const NumericalError&) {
  }
  return std::nullopt;
}

/// Lexicographic on (Re Theta, Im Theta), treating coordinates within tol as equal.
inline bool mirror_less(const MirrorPoint& a, const MirrorPoint& b, double tol) {
  for (std::size_t i = 0; i < a.dim(); ++i)
    if (std::abs(a.theta[i].real() - b.theta[i].real()) > tol) return a.theta[i].real() < b.theta[i].real();
  for (std::size_t i = 0; i < a.dim(); ++i)
    if (circle_distance(a.theta[i].imag(), b.theta[i].imag()) > tol) return a.theta[i].imag() < b.theta[i].imag();
  return false;
}

}  // namespace detail

/// All critical points of W with Im Theta in [0, 2 pi)^n, by multistart Newton.
inline CriticalReport critical_points(const Polytope& p, const CriticalOptions& opts = {}) {
  const Superpotential w = build_superpotential(p);
  const Fan f = normal_fan(p);
  CriticalReport report;
  report.expected = euler_characteristic(f);
  if (!is_fano(f)) report.warnings.push_back("unsupported regime: the fan is not Fano; no count guarantee");

  const auto box = p.bounding_box();
  const std::size_t n = p.dim();
  const std::size_t per_start = opts.real_grid * opts.imaginary_grid;
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= per_start;
  report.starts = total;

  auto start = [&](std::size_t index) {
    MirrorPoint m;
    for (std::size_t a = 0; a < n; ++a) {
      const std::size_t digit = index % per_start;
      index /= per_start;
      const std::size_t r = digit % opts.real_grid, k = digit / opts.real_grid;
      const double lo = box[a].first - 1.0, hi = box[a].second + 1.0;
      const double re = opts.real_grid == 1 ? 0.5 * (lo + hi)
                                            : lo + (hi - lo) * static_cast<double>(r) /
                                                       static_cast<double>(opts.real_grid - 1);
      const double im = two_pi * (static_cast<double>(k) + opts.imaginary_offset) /
                        static_cast<double>(opts.imaginary_grid);
      m.theta.emplace_back(re, im);
    }
    return m;
  };
  const auto results = parallel_map(total, [&](std::size_t i) { return detail::newton_critical(w, start(i), opts); });

  for (const auto& r : results) {
    if (!r) continue;
    CriticalPoint c;
    c.theta = r->canonical();
    c.residual = detail::norm(gradient_W(w, c.theta));
    auto same = std::find_if(report.points.begin(), report.points.end(), [&](const CriticalPoint& o) {
      return mirror_distance(o.theta, c.theta) < opts.dedup_tolerance;
    });
    if (same != report.points.end()) {
      if (c.residual < same->residual) same->theta = c.theta, same->residual = c.residual;
      continue;
    }
    report.points.push_back(std::move(c));
  }
  for (auto& c : report.points) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(hessian_W(w, c.theta));
    const auto s = svd.singularValues();
    const double smin = s(s.size() - 1);
    c.hessian_condition = smin > 0 ? s(0) / smin : std::numeric_limits<double>::infinity();
    c.degenerate = c.hessian_condition > opts.degenerate_condition;
  }
  std::sort(report.points.begin(), report.points.end(), [&](const CriticalPoint& a, const CriticalPoint& b) {
    return detail::mirror_less(a.theta, b.theta, opts.dedup_tolerance);
  });
  if (report.points.size() != report.expected) {
    std::string msg = "found " + std::to_string(report.points.size()) + " critical points, expected chi = " +
                      std::to_string(report.expected);
    if (std::any_of(report.points.begin(), report.points.end(), [](const CriticalPoint& c) { return c.degenerate; }))
      msg += "; some points are degenerate and may carry multiplicity";
    report.warnings.push_back(std::move(msg));
  }
  return report;
}

/// o(L) = sum_j h^{v_j} T^{2 pi l_j(A)} q as a scalar Novikov element.
inline NovikovVector obstruction_class(const Polytope& p, const FiberPoint& a, const HolonomyVector& nu,
                                       double area_tolerance = 1e-9) {
  const FacetDistances l = facet_distances(p, a);
  NovikovVector o(0, area_tolerance);
  for (std::size_t j = 0; j < p.num_facets(); ++j) {
    NovikovTerm t;
    t.coefficient = nu.along(p.normal(j));
    t.area = two_pi * l.value[j];
    if (l.exact) t.area_over_two_pi = (*l.exact)[j];
    t.q_power = 1;
    t.sources = {j};
    o.add(std::move(t));
  }
  return o;
}

/// |o(L) - W(A - i nu)| at T^{2 pi} = e^{-1}, q dropped.
inline double check_o_equals_W(const Polytope& p, const FiberPoint& a, const HolonomyVector& nu) {
  const Complex o = obstruction_class(p, a, nu, 0.0).evaluate_exponential()[0];
  const Complex w = build_superpotential(p)(MirrorPoint::from_fiber(a.coords, nu.nu).theta);
  return std::abs(o - w);
}

/// ||delta_2<pt> + grad W(A - i nu)|| at T^{2 pi} = e^{-1}, sign and q dropped.
inline double check_delta2_equals_gradW(const Polytope& p, const FiberPoint& a, const HolonomyVector& nu) {
  const auto d = delta2_point(p, a, nu, {0.0}).evaluate_exponential();
  const auto g = gradient_W(build_superpotential(p), MirrorPoint::from_fiber(a.coords, nu.nu));
  const double sign = p.dim() % 2 == 0 ? 1.0 : -1.0;
  double s = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) s += std::norm(sign * d[i] + g[i]);
  return std::sqrt(s);
}

/// Complex solutions h in (C^*)^n of the block equations sum_{j in I} h^{v_j} v_j = 0
/// at an exactly solved fiber, where no unitary holonomy exists.  Such h
/// correspond to a nonzero B-field and carry no symplectic meaning.
struct NonUnitaryDiagnostic {
  std::vector<std::vector<std::size_t>> blocks;
  RatVector A;
  std::vector<std::vector<Complex>> holonomies;  ///< h_alpha per root
  std::vector<bool> unitary;                     ///< all |h_alpha| = 1 within 1e-8
  std::string message;
};

namespace detail {

/// Stacked complex residual of the block equations in log-coordinates h = e^{zeta}.
inline Eigen::VectorXcd block_equations(const Polytope& p, const std::vector<std::vector<std::size_t>>& blocks,
                                        const Eigen::VectorXcd& zeta, Eigen::MatrixXcd* jac) {
  const auto n = static_cast<Eigen::Index>(p.dim());
  const auto rows = static_cast<Eigen::Index>(p.dim() * blocks.size());
  Eigen::VectorXcd f = Eigen::VectorXcd::Zero(rows);
  if (jac) *jac = Eigen::MatrixXcd::Zero(rows, n);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const auto base = static_cast<Eigen::Index>(p.dim() * b);
    for (auto j : blocks[b]) {
      Eigen::VectorXd v(n);
      for (Eigen::Index i = 0; i < n; ++i) v(i) = static_cast<double>(p.normal(j)[static_cast<std::size_t>(i)]);
      const Complex e = std::exp((v.cast<Complex>().transpose() * zeta).value());
      f.segment(base, n) += e * v.cast<Complex>();
      if (jac) jac->block(base, 0, n, n) += e * (v * v.transpose()).cast<Complex>();
    }
  }
  return f;
}

}  // namespace detail

inline std::vector<NonUnitaryDiagnostic> non_unitary_holonomies(const Polytope& p, const BalancedReport& r,
                                                                std::size_t grid = 8) {
  std::vector<NonUnitaryDiagnostic> out;
  const auto n = static_cast<Eigen::Index>(p.dim());
  for (const auto& d : r.diagnostics) {
    if (d.kind != PartitionDiagnostic::Kind::no_convergence || !d.A) continue;
    NonUnitaryDiagnostic nd{d.blocks, *d.A, {}, {}, {}};
    std::size_t total = 1;
    for (Eigen::Index i = 0; i < n; ++i) total *= 3 * grid;
    for (std::size_t s = 0; s < total; ++s) {
      Eigen::VectorXcd zeta(n);
      std::size_t idx = s;
      for (Eigen::Index i = 0; i < n; ++i) {
        const std::size_t digit = idx % (3 * grid);
        idx /= 3 * grid;
        zeta(i) = Complex(static_cast<double>(digit % 3) - 1.0,
                          two_pi * static_cast<double>(digit / 3) / static_cast<double>(grid));
      }
      Eigen::MatrixXcd jac;
      Eigen::VectorXcd f = detail::block_equations(p, d.blocks, zeta, &jac);
      bool ok = false;
      for (int it = 0; it < 100; ++it) {
        if (f.norm() < 1e-13) {
          ok = true;
          break;
        }
        const Eigen::VectorXcd step = jac.completeOrthogonalDecomposition().solve(-f);
        if (!step.allFinite() || zeta.real().cwiseAbs().maxCoeff() > 50) break;
        zeta += step;
        f = detail::block_equations(p, d.blocks, zeta, &jac);
      }
      if (!ok) continue;
      std::vector<Complex> h;
      for (Eigen::Index i = 0; i < n; ++i) h.push_back(std::exp(zeta(i)));
      const bool dup = std::any_of(nd.holonomies.begin(), nd.holonomies.end(), [&](const std::vector<Complex>& o) {
        for (std::size_t i = 0; i < h.size(); ++i)
          if (std::abs(o[i] - h[i]) > 1e-8 * (1 + std::abs(h[i]))) return false;
        return true;
      });
      if (dup) continue;
      nd.holonomies.push_back(h);
    }
    std::sort(nd.holonomies.begin(), nd.holonomies.end(), [](const auto& a, const auto& b) {
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (std::abs(a[i].real() - b[i].real()) > 1e-8) return a[i].real() < b[i].real();
        if (std::abs(a[i].imag() - b[i].imag()) > 1e-8) return a[i].imag() < b[i].imag();
      }
      return false;
    });
    for (const auto& h : nd.holonomies)
      nd.unitary.push_back(std::all_of(h.begin(), h.end(), [](Complex x) { return std::abs(std::abs(x) - 1) < 1e-8; }));
    nd.message = std::to_string(nd.holonomies.size()) +
                 " complex holonomies solve the block equations; non-unitary ones need a B-field and have no "
                 "natural symplectic meaning";
    out.push_back(std::move(nd));
  }
  return out;
}

}  // namespace toric_floer

#endif  // TORIC_FLOER_MIRROR_HPP
