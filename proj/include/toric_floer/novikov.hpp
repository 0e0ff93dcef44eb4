// Finite sums over the universal Novikov ring, sum_k c_k T^{a_k} q^{m_k} x_k,
// where x_k is either a scalar or a vector in C^n.  Terms with the same
// (area, q-power) are merged; areas compare exactly when both are rational
// multiples of 2 pi, otherwise within a tolerance.

#ifndef TORIC_FLOER_NOVIKOV_HPP
#define TORIC_FLOER_NOVIKOV_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <cstddef>
#include <optional>
#include <vector>

#include "toric_floer/rational.hpp"

namespace toric_floer {

struct NovikovTerm {
  std::complex<double> coefficient{1.0};
  double area = 0.0;                        ///< exponent of T
  std::optional<Rational> area_over_two_pi;  ///< exact area / 2 pi when known
  int q_power = 0;
  std::vector<std::complex<double>> vector;  ///< empty for scalar terms
  std::vector<std::size_t> sources;          ///< facet indices contributing to this term

  /// coefficient * vector (or the coefficient for scalar terms).
  std::vector<std::complex<double>> value() const {
    std::vector<std::complex<double>> v = vector;
    for (auto& x : v) x *= coefficient;
    return v;
  }
};

class NovikovVector {
 public:
  /// `vector_dim` 0 means scalar-valued.
  explicit NovikovVector(std::size_t vector_dim = 0, double area_tolerance = 1e-9)
      : dim_(vector_dim), tol_(area_tolerance) {}

  std::size_t vector_dim() const noexcept { return dim_; }
  bool is_scalar() const noexcept { return dim_ == 0; }
  const std::vector<NovikovTerm>& terms() const noexcept { return terms_; }

  /// Adds a term and merges it into an existing term of equal (area, q).
  void add(NovikovTerm t) {
    if (!is_scalar()) {
      // normalise so that the stored vector carries the coefficient
      for (auto& x : t.vector) x *= t.coefficient;
      t.coefficient = 1.0;
    }
    for (auto& s : terms_) {
      if (s.q_power != t.q_power || !same_area(s, t)) continue;
      if (is_scalar()) {
        s.coefficient += t.coefficient;
      } else {
        for (std::size_t i = 0; i < dim_; ++i) s.vector[i] += t.vector[i];
      }
      s.sources.insert(s.sources.end(), t.sources.begin(), t.sources.end());
      if (!t.area_over_two_pi) s.area_over_two_pi.reset();
      return;
    }
    auto pos = std::upper_bound(terms_.begin(), terms_.end(), t, [](const NovikovTerm& a, const NovikovTerm& b) {
      return a.area < b.area || (a.area == b.area && a.q_power < b.q_power);
    });
    terms_.insert(pos, std::move(t));
  }

  /// Drops terms whose value has norm <= tol (exactly zero when tol = 0).
  void prune(double tol = 0.0) {
    std::erase_if(terms_, [&](const NovikovTerm& t) { return norm(t) <= tol; });
  }

  static double norm(const NovikovTerm& t) {
    if (t.vector.empty()) return std::abs(t.coefficient);
    double s = 0.0;
    for (const auto& x : t.value()) s += std::norm(x);
    return std::sqrt(s);
  }

  /// True iff every merged term vanishes within tol.
  bool vanishes(double tol) const {
    return std::all_of(terms_.begin(), terms_.end(), [&](const NovikovTerm& t) { return norm(t) <= tol; });
  }

  /// Specialisation T^{2 pi} = e^{-1}, q = 1: sum_k c_k e^{-a_k / 2 pi} x_k.
  std::vector<std::complex<double>> evaluate_exponential() const {
    std::vector<std::complex<double>> out(is_scalar() ? 1 : dim_, std::complex<double>(0.0));
    for (const auto& t : terms_) {
      const double weight = std::exp(-t.area / (2.0 * std::numbers::pi));
      if (is_scalar()) {
        out[0] += t.coefficient * weight;
      } else {
        const auto v = t.value();
        for (std::size_t i = 0; i < dim_; ++i) out[i] += v[i] * weight;
      }
    }
    return out;
  }

 private:
  bool same_area(const NovikovTerm& a, const NovikovTerm& b) const {
    if (a.area_over_two_pi && b.area_over_two_pi) return *a.area_over_two_pi == *b.area_over_two_pi;
    return std::abs(a.area - b.area) <= tol_ * std::max(1.0, std::abs(a.area));
  }

  std::size_t dim_;
  double tol_;
  std::vector<NovikovTerm> terms_;
};

}  // namespace toric_floer

#endif  // TORIC_FLOER_NOVIKOV_HPP
