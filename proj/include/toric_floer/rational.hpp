// Exact integer and rational arithmetic used by all combinatorial routines.
//
// Integers and rationals are arbitrary precision (Boost.Multiprecision
// cpp_int / cpp_rational).  Dense matrices are plain row-major
// std::vector<std::vector<T>>, sized at desk scale.

#ifndef TORIC_FLOER_RATIONAL_HPP
#define TORIC_FLOER_RATIONAL_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "toric_floer/errors.hpp"

namespace toric_floer {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;
using IntMatrix = std::vector<IntVector>;
using RatMatrix = std::vector<RatVector>;

inline Rational make_rational(const Integer& num, const Integer& den) { return Rational(num, den); }

inline double to_double(const Rational& q) { return q.convert_to<double>(); }
inline double to_double(const Integer& z) { return z.convert_to<double>(); }

inline std::vector<double> to_double(const RatVector& v) {
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(to_double(x));
  return out;
}

/// Canonical text form: "p" for integers, "p/q" otherwise (q > 0, lowest terms).
inline std::string to_string(const Rational& q) {
  const Integer num = boost::multiprecision::numerator(q);
  const Integer den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

inline std::string to_string(const Integer& z) { return z.str(); }

namespace detail {

inline bool parse_integer_text(std::string_view text, Integer& out) {
  if (text.empty()) return false;
  std::size_t i = 0;
  if (text[0] == '-' || text[0] == '+') i = 1;
  if (i == text.size()) return false;
  for (std::size_t k = i; k < text.size(); ++k)
    if (text[k] < '0' || text[k] > '9') return false;
  // cpp_int rejects a leading '+'
  out = Integer(std::string(text[0] == '+' ? text.substr(1) : text));
  return true;
}

}  // namespace detail

/// Parses "p" or "p/q" with decimal integers.  Returns nullopt on malformed
/// input or zero denominator.
inline std::optional<Rational> parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  Integer num;
  if (slash == std::string_view::npos) {
    if (!detail::parse_integer_text(text, num)) return std::nullopt;
    return Rational(num);
  }
  Integer den;
  if (!detail::parse_integer_text(text.substr(0, slash), num)) return std::nullopt;
  const auto den_text = text.substr(slash + 1);
  if (den_text.empty() || den_text[0] == '-' || den_text[0] == '+') return std::nullopt;
  if (!detail::parse_integer_text(den_text, den) || den == 0) return std::nullopt;
  return Rational(num, den);
}

inline Integer gcd_of(const IntVector& v) {
  Integer g = 0;
  for (const auto& x : v) g = boost::multiprecision::gcd(g, Integer(abs(x)));
  return g;
}

inline RatVector to_rational(const IntVector& v) {
  RatVector out;
  out.reserve(v.size());
  for (const auto& x : v) out.emplace_back(x);
  return out;
}

template <class A, class B>
Rational dot(const std::vector<A>& a, const std::vector<B>& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += Rational(a[i]) * Rational(b[i]);
  return s;
}

// ---------------------------------------------------------------------------
// Rational Gaussian elimination.

/// Reduced row echelon form in place; returns pivot columns.
inline std::vector<std::size_t> rref(RatMatrix& m) {
  std::vector<std::size_t> pivots;
  if (m.empty()) return pivots;
  const std::size_t rows = m.size();
  const std::size_t cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    const Rational inv = 1 / m[r][c];
    for (auto& x : m[r]) x *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      const Rational f = m[i][c];
      for (std::size_t k = c; k < cols; ++k) m[i][k] -= f * m[r][k];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline std::size_t rank(RatMatrix m) { return rref(m).size(); }

inline std::size_t rank(const IntMatrix& m) {
  RatMatrix q;
  q.reserve(m.size());
  for (const auto& row : m) q.push_back(to_rational(row));
  return rank(std::move(q));
}

/// Determinant of a square integer matrix (fraction-free Bareiss).
inline Integer determinant(IntMatrix m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && m[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(m[p], m[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

/// Outcome of solving M x = b over the rationals.
struct LinearSolve {
  enum class Kind { unique, underdetermined, inconsistent };
  Kind kind = Kind::inconsistent;
  RatVector solution;        ///< set when unique
  RatVector left_certificate;  ///< y with y^T M = 0, y^T b != 0 when inconsistent
};

/// Solves M x = b exactly.  On inconsistency also returns a left certificate.
inline LinearSolve solve_linear(const RatMatrix& m, const RatVector& b, std::size_t unknowns) {
  const std::size_t rows = m.size();
  // augment with [b | I] so row operations are tracked
  RatMatrix aug(rows, RatVector(unknowns + 1 + rows, Rational(0)));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < unknowns; ++j) aug[i][j] = m[i][j];
    aug[i][unknowns] = b[i];
    aug[i][unknowns + 1 + i] = 1;
  }
  // eliminate only over the coefficient columns
  std::size_t r = 0;
  std::vector<std::size_t> pivots;
  for (std::size_t c = 0; c < unknowns && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && aug[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(aug[p], aug[r]);
    const Rational inv = 1 / aug[r][c];
    for (auto& x : aug[r]) x *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || aug[i][c] == 0) continue;
      const Rational f = aug[i][c];
      for (std::size_t k = 0; k < aug[i].size(); ++k) aug[i][k] -= f * aug[r][k];
    }
    pivots.push_back(c);
    ++r;
  }
  LinearSolve out;
  for (std::size_t i = r; i < rows; ++i) {
    if (aug[i][unknowns] != 0) {
      out.kind = LinearSolve::Kind::inconsistent;
      out.left_certificate.assign(aug[i].begin() + static_cast<std::ptrdiff_t>(unknowns + 1), aug[i].end());
      return out;
    }
  }
  if (pivots.size() < unknowns) {
    out.kind = LinearSolve::Kind::underdetermined;
    return out;
  }
  out.kind = LinearSolve::Kind::unique;
  out.solution.assign(unknowns, Rational(0));
  for (std::size_t i = 0; i < pivots.size(); ++i) out.solution[pivots[i]] = aug[i][unknowns];
  return out;
}

/// Inverse of a square rational matrix; throws if singular.
inline RatMatrix inverse(const RatMatrix& m) {
  const std::size_t n = m.size();
  RatMatrix aug(n, RatVector(2 * n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug[i][j] = m[i][j];
    aug[i][n + i] = 1;
  }
  const auto piv = rref(aug);
  if (piv.size() < n || piv[n - 1] != n - 1) throw NumericalError("singular matrix in exact inverse");
  RatMatrix inv(n, RatVector(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
  return inv;
}

// ---------------------------------------------------------------------------
// Integer row reduction.

/// Row-style Hermite normal form of an integer matrix, computed with
/// unimodular row operations.  If `transform` is non-null it receives the
/// unimodular U with U * m == result.
inline IntMatrix hermite_normal_form(IntMatrix m, IntMatrix* transform = nullptr) {
  const std::size_t rows = m.size();
  const std::size_t cols = rows == 0 ? 0 : m[0].size();
  IntMatrix u(rows, IntVector(rows, Integer(0)));
  for (std::size_t i = 0; i < rows; ++i) u[i][i] = 1;

  auto combine = [&](std::size_t a, std::size_t b, const Integer& p, const Integer& q, const Integer& r,
                     const Integer& s) {
    // (row_a, row_b) <- (p row_a + q row_b, r row_a + s row_b), det = ps - qr = +-1
    for (auto* mat : {&m, &u}) {
      auto& ra = (*mat)[a];
      auto& rb = (*mat)[b];
      for (std::size_t k = 0; k < ra.size(); ++k) {
        Integer x = p * ra[k] + q * rb[k];
        Integer y = r * ra[k] + s * rb[k];
        ra[k] = std::move(x);
        rb[k] = std::move(y);
      }
    }
  };

  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (m[i][c] == 0) continue;
      if (m[r][c] == 0) {
        std::swap(m[r], m[i]);
        std::swap(u[r], u[i]);
        continue;
      }
      // extended gcd: g = x a + y b
      Integer a = m[r][c], b = m[i][c];
      Integer x0 = 1, y0 = 0, x1 = 0, y1 = 1;
      Integer aa = a, bb = b;
      while (bb != 0) {
        Integer q = aa / bb;
        Integer t = aa - q * bb;
        aa = bb;
        bb = t;
        t = x0 - q * x1;
        x0 = x1;
        x1 = t;
        t = y0 - q * y1;
        y0 = y1;
        y1 = t;
      }
      const Integer g = aa;
      combine(r, i, x0, y0, -b / g, a / g);
    }
    if (m[r][c] == 0) continue;
    if (m[r][c] < 0) {
      for (auto& x : m[r]) x = -x;
      for (auto& x : u[r]) x = -x;
    }
    // reduce entries above the pivot into [0, pivot)
    for (std::size_t i = 0; i < r; ++i) {
      Integer q = m[i][c] / m[r][c];
      if (m[i][c] - q * m[r][c] < 0) q -= 1;
      if (q == 0) continue;
      for (std::size_t k = 0; k < cols; ++k) m[i][k] -= q * m[r][k];
      for (std::size_t k = 0; k < rows; ++k) u[i][k] -= q * u[r][k];
    }
    ++r;
  }
  if (transform) *transform = std::move(u);
  return m;
}

/// Saturated integer basis of { y in Z^rows : y^T m = 0 }, in Hermite form.
inline IntMatrix integer_left_kernel(const IntMatrix& m) {
  IntMatrix u;
  const IntMatrix h = hermite_normal_form(m, &u);
  IntMatrix basis;
  for (std::size_t i = 0; i < h.size(); ++i) {
    bool zero = true;
    for (const auto& x : h[i]) zero = zero && x == 0;
    if (zero) basis.push_back(u[i]);
  }
  if (basis.empty()) return basis;
  return hermite_normal_form(std::move(basis));
}

}  // namespace toric_floer

#endif  // TORIC_FLOER_RATIONAL_HPP
