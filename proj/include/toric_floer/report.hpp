// JSON reports shared by the command-line tool and the golden tests.
//
// Rationals are written as "p/q" strings, floats with 17 significant digits,
// facet indices 1-based in file order.

#ifndef TORIC_FLOER_REPORT_HPP
#define TORIC_FLOER_REPORT_HPP

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <regex>
#include <string>
#include <vector>

#include "json.hpp"
#include "toric_floer/disc.hpp"
#include "toric_floer/errors.hpp"
#include "toric_floer/fan.hpp"
#include "toric_floer/floer.hpp"
#include "toric_floer/kernel_lattice.hpp"
#include "toric_floer/mirror.hpp"
#include "toric_floer/polytope.hpp"
#include "toric_floer/rational.hpp"

namespace toric_floer {

using Json = nlohmann::ordered_json;

namespace report_detail {

// marks a pre-formatted number inside a string; stripped by dump_report
inline constexpr char number_mark = '\x1f';

inline Json number(double x) {
  if (!std::isfinite(x)) return nullptr;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x == 0.0 ? 0.0 : x);  // no negative zero
  return std::string(1, number_mark) + buf;
}

inline Json numbers(const std::vector<double>& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(number(x));
  return a;
}

inline Json rationals(const RatVector& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}

inline Json complex_parts(const std::vector<Complex>& v) {
  std::vector<double> re, im;
  for (const auto& x : v) re.push_back(x.real()), im.push_back(x.imag());
  return Json{{"re", numbers(re)}, {"im", numbers(im)}};
}

inline Json one_based(const std::vector<std::vector<std::size_t>>& blocks) {
  Json a = Json::array();
  for (const auto& b : blocks) {
    Json x = Json::array();
    for (auto j : b) x.push_back(j + 1);
    a.push_back(x);
  }
  return a;
}

inline Json fiber(const FiberPoint& a) { return a.exact ? rationals(*a.exact) : numbers(a.coords); }

inline Json strings(const std::vector<std::string>& v) {
  Json a = Json::array();
  for (const auto& s : v) a.push_back(s);
  return a;
}

inline void append_unique(std::vector<std::string>& out, const std::vector<std::string>& more) {
  for (const auto& s : more)
    if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
}

}  // namespace report_detail

/// Serialises with two-space indentation and a trailing newline.
inline std::string dump_report(const Json& j) {
  static const std::regex marked("\"\\\\u001f([^\"]*)\"");
  return std::regex_replace(j.dump(2), marked, "$1") + "\n";
}

struct Report {
  Json data;
  std::vector<std::string> warnings;
  int exit_code = 0;  ///< 0 ok, 3 numerical shortfall (report still complete)
};

inline Json polytope_json(const Polytope& p) {
  using namespace report_detail;
  Json facets = Json::array();
  for (std::size_t j = 0; j < p.num_facets(); ++j)
    facets.push_back({{"facet", j + 1}, {"normal", p.normal(j).coords}, {"offset", to_string(p.facet(j).offset)}});
  Json vertices = Json::array();
  for (const auto& v : p.vertices()) vertices.push_back(rationals(v.point));
  return {{"dim", p.dim()}, {"facets", facets}, {"vertices", vertices}};
}

inline Json fan_json(const Fan& f) {
  Json counts = Json::array();
  for (std::size_t k = 0; k <= f.dim(); ++k) counts.push_back(f.cones(k).size());
  std::vector<std::vector<std::size_t>> max_cones;
  for (const auto& c : f.max_cones()) max_cones.push_back(c.generators);
  return {{"cone_counts", counts},
          {"max_cones", report_detail::one_based(max_cones)},
          {"euler_characteristic", euler_characteristic(f)},
          {"smooth", is_smooth(f)},
          {"fano", is_fano(f)}};
}

/// Structure of the polytope and its fan, plus the index-2 disc table at `at`
/// (default: the vertex centroid).
inline Report analyze(const Polytope& p, const std::optional<FiberPoint>& at = std::nullopt) {
  using namespace report_detail;
  Report r;
  const Fan f = normal_fan(p);
  const KernelLattice k = kernel_lattice(f, p);
  const FiberPoint a = at ? *at : FiberPoint::from_exact(p.vertex_centroid());
  Json kernel = Json::array();
  for (std::size_t row = 0; row < k.rank(); ++row) {
    Json q = Json::array();
    for (const auto& x : k.basis[row]) q.push_back(x.convert_to<long long>());
    kernel.push_back({{"charge", q}, {"level", to_string(k.reduction_level[row])}});
  }
  Json discs = Json::array();
  for (const auto& d : index_two_classes(p)) {
    const std::size_t j = static_cast<std::size_t>(
        std::find(d.multiplicities.begin(), d.multiplicities.end(), 1u) - d.multiplicities.begin());
    const DiscArea area = disc_area(d, a, p);
    discs.push_back({{"facet", j + 1},
                     {"exponent", torus_coordinate_form(j, f).coords},
                     {"maslov", maslov_index(d)},
                     {"area", number(area.value)},
                     {"area_over_two_pi", area.over_two_pi ? Json(to_string(*area.over_two_pi)) : Json(nullptr)}});
  }
  if (!is_smooth(f)) r.warnings.push_back("unsupported regime: the fan is not smooth");
  if (!is_fano(f)) r.warnings.push_back("unsupported regime: the fan is not Fano; hf, balanced and critical results carry no guarantee");
  r.data = {{"command", "analyze"},
            {"polytope", polytope_json(p)},
            {"fan", fan_json(f)},
            {"primitive_collections", one_based(primitive_collections(f))},
            {"kernel_lattice", kernel},
            {"discs", {{"fiber", fiber(a)}, {"classes", discs}}}};
  return r;
}

/// delta_2<pt> grouped by area level and the resulting rank.
inline Report hf(const Polytope& p, const FiberPoint& a, const HolonomyVector& nu, Coefficients coefficients,
                 double tolerance = 1e-10) {
  using namespace report_detail;
  Report r;
  const NovikovVector d = delta2_point(p, a, nu);
  Json levels = Json::array();
  for (const auto& t : d.terms()) {
    std::vector<std::size_t> src = t.sources;
    std::sort(src.begin(), src.end());
    Json s = Json::array();
    for (auto j : src) s.push_back(j + 1);
    levels.push_back({{"area", number(t.area)},
                      {"area_over_two_pi", t.area_over_two_pi ? Json(to_string(*t.area_over_two_pi)) : Json(nullptr)},
                      {"q_power", t.q_power},
                      {"sources", s},
                      {"vector", complex_parts(t.value())},
                      {"norm", number(NovikovVector::norm(t))}});
  }
  Json rank = nullptr;
  try {
    rank = hf_rank(p, a, nu, {coefficients, tolerance});
  } catch (const UnsupportedRegime& e) {
    r.warnings.push_back(e.what());
  }
  r.data = {{"command", "hf"},
            {"polytope", polytope_json(p)},
            {"fiber", fiber(a)},
            {"holonomy", numbers(nu.nu)},
            {"coefficients", coefficients == Coefficients::novikov ? "novikov" : "exp"},
            {"levels", levels}};
  if (coefficients == Coefficients::exponential) r.data["exponential_sum"] = complex_parts(d.evaluate_exponential());
  r.data["rank"] = rank;
  return r;
}

inline Json balanced_solutions_json(const Polytope& p, const BalancedReport& b, bool describe) {
  using namespace report_detail;
  Json out = Json::array();
  for (std::size_t k = 0; k < b.solutions.size(); ++k) {
    const auto& s = b.solutions[k];
    Json x = {{"id", k + 1},
              {"A", fiber(s.A)},
              {"holonomy", s.nu ? numbers(s.nu->nu) : Json(nullptr)},
              {"residual", number(s.residual)},
              {"levels", one_based(s.partition.blocks)}};
    if (describe) {
      const auto d = describe_balanced(p, s);
      Json lv = Json::array();
      for (const auto& l : d.factor_levels) lv.push_back(to_string(l));
      x["description"] = {{"blocks", one_based(d.blocks)}, {"factor_dims", d.factor_dims}, {"factor_levels", lv},
                          {"text", d.text}};
    }
    out.push_back(x);
  }
  return out;
}

inline Report balanced(const Polytope& p, bool holonomy) {
  using namespace report_detail;
  Report r;
  const BalancedReport b = holonomy ? balanced_fibers_with_holonomy(p) : balanced_fibers_novikov(p);
  append_unique(r.warnings, b.warnings);
  Json diags = Json::array();
  for (const auto& d : b.diagnostics) {
    if (d.kind == PartitionDiagnostic::Kind::accepted) continue;
    Json x = {{"blocks", one_based(d.blocks)}, {"kind", to_string(d.kind)}};
    if (d.A) x["A"] = rationals(*d.A);
    if (d.certificate) {
      x["certificate"] = rationals(*d.certificate);
      x["certificate_value"] = to_string(*d.certificate_value);
    }
    if (!d.message.empty()) x["message"] = d.message;
    diags.push_back(x);
  }
  r.data = {{"command", "balanced"},
            {"polytope", polytope_json(p)},
            {"mode", holonomy ? "holonomy" : "novikov"},
            {"solutions", balanced_solutions_json(p, b, !holonomy)},
            {"diagnostics", diags}};
  if (holonomy) {
    Json nu = Json::array();
    for (const auto& d : non_unitary_holonomies(p, b)) {
      Json roots = Json::array();
      for (std::size_t k = 0; k < d.holonomies.size(); ++k) {
        std::vector<double> mod;
        for (const auto& h : d.holonomies[k]) mod.push_back(std::abs(h));
        roots.push_back({{"h", complex_parts(d.holonomies[k])}, {"modulus", numbers(mod)}, {"unitary", bool(d.unitary[k])}});
      }
      nu.push_back({{"blocks", one_based(d.blocks)}, {"A", rationals(d.A)}, {"roots", roots}, {"message", d.message}});
    }
    r.data["non_unitary"] = nu;
  }
  return r;
}

/// Critical points of W, the count against chi, and the correspondence checks
/// at every critical point over the interior.
inline Report critical(const Polytope& p, const CriticalOptions& opts = {}) {
  using namespace report_detail;
  Report r;
  const Fan f = normal_fan(p);
  const bool fano = is_fano(f);
  const CriticalReport c = critical_points(p, opts);
  append_unique(r.warnings, c.warnings);
  const BalancedReport b = balanced_fibers_with_holonomy(p);
  Json points = Json::array();
  for (std::size_t k = 0; k < c.points.size(); ++k) {
    const auto& cp = c.points[k];
    std::vector<double> re, im;
    for (const auto& t : cp.theta.theta) re.push_back(t.real()), im.push_back(t.imag());
    const auto a = cp.theta.fiber();
    const bool interior = p.is_interior(a);
    Json matched = nullptr;
    for (std::size_t s = 0; s < b.solutions.size(); ++s)
      if (mirror_distance(cp.theta, MirrorPoint::from_fiber(b.solutions[s].A.coords, b.solutions[s].nu->nu)) < 1e-8)
        matched = s + 1;
    Json x = {{"id", k + 1},
              {"theta", {{"re", numbers(re)}, {"im", numbers(im)}}},
              {"residual", number(cp.residual)},
              {"hessian_condition", number(cp.hessian_condition)},
              {"degenerate", cp.degenerate},
              {"interior", interior},
              {"matched_balanced", matched}};
    if (interior) {
      const auto fa = FiberPoint::from_numeric(a);
      const auto nu = cp.theta.holonomy();
      Json corr = {{"o_minus_W", number(check_o_equals_W(p, fa, nu))},
                   {"delta2_plus_gradW", number(check_delta2_equals_gradW(p, fa, nu))}};
      corr["hf_rank_exp"] = fano ? Json(hf_rank(p, fa, nu, {Coefficients::exponential})) : Json(nullptr);
      x["correspondence"] = corr;
    }
    points.push_back(x);
  }
  r.data = {{"command", "critical"},
            {"polytope", polytope_json(p)},
            {"expected", c.expected},
            {"count", c.points.size()},
            {"starts", c.starts},
            {"points", points},
            {"balanced", balanced_solutions_json(p, b, false)}};
  if (fano && c.points.size() < c.expected) r.exit_code = 3;
  return r;
}

/// Attaches warnings and renders the final document.
inline std::string render(Report& r) {
  r.data["warnings"] = report_detail::strings(r.warnings);
  return dump_report(r.data);
}

}  // namespace toric_floer

#endif  // TORIC_FLOER_REPORT_HPP
