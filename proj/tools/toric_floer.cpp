// toric_floer: command-line front end.
//
//   toric_floer analyze  FILE [--fiber a1,..,an] [--json]
//   toric_floer hf       FILE --fiber a1,..,an [--holonomy n1,..,nn] [--coefficients novikov|exp] [--json]
//   toric_floer balanced FILE [--mode novikov|holonomy] [--json]
//   toric_floer critical FILE [--real-grid R] [--imaginary-grid K] [--json]
//
// Exit status: 0 success, 2 input error, 3 numerical shortfall (the report is
// still printed).

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "toric_floer/report.hpp"

using namespace toric_floer;

namespace {

struct InputError : Error {
  using Error::Error;
};

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    out.push_back(item);
  }
  return out;
}

// "3", "-7/2", "0.19941", "1e-3" -> exact rational (decimals are exact).
std::optional<Rational> parse_exact(const std::string& s) {
  if (auto r = parse_rational(s)) return r;
  static const std::regex decimal(R"(([+-]?)(\d*)\.?(\d*)(?:[eE]([+-]?\d+))?)");
  std::smatch m;
  if (!std::regex_match(s, m, decimal) || (m[2].length() == 0 && m[3].length() == 0)) return std::nullopt;
  std::string text = m[2].str() + m[3].str();
  text.erase(0, std::min(text.find_first_not_of('0'), text.size() - 1));  // a leading 0 would mean octal
  Integer digits(text);
  long exponent = m[4].matched ? std::stol(m[4].str()) : 0;
  exponent -= static_cast<long>(m[3].length());
  if (std::labs(exponent) > 400) return std::nullopt;
  Integer scale = 1;
  for (long k = 0; k < std::labs(exponent); ++k) scale *= 10;
  Rational r = exponent >= 0 ? Rational(digits * scale) : Rational(digits, scale);
  return m[1].str() == "-" ? -r : r;
}

FiberPoint parse_fiber(const std::string& text, std::size_t dim) {
  const auto items = split_list(text);
  if (items.size() != dim)
    throw InputError("--fiber needs " + std::to_string(dim) + " coordinates, got " + std::to_string(items.size()));
  RatVector a;
  for (const auto& s : items) {
    const auto r = parse_exact(s);
    if (!r) throw InputError("--fiber: cannot read '" + s + "' as a number");
    a.push_back(*r);
  }
  return FiberPoint::from_exact(std::move(a));
}

// Angles in radians; "pi", "2pi/3", "-pi/2" are accepted.
HolonomyVector parse_holonomy(const std::string& text, std::size_t dim) {
  if (text.empty()) return HolonomyVector::zero(dim);
  const auto items = split_list(text);
  if (items.size() != dim)
    throw InputError("--holonomy needs " + std::to_string(dim) + " angles, got " + std::to_string(items.size()));
  HolonomyVector nu;
  static const std::regex with_pi(R"(([+-]?[0-9.]*)\*?pi(?:/([0-9.]+))?)");
  for (const auto& s : items) {
    std::smatch m;
    if (std::regex_match(s, m, with_pi)) {
      const std::string c = m[1].str();
      const double coef = c.empty() || c == "+" ? 1.0 : c == "-" ? -1.0 : std::stod(c);
      const double den = m[2].matched ? std::stod(m[2].str()) : 1.0;
      nu.nu.push_back(coef * std::numbers::pi / den);
      continue;
    }
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || *end != '\0' || !std::isfinite(v)) throw InputError("--holonomy: cannot read '" + s + "'");
    nu.nu.push_back(v);
  }
  return nu;
}

Polytope load_polytope(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path + ": cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_polytope(ss.str());
  } catch (const ParseError& e) {
    // ParseError already prefixes "line N: "; present it as file:line
    const std::string what = e.what();
    if (e.line() != 0) {
      const auto colon = what.find(": ");
      throw InputError(path + ":" + std::to_string(e.line()) + ": " + what.substr(colon + 2));
    }
    throw InputError(path + ": " + what);
  }
}

std::string fmt(double x, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

std::string show(const Json& j) {
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    if (!s.empty() && s[0] == '\x1f') return fmt(std::stod(s.substr(1)));
    return s;
  }
  if (j.is_array()) {
    std::string s = "(";
    for (std::size_t i = 0; i < j.size(); ++i) s += (i ? ", " : "") + show(j[i]);
    return s + ")";
  }
  if (j.is_null()) return "-";
  return j.dump();
}

void print_human(const Report& r) {
  const Json& d = r.data;
  const std::string cmd = d["command"];
  std::cout << "polytope: dim " << d["polytope"]["dim"] << ", " << d["polytope"]["facets"].size() << " facets\n";
  if (cmd == "analyze") {
    const auto& f = d["fan"];
    std::cout << "fan: cones per dimension " << show(f["cone_counts"]) << "\n"
              << "smooth=" << (f["smooth"].get<bool>() ? "true" : "false")
              << " fano=" << (f["fano"].get<bool>() ? "true" : "false") << " chi=" << f["euler_characteristic"] << "\n"
              << "primitive collections: " << show(d["primitive_collections"]) << "\n";
    for (const auto& k : d["kernel_lattice"]) std::cout << "charge " << show(k["charge"]) << "  level " << show(k["level"]) << "\n";
    std::cout << "index-2 discs at A = " << show(d["discs"]["fiber"]) << "\n  facet  exponent        area/2pi\n";
    for (const auto& c : d["discs"]["classes"]) {
      std::string area = c["area_over_two_pi"].is_null() ? fmt(std::stod(c["area"].get<std::string>().substr(1)) /
                                                              (2 * std::numbers::pi))
                                                        : c["area_over_two_pi"].get<std::string>();
      std::printf("  %-6s %-15s %s\n", c["facet"].dump().c_str(), show(c["exponent"]).c_str(), area.c_str());
    }
  } else if (cmd == "hf") {
    std::cout << "fiber A = " << show(d["fiber"]) << ", holonomy nu = " << show(d["holonomy"])
              << ", coefficients " << d["coefficients"].get<std::string>() << "\n";
    std::cout << "delta_2<pt> by area level:\n";
    for (const auto& l : d["levels"])
      std::cout << "  area/2pi " << (l["area_over_two_pi"].is_null() ? show(l["area"]) : show(l["area_over_two_pi"]))
                << "  facets " << show(l["sources"]) << "  |sum| " << show(l["norm"]) << "\n";
    std::cout << "rank HF = " << show(d["rank"]) << "\n";
  } else if (cmd == "balanced") {
    std::cout << "balanced fibers (" << d["mode"].get<std::string>() << "): " << d["solutions"].size() << "\n";
    for (const auto& s : d["solutions"]) {
      std::cout << "  #" << s["id"] << " A = " << show(s["A"]);
      if (!s["holonomy"].is_null()) std::cout << "  nu = " << show(s["holonomy"]);
      std::cout << "  levels " << show(s["levels"]) << "\n";
      if (s.contains("description")) std::cout << "     " << s["description"]["text"].get<std::string>() << "\n";
    }
    for (const auto& g : d["diagnostics"])
      if (g.contains("certificate"))
        std::cout << "  partition " << show(g["blocks"]) << ": " << g["message"].get<std::string>() << "\n";
    if (d.contains("non_unitary"))
      for (const auto& n : d["non_unitary"]) std::cout << "  at A = " << show(n["A"]) << ": " << n["message"].get<std::string>() << "\n";
  } else if (cmd == "critical") {
    std::cout << "critical points: " << d["count"] << " (chi = " << d["expected"] << ")\n";
    for (const auto& p : d["points"]) {
      std::cout << "  #" << p["id"] << " Re = " << show(p["theta"]["re"]) << "  Im = " << show(p["theta"]["im"])
                << "  |grad W| = " << show(p["residual"]);
      if (p["degenerate"].get<bool>()) std::cout << "  degenerate";
      if (!p["matched_balanced"].is_null()) std::cout << "  = balanced #" << p["matched_balanced"];
      if (p.contains("correspondence")) std::cout << "  rank(exp) " << show(p["correspondence"]["hf_rank_exp"]);
      std::cout << "\n";
    }
  }
  for (const auto& w : r.warnings) std::cout << "warning: " << w << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Floer cohomology of torus fibers in toric manifolds"};
  app.require_subcommand(1);
  bool json = false;
  std::string path, fiber, holonomy, coefficients = "novikov", mode = "holonomy";
  double tolerance = 1e-10;

  auto* analyze_cmd = app.add_subcommand("analyze", "fan, smoothness, Fano check, primitive collections, discs");
  analyze_cmd->add_option("file", path, "polytope file")->required();
  analyze_cmd->add_option("--fiber", fiber, "fiber for the disc table (default: vertex centroid)");
  analyze_cmd->add_flag("--json", json, "machine-readable report");

  auto* hf_cmd = app.add_subcommand("hf", "delta_2<pt> and the rank of Floer cohomology at a fiber");
  hf_cmd->add_option("file", path, "polytope file")->required();
  hf_cmd->add_option("--fiber", fiber, "fiber point a1,..,an")->required();
  hf_cmd->add_option("--holonomy", holonomy, "holonomy angles n1,..,nn in radians (default 0)");
  hf_cmd->add_option("--coefficients", coefficients, "novikov or exp")->check(CLI::IsMember({"novikov", "exp"}));
  hf_cmd->add_option("--tolerance", tolerance, "relative vanishing tolerance");
  hf_cmd->add_flag("--json", json, "machine-readable report");

  auto* balanced_cmd = app.add_subcommand("balanced", "balanced fibers");
  balanced_cmd->add_option("file", path, "polytope file")->required();
  balanced_cmd->add_option("--mode", mode, "novikov (trivial holonomy) or holonomy")
      ->check(CLI::IsMember({"novikov", "holonomy"}));
  balanced_cmd->add_flag("--json", json, "machine-readable report");

  auto* critical_cmd = app.add_subcommand("critical", "critical points of the mirror superpotential");
  critical_cmd->add_option("file", path, "polytope file")->required();
  CriticalOptions copts;
  critical_cmd->add_option("--real-grid", copts.real_grid, "Newton starts per axis over the inflated bounding box")
      ->check(CLI::PositiveNumber);
  critical_cmd->add_option("--imaginary-grid", copts.imaginary_grid, "Newton starts per axis in the imaginary direction")
      ->check(CLI::PositiveNumber);
  critical_cmd->add_flag("--json", json, "machine-readable report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const Polytope p = load_polytope(path);
    Report r;
    if (*analyze_cmd) {
      r = analyze(p, fiber.empty() ? std::nullopt : std::optional<FiberPoint>(parse_fiber(fiber, p.dim())));
    } else if (*hf_cmd) {
      r = hf(p, parse_fiber(fiber, p.dim()), parse_holonomy(holonomy, p.dim()),
             coefficients == "exp" ? Coefficients::exponential : Coefficients::novikov, tolerance);
    } else if (*balanced_cmd) {
      r = balanced(p, mode == "holonomy");
    } else {
      r = critical(p, copts);
    }
    if (json) {
      std::cout << render(r);
    } else {
      print_human(r);
    }
    if (r.exit_code == 3) std::cerr << path << ": critical point count below the Euler characteristic\n";
    return r.exit_code;
  } catch (const NumericalError& e) {
    std::cerr << path << ": numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    const std::string what = e.what();
    std::cerr << (what.rfind(path, 0) == 0 ? what : path + ": " + what) << "\n";
    return 2;
  }
}
