#include "cli.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <memory>
#include <numbers>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "helfrich/cmc.hpp"
#include "helfrich/functional.hpp"
#include "helfrich/residual.hpp"
#include "helfrich/theorem.hpp"
#include "output.hpp"

namespace helfrich::cli {

namespace {

// Everything any command can take; each subcommand registers its subset.
struct Options {
  std::string epsilon;  // comma list, empty = command default
  double c0 = 0.0;
  double lambda = 0.0;
  double pressure = 0.0;
  double beta = 1.0;
  std::string form = "u";
  int n = 64;
  double margin = 0.05;
  std::string orientation = "both";
  double kappa0 = -1.0;
  double a = 0.5;
  double r_infl = 0.8;
  int inner_sign = 1;
  std::string weight = "surface_measure";
  std::string mode = "symbolic";
  double c0_bracket = 10.0;
  int c0_seeds = 64;
  std::string output;
  std::string format = "csv";
  std::optional<long long> seed;
  std::string config;
};

struct Result {
  Json params;
  Json summary;
  std::optional<Table> table;
  bool failed = false;  // verification did not hold
  std::string failure;
};

double parse_double(std::string_view text, const std::string& name) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw InputError(name + ": cannot parse '" + std::string(text) + "' as a number");
  return v;
}

std::vector<double> epsilon_list(const Options& o, const std::vector<double>& fallback) {
  if (o.epsilon.empty()) return fallback;
  std::vector<double> out;
  std::string_view rest = o.epsilon;
  while (true) {
    const auto comma = rest.find(',');
    const double e = parse_double(rest.substr(0, comma), "epsilon");
    if (!std::isfinite(e) || e < 0.0) {
      std::ostringstream os;
      os << "epsilon must be finite and >= 0 (got " << format_number(e) << ")";
      throw InputError(os.str());
    }
    out.push_back(e);
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  return out;
}

double single_epsilon(const Options& o, double fallback) {
  const auto list = epsilon_list(o, {fallback});
  if (list.size() != 1) throw InputError("epsilon: this command takes a single value");
  return list.front();
}

MembraneParams membrane(const Options& o) {
  MembraneParams p{o.beta, o.c0, o.lambda, o.pressure};
  p.validate();
  return p;
}

Json params_json(const MembraneParams& p) {
  return {{"beta", p.beta}, {"c0", p.c0}, {"lambda", p.lambda_bar}, {"pressure", p.p_bar}};
}

Json number_array(const std::vector<double>& xs) {
  Json a = Json::array();
  for (double x : xs) a.push_back(x);
  return a;
}

void check_grid(const Options& o) {
  if (o.n < 2) throw InputError("n must be >= 2");
  if (!(o.margin > 0.0 && o.margin < 0.5)) throw InputError("margin must lie in (0, 0.5)");
}

ResidualForm parse_form(const std::string& f) {
  if (f == "u") return ResidualForm::u_form;
  if (f == "psi") return ResidualForm::psi_form;
  return ResidualForm::third_order;
}

FitOptions fit_options(const Options& o) {
  FitOptions f;
  f.weight = o.weight == "uniform" ? FitWeight::uniform : FitWeight::surface_measure;
  f.margin = o.margin;
  f.c0_bracket = o.c0_bracket;
  f.seeds = o.c0_seeds;
  return f;
}

Json fit_options_json(const FitOptions& f) {
  return {{"weight", to_string(f.weight)}, {"margin", f.margin}, {"c0_bracket", f.c0_bracket}, {"c0_seeds", f.seeds}};
}

// ---------------------------------------------------------------------------

Result cmd_residual(const Options& o, SignConvention conv) {
  const double eps = single_epsilon(o, 0.5);
  const MembraneParams p = membrane(o);
  const ResidualForm form = parse_form(o.form);
  check_grid(o);
  std::unique_ptr<ProfileCurve> profile;
  if (form == ResidualForm::third_order)
    profile = std::make_unique<SymbolicCassiniProfile>(eps);
  else
    profile = std::make_unique<CassiniProfile>(eps);
  const ResidualReport rep = residual_report(*profile, p, form, o.n, o.margin, conv);

  Result res;
  res.params = {{"epsilon", eps}, {"form", o.form}, {"n", o.n}, {"margin", o.margin}};
  res.params.update(params_json(p));
  res.summary = {{"form", to_string(rep.form)},
                 {"profile", profile->name()},
                 {"sup_norm", rep.sup_norm},
                 {"l2_norm", rep.l2_norm},
                 {"third_derivative", to_string(rep.third_derivative)},
                 {"max_u3_error", rep.max_u3_error}};
  Table t{{"r", "residual"}, {}};
  for (std::size_t i = 0; i < rep.grid.size(); ++i) t.rows.push_back({rep.grid[i], rep.residuals[i]});
  res.table = std::move(t);
  return res;
}

Result cmd_energy(const Options& o, SignConvention conv) {
  const auto eps_list = epsilon_list(o, {0.0});
  const MembraneParams p = membrane(o);
  Result res;
  res.params = {{"epsilon", number_array(eps_list)}};
  res.params.update(params_json(p));
  Table t{{"epsilon", "area", "volume", "bending", "total", "quad_error"}, {}};
  Json per = Json::array();
  for (double eps : eps_list) {
    const EnergyBreakdown e = helfrich_energy(CassiniProfile(eps), p, conv);
    t.rows.push_back({eps, e.area, e.volume, e.bending, e.total, e.quad_error.total});
    per.push_back({{"epsilon", eps},
                   {"quad_error", {{"bending", e.quad_error.bending},
                                   {"area", e.quad_error.area},
                                   {"volume", e.quad_error.volume}}}});
  }
  res.summary = {{"rows", t.rows.size()}, {"components", per}};
  res.table = std::move(t);
  return res;
}

Result cmd_fit(const Options& o, SignConvention) {
  const auto eps_list = epsilon_list(o, {0.5});
  const FitOptions fo = fit_options(o);
  Result res;
  res.params = {{"epsilon", number_array(eps_list)}};
  res.params.update(fit_options_json(fo));
  Table t{{"epsilon", "c0_opt", "lambda_opt", "p_opt", "l2_residual", "sup_residual", "l2_error", "iterations",
           "degenerate"},
          {}};
  double min_l2 = INFINITY;
  for (double eps : eps_list) {
    const FitResult f = fit_parameters(eps, fo);
    t.rows.push_back({eps, f.c0_opt, f.lambda_opt, f.p_opt, f.l2_residual, f.sup_residual, f.l2_error,
                      static_cast<long long>(f.iterations), static_cast<long long>(f.degenerate)});
    min_l2 = std::min(min_l2, f.l2_residual);
  }
  res.summary = {{"rows", t.rows.size()}, {"min_l2_residual", min_l2}};
  res.table = std::move(t);
  return res;
}

Json rational_pair(const mpq_class& q) { return Json::array({q.get_num().get_str(), q.get_den().get_str()}); }

std::string decimal15(long double x) {
  std::ostringstream os;
  os << std::setprecision(15) << static_cast<double>(x);
  return os.str();
}

Json symbolic_section(bool& ok) {
  using namespace algebra;
  const TheoremVerdict v = verify_theorem();
  static const char* names[4] = {"H1", "H2", "H3", "H4"};

  Json match;
  match["scale"] = v.match.scale ? Json(v.match.scale->get_str()) : Json(nullptr);
  match["all_match"] = v.match.all_match();
  Json tables = Json::array();
  for (int k = 0; k < 4; ++k)
    tables.push_back({{"polynomial", names[k]},
                      {"computed_terms", v.match.computed_terms[k]},
                      {"reference_terms", v.match.reference_terms[k]},
                      {"matched", v.match.matched[k]}});
  match["tables"] = tables;
  Json mism = Json::array();
  for (const auto& m : v.match.mismatches)
    mism.push_back({{"polynomial", names[m.index]},
                    {"monomial", MPoly::term(1, m.monomial).to_string()},
                    {"computed", m.computed.get_str()},
                    {"reference", m.reference.get_str()},
                    {"kind", to_string(m.kind)}});
  match["mismatches"] = mism;

  Json conditions = Json::array();
  for (int i = 0; i < 2; ++i) {
    Json roots = Json::array();
    for (const Surd& s : v.h3.positive_roots[i]) {
      const long double x = s.value();
      roots.push_back({{"exact", s.to_string()},
                       {"a", rational_pair(s.a)},
                       {"b", rational_pair(s.b)},
                       {"d", s.d.get_str()},
                       {"eps4", static_cast<double>(x)},
                       {"eps4_15", decimal15(x)},
                       {"epsilon", static_cast<double>(std::pow(x, 0.25L))},
                       {"epsilon_15", decimal15(std::pow(x, 0.25L))}});
    }
    conditions.push_back({{"r_power", v.h3.r_powers[i + 1]},
                          {"condition_in_x_eq_eps4", v.h3.conditions[i].to_string("x")},
                          {"positive_roots", roots}});
  }
  const DegenerateBranch& d = v.degenerate;
  Json degenerate = {{"pressure_forced_zero", d.pressure_forced_zero},
                     {"h3_vanishes", d.h3_vanishes},
                     {"h4_vanishes", d.h4_vanishes},
                     {"h1_r7_coefficient", d.h1_top.to_string()},
                     {"h1_r7_lambda_free", d.h1_top_lambda_free},
                     {"compatibility_gcd", d.compatibility_gcd.to_string("eps")},
                     {"no_common_lambda", d.no_common_lambda},
                     {"circle_trivial", d.circle_trivial},
                     {"closed", d.closed}};
  Json s;
  s["verdict"] = v.verdict();
  s["t_components_vanish"] = v.t_components_vanish;
  s["h_terms"] = Json::array();
  for (int k = 0; k < 4; ++k) s["h_terms"].push_back(v.cleared.H[k].size());
  s["match"] = match;
  s["pressure_from_r5"] = v.h3.pressure.to_string();
  s["conditions"] = conditions;
  s["common_factor"] = v.h3.common_factor.to_string("x");
  s["degenerate_branch"] = degenerate;
  ok = v.contradiction;
  return s;
}

Json numeric_section(const Options& o, bool& ok) {
  std::vector<double> grid;
  for (int k = 1; k <= 12; ++k) grid.push_back(k / 10.0);
  const auto eps_list = epsilon_list(o, grid);
  const FitOptions fo = fit_options(o);
  Json rows = Json::array();
  bool all = true;
  double min_l2 = INFINITY;
  for (double eps : eps_list) {
    const FitResult f = fit_parameters(eps, fo);
    const bool positive = f.l2_residual > 0.0 && f.l2_residual > 10.0 * f.l2_error;
    all = all && positive;
    min_l2 = std::min(min_l2, f.l2_residual);
    rows.push_back({{"epsilon", eps},
                    {"l2_residual", f.l2_residual},
                    {"l2_error", f.l2_error},
                    {"c0_opt", f.c0_opt},
                    {"lambda_opt", f.lambda_opt},
                    {"p_opt", f.p_opt},
                    {"positive", positive}});
  }
  ok = all;
  return {{"fit", fit_options_json(fo)}, {"rows", rows}, {"min_l2_residual", min_l2}, {"all_positive", all}};
}

Result cmd_verify(const Options& o, SignConvention) {
  Result res;
  res.params = {{"mode", o.mode}};
  bool ok = true;
  if (o.mode == "symbolic" || o.mode == "both") {
    bool sym = false;
    res.summary["symbolic"] = symbolic_section(sym);
    if (!sym) res.failure += "symbolic verdict is not CONTRADICTION; ";
    ok = ok && sym;
  }
  if (o.mode == "numeric" || o.mode == "both") {
    res.params["epsilon"] = number_array(epsilon_list(o, {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0, 1.1, 1.2}));
    res.params.update(fit_options_json(fit_options(o)));
    bool num = false;
    res.summary["numeric"] = numeric_section(o, num);
    if (!num) res.failure += "some fitted residual is not resolved above zero; ";
    ok = ok && num;
  }
  res.summary["passed"] = ok;
  res.failed = !ok;
  return res;
}

Result cmd_sphere(const Options& o, SignConvention) {
  const MembraneParams p = membrane(o);
  std::vector<Orientation> which;
  if (o.orientation != "II") which.push_back(Orientation::I);
  if (o.orientation != "I") which.push_back(Orientation::II);
  Result res;
  res.params = {{"orientation", o.orientation}};
  res.params.update(params_json(p));
  Table t{{"orientation", "radius", "el_residual"}, {}};
  Json roots;
  for (Orientation orient : which) {
    const auto radii = sphere_solve(p, orient);
    roots[to_string(orient)] = number_array(radii);
    for (double a : radii) t.rows.push_back({to_string(orient), a, sphere_el_residual(a, p, orient)});
  }
  res.summary = {{"roots", roots},
                 {"orientation_map",
                  {{"I", "psi = +arcsin(r/a), H = -1/a: P a^2 + (c0^2 + 2 lambda) a + 2 c0 = 0"},
                   {"II", "psi = -arcsin(r/a), H = +1/a: P a^2 - (c0^2 + 2 lambda) a + 2 c0 = 0"}}}};
  res.table = std::move(t);
  return res;
}

Result cmd_rbc(const Options& o, SignConvention conv) {
  const MembraneParams p = membrane(o);
  if (o.n < 2) throw InputError("n must be >= 2");
  const CompositeProfile cp = build_composite(o.kappa0, o.a, o.r_infl, o.inner_sign, conv);
  const EnergyBreakdown m = composite_metrics(cp, p);

  Result res;
  res.params = {{"kappa0", o.kappa0}, {"a", o.a}, {"r_infl", o.r_infl}, {"inner_sign", o.inner_sign}, {"n", o.n}};
  res.params.update(params_json(p));
  res.summary = {{"h_inner", cp.inner.h_const},
                 {"h_outer", cp.outer.h_const},
                 {"c_outer", cp.outer.c_int},
                 {"r_inflection", cp.r_inflection},
                 {"r_rim", cp.r_rim},
                 {"metrics",
                  {{"bending", m.bending},
                   {"area", m.area},
                   {"volume", m.volume},
                   {"total", m.total},
                   {"quad_error",
                    {{"bending", m.quad_error.bending}, {"area", m.quad_error.area}, {"volume", m.quad_error.volume}}}}}};

  Table t{{"r", "z_upper", "z_lower", "branch_id", "psi", "H"}, {}};
  auto emit = [&](const CMCBranch& b, long long id, double r) {
    const double z = cp.z_upper(r);
    const BranchAngle ang = branch_psi(b, r);
    // H = -(d(sin psi)/dr + sin psi / r) / 2, finite up to the rim.
    const double H = r == 0.0 ? b.h_const : -0.5 * ((-b.h_const - b.c_int / (r * r)) + b.sin_psi(r) / r);
    t.rows.push_back({r, z, z == 0.0 ? 0.0 : -z, id, ang.psi, H});
  };
  for (int k = 0; k < o.n; ++k) emit(cp.inner, 0, cp.r_inflection * k / (o.n - 1));
  for (int k = 0; k < o.n; ++k) {
    const double r = k == o.n - 1 ? cp.r_rim : cp.r_inflection + (cp.r_rim - cp.r_inflection) * k / (o.n - 1);
    emit(cp.outer, 1, r);
  }
  res.table = std::move(t);
  return res;
}

Result cmd_profile_export(const Options& o, SignConvention conv) {
  const double eps = single_epsilon(o, 0.5);
  check_grid(o);
  const CassiniProfile profile(eps);
  Result res;
  res.params = {{"epsilon", eps}, {"n", o.n}, {"margin", o.margin}};
  res.summary = {{"profile", profile.name()},
                 {"domain", {profile.domain().lo, profile.domain().hi}},
                 {"eccentricity", eps == 0.0 ? Json(nullptr) : Json(1.0 / eps)}};
  Table t{{"r", "z_upper", "z_lower", "u", "du", "d2u", "psi", "dpsi_dr", "H", "K"}, {}};
  for (double r : chebyshev_grid(profile.domain(), o.n, o.margin)) {
    const SlopeJet s = profile.slope(r);
    const CurvaturePoint c = curvature_point(profile, r, conv);
    const double z = profile.z(r);
    t.rows.push_back({r, z, -z, s.u, s.du, s.d2u, c.psi, c.dpsi_dr, c.H, c.K});
  }
  res.table = std::move(t);
  return res;
}

// ---------------------------------------------------------------------------

using Handler = std::function<Result(const Options&, SignConvention)>;

// key = value lines; '#' starts a comment.
std::vector<std::pair<std::string, std::string>> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("config: cannot open '" + path + "'");
  std::vector<std::pair<std::string, std::string>> kv;
  std::string line;
  int lineno = 0;
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return std::string();
    return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw InputError("config line " + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
    if (key.rfind("--", 0) == 0) key.erase(0, 2);
    std::replace(key.begin(), key.end(), '_', '-');
    if (key.empty()) throw InputError("config line " + std::to_string(lineno) + ": empty key");
    kv.emplace_back(key, value);
  }
  return kv;
}

std::optional<std::string> config_path(const std::vector<std::string>& args) {
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) return args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) return args[i].substr(9);
  }
  return std::nullopt;
}

}  // namespace

int run(const std::vector<std::string>& args_in, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Axisymmetric Helfrich membranes: shape-equation residuals, energies, fits and RBC profiles",
               "helfrich"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);

  std::map<std::string, Handler> handlers;
  std::map<std::string, CLI::App*> subs;
  auto sub = [&](const std::string& name, const std::string& help, Handler h) {
    CLI::App* s = app.add_subcommand(name, help);
    s->add_option("--output", o.output, "Write results to this file instead of stdout");
    s->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    s->add_option("--seed", o.seed, "Accepted for reproducible scripts; no command draws random numbers");
    s->add_option("--config", o.config, "key = value defaults; command-line flags override them");
    handlers[name] = std::move(h);
    subs[name] = s;
    return s;
  };
  auto add_params = [&](CLI::App* s) {
    s->add_option("--c0", o.c0, "Spontaneous curvature");
    s->add_option("--lambda", o.lambda, "Normalized tension lambda / beta");
    s->add_option("--pressure", o.pressure, "Normalized pressure Delta P / beta");
  };
  auto add_fit = [&](CLI::App* s) {
    s->add_option("--weight", o.weight, "Residual weight")->check(CLI::IsMember({"surface_measure", "uniform"}));
    s->add_option("--margin", o.margin, "Fraction of the domain width trimmed at each end");
    s->add_option("--c0-bracket", o.c0_bracket, "c0 is searched in [-bracket, bracket] / r_max");
    s->add_option("--c0-seeds", o.c0_seeds, "Seed points of the c0 search");
  };

  {
    auto* s = sub("residual", "Shape-equation residual of a Cassini oval on a Chebyshev grid", cmd_residual);
    s->add_option("--epsilon", o.epsilon, "Biconcavity eps >= 0");
    add_params(s);
    s->add_option("--beta", o.beta, "Bending rigidity");
    s->add_option("--form", o.form, "Residual form")->check(CLI::IsMember({"u", "psi", "third"}));
    s->add_option("--n", o.n, "Grid points");
    s->add_option("--margin", o.margin, "Fraction of the domain width trimmed at each end");
  }
  {
    auto* s = sub("energy", "Area, volume and bending energy of Cassini surfaces", cmd_energy);
    s->add_option("--epsilon", o.epsilon, "Comma-separated biconcavities");
    add_params(s);
    s->add_option("--beta", o.beta, "Bending rigidity");
  }
  {
    auto* s = sub("fit", "Least-squares (c0, lambda, P) for Cassini ovals", cmd_fit);
    s->add_option("--epsilon", o.epsilon, "Comma-separated biconcavities");
    add_fit(s);
  }
  {
    auto* s = sub("verify-theorem", "Exact and numeric check that no Cassini oval with eps > 0 is an equilibrium",
                  cmd_verify);
    s->add_option("--mode", o.mode, "Which checks to run")->check(CLI::IsMember({"symbolic", "numeric", "both"}));
    s->add_option("--epsilon", o.epsilon, "Comma-separated grid for the numeric check");
    add_fit(s);
  }
  {
    auto* s = sub("sphere", "Radii of spherical equilibria for given parameters", cmd_sphere);
    add_params(s);
    s->add_option("--orientation", o.orientation, "I (H = -1/a), II (H = +1/a) or both")
        ->check(CLI::IsMember({"I", "II", "both"}));
  }
  {
    auto* s = sub("rbc", "Two-branch constant-mean-curvature cell profile", cmd_rbc);
    s->add_option("--kappa0", o.kappa0, "Center of the two mean curvatures");
    s->add_option("--a", o.a, "Half the gap between the two mean curvatures");
    s->add_option("--r-infl", o.r_infl, "Junction radius");
    s->add_option("--inner-sign", o.inner_sign, "Inner branch uses H = kappa0 + sign * a")
        ->check(CLI::IsMember({-1, 1}));
    add_params(s);
    s->add_option("--beta", o.beta, "Bending rigidity");
    s->add_option("--n", o.n, "Rows per branch");
  }
  {
    auto* s = sub("profile-export", "Cassini profile with slope and curvature columns", cmd_profile_export);
    s->add_option("--epsilon", o.epsilon, "Biconcavity eps >= 0");
    s->add_option("--n", o.n, "Grid points");
    s->add_option("--margin", o.margin, "Fraction of the domain width trimmed at each end");
  }

  try {
    std::vector<std::string> args = args_in;
    // Config values go in front so later command-line flags win.
    if (!args.empty() && subs.count(args.front())) {
      if (auto path = config_path(args)) {
        CLI::App* s = subs.at(args.front());
        std::vector<std::string> injected;
        for (const auto& [key, value] : read_config(*path)) {
          if (key == "config") continue;
          bool known_anywhere = false;
          for (const auto& [name, other] : subs) known_anywhere = known_anywhere || other->get_option_no_throw("--" + key);
          if (!known_anywhere) throw InputError("config: unknown key '" + key + "'");
          if (!s->get_option_no_throw("--" + key)) continue;
          injected.push_back("--" + key);
          injected.push_back(value);
        }
        args.insert(args.begin() + 1, injected.begin(), injected.end());
      }
    }
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help());
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return input_error;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return input_error;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    const SignConvention conv = resolved_sign_convention();
    Result res = handlers.at(command)(o, conv);
    res.params["format"] = o.format;
    if (o.seed) res.params["seed"] = *o.seed;
    const Json meta = make_metadata(command, res.params, conv);

    std::ofstream file;
    if (!o.output.empty()) {
      file.open(o.output, std::ios::binary);
      if (!file) throw InputError("output: cannot open '" + o.output + "' for writing");
    }
    std::ostream& dest = o.output.empty() ? out : file;
    const Table table = res.table ? *res.table : flatten_summary(res.summary);
    if (o.format == "json")
      write_json(dest, meta, res.summary, res.table ? &*res.table : nullptr);
    else
      write_csv(dest, meta, res.summary, table);
    dest.flush();
    if (!dest) throw NumericError("output: write failed");

    if (res.failed) {
      err << "VERIFICATION FAILED: " << res.failure << '\n';
      return verification_failure;
    }
    return ok;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return input_error;
  } catch (const NumericError& e) {
    err << "numeric failure: " << e.what() << '\n';
    return numeric_failure;
  } catch (const ResidueInT& e) {
    err << "VERIFICATION FAILED: " << e.what() << '\n';
    return verification_failure;
  } catch (const std::exception& e) {
    err << "numeric failure: " << e.what() << '\n';
    return numeric_failure;
  }
}

}  // namespace helfrich::cli
