#include "coulcs/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <complex>
#include <cstdio>
#include <limits>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "coulcs/acceptance.hpp"
#include "coulcs/coherent.hpp"
#include "coulcs/errors.hpp"
#include "coulcs/limits.hpp"
#include "coulcs/spectrum.hpp"
#include "coulcs/wavefunctions.hpp"

namespace coulcs::cli {

namespace {

using json = nlohmann::ordered_json;
using Complex = std::complex<double>;
using spectrum::PhysicalConfig;
using spectrum::Sector;
namespace co = coulcs::coherent;

// ---------------------------------------------------------------------------
// Reports and their three renderings.

enum class Format { json, csv, table };

struct Report {
  json meta = json::object();
  std::vector<std::string> columns;
  std::vector<std::vector<json>> rows;
};

json number_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

json optional_number(const std::optional<double>& x) {
  return x ? number_or_null(*x) : json(nullptr);
}

std::string csv_cell(const json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) {
    const auto& s = v.get_ref<const std::string&>();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char ch : s) {
      if (ch == '"') quoted += '"';
      quoted += ch;
    }
    return quoted + "\"";
  }
  return v.dump();
}

std::string table_cell(const json& v) {
  if (v.is_null()) return "-";
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_float()) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v.get<double>());
    return buf;
  }
  return v.dump();
}

void emit_meta(const Report& rep, std::ostream& out) {
  for (const auto& [key, value] : rep.meta.items()) {
    out << "# " << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump())
        << '\n';
  }
}

void emit(const Report& rep, Format format, std::ostream& out) {
  switch (format) {
    case Format::json: {
      json doc;
      doc["meta"] = rep.meta;
      json data = json::array();
      for (const auto& row : rep.rows) {
        json obj = json::object();
        for (std::size_t i = 0; i < rep.columns.size(); ++i) obj[rep.columns[i]] = row[i];
        data.push_back(std::move(obj));
      }
      doc["data"] = std::move(data);
      out << doc.dump(2) << '\n';
      return;
    }
    case Format::csv: {
      emit_meta(rep, out);
      for (std::size_t i = 0; i < rep.columns.size(); ++i) {
        out << (i ? "," : "") << rep.columns[i];
      }
      out << '\n';
      for (const auto& row : rep.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_cell(row[i]);
        out << '\n';
      }
      return;
    }
    case Format::table: {
      emit_meta(rep, out);
      std::vector<std::size_t> width(rep.columns.size());
      std::vector<std::vector<std::string>> cells;
      for (std::size_t i = 0; i < rep.columns.size(); ++i) width[i] = rep.columns[i].size();
      for (const auto& row : rep.rows) {
        std::vector<std::string> line;
        for (std::size_t i = 0; i < row.size(); ++i) {
          line.push_back(table_cell(row[i]));
          width[i] = std::max(width[i], line.back().size());
        }
        cells.push_back(std::move(line));
      }
      auto put = [&](const std::vector<std::string>& line) {
        for (std::size_t i = 0; i < line.size(); ++i) {
          out << (i ? "  " : "") << std::string(width[i] - line[i].size(), ' ') << line[i];
        }
        out << '\n';
      };
      put(rep.columns);
      for (const auto& line : cells) put(line);
      return;
    }
  }
}

Format parse_format(const std::string& s) {
  if (s == "json") return Format::json;
  if (s == "csv") return Format::csv;
  return Format::table;
}

// ---------------------------------------------------------------------------
// Flags.

struct Common {
  double omega = 0.5;
  double charge = 1.0;
  unsigned ell = 0;
  double radius = 0.0;
  double tol = 1e-10;
  std::string output = "table";
  CLI::Option* omega_opt = nullptr;
  CLI::Option* charge_opt = nullptr;
  CLI::Option* radius_opt = nullptr;
};

PhysicalConfig make_config(const Common& c) {
  double omega = c.omega;
  const bool has_omega = c.omega_opt->count() > 0;
  const bool has_charge = c.charge_opt->count() > 0;
  if (has_charge && !has_omega) {
    omega = 0.5 * c.charge * c.charge;
  } else if (has_charge && has_omega &&
             std::abs(omega - 0.5 * c.charge * c.charge) > 1e-12 * omega) {
    throw ConfigError("--omega and --Z disagree (omega = Z^2/2 with e = 1)");
  }
  if (c.radius_opt->count() > 0) return PhysicalConfig::curved(omega, c.radius, c.charge);
  return PhysicalConfig::flat(omega, c.charge);
}

json base_meta(const std::string& command, const Common& c, const PhysicalConfig& cfg) {
  json m = json::object();
  m["version"] = std::string("coulcs ") + kVersion;
  m["command"] = command;
  m["omega"] = cfg.omega();
  m["Z"] = cfg.charge();
  m["ell"] = c.ell;
  m["R"] = cfg.radius() ? json(*cfg.radius()) : json(nullptr);
  m["tol"] = c.tol;
  return m;
}

double parse_real(const std::string& text) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) {
    throw DomainError("cannot parse '" + text + "' as a number");
  }
  return v;
}

std::size_t parse_count(const std::string& text) {
  std::size_t v = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) {
    throw DomainError("cannot parse '" + text + "' as a non-negative integer");
  }
  return v;
}

// ---------------------------------------------------------------------------
// Subcommands.

struct SpectrumOpts {
  bool curved = false;
  bool flat = false;
  std::string n = "0..5";
};

int cmd_spectrum(const Common& c, const SpectrumOpts& o, Report& rep) {
  const auto cfg = make_config(c);
  if (o.curved && !cfg.is_curved()) throw ConfigError("spectrum --curved needs --R");
  const bool curved = cfg.is_curved() && !o.flat;
  const Sector sec{c.ell};
  rep.meta = base_meta("spectrum", c, cfg);
  rep.meta["space"] = curved ? "curved" : "flat";
  if (curved) rep.meta["critical_index"] = spectrum::critical_index(sec, cfg);
  rep.columns = {"n", "N", "energy", "gen_number", "gen_factorial"};
  for (std::size_t n : parse_index_range(o.n)) {
    const auto g = curved ? spectrum::gen_number_curved(n, sec, cfg)
                          : spectrum::gen_number_flat(n, sec);
    const double e = curved ? spectrum::energy_curved({n}, sec, cfg)
                            : spectrum::energy_flat_bound({n}, sec, cfg);
    rep.rows.push_back({n, spectrum::principal({n}, sec), e, g.value, g.factorial});
  }
  return kExitOk;
}

struct StatesOpts {
  std::string kind = "bound";
  std::size_t n = 0;
  double k = 1.0;
  std::string grid;
  std::string norm = "printed";
};

int cmd_states(const Common& c, const StatesOpts& o, Report& rep) {
  const auto cfg = make_config(c);
  const Sector sec{c.ell};
  rep.meta = base_meta("states", c, cfg);
  rep.meta["kind"] = o.kind;
  rep.columns = {o.kind == "curved" ? "chi" : "r", "re", "im"};
  if (o.kind == "curved") {
    const auto grid = parse_grid(o.grid.empty() ? "0..3.141592653589793:33" : o.grid);
    const wavefunctions::CurvedRadialFunction w({o.n}, sec, cfg);
    rep.meta["n"] = o.n;
    rep.meta["lambda_n"] = w.params().lambda_n;
    rep.meta["norm_deviation"] = w.norm_deviation();
    for (double chi : grid) {
      const Complex v = w(chi);
      rep.rows.push_back({chi, v.real(), v.imag()});
    }
    return kExitOk;
  }
  const auto grid = parse_grid(o.grid.empty() ? "0..10:11" : o.grid);
  const auto flat = PhysicalConfig::flat(cfg.omega(), cfg.charge());
  if (o.kind == "bound") {
    rep.meta["n"] = o.n;
    for (double r : grid) {
      rep.rows.push_back({r, wavefunctions::radial_flat_bound({o.n}, sec, flat, r), 0.0});
    }
    return kExitOk;
  }
  wavefunctions::ContinuumNorm norm = wavefunctions::ContinuumNorm::printed;
  if (o.norm == "delta_k") norm = wavefunctions::ContinuumNorm::delta_k;
  if (o.norm == "delta_eps") norm = wavefunctions::ContinuumNorm::delta_eps;
  if (!(o.k > 0.0)) throw DomainError("states --kind continuum needs --k > 0");
  const spectrum::ContinuumLabel lbl(o.k, flat.omega());
  rep.meta["k"] = o.k;
  rep.meta["norm"] = o.norm;
  const auto values = wavefunctions::radial_flat_continuum_grid(lbl, sec, flat, grid, norm);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    rep.rows.push_back({grid[i], values[i].real(), values[i].imag()});
  }
  return kExitOk;
}

struct CoherentOpts {
  double s = 0.0;
  double gamma = 0.0;
  std::string portion = "combined";
  double s2 = 0.0;
  double gamma2 = 0.0;
  double t = 1.0;
  std::string offset = "E0";
  std::string check = "all";
  std::string times = "0.1,1,10";
};

co::Portion parse_portion(const std::string& p) {
  if (p == "discrete") return co::Portion::discrete_only;
  if (p == "continuum") return co::Portion::continuum_only;
  return co::Portion::combined;
}

co::Offset parse_offset(const std::string& o) {
  return o == "none" ? co::Offset::none : co::Offset::subtract_E0;
}

json coherent_meta(const std::string& cmd, const Common& c, const PhysicalConfig& cfg,
                   const CoherentOpts& o) {
  json m = base_meta(cmd, c, cfg);
  m["space"] = cfg.is_curved() ? "curved" : "flat";
  m["s"] = o.s;
  m["gamma"] = o.gamma;
  if (!cfg.is_curved()) m["portion"] = o.portion;
  return m;
}

int cmd_coherent_build(const Common& c, const CoherentOpts& o, Report& rep) {
  const auto cfg = make_config(c);
  const Sector sec{c.ell};
  const co::CoherentLabel lbl(o.s, o.gamma);
  rep.meta = coherent_meta("coherent build", c, cfg, o);
  rep.columns = {"component", "n", "eps", "energy", "re", "im", "weight"};
  auto add_discrete = [&](const co::DiscreteExpansion& d) {
    for (std::size_t n = 0; n < d.coeffs.size(); ++n) {
      rep.rows.push_back({"discrete", n, nullptr, d.energies[n], d.coeffs[n].real(),
                          d.coeffs[n].imag(), std::norm(d.coeffs[n])});
    }
  };
  if (cfg.is_curved()) {
    const auto d = co::build_curved_state(lbl, sec, cfg, c.tol);
    rep.meta["norm_const"] = co::norm_curved(lbl.J(), sec, cfg);
    rep.meta["n_max"] = d.n_max;
    rep.meta["tail_bound"] = d.tail_bound;
    add_discrete(d);
    return kExitOk;
  }
  const auto st = co::build_flat_state(lbl, sec, cfg.omega(), c.tol, parse_portion(o.portion));
  rep.meta["norm_const"] = st.norm_const;
  rep.meta["n_max"] = st.discrete.n_max;
  rep.meta["tail_bound"] = st.discrete.tail_bound;
  rep.meta["eps_cut"] = st.continuum.eps_cut;
  rep.meta["continuum_nodes"] = st.continuum.quad_nodes.size();
  add_discrete(st.discrete);
  if (st.continuum.density) {
    for (const auto& [eps, w] : st.continuum.quad_nodes) {
      const Complex d = st.continuum.density(eps);
      rep.rows.push_back({"continuum", nullptr, eps, cfg.omega() * eps, d.real(), d.imag(),
                          w * std::norm(d)});
    }
  }
  return kExitOk;
}

int cmd_coherent_overlap(const Common& c, const CoherentOpts& o, Report& rep) {
  const auto cfg = make_config(c);
  const Sector sec{c.ell};
  const co::CoherentLabel a(o.s, o.gamma), b(o.s2, o.gamma2);
  rep.meta = coherent_meta("coherent overlap", c, cfg, o);
  rep.meta["s2"] = o.s2;
  rep.meta["gamma2"] = o.gamma2;
  Complex v;
  if (cfg.is_curved()) {
    v = co::overlap(co::build_curved_state(a, sec, cfg, c.tol),
                    co::build_curved_state(b, sec, cfg, c.tol));
  } else {
    const auto portion = parse_portion(o.portion);
    v = co::overlap(co::build_flat_state(a, sec, cfg.omega(), c.tol, portion),
                    co::build_flat_state(b, sec, cfg.omega(), c.tol, portion));
  }
  rep.columns = {"re", "im", "abs"};
  rep.rows.push_back({v.real(), v.imag(), std::abs(v)});
  return kExitOk;
}

int cmd_coherent_evolve(const Common& c, const CoherentOpts& o, Report& rep) {
  const auto cfg = make_config(c);
  const Sector sec{c.ell};
  const co::CoherentLabel lbl(o.s, o.gamma);
  const co::CoherentLabel shifted(o.s, o.gamma + cfg.omega() * o.t);
  const auto offset = parse_offset(o.offset);
  rep.meta = coherent_meta("coherent evolve", c, cfg, o);
  rep.meta["offset"] = o.offset;
  Complex v;
  double energy = 0.0;
  if (cfg.is_curved()) {
    const auto a = co::build_curved_state(lbl, sec, cfg, c.tol);
    energy = co::energy_expectation(a);
    v = co::overlap(co::evolve(a, o.t, offset), co::build_curved_state(shifted, sec, cfg, c.tol));
  } else {
    const auto portion = parse_portion(o.portion);
    const auto a = co::build_flat_state(lbl, sec, cfg.omega(), c.tol, portion);
    energy = co::energy_expectation(a);
    v = co::overlap(co::evolve(a, o.t, offset),
                    co::build_flat_state(shifted, sec, cfg.omega(), c.tol, portion));
  }
  rep.columns = {"t", "residual", "overlap_re", "overlap_im", "energy"};
  rep.rows.push_back({o.t, std::abs(1.0 - std::abs(v)), v.real(), v.imag(), energy});
  return kExitOk;
}

int cmd_coherent_verify(const Common& c, const CoherentOpts& o, Report& rep) {
  const auto cfg = make_config(c);
  const Sector sec{c.ell};
  const co::CoherentLabel lbl(o.s, o.gamma);
  const auto times = parse_list(o.times);
  const bool all = o.check == "all";
  rep.meta = coherent_meta("coherent verify", c, cfg, o);
  rep.columns = {"check", "detail", "measured", "tolerance", "pass"};
  bool ok = true;
  auto add = [&](const std::string& check, const std::string& detail, double measured,
                 double tolerance) {
    const bool pass = measured <= tolerance;
    ok = ok && pass;
    rep.rows.push_back({check, detail, number_or_null(measured), tolerance, pass});
  };

  if (all || o.check == "normalization") {
    if (cfg.is_curved()) {
      const auto d = co::build_curved_state(lbl, sec, cfg, c.tol);
      add("normalization", "curved |<s|s> - 1|", std::abs(co::overlap(d, d).real() - 1.0), 1e-8);
    } else {
      const auto st = co::build_flat_state(lbl, sec, cfg.omega(), c.tol, parse_portion(o.portion));
      add("normalization", "flat " + o.portion + " |<s|s> - 1|",
          std::abs(co::overlap(st, st).real() - 1.0), 1e-8);
    }
  }
  if (all || o.check == "stability") {
    double worst_a = 0.0, worst_b = 0.0;
    for (double t : times) {
      if (cfg.is_curved()) {
        worst_a = std::max(worst_a, std::abs(co::temporal_stability_residual(
                                        lbl, sec, cfg, t, co::Offset::subtract_E0)));
      } else {
        worst_a = std::max(worst_a, std::abs(co::temporal_stability_residual(
                                        lbl, sec, cfg, t, co::Offset::subtract_E0,
                                        co::Portion::discrete_only)));
        if (o.s > 0.0) {
          worst_b = std::max(worst_b, std::abs(co::temporal_stability_residual(
                                          lbl, sec, cfg, t, co::Offset::none,
                                          co::Portion::continuum_only)));
        }
      }
    }
    if (cfg.is_curved()) {
      add("stability", "curved, generator H - E0", worst_a, 1e-10);
    } else {
      add("stability", "flat discrete portion, generator H - E0", worst_a, 1e-10);
      if (o.s > 0.0) add("stability", "flat continuum portion, generator H", worst_b, 1e-10);
    }
  }
  if (all || o.check == "action") {
    const double rhs = cfg.omega() * lbl.J();
    auto relative = [&](double residual) {
      return rhs > 0.0 ? std::abs(residual) / rhs : std::abs(residual) / cfg.omega();
    };
    if (cfg.is_curved()) {
      add("action", "curved <H - E0> vs omega s^2 (rel)",
          relative(co::action_identity_residual(lbl, sec, cfg).residual), 1e-9);
    } else {
      add("action", "flat discrete portion <H - E0> vs omega s^2 (rel)",
          relative(co::action_identity_residual(lbl, sec, cfg, co::Portion::discrete_only)
                       .residual),
          1e-9);
      if (o.s > 0.0) {
        const auto m = co::action_identity_residual(lbl, sec, cfg, co::Portion::combined);
        const double pred = co::predicted_action_residual(lbl, sec, cfg.omega(),
                                                          co::ContinuumOrigin::ground_state);
        add("action", "flat combined residual vs omega N^2 int_0^1 s^2e/Gamma(e) (rel)",
            std::abs(m.residual - pred) / pred, 1e-6);
      }
    }
  }
  if (o.check == "moments" || (all && c.ell == 0)) {
    if (c.ell != 0) throw DomainError("moments check: the weight is known for l = 0 only");
    const auto res = co::moment_residuals(co::swave_weight(), sec, 30);
    double worst = 0.0;
    for (double v : res) worst = std::max(worst, std::abs(v));
    add("moments", "l=0 weight, n <= 30", worst, 1e-10);
  }
  rep.meta["pass"] = ok;
  return ok ? kExitOk : kExitVerifyFailed;
}

struct LimitsOpts {
  std::string kind = "bound";
  std::size_t n = 1;
  double k = 0.5;
  std::string radii;
  std::string grid;
};

void fill_convergence(const limits::ConvergenceReport& r, Report& rep) {
  rep.meta["fitted_order"] = optional_number(r.fitted_order);
  rep.meta["r_squared"] = optional_number(r.r_squared);
  rep.meta["target_order"] = optional_number(r.target_order);
  rep.meta["strictly_decreasing"] = r.strictly_decreasing();
  rep.columns = {"R", "index", "residual", "scale_re", "scale_im"};
  for (std::size_t i = 0; i < r.R_values.size(); ++i) {
    const bool has_scale = i < r.scale_factors.size();
    rep.rows.push_back({r.R_values[i], i < r.indices.size() ? json(r.indices[i]) : json(nullptr),
                        r.residuals[i],
                        has_scale ? json(r.scale_factors[i].real()) : json(nullptr),
                        has_scale ? json(r.scale_factors[i].imag()) : json(nullptr)});
  }
}

int cmd_limits(const std::string& which, const Common& c, const LimitsOpts& o, Report& rep) {
  const auto cfg = make_config(c);
  const auto base = PhysicalConfig::flat(cfg.omega(), cfg.charge());
  const Sector sec{c.ell};
  rep.meta = base_meta("limits " + which, c, cfg);
  rep.meta["kind"] = o.kind;
  limits::ConvergenceReport r;
  if (which == "energy") {
    const auto radii = parse_list(o.radii.empty() ? "10,100,1000" : o.radii);
    if (o.kind == "continuum") {
      rep.meta["k"] = o.k;
      r = limits::continuum_energy_convergence(o.k, sec, base, radii);
    } else {
      rep.meta["n"] = o.n;
      r = limits::bound_energy_convergence(o.n, sec, base, radii);
    }
  } else if (which == "factorial") {
    rep.meta["n"] = o.n;
    r = limits::factorial_convergence(o.n, sec, base,
                                      parse_list(o.radii.empty() ? "10,100,1000" : o.radii));
  } else {
    const auto radii = parse_list(o.radii.empty() ? "50,100,200" : o.radii);
    if (o.kind == "continuum") {
      rep.meta["k"] = o.k;
      r = limits::continuum_wavefunction_convergence(
          o.k, sec, base, parse_grid(o.grid.empty() ? "0.5..10:61" : o.grid), radii);
    } else {
      rep.meta["n"] = o.n;
      r = limits::bound_wavefunction_convergence(
          o.n, sec, base, parse_grid(o.grid.empty() ? "0..5:51" : o.grid), radii);
    }
  }
  fill_convergence(r, rep);
  return kExitOk;
}

int cmd_verify(const std::string& suite, Report& rep) {
  std::vector<int> ids;
  if (suite == "all") {
    for (int id = 1; id <= acceptance::kCriterionCount; ++id) ids.push_back(id);
  } else {
    for (double x : parse_list(suite)) {
      if (x != std::floor(x)) throw DomainError("verify --suite: ids must be integers");
      ids.push_back(static_cast<int>(x));
    }
  }
  rep.meta = json::object();
  rep.meta["version"] = std::string("coulcs ") + kVersion;
  rep.meta["command"] = "verify";
  rep.meta["suite"] = suite;
  rep.columns = {"id", "name", "measured", "tolerance", "pass", "detail"};
  bool ok = true;
  for (int id : ids) {
    const auto r = acceptance::run_criterion(id);
    ok = ok && r.pass;
    // The reported pair is the check closest to (or furthest past) its
    // tolerance; every check is listed in the detail column.
    const acceptance::Check* binding = nullptr;
    double worst_ratio = -1.0;
    std::string detail;
    for (const auto& chk : r.checks) {
      const double ratio = chk.tolerance > 0.0 ? chk.measured / chk.tolerance
                           : chk.measured > 0.0 ? std::numeric_limits<double>::infinity()
                                                : 0.0;
      if (ratio > worst_ratio) {
        worst_ratio = ratio;
        binding = &chk;
      }
      char buf[64];
      std::snprintf(buf, sizeof buf, " %.3e %s %.0e", chk.measured, chk.pass ? "<=" : ">",
                    chk.tolerance);
      detail += (detail.empty() ? "" : "; ") + chk.label + buf;
    }
    for (const auto& note : r.notes) detail += "; note: " + note;
    rep.rows.push_back({id, r.name, binding ? number_or_null(binding->measured) : json(nullptr),
                        binding ? json(binding->tolerance) : json(nullptr), r.pass, detail});
  }
  rep.meta["pass"] = ok;
  return ok ? kExitOk : kExitVerifyFailed;
}

void add_common(CLI::App& app, Common& c) {
  c.omega_opt = app.add_option("--omega", c.omega, "energy scale omega (default 0.5)")
                    ->check(CLI::PositiveNumber);
  c.charge_opt = app.add_option("--Z", c.charge, "charge number Z; alone it sets omega = Z^2/2")
                     ->check(CLI::PositiveNumber);
  app.add_option("--ell", c.ell, "orbital quantum number l (default 0)");
  c.radius_opt = app.add_option("--R", c.radius, "curvature radius of S^3; absent means flat")
                     ->check(CLI::PositiveNumber);
  app.add_option("--tol", c.tol, "truncation tolerance (default 1e-10)")
      ->check(CLI::PositiveNumber);
  app.add_option("--output", c.output, "json, csv or table (default table)")
      ->check(CLI::IsMember({"json", "csv", "table"}));
}

}  // namespace

std::vector<std::size_t> parse_index_range(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) return {parse_count(text)};
  const std::size_t lo = parse_count(text.substr(0, dots));
  const std::size_t hi = parse_count(text.substr(dots + 2));
  if (hi < lo) throw DomainError("index range '" + text + "' is empty");
  std::vector<std::size_t> out;
  for (std::size_t n = lo; n <= hi; ++n) out.push_back(n);
  return out;
}

std::vector<double> parse_grid(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) return {parse_real(text)};
  const auto colon = text.find(':', dots);
  if (colon == std::string::npos) {
    throw DomainError("grid '" + text + "' needs the form a..b:count");
  }
  const double lo = parse_real(text.substr(0, dots));
  const double hi = parse_real(text.substr(dots + 2, colon - dots - 2));
  const std::size_t count = parse_count(text.substr(colon + 1));
  if (count == 0) throw DomainError("grid '" + text + "' has no points");
  if (count == 1) return {lo};
  std::vector<double> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1));
  }
  return out;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto end = comma == std::string::npos ? text.size() : comma;
    out.push_back(parse_real(CLI::detail::trim_copy(text.substr(start, end - start))));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Coulomb coherent states on S^3 and their flat-space limit", "coulcs"};
  app.set_version_flag("--version", std::string("coulcs ") + kVersion);
  app.require_subcommand(1);
  Common common;
  add_common(app, common);

  SpectrumOpts spec_opts;
  auto* spectrum_cmd = app.add_subcommand("spectrum", "curved or flat level table");
  spectrum_cmd->fallthrough();
  spectrum_cmd->add_flag("--curved", spec_opts.curved, "curved levels (needs --R)");
  spectrum_cmd->add_flag("--flat", spec_opts.flat, "flat levels");
  spectrum_cmd->add_option("--n", spec_opts.n, "index or range a..b (default 0..5)");

  StatesOpts state_opts;
  auto* states_cmd = app.add_subcommand("states", "radial wavefunctions on a grid");
  states_cmd->fallthrough();
  states_cmd->add_option("--kind", state_opts.kind, "curved, bound or continuum")
      ->check(CLI::IsMember({"curved", "bound", "continuum"}));
  states_cmd->add_option("--n", state_opts.n, "radial quantum number (default 0)");
  states_cmd->add_option("--k", state_opts.k, "continuum wave number (default 1)");
  states_cmd->add_option("--grid", state_opts.grid, "a..b:count (chi for curved, r otherwise)");
  states_cmd->add_option("--norm", state_opts.norm, "printed, delta_k or delta_eps")
      ->check(CLI::IsMember({"printed", "delta_k", "delta_eps"}));

  CoherentOpts coh;
  auto* coherent_cmd = app.add_subcommand("coherent", "coherent-state construction and checks");
  coherent_cmd->fallthrough();
  coherent_cmd->require_subcommand(1);
  auto add_label = [&](CLI::App* cmd) {
    cmd->fallthrough();
    cmd->add_option("--s", coh.s, "label s >= 0 (default 0)");
    cmd->add_option("--gamma", coh.gamma, "label gamma (default 0)");
    cmd->add_option("--portion", coh.portion, "flat portion: combined, discrete, continuum")
        ->check(CLI::IsMember({"combined", "discrete", "continuum"}));
  };
  auto* build_cmd = coherent_cmd->add_subcommand("build", "expansion coefficients");
  add_label(build_cmd);
  auto* overlap_cmd = coherent_cmd->add_subcommand("overlap", "<s,gamma|s2,gamma2>");
  add_label(overlap_cmd);
  overlap_cmd->add_option("--s2", coh.s2, "second label s");
  overlap_cmd->add_option("--gamma2", coh.gamma2, "second label gamma");
  auto* evolve_cmd = coherent_cmd->add_subcommand("evolve", "time evolution vs label shift");
  add_label(evolve_cmd);
  evolve_cmd->add_option("--t", coh.t, "time (default 1)");
  evolve_cmd->add_option("--offset", coh.offset, "generator H (none) or H - E0 (E0)")
      ->check(CLI::IsMember({"none", "E0"}));
  auto* cverify_cmd = coherent_cmd->add_subcommand("verify", "residual checks for one label");
  add_label(cverify_cmd);
  cverify_cmd->add_option("--check", coh.check,
                          "normalization, stability, action, moments or all")
      ->check(CLI::IsMember({"normalization", "stability", "action", "moments", "all"}));
  cverify_cmd->add_option("--times", coh.times, "times for the stability check");

  LimitsOpts lim;
  auto* limits_cmd = app.add_subcommand("limits", "R -> infinity convergence studies");
  limits_cmd->fallthrough();
  limits_cmd->require_subcommand(1);
  auto add_limits = [&](CLI::App* cmd) {
    cmd->fallthrough();
    cmd->add_option("--kind", lim.kind, "bound or continuum")
        ->check(CLI::IsMember({"bound", "continuum"}));
    cmd->add_option("--n", lim.n, "radial quantum number (default 1)");
    cmd->add_option("--k", lim.k, "continuum wave number (default 0.5)");
    cmd->add_option("--Rs", lim.radii, "comma-separated radii");
  };
  auto* lenergy = limits_cmd->add_subcommand("energy", "energy convergence");
  add_limits(lenergy);
  auto* lfact = limits_cmd->add_subcommand("factorial", "[n]_R! convergence");
  add_limits(lfact);
  auto* lwave = limits_cmd->add_subcommand("wavefunction", "wavefunction convergence");
  add_limits(lwave);
  lwave->add_option("--grid", lim.grid, "r grid a..b:count");

  std::string suite = "all";
  auto* verify_cmd = app.add_subcommand("verify", "acceptance suite");
  verify_cmd->fallthrough();
  verify_cmd->add_option("--suite", suite, "all, or comma-separated criterion ids");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      // --help and --version
      app.exit(e, out, err);
      return kExitOk;
    }
    err << "coulcs: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    Report rep;
    int code = kExitOk;
    if (*spectrum_cmd) {
      code = cmd_spectrum(common, spec_opts, rep);
    } else if (*states_cmd) {
      code = cmd_states(common, state_opts, rep);
    } else if (*coherent_cmd) {
      if (*build_cmd) code = cmd_coherent_build(common, coh, rep);
      else if (*overlap_cmd) code = cmd_coherent_overlap(common, coh, rep);
      else if (*evolve_cmd) code = cmd_coherent_evolve(common, coh, rep);
      else code = cmd_coherent_verify(common, coh, rep);
    } else if (*limits_cmd) {
      const std::string which = *lenergy ? "energy" : *lfact ? "factorial" : "wavefunction";
      code = cmd_limits(which, common, lim, rep);
    } else {
      code = cmd_verify(suite, rep);
    }
    emit(rep, parse_format(common.output), out);
    return code;
  } catch (const Error& e) {
    err << "coulcs: error: " << e.what() << '\n';
    return kExitUsage;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.push_back("coulcs");
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace coulcs::cli
