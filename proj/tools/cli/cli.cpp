#include "cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "conical_ab/errors.hpp"
#include "conical_ab/geometry.hpp"

namespace conical_ab::cli {

namespace {

using spectrum::BoundState;
using spectrum::Channel;

enum class LogLevel { Quiet, Info, Debug };

LogLevel log_level() {
  const char* env = std::getenv("CONICAL_AB_LOG");
  if (env == nullptr) return LogLevel::Quiet;
  const std::string v = env;
  if (v == "debug" || v == "2") return LogLevel::Debug;
  if (v == "info" || v == "1") return LogLevel::Info;
  return LogLevel::Quiet;
}

std::string fmt(double v) { return format_number(v); }

std::string_view to_string(ModeSelection m) {
  switch (m) {
    case ModeSelection::Closed:
      return "closed";
    case ModeSelection::Root:
      return "root";
    case ModeSelection::Both:
      return "both";
  }
  return "both";
}

std::string_view to_string(SweepParameter p) {
  switch (p) {
    case SweepParameter::Alpha:
      return "alpha";
    case SweepParameter::Phi:
      return "phi";
    case SweepParameter::Mass:
      return "mass";
    case SweepParameter::A:
      return "a";
    case SweepParameter::Radius:
      return "radius";
  }
  return "alpha";
}

std::string channel_label(int m, double phi) {
  return "m = " + std::to_string(m) + ", phi = " + fmt(phi);
}

Json channel_fields(const Channel& ch) {
  Json row;
  row["m"] = ch.m;
  row["phi"] = ch.phi;
  row["alpha"] = ch.alpha;
  row["shifted_m"] = ch.shifted_m();
  row["lambda_sq"] = ch.lambda_sq;
  return row;
}

/// State kinds allowed by the sign of the shell coefficient.
std::string_view state_kinds(double alpha) {
  if (alpha > 1.0) return "bound_and_scattering";
  return "scattering";
}

std::string_view delta_sign(double coefficient) {
  if (coefficient > 0.0) return "repulsive";
  if (coefficient < 0.0) return "attractive";
  return "none";
}

// Each report builder appends rows and diagnostics for one parameter point.

void classify_rows(const RunConfig& c, Report& rep) {
  for (int m = c.m_range.lo; m <= c.m_range.hi; ++m) {
    const Channel ch = spectrum::make_channel(m, c.phi, c.alpha);
    const auto pot = spectrum::generalized_potential(ch);
    Json row = channel_fields(ch);
    row["geometry"] = geometry::to_string(ch.surface());
    row["order_kind"] = ch.order.kind == specfun::OrderSpec::Kind::RealOrder
                            ? "real"
                            : "imaginary";
    row["order_magnitude"] = ch.order.magnitude;
    row["sa_class"] = spectrum::to_string(ch.sa_class);
    row["inverse_square_coefficient"] = pot.inverse_square_coefficient;
    row["delta_coefficient"] = pot.delta_shell_coefficient;
    row["delta_sign"] = delta_sign(pot.delta_shell_coefficient);
    row["state_kinds"] = state_kinds(c.alpha);
    row["source"] = spectrum::to_string(spectrum::Source::ClosedForm);
    rep.rows.push_back(std::move(row));
  }
}

void ring_rows(const RunConfig& c, Report& rep) {
  for (const auto& entry : spectrum::ring_spectrum(c.m_range.lo, c.m_range.hi, c.phi,
                                                   c.alpha, c.mass, c.radius)) {
    Json row;
    row["m"] = entry.m;
    row["phi"] = c.phi;
    row["alpha"] = c.alpha;
    row["mass"] = c.mass;
    row["radius"] = c.radius;
    row["energy"] = entry.energy;
    row["source"] = spectrum::to_string(spectrum::Source::ClosedForm);
    rep.rows.push_back(std::move(row));
  }
}

std::optional<BoundState> try_bound(const RunConfig& c, const Channel& ch,
                                    spectrum::Mode mode, Report& rep) {
  const char* label = mode == spectrum::Mode::ClosedForm ? "closed_form" : "numeric_root";
  try {
    if (ch.lambda_sq < 0.0) {
      return spectrum::cone_bound_energy(ch, c.mass, c.a, c.branch, mode,
                                         c.gamma_sign, c.matching);
    }
    if (ch.alpha <= 1.0) {
      rep.diagnostics.push_back(channel_label(ch.m, ch.phi) + ": " + label +
                                ": no bound state, shell is " +
                                std::string(delta_sign((1.0 - ch.alpha) / ch.alpha)) +
                                " and lambda^2 >= 0");
      return std::nullopt;
    }
    return spectrum::anticone_bound_energy(ch, c.mass, c.a, mode, c.matching);
  } catch (const NoBoundState& e) {
    rep.diagnostics.push_back(channel_label(ch.m, ch.phi) + ": " + label + ": " +
                              e.what());
  } catch (const UnsupportedChannel& e) {
    rep.diagnostics.push_back(channel_label(ch.m, ch.phi) + ": " + label + ": " +
                              e.what());
  }
  return std::nullopt;
}

Json bound_row(const BoundState& bs, const RunConfig& c, std::optional<double> gap) {
  Json row = channel_fields(bs.channel);
  row["mass"] = bs.mass;
  row["a"] = bs.core_radius;
  row["branch"] = bs.branch;
  row["source"] = spectrum::to_string(bs.source);
  row["matching"] = spectrum::to_string(c.matching);
  row["energy"] = bs.energy;
  row["kappa"] = bs.kappa;
  row["kappa_a"] = bs.kappa * bs.core_radius;
  row["scaled_energy"] = bs.scaled_energy();
  row["within_validity"] = bs.within_validity;
  row["relative_gap"] = gap ? Json(*gap) : Json(nullptr);
  return row;
}

void bound_rows(const RunConfig& c, Report& rep) {
  for (int m = c.m_range.lo; m <= c.m_range.hi; ++m) {
    const Channel ch = spectrum::make_channel(m, c.phi, c.alpha);
    std::optional<BoundState> closed;
    std::optional<BoundState> root;
    if (c.mode != ModeSelection::Root) {
      closed = try_bound(c, ch, spectrum::Mode::ClosedForm, rep);
    }
    if (c.mode != ModeSelection::Closed) {
      root = try_bound(c, ch, spectrum::Mode::NumericRoot, rep);
    }
    std::optional<double> gap;
    if (closed && root) gap = (closed->energy - root->energy) / std::abs(root->energy);
    if (closed) rep.rows.push_back(bound_row(*closed, c, gap));
    if (root) {
      if (!root->within_validity) {
        rep.diagnostics.push_back(channel_label(m, c.phi) + ": kappa a = " +
                                  fmt(root->kappa * c.a) +
                                  " lies outside the small-argument window");
      }
      rep.rows.push_back(bound_row(*root, c, gap));
    }
  }
}

Json oracle_row(const Channel& ch, const RunConfig& c, double a, spectrum::Source src,
                double energy, double scaled, std::optional<double> gap) {
  Json row = channel_fields(ch);
  row["mass"] = c.mass;
  row["a"] = a;
  row["n"] = c.n;
  row["spacing"] = oracle::to_string(c.spacing.value_or(oracle::default_spacing(ch)));
  row["core"] = oracle::to_string(c.core);
  row["source"] = spectrum::to_string(src);
  row["energy"] = energy;
  row["scaled_energy"] = scaled;
  row["relative_gap"] = gap ? Json(*gap) : Json(nullptr);
  return row;
}

void oracle_rows(const RunConfig& c, Report& rep) {
  oracle::GridPolicy policy;
  policy.n = c.n;
  policy.spacing = c.spacing;
  policy.build.core = c.core;
  oracle::MatchingOptions matching{c.matching, c.gamma_sign, c.branch};
  const std::vector<double> a_values{c.a, 0.5 * c.a, 0.25 * c.a};
  for (int m = c.m_range.lo; m <= c.m_range.hi; ++m) {
    const Channel ch = spectrum::make_channel(m, c.phi, c.alpha);
    try {
      const auto report = oracle::convergence_study(ch, c.mass, a_values, policy, matching);
      for (const auto& r : report.rows) {
        rep.rows.push_back(oracle_row(ch, c, r.a, spectrum::Source::NumericRoot,
                                      r.matching_energy, r.scaled_matching,
                                      std::nullopt));
        rep.rows.push_back(oracle_row(ch, c, r.a, spectrum::Source::OracleGrid,
                                      r.grid_energy, r.scaled_grid, r.relative_gap));
      }
      rep.diagnostics.push_back(channel_label(m, c.phi) +
                                ": M a^2 E spread over a: matching " +
                                fmt(report.matching_scaled_spread) + ", grid " +
                                fmt(report.grid_scaled_spread));
    } catch (const NoBoundState& e) {
      rep.diagnostics.push_back(channel_label(m, c.phi) + ": oracle: " + e.what());
    } catch (const UnsupportedChannel& e) {
      rep.diagnostics.push_back(channel_label(m, c.phi) + ": oracle: " + e.what());
    }
  }
}

void run_point(const RunConfig& c, Command command, Report& rep) {
  switch (command) {
    case Command::Classify:
      classify_rows(c, rep);
      break;
    case Command::Ring:
      ring_rows(c, rep);
      break;
    case Command::Bound:
      bound_rows(c, rep);
      break;
    case Command::Oracle:
      oracle_rows(c, rep);
      break;
    case Command::Sweep:
      break;
  }
}

double& sweep_target(RunConfig& c, SweepParameter p) {
  switch (p) {
    case SweepParameter::Alpha:
      return c.alpha;
    case SweepParameter::Phi:
      return c.phi;
    case SweepParameter::Mass:
      return c.mass;
    case SweepParameter::A:
      return c.a;
    case SweepParameter::Radius:
      return c.radius;
  }
  return c.alpha;
}

void sweep_rows(const RunConfig& c, Report& rep) {
  const int steps = c.sweep.steps;
  for (int i = 0; i < steps; ++i) {
    const double t = steps == 1 ? 0.0 : static_cast<double>(i) / (steps - 1);
    const double value = c.sweep.from + t * (c.sweep.to - c.sweep.from);
    RunConfig point = c;
    point.command = c.sweep.of;
    sweep_target(point, c.sweep.parameter) = value;
    Report sub;
    try {
      validate(point);
      run_point(point, c.sweep.of, sub);
    } catch (const ConfigurationError& e) {
      sub.diagnostics.push_back(e.what());
    } catch (const DomainError& e) {
      sub.diagnostics.push_back(e.what());
    }
    for (auto& row : sub.rows) {
      Json tagged;
      tagged["sweep_parameter"] = to_string(c.sweep.parameter);
      tagged["sweep_value"] = value;
      for (auto& [key, v] : row.items()) tagged[key] = v;
      rep.rows.push_back(std::move(tagged));
    }
    for (auto& d : sub.diagnostics) {
      rep.diagnostics.push_back(std::string(to_string(c.sweep.parameter)) + " = " +
                                fmt(value) + ": " + d);
    }
  }
}

void require(bool ok, const std::string& message) {
  if (!ok) throw ConfigurationError(message);
}

bool is_finite(double v) { return std::isfinite(v); }

}  // namespace

std::string_view to_string(Command c) {
  switch (c) {
    case Command::Classify:
      return "classify";
    case Command::Ring:
      return "ring";
    case Command::Bound:
      return "bound";
    case Command::Oracle:
      return "oracle";
    case Command::Sweep:
      return "sweep";
  }
  return "classify";
}

std::optional<MRange> parse_m_range(std::string_view text) {
  auto parse_int = [](std::string_view s) -> std::optional<int> {
    int v = 0;
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    const auto* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc{} || ptr != end || s.empty()) return std::nullopt;
    return v;
  };
  const auto dots = text.find("..");
  if (dots == std::string_view::npos) {
    const auto v = parse_int(text);
    if (!v) return std::nullopt;
    return MRange{*v, *v};
  }
  const auto lo = parse_int(text.substr(0, dots));
  const auto hi = parse_int(text.substr(dots + 2));
  if (!lo || !hi || *lo > *hi) return std::nullopt;
  return MRange{*lo, *hi};
}

void validate(const RunConfig& c) {
  require(is_finite(c.alpha) && c.alpha > 0.0, "alpha must be positive");
  require(is_finite(c.phi), "phi must be finite");
  require(is_finite(c.mass) && c.mass > 0.0, "mass must be positive");
  require(is_finite(c.a) && c.a > 0.0, "a must be positive");
  require(is_finite(c.radius) && c.radius > 0.0, "radius must be positive");
  require(c.m_range.lo <= c.m_range.hi, "m range must be non-empty");
  require(c.branch >= 0, "branch must be >= 0");
  require(c.n >= 3, "n must be >= 3");
  if (c.command == Command::Sweep) {
    require(c.sweep.of != Command::Sweep, "sweep cannot sweep itself");
    require(c.sweep.steps >= 1, "sweep needs at least one step");
    require(is_finite(c.sweep.from) && is_finite(c.sweep.to),
            "sweep endpoints must be finite");
  }
}

Json run_config_json(const RunConfig& c) {
  Json j;
  j["command"] = to_string(c.command);
  j["alpha"] = c.alpha;
  j["phi"] = c.phi;
  j["mass"] = c.mass;
  j["a"] = c.a;
  j["radius"] = c.radius;
  j["m_range"] = Json::array({c.m_range.lo, c.m_range.hi});
  j["branch"] = c.branch;
  j["mode"] = to_string(c.mode);
  j["format"] = c.format == OutputFormat::Json ? "json" : "csv";
  j["gamma_sign"] = c.gamma_sign == specfun::PhaseSign::Plus ? "plus" : "minus";
  j["matching"] = spectrum::to_string(c.matching);
  j["units"] = "hbar = c = 1";
  if (c.command == Command::Oracle ||
      (c.command == Command::Sweep && c.sweep.of == Command::Oracle)) {
    j["n"] = c.n;
    j["core"] = oracle::to_string(c.core);
    j["spacing"] = c.spacing ? Json(oracle::to_string(*c.spacing)) : Json("default");
  }
  if (c.command == Command::Sweep) {
    j["sweep"] = {{"parameter", to_string(c.sweep.parameter)},
                  {"from", c.sweep.from},
                  {"to", c.sweep.to},
                  {"steps", c.sweep.steps},
                  {"of", to_string(c.sweep.of)}};
  }
  return j;
}

Report run(const RunConfig& config) {
  validate(config);
  Report rep;
  rep.run_config = run_config_json(config);
  if (config.phi < 0.0 || config.phi >= 1.0) {
    const double folded = config.phi - std::floor(config.phi);
    rep.diagnostics.push_back("results depend on m + phi only: phi = " + fmt(config.phi) +
                              " is phi = " + fmt(folded) + " with m shifted by " +
                              fmt(std::floor(config.phi)));
  }
  if (config.command == Command::Sweep) {
    sweep_rows(config, rep);
  } else {
    run_point(config, config.command, rep);
  }
  const Command effective =
      config.command == Command::Sweep ? config.sweep.of : config.command;
  if (rep.rows.empty() && (effective == Command::Bound || effective == Command::Oracle)) {
    rep.exit_code = kExitNoBoundState;
  }
  return rep;
}

namespace {

void add_common(CLI::App& sub, RunConfig& c, std::string& m_range, std::string& mode,
                std::string& format, std::string& gamma_sign, std::string& matching,
                std::optional<int>& single_m) {
  sub.add_option("--alpha", c.alpha, "cone parameter (metric dr^2 + alpha^2 r^2 dtheta^2)");
  sub.add_option("--phi", c.phi, "flux in units of the flux quantum");
  sub.add_option("--m", single_m, "single angular momentum (overrides --m-range)");
  sub.add_option("--m-range", m_range, "angular momenta A..B")->allow_extra_args(false);
  sub.add_option("--mass", c.mass, "particle mass");
  sub.add_option("--a", c.a, "regularisation radius of the shell");
  sub.add_option("--radius", c.radius, "ring radius");
  sub.add_option("--branch", c.branch, "cone tower branch, 0 is the deepest state");
  sub.add_option("--mode", mode, "closed | root | both")
      ->check(CLI::IsMember({"closed", "root", "both"}));
  sub.add_option("--format", format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
  sub.add_option("--out", c.output_path, "write the report to PATH instead of stdout");
  sub.add_option("--gamma-sign", gamma_sign, "plus | minus")
      ->check(CLI::IsMember({"plus", "minus"}));
  sub.add_option("--matching", matching,
                 "small_argument | exact_exterior | regularized_core")
      ->check(CLI::IsMember({"small_argument", "exact_exterior", "regularized_core"}));
}

}  // namespace

int main_entry(int argc, const char* const* argv, std::ostream& out,
               std::ostream& err) {
  CLI::App app{"Spectra of a charged particle on a cone with an Aharonov-Bohm flux"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  RunConfig c;
  std::string m_range = "0..0";
  std::string mode = "both";
  std::string format = "json";
  std::string gamma_sign = "minus";
  std::string matching = "small_argument";
  std::optional<int> single_m;
  std::string core = "regular_core";
  std::string spacing = "default";
  std::string sweep_param = "alpha";
  std::string sweep_of = "bound";

  const std::map<std::string, Command> commands{{"classify", Command::Classify},
                                                {"ring", Command::Ring},
                                                {"bound", Command::Bound},
                                                {"oracle", Command::Oracle},
                                                {"sweep", Command::Sweep}};
  std::map<std::string, CLI::App*> subs;
  subs["classify"] = app.add_subcommand("classify", "channel classification per m");
  subs["ring"] = app.add_subcommand("ring", "particle on a ring: energies per m");
  subs["bound"] = app.add_subcommand("bound", "bound states from the matching condition");
  subs["oracle"] = app.add_subcommand("oracle", "grid eigenvalues and convergence report");
  subs["sweep"] = app.add_subcommand("sweep", "iterate one parameter of another command");
  for (auto& [name, sub] : subs) {
    add_common(*sub, c, m_range, mode, format, gamma_sign, matching, single_m);
    if (name == "oracle" || name == "sweep") {
      sub->add_option("--n", c.n, "grid nodes");
      sub->add_option("--core", core, "regular_core | shell_only")
          ->check(CLI::IsMember({"regular_core", "shell_only"}));
      sub->add_option("--spacing", spacing, "default | uniform | log_uniform")
          ->check(CLI::IsMember({"default", "uniform", "log_uniform"}));
    }
    if (name == "sweep") {
      sub->add_option("--param", sweep_param, "alpha | phi | mass | a | radius")
          ->check(CLI::IsMember({"alpha", "phi", "mass", "a", "radius"}));
      sub->add_option("--from", c.sweep.from, "first value")->required();
      sub->add_option("--to", c.sweep.to, "last value")->required();
      sub->add_option("--steps", c.sweep.steps, "number of points");
      sub->add_option("--of", sweep_of, "classify | ring | bound | oracle")
          ->check(CLI::IsMember({"classify", "ring", "bound", "oracle"}));
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalidConfig;
  }

  for (const auto& [name, sub] : subs) {
    if (sub->parsed()) c.command = commands.at(name);
  }
  const auto range = parse_m_range(m_range);
  if (!range) {
    err << "error: --m-range expects A..B with A <= B, got '" << m_range << "'\n";
    return kExitInvalidConfig;
  }
  c.m_range = single_m ? MRange{*single_m, *single_m} : *range;
  c.mode = mode == "closed" ? ModeSelection::Closed
           : mode == "root" ? ModeSelection::Root
                            : ModeSelection::Both;
  c.format = format == "csv" ? OutputFormat::Csv : OutputFormat::Json;
  c.gamma_sign = gamma_sign == "plus" ? specfun::PhaseSign::Plus : specfun::PhaseSign::Minus;
  c.matching = matching == "exact_exterior"     ? spectrum::MatchingForm::ExactExterior
               : matching == "regularized_core" ? spectrum::MatchingForm::RegularizedCore
                                                : spectrum::MatchingForm::SmallArgument;
  c.core = core == "shell_only" ? oracle::CoreModel::ShellOnly : oracle::CoreModel::RegularCore;
  if (spacing == "uniform") c.spacing = oracle::Spacing::Uniform;
  if (spacing == "log_uniform") c.spacing = oracle::Spacing::LogUniform;
  const std::map<std::string, SweepParameter> params{{"alpha", SweepParameter::Alpha},
                                                     {"phi", SweepParameter::Phi},
                                                     {"mass", SweepParameter::Mass},
                                                     {"a", SweepParameter::A},
                                                     {"radius", SweepParameter::Radius}};
  c.sweep.parameter = params.at(sweep_param);
  c.sweep.of = commands.at(sweep_of);

  const LogLevel level = log_level();
  Report rep;
  try {
    rep = run(c);
  } catch (const ConfigurationError& e) {
    err << "error: invalid configuration: " << e.what() << "\n";
    return kExitInvalidConfig;
  } catch (const DomainError& e) {
    err << "error: invalid configuration: " << e.what() << "\n";
    return kExitInvalidConfig;
  } catch (const NumericalFailure& e) {
    err << "error: numerical failure: " << e.what() << "\n";
    return kExitNumericalFailure;
  } catch (const PoleEncountered& e) {
    err << "error: numerical failure: " << e.what() << "\n";
    return kExitNumericalFailure;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumericalFailure;
  }

  const std::string text = c.format == OutputFormat::Json ? render_json(rep) : render_csv(rep);
  if (c.output_path) {
    std::ofstream file(*c.output_path, std::ios::binary);
    if (!file) {
      err << "error: cannot open " << *c.output_path << " for writing\n";
      return kExitInvalidConfig;
    }
    file << text;
  } else {
    out << text;
  }

  if (rep.exit_code == kExitNoBoundState) {
    err << "no bound state found\n";
    for (const auto& d : rep.diagnostics) err << "  " << d << "\n";
  } else if (level != LogLevel::Quiet) {
    for (const auto& d : rep.diagnostics) err << "info: " << d << "\n";
  }
  if (level == LogLevel::Debug) {
    err << "debug: " << rep.rows.size() << " rows, command " << to_string(c.command) << "\n";
  }
  return rep.exit_code;
}

}  // namespace conical_ab::cli
