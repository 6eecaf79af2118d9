#include "twinfock/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "twinfock/error.hpp"
#include "twinfock/experiment.hpp"
#include "twinfock/metrology.hpp"
#include "twinfock/projection.hpp"
#include "twinfock/table.hpp"

namespace twinfock::cli {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double parse_real(std::string_view token, const char* what) {
  const std::string text(trim(token));
  if (text.empty()) throw UsageError(std::string("empty ") + what);
  char* end = nullptr;
  const double value = std::strtod(text.c_str(), &end);
  if (end != text.c_str() + text.size() || !std::isfinite(value)) {
    throw UsageError(std::string("cannot parse ") + what + " '" + text + "'");
  }
  return value;
}

DetectionModel build_model(const RunConfig& config) {
  if (config.model == "twin-fock" || config.model == "mes") {
    if (!config.n) throw UsageError("--model " + config.model + " requires --n");
    return config.model == "mes" ? DetectionModel::mes(*config.n)
                                 : DetectionModel::twin_fock(*config.n);
  }
  if (config.model == "p2") {
    if (!config.visibility) throw UsageError("--model p2 requires --v");
    return DetectionModel::two_photon(*config.visibility);
  }
  if (config.model == "p4") {
    if (!config.r) throw UsageError("--model p4 requires --r");
    return DetectionModel::four_photon(*config.r);
  }
  throw UsageError("unknown model '" + config.model + "'");
}

Table curve_table(const RunConfig& config) {
  const auto model = build_model(config);
  Table t{{"phi", "p"}, {}};
  for (double phi : config.grid.values()) t.rows.push_back({phi, model.probability(phi)});
  return t;
}

Table uncertainty_table(const RunConfig& config) {
  const auto model = build_model(config);
  const LimitPair lp = limits(config.n_total.value_or(model.photons_per_event()));
  Table t{{"phi", "p", "dp_dphi", "delta_phi", "sql", "hl"}, {}};
  for (double phi : config.grid.values()) {
    const MetrologyPoint m = phase_uncertainty(model, phi, config.eta);
    t.rows.push_back({m.phi, m.p, m.dp_dphi, m.delta_phi, lp.sql, lp.hl});
  }
  return t;
}

Table scan_table(const RunConfig& config) {
  Table t{{"n", "n_total", "delta_phi", "sql", "hl"}, {}};
  for (const ScanRow& row : scan_photon_number(config.n_max)) {
    t.rows.push_back({static_cast<std::int64_t>(row.n_pairs),
                      static_cast<std::int64_t>(row.n_total), row.delta_phi, row.sql, row.hl});
  }
  return t;
}

Table region_table(const RunConfig& config) {
  const auto model = build_model(config);
  const std::size_t n_total = config.n_total.value_or(model.photons_per_event());
  const RegionBoundary b = beating_region(model, n_total, config.tolerance);
  Table t{{"model", "n_total", "sql", "status", "boundary"}, {}};
  t.rows.push_back({model.describe(), static_cast<std::int64_t>(n_total), b.sql,
                    to_string(b.status), b.boundary});
  return t;
}

Table limits_table(const RunConfig& config) {
  if (!config.n_total) throw UsageError("limits requires --n-total");
  const LimitPair lp = limits(*config.n_total);
  Table t{{"n_total", "sql", "hl"}, {}};
  t.rows.push_back({static_cast<std::int64_t>(lp.n_total), lp.sql, lp.hl});
  return t;
}

Table simulate_table(const RunConfig& config) {
  const auto model = build_model(config);
  const auto grid = config.grid.values();
  const auto records =
      synthesize_counts(model, config.peak_rate, grid, config.exposure, config.seed);
  Table t{{"phi", "counts", "exposure"}, {}};
  for (const auto& r : records) {
    t.rows.push_back({r.phi, static_cast<std::int64_t>(r.counts), r.exposure});
  }
  return t;
}

std::vector<CountRecord> read_records(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open input '" + path + "'");
  Table t;
  try {
    t = read_csv(in);
  } catch (const std::runtime_error& e) {
    throw DomainError(std::string("malformed input: ") + e.what());
  }
  auto column = [&](const std::string& name) {
    for (std::size_t c = 0; c < t.columns.size(); ++c) {
      if (t.columns[c] == name) return c;
    }
    throw DomainError("input lacks column '" + name + "'");
  };
  const std::size_t phi_col = column("phi");
  const std::size_t counts_col = column("counts");
  const std::size_t exposure_col = column("exposure");
  std::vector<CountRecord> records;
  for (const auto& row : t.rows) {
    try {
      const double counts = parse_real(std::get<std::string>(row[counts_col]), "counts");
      if (counts < 0.0 || counts != std::floor(counts)) {
        throw DomainError("counts must be non-negative integers");
      }
      records.push_back(CountRecord{parse_real(std::get<std::string>(row[phi_col]), "phi"),
                                    static_cast<std::uint64_t>(counts),
                                    parse_real(std::get<std::string>(row[exposure_col]),
                                               "exposure")});
    } catch (const UsageError& e) {
      throw DomainError(std::string("malformed input: ") + e.what());
    }
  }
  return records;
}

Table fit_table(const RunConfig& config) {
  if (config.input_path.empty()) throw UsageError("fit requires --input");
  const FitKind kind = config.fit_kind == "p4" ? FitKind::P4 : FitKind::P2;
  const auto records = read_records(config.input_path);
  const FitOutcome fit = fit_model(records, kind);

  Table t{{"parameter", "estimate", "std_error", "reduced_chi_square", "n_points",
           "out_of_range"},
          {}};
  auto add = [&](const std::string& name, double estimate, double error, bool flagged) {
    t.rows.push_back({name, estimate, error, fit.shape.reduced_chi_square,
                      static_cast<std::int64_t>(fit.shape.n_points),
                      static_cast<std::int64_t>(flagged ? 1 : 0)});
  };
  add(fit.shape.parameter_name, fit.shape.estimate, fit.shape.std_error, fit.shape.out_of_range);
  add(fit.rate.parameter_name, fit.rate.estimate, fit.rate.std_error, fit.rate.out_of_range);

  // Derived phase uncertainty at phi = 0, with the error carried through by
  // a central difference in the shape parameter.
  if (!fit.shape.out_of_range) {
    auto at_zero = [kind](double theta) {
      const auto model = kind == FitKind::P2 ? DetectionModel::two_photon(theta)
                                             : DetectionModel::four_photon(theta);
      return phase_uncertainty(model, 0.0).delta_phi;
    };
    const double theta = fit.shape.estimate;
    const double h = 1e-6;
    const double lo = std::max(0.0, theta - h);
    const double hi = std::min(1.0, theta + h);
    const double value = at_zero(theta);
    double error = 0.0;
    if (hi > lo && std::isfinite(at_zero(lo)) && std::isfinite(at_zero(hi))) {
      error = std::abs((at_zero(hi) - at_zero(lo)) / (hi - lo)) * fit.shape.std_error;
    }
    add("delta_phi_at_zero", value, error, false);
  }
  return t;
}

std::filesystem::path resolve_output(const std::string& path) {
  std::filesystem::path p(path);
  if (p.is_relative()) {
    if (const char* dir = std::getenv(kOutputDirEnv); dir != nullptr && *dir != '\0') {
      return std::filesystem::path(dir) / p;
    }
  }
  return p;
}

void emit(const Table& table, const RunConfig& config, std::ostream& out) {
  std::ostringstream rendered;
  if (config.format == OutputFormat::Json) {
    write_json(table, rendered);
  } else {
    write_csv(table, rendered);
  }
  if (config.output_path.empty()) {
    out << rendered.str();
    out.flush();
    return;
  }
  const auto path = resolve_output(config.output_path);
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot write '" + path.string() + "'");
  file << rendered.str();
  file.close();
  if (!file) throw IoError("failed writing '" + path.string() + "'");
}

}  // namespace

std::vector<double> GridSpec::values() const {
  if (points < 2) throw UsageError("grid needs at least 2 points");
  if (!(stop > start)) throw UsageError("grid stop must exceed start");
  std::vector<double> v(points);
  const double step = (stop - start) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) v[i] = start + step * static_cast<double>(i);
  v.back() = stop;
  return v;
}

double parse_angle(std::string_view token) {
  token = trim(token);
  if (token.size() >= 2 && token.substr(token.size() - 2) == "pi") {
    const std::string_view head = trim(token.substr(0, token.size() - 2));
    double factor = 1.0;
    if (head == "-") {
      factor = -1.0;
    } else if (!head.empty() && head != "+") {
      factor = parse_real(head, "angle multiplier");
    }
    return factor * std::numbers::pi;
  }
  return parse_real(token, "angle");
}

GridSpec parse_grid(std::string_view spec) {
  const auto first = spec.find(':');
  const auto second = first == std::string_view::npos ? first : spec.find(':', first + 1);
  if (second == std::string_view::npos || spec.find(':', second + 1) != std::string_view::npos) {
    throw UsageError("grid must look like start:stop:points, got '" + std::string(spec) + "'");
  }
  GridSpec g;
  g.start = parse_angle(spec.substr(0, first));
  g.stop = parse_angle(spec.substr(first + 1, second - first - 1));
  const double points = parse_real(spec.substr(second + 1), "grid point count");
  if (points != std::floor(points) || points < 2) {
    throw UsageError("grid point count must be an integer >= 2");
  }
  g.points = static_cast<std::size_t>(points);
  if (!(g.stop > g.start)) throw UsageError("grid stop must exceed start");
  return g;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    Table table;
    switch (config.command) {
      case Command::Curve: table = curve_table(config); break;
      case Command::Scan: table = scan_table(config); break;
      case Command::Uncertainty: table = uncertainty_table(config); break;
      case Command::Region: table = region_table(config); break;
      case Command::Simulate: table = simulate_table(config); break;
      case Command::Fit: table = fit_table(config); break;
      case Command::Limits: table = limits_table(config); break;
    }
    emit(table, config, out);
    return kOk;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsageError;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << '\n';
    return kIoError;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return kDomainError;
  } catch (const FitError& e) {
    err << "fit failed: " << e.what() << '\n';
    return kDomainError;
  }
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Twin-Fock projection-measurement phase estimation"};
  app.require_subcommand(1);
  RunConfig config;
  std::string grid_text = "0:pi:181";
  std::string format_text = "csv";
  const std::vector<std::string> models{"twin-fock", "mes", "p2", "p4"};

  auto add_output = [&](CLI::App* sub) {
    sub->add_option("-o,--output", config.output_path,
                    "Output file (default: stdout; relative paths honour $" +
                        std::string(kOutputDirEnv) + ")");
    sub->add_option("--format", format_text, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
  };
  auto add_model = [&](CLI::App* sub) {
    sub->add_option("--model", config.model, "twin-fock, mes, p2 or p4")
        ->check(CLI::IsMember(models));
    sub->add_option("--n", config.n, "photon-pair count N (twin-fock) or photon number (mes)");
    sub->add_option("--v", config.visibility, "two-photon visibility V");
    sub->add_option("--r", config.r, "four-photon indistinguishability E/A");
  };
  auto add_grid = [&](CLI::App* sub) {
    sub->add_option("--grid", grid_text, "phase grid start:stop:points, e.g. 0:pi:181");
  };

  auto* curve = app.add_subcommand("curve", "P(phi) on a phase grid");
  add_model(curve);
  add_grid(curve);
  add_output(curve);

  auto* uncertainty = app.add_subcommand("uncertainty", "Delta phi(phi) on a phase grid");
  add_model(uncertainty);
  add_grid(uncertainty);
  uncertainty->add_option("--eta", config.eta, "detection efficiency in (0, 1]");
  uncertainty->add_option("--n-total", config.n_total, "photon number for the SQL/HL columns");
  add_output(uncertainty);

  auto* scan = app.add_subcommand("scan", "Delta phi(0) against photon number");
  scan->add_option("--n-max", config.n_max, "largest N");
  add_output(scan);

  auto* region = app.add_subcommand("region", "phase region beating the SQL");
  add_model(region);
  region->add_option("--n-total", config.n_total, "photon number defining the SQL");
  region->add_option("--tolerance", config.tolerance, "bisection tolerance in radians");
  add_output(region);

  auto* simulate = app.add_subcommand("simulate", "synthetic Poisson coincidence counts");
  add_model(simulate);
  add_grid(simulate);
  simulate->add_option("--peak-rate", config.peak_rate, "counts per unit exposure at P = 1");
  simulate->add_option("--exposure", config.exposure, "exposure per phase setting");
  simulate->add_option("--seed", config.seed, "random seed");
  add_output(simulate);

  auto* fit = app.add_subcommand("fit", "least-squares fit of P2 or P4 to count data");
  fit->add_option("--input", config.input_path, "CSV with phi,counts,exposure columns")
      ->required();
  fit->add_option("--kind", config.fit_kind, "p2 or p4")->check(CLI::IsMember({"p2", "p4"}));
  add_output(fit);

  auto* lim = app.add_subcommand("limits", "standard quantum and Heisenberg limits");
  lim->add_option("--n-total", config.n_total, "total photon number")->required();
  add_output(lim);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kOk;
    }
    std::string message = e.what();
    if (const auto nl = message.find('\n'); nl != std::string::npos) message.resize(nl);
    err << "usage error: " << message << '\n';
    return kUsageError;
  }

  const CLI::App* chosen = app.get_subcommands().front();
  const std::string name = chosen->get_name();
  if (name == "curve") config.command = Command::Curve;
  if (name == "uncertainty") config.command = Command::Uncertainty;
  if (name == "scan") config.command = Command::Scan;
  if (name == "region") config.command = Command::Region;
  if (name == "simulate") config.command = Command::Simulate;
  if (name == "fit") config.command = Command::Fit;
  if (name == "limits") config.command = Command::Limits;
  config.format = format_text == "json" ? OutputFormat::Json : OutputFormat::Csv;

  try {
    config.grid = parse_grid(grid_text);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsageError;
  }
  return run(config, out, err);
}

}  // namespace twinfock::cli
