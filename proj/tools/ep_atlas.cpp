#include <cmath>
#include <cstdlib>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "epatlas/charpoly.hpp"
#include "epatlas/dispersion.hpp"
#include "epatlas/epfinder.hpp"
#include "epatlas/jsonio.hpp"
#include "epatlas/models.hpp"
#include "epatlas/symmetry.hpp"
#include "epatlas/tables.hpp"

namespace {

using namespace epatlas;

constexpr int kExitOk = 0;
constexpr int kExitTableMismatch = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct CommonOpts {
  std::string config_path;
  std::string model;
  std::vector<std::string> params;
  std::vector<std::string> grid;
  std::string out;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--config", opts.config_path, "job config JSON");
  cmd->add_option("--model", opts.model, "built-in model name");
  cmd->add_option("--param", opts.params, "parameter override name=value");
  cmd->add_option("--grid", opts.grid, "axis shorthand name=lo:hi:samples");
  cmd->add_option("--out", opts.out, "output path (extension picks format)");
}

Complex parse_complex_arg(const std::string& text, const std::string& what) {
  std::istringstream in(text);
  double re = 0.0;
  double im = 0.0;
  char sep = 0;
  if (!(in >> re)) {
    throw std::runtime_error("config error: bad value for " + what);
  }
  if (in >> sep) {
    if (sep != ',' || !(in >> im)) {
      throw std::runtime_error("config error: bad value for " + what);
    }
  }
  return Complex{re, im};
}

JobConfig build_config(const CommonOpts& opts) {
  JobConfig cfg;
  if (!opts.config_path.empty()) {
    cfg = load_config(opts.config_path);
  } else if (!opts.model.empty()) {
    cfg.model_name = opts.model;
  } else {
    throw std::runtime_error("config error: --config or --model required");
  }
  if (!opts.model.empty()) cfg.model_name = opts.model;
  for (const std::string& kv : opts.params) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) {
      throw std::runtime_error("config error: --param expects name=value");
    }
    cfg.params[kv.substr(0, eq)]
        = parse_complex_arg(kv.substr(eq + 1), kv.substr(0, eq));
  }
  if (!cfg.model_name.empty()
      && (opts.config_path.empty() || !opts.model.empty()
          || !opts.params.empty())) {
    try {
      cfg.field = make_model(cfg.model_name, cfg.params);
    } catch (const std::invalid_argument& e) {
      throw std::runtime_error(std::string("config error: ") + e.what());
    }
  }
  if (cfg.symmetries.empty() && !cfg.model_name.empty()) {
    cfg.symmetries = model_symmetries(cfg.model_name);
  }
  if (!opts.grid.empty()) cfg.scan.axes.clear();
  for (const std::string& g : opts.grid) {
    const auto eq = g.find('=');
    if (eq == std::string::npos) {
      throw std::runtime_error("config error: --grid expects name=lo:hi:n");
    }
    ScanAxis axis;
    axis.name = g.substr(0, eq);
    char c1 = 0;
    char c2 = 0;
    std::istringstream in(g.substr(eq + 1));
    if (!(in >> axis.lo >> c1 >> axis.hi >> c2 >> axis.samples) || c1 != ':'
        || c2 != ':') {
      throw std::runtime_error("config error: --grid expects name=lo:hi:n");
    }
    cfg.scan.axes.push_back(axis);
  }
  if (cfg.scan.axes.empty()) {
    for (const std::string& name : cfg.field.momenta) {
      cfg.scan.axes.push_back({name, -M_PI, M_PI, 41});
    }
  }
  return cfg;
}

std::string format_for(const std::string& path, const std::string& fallback) {
  if (path.size() > 4 && path.substr(path.size() - 4) == ".csv") return "csv";
  if (path.size() > 5 && path.substr(path.size() - 5) == ".json") {
    return "json";
  }
  return fallback;
}

std::vector<OutputSpec> resolve_outputs(const JobConfig& cfg,
                                        const CommonOpts& opts,
                                        const std::string& kind) {
  std::vector<OutputSpec> out;
  if (!opts.out.empty()) {
    out.push_back({kind, opts.out, format_for(opts.out, "json")});
    return out;
  }
  for (const auto& spec : cfg.outputs) {
    if (spec.kind == kind) out.push_back(spec);
  }
  return out;
}

void emit_json(const std::vector<OutputSpec>& outputs, const Json& report) {
  if (outputs.empty()) {
    std::cout << dump_deterministic(report);
    return;
  }
  for (const auto& spec : outputs) write_json_file(spec.path, report);
}

Json params_to_json(const std::map<std::string, Complex>& params) {
  Json j = Json::object();
  for (const auto& [name, value] : params) j[name] = complex_to_json(value);
  return j;
}

std::vector<std::vector<double>> grid_points(const ScanConfig& scan) {
  std::vector<std::vector<double>> pts{{}};
  for (const auto& axis : scan.axes) {
    std::vector<std::vector<double>> next;
    for (const auto& base : pts) {
      for (int i = 0; i < axis.samples; ++i) {
        std::vector<double> k = base;
        k.push_back(axis.lo
                    + (axis.hi - axis.lo) * i / (axis.samples - 1.0));
        next.push_back(k);
      }
    }
    pts = std::move(next);
  }
  return pts;
}

int cmd_bands(const CommonOpts& opts) {
  const JobConfig cfg = build_config(opts);
  std::vector<std::string> header;
  for (const auto& axis : cfg.scan.axes) header.push_back(axis.name);
  for (int i = 0; i < cfg.field.dim; ++i) {
    header.push_back("re_lambda_" + std::to_string(i + 1));
    header.push_back("im_lambda_" + std::to_string(i + 1));
  }
  std::vector<std::vector<double>> rows;
  for (const auto& k : grid_points(cfg.scan)) {
    Spectrum sp = roots_numeric(cfg.field(k));
    std::vector<double> row = k;
    for (const Complex& lam : sp.eigenvalues) {
      row.push_back(lam.real());
      row.push_back(lam.imag());
    }
    rows.push_back(row);
  }
  auto outputs = resolve_outputs(cfg, opts, "bands");
  Json report;
  report["schema"] = 1;
  report["command"] = "bands";
  report["model"] = cfg.model_name;
  report["params"] = params_to_json(cfg.params);
  report["columns"] = header;
  report["rows"] = rows;
  bool wrote = false;
  for (const auto& spec : outputs) {
    if (spec.format == "csv") {
      write_csv_file(spec.path, header, rows);
    } else {
      write_json_file(spec.path, report);
    }
    wrote = true;
  }
  if (!wrote) std::cout << dump_deterministic(report);
  return kExitOk;
}

Json scan_report(const JobConfig& cfg, const ScanResult& result) {
  Json report;
  report["schema"] = 1;
  report["command"] = "scan";
  report["model"] = cfg.model_name;
  report["params"] = params_to_json(cfg.params);
  Json tol;
  tol["cluster_radius"] = cfg.scan.cluster_radius;
  tol["rank_tol"] = cfg.scan.rank_tol;
  tol["refine_tol"] = cfg.scan.refine_tol;
  tol["accept_tol"] = cfg.scan.accept_tol;
  report["tolerances"] = tol;
  report["grid_evaluations"] = result.grid_evaluations;
  report["discriminant_structurally_zero"]
      = result.discriminant_structurally_zero;
  Json candidates = Json::array();
  for (const auto& p : result.points) candidates.push_back(ep_point_to_json(p));
  report["candidates"] = candidates;
  return report;
}

int cmd_scan(const CommonOpts& opts) {
  const JobConfig cfg = build_config(opts);
  const ScanResult result = scan(cfg.field, cfg.scan);
  emit_json(resolve_outputs(cfg, opts, "ep_report"), scan_report(cfg, result));
  return kExitOk;
}

int cmd_classify(const CommonOpts& opts) {
  const JobConfig cfg = build_config(opts);
  std::vector<double> k0 = cfg.classify_k;
  std::vector<double> dir = cfg.classify_dir;
  if (k0.empty()) {
    const ScanResult result = scan(cfg.field, cfg.scan);
    if (result.points.empty()) {
      std::cerr << "classify: no EP found on the grid\n";
      return kExitNumerical;
    }
    const EpPoint* best = &result.points.front();
    for (const auto& p : result.points) {
      if (p.order > best->order
          || (p.order == best->order && p.residual < best->residual)) {
        best = &p;
      }
    }
    k0 = best->k;
  }
  if (dir.empty()) dir.assign(k0.size(), 1.0 / std::sqrt(double(k0.size())));
  EpClass cls;
  try {
    cls = classify(cfg.field, k0, dir);
  } catch (const std::invalid_argument& e) {
    std::cerr << "classify: " << e.what() << "\n";
    return kExitNumerical;
  }
  const Spectrum sp0 = roots_numeric(cfg.field(k0));
  const double scale0 = std::max(1.0, cfg.field(k0).norm());
  auto clusters = cluster_eigenvalues(sp0.eigenvalues, 1e-4 * scale0);
  Complex lambda0 = sp0.eigenvalues.front();
  int biggest = 0;
  for (const auto& c : clusters) {
    if (c.count > biggest) {
      biggest = c.count;
      lambda0 = c.mean;
    }
  }
  const ScalingFit fit = scaling_exponents(cfg.field, k0, dir, lambda0);
  Json report;
  report["schema"] = 1;
  report["command"] = "classify";
  report["model"] = cfg.model_name;
  report["params"] = params_to_json(cfg.params);
  report["k"] = k0;
  report["direction"] = dir;
  report["order"] = cls.order;
  report["label"] = ep_label_name(cls.label);
  report["evidence"] = cls.evidence;
  Json bands = Json::array();
  for (const auto& b : fit.bands) {
    Json bj;
    bj["exponent"] = b.exponent;
    bj["r2"] = b.r2;
    bj["flat"] = b.flat;
    bj["reliable"] = b.reliable;
    bj["max_split"] = b.max_split;
    bands.push_back(bj);
  }
  Json scaling;
  scaling["lambda0"] = complex_to_json(fit.lambda0);
  scaling["omega_min"] = fit.omega_min;
  scaling["omega_max"] = fit.omega_max;
  scaling["bands"] = bands;
  report["scaling"] = scaling;
  emit_json(resolve_outputs(cfg, opts, "dispersion"), report);
  return kExitOk;
}

int cmd_symcheck(const CommonOpts& opts) {
  const JobConfig cfg = build_config(opts);
  std::vector<std::vector<double>> ksamples;
  std::mt19937_64 rng(0x5eed);
  std::uniform_real_distribution<double> uk(-M_PI, M_PI);
  for (int t = 0; t < 5; ++t) {
    std::vector<double> k(cfg.field.momenta.size());
    for (auto& v : k) v = uk(rng);
    ksamples.push_back(k);
  }
  if (ksamples.empty() || cfg.field.momenta.empty()) {
    ksamples = {std::vector<double>{}};
  }
  Json entries = Json::array();
  for (const auto& op : cfg.symmetries) {
    Json e;
    e["kind"] = sym_kind_name(op.kind);
    e["zeta"] = op.zeta;
    const OperatorCheck oc = validate_operator(op);
    e["unitarity"] = oc.unitarity;
    e["involution"] = oc.involution;
    e["residual"] = check_symmetry(cfg.field, op, ksamples);
    double spectral = 0.0;
    for (const auto& k : ksamples) {
      spectral = std::max(spectral,
                          spectral_relation_residual(cfg.field, op.kind, k));
    }
    e["spectral_relation"] = spectral;
    const ConstraintPrediction pred
        = predicted_constraints(op.kind, cfg.field.dim);
    e["predicted_constraints"] = pred.count;
    e["constraint_names"] = pred.names;
    entries.push_back(e);
  }
  Json report;
  report["schema"] = 1;
  report["command"] = "symcheck";
  report["model"] = cfg.model_name;
  report["params"] = params_to_json(cfg.params);
  report["symmetries"] = entries;
  emit_json(resolve_outputs(cfg, opts, "symmetry_report"), report);
  return kExitOk;
}

int cmd_tablecheck(const std::string& filter_kind, int filter_n,
                   const CommonOpts& opts) {
  Json entries = Json::array();
  bool all_ok = true;
  for (const auto& row : full_catalogue()) {
    if (filter_n != 0 && row.n != filter_n) continue;
    if (!filter_kind.empty() && filter_kind != "all") {
      bool match = false;
      for (const auto& op : row.ops) {
        if (sym_kind_name(op.kind) == filter_kind) match = true;
      }
      if (!match) continue;
    }
    const RowCheck check = check_row(row);
    const bool ok = check.ok();
    all_ok = all_ok && ok;
    Json e;
    e["label"] = row.label;
    e["n"] = row.n;
    e["expected_parameters"] = check.expected_parameters;
    e["measured_labels"] = check.measured_labels;
    if (check.free_count) e["free_count"] = *check.free_count;
    e["expected_constraints"] = check.expected_constraints;
    e["predicted_constraints"] = check.predicted_constraint_count;
    e["symmetrization_residual"] = check.symmetrization_residual;
    e["pass"] = ok;
    entries.push_back(e);
    std::cout << (ok ? "PASS " : "FAIL ") << row.label << ": parameters "
              << check.expected_parameters << "/" << check.measured_labels
              << ", constraints " << check.expected_constraints << "/"
              << check.predicted_constraint_count << "\n";
  }
  Json report;
  report["schema"] = 1;
  report["command"] = "tablecheck";
  report["rows"] = entries;
  report["pass"] = all_ok;
  if (!opts.out.empty()) {
    write_json_file(opts.out, report);
  } else {
    for (const auto& spec : opts.config_path.empty()
                                ? std::vector<OutputSpec>{}
                                : load_config(opts.config_path).outputs) {
      if (spec.kind == "table_check") write_json_file(spec.path, report);
    }
  }
  return all_ok ? kExitOk : kExitTableMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exceptional-point atlas for non-Hermitian band models"};
  app.require_subcommand(1);

  CommonOpts bands_opts;
  CLI::App* bands = app.add_subcommand("bands", "eigenvalues over a grid");
  add_common(bands, bands_opts);

  CommonOpts scan_opts;
  CLI::App* scn = app.add_subcommand("scan", "locate and order EPs");
  add_common(scn, scan_opts);

  CommonOpts classify_opts;
  CLI::App* cls = app.add_subcommand("classify", "dispersion class of an EP");
  add_common(cls, classify_opts);

  CommonOpts sym_opts;
  CLI::App* sym = app.add_subcommand("symcheck", "verify configured symmetries");
  add_common(sym, sym_opts);

  CommonOpts table_opts;
  std::string table_kind = "all";
  int table_n = 0;
  CLI::App* tbl = app.add_subcommand("tablecheck",
                                     "constraint/parameter catalogue check");
  add_common(tbl, table_opts);
  tbl->add_option("--kind", table_kind, "symmetry kind filter or 'all'");
  tbl->add_option("--n", table_n, "band count filter (0 = all)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (bands->parsed()) return cmd_bands(bands_opts);
    if (scn->parsed()) return cmd_scan(scan_opts);
    if (cls->parsed()) return cmd_classify(classify_opts);
    if (sym->parsed()) return cmd_symcheck(sym_opts);
    if (tbl->parsed()) return cmd_tablecheck(table_kind, table_n, table_opts);
  } catch (const std::runtime_error& e) {
    std::cerr << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitOk;
}
