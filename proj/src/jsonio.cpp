#include "epatlas/jsonio.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "epatlas/models.hpp"

namespace epatlas {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw std::runtime_error("config error at " + where + ": " + what);
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void dump_rec(const Json& j, std::string& out, int indent, int depth) {
  const std::string pad(static_cast<std::size_t>(indent) * depth, ' ');
  const std::string pad_in(static_cast<std::size_t>(indent) * (depth + 1),
                           ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad_in + Json(it.key()).dump() + ": ";
        dump_rec(it.value(), out, indent, depth + 1);
      }
      out += "\n" + pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      bool first = true;
      for (const auto& item : j) {
        if (!first) out += ",\n";
        first = false;
        out += pad_in;
        dump_rec(item, out, indent, depth + 1);
      }
      out += "\n" + pad + "]";
      return;
    }
    case Json::value_t::number_float:
      out += format_double(j.get<double>());
      return;
    default:
      out += j.dump();
      return;
  }
}

std::map<std::string, Complex> parse_params(const Json& j,
                                            const std::string& where) {
  std::map<std::string, Complex> out;
  if (j.is_null()) return out;
  if (!j.is_object()) fail(where, "expected an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    out[it.key()] = parse_complex(it.value(), where + "/" + it.key());
  }
  return out;
}

Matrix parse_matrix(const Json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) fail(where, "expected a matrix");
  const int rows = static_cast<int>(j.size());
  const int cols = static_cast<int>(j.at(0).size());
  Matrix m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    const Json& row = j.at(r);
    if (!row.is_array() || static_cast<int>(row.size()) != cols) {
      fail(where, "ragged matrix rows");
    }
    for (int c = 0; c < cols; ++c) {
      m(r, c) = parse_complex(row.at(c), where + "/" + std::to_string(r) + "/"
                                             + std::to_string(c));
    }
  }
  return m;
}

HamiltonianField parse_hamiltonian(const Json& j, std::string& model_name,
                                   std::map<std::string, Complex>& params) {
  const std::string where = "/hamiltonian";
  if (!j.is_object()) fail(where, "expected an object");
  const int sources = static_cast<int>(j.contains("model"))
                      + static_cast<int>(j.contains("entries"))
                      + static_cast<int>(j.contains("coefficients"));
  if (sources != 1) {
    fail(where, "exactly one of model / entries / coefficients required");
  }
  params = parse_params(j.value("params", Json()), where + "/params");
  if (j.contains("model")) {
    model_name = j.at("model").get<std::string>();
    try {
      return make_model(model_name, params);
    } catch (const std::invalid_argument& e) {
      fail(where + "/model", e.what());
    }
  }
  if (j.contains("entries")) {
    const Json& e = j.at("entries");
    if (!e.is_array()) fail(where + "/entries", "expected an array of rows");
    std::vector<std::vector<std::string>> entries;
    for (const auto& row : e) {
      entries.push_back(row.get<std::vector<std::string>>());
    }
    return field_from_entries(entries, params);
  }
  const Json& c = j.at("coefficients");
  if (!j.contains("family")) fail(where, "coefficients require a family");
  const BasisFamily family
      = basis_family_from_name(j.at("family").get<std::string>());
  const std::string d0 = c.value("d0", "0");
  std::vector<std::string> d;
  if (c.contains("d")) d = c.at("d").get<std::vector<std::string>>();
  return field_from_coefficients(family, d0, d, params);
}

std::vector<SymmetryOperator> parse_symmetries(const Json& j, int dim) {
  std::vector<SymmetryOperator> out;
  if (j.is_null()) return out;
  if (!j.is_array()) fail("/symmetries", "expected an array");
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string where = "/symmetries/" + std::to_string(i);
    const Json& s = j.at(i);
    if (!s.is_object() || !s.contains("kind")) fail(where, "kind required");
    SymmetryOperator op;
    op.kind = sym_kind_from_name(s.at("kind").get<std::string>());
    op.zeta = s.value("zeta", 1);
    const Json gen = s.value("generator", Json("default"));
    if (gen.is_string() && gen.get<std::string>() == "default") {
      op.generator = default_generator(op.kind, dim, op.zeta);
    } else {
      op.generator = parse_matrix(gen, where + "/generator");
    }
    out.push_back(op);
  }
  return out;
}

ScanConfig parse_scan(const Json& j) {
  ScanConfig cfg;
  if (j.is_null()) return cfg;
  if (!j.is_object()) fail("/scan", "expected an object");
  if (j.contains("axes")) {
    for (std::size_t i = 0; i < j.at("axes").size(); ++i) {
      const Json& a = j.at("axes").at(i);
      const std::string where = "/scan/axes/" + std::to_string(i);
      ScanAxis axis;
      axis.name = a.value("name", "k_" + std::to_string(i));
      if (!a.contains("lo") || !a.contains("hi")) fail(where, "lo/hi required");
      axis.lo = a.at("lo").get<double>();
      axis.hi = a.at("hi").get<double>();
      axis.samples = a.value("samples", 41);
      if (axis.samples < 2) fail(where, "samples must be >= 2");
      cfg.axes.push_back(axis);
    }
  }
  cfg.cluster_radius = j.value("cluster_radius", cfg.cluster_radius);
  cfg.rank_tol = j.value("rank_tol", cfg.rank_tol);
  cfg.refine_tol = j.value("refine_tol", cfg.refine_tol);
  cfg.accept_tol = j.value("accept_tol", cfg.accept_tol);
  cfg.max_refine_iters = j.value("max_refine_iters", cfg.max_refine_iters);
  cfg.max_candidates = j.value("max_candidates", cfg.max_candidates);
  return cfg;
}

}  // namespace

Complex parse_complex(const Json& j, const std::string& where) {
  if (j.is_number()) return Complex{j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j.at(0).is_number()
      && j.at(1).is_number()) {
    return Complex{j.at(0).get<double>(), j.at(1).get<double>()};
  }
  fail(where, "expected a number or [re, im] pair");
}

JobConfig parse_config(const Json& j) {
  if (!j.is_object()) fail("/", "expected an object");
  if (j.value("schema", 0) != 1) fail("/schema", "unsupported schema version");
  if (!j.contains("hamiltonian")) fail("/hamiltonian", "missing");
  JobConfig cfg;
  cfg.field = parse_hamiltonian(j.at("hamiltonian"), cfg.model_name,
                                cfg.params);
  cfg.symmetries = parse_symmetries(j.value("symmetries", Json()),
                                    cfg.field.dim);
  cfg.scan = parse_scan(j.value("scan", Json()));
  if (j.contains("classify")) {
    const Json& c = j.at("classify");
    cfg.classify_k = c.value("k", std::vector<double>{});
    cfg.classify_dir = c.value("direction", std::vector<double>{});
  }
  if (j.contains("outputs")) {
    for (std::size_t i = 0; i < j.at("outputs").size(); ++i) {
      const Json& o = j.at("outputs").at(i);
      const std::string where = "/outputs/" + std::to_string(i);
      OutputSpec spec;
      if (!o.contains("kind") || !o.contains("path")) {
        fail(where, "kind and path required");
      }
      spec.kind = o.at("kind").get<std::string>();
      spec.path = o.at("path").get<std::string>();
      spec.format = o.value("format", "json");
      cfg.outputs.push_back(spec);
    }
  }
  return cfg;
}

JobConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config error: cannot open " + path);
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw std::runtime_error("config error: " + std::string(e.what()));
  }
  return parse_config(j);
}

std::string dump_deterministic(const Json& j, int indent) {
  std::string out;
  dump_rec(j, out, indent, 0);
  out += "\n";
  return out;
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << dump_deterministic(j);
}

void write_csv_file(const std::string& path,
                    const std::vector<std::string>& header,
                    const std::vector<std::vector<double>>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  for (std::size_t i = 0; i < header.size(); ++i) {
    out << (i ? "," : "") << header[i];
  }
  out << "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      out << (i ? "," : "") << format_double(row[i]);
    }
    out << "\n";
  }
}

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json ep_point_to_json(const EpPoint& p) {
  Json j;
  j["k"] = p.k;
  j["eigenvalue"] = complex_to_json(p.eigenvalue);
  j["order"] = p.order;
  j["algebraic"] = p.algebraic;
  j["band_multiplicity"] = p.band_multiplicity;
  j["blocks"] = p.blocks;
  j["residual"] = p.residual;
  j["defective"] = p.defective;
  j["on_curve"] = p.on_curve;
  j["objective"] = p.objective;
  return j;
}

}  // namespace epatlas
