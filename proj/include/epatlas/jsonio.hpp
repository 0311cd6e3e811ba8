#ifndef EPATLAS_JSONIO_HPP
#define EPATLAS_JSONIO_HPP

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "epatlas/epfinder.hpp"
#include "epatlas/field.hpp"
#include "epatlas/symmetry.hpp"
#include "epatlas/types.hpp"

namespace epatlas {

using Json = nlohmann::json;

struct OutputSpec {
  std::string kind;  // bands, constraints, ep_report, dispersion,
                     // symmetry_report, table_check
  std::string path;
  std::string format = "json";  // json or csv
};

struct JobConfig {
  std::string model_name;  // empty when built from entries/coefficients
  std::map<std::string, Complex> params;
  HamiltonianField field;
  std::vector<SymmetryOperator> symmetries;
  ScanConfig scan;
  std::vector<double> classify_k;
  std::vector<double> classify_dir;
  std::vector<OutputSpec> outputs;
};

// Parse a schema-1 job config. Errors carry JSON pointer-style paths and
// throw std::runtime_error.
JobConfig parse_config(const Json& j);
JobConfig load_config(const std::string& path);

// Complex values in configs are a number or a [re, im] pair.
Complex parse_complex(const Json& j, const std::string& where);

// Deterministic serialization: keys sorted (nlohmann's default map order),
// floats printed with 17 significant digits, no locale dependence.
std::string dump_deterministic(const Json& j, int indent = 1);
void write_json_file(const std::string& path, const Json& j);

// CSV with a header row, '.' decimal and ',' separator, 17 significant
// digits.
void write_csv_file(const std::string& path,
                    const std::vector<std::string>& header,
                    const std::vector<std::vector<double>>& rows);

Json complex_to_json(Complex z);
Json ep_point_to_json(const EpPoint& p);

}  // namespace epatlas

#endif
