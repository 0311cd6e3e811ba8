#include "epatlas/tables.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <set>

#include "epatlas/basis.hpp"
#include "epatlas/field.hpp"

namespace epatlas {

namespace {

std::vector<std::string> tag(std::initializer_list<const char*> names) {
  std::vector<std::string> out;
  for (const char* s : names) out.push_back(std::string("d_") + s);
  return out;
}

// R/I labels for indexed (Gell-Mann style) components: every component
// 1..count except the listed exclusions per part.
std::vector<std::string> ri_except(int count, const std::set<int>& no_r,
                                   const std::set<int>& no_i) {
  std::vector<std::string> out;
  for (int a = 1; a <= count; ++a) {
    if (!no_r.count(a)) out.push_back("d_" + std::to_string(a) + "R");
    if (!no_i.count(a)) out.push_back("d_" + std::to_string(a) + "I");
  }
  return out;
}

// Split labels for indexed components from a parity rule: components in
// `even` get (Rs, Ia) or (Rs, Is) depending on `conjugating`; the rest get
// the opposite parity.
std::vector<std::string> split_parity(int count, const std::set<int>& even,
                                      bool conjugating) {
  std::vector<std::string> out;
  for (int a = 1; a <= count; ++a) {
    bool e = even.count(a) > 0;
    std::string base = "d_" + std::to_string(a);
    if (conjugating) {
      out.push_back(base + (e ? "Rs" : "Ra"));
      out.push_back(base + (e ? "Ia" : "Is"));
    } else {
      out.push_back(base + (e ? "Rs" : "Ra"));
      out.push_back(base + (e ? "Is" : "Ia"));
    }
  }
  return out;
}

SymmetryOperator make_op(SymKind kind, int n, int zeta = +1) {
  SymmetryOperator op;
  op.kind = kind;
  op.zeta = zeta;
  op.generator = default_generator(kind, n, zeta);
  return op;
}

SymmetryOperator make_op(SymKind kind, const Matrix& generator,
                         int zeta = +1) {
  SymmetryOperator op;
  op.kind = kind;
  op.zeta = zeta;
  op.generator = generator;
  return op;
}

CatalogueRow row_nonlocal(std::string label, int n,
                          std::vector<SymmetryOperator> ops, int constraints,
                          std::vector<std::string> split = {}) {
  CatalogueRow r;
  r.label = std::move(label);
  r.n = n;
  r.ops = std::move(ops);
  r.constraint_count = constraints;
  r.parameter_count = 2 * (n * n - 1);
  r.nonlocal = true;
  r.split_expected = std::move(split);
  return r;
}

CatalogueRow row_local(std::string label, int n,
                       std::vector<SymmetryOperator> ops, int constraints,
                       int parameters, std::vector<std::string> ri = {},
                       std::vector<std::string> split = {}) {
  CatalogueRow r;
  r.label = std::move(label);
  r.n = n;
  r.ops = std::move(ops);
  r.constraint_count = constraints;
  r.parameter_count = parameters;
  r.nonlocal = false;
  r.ri_expected = std::move(ri);
  r.split_expected = std::move(split);
  return r;
}

BasisFamily family_for(int n) {
  switch (n) {
    case 2: return BasisFamily::Pauli;
    case 3: return BasisFamily::GellMann3;
    default: return BasisFamily::GellMann4;
  }
}

}  // namespace

std::vector<CatalogueRow> two_band_catalogue() {
  const auto& pauli = basis_matrices(BasisFamily::Pauli);
  const Matrix& sx = pauli[0];
  const Matrix& sz = pauli[2];
  std::vector<CatalogueRow> rows;
  rows.push_back(row_nonlocal("none (n=2)", 2, {}, 2));
  rows.push_back(row_nonlocal(
      "PHS zeta=+1", 2, {make_op(SymKind::PHS, 2, +1)}, 2,
      tag({"xRa", "xIa", "yRs", "yIs", "zRa", "zIa"})));
  rows.push_back(row_nonlocal(
      "PHS zeta=-1", 2, {make_op(SymKind::PHS, 2, -1)}, 2,
      tag({"xRs", "xIs", "yRs", "yIs", "zRs", "zIs"})));
  rows.push_back(row_nonlocal(
      "PHSdag zeta=+1", 2, {make_op(SymKind::PHSdag, 2, +1)}, 2,
      tag({"xRa", "xIs", "yRs", "yIa", "zRa", "zIs"})));
  rows.push_back(row_nonlocal(
      "PHSdag zeta=-1", 2, {make_op(SymKind::PHSdag, 2, -1)}, 2,
      tag({"xRs", "xIa", "yRs", "yIa", "zRs", "zIa"})));
  rows.push_back(row_nonlocal(
      "TRS zeta=+1", 2, {make_op(SymKind::TRS, 2, +1)}, 2,
      tag({"xRs", "xIa", "yRa", "yIs", "zRs", "zIa"})));
  rows.push_back(row_nonlocal(
      "TRS zeta=-1", 2, {make_op(SymKind::TRS, 2, -1)}, 2,
      tag({"xRa", "xIs", "yRa", "yIs", "zRa", "zIs"})));
  rows.push_back(row_nonlocal(
      "TRSdag zeta=+1", 2, {make_op(SymKind::TRSdag, 2, +1)}, 2,
      tag({"xRs", "xIs", "yRa", "yIa", "zRs", "zIs"})));
  rows.push_back(row_nonlocal(
      "TRSdag zeta=-1", 2, {make_op(SymKind::TRSdag, 2, -1)}, 2,
      tag({"xRa", "xIa", "yRa", "yIa", "zRa", "zIa"})));
  rows.push_back(row_local("CS", 2, {make_op(SymKind::CS, 2)}, 1, 3,
                           tag({"xR", "yR", "zI"})));
  rows.push_back(row_local("psCS", 2, {make_op(SymKind::psCS, 2)}, 2, 2,
                           tag({"xR", "xI"})));
  rows.push_back(row_local("SLS", 2, {make_op(SymKind::SLS, 2)}, 2, 4,
                           tag({"xR", "xI", "yR", "yI"})));
  rows.push_back(row_nonlocal(
      "inversion", 2, {make_op(SymKind::Inversion, 2)}, 2,
      tag({"xRa", "xIs", "yRa", "yIs", "zRs", "zIa"})));
  rows.push_back(row_local("psH", 2, {make_op(SymKind::psH, 2)}, 1, 3,
                           tag({"xR", "yI", "zI"})));
  rows.push_back(row_nonlocal(
      "parity (sigma_x)", 2, {make_op(SymKind::Parity, 2)}, 2,
      tag({"xRs", "xIs", "yRa", "yIa", "zRa", "zIa"})));
  rows.push_back(row_nonlocal(
      "parity (sigma_z)", 2, {make_op(SymKind::Parity, sz)}, 2,
      tag({"xRa", "xIa", "yRa", "yIa", "zRs", "zIs"})));
  rows.push_back(row_local("PT", 2, {make_op(SymKind::PT, 2)}, 1, 3,
                           tag({"xR", "yR", "zI"})));
  rows.push_back(row_local("CP", 2, {make_op(SymKind::CP, 2)}, 1, 3,
                           tag({"xI", "yI", "zR"})));
  (void)sx;
  return rows;
}

std::vector<CatalogueRow> two_band_combined_catalogue() {
  auto psh = make_op(SymKind::psH, 2);
  std::vector<CatalogueRow> rows;
  rows.push_back(row_local("psH + CS", 2, {psh, make_op(SymKind::CS, 2)}, 1, 2,
                           tag({"xR", "zI"})));
  rows.push_back(row_local("psH + SLS", 2, {psh, make_op(SymKind::SLS, 2)}, 1,
                           2, tag({"xR", "yI"})));
  rows.push_back(row_local("psH + inversion", 2,
                           {psh, make_op(SymKind::Inversion, 2)}, 1, 3, {},
                           tag({"xRa", "yIs", "zIa"})));
  rows.push_back(row_local("psH + PHS zeta=+1", 2,
                           {psh, make_op(SymKind::PHS, 2, +1)}, 1, 3, {},
                           tag({"xRa", "yIs", "zIa"})));
  rows.push_back(row_local("psH + PHSdag zeta=+1", 2,
                           {psh, make_op(SymKind::PHSdag, 2, +1)}, 1, 3, {},
                           tag({"xRa", "yIa", "zIs"})));
  rows.push_back(row_local("psH + TRS zeta=+1", 2,
                           {psh, make_op(SymKind::TRS, 2, +1)}, 1, 3, {},
                           tag({"xRs", "yIs", "zIa"})));
  rows.push_back(row_local("psH + TRSdag zeta=+1", 2,
                           {psh, make_op(SymKind::TRSdag, 2, +1)}, 1, 3, {},
                           tag({"xRs", "yIa", "zIs"})));
  rows.push_back(row_local("psH + PHS zeta=-1", 2,
                           {psh, make_op(SymKind::PHS, 2, -1)}, 1, 3, {},
                           tag({"xRs", "yIs", "zIs"})));
  rows.push_back(row_local("psH + PHSdag zeta=-1", 2,
                           {psh, make_op(SymKind::PHSdag, 2, -1)}, 1, 3, {},
                           tag({"xRs", "yIa", "zIa"})));
  rows.push_back(row_local("psH + TRS zeta=-1", 2,
                           {psh, make_op(SymKind::TRS, 2, -1)}, 1, 3, {},
                           tag({"xRa", "yIs", "zIs"})));
  rows.push_back(row_local("psH + TRSdag zeta=-1", 2,
                           {psh, make_op(SymKind::TRSdag, 2, -1)}, 1, 3, {},
                           tag({"xRa", "yIa", "zIa"})));
  return rows;
}

std::vector<CatalogueRow> three_band_catalogue() {
  std::vector<CatalogueRow> rows;
  rows.push_back(row_nonlocal("none (n=3)", 3, {}, 4));
  rows.push_back(row_nonlocal("PHS zeta=+1", 3, {make_op(SymKind::PHS, 3)}, 4,
                              split_parity(8, {1, 2, 3}, false)));
  rows.push_back(row_nonlocal("PHSdag zeta=+1", 3,
                              {make_op(SymKind::PHSdag, 3)}, 4,
                              split_parity(8, {1, 2, 3}, true)));
  rows.push_back(row_nonlocal("TRS zeta=+1", 3, {make_op(SymKind::TRS, 3)}, 4,
                              split_parity(8, {4, 5, 6, 7, 8}, true)));
  rows.push_back(row_nonlocal("TRSdag zeta=+1", 3,
                              {make_op(SymKind::TRSdag, 3)}, 4,
                              split_parity(8, {4, 5, 6, 7, 8}, false)));
  rows.push_back(row_local("psCS", 3, {make_op(SymKind::psCS, 3)}, 2, 6,
                           tag({"2R", "2I", "4R", "4I", "6R", "6I"})));
  rows.push_back(row_local(
      "SLS", 3, {make_op(SymKind::SLS, 3)}, 2, 8,
      tag({"1R", "1I", "3R", "3I", "4R", "4I", "6R", "6I"})));
  rows.push_back(
      row_nonlocal("inversion", 3, {make_op(SymKind::Inversion, 3)}, 4));
  rows.push_back(row_local(
      "psH", 3, {make_op(SymKind::psH, 3)}, 2, 12,
      tag({"1I", "2R", "2I", "3R", "3I", "4R", "5R", "5I", "6R", "6I", "7I",
           "8R"})));
  rows.push_back(row_nonlocal("parity", 3, {make_op(SymKind::Parity, 3)}, 4));
  rows.push_back(row_local(
      "PT (diag(1,-1,i))", 3, {make_op(SymKind::PT, 3)}, 2, 12,
      tag({"1R", "2R", "2I", "3R", "3I", "4I", "5R", "5I", "6R", "6I", "7R",
           "8R"})));
  Matrix real_diag = Matrix::Zero(3, 3);
  real_diag(0, 0) = 1.0;
  real_diag(1, 1) = -1.0;
  real_diag(2, 2) = 1.0;
  rows.push_back(row_local(
      "PT (diag(1,-1,1))", 3, {make_op(SymKind::PT, real_diag)}, 2, 8,
      tag({"1R", "2I", "3R", "4I", "5R", "6I", "7R", "8R"})));
  // The CP action mixes component pairs (2,5) and (3,6); the catalogued
  // count is the number of free real functions, not surviving labels.
  rows.push_back(row_local("CP", 3, {make_op(SymKind::CP, 3)}, 2, 8));
  return rows;
}

std::vector<CatalogueRow> four_band_catalogue() {
  std::vector<CatalogueRow> rows;
  rows.push_back(row_nonlocal("none (n=4)", 4, {}, 6));
  // The momentum-flipping generators mix component pairs, so these rows
  // are counted as free functions on half the momentum domain.
  for (auto kind : {SymKind::PHS, SymKind::PHSdag, SymKind::TRS,
                    SymKind::TRSdag})
    for (int zeta : {+1, -1})
      rows.push_back(row_nonlocal(sym_kind_name(kind) + " zeta=" +
                                      (zeta > 0 ? "+1" : "-1"),
                                  4, {make_op(kind, 4, zeta)}, 6));
  rows.push_back(row_local("CS", 4, {make_op(SymKind::CS, 4)}, 3, 26,
                           ri_except(15, {2, 5}, {8, 11})));
  rows.push_back(row_local("psCS", 4, {make_op(SymKind::psCS, 4)}, 4, 30,
                           ri_except(15, {}, {})));
  rows.push_back(row_local("SLS", 4, {make_op(SymKind::SLS, 4)}, 4, 26,
                           ri_except(15, {2, 5}, {2, 5})));
  rows.push_back(row_nonlocal(
      "inversion", 4, {make_op(SymKind::Inversion, 4)}, 6,
      split_parity(15, {2, 5, 8, 11, 13, 14, 15}, true)));
  rows.push_back(row_local("psH", 4, {make_op(SymKind::psH, 4)}, 3, 26,
                           ri_except(15, {2, 5}, {8, 11})));
  rows.push_back(row_nonlocal(
      "parity", 4, {make_op(SymKind::Parity, 4)}, 6,
      split_parity(15, {2, 5, 8, 11, 13, 14, 15}, false)));
  rows.push_back(row_local("PT", 4, {make_op(SymKind::PT, 4)}, 3, 26,
                           ri_except(15, {}, {2, 5, 8, 11})));
  rows.push_back(row_local("CP", 4, {make_op(SymKind::CP, 4)}, 3, 26,
                           ri_except(15, {2, 5, 8, 11}, {})));
  return rows;
}

std::vector<CatalogueRow> full_catalogue() {
  std::vector<CatalogueRow> rows = two_band_catalogue();
  for (auto& r : two_band_combined_catalogue()) rows.push_back(std::move(r));
  for (auto& r : three_band_catalogue()) rows.push_back(std::move(r));
  for (auto& r : four_band_catalogue()) rows.push_back(std::move(r));
  return rows;
}

std::optional<int> free_parameter_count(
    const std::vector<SymmetryOperator>& ops, BasisFamily family) {
  for (const auto& op : ops)
    if (flips_momentum(op.kind)) return std::nullopt;
  const int n = basis_dimension(family);
  const int count = basis_count(family);
  const int dim = 2 * count;
  const auto& mats = basis_matrices(family);

  Eigen::MatrixXd stacked(static_cast<int>(ops.size()) * dim, dim);
  int block = 0;
  for (const auto& op : ops) {
    Eigen::MatrixXd a(dim, dim);
    for (int part = 0; part < 2; ++part)
      for (int alpha = 0; alpha < count; ++alpha) {
        Matrix m = (part == 0 ? Complex(1.0, 0.0) : I) * mats[alpha];
        HamiltonianField f;
        f.dim = n;
        f.eval = [m](const std::vector<double>&) { return m; };
        Matrix image = symmetry_image(f, op)({});
        CoefficientVector c = decompose(image, family);
        for (int b = 0; b < count; ++b) {
          a(b, part * count + alpha) = c.d[b].real();
          a(count + b, part * count + alpha) = c.d[b].imag();
        }
      }
    stacked.block(block * dim, 0, dim, dim) =
        Eigen::MatrixXd::Identity(dim, dim) - a;
    ++block;
  }
  if (ops.empty()) return dim;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(stacked);
  lu.setThreshold(1e-9);
  return dim - static_cast<int>(lu.rank());
}

RowCheck check_row(const CatalogueRow& row, int trials, uint64_t seed) {
  RowCheck out;
  out.label = row.label;
  out.expected_parameters = row.parameter_count;
  out.expected_constraints = row.constraint_count;

  BasisFamily family = family_for(row.n);
  const int dim = 2 * basis_count(family);

  if (row.ops.empty()) {
    out.predicted_constraint_count = 2 * (row.n - 1);
  } else {
    out.predicted_constraint_count = 2 * (row.n - 1);
    for (const auto& op : row.ops)
      out.predicted_constraint_count =
          std::min(out.predicted_constraint_count,
                   predicted_constraints(op.kind, row.n).count);
  }
  out.constraints_ok =
      out.predicted_constraint_count == row.constraint_count;

  SurvivingReport rep = measure_surviving(row.ops, family, trials, seed);
  out.measured_labels =
      row.nonlocal ? rep.count_split() : rep.count_labels();
  if (row.nonlocal) {
    out.count_ok = row.parameter_count == dim;
  } else {
    out.free_count = free_parameter_count(row.ops, family);
    out.count_ok = out.measured_labels == row.parameter_count ||
                   (out.free_count && *out.free_count == row.parameter_count);
  }

  auto matches = [](std::vector<std::string> got,
                    std::vector<std::string> want) {
    std::sort(got.begin(), got.end());
    std::sort(want.begin(), want.end());
    return got == want;
  };
  out.labels_ok = true;
  if (!row.split_expected.empty())
    out.labels_ok = matches(rep.split_labels(), row.split_expected);
  if (out.labels_ok && !row.ri_expected.empty())
    out.labels_ok = matches(rep.ri_labels(), row.ri_expected);

  if (!row.ops.empty()) {
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
    HamiltonianField f =
        symmetrize_all(random_field(row.n, 1, rng), row.ops);
    std::vector<std::vector<double>> ks;
    for (double k : {-2.3, -0.7, 0.4, 1.9}) ks.push_back({k});
    for (const auto& op : row.ops)
      out.symmetrization_residual = std::max(
          out.symmetrization_residual, check_symmetry(f, op, ks));
  }
  return out;
}

}  // namespace epatlas
