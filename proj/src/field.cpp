#include "epatlas/field.hpp"

#include <algorithm>
#include <set>

namespace epatlas {

namespace {

const std::vector<std::string> kReservedMomenta = {"k_x", "k_y", "k_z"};

// Collect the reserved momentum names used by a set of ASTs, in canonical
// order, and check the remaining identifiers against the parameter map.
std::vector<std::string> resolve_momenta(
    const std::vector<expr::Ast>& asts,
    const std::map<std::string, Complex>& params) {
  std::set<std::string> used;
  for (const auto& a : asts)
    for (const auto& id : expr::free_identifiers(a)) used.insert(id);
  std::vector<std::string> momenta;
  for (const auto& m : kReservedMomenta)
    if (used.count(m)) momenta.push_back(m), used.erase(m);
  std::vector<std::string> unbound;
  for (const auto& id : used)
    if (!params.count(id)) unbound.push_back(id);
  if (!unbound.empty()) {
    std::string msg = "unbound identifiers in hamiltonian:";
    for (const auto& u : unbound) msg += " " + u;
    throw expr::EvalError(msg, unbound);
  }
  return momenta;
}

std::map<std::string, Complex> bind(const std::map<std::string, Complex>& params,
                                    const std::vector<std::string>& momenta,
                                    const std::vector<double>& k) {
  if (k.size() != momenta.size())
    throw EpAtlasError("field evaluation: wrong momentum arity");
  std::map<std::string, Complex> env = params;
  for (size_t i = 0; i < momenta.size(); ++i)
    env[momenta[i]] = Complex(k[i], 0.0);
  return env;
}

}  // namespace

Matrix HamiltonianField::operator()(const std::vector<double>& k) const {
  return eval(k);
}

HamiltonianField field_from_entries(
    const std::vector<std::vector<std::string>>& entries,
    const std::map<std::string, Complex>& params) {
  const int n = static_cast<int>(entries.size());
  if (n < 2)
    throw EpAtlasError("hamiltonian must be at least 2x2");
  std::vector<std::vector<expr::Ast>> asts(n);
  std::vector<expr::Ast> flat;
  for (int r = 0; r < n; ++r) {
    if (static_cast<int>(entries[r].size()) != n)
      throw EpAtlasError("hamiltonian entry matrix is not square");
    for (const auto& s : entries[r]) {
      asts[r].push_back(expr::parse(s));
      flat.push_back(asts[r].back());
    }
  }
  HamiltonianField f;
  f.dim = n;
  f.momenta = resolve_momenta(flat, params);
  auto momenta = f.momenta;
  f.eval = [n, asts, params, momenta](const std::vector<double>& k) {
    auto env = bind(params, momenta, k);
    Matrix H(n, n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) H(r, c) = expr::evaluate(asts[r][c], env);
    return H;
  };
  return f;
}

HamiltonianField field_from_coefficients(
    BasisFamily family, const std::string& d0_expr,
    const std::vector<std::string>& d_exprs,
    const std::map<std::string, Complex>& params) {
  const int n = basis_dimension(family);
  const int count = basis_count(family);
  if (static_cast<int>(d_exprs.size()) != count)
    throw EpAtlasError("coefficient count does not match basis family");
  std::vector<expr::Ast> asts;
  asts.push_back(expr::parse(d0_expr));
  for (const auto& s : d_exprs) asts.push_back(expr::parse(s));
  HamiltonianField f;
  f.dim = n;
  f.momenta = resolve_momenta(asts, params);
  auto momenta = f.momenta;
  f.eval = [family, n, asts, params, momenta](const std::vector<double>& k) {
    auto env = bind(params, momenta, k);
    Matrix H = expr::evaluate(asts[0], env) * Matrix::Identity(n, n);
    const auto& bs = basis_matrices(family);
    for (size_t a = 0; a < bs.size(); ++a)
      H += expr::evaluate(asts[a + 1], env) * bs[a];
    return H;
  };
  return f;
}

std::vector<double> negate_k(const std::vector<double>& k) {
  std::vector<double> m(k.size());
  std::transform(k.begin(), k.end(), m.begin(), [](double x) { return -x; });
  return m;
}

Matrix symmetric_part(const HamiltonianField& f, const std::vector<double>& k) {
  return 0.5 * (f(k) + f(negate_k(k)));
}

Matrix antisymmetric_part(const HamiltonianField& f, const std::vector<double>& k) {
  return 0.5 * (f(k) - f(negate_k(k)));
}

}  // namespace epatlas
