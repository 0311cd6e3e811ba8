#ifndef EPATLAS_FIELD_HPP
#define EPATLAS_FIELD_HPP

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "epatlas/basis.hpp"
#include "epatlas/expr.hpp"
#include "epatlas/types.hpp"

namespace epatlas {

// A momentum-dependent Hamiltonian H(k). `momenta` names the axes in order;
// eval() receives one real value per axis.
struct HamiltonianField {
  int dim = 0;
  std::vector<std::string> momenta;
  std::function<Matrix(const std::vector<double>&)> eval;

  Matrix operator()(const std::vector<double>& k) const;
};

// Build a field from a full matrix of expression strings. Momentum axes are
// the reserved identifiers k_x, k_y, k_z (in that order) that actually appear;
// all other identifiers must be bound by `params`.
HamiltonianField field_from_entries(
    const std::vector<std::vector<std::string>>& entries,
    const std::map<std::string, Complex>& params);

// Build a field from basis-expansion coefficients: H = d0*1 + sum_a d_a B^a.
HamiltonianField field_from_coefficients(
    BasisFamily family, const std::string& d0_expr,
    const std::vector<std::string>& d_exprs,
    const std::map<std::string, Complex>& params);

// Evaluate the symmetric / antisymmetric momentum components
// (H(k) +- H(-k))/2 at a point.
Matrix symmetric_part(const HamiltonianField& f, const std::vector<double>& k);
Matrix antisymmetric_part(const HamiltonianField& f, const std::vector<double>& k);

std::vector<double> negate_k(const std::vector<double>& k);

}  // namespace epatlas

#endif
