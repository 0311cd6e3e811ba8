#ifndef EPATLAS_BASIS_HPP
#define EPATLAS_BASIS_HPP

#include <string>
#include <vector>

#include "epatlas/types.hpp"

namespace epatlas {

enum class BasisFamily { Pauli, GellMann3, GellMann4, Gamma };

// Matrix dimension of the family (2, 3, 4, 4).
int basis_dimension(BasisFamily family);

// Number of traceless generators (3, 8, 15, 5).
int basis_count(BasisFamily family);

// The generators B^1..B^N. All satisfy tr[B^a B^b] = 2 delta_ab except the
// Gamma family, which instead satisfies the Clifford relation
// {Gamma_mu, Gamma_nu} = 2 delta_mn * 1 and is not an orthogonal expansion
// basis for d-coefficient bookkeeping.
const std::vector<Matrix>& basis_matrices(BasisFamily family);

BasisFamily basis_family_from_name(const std::string& name);
std::string basis_family_name(BasisFamily family);

struct CoefficientVector {
  BasisFamily family = BasisFamily::Pauli;
  Complex d0{0.0, 0.0};
  std::vector<Complex> d;
};

// d0 = tr[H]/n, d_a = tr[H B^a]/2. Throws for the Gamma family (incomplete,
// non-orthogonal set) and on dimension mismatch.
CoefficientVector decompose(const Matrix& H, BasisFamily family);

// H = d0 * 1 + sum_a d_a B^a.
Matrix reconstruct(const CoefficientVector& c);

}  // namespace epatlas

#endif
