#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "epatlas/basis.hpp"
#include "oracles.hpp"

using namespace epatlas;

namespace {
const BasisFamily kOrthogonal[] = {BasisFamily::Pauli, BasisFamily::GellMann3,
                                   BasisFamily::GellMann4};
}

TEST_CASE("family bookkeeping") {
  CHECK(basis_dimension(BasisFamily::Pauli) == 2);
  CHECK(basis_dimension(BasisFamily::GellMann3) == 3);
  CHECK(basis_dimension(BasisFamily::GellMann4) == 4);
  CHECK(basis_dimension(BasisFamily::Gamma) == 4);
  CHECK(basis_count(BasisFamily::Pauli) == 3);
  CHECK(basis_count(BasisFamily::GellMann3) == 8);
  CHECK(basis_count(BasisFamily::GellMann4) == 15);
  CHECK(basis_count(BasisFamily::Gamma) == 5);
  for (BasisFamily fam : {BasisFamily::Pauli, BasisFamily::GellMann3,
                          BasisFamily::GellMann4, BasisFamily::Gamma}) {
    CHECK(basis_family_from_name(basis_family_name(fam)) == fam);
    CHECK(static_cast<int>(basis_matrices(fam).size()) == basis_count(fam));
  }
}

TEST_CASE("generators are hermitian and traceless") {
  for (BasisFamily fam : {BasisFamily::Pauli, BasisFamily::GellMann3,
                          BasisFamily::GellMann4, BasisFamily::Gamma}) {
    CAPTURE(basis_family_name(fam));
    for (const Matrix& B : basis_matrices(fam)) {
      CHECK((B - B.adjoint()).norm() < 1e-15);
      CHECK(std::abs(B.trace()) < 1e-15);
    }
  }
}

TEST_CASE("trace orthonormality tr[B^a B^b] = 2 delta_ab") {
  for (BasisFamily fam : kOrthogonal) {
    CAPTURE(basis_family_name(fam));
    const auto& B = basis_matrices(fam);
    for (size_t a = 0; a < B.size(); ++a)
      for (size_t b = 0; b < B.size(); ++b) {
        Complex t = (B[a] * B[b]).trace();
        Complex want = (a == b) ? Complex(2.0, 0.0) : Complex(0.0, 0.0);
        CHECK(std::abs(t - want) < 1e-14);
      }
  }
}

TEST_CASE("gamma family Clifford relation") {
  const auto& G = basis_matrices(BasisFamily::Gamma);
  const Matrix id = Matrix::Identity(4, 4);
  for (size_t m = 0; m < G.size(); ++m)
    for (size_t n = 0; n < G.size(); ++n) {
      Matrix anti = G[m] * G[n] + G[n] * G[m];
      Matrix want = (m == n) ? Matrix(2.0 * id) : Matrix(Matrix::Zero(4, 4));
      CHECK((anti - want).norm() < 1e-14);
    }
}

TEST_CASE("decompose / reconstruct round trip") {
  std::mt19937_64 rng(7);
  for (BasisFamily fam : kOrthogonal) {
    CAPTURE(basis_family_name(fam));
    for (int trial = 0; trial < 20; ++trial) {
      Matrix H = oracles::random_matrix(basis_dimension(fam), rng);
      CoefficientVector c = decompose(H, fam);
      CHECK(static_cast<int>(c.d.size()) == basis_count(fam));
      CHECK(std::abs(c.d0 - H.trace() / double(H.rows())) < 1e-14);
      CHECK((reconstruct(c) - H).norm() < 1e-13 * mat_scale(H));
    }
  }
}

TEST_CASE("decompose rejects bad input") {
  std::mt19937_64 rng(11);
  CHECK_THROWS(decompose(oracles::random_matrix(4, rng), BasisFamily::Gamma));
  CHECK_THROWS(decompose(oracles::random_matrix(3, rng), BasisFamily::Pauli));
}
