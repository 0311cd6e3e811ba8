#include "epatlas/basis.hpp"

#include <cmath>

namespace epatlas {

namespace {

Matrix zero(int n) { return Matrix::Zero(n, n); }

// Antisymmetric generator: -i at (r,c), +i at (c,r).
Matrix anti(int n, int r, int c) {
  Matrix m = zero(n);
  m(r, c) = -I;
  m(c, r) = I;
  return m;
}

// Symmetric generator: 1 at (r,c) and (c,r).
Matrix symm(int n, int r, int c) {
  Matrix m = zero(n);
  m(r, c) = 1.0;
  m(c, r) = 1.0;
  return m;
}

Matrix diag(std::initializer_list<double> v) {
  Matrix m = zero(static_cast<int>(v.size()));
  int i = 0;
  for (double x : v) m(i, i) = x, ++i;
  return m;
}

std::vector<Matrix> make_pauli() {
  Matrix sx = symm(2, 0, 1);
  Matrix sy = anti(2, 0, 1);
  Matrix sz = diag({1.0, -1.0});
  return {sx, sy, sz};
}

std::vector<Matrix> make_gellmann3() {
  const double s3 = std::sqrt(3.0);
  std::vector<Matrix> m;
  m.push_back(anti(3, 0, 1));                 // M1
  m.push_back(anti(3, 0, 2));                 // M2
  m.push_back(anti(3, 1, 2));                 // M3
  m.push_back(symm(3, 0, 1));                 // M4
  m.push_back(symm(3, 0, 2));                 // M5
  m.push_back(symm(3, 1, 2));                 // M6
  m.push_back(diag({1.0, -1.0, 0.0}));        // M7
  Matrix m8 = diag({1.0, 1.0, -2.0}) / s3;    // M8
  m.push_back(m8);
  return m;
}

std::vector<Matrix> make_gellmann4() {
  const double s3 = std::sqrt(3.0);
  const double s6 = std::sqrt(6.0);
  std::vector<Matrix> m;
  const int pairs[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  for (auto& p : pairs) m.push_back(anti(4, p[0], p[1]));  // L1..L6
  for (auto& p : pairs) m.push_back(symm(4, p[0], p[1]));  // L7..L12
  m.push_back(diag({1.0, -1.0, 0.0, 0.0}));                // L13
  m.push_back(diag({1.0, 1.0, -2.0, 0.0}) / s3);           // L14
  m.push_back(diag({1.0, 1.0, 1.0, -3.0}) / s6);           // L15
  return m;
}

Matrix kron2(const Matrix& a, const Matrix& b) {
  Matrix out(4, 4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      out.block(2 * i, 2 * j, 2, 2) = a(i, j) * b;
  return out;
}

std::vector<Matrix> make_gamma() {
  auto pauli = make_pauli();
  Matrix id2 = Matrix::Identity(2, 2);
  const Matrix& sx = pauli[0];
  const Matrix& sy = pauli[1];
  const Matrix& sz = pauli[2];
  return {
      kron2(sx, id2),  // Gamma1
      kron2(sy, sy),   // Gamma2
      kron2(sz, id2),  // Gamma3
      kron2(sy, sx),   // Gamma4
      kron2(sy, sz),   // Gamma5
  };
}

}  // namespace

int basis_dimension(BasisFamily family) {
  switch (family) {
    case BasisFamily::Pauli: return 2;
    case BasisFamily::GellMann3: return 3;
    case BasisFamily::GellMann4: return 4;
    case BasisFamily::Gamma: return 4;
  }
  throw EpAtlasError("unknown basis family");
}

int basis_count(BasisFamily family) {
  switch (family) {
    case BasisFamily::Pauli: return 3;
    case BasisFamily::GellMann3: return 8;
    case BasisFamily::GellMann4: return 15;
    case BasisFamily::Gamma: return 5;
  }
  throw EpAtlasError("unknown basis family");
}

const std::vector<Matrix>& basis_matrices(BasisFamily family) {
  static const std::vector<Matrix> pauli = make_pauli();
  static const std::vector<Matrix> gm3 = make_gellmann3();
  static const std::vector<Matrix> gm4 = make_gellmann4();
  static const std::vector<Matrix> gamma = make_gamma();
  switch (family) {
    case BasisFamily::Pauli: return pauli;
    case BasisFamily::GellMann3: return gm3;
    case BasisFamily::GellMann4: return gm4;
    case BasisFamily::Gamma: return gamma;
  }
  throw EpAtlasError("unknown basis family");
}

BasisFamily basis_family_from_name(const std::string& name) {
  if (name == "pauli") return BasisFamily::Pauli;
  if (name == "gellmann3") return BasisFamily::GellMann3;
  if (name == "gellmann4") return BasisFamily::GellMann4;
  if (name == "gamma") return BasisFamily::Gamma;
  throw EpAtlasError("unknown basis family name: " + name);
}

std::string basis_family_name(BasisFamily family) {
  switch (family) {
    case BasisFamily::Pauli: return "pauli";
    case BasisFamily::GellMann3: return "gellmann3";
    case BasisFamily::GellMann4: return "gellmann4";
    case BasisFamily::Gamma: return "gamma";
  }
  throw EpAtlasError("unknown basis family");
}

CoefficientVector decompose(const Matrix& H, BasisFamily family) {
  if (family == BasisFamily::Gamma)
    throw EpAtlasError(
        "gamma family is not an expansion basis; decompose requires an "
        "orthogonal family (pauli, gellmann3, gellmann4)");
  int n = basis_dimension(family);
  if (H.rows() != n || H.cols() != n)
    throw EpAtlasError("decompose: matrix dimension does not match family");
  CoefficientVector c;
  c.family = family;
  c.d0 = H.trace() / static_cast<double>(n);
  const auto& bs = basis_matrices(family);
  c.d.reserve(bs.size());
  for (const auto& b : bs) c.d.push_back((H * b).trace() / 2.0);
  return c;
}

Matrix reconstruct(const CoefficientVector& c) {
  int n = basis_dimension(c.family);
  const auto& bs = basis_matrices(c.family);
  if (c.d.size() != bs.size())
    throw EpAtlasError("reconstruct: coefficient count does not match family");
  Matrix H = c.d0 * Matrix::Identity(n, n);
  for (size_t a = 0; a < bs.size(); ++a) H += c.d[a] * bs[a];
  return H;
}

}  // namespace epatlas
