#include "epatlas/symmetry.hpp"

#include <algorithm>
#include <cmath>

#include "epatlas/charpoly.hpp"

namespace epatlas {

namespace {

Matrix inv(const Matrix& A) { return A.inverse(); }

// One evaluation of the symmetry action on a concrete matrix pair
// (H at k and at -k, the latter only used by the momentum-flipping kinds).
Matrix action(const SymmetryOperator& op, const Matrix& Hk, const Matrix& Hmk) {
  const Matrix& A = op.generator;
  switch (op.kind) {
    case SymKind::PHS:
      return -A * Hmk.transpose() * inv(A);
    case SymKind::PHSdag:
      return -A * Hmk.conjugate() * inv(A);
    case SymKind::TRS:
      return A * Hmk.conjugate() * inv(A);
    case SymKind::TRSdag:
      return A * Hmk.transpose() * inv(A);
    case SymKind::CS:
      return -A * Hk.adjoint() * inv(A);
    case SymKind::psCS:
      // transpose of H^T = -L H L^-1, valid for any invertible L
      return -inv(A.transpose()) * Hk.transpose() * A.transpose();
    case SymKind::SLS:
      return -A * Hk * inv(A);
    case SymKind::psH:
      return A * Hk.adjoint() * inv(A);
    case SymKind::Inversion:
      return inv(A) * Hmk.adjoint() * A;
    case SymKind::Parity:
      return A * Hmk * inv(A);
    case SymKind::PT:
      return A * Hk.conjugate() * inv(A);
    case SymKind::CP:
      return -A * Hk.conjugate() * inv(A);
  }
  throw EpAtlasError("unknown symmetry kind");
}

Matrix perm3(int a, int b) {
  Matrix P = Matrix::Identity(3, 3);
  P(a, a) = P(b, b) = 0.0;
  P(a, b) = P(b, a) = 1.0;
  return P;
}

std::complex<double> cgauss(std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  return {g(rng), g(rng)};
}

Matrix ginibre(int n, std::mt19937_64& rng) {
  Matrix A(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) A(r, c) = cgauss(rng);
  return A;
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

// Fixed deterministic momentum samples in (-pi, pi), away from 0.
std::vector<std::vector<double>> default_ksamples(int axes, int count) {
  std::vector<std::vector<double>> out;
  double phi = 0.37;
  for (int i = 0; i < count; ++i) {
    std::vector<double> k(axes);
    for (int d = 0; d < axes; ++d) {
      phi = std::fmod(phi * 3.9990234375 + 0.7137, 1.0);
      k[d] = (phi - 0.5) * 5.8 + (phi < 0.5 ? -0.2 : 0.2);
    }
    out.push_back(k);
  }
  return out;
}

}  // namespace

std::string sym_kind_name(SymKind kind) {
  switch (kind) {
    case SymKind::PHS: return "PHS";
    case SymKind::PHSdag: return "PHSdag";
    case SymKind::TRS: return "TRS";
    case SymKind::TRSdag: return "TRSdag";
    case SymKind::CS: return "CS";
    case SymKind::psCS: return "psCS";
    case SymKind::SLS: return "SLS";
    case SymKind::psH: return "psH";
    case SymKind::Inversion: return "inversion";
    case SymKind::Parity: return "parity";
    case SymKind::PT: return "PT";
    case SymKind::CP: return "CP";
  }
  throw EpAtlasError("unknown symmetry kind");
}

SymKind sym_kind_from_name(const std::string& name) {
  for (SymKind k : kAllSymKinds)
    if (sym_kind_name(k) == name) return k;
  throw EpAtlasError("unknown symmetry kind name: " + name);
}

bool flips_momentum(SymKind kind) {
  switch (kind) {
    case SymKind::PHS:
    case SymKind::PHSdag:
    case SymKind::TRS:
    case SymKind::TRSdag:
    case SymKind::Inversion:
    case SymKind::Parity:
      return true;
    default:
      return false;
  }
}

bool is_antiunitary(SymKind kind) {
  switch (kind) {
    case SymKind::PHS:
    case SymKind::PHSdag:
    case SymKind::TRS:
    case SymKind::TRSdag:
      return true;
    default:
      return false;
  }
}

OperatorCheck validate_operator(const SymmetryOperator& op) {
  const Matrix& A = op.generator;
  const int n = static_cast<int>(A.rows());
  OperatorCheck c;
  c.unitarity = (A * A.adjoint() - Matrix::Identity(n, n)).norm();
  if (is_antiunitary(op.kind))
    c.involution = (A * A.conjugate() -
                    static_cast<double>(op.zeta) * Matrix::Identity(n, n))
                       .norm();
  else
    c.involution = (A * A - Matrix::Identity(n, n)).norm();
  return c;
}

Matrix default_generator(SymKind kind, int n, int zeta) {
  auto id = [n] { return Matrix::Identity(n, n); };
  if (is_antiunitary(kind)) {
    if (zeta == 1) {
      if (n == 4) {
        Matrix g = Matrix::Zero(4, 4);  // Lambda^8 + Lambda^11 = Gamma_1
        g(0, 2) = g(2, 0) = g(1, 3) = g(3, 1) = 1.0;
        return g;
      }
      return id();
    }
    if (n % 2 != 0)
      throw EpAtlasError("A A* = -1 requires an even-dimensional generator");
    Matrix g = Matrix::Zero(n, n);  // i sigma_y blocks
    for (int b = 0; b < n; b += 2) {
      g(b, b + 1) = -1.0;
      g(b + 1, b) = 1.0;
    }
    return g;
  }
  switch (kind) {
    case SymKind::CS:
      if (n % 2 != 0)
        throw EpAtlasError("chiral symmetry is undefined for odd n");
      if (n == 2) return basis_matrices(BasisFamily::Pauli)[2];
      if (n == 4) return basis_matrices(BasisFamily::Gamma)[4];  // Gamma_5
      break;
    case SymKind::psCS:
    case SymKind::SLS: {
      if (n == 2) return basis_matrices(BasisFamily::Pauli)[2];
      if (n == 4) {
        Matrix g = basis_matrices(BasisFamily::Gamma)[4];
        if (kind == SymKind::SLS) g = I * g;  // i Gamma_5
        return g;
      }
      Matrix g = Matrix::Zero(n, n);  // alternating-sign diagonal
      for (int j = 0; j < n; ++j) g(j, j) = (j % 2 == 0) ? 1.0 : -1.0;
      return g;
    }
    case SymKind::psH:
      if (n == 2) return basis_matrices(BasisFamily::Pauli)[0];
      if (n == 3) return perm3(0, 1);  // 1/3 + M^4 - M^8/sqrt(3)
      if (n == 4) {
        Matrix g = Matrix::Zero(4, 4);  // Gamma_1
        g(0, 2) = g(2, 0) = g(1, 3) = g(3, 1) = 1.0;
        return g;
      }
      return id();
    case SymKind::Inversion:
      if (n == 2) return basis_matrices(BasisFamily::Pauli)[2];
      if (n == 3) return perm3(1, 2);  // 1/3 + M^6 + M^7/2 + M^8/(2 sqrt 3)
      if (n == 4) {
        Matrix g = Matrix::Zero(4, 4);
        g.diagonal() << 1.0, -1.0, 1.0, -1.0;
        return g;
      }
      break;
    case SymKind::Parity:
      if (n == 2) return basis_matrices(BasisFamily::Pauli)[0];
      if (n == 3) {  // i 1/3 + M^7 - i M^8/sqrt(3) = diag(1, -1, i)
        Matrix g = Matrix::Zero(3, 3);
        g.diagonal() << Complex(1, 0), Complex(-1, 0), I;
        return g;
      }
      if (n == 4) {
        Matrix g = Matrix::Zero(4, 4);
        g.diagonal() << 1.0, -1.0, 1.0, -1.0;
        return g;
      }
      break;
    case SymKind::PT:
      if (n == 2) return basis_matrices(BasisFamily::Pauli)[0];
      if (n == 3) {
        Matrix g = Matrix::Zero(3, 3);
        g.diagonal() << Complex(1, 0), Complex(-1, 0), I;
        return g;
      }
      if (n == 4) {  // diag(1,-1,1,-1) * Gamma_1
        Matrix g = Matrix::Zero(4, 4);
        g(0, 2) = g(2, 0) = 1.0;
        g(1, 3) = g(3, 1) = -1.0;
        return g;
      }
      return id();
    case SymKind::CP:
      if (n == 2) return basis_matrices(BasisFamily::Pauli)[0];
      if (n == 3) {
        Matrix g = Matrix::Zero(3, 3);
        g.diagonal() << Complex(1, 0), Complex(-1, 0), I;
        return g;
      }
      if (n == 4) {
        Matrix g = Matrix::Zero(4, 4);  // Lambda^8 - Lambda^11
        g(0, 2) = g(2, 0) = 1.0;
        g(1, 3) = g(3, 1) = -1.0;
        return g;
      }
      break;
    default:
      break;
  }
  throw EpAtlasError("no catalogued generator for " + sym_kind_name(kind) +
                     " at n = " + std::to_string(n));
}

HamiltonianField symmetry_image(const HamiltonianField& f,
                                const SymmetryOperator& op) {
  HamiltonianField g = f;
  bool flip = flips_momentum(op.kind);
  g.eval = [f, op, flip](const std::vector<double>& k) {
    Matrix Hk = f(k);
    Matrix Hmk = flip ? f(negate_k(k)) : Hk;
    return action(op, Hk, Hmk);
  };
  return g;
}

double check_symmetry(const HamiltonianField& f, const SymmetryOperator& op,
                      const std::vector<std::vector<double>>& ksamples) {
  HamiltonianField img = symmetry_image(f, op);
  double worst = 0.0;
  auto samples = ksamples.empty()
                     ? default_ksamples(static_cast<int>(f.momenta.size()), 7)
                     : ksamples;
  if (f.momenta.empty()) samples = {std::vector<double>{}};
  for (const auto& k : samples) {
    Matrix Hk = f(k);
    Matrix r = Hk - img(k);
    worst = std::max(worst, r.norm() / mat_scale(Hk));
  }
  return worst;
}

HamiltonianField symmetrize(const HamiltonianField& f,
                            const SymmetryOperator& op) {
  HamiltonianField img = symmetry_image(f, op);
  HamiltonianField g = f;
  HamiltonianField base = f;
  g.eval = [base, img](const std::vector<double>& k) -> Matrix {
    Matrix Hk = base(k);
    Matrix Ak = img(k);
    return 0.5 * (Hk + Ak);
  };
  return g;
}

HamiltonianField symmetrize_all(const HamiltonianField& f,
                                const std::vector<SymmetryOperator>& ops,
                                int rounds) {
  HamiltonianField g = f;
  if (ops.size() <= 1) rounds = 1;
  for (int r = 0; r < rounds; ++r)
    for (const auto& op : ops) g = symmetrize(g, op);
  return g;
}

double spectral_relation_residual(const HamiltonianField& f, SymKind kind,
                                  const std::vector<double>& k) {
  Matrix Hk = f(k);
  Matrix Hother = flips_momentum(kind) ? f(negate_k(k)) : Hk;
  auto a = roots_numeric(Hk).eigenvalues;
  auto b = roots_numeric(Hother).eigenvalues;
  bool neg = false, conj = false;
  switch (kind) {
    case SymKind::PHS: neg = true; break;
    case SymKind::PHSdag: neg = true; conj = true; break;
    case SymKind::TRS: conj = true; break;
    case SymKind::TRSdag: break;
    case SymKind::CS: neg = true; conj = true; break;
    case SymKind::psCS: neg = true; break;
    case SymKind::SLS: neg = true; break;
    case SymKind::psH: conj = true; break;
    case SymKind::Inversion: conj = true; break;
    case SymKind::Parity: break;
    case SymKind::PT: conj = true; break;
    case SymKind::CP: neg = true; conj = true; break;
  }
  for (auto& x : b) {
    if (conj) x = std::conj(x);
    if (neg) x = -x;
  }
  return multiset_distance(a, b) / mat_scale(Hk);
}

ConstraintPrediction predicted_constraints(SymKind kind, int n) {
  ConstraintPrediction cp;
  auto add = [&cp](const std::string& s) { cp.names.push_back(s); };
  auto tr = [](int k) { return "tr[H^" + std::to_string(k) + "]"; };
  switch (kind) {
    case SymKind::psH:
    case SymKind::PT:
      add("Re det");
      for (int k = 2; k <= n - 1; ++k) add("Re " + tr(k));
      break;
    case SymKind::CS:
      if (n % 2 != 0)
        throw EpAtlasError("chiral symmetry is undefined for odd n");
      [[fallthrough]];
    case SymKind::CP:
      add((n % 2 == 0) ? "Re det" : "Im det");
      for (int k = 2; k <= n - 1; ++k)
        add((k % 2 == 0 ? "Re " : "Im ") + tr(k));
      break;
    case SymKind::psCS:
    case SymKind::SLS:
      if (n % 2 == 0) {
        add("Re det");
        add("Im det");
      }
      for (int k = 2; k <= n - 1; k += 2) {
        add("Re " + tr(k));
        add("Im " + tr(k));
      }
      break;
    default:  // momentum-nonlocal kinds leave all 2(n-1) constraints
      add("Re det");
      add("Im det");
      for (int k = 2; k <= n - 1; ++k) {
        add("Re " + tr(k));
        add("Im " + tr(k));
      }
      break;
  }
  cp.count = static_cast<int>(cp.names.size());
  return cp;
}

QuantityPattern predicted_vanishing(SymKind kind, int n) {
  QuantityPattern q;
  q.re_tr.assign(n + 1, false);
  q.im_tr.assign(n + 1, false);
  switch (kind) {
    case SymKind::psH:
    case SymKind::PT:
      for (int k = 1; k <= n; ++k) q.im_tr[k] = true;
      q.im_det = true;
      break;
    case SymKind::CS:
      if (n % 2 != 0)
        throw EpAtlasError("chiral symmetry is undefined for odd n");
      [[fallthrough]];
    case SymKind::CP:
      for (int k = 1; k <= n; ++k)
        (k % 2 == 0 ? q.im_tr[k] : q.re_tr[k]) = true;
      (n % 2 == 0 ? q.im_det : q.re_det) = true;
      break;
    case SymKind::psCS:
    case SymKind::SLS:
      for (int k = 1; k <= n; k += 2) q.re_tr[k] = q.im_tr[k] = true;
      if (n % 2 != 0) q.re_det = q.im_det = true;
      break;
    default:
      break;  // nothing vanishes pointwise for the nonlocal kinds
  }
  return q;
}

HamiltonianField random_field(int n, int axes, std::mt19937_64& rng) {
  std::vector<Matrix> coeffs;
  coeffs.push_back(ginibre(n, rng));
  for (int d = 0; d < axes; ++d) {
    coeffs.push_back(ginibre(n, rng));  // cos
    coeffs.push_back(ginibre(n, rng));  // sin
  }
  HamiltonianField f;
  f.dim = n;
  static const char* names[3] = {"k_x", "k_y", "k_z"};
  for (int d = 0; d < axes && d < 3; ++d) f.momenta.push_back(names[d]);
  f.eval = [n, axes, coeffs](const std::vector<double>& k) {
    Matrix H = coeffs[0];
    for (int d = 0; d < axes; ++d)
      H += std::cos(k[d]) * coeffs[1 + 2 * d] + std::sin(k[d]) * coeffs[2 + 2 * d];
    return H;
  };
  return f;
}

VanishingReport vanishing_pattern(const SymmetryOperator& op, int n,
                                  int trials, int ksamples, uint64_t seed) {
  VanishingReport rep;
  rep.predicted = predicted_vanishing(op.kind, n);
  std::mt19937_64 rng(seed);
  auto ks = default_ksamples(1, ksamples);
  // quantity index: 0..2n-1 = (Re,Im) tr[H^k]; 2n, 2n+1 = (Re,Im) det
  std::vector<std::vector<double>> values(2 * n + 2);
  for (int t = 0; t < trials; ++t) {
    HamiltonianField f = symmetrize(random_field(n, 1, rng), op);
    for (const auto& k : ks) {
      Matrix H = f(k);
      double scale = mat_scale(H);
      CharPoly cp = char_poly(H);
      for (int kk = 1; kk <= n; ++kk) {
        double norm = std::pow(scale, kk);
        values[2 * (kk - 1)].push_back(std::abs(cp.s[kk].real()) / norm);
        values[2 * (kk - 1) + 1].push_back(std::abs(cp.s[kk].imag()) / norm);
      }
      double dnorm = std::pow(scale, n);
      values[2 * n].push_back(std::abs(cp.det.real()) / dnorm);
      values[2 * n + 1].push_back(std::abs(cp.det.imag()) / dnorm);
    }
  }
  rep.max_forbidden = 0.0;
  rep.min_permitted_median = std::numeric_limits<double>::infinity();
  auto feed = [&rep](bool forbidden, const std::vector<double>& v) {
    if (forbidden) {
      for (double x : v) rep.max_forbidden = std::max(rep.max_forbidden, x);
    } else {
      rep.min_permitted_median =
          std::min(rep.min_permitted_median, median(v));
    }
  };
  for (int kk = 1; kk <= n; ++kk) {
    feed(rep.predicted.re_tr[kk], values[2 * (kk - 1)]);
    feed(rep.predicted.im_tr[kk], values[2 * (kk - 1) + 1]);
  }
  feed(rep.predicted.re_det, values[2 * n]);
  feed(rep.predicted.im_det, values[2 * n + 1]);
  return rep;
}

int SurvivingReport::count_split() const {
  int c = 0;
  for (const auto& s : split)
    for (bool b : s) c += b ? 1 : 0;
  return c;
}

int SurvivingReport::count_labels() const {
  int c = 0;
  for (const auto& s : split) {
    if (s[0] || s[1]) ++c;  // R
    if (s[2] || s[3]) ++c;  // I
  }
  return c;
}

namespace {

std::string comp_name(BasisFamily family, int a) {
  if (family == BasisFamily::Pauli) {
    static const char* xyz[3] = {"x", "y", "z"};
    return xyz[a];
  }
  return std::to_string(a + 1);
}

}  // namespace

std::vector<std::string> SurvivingReport::split_labels() const {
  static const char* suffix[4] = {"Rs", "Ra", "Is", "Ia"};
  std::vector<std::string> out;
  for (size_t a = 0; a < split.size(); ++a)
    for (int c = 0; c < 4; ++c)
      if (split[a][c])
        out.push_back("d_" + comp_name(family, static_cast<int>(a)) + suffix[c]);
  return out;
}

std::vector<std::string> SurvivingReport::ri_labels() const {
  std::vector<std::string> out;
  for (size_t a = 0; a < split.size(); ++a) {
    std::string base = "d_" + comp_name(family, static_cast<int>(a));
    if (split[a][0] || split[a][1]) out.push_back(base + "R");
    if (split[a][2] || split[a][3]) out.push_back(base + "I");
  }
  return out;
}

SurvivingReport measure_surviving(const std::vector<SymmetryOperator>& ops,
                                  BasisFamily family, int trials,
                                  uint64_t seed) {
  const int n = basis_dimension(family);
  const int count = basis_count(family);
  std::mt19937_64 rng(seed);
  auto ks = default_ksamples(1, 5);
  std::vector<std::array<double, 4>> peak(count, {0.0, 0.0, 0.0, 0.0});
  for (int t = 0; t < trials; ++t) {
    HamiltonianField f = symmetrize_all(random_field(n, 1, rng), ops);
    for (const auto& k : ks) {
      CoefficientVector cs = decompose(symmetric_part(f, k), family);
      CoefficientVector ca = decompose(antisymmetric_part(f, k), family);
      for (int a = 0; a < count; ++a) {
        peak[a][0] = std::max(peak[a][0], std::abs(cs.d[a].real()));
        peak[a][1] = std::max(peak[a][1], std::abs(ca.d[a].real()));
        peak[a][2] = std::max(peak[a][2], std::abs(cs.d[a].imag()));
        peak[a][3] = std::max(peak[a][3], std::abs(ca.d[a].imag()));
      }
    }
  }
  SurvivingReport rep;
  rep.family = family;
  rep.split.resize(count);
  for (int a = 0; a < count; ++a)
    for (int c = 0; c < 4; ++c) {
      double v = peak[a][c];
      if (v > 1e-10 && v < 1e-5)
        throw EpAtlasError("ambiguous surviving-coefficient magnitude");
      rep.split[a][c] = v >= 1e-5;
    }
  return rep;
}

std::optional<std::string> blc_alias(SymKind kind) {
  switch (kind) {
    case SymKind::PHS:
    case SymKind::TRSdag:
      return "C";
    case SymKind::TRS:
    case SymKind::PHSdag:
      return "K";
    case SymKind::CS:
    case SymKind::psH:
      return "Q";
    case SymKind::SLS:
      return "P";
    default:
      return std::nullopt;
  }
}

}  // namespace epatlas
