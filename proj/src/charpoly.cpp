#include "epatlas/charpoly.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

namespace epatlas {

namespace {

constexpr double kRadicandFloor = 1e-30;
const double kCbrt2 = std::cbrt(2.0);
const double kCbrt4 = std::cbrt(4.0);  // 2^(2/3)

bool lex_less(const Complex& a, const Complex& b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

Complex poly_eval(const CharPoly& cp, Complex lambda) {
  Complex acc{1.0, 0.0};
  for (int k = 1; k <= cp.n; ++k) acc = acc * lambda + cp.p[k];
  return acc;
}

Spectrum from_roots(const CharPoly& cp, std::vector<Complex> roots,
                    bool closed) {
  Spectrum sp;
  sp.eigenvalues = std::move(roots);
  sp.closed_form = closed;
  double denom = std::pow(cp.scale, cp.n);
  for (const auto& r : sp.eigenvalues)
    sp.residuals.push_back(std::abs(poly_eval(cp, r)) / denom);
  // residuals follow their eigenvalues through the sort
  std::vector<size_t> idx(sp.eigenvalues.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](size_t a, size_t b) {
    return lex_less(sp.eigenvalues[a], sp.eigenvalues[b]);
  });
  Spectrum out;
  out.closed_form = sp.closed_form;
  for (size_t i : idx) {
    out.eigenvalues.push_back(sp.eigenvalues[i]);
    out.residuals.push_back(sp.residuals[i]);
  }
  return out;
}

std::vector<Complex> companion_roots(const Matrix& comp) {
  Eigen::ComplexEigenSolver<Matrix> es(comp, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success)
    throw EpAtlasError("eigensolver failed to converge");
  std::vector<Complex> r(es.eigenvalues().data(),
                         es.eigenvalues().data() + comp.rows());
  return r;
}

// Branch-stable cube-root seed C = cbrt(s + nu) with s = sqrt(radicand);
// the sqrt sign is chosen to avoid cancellation in nu + s.
Complex cardano_seed(Complex radicand, Complex nu) {
  Complex s = std::sqrt(radicand);
  if (std::abs(nu + s) < std::abs(nu - s)) s = -s;
  return std::pow(nu + s, 1.0 / 3.0);
}

}  // namespace

CharPoly char_poly(const Matrix& H) {
  const int n = static_cast<int>(H.rows());
  if (n < 2 || H.cols() != n)
    throw EpAtlasError("char_poly: matrix must be square, n >= 2");
  if (!mat_finite(H)) throw EpAtlasError("char_poly: non-finite matrix");
  CharPoly cp;
  cp.n = n;
  cp.scale = mat_scale(H);
  cp.s.assign(n + 1, Complex{});
  cp.p.assign(n + 1, Complex{});
  cp.sigma.assign(n + 1, Complex{});
  Matrix Hk = H;
  for (int k = 1; k <= n; ++k) {
    cp.s[k] = Hk.trace();
    if (k < n) Hk = Hk * H;
  }
  for (int k = 1; k <= n; ++k) {
    Complex acc = cp.s[k];
    for (int j = 1; j < k; ++j) acc += cp.p[j] * cp.s[k - j];
    cp.p[k] = -acc / static_cast<double>(k);
    cp.sigma[k] = (k % 2 == 0) ? cp.p[k] : -cp.p[k];
  }
  cp.det = H.fullPivLu().determinant();
  cp.sigma[n] = cp.det;
  cp.p[n] = (n % 2 == 0) ? cp.det : -cp.det;
  return cp;
}

std::vector<Complex> constraint_vector(const Matrix& H) {
  const int n = static_cast<int>(H.rows());
  Matrix Ht = H - (H.trace() / static_cast<double>(n)) *
                      Matrix::Identity(n, n);
  CharPoly cp = char_poly(Ht);
  std::vector<Complex> c;
  for (int k = 2; k <= n - 1; ++k) c.push_back(cp.s[k]);
  c.push_back(cp.det);
  return c;
}

ConstraintSet constraints(const Matrix& H) {
  const int n = static_cast<int>(H.rows());
  ConstraintSet cs;
  cs.n = n;
  cs.generic = constraint_vector(H);
  CharPoly cp = char_poly(H);
  const Complex t = cp.s[1];
  if (n == 2) {
    // tr[Ht^2] = 2 (dR.dR - dI.dI) + 4i dR.dI for Ht = d.sigma
    Complex s2t = cp.s[2] - t * t / 2.0;
    cs.eta = Complex(s2t.real() / 2.0, 0.0);
    cs.nu = Complex(s2t.imag() / 4.0, 0.0);
  } else if (n == 3) {
    cs.eta = t * t / 2.0 - 1.5 * cp.s[2];
    cs.nu = 27.0 * cp.det - 2.5 * t * t * t + 4.5 * t * cp.s[2];
  } else if (n == 4) {
    Complex a = t;
    Complex b = (t * t - cp.s[2]) / 2.0;
    Complex c = (t * t * t - 3.0 * t * cp.s[2] + 2.0 * cp.s[3]) / 6.0;
    Complex d = cp.det;
    cs.eta = -3.0 * a * c + b * b + 12.0 * d;
    cs.nu = 27.0 * a * a * d - 9.0 * a * b * c + 2.0 * b * b * b -
            72.0 * b * d + 27.0 * c * c;
    cs.kappa = a * a * a - 4.0 * a * b + 8.0 * c;
  }
  return cs;
}

Complex discriminant(const Matrix& H) {
  const int n = static_cast<int>(H.rows());
  if (n == 2) {
    CharPoly cp = char_poly(H);
    return cp.s[1] * cp.s[1] - 4.0 * cp.det;
  }
  if (n == 3) {
    ConstraintSet cs = constraints(H);
    return -(4.0 * cs.eta * cs.eta * cs.eta + cs.nu * cs.nu) / 27.0;
  }
  if (n == 4) {
    ConstraintSet cs = constraints(H);
    return (4.0 * cs.eta * cs.eta * cs.eta - cs.nu * cs.nu) / 27.0;
  }
  Spectrum sp = roots_numeric(H);
  Complex d{1.0, 0.0};
  for (size_t i = 0; i < sp.eigenvalues.size(); ++i)
    for (size_t j = i + 1; j < sp.eigenvalues.size(); ++j) {
      Complex diff = sp.eigenvalues[i] - sp.eigenvalues[j];
      d *= diff * diff;
    }
  return d;
}

std::vector<Complex> perturbed_jordan(const CharPoly& cp) {
  std::vector<Complex> dj;
  for (int j = 1; j <= cp.n - 1; ++j) {
    double sign = ((cp.n + j) % 2 == 0) ? 1.0 : -1.0;
    dj.push_back(sign * cp.sigma[cp.n + 1 - j]);
  }
  return dj;
}

Matrix companion(const CharPoly& cp) {
  const int n = cp.n;
  Matrix C = Matrix::Zero(n, n);
  for (int i = 0; i + 1 < n; ++i) C(i, i + 1) = 1.0;
  auto dj = perturbed_jordan(cp);
  for (int j = 1; j <= n - 1; ++j) C(n - 1, j - 1) = dj[j - 1];
  C(n - 1, n - 1) = cp.sigma[1];
  return C;
}

Spectrum roots_closed(const CharPoly& cp) {
  const int n = cp.n;
  const double floor6 = kRadicandFloor * std::pow(cp.scale, 6);
  if (n == 2) {
    Complex t = cp.sigma[1];
    Complex s = std::sqrt(t * t - 4.0 * cp.sigma[2]);
    return from_roots(cp, {(t + s) / 2.0, (t - s) / 2.0}, true);
  }
  if (n == 3) {
    const Complex t = cp.sigma[1];
    // eta, nu per the cubic resolvent; both are polynomial in s_k
    Complex s2 = t * t - 2.0 * cp.sigma[2];
    Complex eta = t * t / 2.0 - 1.5 * s2;
    Complex nu = 27.0 * cp.det - 2.5 * t * t * t + 4.5 * t * s2;
    Complex radicand = 4.0 * eta * eta * eta + nu * nu;
    if (std::abs(radicand) < floor6)
      return from_roots(cp, companion_roots(companion(cp)), false);
    Complex C = cardano_seed(radicand, nu);
    if (std::abs(C) < 1e-12 * cp.scale) {
      if (std::abs(eta) < 1e-12 * cp.scale * cp.scale)
        return from_roots(cp, {t / 3.0, t / 3.0, t / 3.0}, true);
      return from_roots(cp, companion_roots(companion(cp)), false);
    }
    Complex EoC = eta / C;
    const Complex w1 = I * (I + std::sqrt(3.0));   // = -1 + i sqrt(3)
    const Complex w2 = I * (I - std::sqrt(3.0));   // = -1 - i sqrt(3)
    Complex l1 = (kCbrt4 * C - 2.0 * kCbrt2 * EoC + 2.0 * t) / 6.0;
    Complex l2 = (kCbrt4 * w1 * C + kCbrt2 * (2.0 + 2.0 * I * std::sqrt(3.0)) * EoC + 4.0 * t) / 12.0;
    Complex l3 = (kCbrt4 * w2 * C + kCbrt2 * (2.0 - 2.0 * I * std::sqrt(3.0)) * EoC + 4.0 * t) / 12.0;
    return from_roots(cp, {l1, l2, l3}, true);
  }
  if (n == 4) {
    const Complex a = cp.sigma[1];
    const Complex b = cp.sigma[2];
    const Complex c = cp.sigma[3];
    const Complex d = cp.sigma[4];
    Complex eta = -3.0 * a * c + b * b + 12.0 * d;
    Complex nu = 27.0 * a * a * d - 9.0 * a * b * c + 2.0 * b * b * b -
                 72.0 * b * d + 27.0 * c * c;
    Complex kappa = a * a * a - 4.0 * a * b + 8.0 * c;
    Complex radicand = nu * nu - 4.0 * eta * eta * eta;
    if (std::abs(radicand) < floor6)
      return from_roots(cp, companion_roots(companion(cp)), false);
    Complex C = cardano_seed(radicand, nu);
    if (std::abs(C) < 1e-12 * cp.scale)
      return from_roots(cp, companion_roots(companion(cp)), false);
    Complex EoC = eta / C;
    Complex P = 3.0 * a * a - 8.0 * b;
    Complex Q2 = P + 2.0 * kCbrt4 * C + 4.0 * kCbrt2 * EoC;
    Complex Q = std::sqrt(Q2);
    if (std::abs(Q) < 1e-12 * cp.scale && std::abs(kappa) > 1e-12 * std::pow(cp.scale, 3))
      return from_roots(cp, companion_roots(companion(cp)), false);
    Complex R = P - kCbrt4 * C - 2.0 * kCbrt2 * EoC;
    Complex K = (std::abs(Q) < 1e-300) ? Complex{0.0, 0.0}
                                       : 3.0 * std::sqrt(3.0) * kappa / Q;
    Complex s1 = std::sqrt(R - K);
    Complex s2 = std::sqrt(R + K);
    const double r6 = std::sqrt(6.0);
    const double r3 = std::sqrt(3.0);
    Complex l1 = (-r6 * s1 - r3 * Q + 3.0 * a) / 12.0;
    Complex l2 = (r6 * s1 - r3 * Q + 3.0 * a) / 12.0;
    Complex l3 = (-r6 * s2 + r3 * Q + 3.0 * a) / 12.0;
    Complex l4 = (r6 * s2 + r3 * Q + 3.0 * a) / 12.0;
    return from_roots(cp, {l1, l2, l3, l4}, true);
  }
  return from_roots(cp, companion_roots(companion(cp)), false);
}

Spectrum roots_numeric(const Matrix& H) {
  Eigen::ComplexEigenSolver<Matrix> es(H, /*computeEigenvectors=*/true);
  if (es.info() != Eigen::Success)
    throw EpAtlasError("eigensolver failed to converge");
  const int n = static_cast<int>(H.rows());
  double scale = mat_scale(H);
  Spectrum sp;
  for (int i = 0; i < n; ++i) {
    Complex lam = es.eigenvalues()(i);
    Vector v = es.eigenvectors().col(i);
    sp.eigenvalues.push_back(lam);
    sp.residuals.push_back((H * v - lam * v).norm() / (v.norm() * scale));
  }
  sort_spectrum(sp);
  return sp;
}

Spectrum spectrum_deflated(const Matrix& H) {
  CharPoly cp = char_poly(H);
  const int n = cp.n;
  int zeros = 0;
  while (zeros < n &&
         std::abs(cp.p[n - zeros]) < 1e-13 * std::pow(cp.scale, n - zeros))
    ++zeros;
  std::vector<Complex> roots(zeros, Complex{0.0, 0.0});
  int m = n - zeros;
  if (m == 1) {
    roots.push_back(-cp.p[1]);
  } else if (m >= 2) {
    // companion of the deflated monic polynomial
    Matrix C = Matrix::Zero(m, m);
    for (int i = 0; i + 1 < m; ++i) C(i, i + 1) = 1.0;
    for (int j = 0; j < m; ++j) C(m - 1, j) = -cp.p[m - j];
    for (const auto& r : companion_roots(C)) roots.push_back(r);
  }
  return from_roots(cp, std::move(roots), false);
}

void sort_spectrum(Spectrum& s) {
  std::vector<size_t> idx(s.eigenvalues.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](size_t a, size_t b) {
    return lex_less(s.eigenvalues[a], s.eigenvalues[b]);
  });
  Spectrum out;
  out.closed_form = s.closed_form;
  for (size_t i : idx) {
    out.eigenvalues.push_back(s.eigenvalues[i]);
    out.residuals.push_back(s.residuals.empty() ? 0.0 : s.residuals[i]);
  }
  s = std::move(out);
}

double multiset_distance(std::vector<Complex> a, std::vector<Complex> b) {
  if (a.size() != b.size())
    throw EpAtlasError("multiset_distance: size mismatch");
  const size_t n = a.size();
  std::vector<size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  // n <= 8 here, so exhaustive matching is fine and exact
  do {
    double worst = 0.0;
    for (size_t i = 0; i < n; ++i)
      worst = std::max(worst, std::abs(a[i] - b[perm[i]]));
    best = std::min(best, worst);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace epatlas
