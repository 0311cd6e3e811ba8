#ifndef EPATLAS_TESTS_ORACLES_HPP
#define EPATLAS_TESTS_ORACLES_HPP

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "epatlas/types.hpp"

// Independent reference implementations used to cross-check the library:
// a cofactor-expansion determinant feeding an interpolation route to the
// characteristic polynomial, an eigenvalue-product discriminant, and a
// brute-force multiset matcher. None of them share code with src/.
namespace oracles {

using epatlas::Complex;
using epatlas::Matrix;

inline Matrix random_matrix(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Matrix H(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) H(i, j) = Complex(g(rng), g(rng));
  return H;
}

// Recursive cofactor expansion along the first row (fine for n <= 6).
inline Complex det_cofactor(const Matrix& A) {
  const int n = static_cast<int>(A.rows());
  if (n == 1) return A(0, 0);
  Complex acc = 0.0;
  for (int j = 0; j < n; ++j) {
    if (A(0, j) == Complex(0.0, 0.0)) continue;
    Matrix minor(n - 1, n - 1);
    for (int r = 1; r < n; ++r) {
      int cc = 0;
      for (int c = 0; c < n; ++c) {
        if (c == j) continue;
        minor(r - 1, cc++) = A(r, c);
      }
    }
    Complex term = A(0, j) * det_cofactor(minor);
    acc += (j % 2 == 0) ? term : -term;
  }
  return acc;
}

// Monic coefficients (c[0] = 1, c[1] lambda^{n-1} coefficient, ...,
// c[n] constant) of det(lambda 1 - H), by Lagrange interpolation at n+1
// nodes on a circle, with cofactor determinants at the nodes.
inline std::vector<Complex> charpoly_interp(const Matrix& H) {
  const int n = static_cast<int>(H.rows());
  const int m = n + 1;
  const double r = 2.0 * std::max(1.0, H.norm());
  std::vector<Complex> x(m), y(m);
  for (int k = 0; k < m; ++k) {
    double th = 2.0 * M_PI * k / m + 0.4;
    x[k] = r * Complex(std::cos(th), std::sin(th));
    Matrix A = x[k] * Matrix::Identity(n, n) - H;
    y[k] = det_cofactor(A);
  }
  // Accumulate sum_k y_k prod_{j != k} (lambda - x_j)/(x_k - x_j)
  // as ascending-power coefficients.
  std::vector<Complex> coeff(m, 0.0);
  for (int k = 0; k < m; ++k) {
    std::vector<Complex> basis{1.0};
    Complex denom = 1.0;
    for (int j = 0; j < m; ++j) {
      if (j == k) continue;
      denom *= x[k] - x[j];
      std::vector<Complex> next(basis.size() + 1, 0.0);
      for (size_t t = 0; t < basis.size(); ++t) {
        next[t] += -x[j] * basis[t];
        next[t + 1] += basis[t];
      }
      basis = std::move(next);
    }
    for (size_t t = 0; t < basis.size(); ++t) coeff[t] += y[k] / denom * basis[t];
  }
  // Descending powers, dropping the leading (monic) coefficient.
  std::vector<Complex> p(n + 1, 0.0);  // p[0] unused, p[k] multiplies lambda^{n-k}
  for (int k = 1; k <= n; ++k) p[k] = coeff[n - k];
  return p;
}

inline std::vector<Complex> eigenvalues_schur(const Matrix& H) {
  Eigen::ComplexEigenSolver<Matrix> es(H, false);
  std::vector<Complex> out(es.eigenvalues().data(),
                           es.eigenvalues().data() + H.rows());
  return out;
}

inline Complex discriminant_product(const Matrix& H) {
  std::vector<Complex> ev = eigenvalues_schur(H);
  Complex d = 1.0;
  for (size_t i = 0; i < ev.size(); ++i)
    for (size_t j = i + 1; j < ev.size(); ++j) {
      Complex diff = ev[i] - ev[j];
      d *= diff * diff;
    }
  return d;
}

// min over pairings of max_i |a_i - b_{pi(i)}| (exhaustive, n <= 6).
inline double match_distance(std::vector<Complex> a, std::vector<Complex> b) {
  std::vector<int> idx(a.size());
  for (size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
  double best = std::numeric_limits<double>::infinity();
  std::sort(idx.begin(), idx.end());
  do {
    double worst = 0.0;
    for (size_t i = 0; i < a.size(); ++i)
      worst = std::max(worst, std::abs(a[i] - b[idx[i]]));
    best = std::min(best, worst);
  } while (std::next_permutation(idx.begin(), idx.end()));
  return best;
}

}  // namespace oracles

#endif
