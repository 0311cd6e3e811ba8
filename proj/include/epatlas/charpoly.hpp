#ifndef EPATLAS_CHARPOLY_HPP
#define EPATLAS_CHARPOLY_HPP

#include <vector>

#include "epatlas/types.hpp"

namespace epatlas {

// Characteristic polynomial det(lambda 1 - H) = lambda^n + p[1] lambda^(n-1)
// + ... + p[n], with p[k] = (-1)^k sigma[k] (elementary symmetric functions)
// and s[k] = tr[H^k]. Arrays are 1-indexed: element 0 is unused.
struct CharPoly {
  int n = 0;
  std::vector<Complex> s;      // power traces, s[1..n]
  std::vector<Complex> sigma;  // elementary symmetric functions, sigma[1..n]
  std::vector<Complex> p;      // monic coefficients, p[1..n]
  Complex det{0.0, 0.0};       // = sigma[n], computed by LU
  double scale = 1.0;          // Frobenius norm of H (floored at 1)
};

// Trace recursion k p_k + s_k + sum_{j<k} p_j s_{k-j} = 0 for k < n;
// sigma_n is taken from an LU determinant.
CharPoly char_poly(const Matrix& H);

// [tr Ht^2, ..., tr Ht^(n-1), det Ht] for the traceless shift
// Ht = H - (tr H / n) 1. The 2(n-1) real constraints of an order-n
// degeneracy are the real and imaginary parts of these entries.
std::vector<Complex> constraint_vector(const Matrix& H);

struct ConstraintSet {
  int n = 0;
  Complex eta{0.0, 0.0};
  Complex nu{0.0, 0.0};
  Complex kappa{0.0, 0.0};  // n = 4 only
  std::vector<Complex> generic;  // constraint_vector(H)
};

// Shift-invariant discriminant building blocks. n = 2: eta = dR.dR - dI.dI,
// nu = dR.dI (both real). n = 3 and n = 4: the complex cubic/quartic
// resolvent combinations. n >= 5: only `generic` is populated.
ConstraintSet constraints(const Matrix& H);

// Discriminant prod_{i<j} (lambda_i - lambda_j)^2 via the closed resolvent
// forms for n <= 4 and the eigenvalue product otherwise.
Complex discriminant(const Matrix& H);

// Perturbation entries dJ[j], j = 1..n-1, of the companion form:
// dJ_j = (-1)^(n+j) sigma_{n+1-j}.
std::vector<Complex> perturbed_jordan(const CharPoly& cp);

// Frobenius companion matrix: ones on the superdiagonal, bottom row
// (dJ_1, ..., dJ_{n-1}, sigma_1). Same spectrum as the source matrix.
Matrix companion(const CharPoly& cp);

struct Spectrum {
  std::vector<Complex> eigenvalues;  // sorted by (Re, Im)
  std::vector<double> residuals;     // backward errors, same order
  bool closed_form = false;          // false when the numeric route was used
};

// Closed-form radical roots for n <= 4 (principal branches). Falls back to
// the numeric companion eigensolver when the discriminant radicand or a
// radical denominator is too small for the formulas to be stable
// (|radicand| < 1e-30 * scale^6).
Spectrum roots_closed(const CharPoly& cp);

// Eigen's complex Schur-based eigensolver; residuals are ||Hv - lambda v||
// per unit eigenvector, relative to the matrix scale.
Spectrum roots_numeric(const Matrix& H);

// Roots of the trace-recursion characteristic polynomial with exact
// deflation of trailing coefficients below 1e-13 * scale^k. Structural zero
// eigenvalues (det == 0 fields, nilpotent blocks) come out exactly 0 instead
// of as eigensolver noise. Used by the dispersion fits.
Spectrum spectrum_deflated(const Matrix& H);

void sort_spectrum(Spectrum& s);

// Minimum-cost matching distance between two eigenvalue multisets:
// min over pairings of max_i |a_i - b_{pi(i)}|.
double multiset_distance(std::vector<Complex> a, std::vector<Complex> b);

}  // namespace epatlas

#endif
