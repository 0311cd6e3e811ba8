#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "epatlas/charpoly.hpp"
#include "oracles.hpp"

using namespace epatlas;

TEST_CASE("monic coefficients match the interpolation oracle") {
  std::mt19937_64 rng(1);
  for (int n = 2; n <= 5; ++n) {
    for (int trial = 0; trial < 40; ++trial) {
      Matrix H = oracles::random_matrix(n, rng);
      CharPoly cp = char_poly(H);
      auto q = oracles::charpoly_interp(H);
      for (int k = 1; k <= n; ++k) {
        CAPTURE(n);
        CAPTURE(k);
        double unit = std::pow(cp.scale, k);
        CHECK(std::abs(cp.p[k] - q[k]) < 1e-10 * unit);
      }
      CHECK(std::abs(cp.det - oracles::det_cofactor(H)) <
            1e-10 * std::pow(cp.scale, n));
      CHECK(std::abs(cp.det - cp.sigma[n]) < 1e-12 * std::pow(cp.scale, n));
    }
  }
}

TEST_CASE("trace recursion residual") {
  std::mt19937_64 rng(2);
  for (int n = 2; n <= 5; ++n) {
    for (int trial = 0; trial < 20; ++trial) {
      Matrix H = oracles::random_matrix(n, rng);
      CharPoly cp = char_poly(H);
      for (int k = 1; k <= n; ++k) {
        Complex acc = double(k) * cp.p[k] + cp.s[k];
        for (int j = 1; j < k; ++j) acc += cp.p[j] * cp.s[k - j];
        CHECK(std::abs(acc) < 1e-10 * std::pow(cp.scale, k));
      }
    }
  }
}

TEST_CASE("constraint vector is the traceless-shift data") {
  std::mt19937_64 rng(3);
  for (int n = 3; n <= 4; ++n) {
    Matrix H = oracles::random_matrix(n, rng);
    Matrix Ht = H - (H.trace() / double(n)) * Matrix::Identity(n, n);
    CharPoly cp = char_poly(Ht);
    auto v = constraint_vector(H);
    REQUIRE(static_cast<int>(v.size()) == n - 1);
    for (int k = 2; k <= n - 1; ++k)
      CHECK(std::abs(v[k - 2] - cp.s[k]) < 1e-12 * std::pow(cp.scale, k));
    CHECK(std::abs(v[n - 2] - cp.det) < 1e-12 * std::pow(cp.scale, n));
  }
}

TEST_CASE("discriminant matches the eigenvalue-product oracle") {
  std::mt19937_64 rng(4);
  for (int n = 2; n <= 5; ++n) {
    for (int trial = 0; trial < 50; ++trial) {
      Matrix H = oracles::random_matrix(n, rng);
      Complex want = oracles::discriminant_product(H);
      Complex got = discriminant(H);
      CAPTURE(n);
      CHECK(std::abs(got - want) < 1e-8 * std::abs(want) +
                                       1e-10 * std::pow(mat_scale(H), n * (n - 1)));
    }
  }
}

TEST_CASE("closed-form roots match the eigensolver multiset") {
  std::mt19937_64 rng(5);
  for (int n = 2; n <= 4; ++n) {
    for (int trial = 0; trial < 60; ++trial) {
      Matrix H = oracles::random_matrix(n, rng);
      CharPoly cp = char_poly(H);
      Spectrum closed = roots_closed(cp);
      auto want = oracles::eigenvalues_schur(H);
      CAPTURE(n);
      CHECK(oracles::match_distance(closed.eigenvalues, want) <
            1e-8 * cp.scale);
    }
  }
}

TEST_CASE("closed-form roots stay stable near a defective point") {
  for (double eps : {1e-6, 1e-9, 1e-12}) {
    Matrix H = Matrix::Zero(3, 3);
    H(0, 1) = 1.0;
    H(1, 2) = 1.0;
    H(2, 0) = eps;  // roots are the cube roots of eps
    CharPoly cp = char_poly(H);
    Spectrum sp = roots_closed(cp);
    double r = std::cbrt(eps);
    std::vector<Complex> want;
    for (int k = 0; k < 3; ++k)
      want.push_back(r * std::exp(Complex(0.0, 2.0 * M_PI * k / 3.0)));
    CHECK(oracles::match_distance(sp.eigenvalues, want) < 1e-4 * r);
  }
}

TEST_CASE("companion matrix reproduces the spectrum") {
  std::mt19937_64 rng(6);
  for (int n = 2; n <= 5; ++n) {
    Matrix H = oracles::random_matrix(n, rng);
    CharPoly cp = char_poly(H);
    Matrix C = companion(cp);
    REQUIRE(C.rows() == n);
    for (int i = 0; i + 1 < n; ++i) CHECK(C(i, i + 1) == Complex(1.0, 0.0));
    auto dJ = perturbed_jordan(cp);
    REQUIRE(static_cast<int>(dJ.size()) == n - 1);
    for (int j = 1; j <= n - 1; ++j) {
      Complex want = ((n + j) % 2 == 0 ? 1.0 : -1.0) * cp.sigma[n + 1 - j];
      CHECK(std::abs(dJ[j - 1] - want) < 1e-12 * std::pow(cp.scale, n + 1 - j));
      CHECK(C(n - 1, j - 1) == dJ[j - 1]);
    }
    CHECK(std::abs(C(n - 1, n - 1) - cp.sigma[1]) < 1e-14 * cp.scale);
    CHECK(oracles::match_distance(oracles::eigenvalues_schur(C),
                                  oracles::eigenvalues_schur(H)) <
          1e-8 * std::pow(cp.scale, 2));
  }
}

TEST_CASE("deflated spectrum returns exact structural zeros") {
  Matrix N = Matrix::Zero(2, 2);
  N(0, 1) = 1.0;
  Spectrum sp = spectrum_deflated(N);
  for (Complex ev : sp.eigenvalues) CHECK(ev == Complex(0.0, 0.0));

  Matrix S = Matrix::Zero(3, 3);
  S(1, 1) = 1.0;
  S(1, 2) = 2.0;
  S(2, 1) = 0.5;
  S(2, 2) = -1.0;
  Spectrum sq = spectrum_deflated(S);
  int zeros = 0;
  for (Complex ev : sq.eigenvalues)
    if (ev == Complex(0.0, 0.0)) ++zeros;
  CHECK(zeros == 1);
  CHECK(oracles::match_distance(sq.eigenvalues, oracles::eigenvalues_schur(S)) <
        1e-10);
}

TEST_CASE("numeric roots carry small backward errors") {
  std::mt19937_64 rng(8);
  Matrix H = oracles::random_matrix(4, rng);
  Spectrum sp = roots_numeric(H);
  REQUIRE(sp.eigenvalues.size() == 4);
  REQUIRE(sp.residuals.size() == 4);
  for (double r : sp.residuals) CHECK(r < 1e-12);
  CHECK(std::is_sorted(sp.eigenvalues.begin(), sp.eigenvalues.end(),
                       [](Complex a, Complex b) {
                         if (a.real() != b.real()) return a.real() < b.real();
                         return a.imag() < b.imag();
                       }));
}

TEST_CASE("multiset distance") {
  std::vector<Complex> a{1.0, Complex(0.0, 1.0), -2.0};
  std::vector<Complex> b{Complex(0.0, 1.0), -2.0, 1.0};
  CHECK(multiset_distance(a, b) == 0.0);
  b[2] = 1.5;
  CHECK(multiset_distance(a, b) == doctest::Approx(0.5));
}
