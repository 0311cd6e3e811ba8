#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "epatlas/epfinder.hpp"
#include "epatlas/models.hpp"

using namespace epatlas;

namespace {

ScanConfig window(double lo, double hi, int samples, int axes) {
  ScanConfig cfg;
  for (int a = 0; a < axes; ++a)
    cfg.axes.push_back({a == 0 ? "k_x" : (a == 1 ? "k_y" : "k_z"), lo, hi,
                        samples});
  return cfg;
}

}  // namespace

TEST_CASE("eigenvalue clustering") {
  std::vector<Complex> eigs{0.0, Complex(1e-9, 0.0), 1.0,
                            Complex(1.0, 2e-9), 5.0};
  auto clusters = cluster_eigenvalues(eigs, 1e-6);
  REQUIRE(clusters.size() == 3);
  std::vector<int> counts;
  for (const auto& c : clusters) counts.push_back(c.count);
  std::sort(counts.begin(), counts.end());
  CHECK(counts == std::vector<int>{1, 2, 2});
  for (const auto& c : clusters) CHECK(c.spread < 1e-6);
}

TEST_CASE("jordan partitions from rank sequences") {
  Matrix J3 = Matrix::Zero(3, 3);
  J3(0, 1) = 1.0;
  J3(1, 2) = 1.0;
  JordanInfo full = jordan_structure(J3, 0.0, 3, 1e-8, 0.0);
  CHECK(full.blocks == std::vector<int>{3});
  CHECK(full.largest == 3);

  Matrix mixed = Matrix::Zero(3, 3);  // J2 + J1 at the same eigenvalue
  mixed(0, 1) = 1.0;
  JordanInfo two = jordan_structure(mixed, 0.0, 3, 1e-8, 0.0);
  CHECK(two.blocks == std::vector<int>{2, 1});

  Matrix diag = 0.7 * Matrix::Identity(3, 3);
  JordanInfo none = jordan_structure(diag, 0.7, 3, 1e-8, 0.0);
  CHECK(none.blocks == std::vector<int>{1, 1, 1});
}

TEST_CASE("dissipative chain at the critical coupling") {
  HamiltonianField f = kitaev(1.0, 0.5, 1.5625, 1.0);
  ScanResult res = scan(f, window(-M_PI, M_PI, 81, 1));
  REQUIRE(!res.points.empty());
  const EpPoint& p = res.points.front();
  CHECK(p.order == 2);
  CHECK(p.algebraic == 2);
  CHECK(p.defective);
  CHECK(p.blocks == std::vector<int>{2});
  CHECK(std::abs(p.k[0]) < 1e-8);
  CHECK(p.residual < 1e-8);
}

TEST_CASE("dissipative chain away from the critical coupling") {
  // At gamma_l = gamma_g = 1 the k = 0 degeneracy condition fails and the
  // order-2 pair migrates to the eta = 0 locus cos k = -1/8.
  HamiltonianField f = kitaev(1.0, 0.5, 1.0, 1.0);
  ScanResult res = scan(f, window(-M_PI, M_PI, 81, 1));
  REQUIRE(res.points.size() == 2);
  const double kstar = std::acos(-0.125);
  for (const EpPoint& p : res.points) {
    CHECK(p.order == 2);
    CHECK(std::abs(std::abs(p.k[0]) - kstar) < 1e-6);
  }
}

TEST_CASE("threefold model hosts an order-3 point at the origin") {
  HamiltonianField f = threefold_family(0.3);
  ScanResult res = scan(f, window(-0.1, 0.1, 15, 2));
  bool found = false;
  for (const EpPoint& p : res.points) {
    if (p.order != 3) continue;
    found = true;
    CHECK(std::hypot(p.k[0], p.k[1]) < 1e-3);
    CHECK(p.defective);
    CHECK(p.blocks == std::vector<int>{3});
  }
  CHECK(found);
}

TEST_CASE("fourfold model: order-4 point first, order-2 ring after") {
  HamiltonianField f = fourfold_family(0.15);
  ScanResult res = scan(f, window(-0.3, 0.3, 15, 2));
  REQUIRE(!res.points.empty());
  bool found = false;
  for (const EpPoint& p : res.points) {
    if (p.order != 4) continue;
    found = true;
    CHECK(p.algebraic == 4);
    CHECK(p.blocks == std::vector<int>{2, 2});
    CHECK(std::abs(p.k[0]) < 1e-6);
    CHECK(std::abs(p.k[1]) < 1e-6);
  }
  CHECK(found);
  CHECK(!res.discriminant_structurally_zero);
}

TEST_CASE("globally degenerate spectrum switches to the reduced objective") {
  HamiltonianField f = fourfold_psh(0.2);
  ScanResult res = scan(f, window(-0.6, 0.6, 25, 2));
  CHECK(res.discriminant_structurally_zero);
  REQUIRE(!res.points.empty());
  for (const EpPoint& p : res.points) {
    CHECK(p.band_multiplicity == 2);
    CHECK(p.order == 2);
    CHECK(p.algebraic == 4);
    CHECK(std::abs(std::abs(p.k[0]) - 0.2) < 1e-6);
  }
}
