#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "epatlas/charpoly.hpp"
#include "epatlas/models.hpp"
#include "oracles.hpp"

using namespace epatlas;

namespace {

std::vector<std::vector<double>> ksamples2(std::mt19937_64& rng, int count) {
  std::uniform_real_distribution<double> u(-M_PI, M_PI);
  std::vector<std::vector<double>> ks;
  for (int i = 0; i < count; ++i) ks.push_back({u(rng), u(rng)});
  return ks;
}

void check_model_symmetries(const std::string& name, double tol = 1e-13) {
  HamiltonianField f = make_model(name, {});
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-M_PI, M_PI);
  std::vector<std::vector<double>> ks;
  for (int i = 0; i < 6; ++i) {
    std::vector<double> k;
    for (size_t a = 0; a < f.momenta.size(); ++a) k.push_back(u(rng));
    ks.push_back(k);
  }
  auto ops = model_symmetries(name);
  CHECK(!ops.empty());
  for (const auto& op : ops) {
    CAPTURE(name);
    CAPTURE(sym_kind_name(op.kind));
    CHECK(check_symmetry(f, op, ks) < tol);
  }
}

}  // namespace

TEST_CASE("dissipative chain: closed trace data and symmetries") {
  const double J = 0.8, mu = 0.4, gl = 1.2, gg = 0.9;
  HamiltonianField f = kitaev(J, mu, gl, gg);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-M_PI, M_PI);
  for (int t = 0; t < 100; ++t) {
    double k = u(rng);
    Matrix H = f({k});
    CHECK(std::abs(H.trace()) < 1e-14);
    ConstraintSet cs = constraints(H);
    // det = 4 gl gg - 4J^2 - 4 J mu cos k - mu^2; for a traceless two-band
    // matrix eta = -det and nu = 0 here (the quoted eta flips that sign,
    // which only matters off the eta = 0 locus).
    double det = 4.0 * gl * gg - 4.0 * J * J - 4.0 * J * mu * std::cos(k)
                 - mu * mu;
    CHECK(std::abs(char_poly(H).det - det) < 1e-12);
    CHECK(std::abs(cs.eta + det) < 1e-12);
    CHECK(std::abs(cs.nu) < 1e-12);
  }
  check_model_symmetries("kitaev");
}

TEST_CASE("dissipative chain: critical coupling degeneracy") {
  // 2 sqrt(gl gg) = 2J + mu at k = 0.
  HamiltonianField f = kitaev(1.0, 0.5, 1.5625, 1.0);
  Matrix H = f({0.0});
  auto ev = oracles::eigenvalues_schur(H);
  CHECK(std::abs(ev[0] - ev[1]) < 1e-7);
  ConstraintSet cs = constraints(H);
  CHECK(std::abs(cs.eta) < 1e-12);
}

TEST_CASE("threefold model: antisymmetric structure") {
  HamiltonianField f = threefold(0.2, -0.4, Complex(0.1, 0.3));
  std::mt19937_64 rng(2);
  for (const auto& k : ksamples2(rng, 100)) {
    Matrix H = f(k);
    CHECK((H + H.transpose()).norm() < 1e-14);
    CharPoly cp = char_poly(H);
    CHECK(std::abs(cp.det) < 1e-14);  // odd-dimensional antisymmetric
    CHECK(std::abs(cp.s[1]) < 1e-14);
    // tr[H^2] = -2 (hx^2 + hy^2 + hz^2)
    Complex hx = 0.2 + I * std::sin(k[0]);
    Complex hy = -0.4 + I * std::sin(k[1]);
    Complex hz = Complex(0.1, 0.3)
                 + I * (-2.0 + std::cos(k[0]) + std::cos(k[1]));
    CHECK(std::abs(cp.s[2] + 2.0 * (hx * hx + hy * hy + hz * hz)) < 1e-12);
  }
  check_model_symmetries("threefold");
}

TEST_CASE("threefold family: all constraints close at the origin") {
  HamiltonianField f = threefold_family(0.3);
  auto v = constraint_vector(f({0.0, 0.0}));
  for (Complex c : v) CHECK(std::abs(c) < 1e-14);
}

TEST_CASE("pt-symmetric threefold: quadratic factorization") {
  const double alpha = 0.35;
  HamiltonianField f = threefold_pt(alpha);
  std::mt19937_64 rng(3);
  for (const auto& k : ksamples2(rng, 100)) {
    Matrix H = f(k);
    Complex omega = threefold_pt_omega(alpha, k[0], k[1]);
    std::vector<Complex> want{0.0, std::sqrt(omega), -std::sqrt(omega)};
    CHECK(oracles::match_distance(oracles::eigenvalues_schur(H), want) <
          1e-10);
    CharPoly cp = char_poly(H);
    CHECK(std::abs(cp.p[1]) < 1e-14);
    CHECK(std::abs(cp.p[3]) < 1e-14);
    CHECK(std::abs(cp.p[2] + omega) < 1e-12);
  }
  check_model_symmetries("threefold_pt");
}

TEST_CASE("momentum-free sublattice block") {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> g;
  for (int t = 0; t < 50; ++t) {
    Complex b(g(rng), g(rng)), c(g(rng), g(rng)), d(g(rng), g(rng));
    Matrix H = sls3_block(b, c, d)({});
    Complex root = std::sqrt(b * b + c * d);
    std::vector<Complex> want{0.0, root, -root};
    CHECK(oracles::match_distance(oracles::eigenvalues_schur(H), want) <
          1e-12);
  }
}

TEST_CASE("fourfold model: closed trace and determinant data") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int t = 0; t < 100; ++t) {
    Complex ap(u(rng), 0.0), am(u(rng), 0.0), az(0.0, u(rng)), ab(u(rng), 0.0);
    double kx = u(rng), kz = u(rng);
    {
      // tr[H^2] is theta-independent.
      HamiltonianField f = fourfold(ap, am, az, ab, 3.0 * u(rng), 3.0 * u(rng));
      CharPoly cp = char_poly(f({kx, kz}));
      Complex s2 = -2.0 * (2.0 * ab * ab + am * am + ap * ap + 2.0 * az * az)
                   + 8.0 * kx * kx + 4.0 * kz * kz;
      CHECK(std::abs(cp.s[1]) < 1e-13);
      CHECK(std::abs(cp.s[2] - s2) < 1e-12);
    }
    {
      HamiltonianField f = fourfold(ap, am, az, ab, M_PI / 2.0, M_PI / 2.0);
      CharPoly cp = char_poly(f({kx, kz}));
      Complex inner = ab * ab + am * ap + az * az + kz * kz;
      Complex det = kx * kx * (-(am - ap) * (am - ap) + 4.0 * az * az
                               + 4.0 * kz * kz)
                    + inner * inner;
      CHECK(std::abs(cp.det - det) < 1e-12);
    }
  }
}

TEST_CASE("fourfold family: resolvent data and nilpotent origin") {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int t = 0; t < 100; ++t) {
    double alpha = u(rng), kx = u(rng), kz = u(rng);
    HamiltonianField f = fourfold_family(alpha);
    Matrix H = f({kx, kz});
    ConstraintSet cs = constraints(H);
    CharPoly cp = char_poly(H);
    CHECK(std::abs(cs.kappa - Complex(-64.0 * alpha * kx * kx)) < 1e-12);
    CHECK(std::abs(cp.s[3] - 24.0 * I * (I * alpha) * kx * kx) < 1e-12);
  }
  Matrix H0 = fourfold_family(0.15)({0.0, 0.0});
  CHECK((H0 * H0).norm() < 1e-14);
  CHECK(H0.norm() > 0.1);
}

TEST_CASE("pseudo-Hermitian fourfold: squared quadratic spectrum") {
  const double alpha = 0.2;
  HamiltonianField f = fourfold_psh(alpha);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int t = 0; t < 100; ++t) {
    double kx = u(rng), kz = u(rng);
    Matrix H = f({kx, kz});
    ConstraintSet cs = constraints(H);
    double uu = kx * kx - alpha * alpha;
    CHECK(std::abs(cs.eta - 16.0 * uu * uu) < 1e-12);
    CHECK(std::abs(cs.nu - 128.0 * uu * uu * uu) < 1e-12);
    CHECK(std::abs(cs.kappa) < 1e-12);
    Complex root = std::sqrt(Complex(uu, 0.0));
    std::vector<Complex> want{root, root, -root, -root};
    CHECK(oracles::match_distance(oracles::eigenvalues_schur(H), want) <
          1e-8);
  }
  check_model_symmetries("fourfold_psh");
}

TEST_CASE("block embeddings") {
  Matrix H1 = block_model(BlockKind::three_H1, {1.0, 2.0, 3.0, -0.5})({});
  CHECK(std::abs(H1.trace()) < 1e-15);
  Matrix sub(2, 2);
  sub << 1.0, 2.0, 3.0, -0.5;
  auto want = oracles::eigenvalues_schur(sub);
  want.push_back(-(Complex(1.0) + Complex(-0.5)));
  CHECK(oracles::match_distance(oracles::eigenvalues_schur(H1), want) < 1e-12);

  CHECK_THROWS(block_model(BlockKind::three_H1, {1.0, 2.0}));
  CHECK_THROWS(block_model(BlockKind::four_H1, {1.0}));
  CHECK(block_model(BlockKind::four_H1, {1, 2, 3, 4, 5, 6})({}).rows() == 4);
  CHECK(block_model(BlockKind::four_H2, {1, 2, 3, 4, 5, 6})({})(0, 0)
        == Complex(1.0));
  Matrix H3 = block_model(BlockKind::four_H3, {1, 2, 3, 4, 5, 6, 7, 8})({});
  CHECK(H3(2, 3) == Complex(6.0));
  CHECK(H3(0, 2) == Complex(0.0));
}

TEST_CASE("model registry") {
  auto names = model_names();
  CHECK(names.size() == 6);
  for (const std::string& name : names) {
    const ModelSpec& spec = model_spec(name);
    HamiltonianField f = make_model(name, {});
    CHECK(f.dim == spec.dim);
    CHECK(f.momenta == spec.momenta);
  }
  CHECK_THROWS(model_spec("bogus"));
  CHECK_THROWS(make_model("kitaev", {{"nonsense", 1.0}}));
  // Parameter overrides rebuild the field.
  HamiltonianField f = make_model("kitaev", {{"gamma_l", 1.0}});
  Matrix H = f({0.0});
  CHECK(std::abs(H(0, 0) + 2.0 * I) < 1e-14);
}
