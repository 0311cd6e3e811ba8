#include "epatlas/models.hpp"

#include <cmath>
#include <stdexcept>

namespace epatlas {

namespace {

const Complex kI{0.0, 1.0};

HamiltonianField matrix_field(int dim, std::vector<std::string> momenta,
                              std::function<Matrix(const std::vector<double>&)>
                                  eval) {
  HamiltonianField f;
  f.dim = dim;
  f.momenta = std::move(momenta);
  f.eval = std::move(eval);
  return f;
}

Complex param(const std::map<std::string, Complex>& p, const std::string& k) {
  return p.at(k);
}

}  // namespace

HamiltonianField kitaev(Complex J, Complex mu, Complex gl, Complex gg) {
  return matrix_field(2, {"k_x"}, [=](const std::vector<double>& k) {
    const double kx = k.at(0);
    const Complex g = 2.0 * std::sqrt(gl * gg);
    Matrix H(2, 2);
    H(0, 0) = -kI * g;
    H(0, 1) = -kI * (2.0 * J * std::exp(kI * kx) + mu);
    H(1, 0) = kI * (2.0 * J * std::exp(-kI * kx) + mu);
    H(1, 1) = kI * g;
    return H;
  });
}

HamiltonianField threefold(Complex ax, Complex ay, Complex az) {
  return matrix_field(3, {"k_x", "k_y"}, [=](const std::vector<double>& k) {
    const double kx = k.at(0);
    const double ky = k.at(1);
    const Complex hx = ax + kI * std::sin(kx);
    const Complex hy = ay + kI * std::sin(ky);
    const Complex hz = az + kI * (-2.0 + std::cos(kx) + std::cos(ky));
    Matrix H(3, 3);
    H.setZero();
    H(0, 1) = hx;
    H(0, 2) = -hy;
    H(1, 0) = -hx;
    H(1, 2) = hz;
    H(2, 0) = hy;
    H(2, 1) = -hz;
    return H;
  });
}

HamiltonianField threefold_family(double alpha) {
  return threefold(alpha, alpha, kI * std::sqrt(2.0) * alpha);
}

HamiltonianField threefold_pt(double alpha) {
  return matrix_field(3, {"k_x", "k_y"}, [=](const std::vector<double>& k) {
    const double kx = k.at(0);
    const double ky = k.at(1);
    const double ha = std::sqrt(2.0) * alpha + std::cos(kx) + std::cos(ky)
                      - 2.0;
    Matrix H(3, 3);
    H.setZero();
    H(0, 1) = kI * std::sin(kx);
    H(0, 2) = -alpha;
    H(1, 0) = -kI * std::sin(kx);
    H(1, 2) = kI * ha;
    H(2, 0) = alpha;
    H(2, 1) = -kI * ha;
    return H;
  });
}

Complex threefold_pt_omega(double alpha, double kx, double ky) {
  const double ha = std::sqrt(2.0) * alpha + std::cos(kx) + std::cos(ky) - 2.0;
  const double s = std::sin(kx);
  return Complex{ha * ha + s * s - alpha * alpha, 0.0};
}

HamiltonianField sls3_block(Complex b, Complex c, Complex d) {
  return matrix_field(3, {}, [=](const std::vector<double>&) {
    Matrix H(3, 3);
    H.setZero();
    H(1, 1) = b;
    H(1, 2) = c;
    H(2, 1) = d;
    H(2, 2) = -b;
    return H;
  });
}

HamiltonianField fourfold(Complex ap, Complex am, Complex az, Complex ab,
                          double th1, double th2) {
  return matrix_field(4, {"k_x", "k_z"}, [=](const std::vector<double>& k) {
    const double kx = k.at(0);
    const double kz = k.at(1);
    const Complex e1 = std::exp(kI * th1);
    const Complex e1c = std::exp(-kI * th1);
    const Complex e2 = std::exp(kI * th2);
    const Complex e2c = std::exp(-kI * th2);
    const Complex hzz1 = az + e1 * kz;
    const Complex hzz1t = -az + e1c * kz;
    const Complex hzz2 = az - e1 * kz;
    const Complex hzz2t = -az - e1c * kz;
    const Complex hbx = ab + e2c * kx;
    const Complex hbxt = -ab + e2 * kx;
    const Complex hbx2 = ab + e2 * kx;
    const Complex hbx2t = -ab + e2c * kx;
    Matrix H(4, 4);
    H.setZero();
    H(0, 1) = ap + kx;
    H(0, 2) = hzz2;
    H(0, 3) = hbx;
    H(1, 0) = kx - ap;
    H(1, 2) = hbx2t;
    H(1, 3) = hzz1;
    H(2, 0) = hzz2t;
    H(2, 1) = hbx2;
    H(2, 3) = kx - am;
    H(3, 0) = hbxt;
    H(3, 1) = hzz1t;
    H(3, 2) = am + kx;
    return H;
  });
}

HamiltonianField fourfold_family(double alpha) {
  return fourfold(alpha, alpha, kI * alpha, 0.0, M_PI / 2.0, M_PI / 2.0);
}

HamiltonianField fourfold_psh(double alpha, double th1, double th2) {
  return matrix_field(4, {"k_x", "k_z"}, [=](const std::vector<double>& k) {
    const double kx = k.at(0);
    const double kz = k.at(1);
    // The alpha_z entry of the parent model is odd under the psH projection
    // with Gamma_1 (which demands real h_zz entries), so it drops out here;
    // keeping it would break the squared-quadratic factorization.
    const Complex az = 0.0;
    const Complex h1 = alpha + kx;
    const Complex hmpx = -alpha + kx;
    const Complex hzz = az - kz * std::cos(th1);
    const Complex hzzt = az + kz * std::cos(th1);
    const Complex hx2 = kx * std::cos(th2);
    Matrix H(4, 4);
    H.setZero();
    H(0, 1) = h1;
    H(0, 2) = hzz;
    H(0, 3) = hx2;
    H(1, 0) = hmpx;
    H(1, 2) = hx2;
    H(1, 3) = hzzt;
    H(2, 0) = -hzzt;
    H(2, 1) = hx2;
    H(2, 3) = hmpx;
    H(3, 0) = hx2;
    H(3, 1) = -hzz;
    H(3, 2) = h1;
    return H;
  });
}

HamiltonianField block_model(BlockKind kind,
                             const std::vector<Complex>& entries) {
  const auto need = [&](std::size_t count) {
    if (entries.size() != count) {
      throw std::invalid_argument("block_model: wrong entry count");
    }
  };
  switch (kind) {
    case BlockKind::three_H1: {
      need(4);
      Matrix H(3, 3);
      H.setZero();
      H(0, 0) = -(entries[0] + entries[3]);
      H(1, 1) = entries[0];
      H(1, 2) = entries[1];
      H(2, 1) = entries[2];
      H(2, 2) = entries[3];
      return matrix_field(3, {}, [H](const std::vector<double>&) { return H; });
    }
    case BlockKind::four_H1: {
      need(6);
      Matrix H(4, 4);
      H.setZero();
      H(0, 0) = entries[0];
      H(0, 1) = entries[1];
      H(1, 0) = entries[2];
      H(1, 1) = entries[3];
      H(2, 2) = entries[4];
      H(3, 3) = entries[5];
      return matrix_field(4, {}, [H](const std::vector<double>&) { return H; });
    }
    case BlockKind::four_H2: {
      need(6);
      Matrix H(4, 4);
      H.setZero();
      H(0, 0) = entries[0];
      H(1, 1) = entries[1];
      H(1, 2) = entries[2];
      H(2, 1) = entries[3];
      H(2, 2) = entries[4];
      H(3, 3) = entries[5];
      return matrix_field(4, {}, [H](const std::vector<double>&) { return H; });
    }
    case BlockKind::four_H3: {
      need(8);
      Matrix H(4, 4);
      H.setZero();
      H(0, 0) = entries[0];
      H(0, 1) = entries[1];
      H(1, 0) = entries[2];
      H(1, 1) = entries[3];
      H(2, 2) = entries[4];
      H(2, 3) = entries[5];
      H(3, 2) = entries[6];
      H(3, 3) = entries[7];
      return matrix_field(4, {}, [H](const std::vector<double>&) { return H; });
    }
  }
  throw std::invalid_argument("block_model: unknown kind");
}

namespace {

const std::vector<ModelSpec>& registry() {
  static const std::vector<ModelSpec> specs = [] {
    std::vector<ModelSpec> out;
    out.push_back({"kitaev",
                   2,
                   {"k_x"},
                   {{"J", 1.0},
                    {"mu", 0.5},
                    {"gamma_l", 1.5625},
                    {"gamma_g", 1.0}}});
    out.push_back({"threefold",
                   3,
                   {"k_x", "k_y"},
                   {{"alpha_x", 0.3},
                    {"alpha_y", 0.3},
                    {"alpha_z", kI * std::sqrt(2.0) * 0.3}}});
    out.push_back({"threefold_pt", 3, {"k_x", "k_y"}, {{"alpha", 0.3}}});
    out.push_back({"sls3_block",
                   3,
                   {},
                   {{"b", 1.0}, {"c", 1.0}, {"d", -1.0}}});
    out.push_back({"fourfold",
                   4,
                   {"k_x", "k_z"},
                   {{"alpha_p", 0.15},
                    {"alpha_m", 0.15},
                    {"alpha_z", kI * 0.15},
                    {"alpha_b", 0.0},
                    {"theta_1", M_PI / 2.0},
                    {"theta_2", M_PI / 2.0}}});
    out.push_back({"fourfold_psh",
                   4,
                   {"k_x", "k_z"},
                   {{"alpha", 0.2},
                    {"theta_1", M_PI / 2.0},
                    {"theta_2", M_PI / 2.0}}});
    return out;
  }();
  return specs;
}

}  // namespace

std::vector<std::string> model_names() {
  std::vector<std::string> out;
  for (const auto& spec : registry()) out.push_back(spec.name);
  return out;
}

const ModelSpec& model_spec(const std::string& name) {
  for (const auto& spec : registry()) {
    if (spec.name == name) return spec;
  }
  throw std::invalid_argument("unknown model: " + name);
}

HamiltonianField make_model(const std::string& name,
                            const std::map<std::string, Complex>& params) {
  const ModelSpec& spec = model_spec(name);
  std::map<std::string, Complex> p = spec.defaults;
  for (const auto& [key, value] : params) {
    if (p.find(key) == p.end()) {
      throw std::invalid_argument("model " + name + ": unknown parameter "
                                  + key);
    }
    p[key] = value;
  }
  if (name == "kitaev") {
    return kitaev(param(p, "J"), param(p, "mu"), param(p, "gamma_l"),
                  param(p, "gamma_g"));
  }
  if (name == "threefold") {
    return threefold(param(p, "alpha_x"), param(p, "alpha_y"),
                     param(p, "alpha_z"));
  }
  if (name == "threefold_pt") {
    return threefold_pt(param(p, "alpha").real());
  }
  if (name == "sls3_block") {
    return sls3_block(param(p, "b"), param(p, "c"), param(p, "d"));
  }
  if (name == "fourfold") {
    return fourfold(param(p, "alpha_p"), param(p, "alpha_m"),
                    param(p, "alpha_z"), param(p, "alpha_b"),
                    param(p, "theta_1").real(), param(p, "theta_2").real());
  }
  if (name == "fourfold_psh") {
    return fourfold_psh(param(p, "alpha").real(), param(p, "theta_1").real(),
                        param(p, "theta_2").real());
  }
  throw std::invalid_argument("unknown model: " + name);
}

std::vector<SymmetryOperator> model_symmetries(const std::string& name) {
  std::vector<SymmetryOperator> out;
  if (name == "kitaev") {
    Matrix sz(2, 2);
    sz << 1.0, 0.0, 0.0, -1.0;
    out.push_back({SymKind::TRSdag, sz, +1});
    out.push_back({SymKind::PHSdag, Matrix::Identity(2, 2), +1});
    out.push_back({SymKind::CS, sz, +1});
  } else if (name == "threefold" || name == "threefold_pt") {
    out.push_back({SymKind::psCS, -Matrix::Identity(3, 3), +1});
    if (name == "threefold_pt") {
      Matrix u(3, 3);
      u.setZero();
      u(0, 0) = 1.0;
      u(1, 1) = -1.0;
      u(2, 2) = 1.0;
      out.push_back({SymKind::PT, u, +1});
    }
  } else if (name == "fourfold_psh") {
    out.push_back({SymKind::psH, basis_matrices(BasisFamily::Gamma)[0], +1});
  }
  return out;
}

}  // namespace epatlas
