#include "epatlas/dispersion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "epatlas/epfinder.hpp"

namespace epatlas {

namespace {

constexpr double kVanishTol = 1e-12;
constexpr double kRateGap = 0.25;
constexpr double kFlatTol = 1e-8;

Matrix traceless(const Matrix& H) {
  const int n = static_cast<int>(H.rows());
  return H - (H.trace() / static_cast<double>(n))
                 * Matrix::Identity(n, n);
}

struct Quantity {
  std::string name;
  int degree = 1;
  std::vector<double> values;  // |q| per omega sample
};

bool vanishes(const Quantity& q, const std::vector<double>& scales) {
  for (std::size_t t = 0; t < q.values.size(); ++t) {
    if (q.values[t] > kVanishTol * std::pow(scales[t], q.degree)) {
      return false;
    }
  }
  return true;
}

struct LineFit {
  double slope = 0.0;
  double r2 = 0.0;
  int points = 0;
};

LineFit fit_loglog(const std::vector<double>& omegas,
                   const std::vector<double>& values) {
  std::vector<double> xs;
  std::vector<double> ys;
  for (std::size_t t = 0; t < omegas.size(); ++t) {
    if (values[t] > 1e-300) {
      xs.push_back(std::log(omegas[t]));
      ys.push_back(std::log(values[t]));
    }
  }
  LineFit out;
  out.points = static_cast<int>(xs.size());
  if (out.points < 3) {
    out.slope = std::numeric_limits<double>::infinity();
    out.r2 = 1.0;
    return out;
  }
  const double n = static_cast<double>(xs.size());
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  out.slope = sxy / sxx;
  const double ssres = syy - sxy * sxy / sxx;
  out.r2 = syy < 1e-20 ? 1.0 : 1.0 - ssres / syy;
  return out;
}

std::string describe_rate(const std::string& fast, double fast_slope,
                          const std::string& slow, double slow_slope) {
  std::ostringstream os;
  os << fast << " decays with exponent " << fast_slope << " vs " << slow
     << " exponent " << slow_slope;
  return os.str();
}

std::vector<Complex> nth_roots(Complex w, int m) {
  std::vector<Complex> out(m, Complex{0.0, 0.0});
  if (std::abs(w) == 0.0) return out;
  const Complex r = std::pow(w, 1.0 / static_cast<double>(m));
  for (int j = 0; j < m; ++j) {
    const double phi = 2.0 * M_PI * j / m;
    out[j] = r * Complex{std::cos(phi), std::sin(phi)};
  }
  return out;
}

std::vector<double> point_on_ray(const std::vector<double>& k0,
                                 const std::vector<double>& dir,
                                 double omega) {
  std::vector<double> k = k0;
  for (std::size_t a = 0; a < k.size() && a < dir.size(); ++a) {
    k[a] += omega * dir[a];
  }
  return k;
}

}  // namespace

std::string ep_label_name(EpLabel label) {
  switch (label) {
    case EpLabel::EP2: return "EP2";
    case EpLabel::EP3_0: return "EP3-0";
    case EpLabel::EP3_I: return "EP3-I";
    case EpLabel::EP3_II: return "EP3-II";
    case EpLabel::EP3_III: return "EP3-III";
    case EpLabel::EP4_0: return "EP4-0";
    case EpLabel::EP4_I: return "EP4-I";
    case EpLabel::EP4_II: return "EP4-II";
    case EpLabel::EP4_III: return "EP4-III";
    case EpLabel::EP4_IV: return "EP4-IV";
  }
  return "EP?";
}

std::vector<double> default_omegas() {
  std::vector<double> out;
  const int count = 25;
  const double lo = std::log(1e-8);
  const double hi = std::log(1e-2);
  for (int i = 0; i < count; ++i) {
    out.push_back(std::exp(lo + (hi - lo) * i / (count - 1)));
  }
  return out;
}

EpClass classify(const HamiltonianField& f, const std::vector<double>& k0,
                 const std::vector<double>& dir,
                 const std::vector<double>& omegas) {
  if (omegas.empty()) throw std::invalid_argument("classify: no samples");
  const Matrix H0 = f(k0);
  const int n = static_cast<int>(H0.rows());
  const Spectrum sp0 = roots_numeric(H0);
  const double scale0 = std::max(1.0, H0.norm());
  const auto clusters = cluster_eigenvalues(sp0.eigenvalues, 1e-4 * scale0);
  int order = 0;
  for (const auto& c : clusters) order = std::max(order, c.count);
  if (order < 2) {
    throw std::invalid_argument("classify: no degeneracy at the base point");
  }
  EpClass out;
  if (order == 2) {
    out.order = 2;
    out.label = EpLabel::EP2;
    out.evidence.push_back("twofold degeneracy; no subtypes below order 3");
    return out;
  }
  if (order != n || (n != 3 && n != 4)) {
    throw std::invalid_argument(
        "classify: subtypes are defined for full-order 3- and 4-band EPs");
  }

  std::vector<Quantity> qs;
  if (n == 3) {
    qs = {{"tr[H^2]", 2, {}}, {"det", 3, {}},  {"Im(eta)", 2, {}},
          {"Im(nu)", 3, {}},  {"Re(eta)", 2, {}}, {"Re(nu)", 3, {}}};
  } else {
    qs = {{"tr[H^2]", 2, {}}, {"tr[H^3]", 3, {}}, {"det", 4, {}},
          {"eta", 4, {}},     {"nu", 6, {}},      {"kappa", 3, {}}};
  }
  std::vector<double> scales;
  for (double omega : omegas) {
    const Matrix Ht = traceless(f(point_on_ray(k0, dir, omega)));
    const CharPoly cp = char_poly(Ht);
    const ConstraintSet cs = constraints(Ht);
    scales.push_back(cp.scale);
    if (n == 3) {
      qs[0].values.push_back(std::abs(cp.s[2]));
      qs[1].values.push_back(std::abs(cp.det));
      qs[2].values.push_back(std::abs(cs.eta.imag()));
      qs[3].values.push_back(std::abs(cs.nu.imag()));
      qs[4].values.push_back(std::abs(cs.eta.real()));
      qs[5].values.push_back(std::abs(cs.nu.real()));
    } else {
      qs[0].values.push_back(std::abs(cp.s[2]));
      qs[1].values.push_back(std::abs(cp.s[3]));
      qs[2].values.push_back(std::abs(cp.det));
      qs[3].values.push_back(std::abs(cs.eta));
      qs[4].values.push_back(std::abs(cs.nu));
      qs[5].values.push_back(std::abs(cs.kappa));
    }
  }
  std::vector<bool> van(qs.size());
  for (std::size_t i = 0; i < qs.size(); ++i) {
    van[i] = vanishes(qs[i], scales);
    if (van[i]) out.evidence.push_back(qs[i].name + " vanishes identically");
  }

  out.order = n;
  if (n == 3) {
    const bool vs2 = van[0];
    const bool vdet = van[1];
    if (vdet) {
      out.label = EpLabel::EP3_I;
    } else if (vs2) {
      out.label = EpLabel::EP3_II;
    } else if (van[2] && van[3]) {
      const LineFit fe = fit_loglog(omegas, qs[4].values);
      const LineFit fn = fit_loglog(omegas, qs[5].values);
      if (fe.slope > fn.slope + kRateGap) {
        out.label = EpLabel::EP3_III;
        out.evidence.push_back(
            describe_rate("Re(eta)", fe.slope, "Re(nu)", fn.slope));
      } else {
        out.label = EpLabel::EP3_0;
      }
    } else {
      out.label = EpLabel::EP3_0;
    }
  } else {
    const bool vs2 = van[0];
    const bool vs3 = van[1];
    const bool vdet = van[2];
    if (vs2 && vs3) {
      out.label = EpLabel::EP4_I;
    } else if (vdet && vs2) {
      out.label = EpLabel::EP4_II;
    } else if (vdet && vs3) {
      out.label = EpLabel::EP4_III;
    } else if (!van[4]) {
      const LineFit fe = fit_loglog(omegas, qs[3].values);
      const LineFit fn = fit_loglog(omegas, qs[4].values);
      const LineFit fk = fit_loglog(omegas, qs[5].values);
      const bool eta_fast = van[3] || fe.slope > fn.slope + kRateGap;
      const bool kappa_fast = van[5] || fk.slope > fn.slope + kRateGap;
      if (eta_fast && kappa_fast) {
        out.label = EpLabel::EP4_IV;
        if (!van[3]) {
          out.evidence.push_back(
              describe_rate("eta", fe.slope, "nu", fn.slope));
        }
        if (!van[5]) {
          out.evidence.push_back(
              describe_rate("kappa", fk.slope, "nu", fn.slope));
        }
      } else {
        out.label = EpLabel::EP4_0;
      }
    } else {
      out.label = EpLabel::EP4_0;
    }
  }
  return out;
}

ScalingFit scaling_exponents(const std::function<Matrix(double)>& path,
                             Complex lambda0,
                             const std::vector<double>& omegas_in) {
  if (omegas_in.empty()) {
    throw std::invalid_argument("scaling_exponents: no samples");
  }
  std::vector<double> omegas = omegas_in;
  std::sort(omegas.begin(), omegas.end());

  std::vector<std::vector<Complex>> tracked;  // tracked[band][sample]
  std::vector<Complex> prev;
  for (std::size_t t = 0; t < omegas.size(); ++t) {
    Spectrum sp = spectrum_deflated(path(omegas[t]));
    std::vector<Complex> cur = sp.eigenvalues;
    const int n = static_cast<int>(cur.size());
    if (t == 0) {
      tracked.assign(n, {});
      prev = cur;
      for (int i = 0; i < n; ++i) tracked[i].push_back(cur[i]);
      continue;
    }
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<int> best = perm;
    double best_cost = std::numeric_limits<double>::infinity();
    do {
      double cost = 0.0;
      for (int i = 0; i < n; ++i) cost += std::abs(cur[perm[i]] - prev[i]);
      if (cost < best_cost) {
        best_cost = cost;
        best = perm;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    std::vector<Complex> matched(n);
    for (int i = 0; i < n; ++i) matched[i] = cur[best[i]];
    prev = matched;
    for (int i = 0; i < n; ++i) tracked[i].push_back(matched[i]);
  }

  ScalingFit out;
  out.omega_min = omegas.front();
  out.omega_max = omegas.back();
  out.lambda0 = lambda0;
  for (const auto& band : tracked) {
    BandFit bf;
    std::vector<double> d(band.size());
    for (std::size_t t = 0; t < band.size(); ++t) {
      d[t] = std::abs(band[t] - lambda0);
      bf.max_split = std::max(bf.max_split, d[t]);
    }
    if (bf.max_split < kFlatTol) {
      bf.flat = true;
      bf.exponent = 0.0;
      bf.r2 = 1.0;
      bf.reliable = true;
    } else {
      const LineFit fit = fit_loglog(omegas, d);
      bf.exponent = fit.slope;
      bf.r2 = fit.r2;
      bf.reliable = fit.r2 >= 0.98 && fit.points >= 5;
    }
    out.bands.push_back(bf);
  }
  return out;
}

ScalingFit scaling_exponents(const HamiltonianField& f,
                             const std::vector<double>& k0,
                             const std::vector<double>& dir, Complex lambda0,
                             const std::vector<double>& omegas) {
  return scaling_exponents(
      [&](double omega) { return f(point_on_ray(k0, dir, omega)); }, lambda0,
      omegas);
}

std::vector<Complex> predicted_dispersion(const EpClass& cls,
                                          const CharPoly& cp) {
  const auto sqrt_pair = [](Complex w) {
    const Complex r = std::sqrt(w);
    return std::vector<Complex>{r, -r};
  };
  switch (cls.label) {
    case EpLabel::EP2:
      return sqrt_pair(-cp.det);
    case EpLabel::EP3_I: {
      std::vector<Complex> out{Complex{0.0, 0.0}};
      for (Complex r : sqrt_pair(cp.s[2] / 2.0)) out.push_back(r);
      return out;
    }
    case EpLabel::EP3_II:
      return nth_roots(cp.det, 3);
    case EpLabel::EP3_III: {
      const Complex nu = 27.0 * cp.det - 2.5 * cp.s[1] * cp.s[1] * cp.s[1]
                         + 4.5 * cp.s[1] * cp.s[2];
      return nth_roots(Complex{nu.real() / 27.0, 0.0}, 3);
    }
    case EpLabel::EP4_I:
      return nth_roots(-cp.det, 4);
    case EpLabel::EP4_II: {
      std::vector<Complex> out{Complex{0.0, 0.0}};
      for (Complex r : nth_roots(cp.s[3] / 3.0, 3)) out.push_back(r);
      return out;
    }
    case EpLabel::EP4_III: {
      std::vector<Complex> out{Complex{0.0, 0.0}, Complex{0.0, 0.0}};
      for (Complex r : sqrt_pair(cp.s[2] / 2.0)) out.push_back(r);
      return out;
    }
    case EpLabel::EP4_IV: {
      // nu-dominated limit: eta = kappa = 0 forces c = 0, d = -b^2 / 12 for
      // the monic quartic lambda^4 + b lambda^2 + c lambda + d, with
      // nu = 8 b^3.
      const Complex a = cp.p[1];
      const Complex b = cp.p[2];
      const Complex c = cp.p[3];
      const Complex d = cp.p[4];
      const Complex nu = 27.0 * a * a * d - 9.0 * a * b * c + 2.0 * b * b * b
                         - 72.0 * b * d + 27.0 * c * c;
      const Complex blim = std::pow(nu / 8.0, 1.0 / 3.0);
      const Complex disc = std::sqrt(blim * blim * (4.0 / 3.0));
      std::vector<Complex> out;
      for (Complex lam2 : {(-blim + disc) / 2.0, (-blim - disc) / 2.0}) {
        for (Complex r : sqrt_pair(lam2)) out.push_back(r);
      }
      return out;
    }
    case EpLabel::EP3_0:
    case EpLabel::EP4_0:
      throw std::invalid_argument(
          "predicted_dispersion: type-0 points have no reduced closed form");
  }
  throw std::invalid_argument("predicted_dispersion: unknown label");
}

}  // namespace epatlas
