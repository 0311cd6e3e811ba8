#include "epatlas/epfinder.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <deque>
#include <thread>

namespace epatlas {

namespace {

int thread_count() {
  const char* env = std::getenv("EP_ATLAS_THREADS");
  if (!env) return 1;
  int n = std::atoi(env);
  return n > 0 ? n : 1;
}

void parallel_for(long total, const std::function<void(long, long)>& body) {
  int nthreads = thread_count();
  if (nthreads <= 1 || total < 2 * nthreads) {
    body(0, total);
    return;
  }
  std::vector<std::thread> pool;
  long chunk = (total + nthreads - 1) / nthreads;
  for (int t = 0; t < nthreads; ++t) {
    long lo = t * chunk;
    long hi = std::min(total, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back(body, lo, hi);
  }
  for (auto& th : pool) th.join();
}

struct Grid {
  std::vector<ScanAxis> axes;
  std::vector<long> strides;
  long total = 1;

  explicit Grid(const std::vector<ScanAxis>& a) : axes(a) {
    strides.assign(axes.size(), 1);
    for (size_t d = 0; d < axes.size(); ++d) {
      strides[d] = total;
      total *= axes[d].samples;
    }
  }
  std::vector<int> unpack(long idx) const {
    std::vector<int> c(axes.size());
    for (size_t d = 0; d < axes.size(); ++d)
      c[d] = static_cast<int>((idx / strides[d]) % axes[d].samples);
    return c;
  }
  long pack(const std::vector<int>& c) const {
    long idx = 0;
    for (size_t d = 0; d < axes.size(); ++d) idx += c[d] * strides[d];
    return idx;
  }
  std::vector<double> point(const std::vector<int>& c) const {
    std::vector<double> k(axes.size());
    for (size_t d = 0; d < axes.size(); ++d) {
      const auto& ax = axes[d];
      k[d] = ax.samples > 1
                 ? ax.lo + (ax.hi - ax.lo) * c[d] / double(ax.samples - 1)
                 : 0.5 * (ax.lo + ax.hi);
    }
    return k;
  }
  double cell_size() const {
    double h = 0.0;
    for (const auto& ax : axes)
      if (ax.samples > 1)
        h = std::max(h, (ax.hi - ax.lo) / double(ax.samples - 1));
    return h > 0.0 ? h : 1.0;
  }
  std::vector<long> neighbours(long idx) const {
    std::vector<long> out;
    std::vector<int> c = unpack(idx);
    for (size_t d = 0; d < axes.size(); ++d)
      for (int step : {-1, +1}) {
        int v = c[d] + step;
        if (v < 0 || v >= axes[d].samples) continue;
        std::vector<int> cc = c;
        cc[d] = v;
        out.push_back(pack(cc));
      }
    return out;
  }
};

// Normalized real residual vector of the order-n constraints:
// Re/Im of tr[Ht^k]/scale^k (k = 2..n-1) and det[Ht]/scale^n.
Eigen::VectorXd constraint_residual(const Matrix& H) {
  std::vector<Complex> c = constraint_vector(H);
  double scale = mat_scale(H);
  const int n = static_cast<int>(H.rows());
  Eigen::VectorXd r(2 * static_cast<int>(c.size()));
  for (size_t i = 0; i < c.size(); ++i) {
    int power = (i + 1 < c.size()) ? static_cast<int>(i) + 2 : n;
    Complex v = c[i] / std::pow(scale, power);
    r(2 * static_cast<int>(i)) = v.real();
    r(2 * static_cast<int>(i) + 1) = v.imag();
  }
  return r;
}

// Discriminant of the distinct-eigenvalue clusters, normalized by the
// matrix scale per squared root difference. Equals the full normalized
// discriminant when all eigenvalues are simple.
Complex reduced_discriminant(const Matrix& H, double cluster_tol) {
  Spectrum sp = roots_numeric(H);
  double scale = mat_scale(H);
  auto clusters = cluster_eigenvalues(sp.eigenvalues, cluster_tol * scale);
  Complex d{1.0, 0.0};
  for (size_t i = 0; i < clusters.size(); ++i)
    for (size_t j = i + 1; j < clusters.size(); ++j) {
      Complex diff = (clusters[i].mean - clusters[j].mean) / scale;
      d *= diff * diff;
    }
  if (clusters.size() <= 1) return Complex(0.0, 0.0);
  return d;
}

Eigen::VectorXd discriminant_residual(const Matrix& H, bool reduced,
                                      double cluster_tol) {
  Complex d;
  if (reduced) {
    d = reduced_discriminant(H, cluster_tol);
  } else {
    double scale = mat_scale(H);
    const int n = static_cast<int>(H.rows());
    d = discriminant(H) / std::pow(scale, n * (n - 1));
  }
  Eigen::VectorXd r(2);
  r(0) = d.real();
  r(1) = d.imag();
  return r;
}

using Residual = std::function<Eigen::VectorXd(const std::vector<double>&)>;

// Damped Gauss-Newton with central-difference Jacobian.
bool refine(const Residual& res, std::vector<double>& k, double tol,
            int max_iters) {
  const int dim = static_cast<int>(k.size());
  Eigen::VectorXd r = res(k);
  double cost = r.norm();
  double lambda = 1e-3;
  for (int iter = 0; iter < max_iters && cost > tol; ++iter) {
    Eigen::MatrixXd jac(r.size(), dim);
    for (int d = 0; d < dim; ++d) {
      double h = 1e-6 * std::max(1.0, std::abs(k[d]));
      std::vector<double> kp = k, km = k;
      kp[d] += h;
      km[d] -= h;
      jac.col(d) = (res(kp) - res(km)) / (2.0 * h);
    }
    Eigen::MatrixXd jtj = jac.transpose() * jac;
    Eigen::VectorXd jtr = jac.transpose() * r;
    bool moved = false;
    for (int attempt = 0; attempt < 12; ++attempt) {
      Eigen::MatrixXd damped =
          jtj + lambda * Eigen::MatrixXd::Identity(dim, dim);
      Eigen::VectorXd step = damped.ldlt().solve(-jtr);
      if (!step.allFinite()) break;
      std::vector<double> kn = k;
      for (int d = 0; d < dim; ++d) kn[d] += step(d);
      Eigen::VectorXd rn = res(kn);
      double cn = rn.norm();
      if (std::isfinite(cn) && cn < cost) {
        k = kn;
        r = rn;
        cost = cn;
        lambda = std::max(1e-12, lambda * 0.25);
        moved = true;
        break;
      }
      lambda *= 10.0;
    }
    if (!moved) break;
  }
  return cost <= tol;
}

std::vector<long> candidate_cells(const Grid& grid,
                                  const std::vector<double>& vals,
                                  int max_candidates) {
  std::vector<long> mins;
  for (long i = 0; i < grid.total; ++i) {
    bool is_min = true;
    for (long nb : grid.neighbours(i))
      if (vals[nb] < vals[i]) {
        is_min = false;
        break;
      }
    if (is_min) mins.push_back(i);
  }
  std::sort(mins.begin(), mins.end(), [&vals](long a, long b) {
    if (vals[a] != vals[b]) return vals[a] < vals[b];
    return a < b;
  });
  if (static_cast<int>(mins.size()) > max_candidates)
    mins.resize(max_candidates);
  return mins;
}

bool curve_component(const Grid& grid, const std::vector<double>& vals,
                     long origin, double threshold, int needed) {
  std::vector<char> seen(grid.total, 0);
  std::deque<long> queue{origin};
  seen[origin] = 1;
  int count = 0;
  while (!queue.empty() && count < needed) {
    long cur = queue.front();
    queue.pop_front();
    ++count;
    for (long nb : grid.neighbours(cur))
      if (!seen[nb] && vals[nb] <= threshold) {
        seen[nb] = 1;
        queue.push_back(nb);
      }
  }
  return count >= needed;
}

}  // namespace

std::vector<EigCluster> cluster_eigenvalues(const std::vector<Complex>& eigs,
                                            double tol) {
  std::vector<Complex> sorted = eigs;
  std::sort(sorted.begin(), sorted.end(), [](Complex a, Complex b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  std::vector<int> label(sorted.size());
  for (size_t i = 0; i < sorted.size(); ++i) label[i] = static_cast<int>(i);
  auto root = [&label](int i) {
    while (label[i] != i) i = label[i] = label[label[i]];
    return i;
  };
  for (size_t i = 0; i < sorted.size(); ++i)
    for (size_t j = i + 1; j < sorted.size(); ++j)
      if (std::abs(sorted[i] - sorted[j]) <= tol)
        label[root(static_cast<int>(i))] = root(static_cast<int>(j));
  std::vector<EigCluster> out;
  std::vector<int> slot(sorted.size(), -1);
  for (size_t i = 0; i < sorted.size(); ++i) {
    int r = root(static_cast<int>(i));
    if (slot[r] < 0) {
      slot[r] = static_cast<int>(out.size());
      out.push_back({});
    }
    EigCluster& c = out[slot[r]];
    c.mean += sorted[i];
    c.count += 1;
  }
  for (auto& c : out) c.mean /= double(c.count);
  for (size_t i = 0; i < sorted.size(); ++i) {
    EigCluster& c = out[slot[root(static_cast<int>(i))]];
    c.spread = std::max(c.spread, std::abs(sorted[i] - c.mean));
  }
  return out;
}

JordanInfo jordan_structure(const Matrix& H, Complex lambda, int algebraic,
                            double rank_tol, double spread) {
  const int n = static_cast<int>(H.rows());
  JordanInfo info;
  info.algebraic = algebraic;
  info.spread = spread;
  Matrix shifted = H - lambda * Matrix::Identity(n, n);
  double delta = std::max(spread, 1e-15);

  std::vector<int> ranks{n};  // rank of shifted^0
  Matrix power = Matrix::Identity(n, n);
  for (int j = 1; j <= algebraic; ++j) {
    power = power * shifted;
    Eigen::JacobiSVD<Matrix> svd(power);
    double smax = svd.singularValues().size() > 0
                      ? svd.singularValues()(0)
                      : 0.0;
    double cut = std::max(rank_tol * std::max(smax, 1.0),
                          std::pow(4.0 * delta, j));
    int rank = 0;
    for (int i = 0; i < svd.singularValues().size(); ++i)
      if (svd.singularValues()(i) > cut) ++rank;
    ranks.push_back(rank);
  }
  // blocks of size >= j: ranks[j-1] - ranks[j]
  info.blocks.clear();
  for (int j = 1; j <= algebraic; ++j) {
    int at_least_j = ranks[j - 1] - ranks[j];
    int at_least_j1 =
        j < algebraic ? ranks[j] - ranks[j + 1] : 0;
    int exactly_j = at_least_j - at_least_j1;
    for (int b = 0; b < exactly_j; ++b) info.blocks.push_back(j);
  }
  std::sort(info.blocks.rbegin(), info.blocks.rend());
  if (info.blocks.empty()) info.blocks.push_back(algebraic);
  info.largest = info.blocks.front();
  return info;
}

ScanResult scan(const HamiltonianField& f, const ScanConfig& cfg) {
  if (cfg.axes.empty()) throw EpAtlasError("scan needs at least one axis");
  Grid grid(cfg.axes);
  const int n = f.dim;
  ScanResult result;
  result.grid_evaluations = grid.total;

  std::vector<double> full_vals(grid.total);
  std::vector<double> disc_vals(grid.total);
  parallel_for(grid.total, [&](long lo, long hi) {
    for (long i = lo; i < hi; ++i) {
      Matrix H = f(grid.point(grid.unpack(i)));
      full_vals[i] = constraint_residual(H).norm();
      double scale = mat_scale(H);
      disc_vals[i] =
          std::abs(discriminant(H)) / std::pow(scale, n * (n - 1));
    }
  });

  long zeros = 0;
  for (long i = 0; i < grid.total; ++i)
    if (disc_vals[i] < 1e-14) ++zeros;
  bool reduced = zeros * 2 > grid.total;
  result.discriminant_structurally_zero = reduced;

  // Generic multiplicity of one band: > 1 when the whole spectrum is
  // degenerate (structurally zero discriminant), read off as the most
  // common cluster multiplicity across the grid.
  int band_multiplicity = 1;
  if (reduced) {
    std::vector<int> distinct(grid.total, n);
    parallel_for(grid.total, [&](long lo, long hi) {
      for (long i = lo; i < hi; ++i) {
        Matrix H = f(grid.point(grid.unpack(i)));
        double ctol = std::sqrt(cfg.cluster_radius);
        disc_vals[i] = std::abs(reduced_discriminant(H, ctol));
        Spectrum sp = roots_numeric(H);
        distinct[i] = static_cast<int>(
            cluster_eigenvalues(sp.eigenvalues, ctol * mat_scale(H)).size());
      }
    });
    std::vector<long> tally(n + 1, 0);
    for (long i = 0; i < grid.total; ++i) ++tally[distinct[i]];
    int common = n;
    for (int c = 1; c <= n; ++c)
      if (tally[c] > tally[common]) common = c;
    band_multiplicity = std::max(1, n / std::max(1, common));
  }

  Residual full_res = [&f](const std::vector<double>& k) {
    return constraint_residual(f(k));
  };
  double cluster_tol = std::sqrt(cfg.cluster_radius);
  Residual disc_res = [&f, reduced, cluster_tol](
                          const std::vector<double>& k) {
    return discriminant_residual(f(k), reduced, cluster_tol);
  };

  struct Found {
    EpPoint point;
    long origin;
    const std::vector<double>* vals;
  };
  std::vector<Found> found;

  auto run_pass = [&](const std::vector<double>& vals, const Residual& res,
                      const char* name, int min_order) {
    for (long cell : candidate_cells(grid, vals, cfg.max_candidates)) {
      std::vector<double> k = grid.point(grid.unpack(cell));
      if (!refine(res, k, cfg.refine_tol, cfg.max_refine_iters)) {
        double leftover = res(k).norm();
        if (leftover > cfg.accept_tol) continue;
      }
      Matrix H = f(k);
      double scale = mat_scale(H);
      Spectrum sp = roots_numeric(H);
      double residual = res(k).norm();
      double tol =
          std::max(1e-4, std::pow(10.0 * std::max(residual, 1e-15),
                                  1.0 / n)) *
          scale;
      auto clusters = cluster_eigenvalues(sp.eigenvalues, tol);
      EigCluster best{};
      for (const auto& c : clusters)
        if (c.count > best.count) best = c;
      int order = std::max(1, best.count / band_multiplicity);
      if (order < min_order) continue;
      JordanInfo ji = jordan_structure(H, best.mean, best.count,
                                       cfg.rank_tol, best.spread);
      EpPoint p;
      p.k = k;
      p.eigenvalue = best.mean;
      p.order = order;
      p.algebraic = ji.algebraic;
      p.band_multiplicity = band_multiplicity;
      p.blocks = ji.blocks;
      p.residual = residual;
      p.defective = ji.largest > 1;
      p.objective = name;
      found.push_back({std::move(p), cell, &vals});
    }
  };

  run_pass(full_vals, full_res, "constraints", n);
  run_pass(disc_vals, disc_res, "discriminant", 2);

  // Deduplicate: highest order, then lowest residual wins within one grid
  // cell; ties resolve lexicographically in k. Order first, so a full-order
  // point is never masked by a nearby lower-order one.
  std::sort(found.begin(), found.end(), [](const Found& a, const Found& b) {
    if (a.point.order != b.point.order) return a.point.order > b.point.order;
    if (a.point.residual != b.point.residual)
      return a.point.residual < b.point.residual;
    return a.point.k < b.point.k;
  });
  double dedup = grid.cell_size();
  for (auto& fpt : found) {
    bool dup = false;
    for (const auto& kept : result.points) {
      double dist = 0.0;
      for (size_t d = 0; d < kept.k.size(); ++d)
        dist = std::max(dist, std::abs(kept.k[d] - fpt.point.k[d]));
      if (dist < dedup) {
        dup = true;
        break;
      }
    }
    if (dup) continue;
    double threshold =
        std::max(1e-10, 100.0 * (*fpt.vals)[fpt.origin]);
    fpt.point.on_curve =
        curve_component(grid, *fpt.vals, fpt.origin, threshold, 8);
    result.points.push_back(fpt.point);
  }
  std::sort(result.points.begin(), result.points.end(),
            [](const EpPoint& a, const EpPoint& b) { return a.k < b.k; });
  return result;
}

}  // namespace epatlas
