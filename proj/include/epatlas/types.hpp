#ifndef EPATLAS_TYPES_HPP
#define EPATLAS_TYPES_HPP

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace epatlas {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

constexpr Complex I{0.0, 1.0};

// Frobenius norm, floored at 1 so tolerances of the form tol*scale^p stay
// meaningful for near-zero matrices.
inline double mat_scale(const Matrix& H) {
  double s = H.norm();
  return s > 1.0 ? s : 1.0;
}

inline bool mat_finite(const Matrix& H) {
  return H.allFinite();
}

class EpAtlasError : public std::runtime_error {
 public:
  explicit EpAtlasError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace epatlas

#endif
