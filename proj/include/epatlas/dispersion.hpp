#ifndef EPATLAS_DISPERSION_HPP
#define EPATLAS_DISPERSION_HPP

#include <functional>
#include <string>
#include <vector>

#include "epatlas/charpoly.hpp"
#include "epatlas/field.hpp"
#include "epatlas/types.hpp"

namespace epatlas {

// Dispersion classes of order-2/3/4 exceptional points. The 3- and 4-band
// subtypes are set by which characteristic-polynomial data vanish along the
// approach path (or decay faster than the rest).
enum class EpLabel {
  EP2,
  EP3_0,
  EP3_I,    // det = 0:       0, +-sqrt(tr[H^2]/2)
  EP3_II,   // tr[H^2] = 0:   cube roots of det
  EP3_III,  // Im eta = Im nu = 0, Re eta decays faster than Re nu
  EP4_0,
  EP4_I,    // tr[H^2] = tr[H^3] = 0: quartic roots of -det
  EP4_II,   // det = tr[H^2] = 0:     0, cube roots of tr[H^3]/3
  EP4_III,  // det = tr[H^3] = 0:     0, 0, +-sqrt(tr[H^2]/2)
  EP4_IV,   // eta, kappa decay faster than nu
};

std::string ep_label_name(EpLabel label);

struct EpClass {
  int order = 2;
  EpLabel label = EpLabel::EP2;
  std::vector<std::string> evidence;  // which quantities vanished / decayed
};

// 25 log-spaced samples in [1e-8, 1e-2].
std::vector<double> default_omegas();

// Classify the EP at k0 from the behaviour of tr[H^2], tr[H^3], det, and
// the resolvent combinations along k0 + omega * dir. A quantity vanishes
// identically when its scale-normalized magnitude stays below 1e-12 at all
// samples; decay-rate comparisons require fitted exponents to differ by
// more than 0.25.
EpClass classify(const HamiltonianField& f, const std::vector<double>& k0,
                 const std::vector<double>& dir,
                 const std::vector<double>& omegas = default_omegas());

struct BandFit {
  double exponent = 0.0;
  double r2 = 0.0;
  bool flat = false;      // splitting below 1e-8 across the window
  bool reliable = false;  // r^2 >= 0.98
  double max_split = 0.0;
};

struct ScalingFit {
  std::vector<BandFit> bands;
  double omega_min = 0.0;
  double omega_max = 0.0;
  Complex lambda0{0.0, 0.0};
};

// Per-band |lambda_i(omega) - lambda0| slopes on a log-log fit, with bands
// tracked across omega samples by min-cost matching.
ScalingFit scaling_exponents(const std::function<Matrix(double)>& path,
                             Complex lambda0,
                             const std::vector<double>& omegas
                             = default_omegas());

ScalingFit scaling_exponents(const HamiltonianField& f,
                             const std::vector<double>& k0,
                             const std::vector<double>& dir, Complex lambda0,
                             const std::vector<double>& omegas
                             = default_omegas());

// Closed-form band multiset for a classified EP, from the characteristic
// polynomial of the traceless-shifted Hamiltonian near the point. Classes
// III/IV return unordered multisets (the source tables do not fix branch
// pairings). Throws for the type-0 labels, where only the full radical
// solutions apply.
std::vector<Complex> predicted_dispersion(const EpClass& cls,
                                          const CharPoly& cp);

}  // namespace epatlas

#endif
