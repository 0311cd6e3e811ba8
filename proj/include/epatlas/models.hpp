#ifndef EPATLAS_MODELS_HPP
#define EPATLAS_MODELS_HPP

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "epatlas/field.hpp"
#include "epatlas/symmetry.hpp"
#include "epatlas/types.hpp"

namespace epatlas {

// Driven-dissipative Kitaev chain (2 bands, 1D): -2i sqrt(gl gg) on the
// diagonal, -i(2J e^{ik} + mu) / i(2J e^{-ik} + mu) off-diagonal.
HamiltonianField kitaev(Complex J, Complex mu, Complex gl, Complex gg);

// Threefold-fermion model (3 bands, momenta k_x, k_y): antisymmetric matrix
// built from h_x = ax + i sin kx, h_y = ay + i sin ky,
// h_z = az + i(-2 + cos kx + cos ky).
HamiltonianField threefold(Complex ax, Complex ay, Complex az);

// One-parameter family ax = ay = alpha, az = i sqrt(2) alpha.
HamiltonianField threefold_family(double alpha);

// Pseudo-chiral PT-symmetric 3-band model with
// h_alpha = sqrt(2) alpha + cos kx + cos ky - 2.
HamiltonianField threefold_pt(double alpha);

// The quadratic factor of the threefold_pt characteristic polynomial:
// -lambda [lambda^2 - Omega_alpha].
Complex threefold_pt_omega(double alpha, double kx, double ky);

// Momentum-free sublattice block [[0,0,0],[0,b,c],[0,d,-b]] with eigenvalues
// {0, +-sqrt(b^2 + c d)}.
HamiltonianField sls3_block(Complex b, Complex c, Complex d);

// Fourfold-fermion model (4 bands, momenta k_x, k_z).
HamiltonianField fourfold(Complex ap, Complex am, Complex az, Complex ab,
                          double th1, double th2);

// One-parameter family am = ap = alpha, az = i alpha, ab = 0,
// th1 = th2 = pi/2.
HamiltonianField fourfold_family(double alpha);

// Pseudo-Hermitian 4-band model (momenta k_x, k_z).
HamiltonianField fourfold_psh(double alpha, double th1 = M_PI / 2.0,
                              double th2 = M_PI / 2.0);

// Momentum-free block embeddings for lower-order EPs inside larger spectra.
// three_H1 takes (b, c, d, e): [[-(b+e), 0, 0], [0, b, c], [0, d, e]].
// four_H1 takes (b, c, d, e, g, j): 2x2 block on top of diag(g, j).
// four_H2 takes (g, b, c, d, e, j): [[g,..],[., b, c, .],[., d, e, .],[.., j]].
// four_H3 takes 8 entries: two independent 2x2 blocks on the diagonal.
enum class BlockKind { three_H1, four_H1, four_H2, four_H3 };
HamiltonianField block_model(BlockKind kind,
                             const std::vector<Complex>& entries);

struct ModelSpec {
  std::string name;
  int dim = 0;
  std::vector<std::string> momenta;
  std::map<std::string, Complex> defaults;
};

std::vector<std::string> model_names();
const ModelSpec& model_spec(const std::string& name);

// Instantiate a named model; unknown parameter names throw, missing ones
// take defaults.
HamiltonianField make_model(const std::string& name,
                            const std::map<std::string, Complex>& params = {});

// The catalogued symmetries the instantiation is expected to satisfy.
std::vector<SymmetryOperator> model_symmetries(const std::string& name);

}  // namespace epatlas

#endif
