#ifndef EPATLAS_SYMMETRY_HPP
#define EPATLAS_SYMMETRY_HPP

#include <array>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "epatlas/basis.hpp"
#include "epatlas/field.hpp"
#include "epatlas/types.hpp"

namespace epatlas {

enum class SymKind {
  PHS,        // H(-k) = -C H^T(k) C^-1
  PHSdag,     // H(-k) = -T H*(k) T^-1
  TRS,        // H(-k) =  T H*(k) T^-1
  TRSdag,     // H(-k) =  C H^T(k) C^-1
  CS,         // H(k)  = -G H^dag(k) G^-1
  psCS,       // H^T(k) = -L H(k) L^-1
  SLS,        // H(k)  = -S H(k) S^-1
  psH,        // H(k)  =  s H^dag(k) s^-1
  Inversion,  // H^dag(-k) = I H(k) I^-1
  Parity,     // H(-k) = P H(k) P^-1
  PT,         // H(k)  =  U H*(k) U^-1
  CP,         // H(k)  = -U H*(k) U^-1
};

constexpr std::array<SymKind, 12> kAllSymKinds = {
    SymKind::PHS,  SymKind::PHSdag, SymKind::TRS,       SymKind::TRSdag,
    SymKind::CS,   SymKind::psCS,   SymKind::SLS,       SymKind::psH,
    SymKind::Inversion, SymKind::Parity, SymKind::PT,   SymKind::CP};

std::string sym_kind_name(SymKind kind);
SymKind sym_kind_from_name(const std::string& name);

// Relation couples k with -k (PHS, PHS^dag, TRS, TRS^dag, inversion, parity).
bool flips_momentum(SymKind kind);
// The antiunitary families whose generator obeys A A* = zeta.
bool is_antiunitary(SymKind kind);

struct SymmetryOperator {
  SymKind kind = SymKind::psH;
  Matrix generator;
  int zeta = +1;  // only meaningful for the antiunitary kinds
};

// Generator hygiene: unitarity residual plus the involution residual
// (||A^2 - 1|| for unitary kinds, ||A A* - zeta|| for antiunitary ones).
// Some catalogued generators are deliberately non-involutive, so this
// reports rather than throws.
struct OperatorCheck {
  double unitarity = 0.0;
  double involution = 0.0;
};
OperatorCheck validate_operator(const SymmetryOperator& op);

// The catalogued generator for each kind/dimension (n = 2..5 as applicable).
Matrix default_generator(SymKind kind, int n, int zeta = +1);

// The symmetry side of the defining relation as a field
// (e.g. psH: A(H)(k) = s H^dag(k) s^-1). Fixed points satisfy the relation.
HamiltonianField symmetry_image(const HamiltonianField& f,
                                const SymmetryOperator& op);

// Max over samples of ||H(k) - A(H)(k)|| / scale.
double check_symmetry(const HamiltonianField& f, const SymmetryOperator& op,
                      const std::vector<std::vector<double>>& ksamples);

// (H + A(H))/2; idempotent for involutive actions.
HamiltonianField symmetrize(const HamiltonianField& f,
                            const SymmetryOperator& op);

// Alternating projection onto several symmetries (applied in the given
// order, repeated `rounds` times). Callers should re-check residuals; each
// round doubles the evaluation cost per operator, so keep rounds small.
HamiltonianField symmetrize_all(const HamiltonianField& f,
                                const std::vector<SymmetryOperator>& ops,
                                int rounds = 3);

// Residual of the eigenvalue multiset relation (e.g. psH:
// {eps(k)} = {eps*(k)}), via exhaustive min-cost matching.
double spectral_relation_residual(const HamiltonianField& f, SymKind kind,
                                  const std::vector<double>& k);

struct ConstraintPrediction {
  int count = 0;
  std::vector<std::string> names;  // "Re det", "Im tr[H^2]", ...
};

// Number (and list) of real constraints that locate an EPn in an n-band
// system with this symmetry. CS is undefined for odd n.
ConstraintPrediction predicted_constraints(SymKind kind, int n);

// Quantities forced to vanish identically by a momentum-local symmetry:
// parts of tr[H^k] (k = 1..n, 1-indexed) and det[H]. Empty for the
// momentum-nonlocal kinds.
struct QuantityPattern {
  std::vector<bool> re_tr, im_tr;  // size n+1, index 0 unused
  bool re_det = false;
  bool im_det = false;
};
QuantityPattern predicted_vanishing(SymKind kind, int n);

// Random dense field A0 + sum_axes (As cos k + Aa sin k), unit-scale
// complex Gaussian coefficient matrices.
HamiltonianField random_field(int n, int axes, std::mt19937_64& rng);

// Draw random fields, symmetrize with `op`, and measure the pattern of
// tr[H^k]/det parts over random momenta against predicted_vanishing.
struct VanishingReport {
  QuantityPattern predicted;
  double max_forbidden = 0.0;        // worst |forbidden part| / scale
  double min_permitted_median = 0.0; // smallest median |permitted part| / scale
};
VanishingReport vanishing_pattern(const SymmetryOperator& op, int n,
                                  int trials, int ksamples, uint64_t seed);

// Surviving d-coefficient components of symmetrized random fields,
// split by Re/Im and by momentum parity.
struct SurvivingReport {
  BasisFamily family = BasisFamily::Pauli;
  // per generator: {Rs, Ra, Is, Ia}
  std::vector<std::array<bool, 4>> split;
  int count_split() const;   // surviving split components (nonlocal counting)
  int count_labels() const;  // surviving R/I labels (local counting)
  std::vector<std::string> split_labels() const;
  std::vector<std::string> ri_labels() const;
};
SurvivingReport measure_surviving(const std::vector<SymmetryOperator>& ops,
                                  BasisFamily family, int trials,
                                  uint64_t seed);

// Bernard-LeClair class letter where one exists (C, K, Q, P).
std::optional<std::string> blc_alias(SymKind kind);

}  // namespace epatlas

#endif
