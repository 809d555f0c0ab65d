#pragma once

#include <optional>
#include <random>

#include "edss/bell_diagonal.hpp"
#include "edss/separability.hpp"

namespace edss {

enum class Branch { SendC, SendA };

const char* to_string(Branch branch);

struct ProtocolOutcome {
    BellDiagonalState input;
    double s = 0.0;
    bool s_degenerate = false;
    Branch branch = Branch::SendC;
    double lambda_c_ab = 0.0;
    double lambda_a_bc = 0.0;
    double success_probability = 0.0;
    std::optional<LocalizationResult> localized;
    double ent_lower_bound = 0.0;
    double gap_bound = 0.0;  // (1/4)(1+s)|s11|
};

/// CZ_{AC} (rho_AB (x) rho_C) CZ_{AC} with rho_C = (1 + s X)/2, on labels (C, A, B).
DensityMatrix build_rho_abc(const BellDiagonalState& state, double s);

/// U_AC (rho_AB (x) rho_C) U_AC^dagger for an arbitrary two-qubit unitary on (A, C);
/// u is indexed with A as the most significant bit.
DensityMatrix apply_interaction(const BellDiagonalState& state, const Eigen::Matrix4cd& u, double s);

Eigen::Matrix4cd cz_gate();

/// Haar-random two-qubit unitary (QR of a complex Ginibre matrix, phases fixed).
Eigen::Matrix4cd random_unitary4(std::mt19937_64& rng);

/// Minimum partial-transpose eigenvalues (lambda_C|AB, lambda_A|BC) of the
/// controlled-phase protocol state, in closed form:
///   8 lambda_C|AB = 1 - s10 - s(1+s10) - |(1-s) s01 - (1+s) s11|
///   8 lambda_A|BC = 1 - s10 - s(1+s10) - |(1-s) s01 + (1+s) s11|
/// For nonnegative canonical coefficients the A-branch absolute value resolves to
/// 1 - s01 - s10 - s11 - s(1 - s01 + s10 + s11); with a negative s11 the two
/// expressions exchange roles.
std::pair<double, double> closed_form_pt(const BellDiagonalState& state, double s);

struct ChosenS {
    double s = 0.0;
    bool degenerate = false;  // lambda_3 = 0 forced the lambda_2/lambda_1 branch
};

/// s = min(lambda_4/lambda_3, lambda_2/lambda_1); makes lambda_C|AB vanish.
ChosenS choose_s(const BellDiagonalState& state);

/// Executes the protocol on a canonical state: chooses s from the coefficient
/// magnitudes, picks the branch from the sign of s11, evaluates both closed-form PT
/// minima, localizes the entangled cut, and evaluates the entanglement lower bound
/// p (1 - H(chi_max)) with chi_max = (1+s) lambda_1 / (2p) on the SendC branch.
ProtocolOutcome run(const BellDiagonalState& state);

/// For s11 = 0 resources the PT spectra over {A}, {A,B} and {C} of
/// U (rho_AB (x) rho_C) U^dagger coincide as multisets (no distillable entanglement
/// can be produced). Throws when s11 != 0.
bool pt_spectra_coincide(const BellDiagonalState& state, const Eigen::Matrix4cd& u, double s,
                            double tol = 1e-9);

/// (gap, bound) with gap = |lambda_A|BC - lambda_C|AB| from dense spectra and
/// bound = (1/4)(1+s)|s11|.
std::pair<double, double> gap_bound_check(const BellDiagonalState& state, const Eigen::Matrix4cd& u,
                                          double s);

}  // namespace edss
