#pragma once

#include <array>
#include <optional>

#include "edss/density_matrix.hpp"

namespace edss {

/// Two-qubit Bell-diagonal resource state, described by the correlation coefficients
/// (s01, s10, s11) with s00 = 1 implicit. The fixed matrix realization is the
/// graph-basis one (Hadamard on B relative to the literal Bell form):
///   rho_AB = (1/4)(1 + s10 X_A Z_B + s01 Z_A X_B + s11 Y_A Y_B)
/// whose eigenvalues are (1 + a s01 + b s10 + ab s11)/4 for a, b in {+1, -1}.
struct BellDiagonalState {
    double s01 = 0.0;
    double s10 = 0.0;
    double s11 = 0.0;

    BellDiagonalState() = default;
    /// Validates positivity: every eigenvalue >= -1e-12; names the violating (a, b) sign pair.
    BellDiagonalState(double s01_, double s10_, double s11_);
};

struct MeasureReport {
    double i_locc = 0.0;
    double i_class = 0.0;
    double i_edss_naive = 0.0;
    std::array<double, 4> lambda{};  // descending
};

/// Binary entropy in bits, H(0) = H(1) = 0; inputs clamped to [0,1] at threshold 1e-14.
double binary_entropy(double x);

/// Eigenvalues in the fixed sign-pattern order (++, +-, -+, --); descending for
/// canonical nonnegative coefficients.
std::array<double, 4> lambda_by_pattern(const BellDiagonalState& state);

/// The four eigenvalues sorted descending; throws (naming the sign pattern) if
/// positivity fails beyond 1e-12.
std::array<double, 4> spectrum_closed_form(const BellDiagonalState& state);

/// Inverse map from a point of the probability simplex (sorted descending internally):
/// s01 = l1+l2-l3-l4, s10 = l1-l2+l3-l4, s11 = l1-l2-l3+l4.
BellDiagonalState from_spectrum(const std::array<double, 4>& lambdas);

/// Canonical form |s01| >= |s10| >= |s11| via coefficient permutations and simultaneous
/// sign flips of two coefficients. A positive sign product (or any zero coefficient)
/// yields all nonnegative entries; otherwise exactly one entry stays negative, placed on
/// s11 unless the protocol rule |s01 - s11 - s*s01 - s*s11| = 0 at the supplied
/// interaction strength moves it to s01.
BellDiagonalState canonicalize(const BellDiagonalState& state,
                               std::optional<double> protocol_s = std::nullopt);

bool is_canonical(const BellDiagonalState& state, double tol = 1e-12);

/// lambda_1 <= 1/2 within 1e-12.
bool is_separable(const BellDiagonalState& state);

MeasureReport measures(const BellDiagonalState& state);

/// 4x4 graph-basis realization on labels (A, B).
DensityMatrix to_density_matrix(const BellDiagonalState& state);

}  // namespace edss
