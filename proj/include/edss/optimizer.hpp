#pragma once

#include <array>
#include <cstdint>

#include "edss/protocol.hpp"

namespace edss {

/// Coefficients of a self-adjoint generator H over the two-qubit Pauli basis on (A, C);
/// the interaction unitary is exp(i H). Index = 4 * letter_A + letter_C with letters
/// I, X, Y, Z = 0..3; coefficients live in the box [-pi, pi].
struct UnitaryParams {
    std::array<double, 16> generator{};
};

/// exp(i H) by scaling and squaring with a fixed-order series; unitary within 1e-10.
Eigen::Matrix4cd unitary_from_params(const UnitaryParams& params);

/// Parameters whose unitary is exactly the controlled-phase gate.
UnitaryParams cz_params();

/// Dense PT minima (lambda_C|AB, lambda_A|BC) for an arbitrary interaction unitary;
/// reduces to closed_form_pt at the controlled-phase encoding.
std::pair<double, double> objective(const BellDiagonalState& state, const UnitaryParams& params,
                                    double s);

struct OptimizationResult {
    double best_lambda_a_bc = 0.0;
    double best_s = 0.0;
    UnitaryParams best_params;
    double cz_baseline = 0.0;  // lambda_A|BC of the controlled-phase protocol at its chosen s
    double slack = 0.0;        // (1/4)(1 - lambda_4/lambda_3) s11
    long evaluations = 0;
    int best_restart = -1;
};

/// Derivative-free search (Nelder-Mead over the 16 generator coefficients and s) for the
/// most negative lambda_A|BC subject to lambda_C|AB >= 0, with an exterior penalty
/// w * max(0, -lambda_C|AB), w = 1e3 with one continuation step to 1e4. Restart 0 starts
/// at the controlled-phase encoding; restart k draws its start from
/// mt19937_64(seed + 0x100001b3 * k), so results are reproducible bit for bit. Only
/// feasible incumbents (lambda_C|AB >= -1e-9) are reported; budget counts objective
/// evaluations per restart.
OptimizationResult optimize(const BellDiagonalState& state, int restarts, long budget_per_restart,
                            std::uint64_t seed = 0x9e3779b97f4a7c15ull);

/// sigma_AB = (rho_AB + Z_B rho_AB Z_B)/2 is a valid dephased target (its two leading
/// eigenvalues coincide, placing it among the useless resources), so the discord
/// I_class(rho) upper bounds the distributable entanglement. Returns I_class.
double dephasing_upper_bound(const BellDiagonalState& state);

}  // namespace edss
