#pragma once

#include <string>
#include <vector>

#include "edss/protocol.hpp"

namespace edss {

enum class ChannelKind { Depolarizing, PhaseFlip };

const char* to_string(ChannelKind kind);

/// Single-qubit Pauli channel in operator-sum form, E(rho) = sum_k w_k P_k rho P_k.
struct NoiseChannel {
    ChannelKind kind = ChannelKind::Depolarizing;
    double q = 0.0;
    std::vector<std::pair<double, PauliWord>> kraus;  // (weight, word); weights sum to 1

    static NoiseChannel make(ChannelKind kind, double q);
};

DensityMatrix apply_channel(const NoiseChannel& channel, const DensityMatrix& rho, char qubit);

/// Largest q (bisection to 1e-6 after a bracketing scan over [0,1]) for which the
/// protocol still distributes heralded distillable entanglement: the post-noise
/// entangled cut stays NPT and the localized two-qubit state stays NPT. Noise acts on
/// the transmitted qubit. For depolarizing noise on a lambda_1 = 1/2 resource the
/// threshold is 2s/(2s+1). Throws when s11 = 0 (no threshold exists).
double edss_threshold(const BellDiagonalState& state, ChannelKind kind);

/// Threshold for transmitting one half of a maximally entangled pair:
/// 2/3 for depolarizing noise, 1/2 for phase flips.
double direct_threshold(ChannelKind kind);

/// Threshold for transmitting the projected-output qubit of the localized rho_SUC.
double rho_suc_threshold(const BellDiagonalState& state, ChannelKind kind);

struct NoiseComparison {
    double q_star_edss = 0.0;
    double q_star_direct = 0.0;
    double q_star_suc = 0.0;
    bool lambda_half_family = false;  // lambda_1 = 1/2 resource, where the ordering claims apply
    bool direct_ge_edss = false;
    bool edss_ge_suc = false;
};

NoiseComparison compare_thresholds(const BellDiagonalState& state,
                                   ChannelKind kind = ChannelKind::Depolarizing);

/// A lambda_1 = 1/2 resource whose protocol interaction strength equals s_target.
BellDiagonalState lambda_half_state(double s_target);

}  // namespace edss
