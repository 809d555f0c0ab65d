#include "edss/noise.hpp"

#include <algorithm>
#include <cmath>

namespace edss {

namespace {

constexpr double kNptTol = 1e-12;
constexpr int kBisectIterations = 30;
constexpr int kScanSteps = 64;

/// Largest q in [0, 1] below the first failure of a predicate that is monotone up to its
/// threshold. A coarse scan brackets the first failing point (a phase flip beyond 1/2 is
/// an anti-flip and can re-entangle, so a plain [0,1] bisection would be ill-posed);
/// bisection then refines the bracket. The evaluation trace is checked for monotonicity.
template <typename Predicate>
double scan_threshold(Predicate tolerated) {
    std::vector<std::pair<double, bool>> trace;
    auto probe = [&](double q) {
        bool ok = tolerated(q);
        trace.emplace_back(q, ok);
        return ok;
    };
    if (!probe(0.0)) return 0.0;
    double lo = 0.0, hi = 1.0;
    bool bracketed = false;
    for (int k = 1; k <= kScanSteps; ++k) {
        double q = double(k) / kScanSteps;
        if (!probe(q)) {
            hi = q;
            lo = double(k - 1) / kScanSteps;
            bracketed = true;
            break;
        }
    }
    if (!bracketed) return 1.0;
    for (int it = 0; it < kBisectIterations; ++it) {
        double mid = 0.5 * (lo + hi);
        if (probe(mid))
            lo = mid;
        else
            hi = mid;
    }
    // Tolerated at q implies tolerated at every smaller evaluated q.
    double max_tolerated = -1.0, min_failed = 2.0;
    for (const auto& [q, ok] : trace)
        ok ? max_tolerated = std::max(max_tolerated, q) : min_failed = std::min(min_failed, q);
    if (max_tolerated > min_failed)
        throw std::runtime_error("scan_threshold: non-monotone tolerance trace");
    return 0.5 * (lo + hi);
}

bool npt_and_localizable(const DensityMatrix& rho, char r) {
    if (min_pt_eigenvalue(rho, {r}).value >= -kNptTol) return false;
    LocalizationResult loc = localize(rho, r);
    return loc.pt_min_eigenvalue < -kNptTol;
}

}  // namespace

const char* to_string(ChannelKind kind) {
    return kind == ChannelKind::Depolarizing ? "depolarizing" : "phaseflip";
}

NoiseChannel NoiseChannel::make(ChannelKind kind, double q) {
    if (q < 0.0 || q > 1.0) throw std::invalid_argument("NoiseChannel: q outside [0,1]");
    NoiseChannel out;
    out.kind = kind;
    out.q = q;
    auto word = [](char letter) {
        PauliWord w(1);
        w.set_letter(0, letter);
        return w;
    };
    if (kind == ChannelKind::Depolarizing) {
        out.kraus = {{1.0 - 0.75 * q, word('I')},
                     {0.25 * q, word('X')},
                     {0.25 * q, word('Y')},
                     {0.25 * q, word('Z')}};
    } else {
        out.kraus = {{1.0 - q, word('I')}, {q, word('Z')}};
    }
    double total = 0.0;
    for (const auto& [w, _] : out.kraus) total += w;
    if (std::abs(total - 1.0) > 1e-12) throw std::logic_error("NoiseChannel: weights must sum to 1");
    return out;
}

DensityMatrix apply_channel(const NoiseChannel& channel, const DensityMatrix& rho, char qubit) {
    int pos = rho.position(qubit);
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(rho.dim(), rho.dim());
    for (const auto& [weight, word] : channel.kraus) {
        if (weight == 0.0) continue;
        PauliWord full = PauliWord::identity(rho.n_qubits());
        full.set_letter(pos, word.letter(0));
        Eigen::MatrixXcd p = full.dense();
        out += weight * (p * rho.mat * p.adjoint());
    }
    return DensityMatrix(std::move(out), rho.labels);
}

double edss_threshold(const BellDiagonalState& state, ChannelKind kind) {
    if (!is_canonical(state)) throw std::invalid_argument("edss_threshold: state is not canonical");
    if (std::abs(state.s11) <= kNptTol)
        throw std::invalid_argument("edss_threshold: no threshold exists for s11 = 0");
    BellDiagonalState mag(std::abs(state.s01), std::abs(state.s10), std::abs(state.s11));
    double s = choose_s(mag).s;
    DensityMatrix rho = build_rho_abc(state, s);
    bool send_c = state.s11 >= 0.0;
    char transmitted = send_c ? 'C' : 'A';
    char entangled_cut = send_c ? 'A' : 'C';
    return scan_threshold([&](double q) {
        DensityMatrix noisy = apply_channel(NoiseChannel::make(kind, q), rho, transmitted);
        return npt_and_localizable(noisy, entangled_cut);
    });
}

double direct_threshold(ChannelKind kind) {
    Eigen::VectorXcd phi = Eigen::VectorXcd::Zero(4);
    phi(0) = phi(3) = 1.0 / std::sqrt(2.0);
    DensityMatrix pair(phi * phi.adjoint(), {'A', 'B'});
    return scan_threshold([&](double q) {
        DensityMatrix noisy = apply_channel(NoiseChannel::make(kind, q), pair, 'B');
        return min_pt_eigenvalue(noisy, {'B'}).value < -kNptTol;
    });
}

double rho_suc_threshold(const BellDiagonalState& state, ChannelKind kind) {
    ProtocolOutcome outcome = run(state);
    if (!outcome.localized)
        throw std::invalid_argument("rho_suc_threshold: protocol produced no entanglement");
    const DensityMatrix& suc = outcome.localized->projected_state;
    return scan_threshold([&](double q) {
        DensityMatrix noisy = apply_channel(NoiseChannel::make(kind, q), suc, 'O');
        return min_pt_eigenvalue(noisy, {'O'}).value < -kNptTol;
    });
}

NoiseComparison compare_thresholds(const BellDiagonalState& state, ChannelKind kind) {
    NoiseComparison out;
    out.q_star_edss = edss_threshold(state, kind);
    out.q_star_direct = direct_threshold(kind);
    out.q_star_suc = rho_suc_threshold(state, kind);
    out.lambda_half_family = std::abs(spectrum_closed_form(state)[0] - 0.5) <= 1e-9;
    out.direct_ge_edss = out.q_star_direct >= out.q_star_edss - 1e-6;
    out.edss_ge_suc = out.q_star_edss >= out.q_star_suc - 1e-6;
    return out;
}

BellDiagonalState lambda_half_state(double s_target) {
    if (s_target <= 0.0 || s_target > 1.0)
        throw std::invalid_argument("lambda_half_state: s_target outside (0,1]");
    std::array<double, 4> spectrum;
    if (s_target >= 1.0 / 3.0) {
        spectrum = {0.5, 0.5 * s_target, 0.25 * (1.0 - s_target), 0.25 * (1.0 - s_target)};
    } else {
        double l3 = 0.5 / (2.0 + s_target);
        spectrum = {0.5, l3, l3, s_target * l3};
    }
    return from_spectrum(spectrum);
}

}  // namespace edss
