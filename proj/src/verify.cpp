#include "edss/verify.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <mutex>
#include <random>
#include <sstream>

#include "edss/noise.hpp"
#include "edss/optimizer.hpp"
#include "edss/protocol.hpp"
#include "edss/separability.hpp"
#include "edss/threading.hpp"

namespace edss {

namespace {

std::string describe(const BellDiagonalState& st) {
    std::ostringstream os;
    os << "(" << st.s01 << ", " << st.s10 << ", " << st.s11 << ")";
    return os.str();
}

BellDiagonalState sample_state(std::mt19937_64& rng) {
    std::exponential_distribution<double> exp_dist(1.0);
    std::array<double, 4> lam;
    double total = 0.0;
    for (double& v : lam) {
        v = exp_dist(rng);
        total += v;
    }
    for (double& v : lam) v /= total;
    std::sort(lam.begin(), lam.end(), std::greater<double>());
    lam[3] = 1.0 - lam[0] - lam[1] - lam[2];
    return from_spectrum(lam);
}

double dense_min_pt(const DensityMatrix& rho, char cut) {
    return min_eigenvalue(partial_transpose(rho, {cut}).mat);
}

}  // namespace

std::vector<BellDiagonalState> canonical_grid(double step, bool include_negative_s11) {
    std::vector<BellDiagonalState> grid;
    int n = static_cast<int>(std::round(1.0 / step));
    for (int i = 0; i <= n; ++i) {
        for (int j = 0; j <= i; ++j) {
            for (int k = 0; k <= j; ++k) {
                double s01 = i * step, s10 = j * step, s11 = k * step;
                auto valid = [&](double c11) {
                    for (int a : {1, -1})
                        for (int b : {1, -1})
                            if (1.0 + a * s01 + b * s10 + a * b * c11 < -1e-12) return false;
                    return true;
                };
                if (valid(s11)) grid.emplace_back(s01, s10, s11);
                if (include_negative_s11 && k > 0 && valid(-s11)) grid.emplace_back(s01, s10, -s11);
            }
        }
    }
    return grid;
}

std::vector<double> interaction_grid(double step) {
    std::vector<double> out;
    int n = static_cast<int>(std::round(1.0 / step));
    for (int i = 0; i <= n; ++i) out.push_back(std::min(1.0, i * step));
    return out;
}

CheckResult check_golden_optimum() {
    auto start = std::chrono::steady_clock::now();
    BellDiagonalState golden(0.5, 0.25, 0.25);
    ProtocolOutcome outcome = run(golden);
    double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::ostringstream detail;
    detail << "s=" << outcome.s << " lambda_c=" << outcome.lambda_c_ab
           << " lambda_a=" << outcome.lambda_a_bc << " p=" << outcome.success_probability
           << " elapsed=" << elapsed << "s";
    bool pass = std::abs(outcome.s - 0.5) <= 1e-12 && std::abs(outcome.lambda_c_ab) < 1e-12 &&
                std::abs(outcome.lambda_a_bc + 1.0 / 16.0) <= 1e-12 &&
                std::abs(outcome.success_probability - 5.0 / 8.0) <= 1e-12 && elapsed < 1.0;
    return {"golden optimum (1/2,1/4,1/4)", pass, detail.str()};
}

CheckResult check_closed_form_grid(double coeff_step, double s_step) {
    std::vector<BellDiagonalState> grid = canonical_grid(coeff_step, true);
    std::vector<double> svals = interaction_grid(s_step);
    std::vector<double> worst(grid.size(), 0.0);
    parallel_for_index(static_cast<int>(grid.size()), [&](int i) {
        double local = 0.0;
        for (double s : svals) {
            auto [lc, la] = closed_form_pt(grid[i], s);
            DensityMatrix rho = build_rho_abc(grid[i], s);
            local = std::max(local, std::abs(lc - dense_min_pt(rho, 'C')));
            local = std::max(local, std::abs(la - dense_min_pt(rho, 'A')));
        }
        worst[i] = local;
    });
    double max_err = 0.0;
    for (double w : worst) max_err = std::max(max_err, w);
    std::ostringstream detail;
    detail << grid.size() * svals.size() << " points, max |closed - dense| = " << max_err;
    return {"closed forms vs dense oracle", max_err <= 1e-10, detail.str()};
}

CheckResult check_distribution_coverage(double coeff_step) {
    std::vector<BellDiagonalState> grid = canonical_grid(coeff_step, false);
    long covered = 0, exceptions = 0;
    std::string witness;
    for (const auto& st : grid) {
        if (st.s01 <= 0.0 || st.s10 <= 0.0 || st.s11 <= 0.0) continue;
        if (spectrum_closed_form(st)[0] > 0.5 + 1e-12) continue;
        ++covered;
        ProtocolOutcome outcome = run(st);
        if (!(outcome.lambda_c_ab >= -1e-12 && outcome.lambda_a_bc < 0.0)) {
            ++exceptions;
            if (witness.empty()) witness = " first exception at " + describe(st);
        }
    }
    std::ostringstream detail;
    detail << covered << " states with all s_x > 0 and lambda_1 <= 1/2, " << exceptions
           << " exceptions" << witness;
    return {"distribution succeeds on every usable state", exceptions == 0 && covered > 0,
            detail.str()};
}

CheckResult check_impossibility(int samples, std::uint64_t seed) {
    std::atomic<int> spectra_failures{0}, npt_failures{0};
    const int workers = 8;  // fixed stream partition, independent of the thread budget
    parallel_for_index(workers, [&](int w) {
        std::mt19937_64 rng(seed + 1000003ull * std::uint64_t(w));
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        for (int i = w; i < samples; i += workers) {
            double a = unit(rng), b = unit(rng);
            if (a + b > 1.0) {
                a = 1.0 - a;
                b = 1.0 - b;
            }
            BellDiagonalState st(std::max(a, b), std::min(a, b), 0.0);
            Eigen::Matrix4cd u = random_unitary4(rng);
            double s = unit(rng);
            if (!pt_spectra_coincide(st, u, s)) ++spectra_failures;
            DensityMatrix rho = apply_interaction(st, u, s);
            double la = dense_min_pt(rho, 'A'), lc = dense_min_pt(rho, 'C');
            if (la < -1e-10 && lc >= -1e-10) ++npt_failures;
        }
    });
    std::ostringstream detail;
    detail << samples << " random (s01, s10, 0) states with random U and s; "
           << spectra_failures.load() << " spectra mismatches, " << npt_failures.load()
           << " NPT-opposite-PPT events";
    return {"s11 = 0 forbids distribution", spectra_failures == 0 && npt_failures == 0,
            detail.str()};
}

CheckResult check_decomposition_grid(double coeff_step, double s_step) {
    std::vector<BellDiagonalState> grid = canonical_grid(coeff_step, false);
    std::vector<double> svals = interaction_grid(s_step);
    std::atomic<long> checked_c{0}, checked_a{0};
    std::vector<std::string> failures(grid.size());
    parallel_for_index(static_cast<int>(grid.size()), [&](int i) {
        const BellDiagonalState& st = grid[i];
        for (double s : svals) {
            auto [lc, la] = closed_form_pt(st, s);
            DensityMatrix rho = build_rho_abc(st, s);
            for (char cut : {'C', 'A'}) {
                double cut_min = cut == 'C' ? lc : la;
                if (cut_min < -1e-12) continue;
                cut == 'C' ? ++checked_c : ++checked_a;
                SeparableDecomposition dec = separable_decomposition(st, s, cut);
                if ((dec.target.mat - rho.mat).cwiseAbs().maxCoeff() > 1e-13) {
                    failures[i] = "graph target deviates from the CZ construction at " + describe(st);
                    return;
                }
                DecompositionCheck check = verify_decomposition(dec);
                if (!check.ok) {
                    std::ostringstream os;
                    os << "state " << describe(st) << " s=" << s << " cut=" << cut << ": "
                       << check.failure;
                    failures[i] = os.str();
                    return;
                }
            }
        }
    });
    std::string witness;
    for (const auto& f : failures)
        if (!f.empty()) {
            witness = f;
            break;
        }
    std::ostringstream detail;
    detail << checked_c.load() << " PPT carrier cuts (R=C) and " << checked_a.load()
           << " PPT A-cuts certified";
    if (!witness.empty()) detail << "; FIRST FAILURE: " << witness;
    return {"explicit separable decompositions certify", witness.empty(), detail.str()};
}

CheckResult check_localization(double coeff_step) {
    BellDiagonalState golden(0.5, 0.25, 0.25);
    ProtocolOutcome g = run(golden);
    bool golden_ok = g.localized && std::abs(g.localized->pt_min_eigenvalue + 0.1) <= 1e-10;

    std::vector<BellDiagonalState> grid = canonical_grid(coeff_step, true);
    std::vector<std::string> failures(grid.size());
    std::atomic<long> localized_count{0};
    parallel_for_index(static_cast<int>(grid.size()), [&](int i) {
        const BellDiagonalState& st = grid[i];
        ProtocolOutcome outcome = run(st);
        if (!outcome.localized) return;
        ++localized_count;
        char r = outcome.branch == Branch::SendC ? 'A' : 'C';
        DensityMatrix rho = build_rho_abc(st, outcome.s);
        double lambda_r = dense_min_pt(rho, r);
        const LocalizationResult& loc = *outcome.localized;
        double expected = lambda_r / loc.success_probability;
        if (std::abs(loc.pt_min_eigenvalue - expected) > 1e-10)
            failures[i] = "pt_min != lambda_R / p at " + describe(st);
        else if (loc.pt_min_eigenvalue >= -1e-12)
            failures[i] = "localized state is not NPT at " + describe(st);
    });
    std::string witness;
    for (const auto& f : failures)
        if (!f.empty()) {
            witness = f;
            break;
        }
    std::ostringstream detail;
    detail << "golden pt_min = " << (g.localized ? g.localized->pt_min_eigenvalue : 0.0) << "; "
           << localized_count.load() << " grid localizations";
    if (!witness.empty()) detail << "; FIRST FAILURE: " << witness;
    return {"localization collapses NPT onto two qubits", golden_ok && witness.empty(),
            detail.str()};
}

CheckResult check_negative_branch(double coeff_step) {
    std::vector<BellDiagonalState> grid = canonical_grid(coeff_step, true);
    long covered = 0, exceptions = 0;
    std::string witness;
    for (const auto& st : grid) {
        if (st.s11 >= 0.0) continue;
        std::array<double, 4> lam = spectrum_closed_form(st);
        if (lam[0] + lam[3] >= 0.5 - 1e-12) continue;
        if (lam[0] > 0.5 + 1e-12) continue;
        ++covered;
        ProtocolOutcome outcome = run(st);
        bool ok = outcome.branch == Branch::SendA && outcome.lambda_a_bc >= -1e-12 &&
                  outcome.lambda_c_ab < 0.0 && outcome.localized &&
                  outcome.localized->pt_min_eigenvalue < -1e-12;
        if (ok) {
            DensityMatrix rho = build_rho_abc(st, outcome.s);
            ok = std::abs(outcome.lambda_c_ab - dense_min_pt(rho, 'C')) <= 1e-10 &&
                 std::abs(outcome.lambda_a_bc - dense_min_pt(rho, 'A')) <= 1e-10;
        }
        if (!ok) {
            ++exceptions;
            if (witness.empty()) witness = " first exception at " + describe(st);
        }
    }
    std::ostringstream detail;
    detail << covered << " one-negative-coefficient states, " << exceptions << " exceptions"
           << witness;
    return {"negative branch succeeds by sending A", exceptions == 0 && covered > 0, detail.str()};
}

CheckResult check_gap_bound(int samples, std::uint64_t seed) {
    std::atomic<int> violations{0};
    std::mutex witness_mutex;
    std::string witness;
    const int workers = 8;  // fixed stream partition, independent of the thread budget
    parallel_for_index(workers, [&](int w) {
        std::mt19937_64 rng(seed + 7777777ull * std::uint64_t(w));
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        for (int i = w; i < samples; i += workers) {
            BellDiagonalState st = sample_state(rng);
            Eigen::Matrix4cd u = random_unitary4(rng);
            auto [gap, bound] = gap_bound_check(st, u, unit(rng));
            if (gap > bound + 1e-9) {
                ++violations;
                std::lock_guard<std::mutex> lock(witness_mutex);
                if (witness.empty()) {
                    std::ostringstream os;
                    os << "random witness at state " << describe(st) << " excess "
                       << (gap - bound);
                    witness = os.str();
                }
            }
        }
    });

    // lambda_4/lambda_3 binds for this spectrum, so the bound saturates at the chosen s.
    BellDiagonalState sat = from_spectrum({0.42, 0.30, 0.18, 0.10});
    double s_sat = choose_s(sat).s;
    auto [gap, bound] = gap_bound_check(sat, cz_gate(), s_sat);
    bool saturated = std::abs(gap - bound) <= 1e-6;

    // Known counterexample to the bound as stated for arbitrary interaction unitaries:
    // the exact identity spec(rho^T_C) = spec(rho^T_A - (1/2) s11 [U (YY (x) rho_C) U+]^T_A
    // holds, but the partial transpose can inflate the correction norm beyond
    // (1/4)(1+s)|s11|. Haar-random violation rate is about 1e-4; this pinned triple
    // (independently re-verified) exceeds the bound by 7.9e-5.
    BellDiagonalState pinned(0.61099266128981533, 0.061844092519363542, 0.0051516518312598597);
    Eigen::Matrix4cd u;
    u << cx(-0.079969246770419167, -0.16540553420310389),
        cx(0.13773979823893817, 0.30789693586788458),
        cx(0.17107521014608867, 0.27069565148788644), cx(0.68250868088813244, -0.53302175466071133),
        cx(0.56267049559146587, 0.10103682904265669), cx(0.08452226033939747, -0.13842128966793413),
        cx(0.72465040032755201, 0.30033503645952236), cx(-0.02791614895849337, 0.1754718166799086),
        cx(0.0023445193339178124, 0.052141191804359645),
        cx(-0.29999788318881287, -0.86746706469364232),
        cx(-0.12253390719013768, 0.12167057875801206),
        cx(0.26139897241641064, -0.23797111205647448),
        cx(0.47222529324973039, 0.64320950953428624),
        cx(-0.020309329459990824, 0.13043178994770638),
        cx(-0.17583732182779155, -0.47053240911209815),
        cx(0.22769930431867624, -0.20418960210592935);
    auto [pin_gap, pin_bound] = gap_bound_check(pinned, u, 0.25959112786332184);
    bool pinned_violates = pin_gap > pin_bound + 1e-9;

    std::ostringstream detail;
    detail << samples << " random (state, U, s) triples, " << violations.load() << " violations";
    if (!witness.empty()) detail << " (" << witness << ")";
    detail << "; saturation gap-bound = " << (gap - bound)
           << "; KNOWN COUNTEREXAMPLE: pinned triple gives gap " << pin_gap << " > bound "
           << pin_bound
           << " (the bound constant does not survive the partial transpose of the correction "
              "term; it does hold for the controlled-phase protocol itself)";
    return {"PT gap bounded by (1/4)(1+s)|s11|",
            violations == 0 && saturated && !pinned_violates, detail.str()};
}

CheckResult check_gap_bound_protocol(int samples, std::uint64_t seed) {
    int cz_violations = 0, weyl_violations = 0;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<char> cab = {'C', 'A', 'B'};
    for (int i = 0; i < samples; ++i) {
        BellDiagonalState st = sample_state(rng);
        double s = unit(rng);
        auto [gap_cz, bound_cz] = gap_bound_check(st, cz_gate(), s);
        if (gap_cz > bound_cz + 1e-10) ++cz_violations;

        Eigen::Matrix4cd u = random_unitary4(rng);
        auto [gap_u, bound_u] = gap_bound_check(st, u, s);
        Eigen::MatrixXcd rc(2, 2);
        rc << 0.5, 0.5 * s, 0.5 * s, 0.5;
        DensityMatrix yy = tensor_product(
            DensityMatrix(rc, {'C'}),
            DensityMatrix(pauli_from_letters({'A', 'B'}, "YY").dense(), {'A', 'B'}));
        DensityMatrix correction = conjugate(yy, embed_two_qubit_unitary(u, {'A', 'C'}, cab));
        Eigen::MatrixXcd m = 0.5 * st.s11 * partial_transpose(correction, {'A'}).mat;
        double m_norm = hermitian_spectrum(m).values.cwiseAbs().maxCoeff();
        if (gap_u > m_norm + 1e-10) ++weyl_violations;
        (void)bound_u;
    }
    BellDiagonalState sat = from_spectrum({0.42, 0.30, 0.18, 0.10});
    auto [gap, bound] = gap_bound_check(sat, cz_gate(), choose_s(sat).s);
    bool saturated = std::abs(gap - bound) <= 1e-6;
    std::ostringstream detail;
    detail << samples << " random states: " << cz_violations
           << " controlled-phase bound violations, " << weyl_violations
           << " correction-norm bound violations; saturation gap-bound = " << (gap - bound)
           << " (the stated arbitrary-U constant is refuted separately; see the acceptance "
              "suite)";
    return {"PT gap bound (controlled-phase form + correction norm)",
            cz_violations == 0 && weyl_violations == 0 && saturated, detail.str()};
}

CheckResult check_noise_thresholds() {
    std::ostringstream detail;
    bool pass = true;
    double direct = direct_threshold(ChannelKind::Depolarizing);
    pass &= std::abs(direct - 2.0 / 3.0) <= 1e-4;
    detail << "direct depolarizing q* = " << direct;
    for (double s : {0.1, 0.25, 0.5, 0.9}) {
        BellDiagonalState st = lambda_half_state(s);
        double q = edss_threshold(st, ChannelKind::Depolarizing);
        double analytic = 2.0 * s / (2.0 * s + 1.0);
        pass &= std::abs(q - analytic) <= 1e-4;
        detail << "; edss(s=" << s << ") = " << q;
    }
    BellDiagonalState golden(0.5, 0.25, 0.25);
    double pf_edss = edss_threshold(golden, ChannelKind::PhaseFlip);
    double pf_direct = direct_threshold(ChannelKind::PhaseFlip);
    pass &= std::abs(pf_edss - 0.5) <= 1e-4 && std::abs(pf_direct - 0.5) <= 1e-4;
    detail << "; phase-flip edss = " << pf_edss << ", direct = " << pf_direct;
    return {"noise thresholds match the closed forms", pass, detail.str()};
}

CheckResult check_bounds_order(double coeff_step) {
    std::vector<BellDiagonalState> grid = canonical_grid(coeff_step, true);
    std::vector<std::string> failures(grid.size());
    parallel_for_index(static_cast<int>(grid.size()), [&](int i) {
        const BellDiagonalState& st = grid[i];
        ProtocolOutcome outcome = run(st);
        double upper = dephasing_upper_bound(st);
        if (outcome.ent_lower_bound > upper + 1e-12)
            failures[i] = "lower bound exceeds discord at " + describe(st);
    });
    std::string witness;
    for (const auto& f : failures)
        if (!f.empty()) {
            witness = f;
            break;
        }
    ProtocolOutcome golden = run(BellDiagonalState(0.5, 0.25, 0.25));
    double lb = golden.ent_lower_bound;
    double ub = dephasing_upper_bound(BellDiagonalState(0.5, 0.25, 0.25));
    double lb_direct = (5.0 / 8.0) * (1.0 - binary_entropy(0.6));
    double ub_direct = 1.0 + (0.5 * std::log2(0.5) + 0.25 * std::log2(0.25) +
                              2.0 * 0.125 * std::log2(0.125)) +
                       binary_entropy(0.75);
    bool golden_ok = std::abs(lb - lb_direct) <= 1e-12 && std::abs(ub - ub_direct) <= 1e-12 &&
                     std::abs(lb - 0.0181558784) <= 1e-9 && std::abs(ub - 0.0612781245) <= 1e-9 &&
                     lb <= ub;
    std::ostringstream detail;
    detail << grid.size() << " grid states ordered; golden " << lb << " <= " << ub;
    if (!witness.empty()) detail << "; FIRST FAILURE: " << witness;
    return {"protocol lower bound below discord upper bound", witness.empty() && golden_ok,
            detail.str()};
}

CheckResult check_conjecture(int n_states, int restarts, long budget, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<BellDiagonalState> states;
    while (static_cast<int>(states.size()) < n_states) {
        BellDiagonalState st = sample_state(rng);
        std::array<double, 4> lam = spectrum_closed_form(st);
        if (st.s11 < 0.02 || lam[2] < 0.02 || lam[0] > 0.5) continue;
        states.push_back(st);
    }
    std::ostringstream detail;
    long total_evals = 0;
    std::string violation;
    for (int i = 0; i < n_states; ++i) {
        OptimizationResult result = optimize(states[i], restarts, budget, seed + 31ull * i);
        total_evals += result.evaluations;
        if (result.best_lambda_a_bc < result.cz_baseline - result.slack - 1e-6) {
            std::ostringstream os;
            os << "CONJECTURE VIOLATION at state " << describe(states[i])
               << ": optimizer reached lambda_A|BC = " << result.best_lambda_a_bc
               << " vs baseline " << result.cz_baseline << " and slack " << result.slack
               << " (restart " << result.best_restart << ", s = " << result.best_s << ")";
            violation = os.str();
            break;
        }
    }
    detail << n_states << " states x " << restarts << " restarts x " << budget
           << " evaluations (total " << total_evals << ")";
    if (!violation.empty()) detail << "; " << violation;
    return {"no unitary beats the controlled-phase protocol beyond its slack",
            violation.empty(), detail.str()};
}

std::vector<CheckResult> verify_table(double coeff_step) {
    std::vector<CheckResult> table;
    CheckResult coverage = check_distribution_coverage(coeff_step);
    CheckResult closed = check_closed_form_grid(coeff_step);
    CheckResult golden = check_golden_optimum();
    coverage.name = "distribution coverage";
    coverage.pass = coverage.pass && closed.pass && golden.pass;
    coverage.detail += "; " + closed.detail + "; " + golden.detail;

    CheckResult impossibility = check_impossibility();
    impossibility.name = "impossibility at s11 = 0";
    CheckResult localization = check_localization(coeff_step);
    localization.name = "entanglement localization";
    CheckResult decompositions = check_decomposition_grid(coeff_step);
    decompositions.name = "separable decompositions";
    CheckResult negative = check_negative_branch(coeff_step);
    negative.name = "negative branch";
    CheckResult gap = check_gap_bound_protocol();
    CheckResult bounds = check_bounds_order(coeff_step);
    gap.name = "PT gap bound";
    gap.pass = gap.pass && bounds.pass;
    gap.detail += "; " + bounds.detail;
    CheckResult noise = check_noise_thresholds();
    noise.name = "noise thresholds";

    table.push_back(std::move(impossibility));
    table.push_back(std::move(coverage));
    table.push_back(std::move(localization));
    table.push_back(std::move(decompositions));
    table.push_back(std::move(negative));
    table.push_back(std::move(gap));
    table.push_back(std::move(noise));
    return table;
}

}  // namespace edss
