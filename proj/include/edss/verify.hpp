#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "edss/bell_diagonal.hpp"

namespace edss {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

/// Canonical coefficient grid: s01 >= s10 >= |s11| on multiples of `step`, positivity
/// within 1e-12; with `include_negative_s11`, each state with s11 > 0 also appears with
/// s11 negated.
std::vector<BellDiagonalState> canonical_grid(double step, bool include_negative_s11);

/// {0, step, 2 step, ..., 1}.
std::vector<double> interaction_grid(double step);

// Acceptance checks. Defaults match the pinned acceptance parameters.
CheckResult check_golden_optimum();
CheckResult check_closed_form_grid(double coeff_step = 0.05, double s_step = 0.1);
CheckResult check_distribution_coverage(double coeff_step = 0.05);
CheckResult check_impossibility(int samples = 1000, std::uint64_t seed = 11);
CheckResult check_decomposition_grid(double coeff_step = 0.05, double s_step = 0.1);
CheckResult check_localization(double coeff_step = 0.05);
CheckResult check_negative_branch(double coeff_step = 0.05);
CheckResult check_gap_bound(int samples = 10000, std::uint64_t seed = 17);
/// The gap-bound statements that survive scrutiny: the (1/4)(1+s)|s11| form for the
/// controlled-phase gate (with saturation), and gap <= ||correction|| for arbitrary
/// unitaries. check_gap_bound additionally asserts the stated arbitrary-U constant,
/// which is refuted by a pinned counterexample.
CheckResult check_gap_bound_protocol(int samples = 2000, std::uint64_t seed = 19);
CheckResult check_noise_thresholds();
CheckResult check_bounds_order(double coeff_step = 0.05);
CheckResult check_conjecture(int n_states = 50, int restarts = 32, long budget = 5000,
                             std::uint64_t seed = 23);

/// The verification table behind the `verify` verb (everything except the optimizer probe).
std::vector<CheckResult> verify_table(double coeff_step = 0.05);

}  // namespace edss
