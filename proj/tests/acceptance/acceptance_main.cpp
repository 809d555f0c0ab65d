// Acceptance suite: one pass/fail line per criterion, exit 0 iff all pass.
// Tolerances and budgets are pinned here and in the checks themselves.

#include <cstdio>
#include <functional>
#include <vector>

#include "edss/verify.hpp"

int main() {
    using edss::CheckResult;
    std::vector<std::pair<const char*, std::function<CheckResult()>>> criteria = {
        {"criterion 1 (golden optimum)", [] { return edss::check_golden_optimum(); }},
        {"criterion 2 (closed form vs oracle)", [] { return edss::check_closed_form_grid(0.05, 0.1); }},
        {"criterion 3 (distribution coverage)", [] { return edss::check_distribution_coverage(0.05); }},
        {"criterion 4 (s11 = 0 impossibility)", [] { return edss::check_impossibility(1000); }},
        {"criterion 5 (separable decompositions)", [] { return edss::check_decomposition_grid(0.05, 0.1); }},
        {"criterion 6 (entanglement localization)", [] { return edss::check_localization(0.05); }},
        {"criterion 7 (PT gap bound)", [] { return edss::check_gap_bound(10000); }},
        {"criterion 8 (noise thresholds)", [] { return edss::check_noise_thresholds(); }},
        {"criterion 9 (bounds ordering)", [] { return edss::check_bounds_order(0.05); }},
        {"criterion 10 (conjecture probe)", [] { return edss::check_conjecture(50, 32, 5000); }},
    };

    bool all_pass = true;
    for (const auto& [label, fn] : criteria) {
        CheckResult result = fn();
        all_pass &= result.pass;
        std::printf("[%s] %s: %s\n", result.pass ? "PASS" : "FAIL", label, result.detail.c_str());
        std::fflush(stdout);
    }
    return all_pass ? 0 : 1;
}
