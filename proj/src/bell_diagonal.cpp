#include "edss/bell_diagonal.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace edss {

namespace {

constexpr double kPositivityTol = 1e-12;
constexpr double kEntropyClamp = 1e-14;

void check_positivity(double s01, double s10, double s11) {
    for (int a : {1, -1}) {
        for (int b : {1, -1}) {
            double lam = (1.0 + a * s01 + b * s10 + a * b * s11) / 4.0;
            if (lam < -kPositivityTol) {
                std::ostringstream msg;
                msg << "BellDiagonalState: eigenvalue for sign pattern (a=" << (a > 0 ? "+" : "-")
                    << ", b=" << (b > 0 ? "+" : "-") << ") is " << lam << " < 0";
                throw std::invalid_argument(msg.str());
            }
        }
    }
}

}  // namespace

BellDiagonalState::BellDiagonalState(double s01_, double s10_, double s11_)
    : s01(s01_), s10(s10_), s11(s11_) {
    check_positivity(s01, s10, s11);
}

double binary_entropy(double x) {
    if (x < kEntropyClamp) x = 0.0;
    if (x > 1.0 - kEntropyClamp) x = 1.0;
    if (x < 0.0 || x > 1.0) throw std::invalid_argument("binary_entropy: argument outside [0,1]");
    double h = 0.0;
    if (x > 0.0) h -= x * std::log2(x);
    if (x < 1.0) h -= (1.0 - x) * std::log2(1.0 - x);
    return h;
}

std::array<double, 4> lambda_by_pattern(const BellDiagonalState& state) {
    auto lam = [&](int a, int b) {
        return (1.0 + a * state.s01 + b * state.s10 + a * b * state.s11) / 4.0;
    };
    return {lam(1, 1), lam(1, -1), lam(-1, 1), lam(-1, -1)};
}

std::array<double, 4> spectrum_closed_form(const BellDiagonalState& state) {
    check_positivity(state.s01, state.s10, state.s11);
    std::array<double, 4> lam = lambda_by_pattern(state);
    std::sort(lam.begin(), lam.end(), std::greater<double>());
    return lam;
}

BellDiagonalState from_spectrum(const std::array<double, 4>& lambdas) {
    std::array<double, 4> l = lambdas;
    double sum = l[0] + l[1] + l[2] + l[3];
    if (std::abs(sum - 1.0) > kPositivityTol)
        throw std::invalid_argument("from_spectrum: eigenvalues must sum to 1");
    for (double v : l)
        if (v < -kPositivityTol) throw std::invalid_argument("from_spectrum: negative eigenvalue");
    std::sort(l.begin(), l.end(), std::greater<double>());
    return BellDiagonalState(l[0] + l[1] - l[2] - l[3], l[0] - l[1] + l[2] - l[3],
                             l[0] - l[1] - l[2] + l[3]);
}

BellDiagonalState canonicalize(const BellDiagonalState& state, std::optional<double> protocol_s) {
    std::array<double, 3> mags = {std::abs(state.s01), std::abs(state.s10), std::abs(state.s11)};
    std::sort(mags.begin(), mags.end(), std::greater<double>());
    bool any_zero = mags[2] < 1e-300;
    int negatives = (state.s01 < 0) + (state.s10 < 0) + (state.s11 < 0);
    // Pair flips toggle two signs at once, so only the parity of the negative count is
    // invariant; a zero coefficient absorbs a leftover sign.
    bool one_negative = (negatives % 2 == 1) && !any_zero;
    if (!one_negative) return BellDiagonalState(mags[0], mags[1], mags[2]);
    double s = protocol_s.value_or(0.0);
    double s01 = mags[0], s11 = -mags[2];
    double rule = std::abs(s01 - s11 - s * s01 - s * s11);
    if (rule > 0.0) return BellDiagonalState(s01, mags[1], s11);
    return BellDiagonalState(-mags[0], mags[1], mags[2]);
}

bool is_canonical(const BellDiagonalState& state, double tol) {
    if (state.s01 < -tol || state.s10 < -tol) return false;
    return state.s01 >= state.s10 - tol && state.s10 >= std::abs(state.s11) - tol;
}

bool is_separable(const BellDiagonalState& state) {
    return spectrum_closed_form(state)[0] <= 0.5 + kPositivityTol;
}

MeasureReport measures(const BellDiagonalState& state) {
    MeasureReport report;
    report.lambda = spectrum_closed_form(state);
    const auto& l = report.lambda;
    report.i_locc = 1.0 - binary_entropy(std::max(0.5, l[0]));
    double sum_llog = 0.0;
    for (double v : l)
        if (v > kEntropyClamp) sum_llog += v * std::log2(v);
    report.i_class = 1.0 + sum_llog + binary_entropy(l[0] + l[1]);
    report.i_edss_naive = 1.0 - binary_entropy(l[0] + l[3]);
    return report;
}

DensityMatrix to_density_matrix(const BellDiagonalState& state) {
    std::vector<char> labels = {'A', 'B'};
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(4, 4);
    m += state.s10 * pauli_from_letters(labels, "XZ").dense();
    m += state.s01 * pauli_from_letters(labels, "ZX").dense();
    m += state.s11 * pauli_from_letters(labels, "YY").dense();
    return DensityMatrix(0.25 * m, labels);
}

}  // namespace edss
