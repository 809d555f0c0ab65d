#include "edss/optimizer.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>

#include "edss/threading.hpp"

namespace edss {

namespace {

using Matrix8 = Eigen::Matrix<cx, 8, 8>;

constexpr double kFeasTol = 1e-9;
constexpr double kBox = std::numbers::pi;
constexpr int kDim = 17;  // 16 generator coefficients + s

Eigen::Matrix2cd pauli2(int letter) {
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
    switch (letter) {
        case 0: m.setIdentity(); break;
        case 1: m << 0, 1, 1, 0; break;
        case 2: m << 0, cx(0, -1), cx(0, 1), 0; break;
        case 3: m << 1, 0, 0, -1; break;
    }
    return m;
}

const std::array<Eigen::Matrix4cd, 16>& pauli_basis_ac() {
    static const std::array<Eigen::Matrix4cd, 16> basis = [] {
        std::array<Eigen::Matrix4cd, 16> out;
        for (int a = 0; a < 4; ++a)
            for (int c = 0; c < 4; ++c) {
                Eigen::Matrix4cd m;
                Eigen::Matrix2cd pa = pauli2(a), pc = pauli2(c);
                for (int i = 0; i < 2; ++i)
                    for (int j = 0; j < 2; ++j) m.block<2, 2>(2 * i, 2 * j) = pa(i, j) * pc;
                out[4 * a + c] = m;
            }
        return out;
    }();
    return basis;
}

/// Shared fast path: dense PT minima of U_AC (rho_AB (x) rho_C) U_AC^dagger.
struct DenseObjective {
    Eigen::Matrix4cd rho_ab;

    explicit DenseObjective(const BellDiagonalState& state) {
        rho_ab = to_density_matrix(state).mat;
    }

    std::pair<double, double> operator()(const Eigen::Matrix4cd& u, double s) const {
        Matrix8 rho = Matrix8::Zero();
        rho.block<4, 4>(0, 0) = 0.5 * rho_ab;
        rho.block<4, 4>(0, 4) = 0.5 * s * rho_ab;
        rho.block<4, 4>(4, 0) = 0.5 * s * rho_ab;
        rho.block<4, 4>(4, 4) = 0.5 * rho_ab;
        Matrix8 full = Matrix8::Zero();  // row/col index (c a b); u indexed by (a c)
        for (int c = 0; c < 8; ++c) {
            int a_bit = (c >> 1) & 1, c_bit = (c >> 2) & 1, b_bit = c & 1;
            int sub = a_bit * 2 + c_bit;
            for (int sr = 0; sr < 4; ++sr) {
                int row = ((sr & 1) << 2) | (((sr >> 1) & 1) << 1) | b_bit;
                full(row, c) = u(sr, sub);
            }
        }
        Matrix8 m = full * rho * full.adjoint();
        Matrix8 pt_c, pt_a;
        for (int r = 0; r < 8; ++r) {
            for (int col = 0; col < 8; ++col) {
                int rc = (r & 3) | (col & 4), cc = (col & 3) | (r & 4);
                pt_c(rc, cc) = m(r, col);
                int ra = (r & 5) | (col & 2), ca = (col & 5) | (r & 2);
                pt_a(ra, ca) = m(r, col);
            }
        }
        Eigen::SelfAdjointEigenSolver<Matrix8> sc(pt_c, Eigen::EigenvaluesOnly);
        Eigen::SelfAdjointEigenSolver<Matrix8> sa(pt_a, Eigen::EigenvaluesOnly);
        return {sc.eigenvalues()(0), sa.eigenvalues()(0)};
    }
};

struct Incumbent {
    double lambda_a = std::numeric_limits<double>::infinity();
    double s = 0.0;
    UnitaryParams params;
    bool feasible = false;
};

struct RestartOutcome {
    Incumbent best;
    long evaluations = 0;
};

Eigen::VectorXd clamp_point(Eigen::VectorXd x) {
    for (int i = 0; i < 16; ++i) x(i) = std::clamp(x(i), -kBox, kBox);
    x(16) = std::clamp(x(16), 0.0, 1.0);
    return x;
}

/// Nelder-Mead on the penalized objective; tracks the best feasible point seen.
void nelder_mead(const DenseObjective& dense, Eigen::VectorXd start, double step, double penalty,
                 long budget, long& used, Incumbent& best) {
    auto evaluate = [&](const Eigen::VectorXd& raw) {
        Eigen::VectorXd x = clamp_point(raw);
        UnitaryParams p;
        for (int i = 0; i < 16; ++i) p.generator[i] = x(i);
        auto [lc, la] = dense(unitary_from_params(p), x(16));
        ++used;
        if (lc >= -kFeasTol && la < best.lambda_a) {
            best.lambda_a = la;
            best.s = x(16);
            best.params = p;
            best.feasible = true;
        }
        return la + penalty * std::max(0.0, -lc);
    };

    std::vector<Eigen::VectorXd> pts(kDim + 1, start);
    std::vector<double> vals(kDim + 1);
    for (int i = 1; i <= kDim; ++i) pts[i](i - 1) += (i - 1 == 16) ? 0.2 * step : step;
    for (int i = 0; i <= kDim && used < budget; ++i) vals[i] = evaluate(pts[i]);

    while (used + kDim + 2 <= budget) {
        std::vector<int> order(kDim + 1);
        for (int i = 0; i <= kDim; ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](int a, int b) { return vals[a] < vals[b]; });
        int worst = order[kDim], second = order[kDim - 1], top = order[0];
        if (vals[worst] - vals[top] < 1e-13) break;

        Eigen::VectorXd centroid = Eigen::VectorXd::Zero(kDim);
        for (int i = 0; i <= kDim; ++i)
            if (i != worst) centroid += pts[i];
        centroid /= kDim;

        Eigen::VectorXd reflected = centroid + (centroid - pts[worst]);
        double fr = evaluate(reflected);
        if (fr < vals[top]) {
            Eigen::VectorXd expanded = centroid + 2.0 * (centroid - pts[worst]);
            double fe = evaluate(expanded);
            if (fe < fr) {
                pts[worst] = expanded;
                vals[worst] = fe;
            } else {
                pts[worst] = reflected;
                vals[worst] = fr;
            }
        } else if (fr < vals[second]) {
            pts[worst] = reflected;
            vals[worst] = fr;
        } else {
            Eigen::VectorXd contracted = centroid + 0.5 * (pts[worst] - centroid);
            double fc = evaluate(contracted);
            if (fc < vals[worst]) {
                pts[worst] = contracted;
                vals[worst] = fc;
            } else {
                for (int i = 0; i <= kDim; ++i) {
                    if (i == top || used >= budget) continue;
                    pts[i] = pts[top] + 0.5 * (pts[i] - pts[top]);
                    vals[i] = evaluate(pts[i]);
                }
            }
        }
    }
}

}  // namespace

Eigen::Matrix4cd unitary_from_params(const UnitaryParams& params) {
    Eigen::Matrix4cd h = Eigen::Matrix4cd::Zero();
    const auto& basis = pauli_basis_ac();
    for (int k = 0; k < 16; ++k)
        if (params.generator[k] != 0.0) h += params.generator[k] * basis[k];
    Eigen::Matrix4cd a = cx(0, 1) * h;
    double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
    int squarings = 0;
    while (norm > 0.5) {
        norm *= 0.5;
        ++squarings;
    }
    Eigen::Matrix4cd b = a / double(1 << squarings);
    Eigen::Matrix4cd u = Eigen::Matrix4cd::Identity();
    Eigen::Matrix4cd power = Eigen::Matrix4cd::Identity();
    double factorial = 1.0;
    for (int k = 1; k <= 18; ++k) {
        power = power * b;
        factorial *= k;
        u += power / factorial;
    }
    for (int k = 0; k < squarings; ++k) u = u * u;
    if ((u.adjoint() * u - Eigen::Matrix4cd::Identity()).cwiseAbs().maxCoeff() > 1e-10)
        throw std::runtime_error("unitary_from_params: exponential is not unitary");
    return u;
}

UnitaryParams cz_params() {
    UnitaryParams p;
    constexpr double quarter = std::numbers::pi / 4.0;
    p.generator[0] = quarter;    // II
    p.generator[3] = -quarter;   // Z on C
    p.generator[12] = -quarter;  // Z on A
    p.generator[15] = quarter;   // ZZ
    return p;
}

std::pair<double, double> objective(const BellDiagonalState& state, const UnitaryParams& params,
                                    double s) {
    if (s < 0.0 || s > 1.0) throw std::invalid_argument("objective: s outside [0,1]");
    return DenseObjective(state)(unitary_from_params(params), s);
}

OptimizationResult optimize(const BellDiagonalState& state, int restarts, long budget_per_restart,
                            std::uint64_t seed) {
    if (!is_canonical(state)) throw std::invalid_argument("optimize: state is not canonical");
    if (std::abs(state.s11) <= 1e-12)
        throw std::invalid_argument("optimize: s11 = 0 admits no entanglement distribution");
    if (restarts < 1 || budget_per_restart < kDim + 2)
        throw std::invalid_argument("optimize: bad restart or budget count");

    DenseObjective dense(state);
    double cz_s = choose_s(state).s;
    double cz_baseline = closed_form_pt(state, cz_s).second;
    std::array<double, 4> lam = spectrum_closed_form(state);
    double ratio = lam[2] > 0.0 ? lam[3] / lam[2] : 1.0;

    std::vector<RestartOutcome> outcomes(restarts);
    parallel_for_index(restarts, [&](int k) {
        RestartOutcome& out = outcomes[k];
        Eigen::VectorXd start(kDim);
        double step;
        if (k == 0) {
            UnitaryParams cz = cz_params();
            for (int i = 0; i < 16; ++i) start(i) = cz.generator[i];
            start(16) = cz_s;
            step = 0.1;
        } else {
            std::mt19937_64 rng(seed + 0x100001b3ull * std::uint64_t(k));
            std::uniform_real_distribution<double> box(-kBox, kBox);
            for (int i = 0; i < 16; ++i) start(i) = box(rng);
            start(16) = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
            step = 0.4;
        }
        // One penalty continuation step: stiffen the carrier constraint and re-polish.
        long phase1 = (budget_per_restart * 3) / 5;
        nelder_mead(dense, start, step, 1e3, phase1, out.evaluations, out.best);
        Eigen::VectorXd refine = start;
        if (out.best.feasible) {
            for (int i = 0; i < 16; ++i) refine(i) = out.best.params.generator[i];
            refine(16) = out.best.s;
        }
        nelder_mead(dense, refine, 0.25 * step, 1e4, budget_per_restart, out.evaluations, out.best);
    });

    OptimizationResult result;
    result.cz_baseline = cz_baseline;
    result.slack = 0.25 * (1.0 - ratio) * state.s11;
    for (int k = 0; k < restarts; ++k) {
        result.evaluations += outcomes[k].evaluations;
        const Incumbent& inc = outcomes[k].best;
        if (inc.feasible && (result.best_restart < 0 || inc.lambda_a < result.best_lambda_a_bc)) {
            result.best_lambda_a_bc = inc.lambda_a;
            result.best_s = inc.s;
            result.best_params = inc.params;
            result.best_restart = k;
        }
    }
    if (result.best_restart < 0)
        throw std::runtime_error("optimize: budget exhausted before any feasible point");
    return result;
}

double dephasing_upper_bound(const BellDiagonalState& state) {
    DensityMatrix rho = to_density_matrix(state);
    Eigen::MatrixXcd zb = pauli_from_letters({'A', 'B'}, "IZ").dense();
    DensityMatrix dephased(0.5 * (rho.mat + zb * rho.mat * zb), rho.labels);
    Eigen::VectorXd chi = hermitian_spectrum(dephased).values;
    if (std::abs(chi(0) - chi(1)) > 1e-12)
        throw std::logic_error("dephasing_upper_bound: dephased state is not in the useless set");
    return measures(state).i_class;
}

}  // namespace edss
