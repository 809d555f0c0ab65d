#include "edss/protocol.hpp"

#include <algorithm>
#include <cmath>

namespace edss {

namespace {

constexpr double kTol = 1e-12;

BellDiagonalState magnitudes(const BellDiagonalState& st) {
    return BellDiagonalState(std::abs(st.s01), std::abs(st.s10), std::abs(st.s11));
}

}  // namespace

const char* to_string(Branch branch) { return branch == Branch::SendC ? "SendC" : "SendA"; }

DensityMatrix build_rho_abc(const BellDiagonalState& state, double s) {
    if (s < 0.0 || s > 1.0) throw std::invalid_argument("build_rho_abc: s outside [0,1]");
    Eigen::MatrixXcd rho_c(2, 2);
    rho_c << 0.5, 0.5 * s, 0.5 * s, 0.5;
    DensityMatrix product = tensor_product(DensityMatrix(rho_c, {'C'}), to_density_matrix(state));
    // CZ_{AC} is diagonal, so conjugation is an entry-wise sign flip.
    Eigen::Index dim = product.dim();
    Eigen::VectorXd diag(dim);
    for (Eigen::Index idx = 0; idx < dim; ++idx) {
        int c = (idx >> 2) & 1, a = (idx >> 1) & 1;
        diag(idx) = (c & a) ? -1.0 : 1.0;
    }
    for (Eigen::Index i = 0; i < dim; ++i)
        for (Eigen::Index j = 0; j < dim; ++j) product.mat(i, j) *= diag(i) * diag(j);
    return product;
}

DensityMatrix apply_interaction(const BellDiagonalState& state, const Eigen::Matrix4cd& u, double s) {
    if (s < 0.0 || s > 1.0) throw std::invalid_argument("apply_interaction: s outside [0,1]");
    Eigen::MatrixXcd rho_c(2, 2);
    rho_c << 0.5, 0.5 * s, 0.5 * s, 0.5;
    DensityMatrix product = tensor_product(DensityMatrix(rho_c, {'C'}), to_density_matrix(state));
    Eigen::MatrixXcd embedded = embed_two_qubit_unitary(u, {'A', 'C'}, product.labels);
    return conjugate(product, embedded);
}

Eigen::Matrix4cd cz_gate() {
    Eigen::Matrix4cd cz = Eigen::Matrix4cd::Identity();
    cz(3, 3) = -1.0;
    return cz;
}

Eigen::Matrix4cd random_unitary4(std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::Matrix4cd g;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) g(i, j) = cx(gauss(rng), gauss(rng));
    Eigen::HouseholderQR<Eigen::Matrix4cd> qr(g);
    Eigen::Matrix4cd q = qr.householderQ();
    Eigen::Matrix4cd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < 4; ++i) q.col(i) *= r(i, i) / std::abs(r(i, i));
    return q;
}

std::pair<double, double> closed_form_pt(const BellDiagonalState& state, double s) {
    double prefix = 1.0 - state.s10 - s * (1.0 + state.s10);
    double x = (1.0 - s) * state.s01;
    double y = (1.0 + s) * state.s11;
    return {(prefix - std::abs(x - y)) / 8.0, (prefix - std::abs(x + y)) / 8.0};
}

ChosenS choose_s(const BellDiagonalState& state) {
    std::array<double, 4> l = spectrum_closed_form(state);
    ChosenS out;
    if (l[2] <= kTol) {
        // lambda_3 = 0 forces lambda_4 = 0 and the ratio lambda_4/lambda_3 drops out.
        out.degenerate = true;
        out.s = l[1] / l[0];
    } else {
        out.s = std::min(l[3] / l[2], l[1] / l[0]);
    }
    out.s = std::clamp(out.s, 0.0, 1.0);
    return out;
}

ProtocolOutcome run(const BellDiagonalState& state) {
    if (!is_canonical(state))
        throw std::invalid_argument("run: state is not canonical; call canonicalize first");
    ProtocolOutcome out;
    out.input = state;
    BellDiagonalState mag = magnitudes(state);
    ChosenS chosen = choose_s(mag);
    out.s = chosen.s;
    out.s_degenerate = chosen.degenerate;
    out.branch = state.s11 < -kTol ? Branch::SendA : Branch::SendC;
    std::tie(out.lambda_c_ab, out.lambda_a_bc) = closed_form_pt(state, out.s);
    out.gap_bound = 0.25 * (1.0 + out.s) * std::abs(state.s11);

    std::array<double, 4> lam = spectrum_closed_form(mag);
    out.success_probability = 0.5 * (1.0 + out.s * (2.0 * lam[0] + 2.0 * lam[1] - 1.0));

    double entangled_min = out.branch == Branch::SendC ? out.lambda_a_bc : out.lambda_c_ab;
    if (std::abs(state.s11) <= kTol || entangled_min >= -kTol) {
        out.ent_lower_bound = 0.0;
        return out;
    }

    DensityMatrix rho = build_rho_abc(state, out.s);
    char r = out.branch == Branch::SendC ? 'A' : 'C';
    out.localized = localize(rho, r);

    if (out.branch == Branch::SendC) {
        double chi = (1.0 + out.s) * lam[0] / (2.0 * out.success_probability);
        out.ent_lower_bound =
            std::max(0.0, out.success_probability * (1.0 - binary_entropy(std::min(chi, 1.0))));
    } else {
        // The SendA projection has its own success probability; the bound keeps the same
        // shape with the localized state's top eigenvalue as the entropy argument.
        out.success_probability = out.localized->success_probability;
        double chi = hermitian_spectrum(out.localized->projected_state).values(0);
        out.ent_lower_bound =
            std::max(0.0, out.success_probability * (1.0 - binary_entropy(std::min(chi, 1.0))));
    }
    return out;
}

bool pt_spectra_coincide(const BellDiagonalState& state, const Eigen::Matrix4cd& u, double s,
                            double tol) {
    if (std::abs(state.s11) > kTol)
        throw std::invalid_argument("pt_spectra_coincide: requires s11 = 0");
    DensityMatrix rho = apply_interaction(state, u, s);
    Eigen::VectorXd over_a = hermitian_spectrum(partial_transpose(rho, {'A'})).values;
    Eigen::VectorXd over_ab = hermitian_spectrum(partial_transpose(rho, {'A', 'B'})).values;
    Eigen::VectorXd over_c = hermitian_spectrum(partial_transpose(rho, {'C'})).values;
    return (over_a - over_ab).cwiseAbs().maxCoeff() <= tol &&
           (over_a - over_c).cwiseAbs().maxCoeff() <= tol;
}

std::pair<double, double> gap_bound_check(const BellDiagonalState& state, const Eigen::Matrix4cd& u,
                                          double s) {
    DensityMatrix rho = apply_interaction(state, u, s);
    double lambda_a = min_eigenvalue(partial_transpose(rho, {'A'}).mat);
    double lambda_c = min_eigenvalue(partial_transpose(rho, {'C'}).mat);
    return {std::abs(lambda_a - lambda_c), 0.25 * (1.0 + s) * std::abs(state.s11)};
}

}  // namespace edss
