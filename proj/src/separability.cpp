#include "edss/separability.hpp"

#include <algorithm>
#include <cmath>

namespace edss {

namespace {

constexpr double kEigenTol = 1e-10;
constexpr double kSchmidtTol = 1e-8;

std::vector<int> other_positions(int r, int n) {
    std::vector<int> out;
    for (int p = 0; p < n; ++p)
        if (p != r) out.push_back(p);
    return out;
}

int bit_at(Eigen::Index idx, int position, int n) { return (idx >> (n - 1 - position)) & 1; }

}  // namespace

MinPtResult min_pt_eigenvalue(const DensityMatrix& rho, const std::vector<char>& subset) {
    Spectrum spec = hermitian_spectrum(partial_transpose(rho, subset), true);
    MinPtResult res;
    res.value = spec.values(spec.values.size() - 1);
    res.eigenvector = spec.vectors.col(spec.values.size() - 1);
    return res;
}

LocalizationResult localize(const DensityMatrix& rho_abc, char R, const LocalizeOptions& opts) {
    if (rho_abc.n_qubits() != 3) throw std::invalid_argument("localize: expected a three-qubit state");
    int n = 3;
    int r = rho_abc.position(R);
    Graph graph = opts.graph ? *opts.graph : chain_graph(3);

    Spectrum spec = hermitian_spectrum(partial_transpose(rho_abc, {R}), true);
    double lambda_r = spec.values(7);
    if (lambda_r >= -opts.npt_tol)
        throw std::invalid_argument("localize: nothing to localize (no negative PT eigenvalue)");

    std::vector<Eigen::Index> degenerate_set;
    for (Eigen::Index k = 7; k >= 0; --k) {
        if (spec.values(k) - lambda_r <= 1e-12)
            degenerate_set.push_back(k);
        else
            break;
    }

    LocalizationResult res;
    res.degenerate = degenerate_set.size() > 1;

    // The PT of a graph-diagonal state is diagonal in the same graph basis, so the
    // negative eigenvector should be |psi_x>; with degeneracy, take the best-overlap x.
    double best_overlap = -1.0;
    unsigned best_x = 0;
    for (unsigned x = 0; x < 8; ++x) {
        Eigen::VectorXcd psi = graph_basis_vector(graph, x);
        double overlap = 0.0;
        for (Eigen::Index k : degenerate_set) overlap += std::norm(spec.vectors.col(k).dot(psi));
        if (overlap > best_overlap) {
            best_overlap = overlap;
            best_x = x;
        }
    }

    std::vector<int> rest = other_positions(r, n);
    Eigen::VectorXcd w0(4), w1(4);
    if (best_overlap > 1.0 - 1e-8) {
        res.graph_basis = true;
        res.basis_index = best_x;
        std::vector<std::pair<int, int>> reduced_edges;
        for (const auto& [i, j] : graph.edges)
            if (i != r && j != r)
                reduced_edges.emplace_back(i == rest[0] ? 0 : 1, j == rest[0] ? 0 : 1);
        Graph reduced(2, std::move(reduced_edges));
        unsigned x_rest = static_cast<unsigned>(bit_at(best_x, rest[0], n) * 2 + bit_at(best_x, rest[1], n));
        w0 = graph_basis_vector(reduced, x_rest);
        w1 = w0;
        bool any_neighbor = false;
        for (int nb : graph.neighbors(r)) {  // Z_E = Z on the neighbours of R
            int pos = nb == rest[0] ? 0 : 1;
            for (Eigen::Index idx = 0; idx < 4; ++idx)
                if (bit_at(idx, pos, 2)) w1(idx) = -w1(idx);
            any_neighbor = true;
        }
        if (!any_neighbor) throw std::logic_error("localize: cut vertex has no neighbours");
    } else {
        if (!opts.allow_schmidt_fallback)
            throw std::invalid_argument("localize: negative eigenvector is not a graph-basis vector");
        res.graph_basis = false;
        Eigen::VectorXcd v = spec.vectors.col(7);
        Eigen::MatrixXcd reshaped(2, 4);
        for (Eigen::Index idx = 0; idx < 8; ++idx) {
            int rb = bit_at(idx, r, n);
            int bp = bit_at(idx, rest[0], n) * 2 + bit_at(idx, rest[1], n);
            reshaped(rb, bp) = v(idx);
        }
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(reshaped, Eigen::ComputeFullV);
        if (svd.singularValues()(1) < kSchmidtTol)
            throw std::invalid_argument("localize: negative eigenvector has Schmidt rank 1");
        // |v> = sum_k sigma_k |u_k>|conj(v_k)>, so the pair-side Schmidt basis is conj(V).
        w0 = svd.matrixV().col(0).conjugate();
        w1 = svd.matrixV().col(1).conjugate();
    }

    // Q = I_R (x) P with P = |0><w0| + |1><w1| on the pair opposite R; output order (R, O).
    Eigen::MatrixXcd q = Eigen::MatrixXcd::Zero(4, 8);
    for (Eigen::Index idx = 0; idx < 8; ++idx) {
        int rb = bit_at(idx, r, n);
        int bp = bit_at(idx, rest[0], n) * 2 + bit_at(idx, rest[1], n);
        q(rb * 2 + 0, idx) = std::conj(w0(bp));
        q(rb * 2 + 1, idx) = std::conj(w1(bp));
    }
    Eigen::MatrixXcd projected = q * rho_abc.mat * q.adjoint();
    double p = projected.trace().real();
    if (p <= 0) throw std::runtime_error("localize: projection has zero success probability");
    res.success_probability = p;
    res.projected_state = DensityMatrix(projected / p, {R, 'O'});
    res.pt_min_eigenvalue = min_pt_eigenvalue(res.projected_state, {R}).value;
    return res;
}

GraphDiagonalState protocol_graph_state(const BellDiagonalState& st, double s) {
    Eigen::VectorXd coeffs(8);
    // Index (x_C x_A x_B) as an integer; the x_C = 1 sector carries a factor s.
    coeffs(0) = 1.0;
    coeffs(1) = st.s01;
    coeffs(2) = st.s10;
    coeffs(3) = st.s11;
    coeffs(4) = s;
    coeffs(5) = s * st.s01;
    coeffs(6) = s * st.s10;
    coeffs(7) = s * st.s11;
    return GraphDiagonalState(chain_graph(3), std::move(coeffs));
}

namespace {

DecompositionTerm make_term(std::string label, const std::vector<char>& labels,
                            std::vector<std::pair<double, std::string>> entries) {
    DecompositionTerm term;
    term.label = std::move(label);
    for (auto& [coeff, letters] : entries)
        term.words.emplace_back(coeff, pauli_from_letters(labels, letters));
    return term;
}

}  // namespace

SeparableDecomposition separable_decomposition(const BellDiagonalState& state, double s, char cut) {
    if (cut != 'C' && cut != 'A') throw std::invalid_argument("separable_decomposition: cut must be C or A");
    if (s < 0.0 || s > 1.0) throw std::invalid_argument("separable_decomposition: s outside [0,1]");
    if (!is_canonical(state))
        throw std::invalid_argument("separable_decomposition: canonical coefficient ordering required");

    GraphDiagonalState gs = protocol_graph_state(state, s);
    unsigned z = cut == 'C' ? 0b100u : 0b010u;
    double cut_min = pt_min_coefficient(gs, z).value / 8.0;
    if (cut_min < -1e-12)
        throw std::invalid_argument("no separable decomposition is claimed for an NPT cut");

    SeparableDecomposition out;
    out.input = state;
    out.s = s;
    out.cut = cut;
    out.labels = {'C', 'A', 'B'};
    const double s01 = state.s01, s10 = state.s10, s11 = state.s11;
    const auto& L = out.labels;

    if (cut == 'C') {
        double residual = s01 - s11 - s * s01 - s * s11;
        double floor8 = 1.0 - s10 - s * (1.0 + s10) - std::abs(residual);
        out.terms.push_back(make_term("identity floor", L, {{floor8, "III"}}));
        out.terms.push_back(make_term("Z_C group", L,
                                      {{s11, "IZX"}, {s10, "ZXZ"}, {s11, "ZYY"}, {s10, "III"}}));
        out.terms.push_back(make_term("X_C group", L,
                                      {{s * s01, "IZX"}, {s, "XZI"}, {s * s01, "XIX"}, {s, "III"}}));
        out.terms.push_back(make_term(
            "Y_C group", L,
            {{s * s11, "IZX"}, {s * s10, "YYZ"}, {-s * s11, "YXY"}, {s * s10, "III"}}));
        out.terms.push_back(make_term("residual", L, {{residual, "IZX"}, {std::abs(residual), "III"}}));
    } else {
        double floor8 = 1.0 - s01 - s10 - s11 - s * (1.0 - s01 + s10 + s11);
        out.terms.push_back(make_term("identity floor", L, {{floor8, "III"}}));
        out.terms.push_back(make_term(
            "Z_A group", L,
            {{s * s01, "XIX"}, {s, "XZI"}, {s01, "IZX"}, {s + s01 - s * s01, "III"}}));
        out.terms.push_back(
            make_term("X_A group", L, {{s10, "ZXZ"}, {-s * s11, "YXY"}, {s10 + s * s11, "III"}}));
        out.terms.push_back(
            make_term("Y_A group", L, {{s * s10, "YYZ"}, {s11, "ZYY"}, {s * s10 + s11, "III"}}));
    }
    out.target = to_density_matrix(gs, L);
    return out;
}

Eigen::MatrixXcd term_matrix(const DecompositionTerm& term) {
    if (term.words.empty()) throw std::invalid_argument("term_matrix: empty term");
    Eigen::Index dim = Eigen::Index(1) << term.words.front().second.n_qubits;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto& [coeff, word] : term.words) m += coeff * word.dense();
    return m;
}

TermCertificate verify_term_separable(const DecompositionTerm& term, char cut,
                                      const std::vector<char>& labels) {
    TermCertificate cert;
    DensityMatrix shape(Eigen::MatrixXcd::Zero(8, 8), labels);
    int n = 3;
    int r = shape.position(cut);
    std::vector<int> rest = other_positions(r, n);

    // Normalize stored words to canonical +1 Hermitian sign, folding signs into coefficients.
    std::vector<std::pair<double, PauliWord>> words;
    for (auto [coeff, word] : term.words) {
        if (!word.is_hermitian()) {
            cert.failure = "non-Hermitian Pauli word";
            return cert;
        }
        if (word.hermitian_sign() < 0) {
            coeff = -coeff;
            word.phase_exp = (word.phase_exp + 2) & 3;
        }
        words.emplace_back(coeff, word);
    }

    for (size_t i = 0; i < words.size(); ++i) {
        for (size_t j = i + 1; j < words.size(); ++j) {
            if (!words[i].second.commutes_with(words[j].second)) {
                cert.failure = "words do not commute: " + words[i].second.to_string(labels) + " vs " +
                               words[j].second.to_string(labels);
                return cert;
            }
        }
    }

    // The grouping fixes a single Pauli type on the cut qubit.
    char sigma = 'I';
    for (const auto& [coeff, word] : words) {
        char l = word.letter(r);
        if (l == 'I') continue;
        if (sigma == 'I') sigma = l;
        if (l != sigma) {
            cert.failure = std::string("mixed Pauli types on the cut qubit: ") + sigma + " and " + l;
            return cert;
        }
    }

    // Joint eigenbasis of the commuting two-qubit rest parts from a generic combination.
    std::vector<Eigen::Matrix4cd> rest_ops;
    for (const auto& [coeff, word] : words) {
        PauliWord rw(2);
        rw.set_letter(0, word.letter(rest[0]));
        rw.set_letter(1, word.letter(rest[1]));
        rest_ops.push_back(rw.dense());
    }
    static const double generic[] = {1.4142135623730951, 1.7320508075688772, 2.23606797749979,
                                     2.6457513110645907, 3.3166247903554};
    Eigen::Matrix4cd combo = Eigen::Matrix4cd::Zero();
    for (size_t j = 0; j < rest_ops.size(); ++j) combo += generic[j % 5] * (j / 5 + 1.0) * rest_ops[j];
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> rest_solver(combo);
    Eigen::Matrix4cd rest_basis = rest_solver.eigenvectors();

    Eigen::Matrix2cd sigma_basis = Eigen::Matrix2cd::Identity();
    if (sigma != 'I') {
        PauliWord sw(1);
        sw.set_letter(0, sigma);
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> s_solver(Eigen::Matrix2cd(sw.dense()));
        sigma_basis = s_solver.eigenvectors();
    }

    Eigen::MatrixXcd t = term_matrix(term);
    cert.basis = Eigen::MatrixXcd::Zero(8, 8);
    cert.eigenvalues = Eigen::VectorXd::Zero(8);
    double scale = std::max(1.0, t.cwiseAbs().maxCoeff());
    int col = 0;
    for (int rb = 0; rb < 2; ++rb) {
        for (int k = 0; k < 4; ++k, ++col) {
            Eigen::VectorXcd v(8);
            for (Eigen::Index idx = 0; idx < 8; ++idx) {
                int rbit = bit_at(idx, r, n);
                int bp = bit_at(idx, rest[0], n) * 2 + bit_at(idx, rest[1], n);
                v(idx) = sigma_basis(rbit, rb) * rest_basis(bp, k);
            }
            double lam = std::real(v.dot(t * v));
            if ((t * v - lam * v).norm() > kEigenTol * scale) {
                cert.failure = "simultaneous basis vector is not an eigenvector of the term";
                return cert;
            }
            // Schmidt rank 1 across the cut.
            Eigen::MatrixXcd reshaped(2, 4);
            for (Eigen::Index idx = 0; idx < 8; ++idx)
                reshaped(bit_at(idx, r, n), bit_at(idx, rest[0], n) * 2 + bit_at(idx, rest[1], n)) =
                    v(idx);
            Eigen::JacobiSVD<Eigen::MatrixXcd> svd(reshaped);
            if (svd.singularValues()(1) >= kSchmidtTol) {
                cert.failure = "basis vector is entangled across the cut";
                return cert;
            }
            if (lam < -kEigenTol * scale) {
                cert.failure = "negative eigenvalue " + std::to_string(lam);
                cert.basis.col(col) = v;
                cert.eigenvalues(col) = lam;
                return cert;
            }
            cert.basis.col(col) = v;
            cert.eigenvalues(col) = lam;
        }
    }

    Eigen::MatrixXcd rebuilt = Eigen::MatrixXcd::Zero(8, 8);
    for (int c = 0; c < 8; ++c)
        rebuilt += cert.eigenvalues(c) * (cert.basis.col(c) * cert.basis.col(c).adjoint());
    if ((rebuilt - t).cwiseAbs().maxCoeff() > kEigenTol * scale) {
        cert.failure = "product eigenbasis does not reconstruct the term";
        return cert;
    }
    cert.separable = true;
    return cert;
}

DecompositionCheck verify_decomposition(const SeparableDecomposition& decomposition) {
    DecompositionCheck check;
    Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(8, 8);
    for (const auto& term : decomposition.terms) sum += term_matrix(term);
    check.reconstruction_error =
        (sum - 8.0 * decomposition.target.mat).cwiseAbs().maxCoeff();
    if (check.reconstruction_error > 1e-12) {
        check.failure = "terms do not sum to 8 rho_ABC";
        return check;
    }
    for (const auto& term : decomposition.terms) {
        DensityMatrix tm(term_matrix(term), decomposition.labels);
        if (min_eigenvalue(tm.mat) < -kEigenTol) {
            check.failure = "term '" + term.label + "' is not PSD";
            return check;
        }
        if (min_eigenvalue(partial_transpose(tm, {decomposition.cut}).mat) < -kEigenTol) {
            check.failure = "term '" + term.label + "' is NPT across the cut";
            return check;
        }
        TermCertificate cert = verify_term_separable(term, decomposition.cut, decomposition.labels);
        if (!cert.separable) {
            check.failure = "term '" + term.label + "': " + cert.failure;
            check.certificates.push_back(std::move(cert));
            return check;
        }
        check.certificates.push_back(std::move(cert));
    }
    check.ok = true;
    return check;
}

}  // namespace edss
