#include "edss/density_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace edss {

namespace {

bool power_of_two(Eigen::Index v) { return v > 0 && (v & (v - 1)) == 0; }

/// Bitmask over matrix indices for the given label positions (labels[0] = MSB).
Eigen::Index position_mask(const DensityMatrix& rho, const std::vector<char>& subset) {
    Eigen::Index mask = 0;
    int n = rho.n_qubits();
    for (char label : subset) {
        int p = rho.position(label);
        mask |= Eigen::Index(1) << (n - 1 - p);
    }
    return mask;
}

}  // namespace

DensityMatrix::DensityMatrix(Eigen::MatrixXcd m, std::vector<char> l)
    : mat(std::move(m)), labels(std::move(l)) {
    if (mat.rows() != mat.cols()) throw std::invalid_argument("DensityMatrix: not square");
    if (!power_of_two(mat.rows()) || mat.rows() != (Eigen::Index(1) << labels.size()))
        throw std::invalid_argument("DensityMatrix: dimension does not match label count");
    for (size_t i = 0; i < labels.size(); ++i)
        for (size_t j = i + 1; j < labels.size(); ++j)
            if (labels[i] == labels[j]) throw std::invalid_argument("DensityMatrix: duplicate label");
}

int DensityMatrix::position(char label) const {
    for (size_t i = 0; i < labels.size(); ++i)
        if (labels[i] == label) return static_cast<int>(i);
    throw std::invalid_argument(std::string("DensityMatrix: unknown label '") + label + "'");
}

DensityMatrix identity_operator(const std::vector<char>& labels) {
    Eigen::Index d = Eigen::Index(1) << labels.size();
    return DensityMatrix(Eigen::MatrixXcd::Identity(d, d), labels);
}

DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b) {
    std::vector<char> labels = a.labels;
    labels.insert(labels.end(), b.labels.begin(), b.labels.end());
    Eigen::MatrixXcd out(a.dim() * b.dim(), a.dim() * b.dim());
    for (Eigen::Index i = 0; i < a.dim(); ++i)
        for (Eigen::Index j = 0; j < a.dim(); ++j)
            out.block(i * b.dim(), j * b.dim(), b.dim(), b.dim()) = a.mat(i, j) * b.mat;
    return DensityMatrix(std::move(out), std::move(labels));
}

DensityMatrix partial_transpose(const DensityMatrix& rho, const std::vector<char>& subset) {
    Eigen::Index mask = position_mask(rho, subset);
    Eigen::MatrixXcd out(rho.dim(), rho.dim());
    for (Eigen::Index r = 0; r < rho.dim(); ++r) {
        for (Eigen::Index c = 0; c < rho.dim(); ++c) {
            Eigen::Index r2 = (r & ~mask) | (c & mask);
            Eigen::Index c2 = (c & ~mask) | (r & mask);
            out(r2, c2) = rho.mat(r, c);
        }
    }
    return DensityMatrix(std::move(out), rho.labels);
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<char>& subset) {
    Eigen::Index mask = position_mask(rho, subset);
    int n = rho.n_qubits();
    std::vector<int> kept_bits;  // bit positions of the kept qubits, most significant first
    std::vector<char> kept_labels;
    for (int p = 0; p < n; ++p) {
        int bit = n - 1 - p;
        if (!((mask >> bit) & 1)) {
            kept_bits.push_back(bit);
            kept_labels.push_back(rho.labels[p]);
        }
    }
    int k = static_cast<int>(kept_bits.size());
    Eigen::Index dk = Eigen::Index(1) << k;
    auto expand = [&](Eigen::Index idx) {
        Eigen::Index full = 0;
        for (int i = 0; i < k; ++i)
            if ((idx >> (k - 1 - i)) & 1) full |= Eigen::Index(1) << kept_bits[i];
        return full;
    };
    std::vector<Eigen::Index> traced;  // all bit patterns on the traced-out qubits
    for (Eigen::Index t = 0; t < rho.dim(); ++t)
        if ((t & ~mask) == 0) traced.push_back(t);
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dk, dk);
    for (Eigen::Index i = 0; i < dk; ++i)
        for (Eigen::Index j = 0; j < dk; ++j)
            for (Eigen::Index t : traced) out(i, j) += rho.mat(expand(i) | t, expand(j) | t);
    return DensityMatrix(std::move(out), std::move(kept_labels));
}

bool is_hermitian(const Eigen::MatrixXcd& m, double tol) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

Spectrum hermitian_spectrum(const Eigen::MatrixXcd& m, bool with_vectors) {
    if (!is_hermitian(m, 1e-10)) throw std::invalid_argument("hermitian_spectrum: input is not Hermitian");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
        m, with_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw std::runtime_error("hermitian_spectrum: solver failed");
    Spectrum out;
    out.values = solver.eigenvalues().reverse();
    if (with_vectors) out.vectors = solver.eigenvectors().rowwise().reverse();
    return out;
}

Spectrum hermitian_spectrum(const DensityMatrix& rho, bool with_vectors) {
    return hermitian_spectrum(rho.mat, with_vectors);
}

double min_eigenvalue(const Eigen::MatrixXcd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
    return solver.eigenvalues()(0);
}

double relative_entropy_bits(const DensityMatrix& rho, const DensityMatrix& sigma) {
    if (rho.dim() != sigma.dim()) throw std::invalid_argument("relative_entropy: dimension mismatch");
    constexpr double support_tol = 1e-12;
    constexpr double violation_tol = 1e-10;
    Spectrum sr = hermitian_spectrum(rho);
    double ent = 0.0;  // Tr(rho log2 rho)
    for (Eigen::Index i = 0; i < sr.values.size(); ++i) {
        double v = sr.values(i);
        if (v > support_tol) ent += v * std::log2(v);
    }
    Spectrum ss = hermitian_spectrum(sigma, true);
    double cross = 0.0;  // Tr(rho log2 sigma)
    for (Eigen::Index j = 0; j < ss.values.size(); ++j) {
        Eigen::VectorXcd v = ss.vectors.col(j);
        double weight = std::real(v.dot(rho.mat * v));
        double mu = ss.values(j);
        if (mu <= support_tol) {
            if (weight > violation_tol) return std::numeric_limits<double>::infinity();
            continue;
        }
        cross += weight * std::log2(mu);
    }
    return ent - cross;
}

DensityMatrix pauli_matrix(const PauliWord& word, const std::vector<char>& labels) {
    if (word.n_qubits != static_cast<int>(labels.size()))
        throw std::invalid_argument("pauli_matrix: label count mismatch");
    return DensityMatrix(word.dense(), labels);
}

DensityMatrix conjugate(const DensityMatrix& rho, const Eigen::MatrixXcd& unitary) {
    if (unitary.rows() != rho.dim() || unitary.cols() != rho.dim())
        throw std::invalid_argument("conjugate: dimension mismatch");
    return DensityMatrix(unitary * rho.mat * unitary.adjoint(), rho.labels);
}

Eigen::MatrixXcd embed_two_qubit_unitary(const Eigen::Matrix4cd& u, const std::vector<char>& pair,
                                         const std::vector<char>& labels) {
    if (pair.size() != 2) throw std::invalid_argument("embed_two_qubit_unitary: need two labels");
    DensityMatrix probe(Eigen::MatrixXcd::Zero(Eigen::Index(1) << labels.size(),
                                               Eigen::Index(1) << labels.size()),
                        labels);
    int n = static_cast<int>(labels.size());
    int hi = n - 1 - probe.position(pair[0]);
    int lo = n - 1 - probe.position(pair[1]);
    Eigen::Index dim = probe.dim();
    auto sub = [&](Eigen::Index idx) { return (((idx >> hi) & 1) << 1) | ((idx >> lo) & 1); };
    auto with_sub = [&](Eigen::Index idx, Eigen::Index s) {
        idx &= ~((Eigen::Index(1) << hi) | (Eigen::Index(1) << lo));
        if ((s >> 1) & 1) idx |= Eigen::Index(1) << hi;
        if (s & 1) idx |= Eigen::Index(1) << lo;
        return idx;
    };
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
    for (Eigen::Index c = 0; c < dim; ++c) {
        Eigen::Index sc = sub(c);
        for (Eigen::Index sr = 0; sr < 4; ++sr) out(with_sub(c, sr), c) = u(sr, sc);
    }
    return out;
}

}  // namespace edss
