#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "edss/pauli.hpp"

namespace edss {

/// Dense complex operator on a small labelled qubit register. labels[0] indexes the
/// most significant index bit; the global label order used throughout is (C, A, B).
/// States carry unit trace; decomposition terms may carry any nonnegative trace.
struct DensityMatrix {
    Eigen::MatrixXcd mat;
    std::vector<char> labels;

    DensityMatrix() = default;
    DensityMatrix(Eigen::MatrixXcd m, std::vector<char> l);

    int n_qubits() const { return static_cast<int>(labels.size()); }
    Eigen::Index dim() const { return mat.rows(); }

    /// Position of a label; throws on unknown labels.
    int position(char label) const;
};

struct Spectrum {
    Eigen::VectorXd values;    // sorted descending
    Eigen::MatrixXcd vectors;  // orthonormal columns aligned with values; empty unless requested
};

DensityMatrix identity_operator(const std::vector<char>& labels);

DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b);

DensityMatrix partial_transpose(const DensityMatrix& rho, const std::vector<char>& subset);

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<char>& subset);

bool is_hermitian(const Eigen::MatrixXcd& m, double tol = 1e-10);

/// Eigenvalues (descending) of a Hermitian operator; throws on non-Hermitian input.
Spectrum hermitian_spectrum(const DensityMatrix& rho, bool with_vectors = false);
Spectrum hermitian_spectrum(const Eigen::MatrixXcd& m, bool with_vectors = false);

double min_eigenvalue(const Eigen::MatrixXcd& m);

/// S(rho||sigma) = Tr(rho log2 rho - rho log2 sigma) >= 0.
/// Returns +infinity when supp(rho) is not contained in supp(sigma).
double relative_entropy_bits(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Dense realization of a word over the given labels, e.g. Z_A X_B on (C,A,B) -> I (x) Z (x) X.
DensityMatrix pauli_matrix(const PauliWord& word, const std::vector<char>& labels);

DensityMatrix conjugate(const DensityMatrix& rho, const Eigen::MatrixXcd& unitary);

/// Embeds a two-qubit unitary acting on `pair` (pair[0] = most significant bit of the
/// 4-dim index) into the full register, identity elsewhere.
Eigen::MatrixXcd embed_two_qubit_unitary(const Eigen::Matrix4cd& u, const std::vector<char>& pair,
                                         const std::vector<char>& labels);

}  // namespace edss
