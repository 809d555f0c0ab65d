#pragma once

#include <optional>
#include <string>
#include <vector>

#include "edss/bell_diagonal.hpp"
#include "edss/density_matrix.hpp"
#include "edss/graph_state.hpp"

namespace edss {

struct MinPtResult {
    double value = 0.0;
    Eigen::VectorXcd eigenvector;
};

/// Minimum eigenvalue of the partial transpose over `subset`, with its eigenvector.
MinPtResult min_pt_eigenvalue(const DensityMatrix& rho, const std::vector<char>& subset);

struct LocalizationResult {
    DensityMatrix projected_state;  // two qubits: (R, O) with O the projected output
    double success_probability = 0.0;
    double pt_min_eigenvalue = 0.0;
    bool graph_basis = true;   // negative eigenvector matched a graph-basis vector
    bool degenerate = false;   // minimum PT eigenvalue was degenerate
    unsigned basis_index = 0;  // matched x when graph_basis
};

struct LocalizeOptions {
    bool allow_schmidt_fallback = true;
    double npt_tol = 1e-12;
    const Graph* graph = nullptr;  // defaults to the chain over the register's label order
};

/// Projects the two qubits opposite R with P = |0><w0| + |1><w1| built from the negative
/// PT eigenvector, collapsing a three-qubit NPT state onto a two-qubit state with
/// PT eigenvalue lambda_R / p. For graph-diagonal states the eigenvector is a graph-basis
/// vector and (w0, w1) = (|psi_x'^{G_R}>, Z_E |psi_x'^{G_R}>); otherwise the Schmidt basis
/// of the eigenvector is used when the fallback is allowed.
LocalizationResult localize(const DensityMatrix& rho_abc, char R, const LocalizeOptions& opts = {});

/// rho_ABC for the controlled-phase protocol as a graph-diagonal state on the chain
/// C-A-B: the x_C = 0 sector carries the resource coefficients, the x_C = 1 sector the
/// same coefficients scaled by s.
GraphDiagonalState protocol_graph_state(const BellDiagonalState& state, double s);

struct DecompositionTerm {
    std::string label;
    std::vector<std::pair<double, PauliWord>> words;  // includes the identity padding
};

struct SeparableDecomposition {
    BellDiagonalState input;
    double s = 0.0;
    char cut = 'C';
    std::vector<char> labels;  // (C, A, B)
    std::vector<DecompositionTerm> terms;
    DensityMatrix target;  // rho_ABC; term matrices sum to 8 * target
};

/// The explicit term list certifying separability of the PPT cut R | rest: five lines for
/// R = C, four for R = A. The term matrices sum to 8 rho_ABC entry-wise; throws
/// an error when the cut is NPT (no separable decomposition is claimed there).
SeparableDecomposition separable_decomposition(const BellDiagonalState& state, double s, char cut);

Eigen::MatrixXcd term_matrix(const DecompositionTerm& term);

struct TermCertificate {
    bool separable = false;
    std::string failure;          // empty on success
    Eigen::MatrixXcd basis;       // product-state eigenbasis columns
    Eigen::VectorXd eigenvalues;  // aligned with basis columns
};

/// Certifies one term: (i) PSD, (ii) mutually commuting Pauli words, (iii) a simultaneous
/// eigenbasis of product states across the cut (second Schmidt coefficient < 1e-8),
/// reconstructing the term matrix.
TermCertificate verify_term_separable(const DecompositionTerm& term, char cut,
                                      const std::vector<char>& labels);

struct DecompositionCheck {
    bool ok = false;
    double reconstruction_error = 0.0;  // max entry-wise deviation from 8 rho_ABC
    std::vector<TermCertificate> certificates;
    std::string failure;
};

/// Runs every SeparableDecomposition invariant: reconstruction within 1e-12, each term PSD
/// within 1e-10, per-term PPT across the cut within 1e-10, and the product-eigenbasis
/// certificates.
DecompositionCheck verify_decomposition(const SeparableDecomposition& decomposition);

}  // namespace edss
