#pragma once

#include <utility>
#include <vector>

#include "edss/density_matrix.hpp"

namespace edss {

struct Graph {
    int n_vertices = 0;
    std::vector<std::pair<int, int>> edges;  // stored with first < second, no duplicates

    Graph() = default;
    Graph(int n, std::vector<std::pair<int, int>> e);

    bool has_edge(int i, int j) const;
    std::vector<int> neighbors(int i) const;
};

/// The 3-vertex chain with vertex order (C, A, B) = (0, 1, 2).
Graph chain_graph(int n);

/// Graph-diagonal state rho = (1/2^N) sum_x s_x K_x with s_0 = 1. Coefficients are
/// indexed by the bitstring x read as an integer, vertex 0 giving the most
/// significant bit.
struct GraphDiagonalState {
    Graph graph;
    Eigen::VectorXd coeffs;

    GraphDiagonalState() = default;
    GraphDiagonalState(Graph g, Eigen::VectorXd s);
};

/// K_i = X_i prod_{(i,j) in E} Z_j.
PauliWord stabilizer(const Graph& g, int vertex);

/// K_x, the product of K_i over the set bits of x.
PauliWord stabilizer_product(const Graph& g, unsigned x);

/// |psi_x^G> = Z_x CZ_E |+>^N; K_i eigenvalue (-1)^{x_i}.
Eigen::VectorXcd graph_basis_vector(const Graph& g, unsigned x);

/// Columns indexed by x as an integer.
Eigen::MatrixXcd graph_basis(const Graph& g);

/// Diagonal entries in the graph basis, i.e. the eigenvalues, indexed by y:
/// (1/2^N) sum_x s_x (-1)^{x.y}.
Eigen::VectorXd coefficient_spectrum(const GraphDiagonalState& state);

struct PositivityResult {
    bool positive = false;
    double min_value = 0.0;  // min_y sum_x s_x (-1)^{x.y}, i.e. 2^N times the minimum eigenvalue
    unsigned worst_y = 0;
};

PositivityResult positivity_check(const GraphDiagonalState& state);

struct PtMinResult {
    double value = 0.0;  // 2^N times the minimum partial-transpose eigenvalue
    unsigned argmin_y = 0;
};

/// Partial transpose over the bipartition z (bit z_i names vertex i's side), evaluated in
/// coefficient space: the eigenvectors stay graph-basis vectors and only the signs
/// (-1)^{sum_{(i,j) in E} x_i x_j (z_i xor z_j)} enter.
PtMinResult pt_min_coefficient(const GraphDiagonalState& state, unsigned z);

DensityMatrix to_density_matrix(const GraphDiagonalState& state, const std::vector<char>& labels);

}  // namespace edss
