#include "edss/graph_state.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace edss {

Graph::Graph(int n, std::vector<std::pair<int, int>> e) : n_vertices(n), edges(std::move(e)) {
    if (n < 1 || n > 20) throw std::invalid_argument("Graph: bad vertex count");
    for (auto& [i, j] : edges) {
        if (i == j) throw std::invalid_argument("Graph: self-loop");
        if (i < 0 || j < 0 || i >= n || j >= n) throw std::invalid_argument("Graph: vertex out of range");
        if (i > j) std::swap(i, j);
    }
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
        throw std::invalid_argument("Graph: duplicate edge");
}

bool Graph::has_edge(int i, int j) const {
    if (i > j) std::swap(i, j);
    return std::binary_search(edges.begin(), edges.end(), std::make_pair(i, j));
}

std::vector<int> Graph::neighbors(int i) const {
    std::vector<int> out;
    for (const auto& [a, b] : edges) {
        if (a == i) out.push_back(b);
        if (b == i) out.push_back(a);
    }
    return out;
}

Graph chain_graph(int n) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
    return Graph(n, std::move(edges));
}

GraphDiagonalState::GraphDiagonalState(Graph g, Eigen::VectorXd s)
    : graph(std::move(g)), coeffs(std::move(s)) {
    if (coeffs.size() != (Eigen::Index(1) << graph.n_vertices))
        throw std::invalid_argument("GraphDiagonalState: coefficient count mismatch");
    if (std::abs(coeffs(0) - 1.0) > 1e-12)
        throw std::invalid_argument("GraphDiagonalState: s_0 must equal 1");
}

PauliWord stabilizer(const Graph& g, int vertex) {
    if (vertex < 0 || vertex >= g.n_vertices) throw std::invalid_argument("stabilizer: bad vertex");
    PauliWord w(g.n_vertices);
    w.set_letter(vertex, 'X');
    for (int j : g.neighbors(vertex)) w.set_letter(j, 'Z');
    return w;
}

PauliWord stabilizer_product(const Graph& g, unsigned x) {
    PauliWord w = PauliWord::identity(g.n_vertices);
    for (int i = 0; i < g.n_vertices; ++i)
        if ((x >> (g.n_vertices - 1 - i)) & 1u) w = w * stabilizer(g, i);
    return w;
}

Eigen::VectorXcd graph_basis_vector(const Graph& g, unsigned x) {
    int n = g.n_vertices;
    Eigen::Index dim = Eigen::Index(1) << n;
    Eigen::VectorXcd v = Eigen::VectorXcd::Constant(dim, 1.0 / std::sqrt(double(dim)));
    for (Eigen::Index idx = 0; idx < dim; ++idx) {
        int sign = 0;
        for (const auto& [i, j] : g.edges) {
            int bi = (idx >> (n - 1 - i)) & 1;
            int bj = (idx >> (n - 1 - j)) & 1;
            sign ^= bi & bj;
        }
        for (int i = 0; i < n; ++i)
            if ((x >> (n - 1 - i)) & 1u) sign ^= (idx >> (n - 1 - i)) & 1;
        if (sign) v(idx) = -v(idx);
    }
    return v;
}

Eigen::MatrixXcd graph_basis(const Graph& g) {
    Eigen::Index dim = Eigen::Index(1) << g.n_vertices;
    Eigen::MatrixXcd basis(dim, dim);
    for (unsigned x = 0; x < static_cast<unsigned>(dim); ++x) basis.col(x) = graph_basis_vector(g, x);
    return basis;
}

Eigen::VectorXd coefficient_spectrum(const GraphDiagonalState& state) {
    Eigen::Index dim = state.coeffs.size();
    Eigen::VectorXd out(dim);
    for (Eigen::Index y = 0; y < dim; ++y) {
        double sum = 0.0;
        for (Eigen::Index x = 0; x < dim; ++x)
            sum += (std::popcount(static_cast<unsigned>(x & y)) & 1) ? -state.coeffs(x)
                                                                     : state.coeffs(x);
        out(y) = sum / double(dim);
    }
    return out;
}

PositivityResult positivity_check(const GraphDiagonalState& state) {
    Eigen::VectorXd spec = coefficient_spectrum(state);
    PositivityResult res;
    Eigen::Index worst;
    res.min_value = spec.minCoeff(&worst) * double(spec.size());
    res.worst_y = static_cast<unsigned>(worst);
    res.positive = res.min_value >= -1e-12;
    return res;
}

PtMinResult pt_min_coefficient(const GraphDiagonalState& state, unsigned z) {
    const Graph& g = state.graph;
    int n = g.n_vertices;
    Eigen::Index dim = state.coeffs.size();
    Eigen::VectorXd flipped(dim);
    for (Eigen::Index x = 0; x < dim; ++x) {
        int sign = 0;
        for (const auto& [i, j] : g.edges) {
            int xi = (x >> (n - 1 - i)) & 1;
            int xj = (x >> (n - 1 - j)) & 1;
            int zi = (z >> (n - 1 - i)) & 1;
            int zj = (z >> (n - 1 - j)) & 1;
            sign ^= xi & xj & (zi ^ zj);
        }
        flipped(x) = sign ? -state.coeffs(x) : state.coeffs(x);
    }
    PtMinResult res;
    double best = std::numeric_limits<double>::infinity();
    for (Eigen::Index y = 0; y < dim; ++y) {
        double sum = 0.0;
        for (Eigen::Index x = 0; x < dim; ++x)
            sum += (std::popcount(static_cast<unsigned>(x & y)) & 1) ? -flipped(x) : flipped(x);
        if (sum < best) {
            best = sum;
            res.argmin_y = static_cast<unsigned>(y);
        }
    }
    res.value = best;
    return res;
}

DensityMatrix to_density_matrix(const GraphDiagonalState& state, const std::vector<char>& labels) {
    const Graph& g = state.graph;
    if (static_cast<int>(labels.size()) != g.n_vertices)
        throw std::invalid_argument("to_density_matrix: label count mismatch");
    Eigen::Index dim = Eigen::Index(1) << g.n_vertices;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (unsigned x = 0; x < static_cast<unsigned>(dim); ++x)
        m += state.coeffs(x) * stabilizer_product(g, x).dense();
    return DensityMatrix(m / double(dim), labels);
}

}  // namespace edss
