#include <doctest.h>

#include <random>

#include "edss/graph_state.hpp"
#include "edss/protocol.hpp"
#include "edss/separability.hpp"

using namespace edss;

namespace {

const std::vector<char> kCab = {'C', 'A', 'B'};

GraphDiagonalState random_graph_state(std::mt19937_64& rng, bool require_positive) {
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    while (true) {
        Eigen::VectorXd coeffs(8);
        coeffs(0) = 1.0;
        for (int x = 1; x < 8; ++x) coeffs(x) = unit(rng);
        GraphDiagonalState state(chain_graph(3), coeffs);
        if (!require_positive || positivity_check(state).positive) return state;
    }
}

}  // namespace

TEST_SUITE("graph-states") {

TEST_CASE("stabilizers of the three-vertex chain") {
    Graph g3 = chain_graph(3);
    CHECK(stabilizer(g3, 0).to_string(kCab) == "XC.ZA");
    CHECK(stabilizer(g3, 1).to_string(kCab) == "ZC.XA.ZB");
    CHECK(stabilizer(g3, 2).to_string(kCab) == "ZA.XB");
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(stabilizer(g3, i).commutes_with(stabilizer(g3, j)));

    Graph empty(2, {});
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) CHECK(stabilizer(empty, i).commutes_with(stabilizer(empty, j)));
    CHECK_THROWS_AS(stabilizer(g3, 5), std::invalid_argument);
    CHECK_THROWS_AS(Graph(2, {{0, 0}}), std::invalid_argument);
}

TEST_CASE("graph basis vectors") {
    Graph empty(3, {});
    Eigen::VectorXcd plus = graph_basis_vector(empty, 0);
    for (int i = 0; i < 8; ++i) CHECK(plus(i) == cx(1.0 / std::sqrt(8.0), 0.0));

    Graph g3 = chain_graph(3);
    for (unsigned x = 0; x < 8; ++x) {
        Eigen::VectorXcd psi = graph_basis_vector(g3, x);
        for (int i = 0; i < 3; ++i) {
            double sign = (x >> (2 - i)) & 1u ? -1.0 : 1.0;
            Eigen::VectorXcd mapped = stabilizer(g3, i).dense() * psi;
            CHECK((mapped - sign * psi).norm() < 1e-13);
        }
    }
    Eigen::MatrixXcd basis = graph_basis(g3);
    CHECK((basis.adjoint() * basis - Eigen::MatrixXcd::Identity(8, 8)).cwiseAbs().maxCoeff() <
          1e-13);
}

TEST_CASE("positivity in coefficient space") {
    Eigen::VectorXd trivial = Eigen::VectorXd::Zero(8);
    trivial(0) = 1.0;
    CHECK(positivity_check(GraphDiagonalState(chain_graph(3), trivial)).positive);

    Eigen::VectorXd too_big = trivial;
    too_big(3) = 1.2;
    auto res = positivity_check(GraphDiagonalState(chain_graph(3), too_big));
    CHECK(!res.positive);
    CHECK(res.min_value == doctest::Approx(-0.2).epsilon(1e-12));

    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 1000; ++trial) {
        GraphDiagonalState st = random_graph_state(rng, false);
        double dense_min = hermitian_spectrum(to_density_matrix(st, kCab)).values(7);
        auto check = positivity_check(st);
        CHECK(std::abs(check.min_value / 8.0 - dense_min) < 1e-12);
        if (std::abs(check.min_value) > 1e-9) CHECK(check.positive == (dense_min >= 0.0));
    }
}

TEST_CASE("partial transpose in coefficient space") {
    Graph empty(3, {});
    Eigen::VectorXd prod(8);
    // product of single-vertex states (1 + a X)/2: coefficients factorize
    double a0 = 0.3, a1 = -0.5, a2 = 0.7;
    for (int x = 0; x < 8; ++x)
        prod(x) = ((x & 4) ? a0 : 1.0) * ((x & 2) ? a1 : 1.0) * ((x & 1) ? a2 : 1.0);
    GraphDiagonalState separable(empty, prod);
    for (unsigned z = 1; z < 7; ++z) CHECK(pt_min_coefficient(separable, z).value >= -1e-12);

    // protocol state at the optimum: A|CB is NPT at -8/16, C|AB sits at zero
    GraphDiagonalState golden = protocol_graph_state(BellDiagonalState(0.5, 0.25, 0.25), 0.5);
    CHECK(pt_min_coefficient(golden, 0b010).value == doctest::Approx(-0.5).epsilon(1e-14));
    CHECK(pt_min_coefficient(golden, 0b100).value == doctest::Approx(0.0).epsilon(1e-14));

    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 500; ++trial) {
        GraphDiagonalState st = random_graph_state(rng, true);
        DensityMatrix rho = to_density_matrix(st, kCab);
        for (auto [z, cut] : {std::pair<unsigned, char>{0b100, 'C'}, {0b010, 'A'}, {0b001, 'B'}}) {
            double dense = hermitian_spectrum(partial_transpose(rho, {cut})).values(7);
            CHECK(std::abs(pt_min_coefficient(st, z).value / 8.0 - dense) < 1e-12);
        }
    }
}

TEST_CASE("dense realization is graph-diagonal") {
    Eigen::VectorXd trivial = Eigen::VectorXd::Zero(8);
    trivial(0) = 1.0;
    DensityMatrix mixed = to_density_matrix(GraphDiagonalState(chain_graph(3), trivial), kCab);
    CHECK((mixed.mat - Eigen::MatrixXcd::Identity(8, 8) / 8.0).cwiseAbs().maxCoeff() == 0.0);

    std::mt19937_64 rng(41);
    Eigen::MatrixXcd basis = graph_basis(chain_graph(3));
    for (int trial = 0; trial < 100; ++trial) {
        GraphDiagonalState st = random_graph_state(rng, false);
        Eigen::MatrixXcd in_basis = basis.adjoint() * to_density_matrix(st, kCab).mat * basis;
        Eigen::VectorXd expected = coefficient_spectrum(st);
        for (int i = 0; i < 8; ++i) {
            for (int j = 0; j < 8; ++j) {
                if (i == j)
                    CHECK(std::abs(in_basis(i, i).real() - expected(i)) < 1e-12);
                else
                    CHECK(std::abs(in_basis(i, j)) < 1e-12);
            }
        }
    }
}

TEST_CASE("negative PT eigenvector is a graph-basis vector") {
    std::mt19937_64 rng(43);
    Eigen::MatrixXcd basis = graph_basis(chain_graph(3));
    int npt_seen = 0;
    for (int trial = 0; trial < 200 && npt_seen < 50; ++trial) {
        GraphDiagonalState st = random_graph_state(rng, true);
        DensityMatrix rho = to_density_matrix(st, kCab);
        for (char cut : {'C', 'A', 'B'}) {
            MinPtResult res = min_pt_eigenvalue(rho, {cut});
            if (res.value >= -1e-8) continue;
            ++npt_seen;
            double best_overlap = 0.0;
            for (int x = 0; x < 8; ++x)
                best_overlap =
                    std::max(best_overlap, std::norm(basis.col(x).dot(res.eigenvector)));
            CHECK(best_overlap > 1.0 - 1e-8);
        }
    }
    CHECK(npt_seen > 0);
}

}  // TEST_SUITE
