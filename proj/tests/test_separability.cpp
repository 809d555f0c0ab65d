#include <doctest.h>

#include <random>

#include "edss/protocol.hpp"
#include "edss/separability.hpp"

using namespace edss;

TEST_SUITE("separability") {

TEST_CASE("minimum PT eigenvalue") {
    std::mt19937_64 rng(47);
    Eigen::MatrixXcd rc(2, 2);
    rc << 0.6, 0.2, 0.2, 0.4;
    DensityMatrix prod =
        tensor_product(DensityMatrix(rc, {'C'}), to_density_matrix(BellDiagonalState(0.3, 0.2, 0)));
    for (char cut : {'C', 'A', 'B'}) CHECK(min_pt_eigenvalue(prod, {cut}).value >= -1e-12);

    DensityMatrix golden = build_rho_abc(BellDiagonalState(0.5, 0.25, 0.25), 0.5);
    CHECK(min_pt_eigenvalue(golden, {'A'}).value == doctest::Approx(-1.0 / 16).epsilon(1e-12));
    CHECK(std::abs(min_pt_eigenvalue(golden, {'C'}).value) < 1e-12);
}

TEST_CASE("localization at the optimum") {
    DensityMatrix golden = build_rho_abc(BellDiagonalState(0.5, 0.25, 0.25), 0.5);
    LocalizationResult loc = localize(golden, 'A');
    CHECK(loc.graph_basis);
    CHECK(loc.success_probability == doctest::Approx(5.0 / 8).epsilon(1e-13));
    CHECK(loc.pt_min_eigenvalue == doctest::Approx(-0.1).epsilon(1e-12));
    CHECK(loc.projected_state.mat.trace().real() == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(!loc.degenerate);

    BellDiagonalState generic(0.4, 0.3, 0.2);
    double s = choose_s(generic).s;
    CHECK(s == doctest::Approx(9.0 / 19).epsilon(1e-13));
    LocalizationResult loc2 = localize(build_rho_abc(generic, s), 'A');
    CHECK(loc2.success_probability == doctest::Approx(0.5947368421).epsilon(1e-9));
    CHECK(loc2.pt_min_eigenvalue ==
          doctest::Approx(-0.0526315789 / 0.5947368421).epsilon(1e-7));

    DensityMatrix ppt = build_rho_abc(BellDiagonalState(0.5, 0.25, 0.25), 0.0);
    CHECK_THROWS_WITH_AS(localize(ppt, 'A'), doctest::Contains("nothing to localize"),
                         std::invalid_argument);
}

TEST_CASE("localization works on every NPT cut, not just the protocol point") {
    // past the protocol's s the carrier cut goes NPT as well; both cuts localize
    BellDiagonalState golden(0.5, 0.25, 0.25);
    DensityMatrix rho = build_rho_abc(golden, 0.8);
    for (char r : {'A', 'C'}) {
        double lambda_r = min_pt_eigenvalue(rho, {r}).value;
        REQUIRE(lambda_r < -1e-6);
        LocalizationResult loc = localize(rho, r);
        CHECK(loc.graph_basis);
        CHECK(std::abs(loc.pt_min_eigenvalue * loc.success_probability - lambda_r) < 1e-12);
        CHECK(loc.pt_min_eigenvalue < -1e-6);
    }
}

TEST_CASE("localization falls back to the Schmidt basis") {
    std::mt19937_64 rng(53);
    BellDiagonalState st(0.5, 0.25, 0.25);
    bool exercised = false;
    for (int trial = 0; trial < 50 && !exercised; ++trial) {
        Eigen::Matrix4cd u = random_unitary4(rng);
        DensityMatrix rho = apply_interaction(st, u, 0.8);
        MinPtResult pt = min_pt_eigenvalue(rho, {'A'});
        if (pt.value >= -1e-6) continue;
        LocalizationResult loc = localize(rho, 'A');
        CHECK(std::abs(loc.pt_min_eigenvalue * loc.success_probability - pt.value) < 1e-10);
        if (!loc.graph_basis) exercised = true;
    }
    CHECK(exercised);
}

TEST_CASE("explicit decomposition at the optimum") {
    BellDiagonalState golden(0.5, 0.25, 0.25);
    SeparableDecomposition dec = separable_decomposition(golden, 0.5, 'C');
    CHECK(dec.terms.size() == 5);
    CHECK(dec.terms.front().words.front().first == doctest::Approx(0.0).epsilon(1e-14));

    DensityMatrix rho = build_rho_abc(golden, 0.5);
    CHECK((dec.target.mat - rho.mat).cwiseAbs().maxCoeff() < 1e-14);
    Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(8, 8);
    for (const auto& term : dec.terms) sum += term_matrix(term);
    CHECK((sum - 8.0 * rho.mat).cwiseAbs().maxCoeff() < 1e-12);

    DecompositionCheck check = verify_decomposition(dec);
    CHECK(check.ok);
    CHECK(check.reconstruction_error < 1e-12);

    // Z_C line eigenvalues are {2(s10+s11), 2(s10-s11), 0, 0} with multiplicity two
    Eigen::VectorXd line2 = hermitian_spectrum(term_matrix(dec.terms[1])).values;
    CHECK(line2(0) == doctest::Approx(2 * (0.25 + 0.25)).epsilon(1e-13));
    CHECK(line2(1) == doctest::Approx(2 * (0.25 + 0.25)).epsilon(1e-13));
    CHECK(line2(2) == doctest::Approx(2 * (0.25 - 0.25)).epsilon(1e-13));
    CHECK(std::abs(line2(7)) < 1e-13);
}

TEST_CASE("negative-branch decomposition reconstructs") {
    BellDiagonalState mirrored(0.5, 0.25, -0.25);
    double s = 0.5;
    SeparableDecomposition dec = separable_decomposition(mirrored, s, 'A');
    CHECK(dec.terms.size() == 4);
    DensityMatrix rho = build_rho_abc(mirrored, s);
    Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(8, 8);
    for (const auto& term : dec.terms) sum += term_matrix(term);
    CHECK((sum - 8.0 * rho.mat).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("trivial resource decomposition") {
    SeparableDecomposition dec = separable_decomposition(BellDiagonalState(0, 0, 0), 0.0, 'C');
    DecompositionCheck check = verify_decomposition(dec);
    CHECK(check.ok);
    for (const auto& term : dec.terms)
        for (const auto& [coeff, word] : term.words)
            if (word.x_mask || word.z_mask) CHECK(coeff == 0.0);
}

TEST_CASE("NPT cut is rejected") {
    CHECK_THROWS_WITH_AS(separable_decomposition(BellDiagonalState(0.5, 0.25, 0.25), 0.5, 'A'),
                         doctest::Contains("NPT cut"), std::invalid_argument);
    CHECK_THROWS_AS(separable_decomposition(BellDiagonalState(0.25, 0.5, 0.25), 0.5, 'C'),
                    std::invalid_argument);  // non-canonical ordering
}

TEST_CASE("certificates catch corrupted terms") {
    BellDiagonalState golden(0.5, 0.25, 0.25);
    SeparableDecomposition dec = separable_decomposition(golden, 0.5, 'C');

    TermCertificate identity_line = verify_term_separable(dec.terms[0], 'C', dec.labels);
    CHECK(identity_line.separable);

    DecompositionTerm corrupted = dec.terms[1];
    corrupted.words[1].first = -corrupted.words[1].first;  // sign flip breaks positivity
    TermCertificate bad = verify_term_separable(corrupted, 'C', dec.labels);
    CHECK(!bad.separable);
    CHECK(bad.failure.find("negative eigenvalue") != std::string::npos);

    DecompositionTerm mixed = dec.terms[1];
    mixed.words.emplace_back(0.1, pauli_from_letters(dec.labels, "XZI"));
    TermCertificate noncommuting = verify_term_separable(mixed, 'C', dec.labels);
    CHECK(!noncommuting.separable);
}

TEST_CASE("certificates reconstruct each term") {
    BellDiagonalState st(0.6, 0.3, 0.1);
    double s = choose_s(st).s;
    SeparableDecomposition dec = separable_decomposition(st, s, 'C');
    DecompositionCheck check = verify_decomposition(dec);
    CHECK(check.ok);
    for (size_t t = 0; t < dec.terms.size(); ++t) {
        const TermCertificate& cert = check.certificates[t];
        Eigen::MatrixXcd rebuilt = Eigen::MatrixXcd::Zero(8, 8);
        for (int c = 0; c < 8; ++c)
            rebuilt += cert.eigenvalues(c) * (cert.basis.col(c) * cert.basis.col(c).adjoint());
        CHECK((rebuilt - term_matrix(dec.terms[t])).cwiseAbs().maxCoeff() < 1e-10);
    }
}

}  // TEST_SUITE
