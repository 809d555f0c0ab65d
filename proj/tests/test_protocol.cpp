#include <doctest.h>

#include <random>

#include "edss/protocol.hpp"
#include "edss/verify.hpp"

using namespace edss;

TEST_SUITE("edss-protocol") {

TEST_CASE("protocol state construction") {
    std::mt19937_64 rng(59);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        std::array<double, 4> lam;
        {
            std::exponential_distribution<double> e(1.0);
            double t = 0;
            for (double& v : lam) t += (v = e(rng));
            for (double& v : lam) v /= t;
            std::sort(lam.begin(), lam.end(), std::greater<double>());
        }
        BellDiagonalState st = from_spectrum(lam);
        double s = unit(rng);
        DensityMatrix rho = build_rho_abc(st, s);
        CHECK(rho.mat.trace().real() == doctest::Approx(1.0).epsilon(1e-13));
        CHECK(is_hermitian(rho.mat, 1e-13));
        // the CZ construction coincides with the stabilizer-coefficient realization
        DensityMatrix graph_route = to_density_matrix(protocol_graph_state(st, s), rho.labels);
        CHECK((graph_route.mat - rho.mat).cwiseAbs().maxCoeff() < 1e-14);
        // tracing out the carrier dephases A and leaves B's marginal with A intact
        DensityMatrix reduced = partial_trace(rho, {'C'});
        DensityMatrix ab = to_density_matrix(st);
        Eigen::MatrixXcd za = pauli_from_letters({'A', 'B'}, "ZI").dense();
        Eigen::MatrixXcd dephased = 0.5 * (ab.mat + za * ab.mat * za);
        CHECK((reduced.mat - dephased).cwiseAbs().maxCoeff() < 1e-13);
    }
    // no correlations to entangle: every bipartition stays PPT for any s
    for (double s : {0.0, 0.35, 1.0}) {
        DensityMatrix rho = build_rho_abc(BellDiagonalState(0, 0, 0), s);
        for (char cut : {'C', 'A', 'B'})
            CHECK(min_eigenvalue(partial_transpose(rho, {cut}).mat) >= -1e-12);
    }
    CHECK_THROWS_AS(build_rho_abc(BellDiagonalState(0, 0, 0), 1.5), std::invalid_argument);
}

TEST_CASE("closed-form PT minima") {
    auto [lc, la] = closed_form_pt(BellDiagonalState(0.5, 0.25, 0.25), 0.5);
    CHECK(std::abs(lc) < 1e-15);
    CHECK(la == doctest::Approx(-1.0 / 16).epsilon(1e-15));

    auto [lc2, la2] = closed_form_pt(BellDiagonalState(0.4, 0.3, 0.2), 9.0 / 19);
    CHECK(std::abs(lc2) < 1e-15);
    CHECK(la2 == doctest::Approx(-0.052631578947).epsilon(1e-9));

    std::mt19937_64 rng(61);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        double a = unit(rng), b = unit(rng) * a, c = unit(rng) * b;
        if (1.0 - a - b + c < 0) continue;
        BellDiagonalState st(a, b, c);
        // without interaction the carrier cut sits at lambda_4 / 2, and the A cut at the
        // PT'd resource's minimum eigenvalue (nonnegative exactly for separable inputs)
        auto [l0c, l0a] = closed_form_pt(st, 0.0);
        CHECK(l0c == doctest::Approx(spectrum_closed_form(st)[3] / 2.0).epsilon(1e-12));
        CHECK(l0a == doctest::Approx((1.0 - a - b - c) / 8.0).epsilon(1e-12));
        if (spectrum_closed_form(st)[0] <= 0.5) CHECK(l0a >= -1e-15);
        double s = unit(rng);
        DensityMatrix rho = build_rho_abc(st, s);
        auto [fc, fa] = closed_form_pt(st, s);
        CHECK(std::abs(fc - min_eigenvalue(partial_transpose(rho, {'C'}).mat)) < 1e-10);
        CHECK(std::abs(fa - min_eigenvalue(partial_transpose(rho, {'A'}).mat)) < 1e-10);
    }
}

TEST_CASE("interaction strength choice") {
    CHECK(choose_s(BellDiagonalState(0.5, 0.25, 0.25)).s == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(choose_s(BellDiagonalState(0.4, 0.3, 0.2)).s ==
          doctest::Approx(9.0 / 19).epsilon(1e-14));

    ChosenS mixed = choose_s(BellDiagonalState(0, 0, 0));
    CHECK(mixed.s == 1.0);
    CHECK(!mixed.degenerate);
    CHECK(closed_form_pt(BellDiagonalState(0, 0, 0), mixed.s).second ==
          doctest::Approx(0.0).epsilon(1e-15));

    ChosenS rank2 = choose_s(BellDiagonalState(1.0, 0.0, 0.0));
    CHECK(rank2.degenerate);
    CHECK(rank2.s == doctest::Approx(1.0).epsilon(1e-15));

    // the chosen s zeroes the carrier cut
    std::mt19937_64 rng(67);
    for (int trial = 0; trial < 200; ++trial) {
        std::exponential_distribution<double> e(1.0);
        std::array<double, 4> lam;
        double t = 0;
        for (double& v : lam) t += (v = e(rng));
        for (double& v : lam) v /= t;
        std::sort(lam.begin(), lam.end(), std::greater<double>());
        BellDiagonalState st = from_spectrum(lam);
        if (st.s11 < 0) continue;
        CHECK(std::abs(closed_form_pt(st, choose_s(st).s).first) < 1e-12);
    }
}

TEST_CASE("protocol run on the optimum") {
    ProtocolOutcome outcome = run(BellDiagonalState(0.5, 0.25, 0.25));
    CHECK(outcome.branch == Branch::SendC);
    CHECK(outcome.s == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(outcome.success_probability == doctest::Approx(5.0 / 8).epsilon(1e-15));
    CHECK(outcome.lambda_a_bc == doctest::Approx(-1.0 / 16).epsilon(1e-15));
    CHECK(std::abs(outcome.lambda_c_ab) < 1e-15);
    double expected_bound = (5.0 / 8) * (1.0 - binary_entropy(0.6));
    CHECK(outcome.ent_lower_bound == doctest::Approx(expected_bound).epsilon(1e-13));
    CHECK(outcome.ent_lower_bound == doctest::Approx(0.018155878).epsilon(1e-6));
    REQUIRE(outcome.localized.has_value());
    CHECK(outcome.localized->success_probability == doctest::Approx(5.0 / 8).epsilon(1e-13));
    CHECK(outcome.localized->pt_min_eigenvalue == doctest::Approx(-0.1).epsilon(1e-12));
}

TEST_CASE("protocol run on the negative branch") {
    ProtocolOutcome outcome = run(BellDiagonalState(0.5, 0.25, -0.25));
    CHECK(outcome.branch == Branch::SendA);
    CHECK(outcome.s == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(outcome.lambda_c_ab == doctest::Approx(-1.0 / 16).epsilon(1e-15));
    CHECK(std::abs(outcome.lambda_a_bc) < 1e-15);
    DensityMatrix rho = build_rho_abc(BellDiagonalState(0.5, 0.25, -0.25), outcome.s);
    CHECK(std::abs(outcome.lambda_c_ab - min_eigenvalue(partial_transpose(rho, {'C'}).mat)) <
          1e-12);
    CHECK(std::abs(outcome.lambda_a_bc - min_eigenvalue(partial_transpose(rho, {'A'}).mat)) <
          1e-12);
    REQUIRE(outcome.localized.has_value());
    CHECK(std::abs(outcome.localized->pt_min_eigenvalue * outcome.localized->success_probability -
                   outcome.lambda_c_ab) < 1e-12);

    CHECK_THROWS_WITH_AS(run(BellDiagonalState(0.25, 0.5, 0.25)), doctest::Contains("canonical"),
                         std::invalid_argument);
}

TEST_CASE("useless resources produce nothing") {
    ProtocolOutcome outcome = run(BellDiagonalState(0.5, 0.5, 0.0));
    CHECK(outcome.lambda_c_ab == doctest::Approx(outcome.lambda_a_bc).epsilon(1e-15));
    CHECK(outcome.ent_lower_bound == 0.0);
    CHECK(!outcome.localized.has_value());
    CHECK(outcome.gap_bound == 0.0);
}

TEST_CASE("spectra coincide whenever s11 = 0") {
    CHECK(pt_spectra_coincide(BellDiagonalState(0.5, 0.5, 0.0), cz_gate(), 0.7));
    std::mt19937_64 rng(71);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        double a = unit(rng), b = unit(rng);
        if (a + b > 1.0) {
            a = 1.0 - a;
            b = 1.0 - b;
        }
        BellDiagonalState st(std::max(a, b), std::min(a, b), 0.0);
        CHECK(pt_spectra_coincide(st, random_unitary4(rng), unit(rng)));
    }
    CHECK_THROWS_AS(pt_spectra_coincide(BellDiagonalState(0.5, 0.25, 0.25), cz_gate(), 0.5),
                    std::invalid_argument);

    // a small s11 perturbation opens a gap of order s11, within the bound
    BellDiagonalState perturbed(0.5, 0.3, 1e-3);
    auto [gap, bound] = gap_bound_check(perturbed, cz_gate(), 0.6);
    CHECK(gap <= bound + 1e-10);
    CHECK(bound == doctest::Approx(0.25 * 1.6 * 1e-3).epsilon(1e-12));
}

TEST_CASE("PT gap bound and saturation") {
    auto [gap0, bound0] = gap_bound_check(BellDiagonalState(0.4, 0.4, 0.0), cz_gate(), 0.8);
    CHECK(gap0 <= 1e-10);
    CHECK(bound0 == 0.0);

    // lambda_4/lambda_3 binds here, so the bound saturates at the protocol's s
    BellDiagonalState sat = from_spectrum({0.42, 0.30, 0.18, 0.10});
    double s_sat = choose_s(sat).s;
    CHECK(s_sat == doctest::Approx(0.10 / 0.18).epsilon(1e-13));
    auto [gap, bound] = gap_bound_check(sat, cz_gate(), s_sat);
    CHECK(std::abs(gap - bound) < 1e-9);

    // For the controlled-phase gate the bound holds across random states and strengths.
    std::mt19937_64 rng(73);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 500; ++trial) {
        std::exponential_distribution<double> e(1.0);
        std::array<double, 4> lam;
        double t = 0;
        for (double& v : lam) t += (v = e(rng));
        for (double& v : lam) v /= t;
        std::sort(lam.begin(), lam.end(), std::greater<double>());
        auto [g, b] = gap_bound_check(from_spectrum(lam), cz_gate(), unit(rng));
        CHECK(g <= b + 1e-12);
    }
}

TEST_CASE("PT gap obeys the exact correction-norm bound for arbitrary unitaries") {
    // The spectra satisfy spec(rho^T_C) = spec(rho^T_A - M) exactly, with
    // M = (1/2) s11 [U (Y_A Y_B (x) rho_C) U^dagger]^T_A, so the gap is bounded by ||M||.
    // The (1/4)(1+s)|s11| form replaces ||M|| by the norm of the un-transposed correction,
    // which the partial transpose can exceed; see the pinned counterexample below.
    std::mt19937_64 rng(73);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<char> cab = {'C', 'A', 'B'};
    int stated_form_violations = 0;
    for (int trial = 0; trial < 500; ++trial) {
        std::exponential_distribution<double> e(1.0);
        std::array<double, 4> lam;
        double t = 0;
        for (double& v : lam) t += (v = e(rng));
        for (double& v : lam) v /= t;
        std::sort(lam.begin(), lam.end(), std::greater<double>());
        BellDiagonalState st = from_spectrum(lam);
        double s = unit(rng);
        Eigen::Matrix4cd u = random_unitary4(rng);
        auto [g, b] = gap_bound_check(st, u, s);
        if (g > b + 1e-9) ++stated_form_violations;

        Eigen::MatrixXcd rc(2, 2);
        rc << 0.5, 0.5 * s, 0.5 * s, 0.5;
        DensityMatrix yy = tensor_product(
            DensityMatrix(rc, {'C'}),
            DensityMatrix(pauli_from_letters({'A', 'B'}, "YY").dense(), {'A', 'B'}));
        Eigen::MatrixXcd uf = embed_two_qubit_unitary(u, {'A', 'C'}, cab);
        DensityMatrix correction = conjugate(yy, uf);
        Eigen::MatrixXcd m = 0.5 * st.s11 * partial_transpose(correction, {'A'}).mat;
        DensityMatrix rho = apply_interaction(st, u, s);
        Eigen::VectorXd via_c = hermitian_spectrum(partial_transpose(rho, {'C'})).values;
        Eigen::VectorXd via_a = hermitian_spectrum(partial_transpose(rho, {'A'}).mat - m).values;
        CHECK((via_c - via_a).cwiseAbs().maxCoeff() < 1e-12);
        double m_norm = hermitian_spectrum(m).values.cwiseAbs().maxCoeff();
        CHECK(g <= m_norm + 1e-10);
    }
    CHECK(stated_form_violations <= 2);  // rare but real; the pinned triple below is one
}

TEST_CASE("pinned counterexample to the un-transposed gap bound") {
    BellDiagonalState st(0.61099266128981533, 0.061844092519363542, 0.0051516518312598597);
    double s = 0.25959112786332184;
    Eigen::Matrix4cd u;
    u << cx(-0.079969246770419167, -0.16540553420310389),
        cx(0.13773979823893817, 0.30789693586788458),
        cx(0.17107521014608867, 0.27069565148788644), cx(0.68250868088813244, -0.53302175466071133),
        cx(0.56267049559146587, 0.10103682904265669), cx(0.08452226033939747, -0.13842128966793413),
        cx(0.72465040032755201, 0.30033503645952236), cx(-0.02791614895849337, 0.1754718166799086),
        cx(0.0023445193339178124, 0.052141191804359645),
        cx(-0.29999788318881287, -0.86746706469364232),
        cx(-0.12253390719013768, 0.12167057875801206),
        cx(0.26139897241641064, -0.23797111205647448),
        cx(0.47222529324973039, 0.64320950953428624),
        cx(-0.020309329459990824, 0.13043178994770638),
        cx(-0.17583732182779155, -0.47053240911209815),
        cx(0.22769930431867624, -0.20418960210592935);
    auto [gap, bound] = gap_bound_check(st, u, s);
    CHECK(gap == doctest::Approx(0.00170171961400208).epsilon(1e-9));
    CHECK(bound == doctest::Approx(0.00162224373512394).epsilon(1e-9));
    CHECK(gap > bound + 5e-5);
}

TEST_CASE("success probability exceeds one half on the usable set") {
    for (const auto& st : canonical_grid(0.1, false)) {
        if (st.s01 <= 0 || st.s10 <= 0 || st.s11 <= 0) continue;
        if (spectrum_closed_form(st)[0] > 0.5 + 1e-12) continue;
        CHECK(run(st).success_probability > 0.5);
    }
}

}  // TEST_SUITE
