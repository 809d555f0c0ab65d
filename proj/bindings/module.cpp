#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "edss/json_io.hpp"
#include "edss/noise.hpp"
#include "edss/optimizer.hpp"
#include "edss/protocol.hpp"
#include "edss/separability.hpp"
#include "edss/verify.hpp"

namespace py = pybind11;
using namespace edss;

namespace {

ChannelKind channel_from(const std::string& name) {
    if (name == "depolarizing") return ChannelKind::Depolarizing;
    if (name == "phaseflip") return ChannelKind::PhaseFlip;
    throw std::invalid_argument("unknown channel kind: " + name);
}

py::dict outcome_dict(const ProtocolOutcome& outcome) {
    py::dict d;
    d["s01"] = outcome.input.s01;
    d["s10"] = outcome.input.s10;
    d["s11"] = outcome.input.s11;
    d["s"] = outcome.s;
    d["branch"] = std::string(to_string(outcome.branch));
    d["lambda_c_ab"] = outcome.lambda_c_ab;
    d["lambda_a_bc"] = outcome.lambda_a_bc;
    d["p"] = outcome.success_probability;
    d["ent_lower_bound"] = outcome.ent_lower_bound;
    d["gap_bound"] = outcome.gap_bound;
    if (outcome.localized)
        d["localized_pt_min"] = outcome.localized->pt_min_eigenvalue;
    else
        d["localized_pt_min"] = py::none();
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "entanglement distribution via separable states: core operations";

    py::class_<BellDiagonalState>(m, "BellDiagonalState")
        .def(py::init<double, double, double>(), py::arg("s01"), py::arg("s10"), py::arg("s11"))
        .def_readonly("s01", &BellDiagonalState::s01)
        .def_readonly("s10", &BellDiagonalState::s10)
        .def_readonly("s11", &BellDiagonalState::s11)
        .def("__repr__", [](const BellDiagonalState& st) {
            return "BellDiagonalState(s01=" + format_real(st.s01) + ", s10=" + format_real(st.s10) +
                   ", s11=" + format_real(st.s11) + ")";
        });

    m.def(
        "canonicalize",
        [](const BellDiagonalState& st, std::optional<double> s) { return canonicalize(st, s); },
        py::arg("state"), py::arg("protocol_s") = py::none());

    m.def("spectrum", [](const BellDiagonalState& st) { return spectrum_closed_form(st); },
          "eigenvalues sorted descending");

    m.def("measures", [](const BellDiagonalState& st) {
        MeasureReport r = measures(st);
        py::dict d;
        d["i_locc"] = r.i_locc;
        d["i_class"] = r.i_class;
        d["i_edss_naive"] = r.i_edss_naive;
        d["lambda"] = r.lambda;
        return d;
    });

    m.def("density_matrix",
          [](const BellDiagonalState& st) { return Eigen::MatrixXcd(to_density_matrix(st).mat); },
          "4x4 graph-basis realization on (A, B)");

    m.def("rho_abc",
          [](const BellDiagonalState& st, double s) { return Eigen::MatrixXcd(build_rho_abc(st, s).mat); },
          py::arg("state"), py::arg("s"), "8x8 protocol state on (C, A, B)");

    m.def("choose_s", [](const BellDiagonalState& st) { return choose_s(st).s; });

    m.def("closed_form_pt", &closed_form_pt, py::arg("state"), py::arg("s"),
          "(lambda_C|AB, lambda_A|BC)");

    m.def("run_protocol", [](const BellDiagonalState& st) { return outcome_dict(run(st)); });

    m.def("decompose_json",
          [](const BellDiagonalState& st, double s, const std::string& cut) {
              SeparableDecomposition dec = separable_decomposition(st, s, cut.at(0));
              DecompositionCheck check = verify_decomposition(dec);
              nlohmann::json j = to_json(dec);
              j["verified"] = check.ok;
              if (!check.ok) j["failure"] = check.failure;
              return j.dump();
          },
          py::arg("state"), py::arg("s"), py::arg("cut"));

    m.def("edss_threshold",
          [](const BellDiagonalState& st, const std::string& kind) {
              return edss_threshold(st, channel_from(kind));
          },
          py::arg("state"), py::arg("channel") = "depolarizing");
    m.def("direct_threshold",
          [](const std::string& kind) { return direct_threshold(channel_from(kind)); },
          py::arg("channel") = "depolarizing");
    m.def("rho_suc_threshold",
          [](const BellDiagonalState& st, const std::string& kind) {
              return rho_suc_threshold(st, channel_from(kind));
          },
          py::arg("state"), py::arg("channel") = "depolarizing");

    m.def("optimize",
          [](const BellDiagonalState& st, int restarts, long budget, std::uint64_t seed) {
              OptimizationResult r = optimize(st, restarts, budget, seed);
              py::dict d;
              d["best_lambda_a_bc"] = r.best_lambda_a_bc;
              d["best_s"] = r.best_s;
              d["generator"] = r.best_params.generator;
              d["cz_baseline"] = r.cz_baseline;
              d["slack"] = r.slack;
              d["evaluations"] = r.evaluations;
              d["best_restart"] = r.best_restart;
              return d;
          },
          py::arg("state"), py::arg("restarts") = 8, py::arg("budget") = 2000,
          py::arg("seed") = 0x9e3779b97f4a7c15ull);

    m.def("dephasing_upper_bound", &dephasing_upper_bound);

    m.def("verify_checks",
          [](double step) {
              std::vector<std::tuple<std::string, bool, std::string>> rows;
              for (const CheckResult& row : verify_table(step))
                  rows.emplace_back(row.name, row.pass, row.detail);
              return rows;
          },
          py::arg("step") = 0.1);
}
