#include "edss/json_io.hpp"

#include <cstdio>

namespace edss {

std::string format_real(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

double round12(double v) { return std::strtod(format_real(v).c_str(), nullptr); }

nlohmann::json to_json(const BellDiagonalState& state) {
    return {{"s01", round12(state.s01)}, {"s10", round12(state.s10)}, {"s11", round12(state.s11)}};
}

BellDiagonalState bell_state_from_json(const nlohmann::json& j) {
    return BellDiagonalState(j.at("s01").get<double>(), j.at("s10").get<double>(),
                             j.at("s11").get<double>());
}

nlohmann::json to_json(const MeasureReport& report) {
    return {{"i_locc", round12(report.i_locc)},
            {"i_class", round12(report.i_class)},
            {"i_edss_naive", round12(report.i_edss_naive)},
            {"lambda",
             {round12(report.lambda[0]), round12(report.lambda[1]), round12(report.lambda[2]),
              round12(report.lambda[3])}}};
}

nlohmann::json coefficients_json(const GraphDiagonalState& state) {
    nlohmann::json arr = nlohmann::json::array();
    for (Eigen::Index x = 0; x < state.coeffs.size(); ++x) arr.push_back(round12(state.coeffs(x)));
    return arr;
}

nlohmann::json to_json(const ProtocolOutcome& outcome) {
    nlohmann::json j{{"s01", round12(outcome.input.s01)},
                     {"s10", round12(outcome.input.s10)},
                     {"s11", round12(outcome.input.s11)},
                     {"s", round12(outcome.s)},
                     {"branch", to_string(outcome.branch)},
                     {"lambda_c_ab", round12(outcome.lambda_c_ab)},
                     {"lambda_a_bc", round12(outcome.lambda_a_bc)},
                     {"p", round12(outcome.success_probability)},
                     {"ent_lower_bound", round12(outcome.ent_lower_bound)},
                     {"gap_bound", round12(outcome.gap_bound)}};
    if (outcome.localized)
        j["localized_pt_min"] = round12(outcome.localized->pt_min_eigenvalue);
    else
        j["localized_pt_min"] = nullptr;
    if (outcome.s_degenerate) j["s_degenerate"] = true;
    return j;
}

nlohmann::json to_json(const SeparableDecomposition& decomposition) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& term : decomposition.terms) {
        nlohmann::json words = nlohmann::json::array();
        for (const auto& [coeff, word] : term.words)
            words.push_back({{"coeff", round12(coeff)}, {"pauli", word.to_string(decomposition.labels)}});
        terms.push_back({{"label", term.label}, {"words", words}});
    }
    return {{"state", to_json(decomposition.input)},
            {"s", round12(decomposition.s)},
            {"cut", std::string(1, decomposition.cut)},
            {"terms", terms}};
}

nlohmann::json to_json(const OptimizationResult& result) {
    nlohmann::json gen = nlohmann::json::array();
    for (double c : result.best_params.generator) gen.push_back(round12(c));
    return {{"best_lambda_a_bc", round12(result.best_lambda_a_bc)},
            {"best_s", round12(result.best_s)},
            {"generator", gen},
            {"cz_baseline", round12(result.cz_baseline)},
            {"slack", round12(result.slack)},
            {"evaluations", result.evaluations},
            {"best_restart", result.best_restart}};
}

nlohmann::json to_json(const NoiseComparison& comparison) {
    return {{"q_star_edss", round12(comparison.q_star_edss)},
            {"q_star_direct", round12(comparison.q_star_direct)},
            {"q_star_suc", round12(comparison.q_star_suc)},
            {"lambda_half_family", comparison.lambda_half_family},
            {"direct_ge_edss", comparison.direct_ge_edss},
            {"edss_ge_suc", comparison.edss_ge_suc}};
}

std::string sweep_csv_header() {
    return "s01,s10,s11,s,branch,lambda_c_ab,lambda_a_bc,p,ent_lower_bound,i_class,i_edss_naive";
}

std::string sweep_csv_row(const ProtocolOutcome& outcome, const MeasureReport& m) {
    std::string row;
    row += format_real(outcome.input.s01);
    row += ',';
    row += format_real(outcome.input.s10);
    row += ',';
    row += format_real(outcome.input.s11);
    row += ',';
    row += format_real(outcome.s);
    row += ',';
    row += to_string(outcome.branch);
    row += ',';
    row += format_real(outcome.lambda_c_ab);
    row += ',';
    row += format_real(outcome.lambda_a_bc);
    row += ',';
    row += format_real(outcome.success_probability);
    row += ',';
    row += format_real(outcome.ent_lower_bound);
    row += ',';
    row += format_real(m.i_class);
    row += ',';
    row += format_real(m.i_edss_naive);
    return row;
}

std::string noise_csv_header() {
    return "s01,s10,s11,channel,q_star_edss,q_star_direct,q_star_suc";
}

std::string noise_csv_row(const BellDiagonalState& state, ChannelKind kind,
                          const NoiseComparison& c) {
    std::string row;
    row += format_real(state.s01);
    row += ',';
    row += format_real(state.s10);
    row += ',';
    row += format_real(state.s11);
    row += ',';
    row += to_string(kind);
    row += ',';
    row += format_real(c.q_star_edss);
    row += ',';
    row += format_real(c.q_star_direct);
    row += ',';
    row += format_real(c.q_star_suc);
    return row;
}

}  // namespace edss
