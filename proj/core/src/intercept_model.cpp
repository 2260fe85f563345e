#include "shuttle/intercept_model.hpp"

#include <algorithm>

#include "shuttle/rla_predictor.hpp"

namespace shuttle {

std::vector<Factor> left_intercept_candidates() {
    return {sla_factor(), foot_factor(), grip_factor(), path_factor()};
}

DesignSpec right_intercept_design() {
    DesignSpec spec;
    spec.factors = {zone_factor(5)};
    spec.response = intercept_response();
    return spec;
}

InterceptModelPair fit_intercept_models(const Dataset& ds, const FitOptions& options) {
    InterceptModelPair pair;
    for (auto side : {ServiceSide::Left, ServiceSide::Right}) {
        auto& slot = side == ServiceSide::Left ? pair.left : pair.right;
        const auto applicable = [side](const RoundRecord& r) {
            return r.service_from == side && r.intercept != InterceptOutcome::NotApplicable;
        };
        if (std::none_of(ds.rounds.begin(), ds.rounds.end(), applicable)) {
            slot.absence = std::string("no rounds with an interception outcome served from the ") +
                           (side == ServiceSide::Left ? "left" : "right");
            slot.design = side == ServiceSide::Left ? DesignSpec{{}, intercept_response()} : right_intercept_design();
            continue;
        }
        try {
            if (side == ServiceSide::Left) {
                auto result = stepwise_bic(ds, left_intercept_candidates(), intercept_response(), applicable, options);
                slot.fit = std::get<BinaryFit>(std::move(result.fit));
                slot.design = std::move(result.design);
                slot.selected = std::move(result.selected);
                slot.trace = std::move(result.trace);
                slot.algorithm = std::move(result.algorithm);
            } else {
                slot.design = right_intercept_design();
                const auto data = build_design(ds, slot.design, applicable);
                slot.fit = fit_logistic(data.x, data.y, options);
                slot.algorithm = "none (full zone design)";
            }
        } catch (const std::exception& e) {
            throw SideFitError(side, e.what());
        }
    }
    return pair;
}

std::vector<Interpretation> intercept_odds_report(const InterceptModelPair& pair) {
    std::vector<Interpretation> out;
    for (auto side : {ServiceSide::Left, ServiceSide::Right}) {
        const auto& slot = pair.side(side);
        if (!slot.fit) continue;
        const auto report = wald(*slot.fit);
        for (const auto& e : report.entries) {
            if (e.term == kInterceptLabel) continue;
            auto item = interpret_odds_effect(e.term, slot.design.reference_term(e.term), e.estimate, e.p_value);
            item.context = side == ServiceSide::Left ? "serving from the left" : "serving from the right";
            out.push_back(std::move(item));
        }
    }
    return out;
}

nlohmann::json to_json(const SideInterceptFit& side) {
    nlohmann::json j;
    if (!side.fit) {
        j["absent"] = side.absence;
        return j;
    }
    j["algorithm"] = side.algorithm;
    j["selected"] = side.selected;
    nlohmann::json trace = nlohmann::json::array();
    for (const auto& s : side.trace) {
        nlohmann::json candidates = nlohmann::json::object();
        for (const auto& [name, b] : s.candidates) candidates[name] = b;
        trace.push_back({{"step", s.step}, {"added", s.added}, {"bic", s.bic}, {"candidates", std::move(candidates)}});
    }
    j["trace"] = std::move(trace);
    j["coefficients"] = coefficient_table_json(wald(*side.fit));
    j["log_likelihood"] = side.fit->log_likelihood;
    j["bic"] = side.fit->bic;
    j["n_obs"] = side.fit->n_obs;
    j["separation_suspected"] = side.fit->diagnostics.separation_suspected;
    return j;
}

}  // namespace shuttle
