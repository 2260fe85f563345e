#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "shuttle/design.hpp"
#include "shuttle/interpretation.hpp"

namespace shuttle {

struct SideInterceptFit {
    std::optional<BinaryFit> fit;
    DesignSpec design;                  // design of `fit`
    std::vector<std::string> selected;  // factors chosen by selection, in entry order
    std::vector<SelectionStep> trace;   // empty when no selection was run
    std::string algorithm;
    std::string absence;
};

struct InterceptModelPair {
    SideInterceptFit left;
    SideInterceptFit right;

    const SideInterceptFit& side(ServiceSide s) const { return s == ServiceSide::Left ? left : right; }
};

/// SLA, Foot, Grip and RLA path, in that order: the candidates offered to
/// forward selection for the left-side model.
std::vector<Factor> left_intercept_candidates();

/// Eight zone indicators with zone 5 as reference.
DesignSpec right_intercept_design();

/// Rounds with Intercept=NA are dropped. Left side: forward BIC selection over
/// left_intercept_candidates(). Right side: the full zone design, no selection.
InterceptModelPair fit_intercept_models(const Dataset& ds, const FitOptions& options = {});

/// Odds ratios of every slope against its factor's reference level.
std::vector<Interpretation> intercept_odds_report(const InterceptModelPair& pair);

nlohmann::json to_json(const SideInterceptFit& side);

}  // namespace shuttle
