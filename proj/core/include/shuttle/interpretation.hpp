#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace shuttle {

/// One coefficient read as a multiplicative effect.
struct Interpretation {
    std::string term;        // "Foot=Left"
    std::string category;    // response category ("7"), empty for binary models
    double estimate = 0.0;
    double odds_ratio = 1.0; // exp(estimate)
    std::optional<double> p_value;
    std::string sentence;
    std::string context;     // e.g. "serving from the left"; may be empty
};

/// Generalized-logit reading: the ratio P(zone j) / P(reference zone) under
/// `term` is exp(estimate) times the ratio under `baseline_level`.
Interpretation interpret_zone_effect(const std::string& term, const std::string& baseline_level,
                                     const std::string& zone, const std::string& reference_zone,
                                     double estimate, std::optional<double> p_value);

/// Logistic reading: the odds of interception under `term` are exp(estimate)
/// times the odds under `baseline_level`.
Interpretation interpret_odds_effect(const std::string& term, const std::string& baseline_level,
                                     double estimate, std::optional<double> p_value);

nlohmann::json to_json(const Interpretation& i);
std::string format_interpretations(const std::vector<Interpretation>& items);

}  // namespace shuttle
