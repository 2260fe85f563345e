#include "shuttle/interpretation.hpp"

#include <cmath>
#include <sstream>

#include "shuttle/glm.hpp"
#include "text.hpp"

namespace shuttle {

Interpretation interpret_zone_effect(const std::string& term, const std::string& baseline_level,
                                     const std::string& zone, const std::string& reference_zone,
                                     double estimate, std::optional<double> p_value) {
    Interpretation out;
    out.term = term;
    out.category = zone;
    out.estimate = estimate;
    out.odds_ratio = odds_ratio(estimate);
    out.p_value = p_value;
    const std::string ratio = "the ratio of the probabilities of RLA = No." + zone + " and RLA = No." + reference_zone;
    if (estimate == 0.0) {
        out.sentence = "For " + term + ", " + ratio + " is the same as for " + baseline_level + " (ratio 1.00).";
    } else {
        out.sentence = "For " + term + ", " + ratio + " is exp(" + text::fixed(estimate, 4) + ") = " +
                       text::fixed(out.odds_ratio, 2) + " times that for " + baseline_level +
                       ", controlling for the other predictors.";
    }
    return out;
}

Interpretation interpret_odds_effect(const std::string& term, const std::string& baseline_level, double estimate,
                                     std::optional<double> p_value) {
    Interpretation out;
    out.term = term;
    out.estimate = estimate;
    out.odds_ratio = odds_ratio(estimate);
    out.p_value = p_value;
    if (estimate == 0.0) {
        out.sentence = "For " + term + ", the odds of an interception equal those for " + baseline_level +
                       " (ratio 1.00).";
    } else {
        out.sentence = "For " + term + ", the odds of an interception are exp(" + text::fixed(estimate, 4) +
                       ") = " + text::fixed(out.odds_ratio, 2) + " times those for " + baseline_level + ".";
    }
    return out;
}

nlohmann::json to_json(const Interpretation& i) {
    nlohmann::json j{{"term", i.term}, {"estimate", i.estimate}, {"odds_ratio", i.odds_ratio}, {"sentence", i.sentence}};
    if (!i.category.empty()) j["category"] = i.category;
    if (!i.context.empty()) j["context"] = i.context;
    j["p_value"] = i.p_value ? nlohmann::json(*i.p_value) : nlohmann::json(nullptr);
    return j;
}

std::string format_interpretations(const std::vector<Interpretation>& items) {
    std::ostringstream os;
    for (const auto& i : items) {
        os << "- ";
        if (!i.context.empty()) os << '[' << i.context << "] ";
        os << i.sentence;
        if (i.p_value) {
            const auto p = format_p_value(*i.p_value);
            os << (p.front() == '<' ? " (p " : " (p = ") << p << ")";
        }
        os << '\n';
    }
    return os.str();
}

}  // namespace shuttle
