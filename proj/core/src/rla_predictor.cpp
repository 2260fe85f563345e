#include "shuttle/rla_predictor.hpp"

#include <cmath>
#include <sstream>

#include "text.hpp"

namespace shuttle {

DesignSpec rla_design() {
    DesignSpec spec;
    spec.factors = {sla_factor(), foot_factor(), grip_factor()};
    spec.response = rla_response(5);
    return spec;
}

RlaModelPair fit_rla_models(const Dataset& ds, const FitOptions& options) {
    RlaModelPair pair;
    pair.design = rla_design();
    for (auto side : {ServiceSide::Left, ServiceSide::Right}) {
        auto& slot = side == ServiceSide::Left ? pair.left : pair.right;
        const auto on_side = [side](const RoundRecord& r) { return r.service_from == side; };
        if (std::none_of(ds.rounds.begin(), ds.rounds.end(), on_side)) {
            slot.absence = std::string("no rounds served from the ") + (side == ServiceSide::Left ? "left" : "right");
            continue;
        }
        try {
            const auto data = build_design(ds, pair.design, on_side);
            slot.fit = fit_multinomial(data.x, data.y, pair.design.response.categories,
                                       pair.design.response.reference, options);
        } catch (const std::exception& e) {
            throw SideFitError(side, e.what());
        }
    }
    return pair;
}

std::vector<double> rla_indicator_row(const DesignSpec& design, SlaArea sla, FootFirst foot, GripType grip) {
    RoundRecord r;
    r.sla = sla;
    r.foot = foot;
    r.grip = grip;
    return design.indicator_row(r);
}

const ProbabilityRow* ProbabilityTable::find(SlaArea sla, FootFirst foot, GripType grip) const {
    for (const auto& row : rows)
        if (row.sla == sla && row.foot == foot && row.grip == grip) return &row;
    return nullptr;
}

ProbabilityTable probability_table(const MultinomialFit& fit, const DesignSpec& design) {
    if (fit.categories.size() != kZoneCount) throw std::invalid_argument("probability table needs a 9-zone model");
    ProbabilityTable table;
    table.separation_suspected = fit.diagnostics.separation_suspected;
    for (auto sla : {SlaArea::Inside, SlaArea::Outside, SlaArea::Middle}) {
        for (auto foot : {FootFirst::Right, FootFirst::Left}) {
            for (auto grip : {GripType::Backhand, GripType::Forehand}) {
                ProbabilityRow row{sla, foot, grip, {}};
                const auto probs = predict_proba(fit, rla_indicator_row(design, sla, foot, grip));
                for (std::size_t j = 0; j < fit.categories.size(); ++j) {
                    const auto zone = parse_zone(fit.categories[j]);
                    if (!zone) throw std::invalid_argument("model category '" + fit.categories[j] + "' is not a zone");
                    row.probabilities[static_cast<std::size_t>(zone->index() - 1)] = probs[j];
                }
                table.rows.push_back(row);
            }
        }
    }
    return table;
}

std::vector<Interpretation> interpret(const MultinomialFit& fit, const WaldReport& report, const DesignSpec& design,
                                      double p_max) {
    std::vector<Interpretation> out;
    const auto& reference = fit.categories.at(fit.reference);
    for (const auto& e : report.filtered(p_max).entries) {
        out.push_back(interpret_zone_effect(e.term, design.reference_term(e.term), e.category, reference, e.estimate,
                                            e.p_value));
    }
    return out;
}

nlohmann::json to_json(const ProbabilityTable& t) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : t.rows) {
        nlohmann::json probs;
        for (auto z : all_zones()) probs[std::to_string(z.index())] = r.probabilities[static_cast<std::size_t>(z.index() - 1)];
        rows.push_back({{"sla", std::string(to_string(r.sla))},
                        {"foot", std::string(to_string(r.foot))},
                        {"grip", std::string(to_string(r.grip))},
                        {"probabilities", std::move(probs)}});
    }
    return {{"rows", std::move(rows)}, {"separation_suspected", t.separation_suspected}};
}

nlohmann::json coefficient_table_json(const WaldReport& report) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& e : report.entries) {
        nlohmann::json j{{"term", e.term}, {"estimate", e.estimate}};
        if (!e.category.empty()) j["category"] = e.category;
        j["se"] = e.se ? nlohmann::json(*e.se) : nlohmann::json(nullptr);
        j["z"] = e.z ? nlohmann::json(*e.z) : nlohmann::json(nullptr);
        j["p_value"] = e.p_value ? nlohmann::json(*e.p_value) : nlohmann::json(nullptr);
        rows.push_back(std::move(j));
    }
    return rows;
}

std::string format_coefficient_table(const WaldReport& report) {
    using text::pad_left;
    using text::pad_right;
    bool has_category = false;
    for (const auto& e : report.entries) has_category |= !e.category.empty();

    std::ostringstream os;
    os << pad_right("Variable", 22);
    if (has_category) os << pad_right("RLA", 7);
    os << pad_left("Estimate (SE)", 22) << pad_left("p-value", 10) << '\n';
    for (const auto& e : report.entries) {
        os << pad_right(e.term, 22);
        if (has_category) os << pad_right("No." + e.category, 7);
        const std::string se = e.se ? text::fixed(*e.se, 4) : "NA";
        os << pad_left(text::fixed(e.estimate, 4) + " (" + se + ")", 22)
           << pad_left(e.p_value ? format_p_value(*e.p_value) : "NA", 10) << '\n';
    }
    return os.str();
}

std::string format_probability_table(const ProbabilityTable& t) {
    using text::pad_left;
    using text::pad_right;
    std::ostringstream os;
    os << pad_right("SLA", 9) << pad_right("Foot", 7) << pad_right("Grip", 10);
    for (auto z : all_zones()) os << pad_left("No." + std::to_string(z.index()), 6);
    os << '\n';
    for (const auto& r : t.rows) {
        os << pad_right(to_string(r.sla), 9) << pad_right(to_string(r.foot), 7) << pad_right(to_string(r.grip), 10);
        for (double p : r.probabilities) os << pad_left(text::fixed(p, 2), 6);
        os << '\n';
    }
    if (t.separation_suspected) os << "note: separation suspected; some probabilities are driven to 0\n";
    return os.str();
}

}  // namespace shuttle
