#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "shuttle/design.hpp"
#include "shuttle/glm.hpp"
#include "shuttle/interpretation.hpp"

namespace shuttle {

/// A fit failure tagged with the serving side it came from.
class SideFitError : public std::runtime_error {
public:
    SideFitError(ServiceSide side, const std::string& what)
        : std::runtime_error(std::string("serving from ") + (side == ServiceSide::Left ? "left" : "right") + ": " +
                             what),
          side_(side) {}
    ServiceSide side() const noexcept { return side_; }

private:
    ServiceSide side_;
};

/// SLA (ref Inside), Foot (ref Right), Grip (ref Backhand); response zone, reference 5.
/// Columns: SLA=Outside, SLA=Middle, Foot=Left, Grip=Forehand.
DesignSpec rla_design();

struct SideRlaFit {
    std::optional<MultinomialFit> fit;
    std::string absence;  // why `fit` is empty
};

struct RlaModelPair {
    DesignSpec design;
    SideRlaFit left;
    SideRlaFit right;

    const SideRlaFit& side(ServiceSide s) const { return s == ServiceSide::Left ? left : right; }
};

/// Separate zone models for serving from the left and from the right. A side
/// with no rounds is reported as absent; other fit failures throw SideFitError.
RlaModelPair fit_rla_models(const Dataset& ds, const FitOptions& options = {});

/// Predictor row for one (SLA, Foot, Grip) combination under `design`.
std::vector<double> rla_indicator_row(const DesignSpec& design, SlaArea sla, FootFirst foot, GripType grip);

struct ProbabilityRow {
    SlaArea sla = SlaArea::Inside;
    FootFirst foot = FootFirst::Right;
    GripType grip = GripType::Backhand;
    std::array<double, kZoneCount> probabilities{};  // zone 1..9
};

/// All 12 combinations, ordered SLA (Inside, Outside, Middle) x Foot (Right,
/// Left) x Grip (Backhand, Forehand).
struct ProbabilityTable {
    std::vector<ProbabilityRow> rows;
    bool separation_suspected = false;

    const ProbabilityRow* find(SlaArea sla, FootFirst foot, GripType grip) const;
};

ProbabilityTable probability_table(const MultinomialFit& fit, const DesignSpec& design = rla_design());

/// Readings of every slope with p < p_max.
std::vector<Interpretation> interpret(const MultinomialFit& fit, const WaldReport& report,
                                      const DesignSpec& design = rla_design(), double p_max = 0.2);

nlohmann::json to_json(const ProbabilityTable& t);
nlohmann::json coefficient_table_json(const WaldReport& report);

/// Variable | RLA | Estimate (SE) | p-value, one line per entry.
std::string format_coefficient_table(const WaldReport& report);
/// SLA | Foot | Grip | No.1 .. No.9 to two decimals.
std::string format_probability_table(const ProbabilityTable& t);

}  // namespace shuttle
