#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "shuttle/glm.hpp"
#include "shuttle/rally_data.hpp"

namespace shuttle {

class DesignError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Which round attribute a factor reads.
enum class FactorSource { ServiceFrom, Sla, Foot, Grip, RlaPath, RlaDepth, RlaZone };

/// Categorical predictor dummy-coded against a reference level. Columns are
/// emitted for the non-reference levels in declared order and labelled
/// "<label>=<level>".
struct Factor {
    std::string name;  // unique within a spec
    std::string label;
    FactorSource source = FactorSource::Sla;
    std::vector<std::string> levels;
    std::string reference;

    std::vector<std::string> column_labels() const;
};

/// Level string of a round for a factor source, e.g. "Outside", "Center path", "No.7".
std::string level_of(FactorSource source, const RoundRecord& record);

enum class ResponseKind { RlaZone, Intercept };

struct ResponseSpec {
    ResponseKind kind = ResponseKind::RlaZone;
    std::vector<std::string> categories;
    std::size_t reference = 0;

    bool binary() const noexcept { return kind == ResponseKind::Intercept; }
};

/// Zones "1".."9" with the given reference zone.
ResponseSpec rla_response(int reference_zone = 5);
/// 0 = not intercepted, 1 = intercepted.
ResponseSpec intercept_response();

struct DesignSpec {
    std::vector<Factor> factors;
    ResponseSpec response;

    /// Throws DesignError on a reference outside the level set or duplicate factor names.
    void validate() const;
    std::vector<std::string> column_labels() const;
    /// Indicator row for one round. Throws DesignError naming the factor on an undeclared level.
    std::vector<double> indicator_row(const RoundRecord& record) const;
    const Factor* find(const std::string& name) const;
    /// "Foot=Left" -> "Foot=Right": the reference level of the column's factor.
    std::string reference_term(const std::string& column) const;
};

/// Commonly used factors.
Factor sla_factor();         // SLA: Outside, Middle | ref Inside
Factor foot_factor();        // Foot: Left | ref Right
Factor grip_factor();        // Grip: Forehand | ref Backhand
Factor path_factor();        // RLA: Center path, Right path | ref Left path
Factor zone_factor(int reference_zone = 5);  // RLA: No.1..No.9 minus reference
Factor side_factor();        // ServiceFrom: Right | ref Left

using RoundFilter = std::function<bool(const RoundRecord&)>;

struct DesignData {
    DesignMatrix x;
    std::vector<int> y;
};

/// Encodes the rounds accepted by `filter` (all rounds when empty).
DesignData build_design(const Dataset& ds, const DesignSpec& spec, const RoundFilter& filter = {});

ModelFit fit_design(const DesignData& data, const ResponseSpec& response, const FitOptions& options = {});

struct SelectionStep {
    int step = 0;
    std::string added;  // empty for the intercept-only start
    double bic = 0.0;
    /// BIC of every factor tried at this step, in declared order; infinity
    /// for a factor aliased with those already selected.
    std::vector<std::pair<std::string, double>> candidates;
};

struct StepwiseResult {
    std::string algorithm = "forward selection by BIC (factor granularity)";
    std::vector<std::string> selected;  // in order of entry
    DesignSpec design;                  // final spec, factors in declared candidate order
    ModelFit fit;
    std::vector<SelectionStep> trace;
};

class StepwiseError : public std::runtime_error {
public:
    StepwiseError(const std::string& what, std::vector<SelectionStep> trace)
        : std::runtime_error(what), trace_(std::move(trace)) {}
    const std::vector<SelectionStep>& trace() const noexcept { return trace_; }

private:
    std::vector<SelectionStep> trace_;
};

/// Forward selection from the intercept-only model. Each step adds the whole
/// factor giving the lowest BIC; stops when no addition lowers it. Ties go to
/// the factor declared first.
StepwiseResult stepwise_bic(const Dataset& ds, const std::vector<Factor>& candidates,
                            const ResponseSpec& response, const RoundFilter& filter = {},
                            const FitOptions& options = {});

void to_json(nlohmann::json& j, const Factor& f);
void from_json(const nlohmann::json& j, Factor& f);
void to_json(nlohmann::json& j, const DesignSpec& s);
void from_json(const nlohmann::json& j, DesignSpec& s);

}  // namespace shuttle
