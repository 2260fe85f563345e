#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "shuttle/court.hpp"

namespace shuttle {

/// Third-shot interception outcome. NotApplicable marks rounds where the
/// server's partner was the natural striker; they are kept for landing-area
/// analyses and skipped by interception analyses.
enum class InterceptOutcome { Yes, No, NotApplicable };

std::string_view to_string(InterceptOutcome v) noexcept;  // "Yes" / "No" / "NA"
std::optional<InterceptOutcome> parse_intercept(std::string_view text);

/// First three shots of one short-service rally.
struct RoundRecord {
    std::string server;
    ServiceSide service_from = ServiceSide::Left;
    SlaArea sla = SlaArea::Inside;
    std::string receiver;
    Handedness rdh = Handedness::Right;
    FootFirst foot = FootFirst::Right;
    GripType grip = GripType::Forehand;
    RlaZone rla{5};
    InterceptOutcome intercept = InterceptOutcome::No;

    friend bool operator==(const RoundRecord&, const RoundRecord&) = default;
};

struct FieldError {
    std::string field;
    std::string message;
};

/// Checks the invariants not already enforced by the field types (player names).
std::vector<FieldError> validate(const RoundRecord& record);

/// Reflects a round left-to-right: serving side, first-step foot, receiver hand
/// and landing zone are swapped; SLA and grip are kept.
RoundRecord mirror_round(const RoundRecord& record);

}  // namespace shuttle
