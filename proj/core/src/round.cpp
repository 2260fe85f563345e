#include "shuttle/round.hpp"

#include <algorithm>
#include <cctype>

namespace shuttle {

std::string_view to_string(InterceptOutcome v) noexcept {
    switch (v) {
        case InterceptOutcome::Yes: return "Yes";
        case InterceptOutcome::No: return "No";
        case InterceptOutcome::NotApplicable: break;
    }
    return "NA";
}

std::optional<InterceptOutcome> parse_intercept(std::string_view text) {
    if (text == "Yes") return InterceptOutcome::Yes;
    if (text == "No") return InterceptOutcome::No;
    if (text == "NA") return InterceptOutcome::NotApplicable;
    return std::nullopt;
}

namespace {

bool blank(const std::string& s) {
    return std::all_of(s.begin(), s.end(),
                       [](unsigned char c) { return std::isspace(c) != 0; });
}

}  // namespace

std::vector<FieldError> validate(const RoundRecord& record) {
    std::vector<FieldError> errors;
    if (blank(record.server)) errors.push_back({"server", "player name must be non-empty"});
    if (blank(record.receiver)) errors.push_back({"receiver", "player name must be non-empty"});
    return errors;
}

RoundRecord mirror_round(const RoundRecord& record) {
    RoundRecord out = record;
    out.service_from = flip(record.service_from);
    out.foot = flip(record.foot);
    out.rla = mirror_zone(record.rla);
    out.rdh = flip(record.rdh);
    return out;
}

}  // namespace shuttle
