#include "shuttle/validation.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "text.hpp"

namespace shuttle {

namespace {

std::size_t idx(auto e) { return static_cast<std::size_t>(e); }

void label(ContingencyTable& t) {
    if (t.predictor == RulePredictor::Foot) {
        t.row_labels = {"Left foot", "Right foot"};
        t.column_labels = {"Front", "Middle", "Rear"};
    } else {
        t.row_labels = {"Forehand", "Backhand"};
        t.column_labels = {"Left path", "Center path", "Right path"};
    }
}

const char* predictor_name(RulePredictor p) { return p == RulePredictor::Foot ? "foot" : "grip"; }
const char* mode_name(RuleMode m) { return m == RuleMode::Strict ? "strict" : "relaxed"; }

}  // namespace

std::size_t ContingencyTable::total() const noexcept { return row_total(0) + row_total(1); }

std::size_t ContingencyTable::row_total(std::size_t row) const noexcept {
    return counts[row][0] + counts[row][1] + counts[row][2];
}

ContingencyTable make_table(RulePredictor predictor, const std::array<std::array<std::size_t, 3>, 2>& counts) {
    ContingencyTable t;
    t.predictor = predictor;
    t.counts = counts;
    label(t);
    return t;
}

ContingencyTable foot_contingency(const Dataset& ds) {
    ContingencyTable t = make_table(RulePredictor::Foot, {});
    for (const auto& r : ds.rounds) ++t.counts[idx(r.foot)][idx(depth_of(r.rla))];
    return t;
}

ContingencyTable grip_contingency(const Dataset& ds) {
    ContingencyTable t = make_table(RulePredictor::Grip, {});
    for (const auto& r : ds.rounds) ++t.counts[idx(r.grip)][idx(path_of(r.rla))];
    return t;
}

std::string RuleSpec::name() const { return std::string(mode_name(mode)) + " " + predictor_name(predictor) + " rule"; }

RuleSpec foot_rule(RuleMode mode) {
    RuleSpec r;
    r.predictor = RulePredictor::Foot;
    r.mode = mode;
    r.accepted[idx(FootFirst::Left)][idx(DepthGroup::Rear)] = true;
    r.accepted[idx(FootFirst::Right)][idx(DepthGroup::Front)] = true;
    if (mode == RuleMode::Relaxed) {
        r.accepted[0][idx(DepthGroup::Middle)] = true;
        r.accepted[1][idx(DepthGroup::Middle)] = true;
    }
    return r;
}

RuleSpec grip_rule(RuleMode mode) {
    RuleSpec r;
    r.predictor = RulePredictor::Grip;
    r.mode = mode;
    r.accepted[idx(GripType::Forehand)][idx(PathGroup::RightPath)] = true;
    r.accepted[idx(GripType::Backhand)][idx(PathGroup::LeftPath)] = true;
    if (mode == RuleMode::Relaxed) {
        r.accepted[0][idx(PathGroup::CenterPath)] = true;
        r.accepted[1][idx(PathGroup::CenterPath)] = true;
    }
    r.supplementary = mode == RuleMode::Strict;
    return r;
}

RuleSpec mirror_rule(const RuleSpec& rule) {
    RuleSpec m = rule;
    if (rule.predictor == RulePredictor::Foot) {
        std::swap(m.accepted[0], m.accepted[1]);
    } else {
        for (auto& row : m.accepted) std::swap(row[0], row[2]);
    }
    return m;
}

RuleHits rule_hits(const ContingencyTable& table, const RuleSpec& rule) {
    if (table.predictor != rule.predictor) {
        throw std::invalid_argument(std::string("a ") + predictor_name(rule.predictor) + " rule cannot score a " +
                                    predictor_name(table.predictor) + " table");
    }
    RuleHits h;
    h.total = table.total();
    if (h.total == 0) throw std::invalid_argument("accuracy of an empty contingency table is undefined");
    for (std::size_t row = 0; row < 2; ++row)
        for (std::size_t col = 0; col < 3; ++col)
            if (rule.accepted[row][col]) h.hits += table.counts[row][col];
    return h;
}

double rule_accuracy(const ContingencyTable& table, const RuleSpec& rule) { return rule_hits(table, rule).accuracy(); }

ModelHitRate argmax_hit_rate(const MultinomialFit& fit, const DesignSpec& design, const Dataset& ds,
                             ServiceSide side) {
    ModelHitRate rate;
    for (const auto& r : ds.rounds) {
        if (r.service_from != side) continue;
        const auto probs = predict_proba(fit, rla_indicator_row(design, r.sla, r.foot, r.grip));
        const auto best = static_cast<std::size_t>(std::max_element(probs.begin(), probs.end()) - probs.begin());
        ++rate.total;
        if (fit.categories.at(best) == std::to_string(r.rla.index())) ++rate.hits;
    }
    return rate;
}

ValidationReport validate(const Dataset& ds, std::optional<std::size_t> declared_rounds, const RlaModelPair* models) {
    ValidationReport report;
    report.rounds = ds.rounds.size();
    report.declared_rounds = declared_rounds;
    report.foot = foot_contingency(ds);
    report.grip = grip_contingency(ds);

    if (!ds.canonicalized) report.notes.push_back("dataset was not canonicalized for receiver handedness");
    if (declared_rounds && *declared_rounds != report.rounds) {
        report.notes.push_back("declared " + std::to_string(*declared_rounds) + " rounds but the data has " +
                               std::to_string(report.rounds) + "; accuracies use the tabulated rounds");
    }

    if (report.rounds == 0) {
        report.notes.push_back("no rounds: accuracies are undefined");
    } else {
        for (auto mode : {RuleMode::Strict, RuleMode::Relaxed}) {
            const auto rule = foot_rule(mode);
            report.rules.push_back({rule, rule_hits(report.foot, rule)});
        }
        for (auto mode : {RuleMode::Strict, RuleMode::Relaxed}) {
            const auto rule = grip_rule(mode);
            report.rules.push_back({rule, rule_hits(report.grip, rule)});
        }
    }

    if (models) {
        std::array<ModelHitRate, 2> hits{};
        for (auto side : {ServiceSide::Left, ServiceSide::Right}) {
            const auto& slot = models->side(side);
            if (slot.fit) hits[idx(side)] = argmax_hit_rate(*slot.fit, models->design, ds, side);
        }
        report.model_hits = hits;
    }
    return report;
}

nlohmann::json to_json(const ContingencyTable& t) {
    nlohmann::json rows = nlohmann::json::object();
    for (std::size_t r = 0; r < 2; ++r) {
        nlohmann::json row = nlohmann::json::object();
        for (std::size_t c = 0; c < 3; ++c) row[t.column_labels[c]] = t.counts[r][c];
        rows[t.row_labels[r]] = std::move(row);
    }
    return {{"predictor", predictor_name(t.predictor)},
            {"rows", t.row_labels},
            {"columns", t.column_labels},
            {"counts", std::move(rows)},
            {"total", t.total()}};
}

nlohmann::json to_json(const ValidationReport& r) {
    nlohmann::json j;
    j["rounds"] = r.rounds;
    j["declared_rounds"] = r.declared_rounds ? nlohmann::json(*r.declared_rounds) : nlohmann::json(nullptr);
    j["foot_table"] = to_json(r.foot);
    j["grip_table"] = to_json(r.grip);
    nlohmann::json rules = nlohmann::json::array();
    for (const auto& rr : r.rules) {
        rules.push_back({{"rule", rr.rule.name()},
                         {"predictor", predictor_name(rr.rule.predictor)},
                         {"mode", mode_name(rr.rule.mode)},
                         {"hits", rr.hits.hits},
                         {"total", rr.hits.total},
                         {"accuracy", rr.hits.accuracy()},
                         {"display", text::percent(rr.hits.accuracy())},
                         {"supplementary", rr.rule.supplementary}});
    }
    j["rules"] = std::move(rules);
    if (r.model_hits) {
        nlohmann::json m;
        for (auto side : {ServiceSide::Left, ServiceSide::Right}) {
            const auto& h = (*r.model_hits)[idx(side)];
            m[std::string(to_string(side))] = {
                {"hits", h.hits},
                {"total", h.total},
                {"accuracy", h.total ? nlohmann::json(static_cast<double>(h.hits) / static_cast<double>(h.total))
                                     : nlohmann::json(nullptr)}};
        }
        j["model_argmax_hits"] = std::move(m);
    }
    j["notes"] = r.notes;
    return j;
}

std::string format_table(const ContingencyTable& t) {
    using text::pad_left;
    using text::pad_right;
    std::ostringstream os;
    os << pad_right(t.predictor == RulePredictor::Foot ? "Foot" : "Grip", 12);
    for (const auto& c : t.column_labels) os << pad_left(c, 13);
    os << pad_left("Total", 8) << '\n';
    for (std::size_t r = 0; r < 2; ++r) {
        os << pad_right(t.row_labels[r], 12);
        for (std::size_t c = 0; c < 3; ++c) os << pad_left(std::to_string(t.counts[r][c]), 13);
        os << pad_left(std::to_string(t.row_total(r)), 8) << '\n';
    }
    return os.str();
}

std::string format_report(const ValidationReport& r) {
    std::ostringstream os;
    os << "Rounds: " << r.rounds;
    if (r.declared_rounds) os << " (declared " << *r.declared_rounds << ")";
    os << "\n\n" << format_table(r.foot) << '\n' << format_table(r.grip) << '\n';
    for (const auto& rr : r.rules) {
        os << text::pad_right(rr.rule.name(), 20) << text::pad_left(std::to_string(rr.hits.hits), 4) << "/"
           << rr.hits.total << "  " << text::percent(rr.hits.accuracy());
        if (rr.rule.supplementary) os << "  (supplementary)";
        os << '\n';
    }
    if (r.model_hits) {
        os << '\n';
        for (auto side : {ServiceSide::Left, ServiceSide::Right}) {
            const auto& h = (*r.model_hits)[idx(side)];
            os << "Model argmax hits, serving " << to_string(side) << ": " << h.hits << "/" << h.total;
            if (h.total) os << "  " << text::percent(static_cast<double>(h.hits) / static_cast<double>(h.total));
            os << '\n';
        }
    }
    for (const auto& n : r.notes) os << "note: " << n << '\n';
    return os.str();
}

}  // namespace shuttle
