#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "shuttle/rally_data.hpp"
#include "shuttle/rla_predictor.hpp"

namespace shuttle {

enum class RulePredictor { Foot, Grip };
enum class RuleMode { Strict, Relaxed };

/// Predictor value (rows) by grouped return destination (columns).
/// Foot: rows Left/Right foot, columns Front/Middle/Rear.
/// Grip: rows Forehand/Backhand, columns Left/Center/Right path.
struct ContingencyTable {
    RulePredictor predictor = RulePredictor::Foot;
    std::array<std::array<std::size_t, 3>, 2> counts{};
    std::array<std::string, 2> row_labels;
    std::array<std::string, 3> column_labels;

    std::size_t total() const noexcept;
    std::size_t row_total(std::size_t row) const noexcept;
};

ContingencyTable foot_contingency(const Dataset& ds);
ContingencyTable grip_contingency(const Dataset& ds);
/// Table with the given counts and the standard labels for `predictor`.
ContingencyTable make_table(RulePredictor predictor, const std::array<std::array<std::size_t, 3>, 2>& counts);

struct RuleSpec {
    RulePredictor predictor = RulePredictor::Foot;
    RuleMode mode = RuleMode::Strict;
    // accepted[row][column]: whether that outcome group counts as a hit
    std::array<std::array<bool, 3>, 2> accepted{};
    /// A rule kept for completeness rather than as a headline classifier.
    bool supplementary = false;

    std::string name() const;
};

/// Left foot -> Rear, Right foot -> Front; relaxed adds Middle to both.
RuleSpec foot_rule(RuleMode mode);
/// Forehand -> Right path, Backhand -> Left path; relaxed adds Center to both.
/// The strict grip rule is flagged supplementary.
RuleSpec grip_rule(RuleMode mode);

/// The rule that gives the same verdicts on a mirrored dataset: foot rows swap
/// (Left <-> Right foot), grip columns swap (Left <-> Right path).
RuleSpec mirror_rule(const RuleSpec& rule);

struct RuleHits {
    std::size_t hits = 0;
    std::size_t total = 0;
    double accuracy() const noexcept { return static_cast<double>(hits) / static_cast<double>(total); }
};

/// Throws std::invalid_argument on an empty table or a predictor mismatch.
RuleHits rule_hits(const ContingencyTable& table, const RuleSpec& rule);
double rule_accuracy(const ContingencyTable& table, const RuleSpec& rule);

struct RuleResult {
    RuleSpec rule;
    RuleHits hits;
};

/// Share of holdout rounds whose observed zone is the most probable zone under
/// the fitted model for their side.
struct ModelHitRate {
    std::size_t hits = 0;
    std::size_t total = 0;
};

struct ValidationReport {
    std::size_t rounds = 0;
    std::optional<std::size_t> declared_rounds;
    ContingencyTable foot;
    ContingencyTable grip;
    std::vector<RuleResult> rules;
    std::optional<std::array<ModelHitRate, 2>> model_hits;  // indexed by ServiceSide
    std::vector<std::string> notes;
};

ModelHitRate argmax_hit_rate(const MultinomialFit& fit, const DesignSpec& design, const Dataset& ds,
                             ServiceSide side);

/// Both tables plus strict and relaxed accuracies of both rules. Rules on an
/// empty table are skipped with a note.
ValidationReport validate(const Dataset& ds, std::optional<std::size_t> declared_rounds = std::nullopt,
                          const RlaModelPair* models = nullptr);

nlohmann::json to_json(const ContingencyTable& t);
nlohmann::json to_json(const ValidationReport& r);
std::string format_table(const ContingencyTable& t);
std::string format_report(const ValidationReport& r);

}  // namespace shuttle
