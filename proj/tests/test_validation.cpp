#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "shuttle/synthetic.hpp"
#include "shuttle/validation.hpp"
#include "test_support.hpp"

using namespace shuttle;
using testing_support::load_fixture;
using testing_support::round_of;

namespace {

std::string percent(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1f%%", 100.0 * v);
    return buf;
}

}  // namespace

TEST(Validation, FixtureTables) {
    const auto ds = load_fixture("validation_match.csv");
    ASSERT_EQ(ds.rounds.size(), 88u);
    const auto foot = foot_contingency(ds);
    EXPECT_EQ(foot.counts[0], (std::array<std::size_t, 3>{2, 13, 12}));
    EXPECT_EQ(foot.counts[1], (std::array<std::size_t, 3>{22, 24, 15}));
    const auto grip = grip_contingency(ds);
    EXPECT_EQ(grip.counts[0], (std::array<std::size_t, 3>{5, 21, 15}));
    EXPECT_EQ(grip.counts[1], (std::array<std::size_t, 3>{24, 19, 4}));
    EXPECT_EQ(foot.total(), 88u);
    EXPECT_EQ(grip.row_total(0), 41u);
}

TEST(Validation, FixtureAccuracies) {
    const auto ds = load_fixture("validation_match.csv");
    const auto foot = foot_contingency(ds);
    const auto grip = grip_contingency(ds);
    const auto strict_foot = rule_hits(foot, foot_rule(RuleMode::Strict));
    const auto relaxed_foot = rule_hits(foot, foot_rule(RuleMode::Relaxed));
    const auto relaxed_grip = rule_hits(grip, grip_rule(RuleMode::Relaxed));
    EXPECT_EQ(strict_foot.hits, 34u);
    EXPECT_EQ(relaxed_foot.hits, 71u);
    EXPECT_EQ(relaxed_grip.hits, 79u);
    EXPECT_EQ(percent(strict_foot.accuracy()), "38.6%");
    EXPECT_EQ(percent(relaxed_foot.accuracy()), "80.7%");
    EXPECT_EQ(percent(relaxed_grip.accuracy()), "89.8%");
    EXPECT_TRUE(grip_rule(RuleMode::Strict).supplementary);
    EXPECT_FALSE(foot_rule(RuleMode::Strict).supplementary);
}

TEST(Validation, EmptyAndMismatchedTablesThrow) {
    const auto empty = make_table(RulePredictor::Foot, {});
    EXPECT_THROW(rule_accuracy(empty, foot_rule(RuleMode::Strict)), std::invalid_argument);
    const auto grip = make_table(RulePredictor::Grip, {{{1, 0, 0}, {0, 0, 1}}});
    EXPECT_THROW(rule_accuracy(grip, foot_rule(RuleMode::Strict)), std::invalid_argument);
}

TEST(Validation, SingleRound) {
    Dataset ds;
    ds.rounds.push_back(round_of(ServiceSide::Left, SlaArea::Inside, FootFirst::Right, GripType::Forehand, 3));
    const auto grip = grip_contingency(ds);
    EXPECT_DOUBLE_EQ(rule_accuracy(grip, grip_rule(RuleMode::Strict)), 1.0);
    const auto foot = foot_contingency(ds);
    EXPECT_DOUBLE_EQ(rule_accuracy(foot, foot_rule(RuleMode::Strict)), 1.0);
}

TEST(Validation, RelaxedNeverBelowStrict) {
    std::mt19937 gen(5);
    std::uniform_int_distribution<std::size_t> cell(0, 20);
    for (int trial = 0; trial < 200; ++trial) {
        std::array<std::array<std::size_t, 3>, 2> counts{};
        for (auto& row : counts)
            for (auto& c : row) c = cell(gen);
        counts[0][0] += 1;
        for (auto predictor : {RulePredictor::Foot, RulePredictor::Grip}) {
            const auto t = make_table(predictor, counts);
            const auto strict = predictor == RulePredictor::Foot ? foot_rule(RuleMode::Strict) : grip_rule(RuleMode::Strict);
            const auto relaxed =
                predictor == RulePredictor::Foot ? foot_rule(RuleMode::Relaxed) : grip_rule(RuleMode::Relaxed);
            EXPECT_GE(rule_accuracy(t, relaxed), rule_accuracy(t, strict));
        }
    }
}

TEST(Validation, OrderAndMirrorInvariance) {
    const auto ds = load_fixture("validation_match.csv");
    auto shuffled = ds;
    std::mt19937 gen(11);
    std::shuffle(shuffled.rounds.begin(), shuffled.rounds.end(), gen);
    Dataset mirrored;
    for (const auto& r : ds.rounds) mirrored.rounds.push_back(mirror_round(r));
    for (auto mode : {RuleMode::Strict, RuleMode::Relaxed}) {
        for (const auto& [rule, table_of] :
             {std::pair{foot_rule(mode), &foot_contingency}, std::pair{grip_rule(mode), &grip_contingency}}) {
            const auto base = rule_hits(table_of(ds), rule);
            EXPECT_EQ(rule_hits(table_of(shuffled), rule).hits, base.hits);
            EXPECT_EQ(rule_hits(table_of(mirrored), mirror_rule(rule)).hits, base.hits);
        }
    }
}

TEST(Validation, ReportNotesAndModelHits) {
    const auto ds = load_fixture("validation_match.csv");
    const auto report = validate(ds, 89);
    EXPECT_EQ(report.rounds, 88u);
    EXPECT_EQ(report.rules.size(), 4u);
    const bool noted = std::any_of(report.notes.begin(), report.notes.end(), [](const std::string& n) {
        return n.find("declared 89 rounds but the data has 88") != std::string::npos;
    });
    EXPECT_TRUE(noted);
    EXPECT_NE(format_report(report).find("80.7%"), std::string::npos);
    EXPECT_EQ(to_json(report)["rounds"], 88);

    const auto models = fit_rla_models(generate_synthetic(default_generator_config(), 2000, 9));
    const auto with_models = validate(ds, std::nullopt, &models);
    ASSERT_TRUE(with_models.model_hits);
    EXPECT_EQ((*with_models.model_hits)[0].total + (*with_models.model_hits)[1].total, 88u);

    const auto empty = validate(Dataset{});
    EXPECT_TRUE(empty.rules.empty());
    EXPECT_FALSE(empty.notes.empty());
}
