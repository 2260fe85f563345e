#include <gtest/gtest.h>

#include <limits>

#include "shuttle/design.hpp"
#include "shuttle/synthetic.hpp"
#include "test_support.hpp"

using namespace shuttle;
using testing_support::round_of;

namespace {

bool applicable_left(const RoundRecord& r) {
    return r.service_from == ServiceSide::Left && r.intercept != InterceptOutcome::NotApplicable;
}

/// Smallest-BIC subset by brute force; ties go to the subset found first in
/// size-then-lexicographic order.
std::pair<std::vector<std::string>, double> exhaustive(const Dataset& ds, const std::vector<Factor>& candidates,
                                                       const ResponseSpec& response, const RoundFilter& filter) {
    const std::size_t n = candidates.size();
    double best = std::numeric_limits<double>::infinity();
    std::vector<std::string> best_names;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        DesignSpec spec;
        spec.response = response;
        std::vector<std::string> names;
        for (std::size_t i = 0; i < n; ++i) {
            if (mask & (1u << i)) {
                spec.factors.push_back(candidates[i]);
                names.push_back(candidates[i].name);
            }
        }
        const double b = bic(fit_design(build_design(ds, spec, filter), response));
        if (b < best - 1e-9) {
            best = b;
            best_names = names;
        }
    }
    return {best_names, best};
}

}  // namespace

TEST(Design, ColumnsAndIndicators) {
    DesignSpec spec;
    spec.factors = {sla_factor(), foot_factor(), grip_factor()};
    spec.response = rla_response(5);
    EXPECT_EQ(spec.column_labels(), (std::vector<std::string>{"SLA=Outside", "SLA=Middle", "Foot=Left", "Grip=Forehand"}));
    const auto row = spec.indicator_row(round_of(ServiceSide::Left, SlaArea::Middle, FootFirst::Left, GripType::Backhand, 3));
    EXPECT_EQ(row, (std::vector<double>{0, 1, 1, 0}));
    EXPECT_EQ(spec.response.categories.at(spec.response.reference), "5");
    EXPECT_EQ(spec.reference_term("Foot=Left"), "Foot=Right");
}

TEST(Design, ZoneAndPathFactors) {
    EXPECT_EQ(zone_factor(5).column_labels().size(), 8u);
    EXPECT_EQ(zone_factor(5).column_labels().front(), "RLA=No.1");
    EXPECT_EQ(path_factor().column_labels(), (std::vector<std::string>{"RLA=Center path", "RLA=Right path"}));
    DesignSpec spec{{path_factor()}, intercept_response()};
    EXPECT_EQ(spec.indicator_row(round_of(ServiceSide::Left, SlaArea::Inside, FootFirst::Left, GripType::Forehand, 6)),
              (std::vector<double>{0, 1}));
}

TEST(Design, InvalidSpecsAreRejected) {
    DesignSpec dup{{sla_factor(), sla_factor()}, rla_response()};
    EXPECT_THROW(dup.validate(), DesignError);
    auto bad = foot_factor();
    bad.reference = "Middle";
    EXPECT_THROW((DesignSpec{{bad}, rla_response()}.validate()), DesignError);
    EXPECT_THROW(rla_response(0), std::out_of_range);
}

TEST(Design, BinaryDesignRefusesNotApplicableRounds) {
    Dataset ds;
    ds.rounds.push_back(round_of(ServiceSide::Left, SlaArea::Inside, FootFirst::Left, GripType::Forehand, 1,
                                 InterceptOutcome::NotApplicable));
    DesignSpec spec{{foot_factor()}, intercept_response()};
    EXPECT_THROW(build_design(ds, spec), DesignError);
    EXPECT_THROW(build_design(ds, spec, [](const RoundRecord&) { return false; }), DesignError);
}

TEST(Design, JsonRoundTrip) {
    DesignSpec spec{{sla_factor(), path_factor(), zone_factor(5)}, intercept_response()};
    const nlohmann::json j = spec;
    const auto back = j.get<DesignSpec>();
    EXPECT_EQ(back.column_labels(), spec.column_labels());
    EXPECT_EQ(back.response.categories, spec.response.categories);
    EXPECT_EQ(back.factors[1].source, FactorSource::RlaPath);
}

TEST(Stepwise, MatchesExhaustiveSearch) {
    const auto config = default_generator_config();
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
        const auto ds = generate_synthetic(config, 1500, seed);
        const std::vector<Factor> candidates{sla_factor(), foot_factor(), grip_factor(), path_factor()};
        const auto result = stepwise_bic(ds, candidates, intercept_response(), applicable_left);
        const auto [names, best] = exhaustive(ds, candidates, intercept_response(), applicable_left);
        EXPECT_NEAR(bic(result.fit), best, 1e-8) << seed;
        auto selected = result.selected;
        std::vector<std::string> declared;
        for (const auto& f : result.design.factors) declared.push_back(f.name);
        EXPECT_EQ(declared, names) << seed;
        EXPECT_EQ(result.trace.front().step, 0);
        EXPECT_EQ(result.trace.size(), result.selected.size() + 1);
    }
}

TEST(Stepwise, ZoneResponse) {
    const auto ds = generate_synthetic(default_generator_config(), 900, 17);
    const auto right = [](const RoundRecord& r) { return r.service_from == ServiceSide::Right; };
    const std::vector<Factor> candidates{sla_factor(), foot_factor(), grip_factor()};
    const auto result = stepwise_bic(ds, candidates, rla_response(5), right);
    const auto [names, best] = exhaustive(ds, candidates, rla_response(5), right);
    EXPECT_NEAR(bic(result.fit), best, 1e-8);
}

TEST(Stepwise, PureNoiseUsuallySelectsNothing) {
    auto config = default_generator_config();
    config.intercept[0].zone_effect.fill(0.0);
    int empty = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto ds = generate_synthetic(config, 600, seed);
        const auto result = stepwise_bic(ds, {sla_factor(), foot_factor(), grip_factor(), path_factor()},
                                         intercept_response(), applicable_left);
        empty += result.selected.empty();
    }
    EXPECT_GT(empty, 10);
}

TEST(Stepwise, TiesGoToTheFirstDeclaredFactor) {
    // Two factors that carry identical information: Foot and a relabelled copy.
    Dataset ds;
    for (int i = 0; i < 80; ++i) {
        const bool left = i % 2 == 0;
        const bool yes = left ? (i % 8 != 0) : (i % 8 == 1);
        ds.rounds.push_back(round_of(ServiceSide::Left, SlaArea::Inside, left ? FootFirst::Left : FootFirst::Right,
                                     left ? GripType::Forehand : GripType::Backhand, 5,
                                     yes ? InterceptOutcome::Yes : InterceptOutcome::No));
    }
    const auto result = stepwise_bic(ds, {grip_factor(), foot_factor()}, intercept_response());
    ASSERT_FALSE(result.selected.empty());
    EXPECT_EQ(result.selected.front(), "Grip");
    const auto swapped = stepwise_bic(ds, {foot_factor(), grip_factor()}, intercept_response());
    EXPECT_EQ(swapped.selected.front(), "Foot");
}

TEST(Stepwise, FailuresCarryTheTrace) {
    Dataset ds;
    for (int i = 0; i < 10; ++i)
        ds.rounds.push_back(round_of(ServiceSide::Left, SlaArea::Inside, FootFirst::Left, GripType::Forehand, 5));
    try {
        stepwise_bic(ds, {foot_factor()}, intercept_response());
        FAIL() << "expected StepwiseError";
    } catch (const StepwiseError& e) {
        EXPECT_TRUE(e.trace().empty());
        EXPECT_NE(std::string(e.what()).find("intercept-only"), std::string::npos);
    }
}
