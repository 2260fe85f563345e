#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <numeric>

#include <unistd.h>

#include "shuttle/intercept_model.hpp"
#include "shuttle/model_dir.hpp"
#include "shuttle/model_io.hpp"
#include "shuttle/rla_predictor.hpp"
#include "shuttle/synthetic.hpp"
#include "test_support.hpp"

using namespace shuttle;
using testing_support::round_of;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const std::string& name) {
    auto dir = fs::temp_directory_path() / ("shuttle_test_" + name + "_" + std::to_string(::getpid()));
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

const Dataset& shared_data() {
    static const Dataset ds = generate_synthetic(default_generator_config(), 3000, 42);
    return ds;
}

}  // namespace

TEST(RlaPredictor, DesignColumns) {
    EXPECT_EQ(rla_design().column_labels(),
              (std::vector<std::string>{"SLA=Outside", "SLA=Middle", "Foot=Left", "Grip=Forehand"}));
}

TEST(RlaPredictor, FitsBothSidesAndTablesAreNormalized) {
    const auto pair = fit_rla_models(shared_data());
    for (auto side : {ServiceSide::Left, ServiceSide::Right}) {
        const auto& slot = pair.side(side);
        ASSERT_TRUE(slot.fit);
        EXPECT_EQ(slot.fit->categories.size(), 9u);
        EXPECT_EQ(slot.fit->categories[slot.fit->reference], "5");
        const auto table = probability_table(*slot.fit);
        ASSERT_EQ(table.rows.size(), 12u);
        EXPECT_EQ(table.rows[0].sla, SlaArea::Inside);
        EXPECT_EQ(table.rows[0].foot, FootFirst::Right);
        EXPECT_EQ(table.rows[0].grip, GripType::Backhand);
        EXPECT_EQ(table.rows[4].sla, SlaArea::Outside);
        EXPECT_EQ(table.rows[11].grip, GripType::Forehand);
        for (const auto& row : table.rows) {
            EXPECT_NEAR(std::accumulate(row.probabilities.begin(), row.probabilities.end(), 0.0), 1.0, 1e-9);
        }
        EXPECT_NE(table.find(SlaArea::Middle, FootFirst::Left, GripType::Forehand), nullptr);
    }
}

TEST(RlaPredictor, AllReferenceRowIsTheInterceptSoftmax) {
    const auto pair = fit_rla_models(shared_data());
    const auto& fit = *pair.left.fit;
    const auto table = probability_table(fit);
    const auto& row = *table.find(SlaArea::Inside, FootFirst::Right, GripType::Backhand);
    double denom = 1.0;
    for (Eigen::Index r = 0; r < fit.coefficients.rows(); ++r) denom += std::exp(fit.coefficients(r, 0));
    EXPECT_NEAR(row.probabilities[4], 1.0 / denom, 1e-12);
}

TEST(RlaPredictor, MissingSideIsAbsentNotAnError) {
    Dataset ds;
    for (const auto& r : shared_data().rounds)
        if (r.service_from == ServiceSide::Left) ds.rounds.push_back(r);
    const auto pair = fit_rla_models(ds);
    EXPECT_TRUE(pair.left.fit);
    EXPECT_FALSE(pair.right.fit);
    EXPECT_FALSE(pair.right.absence.empty());
}

TEST(RlaPredictor, FailuresNameTheSide) {
    Dataset ds;
    for (int i = 0; i < 20; ++i)
        ds.rounds.push_back(round_of(ServiceSide::Right, SlaArea::Inside, FootFirst::Left, GripType::Forehand, 5));
    try {
        fit_rla_models(ds);
        FAIL() << "expected SideFitError";
    } catch (const SideFitError& e) {
        EXPECT_EQ(e.side(), ServiceSide::Right);
        EXPECT_EQ(std::string(e.what()).rfind("serving from right: ", 0), 0u);
    }
}

TEST(RlaPredictor, Interpretations) {
    const auto i = interpret_zone_effect("SLA=Outside", "SLA=Inside", "9", "5", 1.9393, 0.0739);
    EXPECT_NE(i.sentence.find("RLA = No.9 and RLA = No.5"), std::string::npos);
    EXPECT_NE(i.sentence.find("= 6.95 times"), std::string::npos);
    EXPECT_NE(i.sentence.find("SLA=Inside"), std::string::npos);
    const auto neutral = interpret_zone_effect("Foot=Left", "Foot=Right", "3", "5", 0.0, std::nullopt);
    EXPECT_NE(neutral.sentence.find("same"), std::string::npos);

    const auto pair = fit_rla_models(shared_data());
    const auto report = wald(*pair.right.fit);
    for (const auto& item : interpret(*pair.right.fit, report)) {
        EXPECT_LT(*item.p_value, 0.2);
        EXPECT_NE(item.term, kInterceptLabel);
    }
}

TEST(InterceptModel, LeftUsesSelectionRightUsesZones) {
    const auto pair = fit_intercept_models(shared_data());
    ASSERT_TRUE(pair.left.fit);
    ASSERT_TRUE(pair.right.fit);
    EXPECT_FALSE(pair.left.trace.empty());
    EXPECT_TRUE(pair.right.trace.empty());
    EXPECT_EQ(pair.right.fit->columns.size(), 8u);
    std::size_t n_left = 0;
    for (const auto& r : shared_data().rounds)
        n_left += r.service_from == ServiceSide::Left && r.intercept != InterceptOutcome::NotApplicable;
    EXPECT_EQ(pair.left.fit->n_obs, n_left);
}

TEST(InterceptModel, SaturatedZoneModelReproducesObservedRates) {
    // Score equations of a saturated factor: fitted rate per level = observed rate.
    const auto pair = fit_intercept_models(shared_data());
    const auto& fit = *pair.right.fit;
    const auto design = right_intercept_design();
    std::array<int, 9> yes{}, total{};
    for (const auto& r : shared_data().rounds) {
        if (r.service_from != ServiceSide::Right || r.intercept == InterceptOutcome::NotApplicable) continue;
        ++total[static_cast<std::size_t>(r.rla.index() - 1)];
        yes[static_cast<std::size_t>(r.rla.index() - 1)] += r.intercept == InterceptOutcome::Yes;
    }
    for (int z = 1; z <= 9; ++z) {
        const auto zi = static_cast<std::size_t>(z - 1);
        if (total[zi] == 0 || yes[zi] == 0 || yes[zi] == total[zi]) continue;
        const auto row = design.indicator_row(
            round_of(ServiceSide::Right, SlaArea::Inside, FootFirst::Left, GripType::Forehand, z));
        EXPECT_NEAR(predict_proba(fit, row), double(yes[zi]) / total[zi], 1e-7) << z;
    }
}

TEST(InterceptModel, PathModelIsNestedInZoneModel) {
    const auto& ds = shared_data();
    const auto left = [](const RoundRecord& r) {
        return r.service_from == ServiceSide::Left && r.intercept != InterceptOutcome::NotApplicable;
    };
    const DesignSpec path{{path_factor()}, intercept_response()};
    const DesignSpec zone{{zone_factor(5)}, intercept_response()};
    const auto fp = std::get<BinaryFit>(fit_design(build_design(ds, path, left), path.response));
    const auto fz = std::get<BinaryFit>(fit_design(build_design(ds, zone, left), zone.response));
    EXPECT_LE(fp.log_likelihood, fz.log_likelihood + 1e-9);
    // Path-level fitted rates equal the observed path rates.
    std::array<int, 3> yes{}, total{};
    for (const auto& r : ds.rounds) {
        if (!left(r)) continue;
        const auto p = static_cast<std::size_t>(path_of(r.rla));
        ++total[p];
        yes[p] += r.intercept == InterceptOutcome::Yes;
    }
    const std::array<std::vector<double>, 3> rows{{{0, 0}, {1, 0}, {0, 1}}};
    for (std::size_t p = 0; p < 3; ++p) EXPECT_NEAR(predict_proba(fp, rows[p]), double(yes[p]) / total[p], 1e-8);
}

TEST(InterceptModel, OddsReport) {
    const auto pair = fit_intercept_models(shared_data());
    const auto odds = intercept_odds_report(pair);
    std::size_t right = 0;
    for (const auto& o : odds) {
        EXPECT_NEAR(o.odds_ratio, std::exp(o.estimate), 1e-12);
        right += o.context == "serving from the right";
    }
    EXPECT_EQ(right, 8u);
    const auto i = interpret_odds_effect("RLA=Center path", "RLA=Left path", 0.4036, 0.0002);
    EXPECT_NE(i.sentence.find("1.50 times those for RLA=Left path"), std::string::npos);
}

TEST(ModelIo, RoundTripKeepsPredictions) {
    const auto dir = temp_dir("io");
    const auto rla = fit_rla_models(shared_data());
    const auto icp = fit_intercept_models(shared_data());
    save_rla_models(rla, dir.string());
    save_intercept_models(icp, dir.string());
    const auto rla2 = load_rla_models(dir.string());
    const auto icp2 = load_intercept_models(dir.string());
    ASSERT_TRUE(rla2.left.fit && rla2.right.fit && icp2.left.fit && icp2.right.fit);
    for (auto side : {ServiceSide::Left, ServiceSide::Right}) {
        const auto& a = *rla.side(side).fit;
        const auto& b = *rla2.side(side).fit;
        EXPECT_EQ(a.categories, b.categories);
        EXPECT_EQ(a.reference, b.reference);
        EXPECT_EQ(a.coefficients, b.coefficients);
        EXPECT_DOUBLE_EQ(a.log_likelihood, b.log_likelihood);
        for (Eigen::Index i = 0; i < a.covariance.size(); ++i) {
            const double x = a.covariance(i), y = b.covariance(i);
            EXPECT_TRUE((std::isnan(x) && std::isnan(y)) || x == y);
        }
        EXPECT_EQ(probability_table(a).rows[7].probabilities, probability_table(b, rla2.design).rows[7].probabilities);
        EXPECT_EQ(icp.side(side).fit->coefficients, icp2.side(side).fit->coefficients);
    }
    fs::remove_all(dir);
}

TEST(ModelIo, RejectsForeignDocuments) {
    const auto rla = fit_rla_models(shared_data());
    auto j = to_json(StoredModel{"rla-left", rla.design, *rla.left.fit});
    EXPECT_NO_THROW(stored_model_from_json(j));
    auto wrong_version = j;
    wrong_version["version"] = 99;
    EXPECT_THROW(stored_model_from_json(wrong_version), std::runtime_error);
    auto wrong_format = j;
    wrong_format["format"] = "other";
    EXPECT_THROW(stored_model_from_json(wrong_format), std::runtime_error);
    auto wrong_design = j;
    wrong_design["design"] = nlohmann::json(DesignSpec{{foot_factor()}, rla_response(5)});
    EXPECT_THROW(stored_model_from_json(wrong_design), std::runtime_error);
    EXPECT_THROW(load_model("/nonexistent/model.json"), std::runtime_error);
}

TEST(Synthetic, DeterministicPerSeed) {
    const auto config = default_generator_config();
    const auto a = generate_synthetic(config, 500, 1);
    const auto b = generate_synthetic(config, 500, 1);
    const auto c = generate_synthetic(config, 500, 2);
    EXPECT_EQ(a.rounds, b.rounds);
    EXPECT_NE(a.rounds, c.rounds);
    EXPECT_EQ(a.rounds.size(), 500u);
    EXPECT_TRUE(a.canonicalized);
    for (const auto& r : a.rounds) {
        EXPECT_EQ(r.rdh, Handedness::Right);
        EXPECT_TRUE(validate(r).empty());
    }
}

TEST(Synthetic, MarginalsFollowTheConfiguredCounts) {
    const auto ds = generate_synthetic(default_generator_config(), 100000, 3);
    const auto p = *summarize_sla(ds).proportions();
    EXPECT_NEAR(p[0], 977.0 / 1776, 0.01);
    EXPECT_NEAR(p[1], 667.0 / 1776, 0.01);
    EXPECT_NEAR(p[2], 132.0 / 1776, 0.01);
}

TEST(Synthetic, ConfigValidation) {
    auto config = default_generator_config();
    config.foot = {0.7, 0.7};
    EXPECT_THROW(config.validate(), std::invalid_argument);
    config = default_generator_config();
    config.servers.clear();
    EXPECT_THROW(generate_synthetic(config, 10, 1), std::invalid_argument);
}

TEST(RlaPredictor, SingleRoundLevelIsFlaggedNotFatal) {
    // One Outside round: its zone's slope runs off to +inf and the others follow.
    Dataset ds;
    for (const auto& r : generate_synthetic(default_generator_config(), 1000, 6).rounds)
        if (r.service_from == ServiceSide::Left) ds.rounds.push_back(r);
    std::size_t outside = 0;
    for (const auto& r : ds.rounds) outside += r.sla == SlaArea::Outside;
    ASSERT_EQ(outside, 1u);
    const auto pair = fit_rla_models(ds);
    const auto& fit = *pair.left.fit;
    EXPECT_TRUE(fit.diagnostics.converged);
    EXPECT_TRUE(fit.diagnostics.separation_suspected);
    const auto labels = fit.parameter_labels();
    for (const auto& capped : fit.diagnostics.capped_parameters) {
        const auto k = static_cast<Eigen::Index>(std::find(labels.begin(), labels.end(), capped) - labels.begin());
        EXPECT_TRUE(std::isnan(fit.covariance(k, k))) << capped;
    }
    const auto table = probability_table(fit);
    for (const auto& row : table.rows)
        EXPECT_NEAR(std::accumulate(row.probabilities.begin(), row.probabilities.end(), 0.0), 1.0, 1e-9);
}
