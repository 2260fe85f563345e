#include <gtest/gtest.h>

#include <random>

#include "shuttle/court.hpp"
#include "shuttle/round.hpp"

using namespace shuttle;

TEST(Court, ZoneGroupsFollowTheGrid) {
    // 1 2 3 / 4 5 6 / 7 8 9, front to rear, left path to right path.
    const PathGroup paths[] = {PathGroup::LeftPath, PathGroup::CenterPath, PathGroup::RightPath};
    const DepthGroup depths[] = {DepthGroup::Front, DepthGroup::Middle, DepthGroup::Rear};
    for (int z = 1; z <= 9; ++z) {
        EXPECT_EQ(path_of(RlaZone(z)), paths[(z - 1) % 3]) << z;
        EXPECT_EQ(depth_of(RlaZone(z)), depths[(z - 1) / 3]) << z;
        EXPECT_EQ(zone_at(path_of(RlaZone(z)), depth_of(RlaZone(z))), RlaZone(z));
    }
    EXPECT_EQ(path_of(RlaZone(5)), PathGroup::CenterPath);
    EXPECT_EQ(depth_of(RlaZone(7)), DepthGroup::Rear);
}

TEST(Court, ZoneRangeIsEnforced) {
    EXPECT_THROW(RlaZone(0), std::out_of_range);
    EXPECT_THROW(RlaZone(10), std::out_of_range);
    EXPECT_FALSE(RlaZone::from_int(-3));
    EXPECT_EQ(RlaZone::from_int(9)->index(), 9);
    EXPECT_FALSE(parse_zone("10"));
    EXPECT_FALSE(parse_zone("5a"));
    EXPECT_FALSE(parse_zone(""));
    EXPECT_EQ(parse_zone("4")->index(), 4);
}

TEST(Court, MirrorZone) {
    const int expected[] = {3, 2, 1, 6, 5, 4, 9, 8, 7};
    for (auto z : all_zones()) {
        const auto m = mirror_zone(z);
        EXPECT_EQ(m.index(), expected[z.index() - 1]);
        EXPECT_EQ(mirror_zone(m), z);
        EXPECT_EQ(depth_of(m), depth_of(z));
        EXPECT_EQ(path_of(m), flip(path_of(z)));
    }
}

TEST(Court, EnumNamesRoundTrip) {
    EXPECT_EQ(parse_enum<SlaArea>("Outside"), SlaArea::Outside);
    EXPECT_FALSE(parse_enum<SlaArea>("outside"));
    EXPECT_EQ(parse_enum_relaxed<SlaArea>("outside"), SlaArea::Outside);
    EXPECT_EQ(parse_enum<GripType>(to_string(GripType::Backhand)), GripType::Backhand);
    EXPECT_EQ(parse_enum<ServiceSide>("Right"), ServiceSide::Right);
    EXPECT_FALSE(parse_enum<FootFirst>("Middle"));
    EXPECT_EQ(to_string(PathGroup::CenterPath), "Center path");
}

TEST(Round, MirrorRoundExample) {
    RoundRecord r;
    r.server = "S";
    r.receiver = "R";
    r.service_from = ServiceSide::Left;
    r.foot = FootFirst::Left;
    r.rla = RlaZone(4);
    r.grip = GripType::Forehand;
    r.sla = SlaArea::Middle;
    r.rdh = Handedness::Left;
    const auto m = mirror_round(r);
    EXPECT_EQ(m.service_from, ServiceSide::Right);
    EXPECT_EQ(m.foot, FootFirst::Right);
    EXPECT_EQ(m.rla, RlaZone(6));
    EXPECT_EQ(m.grip, GripType::Forehand);
    EXPECT_EQ(m.sla, SlaArea::Middle);
    EXPECT_EQ(m.rdh, Handedness::Right);
    EXPECT_EQ(m.server, "S");
}

TEST(Round, MirrorIsAnInvolution) {
    std::mt19937 gen(11);
    for (int i = 0; i < 2000; ++i) {
        RoundRecord r;
        r.server = "S" + std::to_string(gen() % 7);
        r.receiver = "R";
        r.service_from = static_cast<ServiceSide>(gen() % 2);
        r.sla = static_cast<SlaArea>(gen() % 3);
        r.rdh = static_cast<Handedness>(gen() % 2);
        r.foot = static_cast<FootFirst>(gen() % 2);
        r.grip = static_cast<GripType>(gen() % 2);
        r.rla = RlaZone(static_cast<int>(gen() % 9) + 1);
        r.intercept = static_cast<InterceptOutcome>(gen() % 3);
        EXPECT_EQ(mirror_round(mirror_round(r)), r);
    }
}

TEST(Round, ValidateRejectsBlankNames) {
    RoundRecord r;
    r.server = "  ";
    r.receiver = "X";
    const auto errors = validate(r);
    ASSERT_EQ(errors.size(), 1u);
    EXPECT_EQ(errors[0].field, "server");
}

TEST(Round, InterceptNames) {
    EXPECT_EQ(parse_intercept("NA"), InterceptOutcome::NotApplicable);
    EXPECT_EQ(parse_intercept("Yes"), InterceptOutcome::Yes);
    EXPECT_FALSE(parse_intercept("maybe"));
    EXPECT_EQ(to_string(InterceptOutcome::No), "No");
}
