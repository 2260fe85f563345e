#include "shuttle/court.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

namespace shuttle {

RlaZone::RlaZone(int index) : index_(index) {
    if (index < 1 || index > kZoneCount) {
        throw std::out_of_range("RLA zone must be in 1..9, got " + std::to_string(index));
    }
}

std::optional<RlaZone> RlaZone::from_int(int index) noexcept {
    if (index < 1 || index > kZoneCount) return std::nullopt;
    return RlaZone(index);
}

std::array<RlaZone, kZoneCount> all_zones() {
    return {RlaZone(1), RlaZone(2), RlaZone(3), RlaZone(4), RlaZone(5),
            RlaZone(6), RlaZone(7), RlaZone(8), RlaZone(9)};
}

PathGroup path_of(RlaZone zone) noexcept {
    return static_cast<PathGroup>((zone.index() - 1) % 3);
}

DepthGroup depth_of(RlaZone zone) noexcept {
    return static_cast<DepthGroup>((zone.index() - 1) / 3);
}

RlaZone zone_at(PathGroup path, DepthGroup depth) noexcept {
    return RlaZone(static_cast<int>(depth) * 3 + static_cast<int>(path) + 1);
}

RlaZone mirror_zone(RlaZone zone) noexcept {
    return zone_at(flip(path_of(zone)), depth_of(zone));
}

ServiceSide flip(ServiceSide side) noexcept {
    return side == ServiceSide::Left ? ServiceSide::Right : ServiceSide::Left;
}

FootFirst flip(FootFirst foot) noexcept {
    return foot == FootFirst::Left ? FootFirst::Right : FootFirst::Left;
}

Handedness flip(Handedness hand) noexcept {
    return hand == Handedness::Left ? Handedness::Right : Handedness::Left;
}

PathGroup flip(PathGroup path) noexcept {
    switch (path) {
        case PathGroup::LeftPath: return PathGroup::RightPath;
        case PathGroup::RightPath: return PathGroup::LeftPath;
        case PathGroup::CenterPath: break;
    }
    return PathGroup::CenterPath;
}

namespace {

template <class E>
struct EnumNames;

template <>
struct EnumNames<ServiceSide> {
    static constexpr std::array<std::string_view, 2> names{"Left", "Right"};
};
template <>
struct EnumNames<SlaArea> {
    static constexpr std::array<std::string_view, 3> names{"Inside", "Middle", "Outside"};
};
template <>
struct EnumNames<PathGroup> {
    static constexpr std::array<std::string_view, 3> names{"Left path", "Center path", "Right path"};
};
template <>
struct EnumNames<DepthGroup> {
    static constexpr std::array<std::string_view, 3> names{"Front", "Middle", "Rear"};
};
template <>
struct EnumNames<FootFirst> {
    static constexpr std::array<std::string_view, 2> names{"Left", "Right"};
};
template <>
struct EnumNames<GripType> {
    static constexpr std::array<std::string_view, 2> names{"Forehand", "Backhand"};
};
template <>
struct EnumNames<Handedness> {
    static constexpr std::array<std::string_view, 2> names{"Left", "Right"};
};

template <class E>
std::string_view name_of(E v) noexcept {
    return EnumNames<E>::names[static_cast<std::size_t>(v)];
}

bool iequals(std::string_view a, std::string_view b) {
    return a.size() == b.size() &&
           std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
               return std::tolower(static_cast<unsigned char>(x)) ==
                      std::tolower(static_cast<unsigned char>(y));
           });
}

}  // namespace

std::string_view to_string(ServiceSide v) noexcept { return name_of(v); }
std::string_view to_string(SlaArea v) noexcept { return name_of(v); }
std::string_view to_string(PathGroup v) noexcept { return name_of(v); }
std::string_view to_string(DepthGroup v) noexcept { return name_of(v); }
std::string_view to_string(FootFirst v) noexcept { return name_of(v); }
std::string_view to_string(GripType v) noexcept { return name_of(v); }
std::string_view to_string(Handedness v) noexcept { return name_of(v); }

template <class E>
std::optional<E> parse_enum(std::string_view text) {
    const auto& names = EnumNames<E>::names;
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (names[i] == text) return static_cast<E>(i);
    }
    return std::nullopt;
}

template <class E>
std::optional<E> parse_enum_relaxed(std::string_view text) {
    const auto& names = EnumNames<E>::names;
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (iequals(names[i], text)) return static_cast<E>(i);
    }
    return std::nullopt;
}

#define SHUTTLE_INSTANTIATE_PARSE(E)                                      \
    template std::optional<E> parse_enum<E>(std::string_view);            \
    template std::optional<E> parse_enum_relaxed<E>(std::string_view);

SHUTTLE_INSTANTIATE_PARSE(ServiceSide)
SHUTTLE_INSTANTIATE_PARSE(SlaArea)
SHUTTLE_INSTANTIATE_PARSE(PathGroup)
SHUTTLE_INSTANTIATE_PARSE(DepthGroup)
SHUTTLE_INSTANTIATE_PARSE(FootFirst)
SHUTTLE_INSTANTIATE_PARSE(GripType)
SHUTTLE_INSTANTIATE_PARSE(Handedness)

#undef SHUTTLE_INSTANTIATE_PARSE

std::optional<RlaZone> parse_zone(std::string_view text) {
    int value = 0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end) return std::nullopt;
    return RlaZone::from_int(value);
}

}  // namespace shuttle
