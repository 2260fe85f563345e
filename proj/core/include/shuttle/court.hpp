#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace shuttle {

enum class ServiceSide { Left, Right };
enum class SlaArea { Inside, Middle, Outside };
enum class PathGroup { LeftPath, CenterPath, RightPath };
enum class DepthGroup { Front, Middle, Rear };
enum class FootFirst { Left, Right };
enum class GripType { Forehand, Backhand };
enum class Handedness { Left, Right };

/// One of the nine return landing zones on the serving team's court.
///
/// Numbering runs front to rear and, within a row, left path to right path
/// as seen from the serving team:
///
///     1 2 3   front
///     4 5 6   middle
///     7 8 9   rear
class RlaZone {
public:
    /// Throws std::out_of_range unless 1 <= index <= 9.
    explicit RlaZone(int index);

    static std::optional<RlaZone> from_int(int index) noexcept;

    int index() const noexcept { return index_; }

    friend bool operator==(RlaZone, RlaZone) = default;
    friend auto operator<=>(RlaZone, RlaZone) = default;

private:
    int index_;
};

inline constexpr int kZoneCount = 9;

/// All zones in numeric order.
std::array<RlaZone, kZoneCount> all_zones();

PathGroup path_of(RlaZone zone) noexcept;
DepthGroup depth_of(RlaZone zone) noexcept;
RlaZone zone_at(PathGroup path, DepthGroup depth) noexcept;

/// Left-right reflection of the court: 1<->3, 4<->6, 7<->9.
RlaZone mirror_zone(RlaZone zone) noexcept;

ServiceSide flip(ServiceSide side) noexcept;
FootFirst flip(FootFirst foot) noexcept;
Handedness flip(Handedness hand) noexcept;
PathGroup flip(PathGroup path) noexcept;

// Serialized names match the dataset vocabulary exactly ("Left", "Inside", ...).
std::string_view to_string(ServiceSide v) noexcept;
std::string_view to_string(SlaArea v) noexcept;
std::string_view to_string(PathGroup v) noexcept;
std::string_view to_string(DepthGroup v) noexcept;
std::string_view to_string(FootFirst v) noexcept;
std::string_view to_string(GripType v) noexcept;
std::string_view to_string(Handedness v) noexcept;

/// Exact-match parse of a serialized enum name. Returns nullopt on anything else.
template <class E>
std::optional<E> parse_enum(std::string_view text);

/// Like parse_enum, but ASCII case-insensitive ("left" == "Left"). Used by the CLI.
template <class E>
std::optional<E> parse_enum_relaxed(std::string_view text);

/// Parses "1".."9"; nullopt otherwise.
std::optional<RlaZone> parse_zone(std::string_view text);

}  // namespace shuttle
