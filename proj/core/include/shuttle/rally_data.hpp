#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "shuttle/round.hpp"

namespace shuttle {

/// Fatal ingestion problem (bad header, unreadable stream).
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Dataset {
    std::vector<RoundRecord> rounds;
    /// Set once every left-handed receiver has been mirrored to right-handed form.
    bool canonicalized = false;
};

inline constexpr std::array<const char*, 9> kCsvColumns{
    "Server", "ServiceFrom", "SLA", "Receiver", "RDH", "Foot", "Grip", "RLA", "Intercept"};

/// Optional tenth column. Values "Short" or "Long".
inline constexpr const char* kServiceTypeColumn = "ServiceType";

struct RowError {
    std::size_t line = 0;  // 1-based line in the source; the header is line 1
    std::string field;
    std::string message;
};

struct LoadOptions {
    /// With a ServiceType column present, silently drop "Long" rows instead of
    /// reporting them as errors.
    bool drop_long_serves = false;
};

struct LoadResult {
    Dataset dataset;
    std::vector<RowError> errors;
    std::size_t dropped_long_serves = 0;

    bool ok() const noexcept { return errors.empty(); }
};

/// Parses the round CSV. Rows with bad values are reported in `errors` and left
/// out of the dataset; a malformed header throws DataError.
LoadResult load_csv(std::istream& in, const LoadOptions& options = {});
LoadResult load_csv_file(const std::string& path, const LoadOptions& options = {});

void write_csv(std::ostream& out, const Dataset& ds);
std::string csv_row(const RoundRecord& record);

/// Mirrors every left-handed receiver's round. Idempotent.
Dataset canonicalize(Dataset ds);

struct SlaSummary {
    // counts[side][area], side indexed by ServiceSide, area by SlaArea
    std::array<std::array<std::size_t, 3>, 2> counts{};

    std::array<std::size_t, 3> totals() const noexcept;
    std::size_t grand_total() const noexcept;
    /// Share of each area over the grand total; nullopt for an empty summary.
    std::optional<std::array<double, 3>> proportions() const;
};

struct RlaSummary {
    // counts[side][zone - 1]
    std::array<std::array<std::size_t, kZoneCount>, 2> counts{};

    std::array<std::size_t, kZoneCount> totals() const noexcept;
    std::size_t grand_total() const noexcept;
    std::optional<std::array<double, kZoneCount>> proportions() const;
    /// Share of returns to zones 2, 4, 5, 6 and 8.
    std::optional<double> crossing_share() const;
    /// Share of returns to the corners 1, 3, 7 and 9.
    std::optional<double> corner_share() const;
};

bool is_crossing_zone(RlaZone zone) noexcept;

struct PlayerInterception {
    std::string player;
    std::size_t interceptions = 0;
    std::size_t services = 0;  // rounds with an applicable interception outcome
    std::optional<double> rate;
};

struct InterceptionReport {
    std::vector<PlayerInterception> players;  // sorted by player name
    std::size_t interceptions = 0;
    std::size_t services = 0;
    std::optional<double> overall_rate;

    const PlayerInterception* find(const std::string& player) const;
};

SlaSummary summarize_sla(const Dataset& ds);
RlaSummary summarize_rla(const Dataset& ds);
InterceptionReport interception_rates(const Dataset& ds);

nlohmann::json to_json(const SlaSummary& s);
nlohmann::json to_json(const RlaSummary& s);
nlohmann::json to_json(const InterceptionReport& r);

std::string format_table(const SlaSummary& s);
std::string format_table(const RlaSummary& s);
/// Players sorted by rate; `min_rate` filters, e.g. 0.30 for the ">30%" listing.
std::string format_table(const InterceptionReport& r, double min_rate = 0.0);

nlohmann::json round_to_json(const RoundRecord& record);
/// Field-level validation of a JSON round; on success `errors` is empty.
std::optional<RoundRecord> round_from_json(const nlohmann::json& j, std::vector<FieldError>& errors);

}  // namespace shuttle
