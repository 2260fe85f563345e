#include "shuttle/rally_data.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "text.hpp"

namespace shuttle {

namespace {

// Splits one CSV record. Handles double-quoted fields with "" escapes; a
// quoted field may not span lines.
std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field.push_back(c);
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(field));
            field.clear();
        } else {
            field.push_back(c);
        }
    }
    fields.push_back(std::move(field));
    return fields;
}

std::string quote_if_needed(std::string_view s) {
    if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out.push_back(c);
    }
    out += '"';
    return out;
}

void strip_cr(std::string& line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
}

template <class E>
void parse_field(const std::string& value, const char* column, std::size_t line, E& out,
                 std::vector<RowError>& errors) {
    if (auto parsed = parse_enum<E>(value)) {
        out = *parsed;
    } else {
        errors.push_back({line, column, "unknown value '" + value + "'"});
    }
}

}  // namespace

LoadResult load_csv(std::istream& in, const LoadOptions& options) {
    LoadResult result;
    std::string line;
    if (!std::getline(in, line)) throw DataError("empty input: missing CSV header");
    strip_cr(line);
    if (line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);

    const auto header = split_csv(line);
    const bool has_service_type =
        header.size() == kCsvColumns.size() + 1 && header.back() == kServiceTypeColumn;
    if (header.size() != kCsvColumns.size() && !has_service_type) {
        throw DataError("malformed header: expected " + std::to_string(kCsvColumns.size()) +
                        " columns, got " + std::to_string(header.size()));
    }
    for (std::size_t c = 0; c < kCsvColumns.size(); ++c) {
        if (header[c] != kCsvColumns[c]) {
            throw DataError("malformed header: column " + std::to_string(c + 1) + " is '" +
                            header[c] + "', expected '" + kCsvColumns[c] + "'");
        }
    }

    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        strip_cr(line);
        if (line.empty()) continue;

        auto fields = split_csv(line);
        if (fields.size() != header.size()) {
            // Name the first missing column, if any.
            const std::string field = fields.size() < header.size() ? header[fields.size()] : "";
            result.errors.push_back({line_no, field,
                                     "expected " + std::to_string(header.size()) + " fields, got " +
                                         std::to_string(fields.size())});
            continue;
        }

        if (has_service_type) {
            const auto& type = fields.back();
            if (type == "Long") {
                if (options.drop_long_serves) {
                    ++result.dropped_long_serves;
                } else {
                    result.errors.push_back({line_no, kServiceTypeColumn,
                                             "long services are not supported"});
                }
                continue;
            }
            if (type != "Short") {
                result.errors.push_back({line_no, kServiceTypeColumn, "unknown value '" + type + "'"});
                continue;
            }
        }

        std::vector<RowError> row_errors;
        RoundRecord r;
        r.server = fields[0];
        parse_field(fields[1], "ServiceFrom", line_no, r.service_from, row_errors);
        parse_field(fields[2], "SLA", line_no, r.sla, row_errors);
        r.receiver = fields[3];
        parse_field(fields[4], "RDH", line_no, r.rdh, row_errors);
        parse_field(fields[5], "Foot", line_no, r.foot, row_errors);
        parse_field(fields[6], "Grip", line_no, r.grip, row_errors);
        if (auto zone = parse_zone(fields[7])) {
            r.rla = *zone;
        } else {
            row_errors.push_back({line_no, "RLA", "expected a zone 1..9, got '" + fields[7] + "'"});
        }
        if (auto ic = parse_intercept(fields[8])) {
            r.intercept = *ic;
        } else {
            row_errors.push_back({line_no, "Intercept", "expected Yes, No or NA, got '" + fields[8] + "'"});
        }
        for (const auto& fe : validate(r)) {
            row_errors.push_back({line_no, fe.field == "server" ? "Server" : "Receiver", fe.message});
        }

        if (row_errors.empty()) {
            result.dataset.rounds.push_back(std::move(r));
        } else {
            result.errors.insert(result.errors.end(), row_errors.begin(), row_errors.end());
        }
    }
    return result;
}

LoadResult load_csv_file(const std::string& path, const LoadOptions& options) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path);
    return load_csv(in, options);
}

std::string csv_row(const RoundRecord& r) {
    std::string row;
    row += quote_if_needed(r.server);
    row += ',';
    row += to_string(r.service_from);
    row += ',';
    row += to_string(r.sla);
    row += ',';
    row += quote_if_needed(r.receiver);
    row += ',';
    row += to_string(r.rdh);
    row += ',';
    row += to_string(r.foot);
    row += ',';
    row += to_string(r.grip);
    row += ',';
    row += std::to_string(r.rla.index());
    row += ',';
    row += to_string(r.intercept);
    return row;
}

void write_csv(std::ostream& out, const Dataset& ds) {
    for (std::size_t c = 0; c < kCsvColumns.size(); ++c) {
        if (c) out << ',';
        out << kCsvColumns[c];
    }
    out << '\n';
    for (const auto& r : ds.rounds) out << csv_row(r) << '\n';
}

Dataset canonicalize(Dataset ds) {
    for (auto& r : ds.rounds) {
        if (r.rdh == Handedness::Left) r = mirror_round(r);
    }
    ds.canonicalized = true;
    return ds;
}

// --- summaries -------------------------------------------------------------

std::array<std::size_t, 3> SlaSummary::totals() const noexcept {
    std::array<std::size_t, 3> t{};
    for (const auto& row : counts)
        for (std::size_t a = 0; a < 3; ++a) t[a] += row[a];
    return t;
}

std::size_t SlaSummary::grand_total() const noexcept {
    const auto t = totals();
    return t[0] + t[1] + t[2];
}

std::optional<std::array<double, 3>> SlaSummary::proportions() const {
    const auto n = grand_total();
    if (n == 0) return std::nullopt;
    const auto t = totals();
    std::array<double, 3> p{};
    for (std::size_t a = 0; a < 3; ++a) p[a] = static_cast<double>(t[a]) / static_cast<double>(n);
    return p;
}

std::array<std::size_t, kZoneCount> RlaSummary::totals() const noexcept {
    std::array<std::size_t, kZoneCount> t{};
    for (const auto& row : counts)
        for (std::size_t z = 0; z < kZoneCount; ++z) t[z] += row[z];
    return t;
}

std::size_t RlaSummary::grand_total() const noexcept {
    std::size_t n = 0;
    for (auto c : totals()) n += c;
    return n;
}

std::optional<std::array<double, kZoneCount>> RlaSummary::proportions() const {
    const auto n = grand_total();
    if (n == 0) return std::nullopt;
    const auto t = totals();
    std::array<double, kZoneCount> p{};
    for (std::size_t z = 0; z < kZoneCount; ++z) p[z] = static_cast<double>(t[z]) / static_cast<double>(n);
    return p;
}

bool is_crossing_zone(RlaZone zone) noexcept {
    const int i = zone.index();
    return i == 2 || i == 4 || i == 5 || i == 6 || i == 8;
}

std::optional<double> RlaSummary::crossing_share() const {
    const auto n = grand_total();
    if (n == 0) return std::nullopt;
    const auto t = totals();
    std::size_t crossing = 0;
    for (auto zone : all_zones())
        if (is_crossing_zone(zone)) crossing += t[zone.index() - 1];
    return static_cast<double>(crossing) / static_cast<double>(n);
}

std::optional<double> RlaSummary::corner_share() const {
    const auto n = grand_total();
    if (n == 0) return std::nullopt;
    const auto t = totals();
    std::size_t corner = 0;
    for (auto zone : all_zones())
        if (!is_crossing_zone(zone)) corner += t[zone.index() - 1];
    return static_cast<double>(corner) / static_cast<double>(n);
}

const PlayerInterception* InterceptionReport::find(const std::string& player) const {
    auto it = std::find_if(players.begin(), players.end(),
                           [&](const PlayerInterception& p) { return p.player == player; });
    return it == players.end() ? nullptr : &*it;
}

SlaSummary summarize_sla(const Dataset& ds) {
    SlaSummary s;
    for (const auto& r : ds.rounds) {
        ++s.counts[static_cast<std::size_t>(r.service_from)][static_cast<std::size_t>(r.sla)];
    }
    return s;
}

RlaSummary summarize_rla(const Dataset& ds) {
    RlaSummary s;
    for (const auto& r : ds.rounds) {
        ++s.counts[static_cast<std::size_t>(r.service_from)][static_cast<std::size_t>(r.rla.index() - 1)];
    }
    return s;
}

InterceptionReport interception_rates(const Dataset& ds) {
    std::map<std::string, PlayerInterception> by_player;
    for (const auto& r : ds.rounds) {
        auto& p = by_player[r.server];
        p.player = r.server;
        if (r.intercept == InterceptOutcome::NotApplicable) continue;
        ++p.services;
        if (r.intercept == InterceptOutcome::Yes) ++p.interceptions;
    }
    InterceptionReport report;
    for (auto& [name, p] : by_player) {
        if (p.services > 0) {
            p.rate = static_cast<double>(p.interceptions) / static_cast<double>(p.services);
        }
        report.interceptions += p.interceptions;
        report.services += p.services;
        report.players.push_back(std::move(p));
    }
    if (report.services > 0) {
        report.overall_rate =
            static_cast<double>(report.interceptions) / static_cast<double>(report.services);
    }
    return report;
}

// --- JSON -------------------------------------------------------------------

nlohmann::json to_json(const SlaSummary& s) {
    nlohmann::json j;
    for (auto side : {ServiceSide::Left, ServiceSide::Right}) {
        auto& row = j["counts"][std::string(to_string(side))];
        for (auto area : {SlaArea::Inside, SlaArea::Middle, SlaArea::Outside}) {
            row[std::string(to_string(area))] =
                s.counts[static_cast<std::size_t>(side)][static_cast<std::size_t>(area)];
        }
    }
    const auto totals = s.totals();
    const auto props = s.proportions();
    for (auto area : {SlaArea::Inside, SlaArea::Middle, SlaArea::Outside}) {
        const auto a = static_cast<std::size_t>(area);
        const std::string key(to_string(area));
        j["totals"][key] = totals[a];
        j["proportions"][key] = props ? nlohmann::json((*props)[a]) : nlohmann::json(nullptr);
    }
    j["total"] = s.grand_total();
    return j;
}

nlohmann::json to_json(const RlaSummary& s) {
    nlohmann::json j;
    for (auto side : {ServiceSide::Left, ServiceSide::Right}) {
        auto& row = j["counts"][std::string(to_string(side))];
        for (auto zone : all_zones()) {
            row[std::to_string(zone.index())] =
                s.counts[static_cast<std::size_t>(side)][static_cast<std::size_t>(zone.index() - 1)];
        }
    }
    const auto totals = s.totals();
    const auto props = s.proportions();
    for (auto zone : all_zones()) {
        const auto z = static_cast<std::size_t>(zone.index() - 1);
        const auto key = std::to_string(zone.index());
        j["totals"][key] = totals[z];
        j["proportions"][key] = props ? nlohmann::json((*props)[z]) : nlohmann::json(nullptr);
    }
    j["total"] = s.grand_total();
    const auto crossing = s.crossing_share();
    j["crossing_share"] = crossing ? nlohmann::json(*crossing) : nlohmann::json(nullptr);
    const auto corner = s.corner_share();
    j["corner_share"] = corner ? nlohmann::json(*corner) : nlohmann::json(nullptr);
    return j;
}

nlohmann::json to_json(const InterceptionReport& r) {
    nlohmann::json players = nlohmann::json::array();
    for (const auto& p : r.players) {
        nlohmann::json pj{{"player", p.player},
                          {"interceptions", p.interceptions},
                          {"services", p.services}};
        if (p.rate) pj["rate"] = *p.rate;
        players.push_back(std::move(pj));
    }
    nlohmann::json j{{"players", std::move(players)},
                     {"interceptions", r.interceptions},
                     {"services", r.services}};
    if (r.overall_rate) j["overall_rate"] = *r.overall_rate;
    return j;
}

// --- text tables --------------------------------------------------------------

std::string format_table(const SlaSummary& s) {
    using text::pad_left;
    using text::pad_right;
    std::ostringstream os;
    constexpr std::size_t label = 24, cell = 16;
    os << pad_right("", label);
    for (auto area : {SlaArea::Inside, SlaArea::Middle, SlaArea::Outside}) os << pad_left(to_string(area), cell);
    os << '\n';
    for (auto side : {ServiceSide::Left, ServiceSide::Right}) {
        os << pad_right("Serving from the " + std::string(side == ServiceSide::Left ? "left" : "right"), label);
        for (std::size_t a = 0; a < 3; ++a) {
            os << pad_left(std::to_string(s.counts[static_cast<std::size_t>(side)][a]), cell);
        }
        os << '\n';
    }
    const auto totals = s.totals();
    const auto props = s.proportions();
    os << pad_right("Total", label);
    for (std::size_t a = 0; a < 3; ++a) {
        std::string cellText = std::to_string(totals[a]);
        if (props) cellText += " (" + text::percent((*props)[a]) + ")";
        os << pad_left(cellText, cell);
    }
    os << '\n';
    return os.str();
}

std::string format_table(const RlaSummary& s) {
    using text::pad_left;
    using text::pad_right;
    std::ostringstream os;
    constexpr std::size_t label = 20, cell = 8;
    os << pad_right("", label);
    for (auto zone : all_zones()) os << pad_left("No." + std::to_string(zone.index()), cell);
    os << '\n';
    for (auto side : {ServiceSide::Left, ServiceSide::Right}) {
        os << pad_right("Serving from " + std::string(side == ServiceSide::Left ? "left" : "right"), label);
        for (std::size_t z = 0; z < kZoneCount; ++z) {
            os << pad_left(std::to_string(s.counts[static_cast<std::size_t>(side)][z]), cell);
        }
        os << '\n';
    }
    const auto totals = s.totals();
    os << pad_right("Total", label);
    for (auto t : totals) os << pad_left(std::to_string(t), cell);
    os << '\n';
    if (const auto props = s.proportions()) {
        os << pad_right("", label);
        for (double p : *props) os << pad_left("(" + text::percent(p) + ")", cell);
        os << '\n';
        os << "Crossing areas (2,4,5,6,8): " << text::percent(*s.crossing_share())
           << "   corners (1,3,7,9): " << text::percent(*s.corner_share()) << '\n';
    }
    return os.str();
}

std::string format_table(const InterceptionReport& r, double min_rate) {
    std::vector<const PlayerInterception*> rows;
    for (const auto& p : r.players) {
        if (p.rate && *p.rate >= min_rate) rows.push_back(&p);
    }
    std::stable_sort(rows.begin(), rows.end(),
                     [](const auto* a, const auto* b) { return *a->rate > *b->rate; });
    std::ostringstream os;
    os << text::pad_right("Player", 24) << text::pad_left("# interception", 16)
       << text::pad_left("# service", 12) << text::pad_left("rate", 10) << '\n';
    for (const auto* p : rows) {
        os << text::pad_right(p->player, 24) << text::pad_left(std::to_string(p->interceptions), 16)
           << text::pad_left(std::to_string(p->services), 12)
           << text::pad_left(text::percent(*p->rate, 2), 10) << '\n';
    }
    if (r.overall_rate) {
        os << "Overall: " << r.interceptions << " / " << r.services << " = "
           << text::percent(*r.overall_rate, 2) << '\n';
    }
    return os.str();
}

// --- JSON rounds --------------------------------------------------------------

nlohmann::json round_to_json(const RoundRecord& r) {
    return {{"server", r.server},
            {"service_from", std::string(to_string(r.service_from))},
            {"sla", std::string(to_string(r.sla))},
            {"receiver", r.receiver},
            {"rdh", std::string(to_string(r.rdh))},
            {"foot", std::string(to_string(r.foot))},
            {"grip", std::string(to_string(r.grip))},
            {"rla", r.rla.index()},
            {"intercept", std::string(to_string(r.intercept))}};
}

namespace {

template <class E>
void read_enum(const nlohmann::json& j, const char* field, E& out, std::vector<FieldError>& errors) {
    auto it = j.find(field);
    if (it == j.end()) {
        errors.push_back({field, "missing"});
    } else if (!it->is_string()) {
        errors.push_back({field, "expected a string"});
    } else if (auto v = parse_enum<E>(it->get<std::string>())) {
        out = *v;
    } else {
        errors.push_back({field, "unknown value '" + it->get<std::string>() + "'"});
    }
}

void read_name(const nlohmann::json& j, const char* field, std::string& out,
               std::vector<FieldError>& errors) {
    auto it = j.find(field);
    if (it == j.end()) {
        errors.push_back({field, "missing"});
    } else if (!it->is_string()) {
        errors.push_back({field, "expected a string"});
    } else {
        out = it->get<std::string>();
    }
}

}  // namespace

std::optional<RoundRecord> round_from_json(const nlohmann::json& j, std::vector<FieldError>& errors) {
    errors.clear();
    if (!j.is_object()) {
        errors.push_back({"", "expected a JSON object"});
        return std::nullopt;
    }
    RoundRecord r;
    read_name(j, "server", r.server, errors);
    read_enum(j, "service_from", r.service_from, errors);
    read_enum(j, "sla", r.sla, errors);
    read_name(j, "receiver", r.receiver, errors);
    read_enum(j, "rdh", r.rdh, errors);
    read_enum(j, "foot", r.foot, errors);
    read_enum(j, "grip", r.grip, errors);

    if (auto it = j.find("rla"); it == j.end()) {
        errors.push_back({"rla", "missing"});
    } else {
        std::optional<RlaZone> zone;
        if (it->is_number_integer()) zone = RlaZone::from_int(it->get<int>());
        else if (it->is_string()) zone = parse_zone(it->get<std::string>());
        if (zone) r.rla = *zone;
        else errors.push_back({"rla", "expected a zone 1..9, got " + it->dump()});
    }

    if (auto it = j.find("intercept"); it == j.end()) {
        errors.push_back({"intercept", "missing"});
    } else if (auto ic = it->is_string() ? parse_intercept(it->get<std::string>()) : std::nullopt) {
        r.intercept = *ic;
    } else {
        errors.push_back({"intercept", "expected \"Yes\", \"No\" or \"NA\""});
    }

    if (errors.empty()) {
        const auto fe = validate(r);
        errors.insert(errors.end(), fe.begin(), fe.end());
    }
    if (!errors.empty()) return std::nullopt;
    return r;
}

}  // namespace shuttle
