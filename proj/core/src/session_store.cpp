#include "shuttle/session_store.hpp"

#include <chrono>
#include <ctime>
#include <filesystem>

namespace shuttle {

namespace {

std::string summarize(const std::vector<FieldError>& errors) {
    std::string out = "invalid round";
    for (const auto& e : errors) out += "; " + e.field + ": " + e.message;
    return out;
}

}  // namespace

InvalidRoundError::InvalidRoundError(std::vector<FieldError> errors)
    : std::runtime_error(summarize(errors)), errors_(std::move(errors)) {}

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const auto t = std::chrono::system_clock::to_time_t(now);
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(now.time_since_epoch()).count() % 1000;
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%S", &tm);
    char out[48];
    std::snprintf(out, sizeof out, "%s.%03dZ", buf, static_cast<int>(ms));
    return out;
}

SessionStore::SessionStore(std::string path) : path_(std::move(path)) {
    if (path_.empty()) return;
    if (std::filesystem::exists(path_)) {
        std::ifstream in(path_);
        if (!in) throw DataError("cannot read session store '" + path_ + "'");
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (line.empty()) continue;
            const auto where = path_ + ":" + std::to_string(line_no);
            nlohmann::json j;
            try {
                j = nlohmann::json::parse(line);
            } catch (const nlohmann::json::parse_error& e) {
                throw DataError(where + ": " + e.what());
            }
            if (!j.is_object() || !j.contains("round")) throw DataError(where + ": missing \"round\"");
            std::vector<FieldError> errors;
            auto round = round_from_json(j["round"], errors);
            if (!round) throw DataError(where + ": " + summarize(errors));
            records_.push_back({j.value("session_id", ""), j.value("timestamp", ""), std::move(*round)});
        }
    }
    out_.open(path_, std::ios::app);
    if (!out_) throw DataError("cannot open session store '" + path_ + "' for appending");
}

StoredRound SessionStore::append(const RoundRecord& round, const std::string& session_id) {
    auto errors = validate(round);
    if (!errors.empty()) throw InvalidRoundError(std::move(errors));
    StoredRound stored{session_id, utc_timestamp(), round};

    std::lock_guard lock(mutex_);
    if (out_.is_open()) {
        const nlohmann::json j{
            {"session_id", stored.session_id}, {"timestamp", stored.timestamp}, {"round", round_to_json(round)}};
        out_ << j.dump() << '\n';
        out_.flush();
        if (!out_) throw DataError("failed to append to session store '" + path_ + "'");
    }
    records_.push_back(stored);
    return stored;
}

std::vector<StoredRound> SessionStore::records() const {
    std::lock_guard lock(mutex_);
    return records_;
}

Dataset SessionStore::dataset() const {
    Dataset ds;
    {
        std::lock_guard lock(mutex_);
        ds.rounds.reserve(records_.size());
        for (const auto& r : records_) ds.rounds.push_back(r.round);
    }
    return canonicalize(std::move(ds));
}

std::size_t SessionStore::size() const {
    std::lock_guard lock(mutex_);
    return records_.size();
}

}  // namespace shuttle
