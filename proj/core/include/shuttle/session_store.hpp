#pragma once

#include <cstddef>
#include <fstream>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include "shuttle/rally_data.hpp"

namespace shuttle {

struct StoredRound {
    std::string session_id;
    std::string timestamp;  // UTC, ISO 8601
    RoundRecord round;
};

/// Raised when a round fails validation on write.
class InvalidRoundError : public std::runtime_error {
public:
    explicit InvalidRoundError(std::vector<FieldError> errors);
    const std::vector<FieldError>& errors() const noexcept { return errors_; }

private:
    std::vector<FieldError> errors_;
};

/// Append-only log of tagged rounds, one JSON object per line:
///
///     {"session_id": "...", "timestamp": "...", "round": {...}}
///
/// An empty path keeps the log in memory only. Appends are serialized.
class SessionStore {
public:
    /// Loads existing lines; throws DataError naming the line on a corrupt entry.
    explicit SessionStore(std::string path = {});

    SessionStore(const SessionStore&) = delete;
    SessionStore& operator=(const SessionStore&) = delete;

    StoredRound append(const RoundRecord& round, const std::string& session_id);

    std::vector<StoredRound> records() const;
    /// All stored rounds as a canonicalized dataset.
    Dataset dataset() const;
    std::size_t size() const;
    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
    mutable std::mutex mutex_;
    std::vector<StoredRound> records_;
    std::ofstream out_;
};

std::string utc_timestamp();

}  // namespace shuttle
