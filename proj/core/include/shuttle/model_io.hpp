#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "shuttle/design.hpp"
#include "shuttle/glm.hpp"

namespace shuttle {

inline constexpr const char* kModelFormat = "shuttle-model";
inline constexpr int kModelFormatVersion = 1;

/// A fitted model together with the design that produced it. This is the
/// unit persisted on disk and served over HTTP.
struct StoredModel {
    std::string name;  // e.g. "rla-left", "intercept-right"
    DesignSpec design;
    ModelFit fit;
};

/// Versioned document:
///
///     {"format": "shuttle-model", "version": 1, "name": ..., "kind": "multinomial"|"binary",
///      "design": {...}, "categories": [...], "reference": "5", "columns": [...],
///      "parameters": {"<category>": {"(Intercept)": a, "<column>": b, ...}},
///      "covariance": {"labels": [...], "values": [row-major]},
///      "log_likelihood": l, "bic": b, "n_params": k, "n_obs": n, "diagnostics": {...}}
///
/// Binary models key their parameters under "Yes". Non-finite covariance
/// entries are written as null.
nlohmann::json to_json(const StoredModel& model);
StoredModel stored_model_from_json(const nlohmann::json& j);

nlohmann::json fit_to_json(const MultinomialFit& fit);
nlohmann::json fit_to_json(const BinaryFit& fit);

void save_model(const StoredModel& model, const std::string& path);
StoredModel load_model(const std::string& path);

}  // namespace shuttle
