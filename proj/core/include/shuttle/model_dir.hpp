#pragma once

#include <string>

#include "shuttle/intercept_model.hpp"
#include "shuttle/rla_predictor.hpp"

namespace shuttle {

/// File names inside a model directory.
inline constexpr const char* kRlaLeftFile = "rla_left.json";
inline constexpr const char* kRlaRightFile = "rla_right.json";
inline constexpr const char* kInterceptLeftFile = "intercept_left.json";
inline constexpr const char* kInterceptRightFile = "intercept_right.json";

/// Writes one document per fitted side; absent sides are skipped. Creates the directory.
void save_rla_models(const RlaModelPair& pair, const std::string& dir);
void save_intercept_models(const InterceptModelPair& pair, const std::string& dir);

/// Missing files leave that side absent. Throws when a present file is invalid
/// or holds the wrong kind of model.
RlaModelPair load_rla_models(const std::string& dir);
InterceptModelPair load_intercept_models(const std::string& dir);

/// Whether `dir` holds at least one RLA model file.
bool has_rla_models(const std::string& dir);

}  // namespace shuttle
