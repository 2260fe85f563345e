#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "shuttle/intercept_model.hpp"
#include "shuttle/rla_predictor.hpp"
#include "shuttle/session_store.hpp"

namespace shuttle {

struct ServiceConfig {
    std::string host = "127.0.0.1";
    int port = 8080;  // 0 picks a free port
    std::string model_dir;
    std::string store_path;
    std::string base_data;
    /// Session rounds a side needs before /refit includes them.
    std::size_t refit_min_rounds = 50;
    FitOptions fit_options;
};

/// Applies SHUTTLE_ADDR (host:port or :port), SHUTTLE_MODEL_DIR, SHUTTLE_STORE,
/// SHUTTLE_BASE_DATA and SHUTTLE_REFIT_MIN_ROUNDS on top of `config`.
/// Throws std::invalid_argument on a malformed value.
ServiceConfig apply_environment(ServiceConfig config);

/// "host:port", ":port" or "port".
void parse_address(const std::string& addr, ServiceConfig& config);

/// Everything one prediction needs. Immutable once published.
struct ModelBundle {
    std::uint64_t version = 0;
    std::string source;
    RlaModelPair rla;
    InterceptModelPair intercept;
};

struct Response {
    int status = 200;
    nlohmann::json body;
};

/// Transport-independent request handlers. Predictions read one published
/// bundle; a refit builds a new bundle and swaps it in under a lock, so every
/// request sees either the old or the new model in full.
class RallyService {
public:
    RallyService(ServiceConfig config, std::shared_ptr<SessionStore> store);

    /// Loads models from config.model_dir and base data from config.base_data
    /// when set. Throws on unreadable inputs.
    void initialize();

    void publish(RlaModelPair rla, InterceptModelPair intercept, std::string source);
    std::shared_ptr<const ModelBundle> models() const;

    Response predict(const nlohmann::json& body) const;
    Response model_summary() const;
    Response post_round(const nlohmann::json& body);
    Response stats() const;
    /// 409 when another refit is in progress.
    Response refit();

    const ServiceConfig& config() const noexcept { return config_; }
    bool refit_running() const noexcept { return refit_running_.load(); }

private:
    ServiceConfig config_;
    std::shared_ptr<SessionStore> store_;
    Dataset base_;

    mutable std::mutex bundle_mutex_;
    std::shared_ptr<const ModelBundle> bundle_;
    std::uint64_t next_version_ = 1;

    std::atomic<bool> refit_running_{false};
};

/// HTTP/1.1 front end for a RallyService.
class HttpServer {
public:
    explicit HttpServer(RallyService& service);
    ~HttpServer();
    HttpServer(const HttpServer&) = delete;
    HttpServer& operator=(const HttpServer&) = delete;

    /// Binds and returns the bound port (useful with port 0). Throws on failure.
    int bind(const std::string& host, int port);
    /// Serves until stop(); blocks.
    void listen();
    /// Blocks until listen() is accepting connections.
    void wait_until_ready() const;
    void stop();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace shuttle
