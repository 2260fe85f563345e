#include "shuttle/service.hpp"

#include <charconv>
#include <cstdlib>
#include <stdexcept>

#include <httplib.h>

#include "shuttle/model_dir.hpp"

namespace shuttle {

namespace {

using nlohmann::json;

json error_body(const std::vector<FieldError>& errors) {
    json list = json::array();
    for (const auto& e : errors) list.push_back({{"field", e.field}, {"message", e.message}});
    return {{"errors", std::move(list)}};
}

json error_body(const std::string& message) { return {{"error", message}}; }

template <class E>
void read_field(const json& body, const char* field, E& out, std::vector<FieldError>& errors) {
    auto it = body.find(field);
    if (it == body.end()) {
        errors.push_back({field, "missing"});
    } else if (!it->is_string()) {
        errors.push_back({field, "expected a string"});
    } else if (auto v = parse_enum_relaxed<E>(it->get<std::string>())) {
        out = *v;
    } else {
        errors.push_back({field, "unknown value '" + it->get<std::string>() + "'"});
    }
}

json summaries(const Dataset& ds) {
    return {{"rounds", ds.rounds.size()},
            {"sla", to_json(summarize_sla(ds))},
            {"rla", to_json(summarize_rla(ds))},
            {"interception", to_json(interception_rates(ds))}};
}

std::size_t parse_count(const std::string& text, const char* name) {
    std::size_t value = 0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end) throw std::invalid_argument(std::string(name) + ": not a count: '" + text + "'");
    return value;
}

const char* side_key(ServiceSide s) { return s == ServiceSide::Left ? "left" : "right"; }

}  // namespace

void parse_address(const std::string& addr, ServiceConfig& config) {
    const auto colon = addr.rfind(':');
    std::string host = colon == std::string::npos ? std::string() : addr.substr(0, colon);
    const std::string port = colon == std::string::npos ? addr : addr.substr(colon + 1);
    const auto value = parse_count(port, "address port");
    if (value > 65535) throw std::invalid_argument("address port out of range: " + port);
    if (!host.empty()) config.host = host;
    config.port = static_cast<int>(value);
}

ServiceConfig apply_environment(ServiceConfig config) {
    auto env = [](const char* name) -> std::optional<std::string> {
        const char* v = std::getenv(name);
        if (!v || !*v) return std::nullopt;
        return std::string(v);
    };
    if (auto v = env("SHUTTLE_ADDR")) parse_address(*v, config);
    if (auto v = env("SHUTTLE_MODEL_DIR")) config.model_dir = *v;
    if (auto v = env("SHUTTLE_STORE")) config.store_path = *v;
    if (auto v = env("SHUTTLE_BASE_DATA")) config.base_data = *v;
    if (auto v = env("SHUTTLE_REFIT_MIN_ROUNDS")) config.refit_min_rounds = parse_count(*v, "SHUTTLE_REFIT_MIN_ROUNDS");
    return config;
}

RallyService::RallyService(ServiceConfig config, std::shared_ptr<SessionStore> store)
    : config_(std::move(config)), store_(store ? std::move(store) : std::make_shared<SessionStore>()) {}

void RallyService::initialize() {
    if (!config_.base_data.empty()) {
        auto loaded = load_csv_file(config_.base_data);
        if (!loaded.ok()) {
            const auto& e = loaded.errors.front();
            throw DataError(config_.base_data + ":" + std::to_string(e.line) + ": " + e.field + ": " + e.message);
        }
        base_ = canonicalize(std::move(loaded.dataset));
    }
    if (!config_.model_dir.empty() && has_rla_models(config_.model_dir)) {
        publish(load_rla_models(config_.model_dir), load_intercept_models(config_.model_dir),
                "model directory " + config_.model_dir);
    }
}

void RallyService::publish(RlaModelPair rla, InterceptModelPair intercept, std::string source) {
    auto bundle = std::make_shared<ModelBundle>();
    bundle->rla = std::move(rla);
    bundle->intercept = std::move(intercept);
    bundle->source = std::move(source);
    std::lock_guard lock(bundle_mutex_);
    bundle->version = next_version_++;
    bundle_ = std::move(bundle);
}

std::shared_ptr<const ModelBundle> RallyService::models() const {
    std::lock_guard lock(bundle_mutex_);
    return bundle_;
}

Response RallyService::predict(const json& body) const {
    if (!body.is_object()) return {400, error_body({{"body", "expected a JSON object"}})};
    ServiceSide side{};
    SlaArea sla{};
    FootFirst foot{};
    GripType grip{};
    std::vector<FieldError> errors;
    read_field(body, "side", side, errors);
    read_field(body, "sla", sla, errors);
    read_field(body, "foot", foot, errors);
    read_field(body, "grip", grip, errors);
    if (!errors.empty()) return {400, error_body(errors)};

    const auto bundle = models();
    if (!bundle) return {503, error_body("models are not loaded yet")};
    const auto& slot = bundle->rla.side(side);
    if (!slot.fit) return {503, error_body("no zone model for serving from the " + std::string(side_key(side)))};

    const auto probs = predict_proba(*slot.fit, rla_indicator_row(bundle->rla.design, sla, foot, grip));
    json out = json::object();
    for (std::size_t j = 0; j < probs.size(); ++j) out[slot.fit->categories[j]] = probs[j];
    return {200,
            {{"probabilities", std::move(out)},
             {"model_version", bundle->version},
             {"separation_suspected", slot.fit->diagnostics.separation_suspected},
             {"request",
              {{"side", to_string(side)}, {"sla", to_string(sla)}, {"foot", to_string(foot)}, {"grip", to_string(grip)}}}}};
}

Response RallyService::model_summary() const {
    const auto bundle = models();
    if (!bundle) return {503, error_body("models are not loaded yet")};
    json rla = json::object();
    json intercept = json::object();
    for (auto side : {ServiceSide::Left, ServiceSide::Right}) {
        const auto& r = bundle->rla.side(side);
        if (r.fit) {
            const auto report = wald(*r.fit);
            json readings = json::array();
            for (const auto& i : interpret(*r.fit, report, bundle->rla.design)) readings.push_back(to_json(i));
            rla[side_key(side)] = {{"coefficients", coefficient_table_json(report)},
                                   {"interpretations", std::move(readings)},
                                   {"log_likelihood", r.fit->log_likelihood},
                                   {"bic", r.fit->bic},
                                   {"n_obs", r.fit->n_obs},
                                   {"separation_suspected", r.fit->diagnostics.separation_suspected}};
        } else {
            rla[side_key(side)] = {{"absent", r.absence}};
        }
        intercept[side_key(side)] = to_json(bundle->intercept.side(side));
    }
    json odds = json::array();
    for (const auto& i : intercept_odds_report(bundle->intercept)) odds.push_back(to_json(i));
    return {200,
            {{"model_version", bundle->version},
             {"source", bundle->source},
             {"rla", std::move(rla)},
             {"intercept", std::move(intercept)},
             {"intercept_odds", std::move(odds)}}};
}

Response RallyService::post_round(const json& body) {
    if (!body.is_object()) return {400, error_body({{"body", "expected a JSON object"}})};
    std::vector<FieldError> errors;
    const json& round_json = body.contains("round") ? body["round"] : body;
    auto round = round_from_json(round_json, errors);
    std::string session_id;
    if (auto it = body.find("session_id"); it != body.end()) {
        if (it->is_string()) session_id = it->get<std::string>();
        else errors.push_back({"session_id", "expected a string"});
    }
    if (!round || !errors.empty()) return {400, error_body(errors)};
    StoredRound stored;
    try {
        stored = store_->append(*round, session_id);
    } catch (const InvalidRoundError& e) {
        return {400, error_body(e.errors())};
    } catch (const DataError& e) {
        return {500, error_body(e.what())};
    }
    return {201,
            {{"stored", {{"session_id", stored.session_id}, {"timestamp", stored.timestamp}, {"round", round_to_json(stored.round)}}},
             {"summaries", summaries(store_->dataset())}}};
}

Response RallyService::stats() const { return {200, summaries(store_->dataset())}; }

Response RallyService::refit() {
    bool expected = false;
    if (!refit_running_.compare_exchange_strong(expected, true)) {
        return {409, error_body("a refit is already running")};
    }
    struct Reset {
        std::atomic<bool>& flag;
        ~Reset() { flag = false; }
    } reset{refit_running_};

    const Dataset session = store_->dataset();
    Dataset data = base_;
    data.canonicalized = true;
    json included = json::object();
    json session_counts = json::object();
    std::vector<std::string> notes;
    for (auto side : {ServiceSide::Left, ServiceSide::Right}) {
        std::size_t n = 0;
        for (const auto& r : session.rounds) n += r.service_from == side;
        const bool use = n > 0 && n >= config_.refit_min_rounds;
        session_counts[side_key(side)] = n;
        included[side_key(side)] = use;
        if (use) {
            for (const auto& r : session.rounds)
                if (r.service_from == side) data.rounds.push_back(r);
        } else if (n > 0) {
            notes.push_back(std::string("serving from the ") + side_key(side) + ": " + std::to_string(n) +
                            " session rounds is below the minimum of " + std::to_string(config_.refit_min_rounds) +
                            "; base data only");
        }
    }
    if (data.rounds.empty()) return {422, error_body("no rounds to fit: no base data and too few session rounds")};

    RlaModelPair rla;
    try {
        rla = fit_rla_models(data, config_.fit_options);
    } catch (const std::exception& e) {
        return {422, error_body(std::string("zone model refit failed: ") + e.what())};
    }
    InterceptModelPair intercept;
    try {
        intercept = fit_intercept_models(data, config_.fit_options);
    } catch (const std::exception& e) {
        intercept.left.absence = intercept.right.absence = e.what();
        notes.push_back(std::string("interception refit failed: ") + e.what());
    }
    publish(std::move(rla), std::move(intercept), "refit");
    return {200,
            {{"model_version", models()->version},
             {"rounds", data.rounds.size()},
             {"base_rounds", base_.rounds.size()},
             {"session_rounds", std::move(session_counts)},
             {"session_included", std::move(included)},
             {"notes", notes}}};
}

// --- HTTP ------------------------------------------------------------------------

struct HttpServer::Impl {
    httplib::Server server;
};

HttpServer::HttpServer(RallyService& service) : impl_(std::make_unique<Impl>()) {
    auto& svr = impl_->server;
    auto send = [](httplib::Response& res, const Response& r) {
        res.status = r.status;
        res.set_content(r.body.dump(), "application/json");
    };
    auto with_body = [send](auto handler) {
        return [send, handler](const httplib::Request& req, httplib::Response& res) {
            json body;
            try {
                body = json::parse(req.body);
            } catch (const json::parse_error& e) {
                send(res, {400, error_body({{"body", std::string("invalid JSON: ") + e.what()}})});
                return;
            }
            send(res, handler(body));
        };
    };

    svr.set_default_headers({{"Access-Control-Allow-Origin", "*"}});
    svr.Options(R"(.*)", [](const httplib::Request&, httplib::Response& res) {
        res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
        res.set_header("Access-Control-Allow-Headers", "Content-Type");
        res.status = 204;
    });
    svr.Post("/predict/rla", with_body([&service](const json& b) { return service.predict(b); }));
    svr.Post("/rounds", with_body([&service](const json& b) { return service.post_round(b); }));
    svr.Get("/model/summary", [&service, send](const httplib::Request&, httplib::Response& res) {
        send(res, service.model_summary());
    });
    svr.Get("/stats", [&service, send](const httplib::Request&, httplib::Response& res) { send(res, service.stats()); });
    svr.Post("/refit", [&service, send](const httplib::Request&, httplib::Response& res) { send(res, service.refit()); });
    svr.set_exception_handler([send](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
        std::string what = "internal error";
        try {
            if (ep) std::rethrow_exception(ep);
        } catch (const std::exception& e) {
            what = e.what();
        } catch (...) {
        }
        send(res, {500, error_body(what)});
    });
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
    auto& svr = impl_->server;
    if (port == 0) {
        const int bound = svr.bind_to_any_port(host);
        if (bound < 0) throw std::runtime_error("cannot bind " + host);
        return bound;
    }
    if (!svr.bind_to_port(host, port)) throw std::runtime_error("cannot bind " + host + ":" + std::to_string(port));
    return port;
}

void HttpServer::listen() { impl_->server.listen_after_bind(); }

void HttpServer::wait_until_ready() const { impl_->server.wait_until_ready(); }

void HttpServer::stop() {
    if (impl_ && impl_->server.is_running()) impl_->server.stop();
}

}  // namespace shuttle
