#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <thread>

#include <CLI11.hpp>

#include "shuttle/intercept_model.hpp"
#include "shuttle/model_dir.hpp"
#include "shuttle/model_io.hpp"
#include "shuttle/rally_data.hpp"
#include "shuttle/rla_predictor.hpp"
#include "shuttle/service.hpp"
#include "shuttle/synthetic.hpp"
#include "shuttle/validation.hpp"

namespace shuttle::cli {

namespace {

using nlohmann::json;

/// Input problem that maps to exit code 1.
struct DataFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Bad flag value that maps to exit code 2.
struct UsageFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InputFlags {
    std::string path;
    bool drop_long = false;
    bool skip_bad_rows = false;
};

void add_input(CLI::App* cmd, InputFlags& in) {
    cmd->add_option("data", in.path, "Round CSV")->required();
    cmd->add_flag("--drop-long-serves", in.drop_long, "Drop rows whose ServiceType is Long");
    cmd->add_flag("--skip-bad-rows", in.skip_bad_rows, "Report invalid rows and continue without them");
}

Dataset load(const InputFlags& in, std::ostream& err) {
    LoadResult loaded;
    try {
        loaded = load_csv_file(in.path, {in.drop_long});
    } catch (const DataError& e) {
        throw DataFailure(e.what());
    }
    for (const auto& e : loaded.errors) {
        err << in.path << ":" << e.line << ": " << (e.field.empty() ? "" : e.field + ": ") << e.message << '\n';
    }
    if (!loaded.ok() && !in.skip_bad_rows) {
        throw DataFailure(std::to_string(loaded.errors.size()) + " invalid row(s) in " + in.path);
    }
    if (loaded.dropped_long_serves) err << "dropped " << loaded.dropped_long_serves << " long serve(s)\n";
    return canonicalize(std::move(loaded.dataset));
}

template <class E>
E parse_flag(const std::string& flag, const std::string& value) {
    if (auto v = parse_enum_relaxed<E>(value)) return *v;
    throw UsageFailure("--" + flag + ": unknown value '" + value + "'");
}

const char* side_key(ServiceSide s) { return s == ServiceSide::Left ? "left" : "right"; }

json rla_side_json(const SideRlaFit& slot, const DesignSpec& design) {
    if (!slot.fit) return {{"absent", slot.absence}};
    const auto report = wald(*slot.fit);
    json readings = json::array();
    for (const auto& i : interpret(*slot.fit, report, design)) readings.push_back(to_json(i));
    return {{"coefficients", coefficient_table_json(report)},
            {"probability_table", to_json(probability_table(*slot.fit, design))},
            {"interpretations", std::move(readings)},
            {"log_likelihood", slot.fit->log_likelihood},
            {"bic", slot.fit->bic},
            {"n_obs", slot.fit->n_obs},
            {"iterations", slot.fit->diagnostics.iterations},
            {"separation_suspected", slot.fit->diagnostics.separation_suspected}};
}

// --- subcommands ---------------------------------------------------------------

struct SummarizeArgs {
    InputFlags in;
    bool json = false;
    double min_rate = 0.0;
};

int summarize(const SummarizeArgs& a, std::ostream& out, std::ostream& err) {
    const auto ds = load(a.in, err);
    const auto sla = summarize_sla(ds);
    const auto rla = summarize_rla(ds);
    const auto icp = interception_rates(ds);
    if (a.json) {
        out << json{{"rounds", ds.rounds.size()}, {"sla", to_json(sla)}, {"rla", to_json(rla)}, {"interception", to_json(icp)}}
                   .dump(2)
            << '\n';
        return kExitOk;
    }
    out << "Rounds: " << ds.rounds.size() << "\n\n"
        << "Service landing area\n" << format_table(sla) << '\n'
        << "Return landing area\n" << format_table(rla) << '\n'
        << "Third-shot interception\n" << format_table(icp, a.min_rate);
    return kExitOk;
}

struct FitArgs {
    InputFlags in;
    bool json = false;
    std::string out_dir;
};

int fit_rla(const FitArgs& a, std::ostream& out, std::ostream& err) {
    const auto ds = load(a.in, err);
    RlaModelPair pair;
    try {
        pair = fit_rla_models(ds);
    } catch (const std::exception& e) {
        throw DataFailure(e.what());
    }
    if (!a.out_dir.empty()) {
        save_rla_models(pair, a.out_dir);
        err << "wrote zone models to " << a.out_dir << '\n';
    }
    if (a.json) {
        out << json{{"left", rla_side_json(pair.left, pair.design)}, {"right", rla_side_json(pair.right, pair.design)}}.dump(2)
            << '\n';
        return kExitOk;
    }
    for (auto side : {ServiceSide::Left, ServiceSide::Right}) {
        const auto& slot = pair.side(side);
        out << "== Serving from the " << side_key(side) << " ==\n";
        if (!slot.fit) {
            out << "no model: " << slot.absence << "\n\n";
            continue;
        }
        const auto report = wald(*slot.fit);
        out << "n = " << slot.fit->n_obs << ", log-likelihood = " << slot.fit->log_likelihood
            << ", BIC = " << slot.fit->bic << "\n\n";
        out << "Coefficients with p < 0.2\n" << format_coefficient_table(report.filtered(0.2)) << '\n';
        out << "Estimated probability of each RLA\n" << format_probability_table(probability_table(*slot.fit, pair.design))
            << '\n';
        const auto readings = interpret(*slot.fit, report, pair.design);
        if (!readings.empty()) out << format_interpretations(readings) << '\n';
    }
    return kExitOk;
}

int fit_intercept(const FitArgs& a, std::ostream& out, std::ostream& err) {
    const auto ds = load(a.in, err);
    InterceptModelPair pair;
    try {
        pair = fit_intercept_models(ds);
    } catch (const std::exception& e) {
        throw DataFailure(e.what());
    }
    if (!a.out_dir.empty()) {
        save_intercept_models(pair, a.out_dir);
        err << "wrote interception models to " << a.out_dir << '\n';
    }
    const auto odds = intercept_odds_report(pair);
    if (a.json) {
        json readings = json::array();
        for (const auto& i : odds) readings.push_back(to_json(i));
        out << json{{"left", to_json(pair.left)}, {"right", to_json(pair.right)}, {"odds_ratios", std::move(readings)}}.dump(2)
            << '\n';
        return kExitOk;
    }
    for (auto side : {ServiceSide::Left, ServiceSide::Right}) {
        const auto& slot = pair.side(side);
        out << "== Serving from the " << side_key(side) << " ==\n";
        if (!slot.fit) {
            out << "no model: " << slot.absence << "\n\n";
            continue;
        }
        out << "model selection: " << slot.algorithm << '\n';
        for (const auto& step : slot.trace) {
            out << "  step " << step.step << ": " << (step.added.empty() ? "(intercept only)" : "+ " + step.added)
                << "  BIC " << step.bic << '\n';
        }
        out << "n = " << slot.fit->n_obs << ", BIC = " << slot.fit->bic << "\n\n"
            << format_coefficient_table(wald(*slot.fit)) << '\n';
    }
    if (!odds.empty()) out << format_interpretations(odds);
    return kExitOk;
}

struct PredictArgs {
    std::string side, sla, foot, grip;
    std::string model;
    std::string model_dir;
    bool json = false;
};

int predict(const PredictArgs& a, std::ostream& out, std::ostream& err) {
    const auto side = parse_flag<ServiceSide>("side", a.side);
    const auto sla = parse_flag<SlaArea>("sla", a.sla);
    const auto foot = parse_flag<FootFirst>("foot", a.foot);
    const auto grip = parse_flag<GripType>("grip", a.grip);
    if (a.model.empty() == a.model_dir.empty()) throw UsageFailure("give exactly one of --model or --model-dir");

    MultinomialFit fit;
    DesignSpec design;
    try {
        if (!a.model.empty()) {
            auto stored = load_model(a.model);
            auto* m = std::get_if<MultinomialFit>(&stored.fit);
            if (!m) throw DataFailure(a.model + ": not a zone model");
            const std::string expected = std::string("rla-") + side_key(side);
            if (!stored.name.empty() && stored.name != expected) {
                err << "warning: model '" << stored.name << "' used for serving from the " << side_key(side) << '\n';
            }
            fit = std::move(*m);
            design = std::move(stored.design);
        } else {
            auto pair = load_rla_models(a.model_dir);
            const auto& slot = pair.side(side);
            if (!slot.fit) throw DataFailure(slot.absence);
            fit = *slot.fit;
            design = pair.design;
        }
    } catch (const DataFailure&) {
        throw;
    } catch (const std::exception& e) {
        throw DataFailure(e.what());
    }

    const auto probs = predict_proba(fit, rla_indicator_row(design, sla, foot, grip));
    if (a.json) {
        json p = json::object();
        for (std::size_t j = 0; j < probs.size(); ++j) p[fit.categories[j]] = probs[j];
        out << json{{"side", to_string(side)},
                    {"sla", to_string(sla)},
                    {"foot", to_string(foot)},
                    {"grip", to_string(grip)},
                    {"probabilities", std::move(p)},
                    {"separation_suspected", fit.diagnostics.separation_suspected}}
                   .dump(2)
            << '\n';
        return kExitOk;
    }
    ProbabilityTable table;
    table.separation_suspected = fit.diagnostics.separation_suspected;
    ProbabilityRow row{sla, foot, grip, {}};
    for (std::size_t j = 0; j < probs.size(); ++j) {
        const auto zone = parse_zone(fit.categories[j]);
        if (!zone) throw DataFailure("model category '" + fit.categories[j] + "' is not a zone");
        row.probabilities[static_cast<std::size_t>(zone->index() - 1)] = probs[j];
    }
    table.rows.push_back(row);
    out << format_probability_table(table);
    return kExitOk;
}

struct ValidateArgs {
    InputFlags in;
    std::string model_dir;
    std::optional<std::size_t> declared_rounds;
    bool json = false;
};

int validate_cmd(const ValidateArgs& a, std::ostream& out, std::ostream& err) {
    const auto ds = load(a.in, err);
    std::optional<RlaModelPair> models;
    if (!a.model_dir.empty()) {
        try {
            models = load_rla_models(a.model_dir);
        } catch (const std::exception& e) {
            throw DataFailure(e.what());
        }
    }
    const auto report = validate(ds, a.declared_rounds, models ? &*models : nullptr);
    if (a.json) out << to_json(report).dump(2) << '\n';
    else out << format_report(report);
    return kExitOk;
}

struct SimulateArgs {
    std::size_t n = 1776;
    std::uint64_t seed = 1;
    std::string out_path;
};

int simulate(const SimulateArgs& a, std::ostream& out, std::ostream& err) {
    const auto ds = generate_synthetic(default_generator_config(), a.n, a.seed);
    if (a.out_path.empty()) {
        write_csv(out, ds);
        return kExitOk;
    }
    std::ofstream f(a.out_path);
    if (!f) throw DataFailure("cannot write " + a.out_path);
    write_csv(f, ds);
    err << "wrote " << ds.rounds.size() << " rounds to " << a.out_path << '\n';
    return kExitOk;
}

struct ServeArgs {
    std::string addr;
    std::string model_dir;
    std::string store;
    std::string base_data;
    std::optional<std::size_t> refit_min_rounds;
};

int serve(const ServeArgs& a, std::ostream& /*out*/, std::ostream& err) {
    ServiceConfig config;
    try {
        config = apply_environment(config);
        if (!a.addr.empty()) parse_address(a.addr, config);
    } catch (const std::invalid_argument& e) {
        throw UsageFailure(e.what());
    }
    if (!a.model_dir.empty()) config.model_dir = a.model_dir;
    if (!a.store.empty()) config.store_path = a.store;
    if (!a.base_data.empty()) config.base_data = a.base_data;
    if (a.refit_min_rounds) config.refit_min_rounds = *a.refit_min_rounds;

    std::shared_ptr<SessionStore> store;
    try {
        store = std::make_shared<SessionStore>(config.store_path);
    } catch (const std::exception& e) {
        throw DataFailure(e.what());
    }
    RallyService service(config, store);
    try {
        service.initialize();
    } catch (const std::exception& e) {
        throw DataFailure(e.what());
    }

    HttpServer server(service);
    const int port = server.bind(config.host, config.port);
    err << "listening on " << config.host << ":" << port << '\n';

    std::thread initial_fit;
    if (!service.models() && !config.base_data.empty()) {
        err << "no stored models; fitting on " << config.base_data << " (503 until done)\n";
        initial_fit = std::thread([&service, &err] {
            const auto r = service.refit();
            if (r.status != 200) err << "initial fit failed: " << r.body.dump() << '\n';
        });
    } else if (!service.models()) {
        err << "no models loaded; POST /refit after tagging rounds\n";
    }
    server.listen();
    if (initial_fit.joinable()) initial_fit.join();
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Short-service rally analysis for badminton doubles", "shuttle"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Help for every subcommand");

    SummarizeArgs sum;
    auto* c_sum = app.add_subcommand("summarize", "SLA, RLA and interception summaries");
    add_input(c_sum, sum.in);
    c_sum->add_flag("--json", sum.json, "JSON output");
    c_sum->add_option("--min-rate", sum.min_rate, "Only list players with an interception rate above this")
        ->check(CLI::Range(0.0, 1.0));

    FitArgs frla;
    auto* c_frla = app.add_subcommand("fit-rla", "Fit the per-side return landing area models");
    add_input(c_frla, frla.in);
    c_frla->add_flag("--json", frla.json, "JSON output");
    c_frla->add_option("--out-dir", frla.out_dir, "Write rla_left.json and rla_right.json here");

    FitArgs fint;
    auto* c_fint = app.add_subcommand("fit-intercept", "Fit the per-side third-shot interception models");
    add_input(c_fint, fint.in);
    c_fint->add_flag("--json", fint.json, "JSON output");
    c_fint->add_option("--out-dir", fint.out_dir, "Write intercept_left.json and intercept_right.json here");

    PredictArgs pred;
    auto* c_pred = app.add_subcommand("predict", "Zone probabilities for one situation");
    c_pred->add_option("--side", pred.side, "Left | Right")->required();
    c_pred->add_option("--sla", pred.sla, "Inside | Middle | Outside")->required();
    c_pred->add_option("--foot", pred.foot, "Left | Right")->required();
    c_pred->add_option("--grip", pred.grip, "Forehand | Backhand")->required();
    c_pred->add_option("--model", pred.model, "Zone model document");
    c_pred->add_option("--model-dir", pred.model_dir, "Directory with rla_left.json / rla_right.json");
    c_pred->add_flag("--json", pred.json, "JSON output");

    ValidateArgs val;
    auto* c_val = app.add_subcommand("validate", "Score the foot and grip rules on a holdout match");
    add_input(c_val, val.in);
    c_val->add_option("--model-dir", val.model_dir, "Also report the fitted models' top-zone hit rate");
    c_val->add_option("--declared-rounds", val.declared_rounds, "Round count stated for the match, if it differs");
    c_val->add_flag("--json", val.json, "JSON output");

    SimulateArgs sim;
    auto* c_sim = app.add_subcommand("simulate", "Generate a synthetic round CSV");
    c_sim->add_option("--n", sim.n, "Number of rounds")->check(CLI::PositiveNumber);
    c_sim->add_option("--seed", sim.seed, "Random seed");
    c_sim->add_option("--out", sim.out_path, "Output file (stdout when omitted)");

    ServeArgs srv;
    auto* c_srv = app.add_subcommand("serve", "Run the HTTP JSON service");
    c_srv->add_option("--addr", srv.addr, "host:port (env SHUTTLE_ADDR, default 127.0.0.1:8080)");
    c_srv->add_option("--model-dir", srv.model_dir, "Model directory (env SHUTTLE_MODEL_DIR)");
    c_srv->add_option("--store", srv.store, "Session store JSONL file (env SHUTTLE_STORE)");
    c_srv->add_option("--base-data", srv.base_data, "Round CSV used by /refit (env SHUTTLE_BASE_DATA)");
    c_srv->add_option("--refit-min-rounds", srv.refit_min_rounds,
                      "Session rounds per side before /refit uses them (env SHUTTLE_REFIT_MIN_ROUNDS, default 50)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, err, err);
        err << '\n' << app.help();
        return kExitUsage;
    }

    try {
        if (c_sum->parsed()) return summarize(sum, out, err);
        if (c_frla->parsed()) return fit_rla(frla, out, err);
        if (c_fint->parsed()) return fit_intercept(fint, out, err);
        if (c_pred->parsed()) return predict(pred, out, err);
        if (c_val->parsed()) return validate_cmd(val, out, err);
        if (c_sim->parsed()) return simulate(sim, out, err);
        if (c_srv->parsed()) return serve(srv, out, err);
    } catch (const UsageFailure& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const DataFailure& e) {
        err << "error: " << e.what() << '\n';
        return kExitDataError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitDataError;
    }
    return kExitUsage;
}

}  // namespace shuttle::cli
