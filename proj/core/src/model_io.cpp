#include "shuttle/model_io.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>

namespace shuttle {

namespace {

nlohmann::json number_or_null(double v) {
    return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}

double number_or_nan(const nlohmann::json& j) {
    return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

nlohmann::json diagnostics_to_json(const FitDiagnostics& d) {
    return {{"iterations", d.iterations},
            {"gradient_norm", d.gradient_norm},
            {"converged", d.converged},
            {"separation_suspected", d.separation_suspected},
            {"ridge_used", d.ridge_used},
            {"capped_parameters", d.capped_parameters}};
}

FitDiagnostics diagnostics_from_json(const nlohmann::json& j) {
    FitDiagnostics d;
    d.iterations = j.value("iterations", 0);
    d.gradient_norm = j.value("gradient_norm", 0.0);
    d.converged = j.value("converged", false);
    d.separation_suspected = j.value("separation_suspected", false);
    d.ridge_used = j.value("ridge_used", false);
    d.capped_parameters = j.value("capped_parameters", std::vector<std::string>{});
    return d;
}

nlohmann::json covariance_to_json(const Eigen::MatrixXd& cov, const std::vector<std::string>& labels) {
    nlohmann::json values = nlohmann::json::array();
    for (Eigen::Index r = 0; r < cov.rows(); ++r)
        for (Eigen::Index c = 0; c < cov.cols(); ++c) values.push_back(number_or_null(cov(r, c)));
    return {{"labels", labels}, {"values", std::move(values)}};
}

Eigen::MatrixXd covariance_from_json(const nlohmann::json& j, std::size_t k) {
    const auto& values = j.at("values");
    if (values.size() != k * k) throw std::runtime_error("covariance has wrong size");
    Eigen::MatrixXd cov(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k));
    std::size_t i = 0;
    for (Eigen::Index r = 0; r < cov.rows(); ++r)
        for (Eigen::Index c = 0; c < cov.cols(); ++c) cov(r, c) = number_or_nan(values[i++]);
    return cov;
}

void common_fields(nlohmann::json& j, double ll, double b, std::size_t k, std::size_t n, const FitDiagnostics& d) {
    j["log_likelihood"] = ll;
    j["bic"] = b;
    j["n_params"] = k;
    j["n_obs"] = n;
    j["diagnostics"] = diagnostics_to_json(d);
}

}  // namespace

nlohmann::json fit_to_json(const MultinomialFit& fit) {
    nlohmann::json j;
    j["kind"] = "multinomial";
    j["categories"] = fit.categories;
    j["reference"] = fit.categories.at(fit.reference);
    j["columns"] = fit.columns;
    nlohmann::json params = nlohmann::json::object();
    for (std::size_t cat : fit.non_reference()) {
        const auto r = static_cast<Eigen::Index>(*fit.row_of(cat));
        auto& p = params[fit.categories[cat]];
        p[kInterceptLabel] = fit.coefficients(r, 0);
        for (std::size_t c = 0; c < fit.columns.size(); ++c)
            p[fit.columns[c]] = fit.coefficients(r, static_cast<Eigen::Index>(c + 1));
    }
    j["parameters"] = std::move(params);
    j["covariance"] = covariance_to_json(fit.covariance, fit.parameter_labels());
    common_fields(j, fit.log_likelihood, fit.bic, fit.n_params, fit.n_obs, fit.diagnostics);
    return j;
}

nlohmann::json fit_to_json(const BinaryFit& fit) {
    nlohmann::json j;
    j["kind"] = "binary";
    j["categories"] = {"No", "Yes"};
    j["reference"] = "No";
    j["columns"] = fit.columns;
    auto& p = j["parameters"]["Yes"];
    p[kInterceptLabel] = fit.coefficients(0);
    for (std::size_t c = 0; c < fit.columns.size(); ++c)
        p[fit.columns[c]] = fit.coefficients(static_cast<Eigen::Index>(c + 1));
    j["covariance"] = covariance_to_json(fit.covariance, fit.parameter_labels());
    common_fields(j, fit.log_likelihood, fit.bic, fit.n_params, fit.n_obs, fit.diagnostics);
    return j;
}

nlohmann::json to_json(const StoredModel& model) {
    nlohmann::json j = std::visit([](const auto& f) { return fit_to_json(f); }, model.fit);
    j["format"] = kModelFormat;
    j["version"] = kModelFormatVersion;
    j["name"] = model.name;
    j["design"] = model.design;
    return j;
}

StoredModel stored_model_from_json(const nlohmann::json& j) {
    if (j.value("format", "") != kModelFormat) throw std::runtime_error("not a shuttle model document");
    if (j.value("version", 0) != kModelFormatVersion) {
        throw std::runtime_error("unsupported model document version " + j.value("version", nlohmann::json()).dump());
    }
    StoredModel model;
    model.name = j.value("name", "");
    model.design = j.at("design").get<DesignSpec>();
    const auto kind = j.at("kind").get<std::string>();
    const auto columns = j.at("columns").get<std::vector<std::string>>();
    if (columns != model.design.column_labels()) {
        throw std::runtime_error("model columns do not match its design");
    }
    const auto& params = j.at("parameters");

    if (kind == "multinomial") {
        MultinomialFit fit;
        fit.categories = j.at("categories").get<std::vector<std::string>>();
        const auto ref = j.at("reference").get<std::string>();
        auto it = std::find(fit.categories.begin(), fit.categories.end(), ref);
        if (it == fit.categories.end()) throw std::runtime_error("reference category not found");
        fit.reference = static_cast<std::size_t>(it - fit.categories.begin());
        fit.columns = columns;
        fit.coefficients.resize(static_cast<Eigen::Index>(fit.categories.size() - 1),
                                static_cast<Eigen::Index>(columns.size() + 1));
        for (std::size_t cat : fit.non_reference()) {
            const auto r = static_cast<Eigen::Index>(*fit.row_of(cat));
            const auto& p = params.at(fit.categories[cat]);
            fit.coefficients(r, 0) = p.at(kInterceptLabel).get<double>();
            for (std::size_t c = 0; c < columns.size(); ++c)
                fit.coefficients(r, static_cast<Eigen::Index>(c + 1)) = p.at(columns[c]).get<double>();
        }
        fit.n_params = j.at("n_params").get<std::size_t>();
        fit.n_obs = j.at("n_obs").get<std::size_t>();
        fit.covariance = covariance_from_json(j.at("covariance"), fit.n_params);
        fit.log_likelihood = j.at("log_likelihood").get<double>();
        fit.bic = j.at("bic").get<double>();
        fit.diagnostics = diagnostics_from_json(j.value("diagnostics", nlohmann::json::object()));
        model.fit = std::move(fit);
    } else if (kind == "binary") {
        BinaryFit fit;
        fit.columns = columns;
        fit.coefficients.resize(static_cast<Eigen::Index>(columns.size() + 1));
        const auto& p = params.at("Yes");
        fit.coefficients(0) = p.at(kInterceptLabel).get<double>();
        for (std::size_t c = 0; c < columns.size(); ++c)
            fit.coefficients(static_cast<Eigen::Index>(c + 1)) = p.at(columns[c]).get<double>();
        fit.n_params = j.at("n_params").get<std::size_t>();
        fit.n_obs = j.at("n_obs").get<std::size_t>();
        fit.covariance = covariance_from_json(j.at("covariance"), fit.n_params);
        fit.log_likelihood = j.at("log_likelihood").get<double>();
        fit.bic = j.at("bic").get<double>();
        fit.diagnostics = diagnostics_from_json(j.value("diagnostics", nlohmann::json::object()));
        model.fit = std::move(fit);
    } else {
        throw std::runtime_error("unknown model kind '" + kind + "'");
    }
    return model;
}

void save_model(const StoredModel& model, const std::string& path) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << to_json(model).dump(2) << '\n';
        if (!out) throw std::runtime_error("failed writing " + tmp.string());
    }
    fs::rename(tmp, target);
}

StoredModel load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open model " + path);
    try {
        return stored_model_from_json(nlohmann::json::parse(in));
    } catch (const std::exception& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

}  // namespace shuttle
