#include "shuttle/design.hpp"

#include <algorithm>
#include <limits>
#include <set>

namespace shuttle {

std::vector<std::string> Factor::column_labels() const {
    std::vector<std::string> out;
    for (const auto& level : levels)
        if (level != reference) out.push_back(label + "=" + level);
    return out;
}

std::string level_of(FactorSource source, const RoundRecord& r) {
    switch (source) {
        case FactorSource::ServiceFrom: return std::string(to_string(r.service_from));
        case FactorSource::Sla: return std::string(to_string(r.sla));
        case FactorSource::Foot: return std::string(to_string(r.foot));
        case FactorSource::Grip: return std::string(to_string(r.grip));
        case FactorSource::RlaPath: return std::string(to_string(path_of(r.rla)));
        case FactorSource::RlaDepth: return std::string(to_string(depth_of(r.rla)));
        case FactorSource::RlaZone: break;
    }
    return "No." + std::to_string(r.rla.index());
}

ResponseSpec rla_response(int reference_zone) {
    ResponseSpec r;
    r.kind = ResponseKind::RlaZone;
    for (auto z : all_zones()) r.categories.push_back(std::to_string(z.index()));
    r.reference = static_cast<std::size_t>(RlaZone(reference_zone).index() - 1);
    return r;
}

ResponseSpec intercept_response() {
    ResponseSpec r;
    r.kind = ResponseKind::Intercept;
    r.categories = {"No", "Yes"};
    r.reference = 0;
    return r;
}

void DesignSpec::validate() const {
    std::set<std::string> names;
    for (const auto& f : factors) {
        if (!names.insert(f.name).second) throw DesignError("duplicate factor '" + f.name + "'");
        if (std::find(f.levels.begin(), f.levels.end(), f.reference) == f.levels.end()) {
            throw DesignError("reference level '" + f.reference + "' of factor '" + f.name +
                              "' is not one of its levels");
        }
    }
    if (response.reference >= response.categories.size()) {
        throw DesignError("response reference category out of range");
    }
}

std::vector<std::string> DesignSpec::column_labels() const {
    std::vector<std::string> out;
    for (const auto& f : factors) {
        auto cols = f.column_labels();
        out.insert(out.end(), cols.begin(), cols.end());
    }
    return out;
}

std::vector<double> DesignSpec::indicator_row(const RoundRecord& record) const {
    std::vector<double> row;
    for (const auto& f : factors) {
        const auto value = level_of(f.source, record);
        if (std::find(f.levels.begin(), f.levels.end(), value) == f.levels.end()) {
            throw DesignError("factor '" + f.name + "' has no level '" + value + "'");
        }
        for (const auto& level : f.levels) {
            if (level == f.reference) continue;
            row.push_back(level == value ? 1.0 : 0.0);
        }
    }
    return row;
}

const Factor* DesignSpec::find(const std::string& name) const {
    for (const auto& f : factors)
        if (f.name == name) return &f;
    return nullptr;
}

std::string DesignSpec::reference_term(const std::string& column) const {
    const auto label = column.substr(0, column.find('='));
    for (const auto& f : factors)
        if (f.label == label) return f.label + "=" + f.reference;
    return "the reference level";
}

Factor sla_factor() { return {"SLA", "SLA", FactorSource::Sla, {"Outside", "Middle", "Inside"}, "Inside"}; }
Factor foot_factor() { return {"Foot", "Foot", FactorSource::Foot, {"Left", "Right"}, "Right"}; }
Factor grip_factor() { return {"Grip", "Grip", FactorSource::Grip, {"Forehand", "Backhand"}, "Backhand"}; }
Factor path_factor() {
    return {"RLA path", "RLA", FactorSource::RlaPath, {"Left path", "Center path", "Right path"}, "Left path"};
}
Factor zone_factor(int reference_zone) {
    Factor f{"RLA zone", "RLA", FactorSource::RlaZone, {}, "No." + std::to_string(RlaZone(reference_zone).index())};
    for (auto z : all_zones()) f.levels.push_back("No." + std::to_string(z.index()));
    return f;
}
Factor side_factor() { return {"ServiceFrom", "ServiceFrom", FactorSource::ServiceFrom, {"Left", "Right"}, "Left"}; }

namespace {

int response_of(const ResponseSpec& response, const RoundRecord& r) {
    if (response.kind == ResponseKind::Intercept) {
        if (r.intercept == InterceptOutcome::NotApplicable) {
            throw DesignError("round with Intercept=NA passed the filter of a binary interception design");
        }
        return r.intercept == InterceptOutcome::Yes ? 1 : 0;
    }
    const auto value = std::to_string(r.rla.index());
    auto it = std::find(response.categories.begin(), response.categories.end(), value);
    if (it == response.categories.end()) throw DesignError("response has no category '" + value + "'");
    return static_cast<int>(it - response.categories.begin());
}

}  // namespace

DesignData build_design(const Dataset& ds, const DesignSpec& spec, const RoundFilter& filter) {
    spec.validate();
    std::vector<const RoundRecord*> rows;
    for (const auto& r : ds.rounds)
        if (!filter || filter(r)) rows.push_back(&r);
    if (rows.empty()) throw DesignError("no rounds left after filtering");

    DesignData out;
    out.x.columns = spec.column_labels();
    out.x.values.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(out.x.columns.size()));
    out.y.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto row = spec.indicator_row(*rows[i]);
        for (std::size_t c = 0; c < row.size(); ++c) {
            out.x.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) = row[c];
        }
        out.y.push_back(response_of(spec.response, *rows[i]));
    }
    return out;
}

ModelFit fit_design(const DesignData& data, const ResponseSpec& response, const FitOptions& options) {
    if (response.binary()) return fit_logistic(data.x, data.y, options);
    return fit_multinomial(data.x, data.y, response.categories, response.reference, options);
}

StepwiseResult stepwise_bic(const Dataset& ds, const std::vector<Factor>& candidates,
                            const ResponseSpec& response, const RoundFilter& filter,
                            const FitOptions& options) {
    if (candidates.empty()) throw DesignError("stepwise selection needs at least one candidate factor");

    std::vector<bool> chosen(candidates.size(), false);
    std::vector<SelectionStep> trace;
    std::vector<std::string> order;

    auto spec_for = [&](const std::vector<bool>& mask) {
        DesignSpec spec;
        spec.response = response;
        for (std::size_t i = 0; i < candidates.size(); ++i)
            if (mask[i]) spec.factors.push_back(candidates[i]);
        return spec;
    };
    auto fit_mask = [&](const std::vector<bool>& mask) {
        return fit_design(build_design(ds, spec_for(mask), filter), response, options);
    };

    ModelFit current;
    try {
        current = fit_mask(chosen);
    } catch (const std::exception& e) {
        throw StepwiseError(std::string("intercept-only fit failed: ") + e.what(), trace);
    }
    trace.push_back({0, "", bic(current), {}});

    for (int step = 1;; ++step) {
        SelectionStep record{step, "", bic(current), {}};
        std::optional<std::size_t> best;
        std::optional<ModelFit> best_fit;
        double best_bic = bic(current);
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            if (chosen[i]) continue;
            auto mask = chosen;
            mask[i] = true;
            ModelFit fit;
            try {
                fit = fit_mask(mask);
            } catch (const SingularInformationError&) {
                // Aliased with the factors already in: it cannot lower BIC.
                record.candidates.emplace_back(candidates[i].name, std::numeric_limits<double>::infinity());
                continue;
            } catch (const std::exception& e) {
                trace.push_back(record);
                throw StepwiseError("fit with '" + candidates[i].name + "' failed at step " +
                                        std::to_string(step) + ": " + e.what(),
                                    trace);
            }
            const double b = bic(fit);
            record.candidates.emplace_back(candidates[i].name, b);
            if (b < best_bic) {  // strict: earlier declared factor wins ties
                best_bic = b;
                best = i;
                best_fit = std::move(fit);
            }
        }
        if (!best) break;
        chosen[*best] = true;
        order.push_back(candidates[*best].name);
        current = std::move(*best_fit);
        record.added = candidates[*best].name;
        record.bic = best_bic;
        trace.push_back(std::move(record));
        if (std::all_of(chosen.begin(), chosen.end(), [](bool b) { return b; })) break;
    }

    StepwiseResult result;
    result.selected = std::move(order);
    result.design = spec_for(chosen);
    result.fit = std::move(current);
    result.trace = std::move(trace);
    return result;
}

// --- JSON ------------------------------------------------------------------------

namespace {

const std::vector<std::pair<FactorSource, std::string>>& source_names() {
    static const std::vector<std::pair<FactorSource, std::string>> names{
        {FactorSource::ServiceFrom, "service_from"}, {FactorSource::Sla, "sla"},
        {FactorSource::Foot, "foot"},                {FactorSource::Grip, "grip"},
        {FactorSource::RlaPath, "rla_path"},         {FactorSource::RlaDepth, "rla_depth"},
        {FactorSource::RlaZone, "rla_zone"}};
    return names;
}

}  // namespace

void to_json(nlohmann::json& j, const Factor& f) {
    std::string source;
    for (const auto& [s, name] : source_names())
        if (s == f.source) source = name;
    j = {{"name", f.name}, {"label", f.label}, {"source", source}, {"levels", f.levels}, {"reference", f.reference}};
}

void from_json(const nlohmann::json& j, Factor& f) {
    f.name = j.at("name").get<std::string>();
    f.label = j.value("label", f.name);
    const auto source = j.at("source").get<std::string>();
    bool found = false;
    for (const auto& [s, name] : source_names()) {
        if (name == source) {
            f.source = s;
            found = true;
        }
    }
    if (!found) throw DesignError("unknown factor source '" + source + "'");
    f.levels = j.at("levels").get<std::vector<std::string>>();
    f.reference = j.at("reference").get<std::string>();
}

void to_json(nlohmann::json& j, const DesignSpec& s) {
    j = {{"factors", s.factors},
         {"response",
          {{"kind", s.response.kind == ResponseKind::Intercept ? "intercept" : "rla_zone"},
           {"categories", s.response.categories},
           {"reference", s.response.categories.at(s.response.reference)}}}};
}

void from_json(const nlohmann::json& j, DesignSpec& s) {
    s.factors = j.at("factors").get<std::vector<Factor>>();
    const auto& r = j.at("response");
    const auto kind = r.at("kind").get<std::string>();
    if (kind == "intercept") s.response.kind = ResponseKind::Intercept;
    else if (kind == "rla_zone") s.response.kind = ResponseKind::RlaZone;
    else throw DesignError("unknown response kind '" + kind + "'");
    s.response.categories = r.at("categories").get<std::vector<std::string>>();
    const auto ref = r.at("reference").get<std::string>();
    auto it = std::find(s.response.categories.begin(), s.response.categories.end(), ref);
    if (it == s.response.categories.end()) throw DesignError("response reference '" + ref + "' not a category");
    s.response.reference = static_cast<std::size_t>(it - s.response.categories.begin());
    s.validate();
}

}  // namespace shuttle
