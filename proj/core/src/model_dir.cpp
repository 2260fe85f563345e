#include "shuttle/model_dir.hpp"

#include <filesystem>
#include <stdexcept>

#include "shuttle/model_io.hpp"

namespace fs = std::filesystem;

namespace shuttle {

namespace {

std::string in_dir(const std::string& dir, const char* file) { return (fs::path(dir) / file).string(); }

const char* side_name(ServiceSide s) { return s == ServiceSide::Left ? "left" : "right"; }

}  // namespace

void save_rla_models(const RlaModelPair& pair, const std::string& dir) {
    fs::create_directories(dir);
    for (auto side : {ServiceSide::Left, ServiceSide::Right}) {
        const auto& slot = pair.side(side);
        if (!slot.fit) continue;
        save_model({std::string("rla-") + side_name(side), pair.design, *slot.fit},
                   in_dir(dir, side == ServiceSide::Left ? kRlaLeftFile : kRlaRightFile));
    }
}

void save_intercept_models(const InterceptModelPair& pair, const std::string& dir) {
    fs::create_directories(dir);
    for (auto side : {ServiceSide::Left, ServiceSide::Right}) {
        const auto& slot = pair.side(side);
        if (!slot.fit) continue;
        save_model({std::string("intercept-") + side_name(side), slot.design, *slot.fit},
                   in_dir(dir, side == ServiceSide::Left ? kInterceptLeftFile : kInterceptRightFile));
    }
}

RlaModelPair load_rla_models(const std::string& dir) {
    RlaModelPair pair;
    pair.design = rla_design();
    bool have_design = false;
    for (auto side : {ServiceSide::Left, ServiceSide::Right}) {
        auto& slot = side == ServiceSide::Left ? pair.left : pair.right;
        const auto path = in_dir(dir, side == ServiceSide::Left ? kRlaLeftFile : kRlaRightFile);
        if (!fs::exists(path)) {
            slot.absence = "no model file " + path;
            continue;
        }
        auto model = load_model(path);
        auto* fit = std::get_if<MultinomialFit>(&model.fit);
        if (!fit) throw std::runtime_error(path + ": expected a multinomial zone model");
        if (fit->categories.size() != static_cast<std::size_t>(kZoneCount)) {
            throw std::runtime_error(path + ": expected 9 zone categories");
        }
        if (have_design && model.design.column_labels() != pair.design.column_labels()) {
            throw std::runtime_error(path + ": design differs from the other side's model");
        }
        pair.design = std::move(model.design);
        have_design = true;
        slot.fit = std::move(*fit);
    }
    return pair;
}

InterceptModelPair load_intercept_models(const std::string& dir) {
    InterceptModelPair pair;
    for (auto side : {ServiceSide::Left, ServiceSide::Right}) {
        auto& slot = side == ServiceSide::Left ? pair.left : pair.right;
        const auto path = in_dir(dir, side == ServiceSide::Left ? kInterceptLeftFile : kInterceptRightFile);
        if (!fs::exists(path)) {
            slot.absence = "no model file " + path;
            continue;
        }
        auto model = load_model(path);
        auto* fit = std::get_if<BinaryFit>(&model.fit);
        if (!fit) throw std::runtime_error(path + ": expected a binary interception model");
        slot.design = std::move(model.design);
        for (const auto& f : slot.design.factors) slot.selected.push_back(f.name);
        slot.algorithm = "loaded from " + path;
        slot.fit = std::move(*fit);
    }
    return pair;
}

bool has_rla_models(const std::string& dir) {
    return fs::exists(in_dir(dir, kRlaLeftFile)) || fs::exists(in_dir(dir, kRlaRightFile));
}

}  // namespace shuttle
