#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "shuttle/rally_data.hpp"

namespace shuttle {

/// Generalized logit model for the landing zone on one serving side.
/// Columns follow the RLA design: SLA=Outside, SLA=Middle, Foot=Left, Grip=Forehand.
struct ZoneModelParams {
    std::array<double, kZoneCount> intercepts{};                 // zone 5 entry is ignored
    std::array<std::array<double, 4>, kZoneCount> slopes{};      // [zone-1][column]
    int reference_zone = 5;
};

/// logit P(intercept) = base + zone_effect[zone-1].
struct InterceptParams {
    double base = 0.0;
    std::array<double, kZoneCount> zone_effect{};
};

struct GeneratorConfig {
    std::array<double, 2> side{0.5, 0.5};                 // Left, Right
    std::array<std::array<double, 3>, 2> sla{};           // [side][Inside, Middle, Outside]
    std::array<double, 2> foot{0.5, 0.5};                 // Left, Right
    std::array<double, 2> grip{0.5, 0.5};                 // Forehand, Backhand
    std::array<ZoneModelParams, 2> zone;                  // [side]
    std::array<InterceptParams, 2> intercept;             // [side]
    double not_applicable = 0.1;                          // P(Intercept = NA)
    std::vector<std::string> servers;
    std::vector<std::string> receivers;

    /// Throws std::invalid_argument when a distribution is off by more than 1e-6.
    void validate() const;
};

/// Reference defaults: serving-side and SLA marginals from observed SLA
/// counts, zone intercepts from observed per-side RLA counts, slopes and
/// interception effects from reference model estimates (weak effects set to 0).
GeneratorConfig default_generator_config();

/// Deterministic for a fixed (config, n, seed). Produced rounds are canonical
/// (right-handed receivers) and the dataset is flagged canonicalized.
Dataset generate_synthetic(const GeneratorConfig& config, std::size_t n, std::uint64_t seed);

/// Thin wrapper over std::mt19937_64 with its own double and categorical
/// draws, so output does not depend on the standard library's distribution
/// implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}
    double uniform();  // [0, 1)
    std::size_t categorical(const double* probs, std::size_t count);
    bool bernoulli(double p) { return uniform() < p; }

private:
    std::mt19937_64 engine_;
};

}  // namespace shuttle
