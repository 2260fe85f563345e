#include "shuttle/synthetic.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace shuttle {

double Rng::uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::size_t Rng::categorical(const double* probs, std::size_t count) {
    const double u = uniform();
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < count; ++i) {
        acc += probs[i];
        if (u < acc) return i;
    }
    return count - 1;
}

namespace {

template <std::size_t N>
void check_distribution(const std::array<double, N>& p, const std::string& what) {
    double sum = 0.0;
    for (double v : p) {
        if (!(v >= 0.0)) throw std::invalid_argument(what + ": negative or NaN probability");
        sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-6) {
        throw std::invalid_argument(what + ": probabilities sum to " + std::to_string(sum) + ", not 1");
    }
}

template <std::size_t N>
std::array<double, N> normalized(const std::array<double, N>& counts) {
    const double total = std::accumulate(counts.begin(), counts.end(), 0.0);
    std::array<double, N> out{};
    for (std::size_t i = 0; i < N; ++i) out[i] = counts[i] / total;
    return out;
}

std::array<double, kZoneCount> log_ratios(const std::array<double, kZoneCount>& counts, int reference) {
    std::array<double, kZoneCount> out{};
    for (std::size_t z = 0; z < kZoneCount; ++z)
        out[z] = std::log(counts[z] / counts[static_cast<std::size_t>(reference - 1)]);
    return out;
}

enum Column { kOutside = 0, kMiddle = 1, kFootLeft = 2, kForehand = 3 };

}  // namespace

void GeneratorConfig::validate() const {
    check_distribution(side, "side");
    check_distribution(sla[0], "sla[Left]");
    check_distribution(sla[1], "sla[Right]");
    check_distribution(foot, "foot");
    check_distribution(grip, "grip");
    if (!(not_applicable >= 0.0 && not_applicable <= 1.0)) {
        throw std::invalid_argument("not_applicable must be a probability");
    }
    for (const auto& z : zone) RlaZone(z.reference_zone);
    if (servers.empty() || receivers.empty()) throw std::invalid_argument("player name lists must be non-empty");
}

GeneratorConfig default_generator_config() {
    GeneratorConfig c;
    c.side = normalized(std::array<double, 2>{881, 895});
    c.sla[0] = normalized(std::array<double, 3>{571, 304, 6});
    c.sla[1] = normalized(std::array<double, 3>{406, 363, 126});
    c.foot = {0.4, 0.6};
    c.grip = {0.5, 0.5};

    auto& left = c.zone[0];
    left.intercepts = log_ratios({19, 213, 16, 83, 192, 134, 46, 100, 11}, 5);
    left.slopes[8][kOutside] = 1.9393;
    const std::array<double, kZoneCount> left_foot{-1.2913, -0.4150, -0.8088, 0, 0, -0.4998, 0.7541, -0.2347, 0.5874};
    const std::array<double, kZoneCount> left_grip{-2.1315, -0.3108, 0, -2.0967, 0, 0.8335, -1.1550, 0.8339, 0};
    for (std::size_t z = 0; z < kZoneCount; ++z) {
        left.slopes[z][kFootLeft] = left_foot[z];
        left.slopes[z][kForehand] = left_grip[z];
    }

    auto& right = c.zone[1];
    right.intercepts = log_ratios({93, 148, 20, 175, 197, 65, 32, 67, 30}, 5);
    const std::array<double, kZoneCount> right_outside{2.1379, 0, 0, 1.2577, 0, -0.7191, 0, 0.7007, 0};
    const std::array<double, kZoneCount> right_middle{0.3650, 0, 0, 0, 0, 0.7481, 0, 0, 0};
    const std::array<double, kZoneCount> right_foot{-0.3512, 0, 0, 0.1677, 0, 0, 0.7034, 0.2297, 0.9031};
    const std::array<double, kZoneCount> right_grip{-1.5421, -0.3116, 0.5340, -1.6042, 0, 0.9594, -0.8388, -0.3905, 0.3056};
    for (std::size_t z = 0; z < kZoneCount; ++z) {
        right.slopes[z] = {right_outside[z], right_middle[z], right_foot[z], right_grip[z]};
    }

    // Interception: path effects when serving from the left, zone effects from the right.
    c.intercept[0].base = -1.4;
    for (auto zone : all_zones()) {
        const auto path = path_of(zone);
        c.intercept[0].zone_effect[static_cast<std::size_t>(zone.index() - 1)] =
            path == PathGroup::CenterPath ? 0.4036 : path == PathGroup::RightPath ? -0.3162 : 0.0;
    }
    c.intercept[1].base = -2.0;
    c.intercept[1].zone_effect = {1.0218, 1.4526, 1.4236, 0, 0, 1.0669, -2.0422, -1.4981, -1.7545};

    c.not_applicable = 0.1;
    c.servers = {"M. Boe", "C. Mogensen", "M.S. Fikri", "B. Maulana", "K.S. Sukamuljo", "M.F. Gideon",
                 "M. Ahsan", "H. Setiawan", "Tan W.K.", "Yoo Y.S."};
    c.receivers = {"H. Endo", "Y. Watanabe", "Lee Y.D.", "Zhang N.", "Liu C.", "Fu H.F."};
    return c;
}

Dataset generate_synthetic(const GeneratorConfig& config, std::size_t n, std::uint64_t seed) {
    config.validate();
    Rng rng(seed);
    Dataset ds;
    ds.canonicalized = true;
    ds.rounds.reserve(n);

    std::array<double, kZoneCount> eta{};
    std::array<double, kZoneCount> prob{};
    for (std::size_t i = 0; i < n; ++i) {
        RoundRecord r;
        const auto side = rng.categorical(config.side.data(), 2);
        r.service_from = static_cast<ServiceSide>(side);
        r.sla = static_cast<SlaArea>(rng.categorical(config.sla[side].data(), 3));
        r.foot = static_cast<FootFirst>(rng.categorical(config.foot.data(), 2));
        r.grip = static_cast<GripType>(rng.categorical(config.grip.data(), 2));
        r.rdh = Handedness::Right;

        const std::array<double, 4> x{r.sla == SlaArea::Outside ? 1.0 : 0.0, r.sla == SlaArea::Middle ? 1.0 : 0.0,
                                      r.foot == FootFirst::Left ? 1.0 : 0.0,
                                      r.grip == GripType::Forehand ? 1.0 : 0.0};
        const auto& zm = config.zone[side];
        double top = -1e300;
        for (std::size_t z = 0; z < kZoneCount; ++z) {
            if (static_cast<int>(z) + 1 == zm.reference_zone) {
                eta[z] = 0.0;
            } else {
                eta[z] = zm.intercepts[z];
                for (std::size_t c = 0; c < 4; ++c) eta[z] += zm.slopes[z][c] * x[c];
            }
            top = std::max(top, eta[z]);
        }
        double sum = 0.0;
        for (std::size_t z = 0; z < kZoneCount; ++z) sum += (prob[z] = std::exp(eta[z] - top));
        for (auto& p : prob) p /= sum;
        r.rla = RlaZone(static_cast<int>(rng.categorical(prob.data(), kZoneCount)) + 1);

        if (rng.bernoulli(config.not_applicable)) {
            r.intercept = InterceptOutcome::NotApplicable;
        } else {
            const auto& ip = config.intercept[side];
            const double logit = ip.base + ip.zone_effect[static_cast<std::size_t>(r.rla.index() - 1)];
            r.intercept = rng.bernoulli(1.0 / (1.0 + std::exp(-logit))) ? InterceptOutcome::Yes : InterceptOutcome::No;
        }

        r.server = config.servers[static_cast<std::size_t>(rng.uniform() * static_cast<double>(config.servers.size()))];
        r.receiver =
            config.receivers[static_cast<std::size_t>(rng.uniform() * static_cast<double>(config.receivers.size()))];
        ds.rounds.push_back(std::move(r));
    }
    return ds;
}

}  // namespace shuttle
