#include "rabiberry/rwa.hpp"

#include "rabiberry/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace rabiberry {
namespace {

const DressedRwa& require_dressed_or_ground(const LevelLabel& label, const char* where) {
    static const DressedRwa none{};
    if (std::holds_alternative<BeyondRwa>(label)) {
        throw ValidationError(std::string(where) + ": beyond-RWA labels are not RWA levels");
    }
    if (const auto* d = std::get_if<DressedRwa>(&label)) return *d;
    return none;
}

} // namespace

double rwa_mixing_angle(const ModelParams& params, std::size_t n) {
    return std::atan2(2.0 * params.g * std::sqrt(static_cast<double>(n) + 1.0), params.delta);
}

RwaEigenstate rwa_eigenstate(const ModelParams& params, const LevelLabel& label) {
    const DressedRwa& dressed = require_dressed_or_ground(label, "rwa_eigenstate");
    RwaEigenstate s;
    s.label = label;
    if (std::holds_alternative<GroundRwa>(label)) {
        s.energy = -0.5 * params.omega0;
        return s;  // |0,g>: c = 0, d = 1, no bosons
    }

    const double n = static_cast<double>(dressed.n);
    const double root = std::hypot(params.delta, 2.0 * params.g * std::sqrt(n + 1.0));
    s.theta = rwa_mixing_angle(params, dressed.n);
    const double ch = std::cos(0.5 * s.theta);
    const double sh = std::sin(0.5 * s.theta);
    if (dressed.branch == Branch::Plus) {
        s.energy = (n + 0.5) * params.omega + 0.5 * root;
        s.c = ch;
        s.d = sh;
    } else {
        s.energy = (n + 0.5) * params.omega - 0.5 * root;
        s.c = sh;
        s.d = -ch;
    }
    s.mean_boson = rwa_mean_boson(s);
    s.berry_phase = rwa_berry_phase(params, label);
    return s;
}

std::vector<RwaEigenstate> rwa_spectrum(const ModelParams& params, std::size_t n_max) {
    std::vector<RwaEigenstate> out;
    out.reserve(2 * n_max + 3);
    out.push_back(rwa_eigenstate(params, GroundRwa{}));
    for (std::size_t n = 0; n <= n_max; ++n) {
        out.push_back(rwa_eigenstate(params, DressedRwa{n, Branch::Minus}));
        out.push_back(rwa_eigenstate(params, DressedRwa{n, Branch::Plus}));
    }
    std::stable_sort(out.begin(), out.end(), [](const RwaEigenstate& a, const RwaEigenstate& b) {
        if (a.energy != b.energy) return a.energy < b.energy;
        return a.label < b.label;
    });
    return out;
}

double rwa_berry_phase(const ModelParams& params, const LevelLabel& label) {
    const DressedRwa& dressed = require_dressed_or_ground(label, "rwa_berry_phase");
    if (std::holds_alternative<GroundRwa>(label)) return 0.0;
    const double cos_theta = std::cos(rwa_mixing_angle(params, dressed.n));
    const double sign = dressed.branch == Branch::Plus ? -1.0 : 1.0;
    return std::numbers::pi * (1.0 + sign * cos_theta) +
           2.0 * std::numbers::pi * static_cast<double>(dressed.n);
}

double rwa_mean_boson(const RwaEigenstate& state) {
    const auto* dressed = std::get_if<DressedRwa>(&state.label);
    if (dressed == nullptr) return 0.0;
    const double n = static_cast<double>(dressed->n);
    return n * state.c * state.c + (n + 1.0) * state.d * state.d;
}

double reduce_phase(double phase) noexcept {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double r = std::fmod(phase, two_pi);
    if (r < 0.0) r += two_pi;
    if (r >= two_pi) r = 0.0;
    return r;
}

} // namespace rabiberry
