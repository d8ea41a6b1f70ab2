#include "rabiberry/model.hpp"

#include "rabiberry/errors.hpp"

#include <cmath>
#include <type_traits>

namespace rabiberry {

ModelParams make_params(double omega, double omega0, double g) {
    if (!std::isfinite(omega) || !std::isfinite(omega0) || !std::isfinite(g)) {
        throw ValidationError("make_params: parameters must be finite");
    }
    if (omega <= 0.0) {
        throw ValidationError("make_params: omega must be positive, got " + std::to_string(omega));
    }
    if (g < 0.0) {
        throw ValidationError("make_params: g must be non-negative, got " + std::to_string(g));
    }
    return ModelParams{omega, omega0, g, omega0 - omega, g / omega};
}

Parity rwa_parity(const LevelLabel& label) {
    return std::visit(
        [](const auto& l) -> Parity {
            using T = std::decay_t<decltype(l)>;
            if constexpr (std::is_same_v<T, GroundRwa>) {
                return Parity::Even;
            } else if constexpr (std::is_same_v<T, DressedRwa>) {
                return l.n % 2 == 0 ? Parity::Odd : Parity::Even;
            } else {
                throw ValidationError("rwa_parity: beyond-RWA labels carry their own parity");
            }
        },
        label);
}

std::string to_string(Parity p) { return p == Parity::Even ? "even" : "odd"; }

std::string to_string(Branch b) { return b == Branch::Plus ? "+" : "-"; }

std::string to_string(const LevelLabel& label) {
    return std::visit(
        [](const auto& l) -> std::string {
            using T = std::decay_t<decltype(l)>;
            if constexpr (std::is_same_v<T, GroundRwa>) {
                return "GS";
            } else if constexpr (std::is_same_v<T, DressedRwa>) {
                return "n" + std::to_string(l.n) + to_string(l.branch);
            } else {
                return to_string(l.parity) + std::to_string(l.index);
            }
        },
        label);
}

} // namespace rabiberry
