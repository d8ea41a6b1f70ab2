// model.hpp: physical parameters and level/parity bookkeeping for the
// spin-1/2 x single boson mode system. Units: hbar = 1.
//
// Spin convention: sigma_z|e> = +|e>, sigma_z|g> = -|g>.

#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <variant>

namespace rabiberry {

struct ModelParams {
    double omega{1.0};   // boson mode frequency
    double omega0{1.0};  // two-level splitting
    double g{0.0};       // coupling
    double delta{0.0};   // omega0 - omega
    double alpha{0.0};   // g / omega
};

// Throws ValidationError unless omega > 0, g >= 0 and all inputs are finite.
ModelParams make_params(double omega, double omega0, double g);

enum class Parity { Even, Odd };

// +1 for Even, -1 for Odd.
constexpr int parity_sign(Parity p) noexcept { return p == Parity::Even ? 1 : -1; }

enum class Branch { Minus, Plus };

struct GroundRwa {
    auto operator<=>(const GroundRwa&) const = default;
};

struct DressedRwa {
    std::size_t n{0};
    Branch branch{Branch::Minus};
    auto operator<=>(const DressedRwa&) const = default;
};

struct BeyondRwa {
    Parity parity{Parity::Even};
    std::size_t index{0};  // ascending energy within the parity sector
    auto operator<=>(const BeyondRwa&) const = default;
};

using LevelLabel = std::variant<GroundRwa, DressedRwa, BeyondRwa>;

// Parity under P = -sigma_z exp(i pi a^dag a). Ground is even; dressed pair n has (-1)^(n+1).
// BeyondRwa labels carry their parity and are rejected with ValidationError.
Parity rwa_parity(const LevelLabel& label);

std::string to_string(Parity p);
std::string to_string(Branch b);
std::string to_string(const LevelLabel& label);

} // namespace rabiberry
