// rwa.hpp: closed-form eigensystem and Berry phases of the rotating-wave
// (Jaynes-Cummings) Hamiltonian
//   H_R = omega0/2 sigma_z + omega a^dag a + g (a^dag sigma_- + a sigma_+).
//
// Dressed pair n lives on {|n,e>, |n+1,g>}:
//   |n,+> = cos(theta_n/2)|n,e> + sin(theta_n/2)|n+1,g>
//   |n,-> = sin(theta_n/2)|n,e> - cos(theta_n/2)|n+1,g>
// with tan(theta_n) = 2 g sqrt(n+1) / delta. The decoupled |0,g> is the true ground state.
//
// Berry phases are for the loop exp(-i phi a^dag a), phi: 0 -> 2 pi, which gives
// 2 pi <a^dag a>. They are reported unreduced.

#pragma once

#include "rabiberry/model.hpp"

#include <cstddef>
#include <vector>

namespace rabiberry {

struct RwaEigenstate {
    LevelLabel label{GroundRwa{}};
    double energy{0.0};
    double theta{0.0};  // mixing angle; 0 for the ground state
    double c{0.0};      // amplitude on |n,e>
    double d{1.0};      // amplitude on |n+1,g> (|0,g> for the ground state)
    double berry_phase{0.0};
    double mean_boson{0.0};
};

// Mixing angle theta_n = atan2(2 g sqrt(n+1), delta).
double rwa_mixing_angle(const ModelParams& params, std::size_t n);

// Single eigenstate for a GroundRwa or DressedRwa label.
RwaEigenstate rwa_eigenstate(const ModelParams& params, const LevelLabel& label);

// Ground plus dressed pairs n = 0..n_max, ascending by energy, ties broken by label.
std::vector<RwaEigenstate> rwa_spectrum(const ModelParams& params, std::size_t n_max);

// 0 for the ground state, pi (1 -/+ cos theta_n) + 2 pi n for dressed (n, +/-).
double rwa_berry_phase(const ModelParams& params, const LevelLabel& label);

// n c^2 + (n+1) d^2; 0 for the ground state.
double rwa_mean_boson(const RwaEigenstate& state);

// Reduces a phase into [0, 2 pi).
double reduce_phase(double phase) noexcept;

} // namespace rabiberry
