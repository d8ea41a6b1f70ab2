// fock_oracle.hpp: brute-force reference in the truncated bare basis |n> (x) {|e>, |g>},
// n = 0..n_cut, flattened as i = 2 n + s with s = 0 for |e> and s = 1 for |g>.
//
// Models:
//   Rwa   H_R   = omega0/2 sigma_z + omega a^dag a + g (a^dag sigma_- + a sigma_+)
//   Full  H_NR  = omega0/2 sigma_z + omega a^dag a + g (a^dag + a) sigma_x
//   FullX H_NRX = -omega0/2 sigma_x + omega a^dag a + g (a^dag + a) sigma_z
// H_NRX = V^T H_NR V with V = exp(-i pi sigma_y / 4), which is real.
// Parity: P = -sigma_z exp(i pi a^dag a) for Rwa/Full, Pi = sigma_x exp(i pi a^dag a) for FullX.

#pragma once

#include "rabiberry/model.hpp"
#include "rabiberry/numerics.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <vector>

namespace rabiberry {

enum class Model { Rwa, Full, FullX };

inline constexpr std::size_t basis_index(std::size_t n, std::size_t s) noexcept { return 2 * n + s; }

// Throws ValidationError for n_cut < 2.
SymmetricMatrix build_hamiltonian(const ModelParams& params, Model model, std::size_t n_cut);

// P for Rwa/Full, Pi for FullX.
SymmetricMatrix parity_operator(Model model, std::size_t n_cut);

// V = exp(-i pi sigma_y / 4) acting on the spin factor (real orthogonal).
Eigen::MatrixXd spin_rotation(std::size_t n_cut);

// max |(A B - B A)_ij|
double commutator_norm(const SymmetricMatrix& a, const SymmetricMatrix& b);

struct FockState {
    std::size_t n_cut{0};
    Eigen::VectorXd amplitudes;
    double energy{0.0};
    Parity parity{Parity::Even};
    double parity_expectation{1.0};
    double mean_boson{0.0};
    double tail_weight{0.0};  // weight on n in {n_cut-2, n_cut-1, n_cut}
    bool converged{false};    // tail_weight <= 1e-8
};

enum class ParityLabeling {
    Expectation,      // full diagonalization, label by <parity>; falls back to blocks on mixing
    BlockProjection,  // diagonalize each parity sector separately
};

// Lowest `count` eigenstates with parity labels. Throws ParityError if [H, parity] is not
// zero to 1e-12 or a state cannot be classified.
std::vector<FockState> oracle_spectrum(const ModelParams& params, Model model, std::size_t n_cut,
                                       std::size_t count,
                                       ParityLabeling labeling = ParityLabeling::Expectation);

// Boson-number populations p_n = |amp(n,e)|^2 + |amp(n,g)|^2.
std::vector<double> boson_populations(const Eigen::VectorXd& amplitudes);

// 2 pi sum_n n p_n.
double berry_phase_photon(const FockState& state);

// steps * arg(sum_n p_n exp(2 pi i n / steps)). Throws AliasingError unless
// steps > 4 (1 + <n>).
double berry_phase_wilson(const FockState& state, std::size_t steps);
double berry_phase_wilson(const std::vector<double>& populations, std::size_t steps);

} // namespace rabiberry
