// beyond_rwa.hpp: eigenstates of the full (counter-rotating) model in the rotated frame
//   H_NRX = -omega0/2 sigma_x + omega a^dag a + g (a^dag + a) sigma_z
// expanded on the parity-adapted displaced basis
//   |Phi_p> = 1/sqrt(2) sum_n f_n [ |n>_alpha |e> + p (-1)^n |n>_-alpha |g> ],  p = +/-1,
// for which the coefficient equations read
//   omega (m - alpha^2) f_m + s_p (omega0 / 2) sum_n D_mn f_n = E f_m,
// with s_Even = -1 and s_Odd = +1.

#pragma once

#include "rabiberry/model.hpp"
#include "rabiberry/numerics.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <utility>
#include <variant>
#include <vector>

namespace rabiberry {

// Deliberately broken conventions, used only to check that validation catches them.
enum class SolverVariant {
    Standard,
    FlippedEvenSign,  // s_Even = +1
    PrintedEta,       // eta_kk = omega (k - alpha) -/+ omega0 D_kk / 2
};

// +1/-1 factor in front of omega0/2 D_mn for a parity block.
double block_coupling_sign(Parity parity, SolverVariant variant = SolverVariant::Standard);

// (M+1)x(M+1) coefficient matrix of the given parity. Throws ValidationError for M = 0.
SymmetricMatrix build_parity_block(const ModelParams& params, Parity parity, std::size_t max_index,
                                   SolverVariant variant = SolverVariant::Standard);

struct DisplacedEigenstate {
    Parity parity{Parity::Even};
    std::size_t index{0};
    double energy{0.0};
    std::vector<double> f;
    double berry_phase{0.0};
    std::size_t truncation{0};  // M
    bool converged{false};      // |f_M| <= kTailTolerance
};

inline constexpr double kTailTolerance = 1e-6;

enum class TailPolicy {
    Enforce,  // throw ConvergenceError when a returned state has |f_M| > kTailTolerance
    Report,   // only set DisplacedEigenstate::converged
};

// Lowest `count` eigenpairs of the parity block, ascending.
// Throws ValidationError when count == 0 or count > M.
std::vector<DisplacedEigenstate> solve_displaced(const ModelParams& params, Parity parity,
                                                 std::size_t max_index, std::size_t count,
                                                 TailPolicy policy = TailPolicy::Enforce,
                                                 SolverVariant variant = SolverVariant::Standard);

// 2 pi { alpha^2 + sum_n [ n f_n^2 - 2 alpha sqrt(n) f_n f_(n-1) ] }, unreduced. This is
// 2 pi <a^dag a> of the corresponding |Phi_p>. Throws ValidationError unless |f| = 1 within 1e-10.
double berry_phase_displaced(const std::vector<double>& f, double alpha);

struct FirstOrderSolution {
    Parity parity{Parity::Even};
    std::size_t k{0};
    Branch branch{Branch::Minus};  // Minus: lower root
    double energy{0.0};
    double mixing{0.0};  // f_k / f_(k+1); mu for even parity, nu for odd; may be +/-inf
    std::pair<double, double> f_pair{0.0, 1.0};
    double berry_phase{0.0};
    double eta_k{0.0};   // diagonal entries of the 2x2 block
    double eta_k1{0.0};
    double coupling{0.0};  // omega0 D_(k,k+1)
};

// Closed-form solution of the 2x2 block {k, k+1}: roots of
//   E^2 - (eta_k + eta_(k+1)) E + eta_k eta_(k+1) - omega0^2 D_(k,k+1)^2 / 4 = 0
// with eta_kk = omega (k - alpha^2) + s_p omega0 D_kk / 2.
FirstOrderSolution first_order_solution(const ModelParams& params, Parity parity, std::size_t k,
                                        Branch branch,
                                        SolverVariant variant = SolverVariant::Standard);

// Residual of the quadratic for a candidate energy.
double first_order_residual(const FirstOrderSolution& solution, double energy);

struct FirstOrder {};
struct Converged {
    std::size_t max_index{40};
};
using VibpMode = std::variant<FirstOrder, Converged>;

// Berry phase of the even-parity ground state.
double vibp_ground(const ModelParams& params, const VibpMode& mode);

// First-order Berry phases (branch Minus, branch Plus) of block k.
std::pair<double, double> excited_berry_phases(const ModelParams& params, Parity parity,
                                               std::size_t k);

// Amplitudes of |Phi_p> in the bare basis |k> (x) {|e>, |g>}, k = 0..n_cut, ordered 2 k + s
// (s = 0 for |e>), in the frame of H_NRX.
Eigen::VectorXd expand_in_fock(const DisplacedEigenstate& state, double alpha, std::size_t n_cut);

// Fock cutoff that holds every |n>_(+/-alpha), n <= M, to well below 1e-12 tail weight.
std::size_t expansion_cutoff(std::size_t max_index, double alpha);

inline constexpr std::size_t kTruncationStart = 8;
inline constexpr std::size_t kTruncationCap = 400;

// Smallest M on the schedule 8, 16, ..., 256, 400 whose lowest `count` energies and Berry phases
// change by less than tol against the next M on the schedule, with all tails converged at M.
// Phases of levels closer than sqrt(tol) omega are compared as cluster sums.
// Throws ValidationError for tol <= 0 or count == 0, ConvergenceError at the cap.
std::size_t converge_truncation(const ModelParams& params, Parity parity, std::size_t count,
                                double tol);

} // namespace rabiberry
