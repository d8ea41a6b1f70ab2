#include "rabiberry/beyond_rwa.hpp"

#include "rabiberry/displaced_basis.hpp"
#include "rabiberry/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace rabiberry {
namespace {

std::string describe(const ModelParams& p) {
    return "omega=" + std::to_string(p.omega) + ", omega0=" + std::to_string(p.omega0) +
           ", g=" + std::to_string(p.g);
}

} // namespace

double block_coupling_sign(Parity parity, SolverVariant variant) {
    if (parity == Parity::Odd) return 1.0;
    return variant == SolverVariant::FlippedEvenSign ? 1.0 : -1.0;
}

SymmetricMatrix build_parity_block(const ModelParams& params, Parity parity, std::size_t max_index,
                                   SolverVariant variant) {
    if (max_index == 0) throw ValidationError("build_parity_block: M must be >= 1");
    const DMatrix d = dmn_matrix(params.alpha, max_index);
    const double coupling = block_coupling_sign(parity, variant) * 0.5 * params.omega0;
    const double alpha2 = params.alpha * params.alpha;

    SymmetricMatrix h(max_index + 1);
    for (std::size_t m = 0; m <= max_index; ++m) {
        for (std::size_t n = 0; n <= m; ++n) {
            h.set(m, n, coupling * d(m, n));
        }
        h.add(m, m, params.omega * (static_cast<double>(m) - alpha2));
    }
    return h;
}

double berry_phase_displaced(const std::vector<double>& f, double alpha) {
    double norm2 = 0.0;
    for (double v : f) norm2 += v * v;
    if (std::abs(std::sqrt(norm2) - 1.0) > 1e-10) {
        throw ValidationError("berry_phase_displaced: coefficient vector is not normalized");
    }
    double sum = alpha * alpha;
    for (std::size_t n = 1; n < f.size(); ++n) {
        const double nd = static_cast<double>(n);
        sum += nd * f[n] * f[n] - 2.0 * alpha * std::sqrt(nd) * f[n] * f[n - 1];
    }
    return 2.0 * std::numbers::pi * sum;
}

std::vector<DisplacedEigenstate> solve_displaced(const ModelParams& params, Parity parity,
                                                 std::size_t max_index, std::size_t count,
                                                 TailPolicy policy, SolverVariant variant) {
    if (count == 0) throw ValidationError("solve_displaced: count must be positive");
    if (count > max_index) {
        throw ValidationError("solve_displaced: count " + std::to_string(count) +
                              " exceeds truncation M=" + std::to_string(max_index));
    }
    const EigenDecomposition eig = eigh(build_parity_block(params, parity, max_index, variant));

    std::vector<DisplacedEigenstate> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        DisplacedEigenstate s;
        s.parity = parity;
        s.index = i;
        s.energy = eig.eigenvalues[static_cast<Eigen::Index>(i)];
        const auto col = eig.eigenvectors.col(static_cast<Eigen::Index>(i));
        s.f.assign(col.data(), col.data() + col.size());
        s.berry_phase = berry_phase_displaced(s.f, params.alpha);
        s.truncation = max_index;
        s.converged = std::abs(s.f.back()) <= kTailTolerance;
        if (policy == TailPolicy::Enforce && !s.converged) {
            throw ConvergenceError("solve_displaced: |f_M| = " + std::to_string(std::abs(s.f.back())) +
                                   " for " + to_string(parity) + " level " + std::to_string(i) +
                                   " at M=" + std::to_string(max_index) + " (" + describe(params) + ")");
        }
        out.push_back(std::move(s));
    }
    return out;
}

FirstOrderSolution first_order_solution(const ModelParams& params, Parity parity, std::size_t k,
                                        Branch branch, SolverVariant variant) {
    const double s = block_coupling_sign(parity, variant);
    const double shift =
        variant == SolverVariant::PrintedEta ? params.alpha : params.alpha * params.alpha;
    const double kd = static_cast<double>(k);

    FirstOrderSolution sol;
    sol.parity = parity;
    sol.k = k;
    sol.branch = branch;
    sol.eta_k = params.omega * (kd - shift) + s * 0.5 * params.omega0 * dmn(params.alpha, k, k);
    sol.eta_k1 =
        params.omega * (kd + 1.0 - shift) + s * 0.5 * params.omega0 * dmn(params.alpha, k + 1, k + 1);
    sol.coupling = params.omega0 * dmn(params.alpha, k, k + 1);

    const double a = sol.eta_k;
    const double c = sol.eta_k1;
    const double b = s * 0.5 * sol.coupling;
    const double radius = std::hypot(0.5 * (a - c), b);
    sol.energy = 0.5 * (a + c) + (branch == Branch::Plus ? radius : -radius);

    double x = 0.0;
    double y = 0.0;
    if (std::abs(sol.coupling) < 1e-14 * std::abs(a - c) || (sol.coupling == 0.0)) {
        // Decoupled pair: each root sits on one diagonal entry.
        const bool k_is_lower = a <= c;
        const bool want_lower = branch == Branch::Minus;
        if (k_is_lower == want_lower) {
            x = 1.0;
        } else {
            y = 1.0;
        }
    } else {
        // Two equivalent null vectors of (H - E); keep the better conditioned one.
        const double xa = -b, ya = a - sol.energy;
        const double xb = c - sol.energy, yb = -b;
        if (std::hypot(xa, ya) >= std::hypot(xb, yb)) {
            x = xa;
            y = ya;
        } else {
            x = xb;
            y = yb;
        }
        const double norm = std::hypot(x, y);
        x /= norm;
        y /= norm;
        if (y < 0.0 || (y == 0.0 && x < 0.0)) {
            x = -x;
            y = -y;
        }
    }
    sol.f_pair = {x, y};
    sol.mixing = y != 0.0 ? x / y : std::copysign(std::numeric_limits<double>::infinity(), x);

    std::vector<double> f(k + 2, 0.0);
    f[k] = x;
    f[k + 1] = y;
    sol.berry_phase = berry_phase_displaced(f, params.alpha);
    return sol;
}

double first_order_residual(const FirstOrderSolution& solution, double energy) {
    const double b2 = 0.25 * solution.coupling * solution.coupling;
    return energy * energy - (solution.eta_k + solution.eta_k1) * energy +
           solution.eta_k * solution.eta_k1 - b2;
}

double vibp_ground(const ModelParams& params, const VibpMode& mode) {
    if (std::holds_alternative<FirstOrder>(mode)) {
        return first_order_solution(params, Parity::Even, 0, Branch::Minus).berry_phase;
    }
    const auto& conv = std::get<Converged>(mode);
    return solve_displaced(params, Parity::Even, conv.max_index, 1).front().berry_phase;
}

std::pair<double, double> excited_berry_phases(const ModelParams& params, Parity parity,
                                               std::size_t k) {
    return {first_order_solution(params, parity, k, Branch::Minus).berry_phase,
            first_order_solution(params, parity, k, Branch::Plus).berry_phase};
}

Eigen::VectorXd expand_in_fock(const DisplacedEigenstate& state, double alpha, std::size_t n_cut) {
    const auto dim = static_cast<Eigen::Index>(2 * (n_cut + 1));
    Eigen::VectorXd amps = Eigen::VectorXd::Zero(dim);
    const double r = std::numbers::sqrt2 / 2.0;
    const double p = parity_sign(state.parity);
    for (std::size_t n = 0; n < state.f.size(); ++n) {
        if (state.f[n] == 0.0) continue;
        const auto plus = displaced_fock_coeffs(alpha, n, n_cut).coeffs;
        const auto minus = displaced_fock_coeffs(-alpha, n, n_cut).coeffs;
        const double we = r * state.f[n];
        const double wg = r * p * (n % 2 == 0 ? 1.0 : -1.0) * state.f[n];
        for (std::size_t k = 0; k <= n_cut; ++k) {
            amps[static_cast<Eigen::Index>(2 * k)] += we * plus[k];
            amps[static_cast<Eigen::Index>(2 * k + 1)] += wg * minus[k];
        }
    }
    return amps;
}

std::size_t expansion_cutoff(std::size_t max_index, double alpha) {
    const double a = std::abs(alpha);
    const double spread = 4.0 * a * std::sqrt(static_cast<double>(max_index) + 1.0) + 10.0 * a * a;
    return max_index + 40 + static_cast<std::size_t>(std::ceil(spread));
}

std::size_t converge_truncation(const ModelParams& params, Parity parity, std::size_t count,
                                double tol) {
    if (!(tol > 0.0)) throw ValidationError("converge_truncation: tol must be positive");
    if (count == 0) throw ValidationError("converge_truncation: count must be positive");

    constexpr std::array<std::size_t, 7> schedule{8, 16, 32, 64, 128, 256, kTruncationCap};
    // One level beyond `count` is solved so that a near-degenerate partner of the last
    // requested level is never cut off.
    std::size_t i = 0;
    while (i < schedule.size() && schedule[i] <= count) ++i;
    if (i + 1 >= schedule.size()) {
        throw ValidationError("converge_truncation: count exceeds the truncation cap");
    }

    // A single Berry phase inside a near-degenerate pair is ill-conditioned (eigenvector
    // noise ~ eps |H| / gap), so phases are compared as sums over such clusters.
    const double cluster_gap = std::sqrt(tol) * params.omega;

    auto solve = [&](std::size_t m) {
        return solve_displaced(params, parity, m, count + 1, TailPolicy::Report);
    };
    auto stable = [&](const std::vector<DisplacedEigenstate>& a,
                      const std::vector<DisplacedEigenstate>& b) {
        for (std::size_t j = 0; j < count; ++j) {
            if (!a[j].converged || !(std::abs(a[j].energy - b[j].energy) < tol)) return false;
        }
        std::size_t j = 0;
        while (j < count) {
            std::size_t k = j + 1;
            while (k < count + 1 && (a[k].energy - a[k - 1].energy < cluster_gap ||
                                     b[k].energy - b[k - 1].energy < cluster_gap)) {
                ++k;
            }
            double sa = 0.0;
            double sb = 0.0;
            for (std::size_t t = j; t < k; ++t) {
                sa += a[t].berry_phase;
                sb += b[t].berry_phase;
            }
            if (!(std::abs(sa - sb) < tol * static_cast<double>(k - j))) return false;
            j = k;
        }
        return true;
    };
    auto current = solve(schedule[i]);
    for (; i + 1 < schedule.size(); ++i) {
        auto next = solve(schedule[i + 1]);
        if (stable(current, next)) return schedule[i];
        current = std::move(next);
    }
    throw ConvergenceError("converge_truncation: no convergence up to M=" +
                           std::to_string(kTruncationCap) + " (" + describe(params) + ", " +
                           to_string(parity) + ", count=" + std::to_string(count) + ")");
}

} // namespace rabiberry
