#include "rabiberry/fock_oracle.hpp"

#include "rabiberry/errors.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

namespace rabiberry {
namespace {

constexpr std::size_t kE = 0;
constexpr std::size_t kG = 1;
constexpr double kCommutatorTolerance = 1e-12;
constexpr double kParityTolerance = 1e-8;

double boson_parity(std::size_t n) { return n % 2 == 0 ? 1.0 : -1.0; }

// Orthonormal basis (columns) of the +1 or -1 eigenspace of the parity operator.
Eigen::MatrixXd sector_basis(Model model, std::size_t n_cut, Parity parity) {
    const auto dim = static_cast<Eigen::Index>(2 * (n_cut + 1));
    const double want = parity_sign(parity);
    Eigen::MatrixXd basis = Eigen::MatrixXd::Zero(dim, static_cast<Eigen::Index>(n_cut + 1));
    for (std::size_t n = 0; n <= n_cut; ++n) {
        const auto col = static_cast<Eigen::Index>(n);
        const auto ie = static_cast<Eigen::Index>(basis_index(n, kE));
        const auto ig = static_cast<Eigen::Index>(basis_index(n, kG));
        if (model == Model::FullX) {
            // Pi (|n,e> + t|n,g>) = t (-1)^n (...), so t = want (-1)^n.
            basis(ie, col) = std::numbers::sqrt2 / 2.0;
            basis(ig, col) = want * boson_parity(n) * std::numbers::sqrt2 / 2.0;
        } else {
            // P|n,e> = -(-1)^n |n,e>, P|n,g> = (-1)^n |n,g>.
            const bool e_matches = -boson_parity(n) == want;
            basis(e_matches ? ie : ig, col) = 1.0;
        }
    }
    return basis;
}

FockState make_state(const Eigen::VectorXd& v, double energy, const Eigen::MatrixXd& parity_op,
                     std::size_t n_cut) {
    FockState s;
    s.n_cut = n_cut;
    s.amplitudes = v;
    s.energy = energy;
    s.parity_expectation = v.dot(parity_op * v);
    s.parity = s.parity_expectation >= 0.0 ? Parity::Even : Parity::Odd;
    const auto pops = boson_populations(v);
    for (std::size_t n = 0; n < pops.size(); ++n) s.mean_boson += static_cast<double>(n) * pops[n];
    for (std::size_t n = n_cut >= 2 ? n_cut - 2 : 0; n <= n_cut; ++n) s.tail_weight += pops[n];
    s.converged = s.tail_weight <= 1e-8;
    return s;
}

bool well_defined(const FockState& s) {
    return std::abs(s.parity_expectation) >= 1.0 - kParityTolerance;
}

} // namespace

SymmetricMatrix build_hamiltonian(const ModelParams& params, Model model, std::size_t n_cut) {
    if (n_cut < 2) throw ValidationError("build_hamiltonian: n_cut must be >= 2");
    SymmetricMatrix h(2 * (n_cut + 1));
    const double w = params.omega;
    const double half = 0.5 * params.omega0;
    for (std::size_t n = 0; n <= n_cut; ++n) {
        const double nd = static_cast<double>(n);
        const std::size_t e = basis_index(n, kE);
        const std::size_t gs = basis_index(n, kG);
        const double hop = n < n_cut ? params.g * std::sqrt(nd + 1.0) : 0.0;
        switch (model) {
        case Model::Rwa:
        case Model::Full:
            h.set(e, e, w * nd + half);
            h.set(gs, gs, w * nd - half);
            if (n < n_cut) {
                h.set(e, basis_index(n + 1, kG), hop);  // a^dag sigma_-
                if (model == Model::Full) h.set(gs, basis_index(n + 1, kE), hop);  // a^dag sigma_+
            }
            break;
        case Model::FullX:
            h.set(e, e, w * nd);
            h.set(gs, gs, w * nd);
            h.set(e, gs, -half);
            if (n < n_cut) {
                h.set(e, basis_index(n + 1, kE), hop);
                h.set(gs, basis_index(n + 1, kG), -hop);
            }
            break;
        }
    }
    return h;
}

SymmetricMatrix parity_operator(Model model, std::size_t n_cut) {
    SymmetricMatrix p(2 * (n_cut + 1));
    for (std::size_t n = 0; n <= n_cut; ++n) {
        const double b = boson_parity(n);
        if (model == Model::FullX) {
            p.set(basis_index(n, kE), basis_index(n, kG), b);
        } else {
            p.set(basis_index(n, kE), basis_index(n, kE), -b);
            p.set(basis_index(n, kG), basis_index(n, kG), b);
        }
    }
    return p;
}

Eigen::MatrixXd spin_rotation(std::size_t n_cut) {
    const auto dim = static_cast<Eigen::Index>(2 * (n_cut + 1));
    const double r = std::numbers::sqrt2 / 2.0;
    Eigen::MatrixXd v = Eigen::MatrixXd::Zero(dim, dim);
    for (std::size_t n = 0; n <= n_cut; ++n) {
        const auto e = static_cast<Eigen::Index>(basis_index(n, kE));
        const auto g = static_cast<Eigen::Index>(basis_index(n, kG));
        v(e, e) = r;
        v(e, g) = -r;
        v(g, e) = r;
        v(g, g) = r;
    }
    return v;
}

double commutator_norm(const SymmetricMatrix& a, const SymmetricMatrix& b) {
    const Eigen::MatrixXd da = a.to_dense();
    const Eigen::MatrixXd db = b.to_dense();
    return (da * db - db * da).cwiseAbs().maxCoeff();
}

std::vector<FockState> oracle_spectrum(const ModelParams& params, Model model, std::size_t n_cut,
                                       std::size_t count, ParityLabeling labeling) {
    const SymmetricMatrix h = build_hamiltonian(params, model, n_cut);
    const SymmetricMatrix parity_op = parity_operator(model, n_cut);
    if (count == 0 || count > h.dimension()) {
        throw ValidationError("oracle_spectrum: count must be in [1, " +
                              std::to_string(h.dimension()) + "]");
    }
    const double comm = commutator_norm(h, parity_op);
    if (comm > kCommutatorTolerance) {
        throw ParityError("oracle_spectrum: Hamiltonian does not commute with parity (" +
                          std::to_string(comm) + ")");
    }

    const Eigen::MatrixXd parity_dense = parity_op.to_dense();
    std::vector<FockState> out;
    if (labeling == ParityLabeling::Expectation) {
        const EigenDecomposition eig = eigh(h);
        bool mixed = false;
        for (std::size_t i = 0; i < count; ++i) {
            const auto col = static_cast<Eigen::Index>(i);
            out.push_back(make_state(eig.eigenvectors.col(col), eig.eigenvalues[col], parity_dense, n_cut));
            mixed = mixed || !well_defined(out.back());
        }
        if (!mixed) return out;
        out.clear();
    }

    // Diagonalize each parity sector separately and merge.
    const Eigen::MatrixXd dense = h.to_dense();
    for (Parity p : {Parity::Even, Parity::Odd}) {
        const Eigen::MatrixXd basis = sector_basis(model, n_cut, p);
        const EigenDecomposition eig =
            eigh(SymmetricMatrix::from_lower(basis.transpose() * dense * basis));
        const auto take = std::min<Eigen::Index>(static_cast<Eigen::Index>(count), eig.eigenvalues.size());
        for (Eigen::Index i = 0; i < take; ++i) {
            Eigen::VectorXd v = basis * eig.eigenvectors.col(i);
            canonicalize_sign(v);
            out.push_back(make_state(v, eig.eigenvalues[i], parity_dense, n_cut));
        }
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const FockState& a, const FockState& b) { return a.energy < b.energy; });
    out.resize(count);
    for (const FockState& s : out) {
        if (!well_defined(s)) {
            throw ParityError("oracle_spectrum: state at E=" + std::to_string(s.energy) +
                              " has <parity>=" + std::to_string(s.parity_expectation));
        }
    }
    return out;
}

std::vector<double> boson_populations(const Eigen::VectorXd& amplitudes) {
    const auto n_levels = static_cast<std::size_t>(amplitudes.size() / 2);
    std::vector<double> p(n_levels);
    for (std::size_t n = 0; n < n_levels; ++n) {
        const double e = amplitudes[static_cast<Eigen::Index>(basis_index(n, kE))];
        const double g = amplitudes[static_cast<Eigen::Index>(basis_index(n, kG))];
        p[n] = e * e + g * g;
    }
    return p;
}

double berry_phase_photon(const FockState& state) {
    const auto pops = boson_populations(state.amplitudes);
    double mean = 0.0;
    for (std::size_t n = 0; n < pops.size(); ++n) mean += static_cast<double>(n) * pops[n];
    return 2.0 * std::numbers::pi * mean;
}

double berry_phase_wilson(const std::vector<double>& populations, std::size_t steps) {
    double total = 0.0;
    double mean = 0.0;
    for (std::size_t n = 0; n < populations.size(); ++n) {
        total += populations[n];
        mean += static_cast<double>(n) * populations[n];
    }
    if (total > 0.0) mean /= total;
    if (!(static_cast<double>(steps) > 4.0 * (1.0 + mean))) {
        throw AliasingError("berry_phase_wilson: " + std::to_string(steps) +
                            " steps cannot resolve <n>=" + std::to_string(mean));
    }
    const double step = 2.0 * std::numbers::pi / static_cast<double>(steps);
    std::complex<double> z{0.0, 0.0};
    for (std::size_t n = 0; n < populations.size(); ++n) {
        const double angle = step * static_cast<double>(n % steps);
        z += populations[n] * std::complex<double>(std::cos(angle), std::sin(angle));
    }
    return static_cast<double>(steps) * std::arg(z);
}

double berry_phase_wilson(const FockState& state, std::size_t steps) {
    return berry_phase_wilson(boson_populations(state.amplitudes), steps);
}

} // namespace rabiberry
