#include "rabiberry/crosscheck.hpp"

#include "rabiberry/errors.hpp"
#include "rabiberry/fock_oracle.hpp"
#include "rabiberry/rwa.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace rabiberry {
namespace {

constexpr double kStructureTolerance = 1e-12;
constexpr double kRwaEnergyTolerance = 1e-9;
constexpr double kEnergyTolerance = 1e-8;
constexpr double kPhaseTolerance = 1e-6;
constexpr double kIdentityTolerance = 1e-8;
constexpr double kFirstOrderTolerance = 1e-10;
constexpr double kWilsonTolerance = 1e-3;
constexpr double kDegeneracyGap = 1e-7;

struct Level {
    double energy;
    double phase;
};

class RowSink {
public:
    explicit RowSink(std::vector<CrosscheckRow>& rows) : rows_(rows) {}

    void add(std::string quantity, double a, double b, double tol) {
        CrosscheckRow row;
        row.quantity = std::move(quantity);
        row.value_a = a;
        row.value_b = b;
        row.abs_diff = std::abs(a - b);
        row.tolerance = tol;
        row.pass = std::isinf(tol) || row.abs_diff <= tol;  // NaN fails
        rows_.push_back(std::move(row));
    }

private:
    std::vector<CrosscheckRow>& rows_;
};

std::string idx(std::size_t i) { return "[" + std::to_string(i) + "]"; }

bool degenerate(double e1, double e2) {
    return std::abs(e1 - e2) < kDegeneracyGap * std::max(1.0, std::abs(e1));
}

// Energies level by level; Berry phases summed over clusters of degenerate levels, since
// within an exactly degenerate subspace only the trace of 2 pi n is basis independent.
void compare_sector(RowSink& sink, const std::string& prefix, const std::vector<Level>& a,
                    const std::vector<Level>& b, std::size_t count, double energy_tol,
                    double phase_tol) {
    const std::size_t avail = std::min(a.size(), b.size());
    count = std::min(count, avail);
    for (std::size_t i = 0; i < count; ++i) {
        sink.add(prefix + ".energy" + idx(i), a[i].energy, b[i].energy, energy_tol);
    }
    std::size_t i = 0;
    while (i < count) {
        std::size_t j = i + 1;
        while (j < avail && (degenerate(a[j - 1].energy, a[j].energy) ||
                             degenerate(b[j - 1].energy, b[j].energy))) {
            ++j;
        }
        double sa = 0.0;
        double sb = 0.0;
        for (std::size_t t = i; t < j; ++t) {
            sa += a[t].phase;
            sb += b[t].phase;
        }
        const std::string span =
            j - i == 1 ? idx(i) : "[" + std::to_string(i) + "-" + std::to_string(j - 1) + "]";
        sink.add(prefix + ".phase" + span, sa, sb, phase_tol);
        i = j;
    }
}

std::vector<Level> oracle_sector(const std::vector<FockState>& states, Parity parity) {
    std::vector<Level> out;
    for (const FockState& s : states) {
        if (s.parity == parity) out.push_back({s.energy, berry_phase_photon(s)});
    }
    return out;
}

void structure_rows(RowSink& sink, const ModelParams& p, std::size_t n_cut) {
    const SymmetricMatrix hr = build_hamiltonian(p, Model::Rwa, n_cut);
    const SymmetricMatrix hnr = build_hamiltonian(p, Model::Full, n_cut);
    const SymmetricMatrix hx = build_hamiltonian(p, Model::FullX, n_cut);
    const SymmetricMatrix pp = parity_operator(Model::Rwa, n_cut);
    const SymmetricMatrix pi = parity_operator(Model::FullX, n_cut);
    sink.add("parity.commutator.rwa", commutator_norm(hr, pp), 0.0, kStructureTolerance);
    sink.add("parity.commutator.full", commutator_norm(hnr, pp), 0.0, kStructureTolerance);
    sink.add("parity.commutator.fullx", commutator_norm(hx, pi), 0.0, kStructureTolerance);

    const Eigen::MatrixXd v = spin_rotation(n_cut);
    const double pi_err = (v.transpose() * pp.to_dense() * v - pi.to_dense()).cwiseAbs().maxCoeff();
    sink.add("parity.pi_vs_vtpv", pi_err, 0.0, kStructureTolerance);
    const double h_err = (v.transpose() * hnr.to_dense() * v - hx.to_dense()).cwiseAbs().maxCoeff();
    sink.add("transform.fullx_vs_vthv", h_err, 0.0, kStructureTolerance * std::max(1.0, hx.max_abs()));
}

void rwa_rows(RowSink& sink, const ModelParams& p, const CrosscheckOptions& o) {
    const std::size_t per = o.rwa_levels_per_parity;
    const auto closed = rwa_spectrum(p, 2 * per + 4);
    const std::size_t dim = 2 * (o.n_cut + 1);
    const auto oracle = oracle_spectrum(p, Model::Rwa, o.n_cut, std::min(dim, 4 * per + 8));
    for (Parity parity : {Parity::Even, Parity::Odd}) {
        std::vector<Level> a;
        for (const auto& s : closed) {
            if (rwa_parity(s.label) == parity) a.push_back({s.energy, s.berry_phase});
        }
        compare_sector(sink, "rwa." + to_string(parity), a, oracle_sector(oracle, parity), per,
                       kRwaEnergyTolerance, kPhaseTolerance);
    }
    for (const auto& s : closed) {
        if (std::holds_alternative<GroundRwa>(s.label)) {
            sink.add("rwa.ground.phase", s.berry_phase, 0.0, 0.0);
        } else {
            sink.add("rwa.identity." + to_string(s.label), s.berry_phase,
                     2.0 * std::numbers::pi * s.mean_boson, 1e-12);
        }
    }
}

void beyond_rows(RowSink& sink, const ModelParams& p, const CrosscheckOptions& o) {
    const std::size_t per = o.levels_per_parity;
    const std::size_t dim = 2 * (o.n_cut + 1);
    const auto oracle = oracle_spectrum(p, Model::FullX, o.n_cut, std::min(dim, 2 * per + 12));
    for (std::size_t i = 0; i < oracle.size(); ++i) {
        if (i < 2 * per) {
            sink.add("oracle.parity" + idx(i), std::abs(oracle[i].parity_expectation), 1.0, 1e-8);
            sink.add("oracle.tail" + idx(i), oracle[i].tail_weight, 0.0, 1e-8);
        }
    }
    for (std::size_t i = 0; i < std::min<std::size_t>(4, oracle.size()); ++i) {
        sink.add("wilson.fullx" + idx(i), berry_phase_wilson(oracle[i], o.wilson_steps),
                 berry_phase_photon(oracle[i]), kWilsonTolerance);
    }

    const std::size_t solve_count = std::min(per + 2, o.max_index);
    const std::size_t n_exp = expansion_cutoff(o.max_index, p.alpha);
    for (Parity parity : {Parity::Even, Parity::Odd}) {
        const std::string tag = to_string(parity);
        const auto states =
            solve_displaced(p, parity, o.max_index, solve_count, TailPolicy::Report, o.variant);
        std::vector<Level> a;
        for (const auto& s : states) a.push_back({s.energy, s.berry_phase});
        const auto b = oracle_sector(oracle, parity);
        compare_sector(sink, "beyond." + tag, a, b, per, kEnergyTolerance * p.omega, kPhaseTolerance);

        for (std::size_t i = 0; i < std::min(per, states.size()); ++i) {
            const auto& s = states[i];
            sink.add("beyond." + tag + ".tail" + idx(i), std::abs(s.f.back()), 0.0, kTailTolerance);
            const Eigen::VectorXd amps = expand_in_fock(s, p.alpha, n_exp);
            const auto pops = boson_populations(amps);
            double mean = 0.0;
            for (std::size_t n = 0; n < pops.size(); ++n) mean += static_cast<double>(n) * pops[n];
            sink.add("identity.eq8_vs_photon." + tag + idx(i), s.berry_phase,
                     2.0 * std::numbers::pi * mean, kIdentityTolerance);
        }
    }
}

void first_order_rows(RowSink& sink, const ModelParams& p, const CrosscheckOptions& o) {
    for (Parity parity : {Parity::Even, Parity::Odd}) {
        const std::string tag = to_string(parity);
        const EigenDecomposition block = eigh(build_parity_block(p, parity, 1, o.variant));
        for (Branch branch : {Branch::Minus, Branch::Plus}) {
            const auto sol = first_order_solution(p, parity, 0, branch, o.variant);
            const auto col = static_cast<Eigen::Index>(branch == Branch::Minus ? 0 : 1);
            const std::string name = tag + ".k0" + to_string(branch);
            sink.add("first_order.energy." + name, sol.energy, block.eigenvalues[col],
                     kFirstOrderTolerance * std::max(1.0, std::abs(sol.energy)));
            const std::vector<double> f{block.eigenvectors(0, col), block.eigenvectors(1, col)};
            sink.add("first_order.phase." + name, sol.berry_phase, berry_phase_displaced(f, p.alpha),
                     kFirstOrderTolerance);
            sink.add("first_order.residual." + name, first_order_residual(sol, sol.energy), 0.0,
                     kFirstOrderTolerance * std::max(1.0, sol.energy * sol.energy));
        }
    }

    const auto fo = first_order_solution(p, Parity::Even, 0, Branch::Minus, o.variant);
    const auto conv = solve_displaced(p, Parity::Even, o.max_index, 1, TailPolicy::Report, o.variant);
    sink.add("first_order_vs_converged.ground.energy", fo.energy, conv.front().energy, kInfoTolerance);
    sink.add("first_order_vs_converged.ground.phase", fo.berry_phase, conv.front().berry_phase,
             kInfoTolerance);
}

} // namespace

bool CrosscheckReport::all_pass() const noexcept { return failures() == 0; }

std::size_t CrosscheckReport::failures() const noexcept {
    return static_cast<std::size_t>(
        std::count_if(rows.begin(), rows.end(), [](const CrosscheckRow& r) { return !r.pass; }));
}

CrosscheckReport crosscheck(const ModelParams& params, const CrosscheckOptions& options) {
    if (options.max_index < options.levels_per_parity + 2) {
        throw ValidationError("crosscheck: M must exceed levels_per_parity + 1");
    }
    CrosscheckReport report;
    report.params = params;
    report.n_cut = options.n_cut;
    report.max_index = options.max_index;
    RowSink sink(report.rows);
    structure_rows(sink, params, options.n_cut);
    rwa_rows(sink, params, options);
    beyond_rows(sink, params, options);
    first_order_rows(sink, params, options);
    return report;
}

} // namespace rabiberry
