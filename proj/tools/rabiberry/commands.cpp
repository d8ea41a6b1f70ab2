#include "commands.hpp"

#include "csv.hpp"
#include "svg.hpp"
#include "sweep.hpp"

#include <rabiberry/rabiberry.h>

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace rabiberry::cli {
namespace {

// Error carrying its exit code up to run().
struct CommandError : std::runtime_error {
    int code;
    CommandError(int c, const std::string& what) : std::runtime_error(what), code(c) {}
};

int exit_code_for(rb_status s) {
    switch (s) {
    case RB_OK: return kExitOk;
    case RB_ERR_INVALID_ARGUMENT: return kExitUsage;
    default: return kExitNumerical;
    }
}

class Params {
public:
    Params(double omega, double omega0, double g) {
        const rb_status s = rb_params_create(omega, omega0, g, &p_);
        if (s != RB_OK) throw CommandError(exit_code_for(s), std::string("invalid parameters: ") + rb_last_error());
        omega_ = omega;
        omega0_ = omega0;
        g_ = g;
    }
    Params(const Params&) = delete;
    Params& operator=(const Params&) = delete;
    ~Params() { rb_params_destroy(p_); }

    const rb_params* get() const { return p_; }

    std::string describe() const {
        return "omega=" + format_double(omega_) + " omega0=" + format_double(omega0_) + " g=" + format_double(g_);
    }

    // Turns a failed call into a CommandError that names the parameter point.
    void check(rb_status s, const char* what) const {
        if (s == RB_OK) return;
        throw CommandError(exit_code_for(s),
                           std::string(what) + " failed at " + describe() + ": " + rb_last_error());
    }

private:
    rb_params* p_{nullptr};
    double omega_{0}, omega0_{0}, g_{0};
};

constexpr std::size_t kMinTruncation = 40;
constexpr double kTruncationTol = 1e-9;

std::size_t choose_truncation(const Params& p, std::size_t count, std::optional<std::size_t> forced) {
    if (forced) return *forced;
    std::size_t best = kMinTruncation;
    for (rb_parity parity : {RB_PARITY_EVEN, RB_PARITY_ODD}) {
        std::size_t m = 0;
        p.check(rb_converge_truncation(p.get(), parity, std::max<std::size_t>(count, 1), kTruncationTol, &m),
                "truncation search");
        best = std::max(best, m);
    }
    return best;
}

std::vector<rb_level> beyond_levels(const Params& p, rb_parity parity, std::size_t max_index, std::size_t count) {
    std::vector<rb_level> out(count);
    if (count == 0) return out;
    p.check(rb_solve_displaced(p.get(), parity, max_index, count, 1, out.data()), "displaced-basis solve");
    return out;
}

std::vector<rb_level> rwa_levels(const Params& p, std::size_t n_max) {
    std::vector<rb_level> out(2 * n_max + 3);
    std::size_t written = 0;
    p.check(rb_rwa_spectrum(p.get(), n_max, out.data(), out.size(), &written), "RWA spectrum");
    out.resize(written);
    return out;
}

const char* parity_name(rb_parity p) { return p == RB_PARITY_EVEN ? "even" : "odd"; }

struct MatchedLevel {
    std::size_t level_index;
    rb_parity parity;
    double e_rwa;
    double e_beyond;
};

enum class Ordering { Rwa, Full };

// Lowest `levels` levels of the ordering model, each paired with the level of the other
// model that has the same parity and the same rank within that parity.
std::vector<MatchedLevel> matched_levels(const Params& p, std::size_t levels, Ordering ordering,
                                         std::optional<std::size_t> forced_m) {
    const auto rwa = rwa_levels(p, 2 * levels + 4);
    std::map<std::pair<int, std::size_t>, double> rwa_rank;
    for (const auto& l : rwa) rwa_rank[{l.parity, l.index}] = l.energy;

    std::vector<MatchedLevel> out;
    if (ordering == Ordering::Rwa) {
        std::size_t need[2] = {0, 0};
        for (std::size_t i = 0; i < levels && i < rwa.size(); ++i) {
            need[rwa[i].parity] = std::max(need[rwa[i].parity], rwa[i].index + 1);
        }
        const std::size_t m = choose_truncation(p, std::max(need[0], need[1]), forced_m);
        const auto even = beyond_levels(p, RB_PARITY_EVEN, m, need[0]);
        const auto odd = beyond_levels(p, RB_PARITY_ODD, m, need[1]);
        for (std::size_t i = 0; i < levels && i < rwa.size(); ++i) {
            const auto& l = rwa[i];
            const auto& b = l.parity == RB_PARITY_EVEN ? even : odd;
            out.push_back({i, l.parity, l.energy, b[l.index].energy});
        }
    } else {
        const std::size_t m = choose_truncation(p, levels, forced_m);
        auto all = beyond_levels(p, RB_PARITY_EVEN, m, levels);
        const auto odd = beyond_levels(p, RB_PARITY_ODD, m, levels);
        all.insert(all.end(), odd.begin(), odd.end());
        std::stable_sort(all.begin(), all.end(), [](const rb_level& a, const rb_level& b) {
            if (a.energy != b.energy) return a.energy < b.energy;
            return a.parity < b.parity;
        });
        for (std::size_t i = 0; i < levels; ++i) {
            const auto& l = all[i];
            out.push_back({i, l.parity, rwa_rank.at({l.parity, l.index}), l.energy});
        }
    }
    return out;
}

void emit(const CsvTable& table, const std::string& path, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << table.str();
    } else {
        table.write(path);
    }
}

// Largest |E_beyond - E_oracle| over the matched levels, oracle at the given Fock cutoff.
double oracle_deviation(const Params& p, const std::vector<MatchedLevel>& rows, std::size_t n_cut) {
    std::size_t need[2] = {0, 0};
    std::vector<std::vector<double>> beyond(2);
    for (const auto& r : rows) beyond[r.parity].push_back(r.e_beyond);
    for (auto& b : beyond) std::sort(b.begin(), b.end());
    need[0] = beyond[0].size();
    need[1] = beyond[1].size();
    std::vector<rb_level> oracle(2 * (need[0] + need[1]) + 4);
    p.check(rb_oracle_spectrum(p.get(), RB_MODEL_FULLX, n_cut, oracle.size(), oracle.data()), "Fock oracle");
    double worst = 0.0;
    for (int par = 0; par < 2; ++par) {
        std::size_t k = 0;
        for (const auto& o : oracle) {
            if (o.parity != par || k >= beyond[par].size()) continue;
            worst = std::max(worst, std::abs(o.energy - beyond[par][k]));
            ++k;
        }
        if (k < beyond[par].size()) return std::numeric_limits<double>::infinity();
    }
    return worst;
}

std::optional<std::size_t> opt_m(std::size_t m) {
    return m == 0 ? std::nullopt : std::optional<std::size_t>(m);
}

// ---- spectrum ----------------------------------------------------------------------

struct SpectrumArgs {
    double omega{1.0};
    double g{0.0};
    double delta{0.0};
    double omega0{std::numeric_limits<double>::quiet_NaN()};
    std::string model{"rwa"};
    std::size_t levels{9};
    std::size_t n_cut{120};
    std::size_t max_index{0};
    std::string out;
};

int cmd_spectrum(const SpectrumArgs& a, std::ostream& out, std::ostream& err) {
    const double omega0 = std::isnan(a.omega0) ? a.omega + a.delta : a.omega0;
    Params p(a.omega, omega0, a.g);
    const auto rows = matched_levels(p, a.levels, a.model == "full" ? Ordering::Full : Ordering::Rwa,
                                     opt_m(a.max_index));
    CsvTable table({"level_index", "parity", "energy_rwa", "energy_beyond", "abs_diff"});
    for (const auto& r : rows) {
        table.add_row({std::to_string(r.level_index), parity_name(r.parity), format_double(r.e_rwa),
                       format_double(r.e_beyond), format_double(std::abs(r.e_rwa - r.e_beyond))});
    }
    emit(table, a.out, out);
    err << "oracle check: n_cut=" << a.n_cut
        << " max|E_beyond-E_fock|=" << format_double(oracle_deviation(p, rows, a.n_cut)) << '\n';
    return kExitOk;
}

// ---- fig1 --------------------------------------------------------------------------

struct Fig1Args {
    double gmax{0.5};
    std::size_t points{51};
    std::string out;
    std::string svg;
};

constexpr std::size_t kFig1Levels = 9;

int cmd_fig1(const Fig1Args& a, std::ostream& out) {
    const Range range{0.0, a.gmax, a.points};
    const auto gs = grid(range);
    std::vector<std::vector<MatchedLevel>> results(gs.size());
    parallel_for(gs.size(), [&](std::size_t i) {
        Params p(1.0, 1.0, gs[i]);
        results[i] = matched_levels(p, kFig1Levels, Ordering::Rwa, std::nullopt);
    });

    CsvTable table({"g", "level_index", "parity", "E_rwa", "E_beyond"});
    for (std::size_t i = 0; i < gs.size(); ++i) {
        for (const auto& r : results[i]) {
            table.add_row({format_double(gs[i]), std::to_string(r.level_index), parity_name(r.parity),
                           format_double(r.e_rwa), format_double(r.e_beyond)});
        }
    }
    emit(table, a.out, out);

    if (!a.svg.empty()) {
        Panel rwa{"(a) RWA", "g/omega", "E/omega", {}};
        Panel beyond{"(b) beyond RWA", "g/omega", "E/omega", {}};
        for (std::size_t lvl = 0; lvl < kFig1Levels; ++lvl) {
            Series sr{"level " + std::to_string(lvl), gs, {}, false};
            Series sb = sr;
            for (const auto& res : results) {
                sr.y.push_back(res[lvl].e_rwa);
                sb.y.push_back(res[lvl].e_beyond);
            }
            rwa.series.push_back(std::move(sr));
            beyond.series.push_back(std::move(sb));
        }
        write_text_file(a.svg, render_svg({rwa, beyond}));
    }
    return kExitOk;
}

// ---- fig2 --------------------------------------------------------------------------

struct Fig2Args {
    std::string sweep;
    double fixed{0.0};
    std::string range;
    std::string out;
    std::string svg;
    std::string units{"rad"};
};

struct Fig2Row {
    double gs_rwa, gs_beyond, minus_rwa, minus_beyond, plus_rwa, plus_beyond;
};

int cmd_fig2(const Fig2Args& a, std::ostream& out) {
    Range range;
    try {
        range = parse_range(a.range);
    } catch (const std::invalid_argument& e) {
        throw CommandError(kExitUsage, std::string("--range: ") + e.what());
    }
    const bool sweep_g = a.sweep == "g";
    const auto xs = grid(range);
    // Validate every point before spending time on any of them.
    for (double x : xs) Params(1.0, 1.0 + (sweep_g ? a.fixed : x), sweep_g ? x : a.fixed);

    std::vector<Fig2Row> rows(xs.size());
    parallel_for(xs.size(), [&](std::size_t i) {
        const double g = sweep_g ? xs[i] : a.fixed;
        const double dprime = sweep_g ? a.fixed : xs[i];
        Params p(1.0, 1.0 + dprime, g);
        const std::size_t m = choose_truncation(p, 2, std::nullopt);
        const auto even = beyond_levels(p, RB_PARITY_EVEN, m, 1);
        const auto odd = beyond_levels(p, RB_PARITY_ODD, m, 2);
        Fig2Row r{};
        p.check(rb_rwa_berry_phase(p.get(), RB_FAMILY_GROUND_RWA, 0, RB_BRANCH_MINUS, &r.gs_rwa), "RWA phase");
        p.check(rb_rwa_berry_phase(p.get(), RB_FAMILY_DRESSED_RWA, 0, RB_BRANCH_MINUS, &r.minus_rwa), "RWA phase");
        p.check(rb_rwa_berry_phase(p.get(), RB_FAMILY_DRESSED_RWA, 0, RB_BRANCH_PLUS, &r.plus_rwa), "RWA phase");
        r.gs_beyond = even[0].berry_phase;
        r.minus_beyond = odd[0].berry_phase;
        r.plus_beyond = odd[1].berry_phase;
        rows[i] = r;
    });

    const double scale = a.units == "pi" ? 1.0 / std::numbers::pi : 1.0;
    CsvTable table({"sweep_value", "gamma_GS_rwa", "gamma_GS_beyond", "gamma_0minus_rwa", "gamma_0minus_beyond",
                    "gamma_0plus_rwa", "gamma_0plus_beyond"});
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const auto& r = rows[i];
        table.add_row({format_double(xs[i]), format_double(r.gs_rwa * scale), format_double(r.gs_beyond * scale),
                       format_double(r.minus_rwa * scale), format_double(r.minus_beyond * scale),
                       format_double(r.plus_rwa * scale), format_double(r.plus_beyond * scale)});
    }
    emit(table, a.out, out);

    if (!a.svg.empty()) {
        const std::string unit = a.units == "pi" ? "gamma/pi" : "gamma (rad)";
        Panel panel{sweep_g ? "Berry phases vs g/omega" : "Berry phases vs detuning", sweep_g ? "g/omega" : "Delta/omega",
                    unit, {}};
        auto column = [&](double Fig2Row::*field) {
            std::vector<double> y;
            for (const auto& r : rows) y.push_back(r.*field * scale);
            return y;
        };
        panel.series.push_back({"GS beyond", xs, column(&Fig2Row::gs_beyond), false});
        panel.series.push_back({"0- beyond", xs, column(&Fig2Row::minus_beyond), false});
        panel.series.push_back({"0+ beyond", xs, column(&Fig2Row::plus_beyond), false});
        panel.series.push_back({"GS RWA", xs, column(&Fig2Row::gs_rwa), true});
        panel.series.push_back({"0- RWA", xs, column(&Fig2Row::minus_rwa), true});
        panel.series.push_back({"0+ RWA", xs, column(&Fig2Row::plus_rwa), true});
        write_text_file(a.svg, render_svg({panel}));
    }
    return kExitOk;
}

// ---- assess-rwa --------------------------------------------------------------------

struct AssessArgs {
    double rabi{0.0};
    double lamb_dicke{0.0};
    double trap{0.0};
    double threshold{0.01};
};

int cmd_assess(const AssessArgs& a, std::ostream& out) {
    for (auto [name, v] : {std::pair{"--rabi", a.rabi}, std::pair{"--lamb-dicke", a.lamb_dicke},
                           std::pair{"--trap", a.trap}, std::pair{"--threshold", a.threshold}}) {
        if (!(std::isfinite(v) && v > 0.0)) {
            throw CommandError(kExitUsage, std::string(name) + " must be a positive number");
        }
    }
    // first red-sideband Rabi rate eta * Omega, in units of the trap frequency
    const double coupling = a.lamb_dicke * a.rabi / a.trap;
    Params p(1.0, 1.0, coupling);
    double gamma = 0.0;
    p.check(rb_vibp_ground(p.get(), choose_truncation(p, 1, std::nullopt), &gamma), "ground-state phase");
    const bool ok = coupling < a.threshold;
    out << "coupling g/omega = " << format_double(coupling) << " (threshold " << format_double(a.threshold)
        << "): " << (ok ? "RWA nearly accurate" : "RWA not justified") << '\n';
    out << "gamma'_GS beyond RWA at resonance = " << format_double(gamma) << " rad\n";
    return ok ? kExitOk : kExitFail;
}

// ---- validate ----------------------------------------------------------------------

struct ValidateArgs {
    std::string profile{"quick"};
    std::string out{"validate_report.csv"};
    std::string mutation{"none"};
};

struct GridPoint {
    double g;
    double dprime;
};

std::vector<GridPoint> validation_grid(const std::string& profile) {
    std::vector<GridPoint> pts;
    if (profile == "quick") {
        for (double g : {0.0, 0.2, 0.5}) {
            for (double d : {-0.5, 0.0, 0.5}) pts.push_back({g, d});
        }
    } else {
        const Range gr{0.0, 1.0, 11};
        const Range dr{-1.0, 1.0, 11};
        for (std::size_t i = 0; i < gr.count; ++i) {
            for (std::size_t j = 0; j < dr.count; ++j) pts.push_back({grid_point(gr, i), grid_point(dr, j)});
        }
    }
    return pts;
}

int cmd_validate(const ValidateArgs& a, std::ostream& out) {
    rb_variant variant = RB_VARIANT_STANDARD;
    if (a.mutation == "flip-even-sign") variant = RB_VARIANT_FLIPPED_EVEN_SIGN;
    if (a.mutation == "printed-eta") variant = RB_VARIANT_PRINTED_ETA;

    const auto pts = validation_grid(a.profile);
    std::vector<std::vector<rb_report_row>> reports(pts.size());
    std::vector<std::vector<std::string>> names(pts.size());
    parallel_for(pts.size(), [&](std::size_t i) {
        Params p(1.0, 1.0 + pts[i].dprime, pts[i].g);
        rb_crosscheck_options opt;
        rb_crosscheck_options_default(&opt);
        opt.max_index = choose_truncation(p, opt.levels_per_parity + 2, std::nullopt);
        opt.variant = variant;
        rb_report* rep = nullptr;
        p.check(rb_crosscheck(p.get(), &opt, &rep), "crosscheck");
        const std::size_t n = rb_report_size(rep);
        for (std::size_t k = 0; k < n; ++k) {
            rb_report_row row{};
            rb_report_row_at(rep, k, &row);
            names[i].emplace_back(row.quantity);  // copy before the report goes away
            reports[i].push_back(row);
        }
        rb_report_destroy(rep);
    });

    CsvTable table({"g", "delta", "quantity", "value_a", "value_b", "abs_diff", "tolerance", "pass"});
    std::size_t rows = 0, failures = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t k = 0; k < reports[i].size(); ++k) {
            const auto& r = reports[i][k];
            ++rows;
            if (!r.pass) {
                ++failures;
                if (failures <= 20) {
                    out << "FAIL g=" << format_double(pts[i].g) << " delta=" << format_double(pts[i].dprime) << ' '
                        << names[i][k] << " a=" << format_double(r.value_a) << " b=" << format_double(r.value_b)
                        << " diff=" << format_double(r.abs_diff) << " tol=" << format_double(r.tolerance) << '\n';
                }
            }
            table.add_row({format_double(pts[i].g), format_double(pts[i].dprime), names[i][k],
                           format_double(r.value_a), format_double(r.value_b), format_double(r.abs_diff),
                           format_double(r.tolerance), r.pass ? "1" : "0"});
        }
    }
    if (failures > 20) out << "... " << failures - 20 << " more failing rows\n";
    if (!a.out.empty()) table.write(a.out);
    out << "validate profile=" << a.profile << " points=" << pts.size() << " rows=" << rows
        << " failures=" << failures << " -> " << (failures == 0 ? "PASS" : "FAIL") << '\n';
    return failures == 0 ? kExitOk : kExitFail;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Eigenstates and Berry phases of the quantum Rabi model, with and without the RWA"};
    app.set_version_flag("--version", std::string(rb_version()));
    app.set_config("--config", "", "key = value file with defaults; command-line flags take precedence");
    app.require_subcommand(1);

    SpectrumArgs sp;
    auto* spectrum = app.add_subcommand("spectrum", "lowest levels under the RWA and beyond it");
    spectrum->add_option("--omega", sp.omega, "boson frequency")->capture_default_str();
    spectrum->add_option("--g", sp.g, "coupling")->capture_default_str();
    auto* dopt = spectrum->add_option("--delta", sp.delta, "detuning omega0 - omega")->capture_default_str();
    spectrum->add_option("--omega0", sp.omega0, "qubit splitting (instead of --delta)")->excludes(dopt);
    spectrum->add_option("--model", sp.model, "model whose energy ordering defines level_index")
        ->check(CLI::IsMember({"rwa", "full"}))
        ->capture_default_str();
    spectrum->add_option("--levels", sp.levels, "number of levels")->check(CLI::PositiveNumber)->capture_default_str();
    spectrum->add_option("--ncut", sp.n_cut, "Fock cutoff of the oracle check")->check(CLI::Range(2, 2000))
        ->capture_default_str();
    spectrum->add_option("-M,--truncation", sp.max_index, "displaced-basis truncation (default: automatic)")
        ->check(CLI::PositiveNumber);
    spectrum->add_option("--out", sp.out, "CSV path (default stdout)");

    Fig1Args f1;
    auto* fig1 = app.add_subcommand("fig1", "energy levels against coupling at resonance");
    fig1->add_option("--gmax", f1.gmax, "largest g/omega")->check(CLI::PositiveNumber)->capture_default_str();
    fig1->add_option("--points", f1.points, "grid points")->check(CLI::Range(2, 100000))->capture_default_str();
    fig1->add_option("--out", f1.out, "CSV path (default stdout)");
    fig1->add_option("--svg", f1.svg, "also write an SVG chart");

    Fig2Args f2;
    auto* fig2 = app.add_subcommand("fig2", "ground and first odd Berry phases along a sweep");
    fig2->add_option("--sweep", f2.sweep, "swept variable")->check(CLI::IsMember({"g", "delta"}))->required();
    fig2->add_option("--fixed", f2.fixed, "value of the other variable (delta/omega or g/omega)")->required();
    fig2->add_option("--range", f2.range, "start:stop:count")->required();
    fig2->add_option("--out", f2.out, "CSV path (default stdout)");
    fig2->add_option("--svg", f2.svg, "also write an SVG chart");
    fig2->add_option("--units", f2.units, "phase units")->check(CLI::IsMember({"rad", "pi"}))->capture_default_str();

    AssessArgs as;
    auto* assess = app.add_subcommand("assess-rwa", "is the RWA adequate for a trapped-ion sideband?");
    assess->add_option("--rabi", as.rabi, "carrier Rabi frequency")->required();
    assess->add_option("--lamb-dicke", as.lamb_dicke, "Lamb-Dicke parameter")->required();
    assess->add_option("--trap", as.trap, "trap frequency, same units as --rabi")->required();
    assess->add_option("--threshold", as.threshold, "largest acceptable g/omega")->capture_default_str();

    ValidateArgs va;
    auto* validate = app.add_subcommand("validate", "cross-check every solver against the Fock oracle");
    validate->add_option("--profile", va.profile, "grid size")->check(CLI::IsMember({"quick", "full"}))
        ->capture_default_str();
    validate->add_option("--out", va.out, "CSV report path (empty to skip)")->capture_default_str();
    validate->add_option("--mutation", va.mutation)
        ->check(CLI::IsMember({"none", "flip-even-sign", "printed-eta"}))
        ->group("");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*spectrum) return cmd_spectrum(sp, out, err);
        if (*fig1) return cmd_fig1(f1, out);
        if (*fig2) return cmd_fig2(f2, out);
        if (*assess) return cmd_assess(as, out);
        if (*validate) return cmd_validate(va, out);
    } catch (const CommandError& e) {
        err << "error: " << e.what() << '\n';
        return e.code;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

} // namespace rabiberry::cli
