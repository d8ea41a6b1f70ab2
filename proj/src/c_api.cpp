#include "rabiberry/rabiberry.h"

#include "rabiberry/beyond_rwa.hpp"
#include "rabiberry/crosscheck.hpp"
#include "rabiberry/displaced_basis.hpp"
#include "rabiberry/errors.hpp"
#include "rabiberry/fock_oracle.hpp"
#include "rabiberry/model.hpp"
#include "rabiberry/rwa.hpp"

#include <exception>
#include <new>
#include <numbers>
#include <string>

struct rb_params {
    rabiberry::ModelParams value;
};

struct rb_report {
    rabiberry::CrosscheckReport value;
};

namespace {

thread_local std::string g_last_error;

rb_status fail(rb_status status, const char* message) {
    g_last_error = message;
    return status;
}

// Runs `body`, translating exceptions into status codes.
template <class F>
rb_status guarded(F&& body) noexcept {
    try {
        g_last_error.clear();
        body();
        return RB_OK;
    } catch (const rabiberry::ValidationError& e) {
        return fail(RB_ERR_INVALID_ARGUMENT, e.what());
    } catch (const rabiberry::ConvergenceError& e) {
        return fail(RB_ERR_NOT_CONVERGED, e.what());
    } catch (const rabiberry::PrecisionError& e) {
        return fail(RB_ERR_PRECISION, e.what());
    } catch (const rabiberry::ParityError& e) {
        return fail(RB_ERR_PARITY, e.what());
    } catch (const rabiberry::AliasingError& e) {
        return fail(RB_ERR_ALIASING, e.what());
    } catch (const std::bad_alloc&) {
        return fail(RB_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(RB_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(RB_ERR_INTERNAL, "unknown error");
    }
}

rabiberry::Parity to_parity(rb_parity p) {
    switch (p) {
    case RB_PARITY_EVEN: return rabiberry::Parity::Even;
    case RB_PARITY_ODD: return rabiberry::Parity::Odd;
    }
    throw rabiberry::ValidationError("unknown parity");
}

rb_parity from_parity(rabiberry::Parity p) {
    return p == rabiberry::Parity::Even ? RB_PARITY_EVEN : RB_PARITY_ODD;
}

rabiberry::Branch to_branch(rb_branch b) {
    switch (b) {
    case RB_BRANCH_MINUS: return rabiberry::Branch::Minus;
    case RB_BRANCH_PLUS: return rabiberry::Branch::Plus;
    }
    throw rabiberry::ValidationError("unknown branch");
}

rb_branch from_branch(rabiberry::Branch b) {
    return b == rabiberry::Branch::Plus ? RB_BRANCH_PLUS : RB_BRANCH_MINUS;
}

rabiberry::Model to_model(rb_model m) {
    switch (m) {
    case RB_MODEL_RWA: return rabiberry::Model::Rwa;
    case RB_MODEL_FULL: return rabiberry::Model::Full;
    case RB_MODEL_FULLX: return rabiberry::Model::FullX;
    }
    throw rabiberry::ValidationError("unknown model");
}

rabiberry::SolverVariant to_variant(rb_variant v) {
    switch (v) {
    case RB_VARIANT_STANDARD: return rabiberry::SolverVariant::Standard;
    case RB_VARIANT_FLIPPED_EVEN_SIGN: return rabiberry::SolverVariant::FlippedEvenSign;
    case RB_VARIANT_PRINTED_ETA: return rabiberry::SolverVariant::PrintedEta;
    }
    throw rabiberry::ValidationError("unknown solver variant");
}

template <class T>
void require(const T* ptr, const char* what) {
    if (ptr == nullptr) throw rabiberry::ValidationError(std::string(what) + " must not be null");
}

rb_level to_level(const rabiberry::RwaEigenstate& s) {
    rb_level out{};
    out.parity = from_parity(rabiberry::rwa_parity(s.label));
    if (const auto* d = std::get_if<rabiberry::DressedRwa>(&s.label)) {
        out.family = RB_FAMILY_DRESSED_RWA;
        out.n = d->n;
        out.branch = from_branch(d->branch);
    } else {
        out.family = RB_FAMILY_GROUND_RWA;
    }
    out.energy = s.energy;
    out.berry_phase = s.berry_phase;
    out.mean_boson = s.mean_boson;
    out.converged = 1;
    return out;
}

} // namespace

extern "C" {

const char* rb_version(void) { return "0.1.0"; }

const char* rb_last_error(void) { return g_last_error.c_str(); }

const char* rb_status_string(rb_status status) {
    switch (status) {
    case RB_OK: return "ok";
    case RB_ERR_INVALID_ARGUMENT: return "invalid argument";
    case RB_ERR_NOT_CONVERGED: return "not converged";
    case RB_ERR_PRECISION: return "precision loss";
    case RB_ERR_PARITY: return "parity classification failed";
    case RB_ERR_ALIASING: return "wilson loop aliasing";
    case RB_ERR_BUFFER_TOO_SMALL: return "buffer too small";
    case RB_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

rb_status rb_params_create(double omega, double omega0, double g, rb_params** out) {
    return guarded([&] {
        require(out, "out");
        *out = nullptr;
        *out = new rb_params{rabiberry::make_params(omega, omega0, g)};
    });
}

void rb_params_destroy(rb_params* params) { delete params; }

rb_status rb_params_get(const rb_params* params, double* omega, double* omega0, double* g,
                        double* delta, double* alpha) {
    return guarded([&] {
        require(params, "params");
        const auto& p = params->value;
        if (omega) *omega = p.omega;
        if (omega0) *omega0 = p.omega0;
        if (g) *g = p.g;
        if (delta) *delta = p.delta;
        if (alpha) *alpha = p.alpha;
    });
}

rb_status rb_log_factorial(size_t n, double* out) {
    return guarded([&] {
        require(out, "out");
        *out = rabiberry::log_factorial(n);
    });
}

rb_status rb_dmn(double alpha, size_t m, size_t n, double* out) {
    return guarded([&] {
        require(out, "out");
        *out = rabiberry::dmn(alpha, m, n);
    });
}

rb_status rb_rwa_spectrum(const rb_params* params, size_t n_max, rb_level* out, size_t capacity,
                          size_t* written) {
    if (written) *written = 0;
    const size_t needed = 2 * n_max + 3;
    if (out != nullptr && capacity < needed) {
        if (written) *written = needed;
        return fail(RB_ERR_BUFFER_TOO_SMALL, "rb_rwa_spectrum: capacity below 2 n_max + 3");
    }
    return guarded([&] {
        require(params, "params");
        require(out, "out");
        const auto levels = rabiberry::rwa_spectrum(params->value, n_max);
        for (size_t i = 0; i < levels.size(); ++i) out[i] = to_level(levels[i]);
        // Index within parity, in ascending order.
        size_t even = 0;
        size_t odd = 0;
        for (size_t i = 0; i < levels.size(); ++i) {
            out[i].index = out[i].parity == RB_PARITY_EVEN ? even++ : odd++;
        }
        if (written) *written = levels.size();
    });
}

rb_status rb_rwa_berry_phase(const rb_params* params, rb_family family, size_t n, rb_branch branch,
                             double* out) {
    return guarded([&] {
        require(params, "params");
        require(out, "out");
        rabiberry::LevelLabel label;
        if (family == RB_FAMILY_GROUND_RWA) {
            label = rabiberry::GroundRwa{};
        } else if (family == RB_FAMILY_DRESSED_RWA) {
            label = rabiberry::DressedRwa{n, to_branch(branch)};
        } else {
            throw rabiberry::ValidationError("rb_rwa_berry_phase: family is not an RWA family");
        }
        *out = rabiberry::rwa_berry_phase(params->value, label);
    });
}

rb_status rb_solve_displaced(const rb_params* params, rb_parity parity, size_t max_index,
                             size_t count, int require_converged, rb_level* out) {
    return guarded([&] {
        require(params, "params");
        require(out, "out");
        const auto policy =
            require_converged ? rabiberry::TailPolicy::Enforce : rabiberry::TailPolicy::Report;
        const auto states =
            rabiberry::solve_displaced(params->value, to_parity(parity), max_index, count, policy);
        for (size_t i = 0; i < states.size(); ++i) {
            rb_level l{};
            l.family = RB_FAMILY_BEYOND_RWA;
            l.parity = parity;
            l.index = states[i].index;
            l.energy = states[i].energy;
            l.berry_phase = states[i].berry_phase;
            l.mean_boson = states[i].berry_phase / (2.0 * std::numbers::pi);
            l.converged = states[i].converged ? 1 : 0;
            out[i] = l;
        }
    });
}

rb_status rb_converge_truncation(const rb_params* params, rb_parity parity, size_t count,
                                 double tol, size_t* max_index) {
    return guarded([&] {
        require(params, "params");
        require(max_index, "max_index");
        *max_index = rabiberry::converge_truncation(params->value, to_parity(parity), count, tol);
    });
}

rb_status rb_first_order_solution(const rb_params* params, rb_parity parity, size_t k,
                                  rb_branch branch, rb_first_order* out) {
    return guarded([&] {
        require(params, "params");
        require(out, "out");
        const auto s =
            rabiberry::first_order_solution(params->value, to_parity(parity), k, to_branch(branch));
        out->parity = parity;
        out->k = k;
        out->branch = branch;
        out->energy = s.energy;
        out->mixing = s.mixing;
        out->f_k = s.f_pair.first;
        out->f_k1 = s.f_pair.second;
        out->berry_phase = s.berry_phase;
    });
}

rb_status rb_vibp_ground(const rb_params* params, size_t max_index, double* out) {
    return guarded([&] {
        require(params, "params");
        require(out, "out");
        if (max_index == 0) {
            *out = rabiberry::vibp_ground(params->value, rabiberry::FirstOrder{});
        } else {
            *out = rabiberry::vibp_ground(params->value, rabiberry::Converged{max_index});
        }
    });
}

rb_status rb_oracle_spectrum(const rb_params* params, rb_model model, size_t n_cut, size_t count,
                             rb_level* out) {
    return guarded([&] {
        require(params, "params");
        require(out, "out");
        const auto states = rabiberry::oracle_spectrum(params->value, to_model(model), n_cut, count);
        size_t even = 0;
        size_t odd = 0;
        for (size_t i = 0; i < states.size(); ++i) {
            rb_level l{};
            l.family = RB_FAMILY_FOCK;
            l.parity = from_parity(states[i].parity);
            l.index = l.parity == RB_PARITY_EVEN ? even++ : odd++;
            l.energy = states[i].energy;
            l.berry_phase = rabiberry::berry_phase_photon(states[i]);
            l.mean_boson = states[i].mean_boson;
            l.converged = states[i].converged ? 1 : 0;
            out[i] = l;
        }
    });
}

rb_status rb_oracle_wilson(const rb_params* params, rb_model model, size_t n_cut, size_t level,
                           size_t steps, double* out) {
    return guarded([&] {
        require(params, "params");
        require(out, "out");
        const auto states =
            rabiberry::oracle_spectrum(params->value, to_model(model), n_cut, level + 1);
        *out = rabiberry::berry_phase_wilson(states.back(), steps);
    });
}

void rb_crosscheck_options_default(rb_crosscheck_options* options) {
    if (options == nullptr) return;
    const rabiberry::CrosscheckOptions d;
    options->n_cut = d.n_cut;
    options->max_index = d.max_index;
    options->levels_per_parity = d.levels_per_parity;
    options->wilson_steps = d.wilson_steps;
    options->variant = RB_VARIANT_STANDARD;
}

rb_status rb_crosscheck(const rb_params* params, const rb_crosscheck_options* options,
                        rb_report** out) {
    return guarded([&] {
        require(params, "params");
        require(out, "out");
        *out = nullptr;
        rabiberry::CrosscheckOptions o;
        if (options != nullptr) {
            o.n_cut = options->n_cut;
            o.max_index = options->max_index;
            o.levels_per_parity = options->levels_per_parity;
            o.wilson_steps = options->wilson_steps;
            o.variant = to_variant(options->variant);
        }
        *out = new rb_report{rabiberry::crosscheck(params->value, o)};
    });
}

void rb_report_destroy(rb_report* report) { delete report; }

size_t rb_report_size(const rb_report* report) {
    return report == nullptr ? 0 : report->value.rows.size();
}

rb_status rb_report_row_at(const rb_report* report, size_t i, rb_report_row* out) {
    return guarded([&] {
        require(report, "report");
        require(out, "out");
        if (i >= report->value.rows.size()) {
            throw rabiberry::ValidationError("rb_report_row_at: index out of range");
        }
        const auto& r = report->value.rows[i];
        out->quantity = r.quantity.c_str();
        out->value_a = r.value_a;
        out->value_b = r.value_b;
        out->abs_diff = r.abs_diff;
        out->tolerance = r.tolerance;
        out->pass = r.pass ? 1 : 0;
    });
}

int rb_report_all_pass(const rb_report* report) {
    return report != nullptr && report->value.all_pass() ? 1 : 0;
}

} // extern "C"
