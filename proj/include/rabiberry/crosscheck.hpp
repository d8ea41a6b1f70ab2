// crosscheck.hpp: compares every closed form and solver against the Fock oracle at one
// parameter point. Failures are rows, never exceptions from the comparison itself.

#pragma once

#include "rabiberry/beyond_rwa.hpp"
#include "rabiberry/model.hpp"

#include <cstddef>
#include <limits>
#include <string>
#include <vector>

namespace rabiberry {

struct CrosscheckRow {
    std::string quantity;
    double value_a{0.0};
    double value_b{0.0};
    double abs_diff{0.0};
    double tolerance{0.0};  // +inf marks an informational row
    bool pass{true};
};

struct CrosscheckReport {
    ModelParams params;
    std::size_t n_cut{0};
    std::size_t max_index{0};
    std::vector<CrosscheckRow> rows;

    bool all_pass() const noexcept;
    std::size_t failures() const noexcept;
};

struct CrosscheckOptions {
    std::size_t n_cut{120};
    std::size_t max_index{40};
    std::size_t levels_per_parity{6};
    std::size_t rwa_levels_per_parity{4};
    std::size_t wilson_steps{10000};
    SolverVariant variant{SolverVariant::Standard};
};

inline constexpr double kInfoTolerance = std::numeric_limits<double>::infinity();

CrosscheckReport crosscheck(const ModelParams& params, const CrosscheckOptions& options = {});

} // namespace rabiberry
