// Sweep grids and the worker pool that evaluates them.
#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace rabiberry::cli {

struct Range {
    double start{0.0};
    double stop{1.0};
    std::size_t count{2};
};

// "a:b:n" with a < b and n >= 2. Throws std::invalid_argument.
Range parse_range(const std::string& text);

// start + i (stop - start) / (count - 1), with both endpoints exact.
double grid_point(const Range& r, std::size_t i);
std::vector<double> grid(const Range& r);

// RABI_BERRY_THREADS if set to a positive integer, else hardware concurrency.
std::size_t worker_count();

// Runs task(i) for i in [0, n) on a pool. The first exception (lowest index) is rethrown
// after all workers finish, so failures do not depend on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& task);

} // namespace rabiberry::cli
