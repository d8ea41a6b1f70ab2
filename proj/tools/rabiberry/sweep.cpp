#include "sweep.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <stdexcept>
#include <thread>

namespace rabiberry::cli {
namespace {

double parse_double(const std::string& s) {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
        throw std::invalid_argument("not a number: '" + s + "'");
    }
    return v;
}

} // namespace

Range parse_range(const std::string& text) {
    const auto c1 = text.find(':');
    const auto c2 = c1 == std::string::npos ? c1 : text.find(':', c1 + 1);
    if (c2 == std::string::npos || text.find(':', c2 + 1) != std::string::npos) {
        throw std::invalid_argument("range must look like start:stop:count, got '" + text + "'");
    }
    Range r;
    r.start = parse_double(text.substr(0, c1));
    r.stop = parse_double(text.substr(c1 + 1, c2 - c1 - 1));
    const std::string n = text.substr(c2 + 1);
    std::size_t count = 0;
    const auto res = std::from_chars(n.data(), n.data() + n.size(), count);
    if (res.ec != std::errc() || res.ptr != n.data() + n.size()) {
        throw std::invalid_argument("range count is not an integer: '" + n + "'");
    }
    r.count = count;
    if (!std::isfinite(r.start) || !std::isfinite(r.stop) || !(r.start < r.stop)) {
        throw std::invalid_argument("range needs finite start < stop");
    }
    if (r.count < 2) throw std::invalid_argument("range needs at least 2 points");
    return r;
}

double grid_point(const Range& r, std::size_t i) {
    if (i == 0) return r.start;
    if (i + 1 == r.count) return r.stop;
    return r.start + static_cast<double>(i) * (r.stop - r.start) / static_cast<double>(r.count - 1);
}

std::vector<double> grid(const Range& r) {
    std::vector<double> out(r.count);
    for (std::size_t i = 0; i < r.count; ++i) out[i] = grid_point(r, i);
    return out;
}

std::size_t worker_count() {
    if (const char* env = std::getenv("RABI_BERRY_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& task) {
    if (n == 0) return;
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                task(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const std::size_t threads = std::min(worker_count(), n);
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

} // namespace rabiberry::cli
