#include "rabiberry/displaced_basis.hpp"

#include "rabiberry/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace rabiberry {
namespace {

constexpr double kReferenceErrorBudget = 1e-8;

// Keeps the Laguerre recurrence inside double range; the factor is folded into a log scale.
constexpr double kRescaleThreshold = 1e150;

void check_index(std::size_t m, std::size_t n, std::size_t cap, const char* where) {
    if (m > cap || n > cap) {
        throw ValidationError(std::string(where) + ": index exceeds " + std::to_string(cap));
    }
}

} // namespace

double dmn_reference(double alpha, std::size_t m, std::size_t n) {
    check_index(m, n, kMaxReferenceIndex, "dmn_reference");
    if (!std::isfinite(alpha)) throw ValidationError("dmn_reference: alpha must be finite");

    const double two_alpha = 2.0 * alpha;
    const double log_two_alpha = std::log(std::abs(two_alpha));
    const double log_norm = 0.5 * (log_factorial(m) + log_factorial(n)) - 2.0 * alpha * alpha;

    double sum = 0.0;
    double abs_sum = 0.0;
    for (std::size_t k = 0; k <= std::min(m, n); ++k) {
        const std::size_t power = m + n - 2 * k;
        double sign = (k % 2 == 0) ? 1.0 : -1.0;
        double log_mag = log_norm - log_factorial(m - k) - log_factorial(n - k) - log_factorial(k);
        if (power > 0) {
            if (two_alpha == 0.0) continue;
            log_mag += static_cast<double>(power) * log_two_alpha;
            if (two_alpha < 0.0 && power % 2 == 1) sign = -sign;
        }
        const double term = sign * std::exp(log_mag);
        sum += term;
        abs_sum += std::abs(term);
    }

    const double rounding = std::numeric_limits<double>::epsilon() * abs_sum;
    if (rounding > kReferenceErrorBudget) {
        throw PrecisionError("dmn_reference: cancellation too severe at alpha=" +
                             std::to_string(alpha) + ", m=" + std::to_string(m) +
                             ", n=" + std::to_string(n));
    }
    return sum;
}

double dmn(double alpha, std::size_t m, std::size_t n) {
    check_index(m, n, kMaxDisplacedIndex, "dmn");
    if (!std::isfinite(alpha)) throw ValidationError("dmn: alpha must be finite");

    const std::size_t lo = std::min(m, n);
    const std::size_t hi = std::max(m, n);
    const std::size_t order = hi - lo;
    const double lo_sign = (lo % 2 == 0) ? 1.0 : -1.0;

    if (alpha == 0.0) return m == n ? lo_sign : 0.0;

    // Generalized Laguerre L_lo^(order)(x), upward in the degree.
    const double x = 4.0 * alpha * alpha;
    const double a = static_cast<double>(order);
    double log_scale = 0.0;
    double prev = 1.0;
    double cur = 1.0;
    if (lo >= 1) {
        cur = 1.0 + a - x;
        for (std::size_t j = 1; j < lo; ++j) {
            const double jd = static_cast<double>(j);
            const double next = ((2.0 * jd + 1.0 + a - x) * cur - (jd + a) * prev) / (jd + 1.0);
            prev = cur;
            cur = next;
            if (std::abs(cur) > kRescaleThreshold) {
                prev /= kRescaleThreshold;
                cur /= kRescaleThreshold;
                log_scale += std::log(kRescaleThreshold);
            }
        }
    }
    if (cur == 0.0) return 0.0;

    double sign = lo_sign * (cur < 0.0 ? -1.0 : 1.0);
    if (alpha < 0.0 && order % 2 == 1) sign = -sign;
    const double log_prefactor = 0.5 * (log_factorial(lo) - log_factorial(hi)) +
                                 a * std::log(2.0 * std::abs(alpha)) - 2.0 * alpha * alpha;
    return sign * std::exp(log_prefactor + std::log(std::abs(cur)) + log_scale);
}

DMatrix::DMatrix(double alpha, std::size_t max_index) : alpha_(alpha), entries_(max_index + 1) {
    for (std::size_t m = 0; m <= max_index; ++m) {
        for (std::size_t n = 0; n <= m; ++n) {
            entries_.set(m, n, dmn(alpha, m, n));
        }
    }
}

DMatrix dmn_matrix(double alpha, std::size_t max_index) { return DMatrix(alpha, max_index); }

DisplacedFockExpansion displaced_fock_coeffs(double alpha, std::size_t n, std::size_t n_cut) {
    if (n_cut == 0) throw ValidationError("displaced_fock_coeffs: n_cut must be positive");
    if (!std::isfinite(alpha)) throw ValidationError("displaced_fock_coeffs: alpha must be finite");

    std::vector<double> c(n_cut + 1);
    c[0] = std::exp(-0.5 * alpha * alpha);
    for (std::size_t k = 1; k <= n_cut; ++k) {
        c[k] = c[k - 1] * (-alpha) / std::sqrt(static_cast<double>(k));
    }

    std::vector<double> next(n_cut + 1);
    for (std::size_t j = 1; j <= n; ++j) {
        const double inv = 1.0 / std::sqrt(static_cast<double>(j));
        next[0] = alpha * c[0] * inv;
        for (std::size_t k = 1; k <= n_cut; ++k) {
            next[k] = (std::sqrt(static_cast<double>(k)) * c[k - 1] + alpha * c[k]) * inv;
        }
        c.swap(next);
    }

    DisplacedFockExpansion out;
    double norm2 = 0.0;
    for (double v : c) norm2 += v * v;
    out.tail_weight = std::max(0.0, 1.0 - norm2);
    out.truncated = out.tail_weight > 1e-10;
    out.coeffs = std::move(c);
    return out;
}

} // namespace rabiberry
