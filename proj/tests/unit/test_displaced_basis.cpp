#include <doctest.h>

#include "rabiberry/displaced_basis.hpp"
#include "rabiberry/errors.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

using namespace rabiberry;

TEST_CASE("dmn_reference examples") {
    for (double a : {0.0, 0.2, 0.5, 1.3}) {
        CHECK(dmn_reference(a, 0, 0) == doctest::Approx(std::exp(-2.0 * a * a)).epsilon(1e-14));
    }
    CHECK(dmn_reference(0.5, 0, 1) == doctest::Approx(std::exp(-0.5)).epsilon(1e-14));
    CHECK(dmn_reference(0.5, 0, 1) == doctest::Approx(0.6065307).epsilon(1e-7));
    CHECK(std::abs(dmn_reference(0.5, 1, 1)) <= 1e-15);
    // alpha = 0 keeps only k = m = n: (-1)^m
    CHECK(dmn_reference(0.0, 3, 3) == -1.0);
    CHECK(dmn_reference(0.0, 4, 4) == 1.0);
    CHECK(dmn_reference(0.0, 2, 3) == 0.0);
    CHECK_THROWS_AS(dmn_reference(0.3, 61, 0), ValidationError);
}

TEST_CASE("dmn_reference refuses catastrophic cancellation") {
    CHECK_THROWS_AS(dmn_reference(4.0, 60, 60), PrecisionError);
    CHECK_NOTHROW(dmn_reference(0.3, 20, 20));
}

TEST_CASE("dmn matches the reference sum for m, n <= 20") {
    // The alternating sum itself is only good to its 1e-8 guard here; the 80-digit
    // table below is the tight check.
    for (double a : {-0.8, -0.3, 0.05, 0.3, 0.5, 0.9, 1.2}) {
        for (std::size_t m = 0; m <= 20; ++m) {
            for (std::size_t n = 0; n <= 20; ++n) {
                CHECK(std::abs(dmn(a, m, n) - dmn_reference(a, m, n)) <= 1e-8);
            }
        }
    }
    CHECK(std::abs(dmn(0.3, 7, 7) - dmn_reference(0.3, 7, 7)) <= 1e-10);
    CHECK(dmn(0.5, 0, 1) == doctest::Approx(0.6065307).epsilon(1e-7));
}

TEST_CASE("dmn at zero displacement is (-1)^m delta_mn") {
    for (std::size_t m = 0; m < 30; ++m) {
        for (std::size_t n = 0; n < 30; ++n) {
            const double expected = m == n ? (m % 2 == 0 ? 1.0 : -1.0) : 0.0;
            CHECK(dmn(0.0, m, n) == expected);
        }
    }
}

TEST_CASE("dmn matches 80-digit golden values at large indices") {
    std::ifstream in(std::string(RB_GOLDEN_DIR) + "/dmn_high_precision.csv");
    REQUIRE(in.good());
    std::string line;
    int rows = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#' || line.rfind("alpha", 0) == 0) continue;
        std::istringstream ss(line);
        std::string a, m, n, v;
        std::getline(ss, a, ',');
        std::getline(ss, m, ',');
        std::getline(ss, n, ',');
        std::getline(ss, v, ',');
        const double got = dmn(std::stod(a), std::stoul(m), std::stoul(n));
        INFO("alpha=" << a << " m=" << m << " n=" << n);
        CHECK(std::abs(got - std::stod(v)) <= 1e-10);
        ++rows;
    }
    CHECK(rows == 36);
}

TEST_CASE("dmn symmetry, displacement parity and bound") {
    for (double a : {0.1, 0.6, 1.0, 2.0}) {
        for (std::size_t m = 0; m <= 60; m += 3) {
            for (std::size_t n = 0; n <= 60; n += 2) {
                const double v = dmn(a, m, n);
                CHECK(v == dmn(a, n, m));
                CHECK(std::abs(v) <= 1.0);
                const double sign = (m + n) % 2 == 0 ? 1.0 : -1.0;
                CHECK(std::abs(dmn(-a, m, n) - sign * v) <= 1e-12);
            }
        }
    }
    CHECK_THROWS_AS(dmn(0.5, kMaxDisplacedIndex + 1, 0), ValidationError);
}

TEST_CASE("dmn_matrix examples") {
    const auto zero = dmn_matrix(0.0, 3);
    CHECK(zero.size() == 4);
    for (std::size_t m = 0; m < 4; ++m) {
        for (std::size_t n = 0; n < 4; ++n) {
            CHECK(zero(m, n) == (m == n ? (m % 2 == 0 ? 1.0 : -1.0) : 0.0));
        }
    }

    const auto half = dmn_matrix(0.5, 1);
    const double e = std::exp(-0.5);
    CHECK(half(0, 0) == doctest::Approx(e).epsilon(1e-14));
    CHECK(half(0, 1) == doctest::Approx(e).epsilon(1e-14));
    CHECK(half(1, 0) == doctest::Approx(e).epsilon(1e-14));
    CHECK(std::abs(half(1, 1)) <= 1e-15);
}

TEST_CASE("dmn_matrix rows are sub-unitary and fill up with M") {
    // The rows of <m|D(2 alpha)|n> are rows of a unitary operator.
    const auto d = dmn_matrix(0.3, 40);
    for (std::size_t r = 0; r <= 40; ++r) {
        double sum = 0.0;
        for (std::size_t n = 0; n <= 40; ++n) sum += d(r, n) * d(r, n);
        CHECK(sum <= 1.0 + 1e-12);
        if (r <= 20) CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    }
    double prev = 0.0;
    for (std::size_t m : {2u, 5u, 10u, 20u}) {
        const auto dm = dmn_matrix(0.8, m);
        double sum = 0.0;
        for (std::size_t n = 0; n <= m; ++n) sum += dm(0, n) * dm(0, n);
        CHECK(sum >= prev);
        prev = sum;
    }
    CHECK(prev == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("displaced_fock_coeffs examples") {
    const double a = 0.7;
    const auto vac = displaced_fock_coeffs(a, 0, 30);
    double fact = 1.0;
    for (std::size_t k = 0; k <= 30; ++k) {
        if (k > 0) fact *= static_cast<double>(k);
        const double expected = std::exp(-0.5 * a * a) * std::pow(-a, static_cast<double>(k)) / std::sqrt(fact);
        CHECK(std::abs(vac.coeffs[k] - expected) <= 1e-15);
    }

    const auto bare = displaced_fock_coeffs(0.0, 4, 10);
    for (std::size_t k = 0; k <= 10; ++k) CHECK(bare.coeffs[k] == (k == 4 ? 1.0 : 0.0));
    CHECK_FALSE(bare.truncated);

    const auto one = displaced_fock_coeffs(0.5, 1, 40);
    double norm = 0.0;
    for (double c : one.coeffs) norm += c * c;
    CHECK(std::abs(norm - 1.0) <= 1e-12);

    const auto cut = displaced_fock_coeffs(2.0, 3, 6);
    CHECK(cut.truncated);
    CHECK(cut.tail_weight > 1e-10);
    CHECK_THROWS_AS(displaced_fock_coeffs(0.5, 1, 0), ValidationError);
}

TEST_CASE("displaced number states are orthonormal") {
    for (double a : {0.2, 0.6, 1.0}) {
        std::vector<std::vector<double>> c;
        for (std::size_t n = 0; n <= 10; ++n) c.push_back(displaced_fock_coeffs(a, n, 80).coeffs);
        for (std::size_t m = 0; m <= 10; ++m) {
            for (std::size_t n = 0; n <= 10; ++n) {
                double dot = 0.0;
                for (std::size_t k = 0; k < c[m].size(); ++k) dot += c[m][k] * c[n][k];
                CHECK(std::abs(dot - (m == n ? 1.0 : 0.0)) <= 1e-10);
            }
        }
    }
}

TEST_CASE("D_mn equals the overlap _alpha<m| (-1)^n |n>_-alpha") {
    for (double a : {0.15, 0.5, 0.9}) {
        for (std::size_t m = 0; m <= 10; ++m) {
            const auto cm = displaced_fock_coeffs(a, m, 90).coeffs;
            for (std::size_t n = 0; n <= 10; ++n) {
                const auto cn = displaced_fock_coeffs(-a, n, 90).coeffs;
                double dot = 0.0;
                for (std::size_t k = 0; k < cm.size(); ++k) dot += cm[k] * cn[k];
                if (n % 2 == 1) dot = -dot;
                CHECK(std::abs(dot - dmn(a, m, n)) <= 1e-8);
            }
        }
    }
}
