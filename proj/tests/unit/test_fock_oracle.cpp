#include <doctest.h>

#include "rabiberry/errors.hpp"
#include "rabiberry/fock_oracle.hpp"
#include "rabiberry/rwa.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

using namespace rabiberry;

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

TEST_CASE("build_hamiltonian examples") {
    const auto p = make_params(1.0, 1.0, 0.5);
    const auto rwa = build_hamiltonian(p, Model::Rwa, 3);
    CHECK(rwa.dimension() == 8);
    CHECK(rwa(basis_index(0, 0), basis_index(0, 0)) == 0.5);
    CHECK(rwa(basis_index(0, 1), basis_index(0, 1)) == -0.5);
    CHECK(rwa(basis_index(2, 1), basis_index(2, 1)) == 1.5);
    CHECK(rwa(basis_index(0, 0), basis_index(1, 1)) == 0.5);
    CHECK(rwa(basis_index(1, 0), basis_index(2, 1)) == doctest::Approx(0.5 * std::sqrt(2.0)));
    CHECK(rwa(basis_index(0, 1), basis_index(1, 0)) == 0.0);

    const auto full = build_hamiltonian(p, Model::Full, 3);
    CHECK(full(basis_index(0, 1), basis_index(1, 0)) == 0.5);
    CHECK(full(basis_index(0, 0), basis_index(1, 1)) == 0.5);

    const auto fx = build_hamiltonian(p, Model::FullX, 3);
    CHECK(fx(basis_index(0, 0), basis_index(0, 1)) == -0.5);
    CHECK(fx(basis_index(0, 0), basis_index(1, 0)) == 0.5);
    CHECK(fx(basis_index(0, 1), basis_index(1, 1)) == -0.5);

    CHECK_THROWS_AS(build_hamiltonian(p, Model::Rwa, 1), ValidationError);
}

TEST_CASE("Full and FullX are the same operator in rotated frames") {
    const auto p = make_params(1.0, 0.7, 0.9);
    const std::size_t nc = 30;
    const Eigen::MatrixXd v = spin_rotation(nc);
    const Eigen::MatrixXd full = build_hamiltonian(p, Model::Full, nc).to_dense();
    const Eigen::MatrixXd fx = build_hamiltonian(p, Model::FullX, nc).to_dense();
    CHECK((v.transpose() * full * v - fx).cwiseAbs().maxCoeff() <= 1e-12);

    const Eigen::MatrixXd pp = parity_operator(Model::Full, nc).to_dense();
    const Eigen::MatrixXd pi = parity_operator(Model::FullX, nc).to_dense();
    CHECK((v.transpose() * pp * v - pi).cwiseAbs().maxCoeff() <= 1e-12);

    const auto a = eigh(build_hamiltonian(p, Model::Full, nc)).eigenvalues;
    const auto b = eigh(build_hamiltonian(p, Model::FullX, nc)).eigenvalues;
    CHECK((a - b).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("commutators with the parity operators vanish") {
    for (double g : {0.0, 0.4, 1.0}) {
        for (double w0 : {0.2, 1.0, 2.0}) {
            const auto p = make_params(1.0, w0, g);
            CHECK(commutator_norm(build_hamiltonian(p, Model::Rwa, 40), parity_operator(Model::Rwa, 40)) <= 1e-12);
            CHECK(commutator_norm(build_hamiltonian(p, Model::Full, 40), parity_operator(Model::Full, 40)) <= 1e-12);
            CHECK(commutator_norm(build_hamiltonian(p, Model::FullX, 40), parity_operator(Model::FullX, 40)) <= 1e-12);
        }
    }
    // sigma_x coupling does not commute with sigma_x-type parity
    const auto p = make_params(1.0, 1.0, 0.5);
    CHECK(commutator_norm(build_hamiltonian(p, Model::Full, 10), parity_operator(Model::FullX, 10)) > 0.1);
}

TEST_CASE("parity operator entries") {
    const auto pp = parity_operator(Model::Rwa, 3);
    CHECK(pp(basis_index(0, 0), basis_index(0, 0)) == -1.0);
    CHECK(pp(basis_index(0, 1), basis_index(0, 1)) == 1.0);
    CHECK(pp(basis_index(1, 0), basis_index(1, 0)) == 1.0);
    CHECK(pp(basis_index(1, 1), basis_index(1, 1)) == -1.0);
    const auto pi = parity_operator(Model::FullX, 3);
    CHECK(pi(basis_index(0, 0), basis_index(0, 1)) == 1.0);
    CHECK(pi(basis_index(1, 0), basis_index(1, 1)) == -1.0);
    CHECK(pi(basis_index(0, 0), basis_index(0, 0)) == 0.0);
}

TEST_CASE("oracle spectrum examples") {
    const auto zero = make_params(1.0, 1.0, 0.0);
    const auto s = oracle_spectrum(zero, Model::Rwa, 10, 3);
    REQUIRE(s.size() == 3);
    CHECK(s[0].energy == doctest::Approx(-0.5));
    CHECK(s[0].parity == Parity::Even);
    CHECK(s[0].mean_boson == doctest::Approx(0.0));

    const auto p = make_params(1.0, 1.0, 0.5);
    const auto fx = oracle_spectrum(p, Model::FullX, 120, 6);
    CHECK(fx[0].energy == doctest::Approx(-0.6332942354616).epsilon(1e-12));
    CHECK(fx[0].parity == Parity::Even);
    CHECK(fx[1].parity == Parity::Odd);
    for (const auto& st : fx) {
        CHECK(std::abs(st.parity_expectation) >= 1.0 - 1e-8);
        CHECK(st.converged);
        CHECK(st.amplitudes.norm() == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("oracle parities agree across frames and labelings") {
    const auto p = make_params(1.0, 1.3, 0.7);
    const auto full = oracle_spectrum(p, Model::Full, 80, 8);
    const auto fx = oracle_spectrum(p, Model::FullX, 80, 8);
    const auto blocks = oracle_spectrum(p, Model::FullX, 80, 8, ParityLabeling::BlockProjection);
    for (std::size_t i = 0; i < 8; ++i) {
        CHECK(full[i].parity == fx[i].parity);
        CHECK(blocks[i].parity == fx[i].parity);
        CHECK(std::abs(full[i].energy - fx[i].energy) <= 1e-10);
        CHECK(std::abs(blocks[i].energy - fx[i].energy) <= 1e-10);
        CHECK(std::abs(full[i].mean_boson - fx[i].mean_boson) <= 1e-9);
    }
}

TEST_CASE("degenerate levels are still labeled by parity") {
    // g = 0 at resonance: |n,e> and |n+1,g> are degenerate
    const auto p = make_params(1.0, 1.0, 0.0);
    for (Model m : {Model::Rwa, Model::Full, Model::FullX}) {
        for (const auto& s : oracle_spectrum(p, m, 20, 12)) {
            CHECK(std::abs(s.parity_expectation) >= 1.0 - 1e-8);
        }
    }
}

TEST_CASE("RWA levels follow (-1)^(n+1) parity with an even ground state") {
    const auto p = make_params(1.0, 1.4, 0.3);
    const auto s = oracle_spectrum(p, Model::Rwa, 12, 20);
    CHECK(s[0].parity == Parity::Even);
    for (const auto& e : rwa_spectrum(p, 3)) {
        if (std::holds_alternative<GroundRwa>(e.label)) continue;
        const auto& d = std::get<DressedRwa>(e.label);
        const Parity expected = d.n % 2 == 0 ? Parity::Odd : Parity::Even;
        bool matched = false;
        for (const auto& o : s) {
            if (std::abs(o.energy - e.energy) <= 1e-9) {
                CHECK(o.parity == expected);
                matched = true;
            }
        }
        CHECK(matched);
    }
}

TEST_CASE("oracle energies converge with n_cut") {
    const auto p = make_params(1.0, 1.0, 1.0);
    const auto a = oracle_spectrum(p, Model::FullX, 100, 6);
    const auto b = oracle_spectrum(p, Model::FullX, 200, 6);
    for (std::size_t i = 0; i < 6; ++i) CHECK(std::abs(a[i].energy - b[i].energy) <= 1e-10);
    const auto coarse = oracle_spectrum(p, Model::FullX, 4, 3);
    CHECK_FALSE(coarse[0].converged);
}

TEST_CASE("oracle matches the numpy reference") {
    std::ifstream in(std::string(RB_GOLDEN_DIR) + "/fullx_reference.csv");
    REQUIRE(in.good());
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#' || line.rfind("omega", 0) == 0) continue;
        std::istringstream ss(line);
        std::string f[7];
        for (auto& x : f) std::getline(ss, x, ',');
        const auto p = make_params(std::stod(f[0]), std::stod(f[1]), std::stod(f[2]));
        const auto level = static_cast<std::size_t>(std::stoul(f[3]));
        const auto s = oracle_spectrum(p, Model::FullX, 200, level + 1)[level];
        INFO(line);
        CHECK(to_string(s.parity) == f[4]);
        CHECK(std::abs(s.energy - std::stod(f[5])) <= 1e-10);
        CHECK(std::abs(berry_phase_photon(s) - std::stod(f[6])) <= 1e-9);
    }
}

TEST_CASE("Wilson-loop estimator") {
    std::vector<double> bare(5, 0.0);
    bare[3] = 1.0;
    CHECK(berry_phase_wilson(bare, 64) == doctest::Approx(6.0 * std::numbers::pi).epsilon(1e-14));
    CHECK_THROWS_AS(berry_phase_wilson(bare, 16), AliasingError);
    CHECK_NOTHROW(berry_phase_wilson(bare, 17));

    const auto p = make_params(1.0, 1.0, 0.5);
    const auto s = oracle_spectrum(p, Model::FullX, 120, 4);
    for (const auto& st : s) {
        CHECK(std::abs(berry_phase_wilson(st, 10000) - berry_phase_photon(st)) <= 1e-3);
    }
}

TEST_CASE("Wilson-loop error decays at second order") {
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> ug(0.1, 1.0);
    std::uniform_real_distribution<double> uw(0.5, 1.5);
    std::uniform_int_distribution<int> ul(0, 5);
    for (int trial = 0; trial < 5; ++trial) {
        const auto p = make_params(1.0, uw(rng), ug(rng));
        const auto level = static_cast<std::size_t>(ul(rng));
        const auto st = oracle_spectrum(p, Model::FullX, 120, level + 1)[level];
        REQUIRE(st.converged);
        const double exact = berry_phase_photon(st);
        double prev = std::abs(berry_phase_wilson(st, 128) - exact);
        for (std::size_t n = 256; n <= 16384; n *= 2) {
            const double err = std::abs(berry_phase_wilson(st, n) - exact);
            if (prev > 1e-9) {
                CHECK(prev / err == doctest::Approx(4.0).epsilon(0.05));
            }
            prev = err;
        }
    }
}
