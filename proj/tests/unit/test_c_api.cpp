#include <doctest.h>

#include "rabiberry/rabiberry.h"

#include <cmath>
#include <cstring>
#include <numbers>
#include <string>
#include <vector>

namespace {

struct Params {
    rb_params* p{nullptr};
    Params(double w, double w0, double g) { REQUIRE(rb_params_create(w, w0, g, &p) == RB_OK); }
    ~Params() { rb_params_destroy(p); }
};

} // namespace

TEST_CASE("version and status strings") {
    CHECK(std::string(rb_version()) == "0.1.0");
    CHECK(std::string(rb_status_string(RB_OK)).size() > 0);
    CHECK(std::string(rb_status_string(RB_ERR_NOT_CONVERGED)) != rb_status_string(RB_OK));
}

TEST_CASE("params validation reports an error message") {
    rb_params* p = nullptr;
    CHECK(rb_params_create(0.0, 1.0, 0.5, &p) == RB_ERR_INVALID_ARGUMENT);
    CHECK(p == nullptr);
    CHECK(std::strlen(rb_last_error()) > 0);
    CHECK(rb_params_create(1.0, 1.0, -0.1, &p) == RB_ERR_INVALID_ARGUMENT);
    CHECK(rb_params_create(NAN, 1.0, 0.1, &p) == RB_ERR_INVALID_ARGUMENT);
    CHECK(rb_params_create(1.0, 1.0, 0.1, nullptr) == RB_ERR_INVALID_ARGUMENT);

    Params ok(1.0, 1.5, 0.4);
    double w, w0, g, d, a;
    REQUIRE(rb_params_get(ok.p, &w, &w0, &g, &d, &a) == RB_OK);
    CHECK(d == doctest::Approx(0.5));
    CHECK(a == doctest::Approx(0.4));
}

TEST_CASE("numeric helpers") {
    double v = 0.0;
    REQUIRE(rb_log_factorial(5, &v) == RB_OK);
    CHECK(v == doctest::Approx(std::log(120.0)));
    REQUIRE(rb_dmn(0.0, 3, 3, &v) == RB_OK);
    CHECK(v == -1.0);
    REQUIRE(rb_dmn(0.5, 0, 0, &v) == RB_OK);
    CHECK(v == doctest::Approx(std::exp(-0.5)));
    CHECK(rb_dmn(0.5, 2000, 0, &v) == RB_ERR_INVALID_ARGUMENT);
}

TEST_CASE("RWA spectrum through the C API") {
    Params p(1.0, 1.0, 0.5);
    std::vector<rb_level> levels(5);
    size_t written = 0;
    CHECK(rb_rwa_spectrum(p.p, 2, levels.data(), levels.size(), &written) == RB_ERR_BUFFER_TOO_SMALL);
    levels.resize(7);
    REQUIRE(rb_rwa_spectrum(p.p, 2, levels.data(), levels.size(), &written) == RB_OK);
    CHECK(written == 7);
    CHECK(levels[0].family == RB_FAMILY_GROUND_RWA);
    CHECK(levels[0].energy == -0.5);
    CHECK(levels[0].berry_phase == 0.0);
    CHECK(levels[0].parity == RB_PARITY_EVEN);
    for (size_t i = 1; i < written; ++i) CHECK(levels[i].energy >= levels[i - 1].energy);

    double phase = 0.0;
    REQUIRE(rb_rwa_berry_phase(p.p, RB_FAMILY_DRESSED_RWA, 0, RB_BRANCH_PLUS, &phase) == RB_OK);
    CHECK(phase == doctest::Approx(std::numbers::pi).epsilon(1e-12));
    CHECK(rb_rwa_berry_phase(p.p, RB_FAMILY_BEYOND_RWA, 0, RB_BRANCH_PLUS, &phase) == RB_ERR_INVALID_ARGUMENT);
}

TEST_CASE("displaced solver, first order and VIBP") {
    Params p(1.0, 1.0, 0.5);
    rb_level lv{};
    CHECK(rb_solve_displaced(p.p, RB_PARITY_EVEN, 1, 1, 1, &lv) == RB_ERR_NOT_CONVERGED);
    REQUIRE(rb_solve_displaced(p.p, RB_PARITY_EVEN, 1, 1, 0, &lv) == RB_OK);
    CHECK(lv.converged == 0);
    CHECK(lv.energy == doctest::Approx(-0.620378).epsilon(1e-6));
    REQUIRE(rb_solve_displaced(p.p, RB_PARITY_EVEN, 40, 1, 1, &lv) == RB_OK);
    CHECK(lv.family == RB_FAMILY_BEYOND_RWA);
    CHECK(std::abs(lv.energy + 0.6332942354616) <= 1e-10);

    rb_first_order fo{};
    REQUIRE(rb_first_order_solution(p.p, RB_PARITY_EVEN, 0, RB_BRANCH_MINUS, &fo) == RB_OK);
    CHECK(fo.mixing == doctest::Approx(4.51872).epsilon(1e-5));
    CHECK(std::abs(fo.berry_phase - 0.538582) <= 1e-5);

    double g1 = 0.0, gc = 0.0;
    REQUIRE(rb_vibp_ground(p.p, 0, &g1) == RB_OK);
    REQUIRE(rb_vibp_ground(p.p, 40, &gc) == RB_OK);
    CHECK(g1 == fo.berry_phase);
    CHECK(std::abs(gc - 0.53179953361784) <= 1e-9);

    size_t m = 0;
    REQUIRE(rb_converge_truncation(p.p, RB_PARITY_EVEN, 2, 1e-8, &m) == RB_OK);
    CHECK(m >= 8);
    CHECK(rb_converge_truncation(p.p, RB_PARITY_EVEN, 2, 0.0, &m) == RB_ERR_INVALID_ARGUMENT);
}

TEST_CASE("oracle and Wilson loop") {
    Params p(1.0, 1.0, 0.5);
    std::vector<rb_level> lv(4);
    REQUIRE(rb_oracle_spectrum(p.p, RB_MODEL_FULLX, 120, 4, lv.data()) == RB_OK);
    CHECK(lv[0].family == RB_FAMILY_FOCK);
    CHECK(lv[0].parity == RB_PARITY_EVEN);
    CHECK(lv[0].index == 0);
    CHECK(lv[1].parity == RB_PARITY_ODD);
    CHECK(lv[1].index == 0);
    double w = 0.0;
    REQUIRE(rb_oracle_wilson(p.p, RB_MODEL_FULLX, 120, 0, 10000, &w) == RB_OK);
    CHECK(std::abs(w - lv[0].berry_phase) <= 1e-3);
    CHECK(rb_oracle_wilson(p.p, RB_MODEL_FULLX, 120, 0, 2, &w) == RB_ERR_ALIASING);
}

TEST_CASE("crosscheck report handle") {
    Params p(1.0, 1.0, 0.3);
    rb_crosscheck_options opt;
    rb_crosscheck_options_default(&opt);
    CHECK(opt.n_cut == 120);
    rb_report* r = nullptr;
    REQUIRE(rb_crosscheck(p.p, &opt, &r) == RB_OK);
    CHECK(rb_report_all_pass(r) == 1);
    const size_t n = rb_report_size(r);
    CHECK(n > 0);
    rb_report_row row{};
    REQUIRE(rb_report_row_at(r, 0, &row) == RB_OK);
    CHECK(std::strlen(row.quantity) > 0);
    CHECK(rb_report_row_at(r, n, &row) == RB_ERR_INVALID_ARGUMENT);
    rb_report_destroy(r);

    opt.variant = RB_VARIANT_FLIPPED_EVEN_SIGN;
    REQUIRE(rb_crosscheck(p.p, &opt, &r) == RB_OK);
    CHECK(rb_report_all_pass(r) == 0);
    rb_report_destroy(r);
}
