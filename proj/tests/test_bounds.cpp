#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "dispest/bounds.hpp"
#include "dispest/estimation.hpp"
#include "dispest/montecarlo.hpp"

using namespace dispest;

TEST_SUITE_BEGIN("bounds");

TEST_CASE("classical limit values") {
    CHECK(classical_limit(0.34, 0.2).v_prime_c ==
          doctest::Approx(0.2905982905982906).epsilon(1e-9));
    CHECK(classical_limit(0.34, 0.2).v_prime_c == doctest::Approx(0.29060).epsilon(1e-4));

    SUBCASE("matches the closed form across priors") {
        for (double v : {0.05, 0.13, 0.34, 0.8, 1.2, 2.0, 5.0})
            CHECK(classical_limit(v, 0.3).v_prime_c ==
                  doctest::Approx(classical_limit_closed_form(v)).epsilon(1e-9));
    }
    SUBCASE("vanishing prior uncertainty: ratio to v tends to 1") {
        const double v = 1e-6;
        CHECK(classical_limit(v, 0.2).v_prime_c / v == doctest::Approx(1.0).epsilon(1e-5));
    }
    SUBCASE("independent of the selection radius") {
        const double ref = classical_limit(0.34, 0.2).v_prime_c;
        for (double r : {0.05, 0.1, 0.7, 1.3, 2.0})
            CHECK(std::abs(classical_limit(0.34, r).v_prime_c - ref) <= 1e-9);
    }
    SUBCASE("strictly increasing in v and below v") {
        double prev = 0.0;
        for (double v : {0.05, 0.1, 0.2, 0.4, 0.8, 1.6, 3.2}) {
            const ClassicalLimit c = classical_limit(v, 0.4);
            CHECK(c.v_prime_c > prev);
            CHECK(c.v_prime_c > 0.0);
            CHECK(c.v_prime_c < v);
            prev = c.v_prime_c;
        }
    }
    SUBCASE("domain") {
        CHECK_THROWS_AS(classical_limit(0.0, 0.2), std::domain_error);
        CHECK_THROWS_AS(classical_limit(0.34, 0.0), std::domain_error);
    }
}

TEST_CASE("vacuum monte carlo reproduces the classical limit") {
    RunConfig cfg;
    cfg.v = 0.34;
    cfg.r = 10.0;  // selection covers the whole outcome bulk
    cfg.probe = PhotonMixture::fock(0);
    cfg.ancilla = PhotonMixture::fock(0);
    cfg.n_events = 300000;
    cfg.seed = 5150;
    const std::vector<EventRecord> events = run_experiment(cfg);
    const ErrorStats stats = estimation_error(events);
    const double v_c = classical_limit(cfg.v, cfg.r).v_prime_c;
    CHECK(std::abs(stats.v_prime - v_c) < 3.0 * stats.std_error);
}

TEST_SUITE_END();
