#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "dispest/errors.hpp"
#include "dispest/rng.hpp"
#include "dispest/wigner.hpp"
#include "oracles.hpp"

using namespace dispest;
using dispest::testing::grid_convolution_oracle;
using dispest::testing::kraus_loss_oracle;
using dispest::testing::mixture_wigner_oracle;
using dispest::testing::wigner_transform_oracle;

namespace {

constexpr double kPi = std::numbers::pi;

PhotonMixture imperfect() {
    return PhotonMixture({{0, 0.25}, {1, 0.73}, {2, 0.02}});
}

// small pool of mixtures for property-style checks
std::vector<PhotonMixture> mixture_pool() {
    return {
        PhotonMixture::fock(0),
        PhotonMixture::fock(1),
        PhotonMixture::fock(2),
        imperfect(),
        PhotonMixture({{0, 0.5}, {1, 0.5}}),
        PhotonMixture({{0, 0.1}, {1, 0.6}, {2, 0.3}}),
        PhotonMixture({{1, 0.9}, {2, 0.1}}),
        apply_loss(PhotonMixture::fock(1), 0.4),
        apply_loss(imperfect(), 0.25),
    };
}

}  // namespace

TEST_SUITE_BEGIN("wigner");

TEST_CASE("fock wigner functions match the transform oracle") {
    // frozen values first computed with wigner_transform_oracle
    CHECK(fock_wigner(0).value({0.0, 0.0}) == doctest::Approx(1.0 / kPi).epsilon(1e-12));
    CHECK(fock_wigner(1).value({0.0, 0.0}) ==
          doctest::Approx(-0.3183098861837907).epsilon(1e-12));
    CHECK(fock_wigner(1).value_at(0.5) == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
    CHECK(fock_wigner(1).value({2.0, 0.0}) ==
          doctest::Approx(0.04081034251039471).epsilon(1e-12));

    for (int n = 0; n <= 2; ++n) {
        const RadialPolyGaussian w = fock_wigner(n);
        for (double x : {0.0, 0.3, 1.0, 2.0})
            for (double p : {0.0, -0.7, 1.5})
                CHECK(w.value({x, p}) ==
                      doctest::Approx(wigner_transform_oracle(n, x, p)).scale(1.0).epsilon(1e-9));
    }
}

TEST_CASE("fock wigner normalization and capability bounds") {
    for (int n = 0; n <= kMaxFockNumber; ++n)
        CHECK(fock_wigner(n).integral() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK_THROWS_AS(fock_wigner(-1), CapabilityError);
    CHECK_THROWS_AS(fock_wigner(kMaxFockNumber + 1), CapabilityError);
}

TEST_CASE("mixture wigner") {
    SUBCASE("singleton mixture equals the pure state") {
        const RadialPolyGaussian a = mixture_wigner(PhotonMixture({{0, 1.0}}));
        const RadialPolyGaussian b = fock_wigner(0);
        REQUIRE(a.coeffs().size() == b.coeffs().size());
        CHECK(a.lambda() == b.lambda());
        for (std::size_t i = 0; i < a.coeffs().size(); ++i)
            CHECK(a.coeffs()[i] == doctest::Approx(b.coeffs()[i]).epsilon(1e-15));
    }
    SUBCASE("imperfect single-photon value at the origin") {
        // (0.25 - 0.73 + 0.02)/pi, also recovered by the transform oracle
        const double at_origin = mixture_wigner(imperfect()).value({0.0, 0.0});
        CHECK(at_origin == doctest::Approx(-0.1464225476445437).epsilon(1e-12));
        CHECK(at_origin ==
              doctest::Approx(mixture_wigner_oracle(imperfect(), 0.0, 0.0)).epsilon(1e-9));
    }
    SUBCASE("half vacuum, half single photon cancels at the origin") {
        CHECK(mixture_wigner(PhotonMixture({{0, 0.5}, {1, 0.5}})).value({0.0, 0.0}) ==
              doctest::Approx(0.0).scale(1.0).epsilon(1e-14));
    }
    SUBCASE("normalization for every pool mixture") {
        for (const PhotonMixture& m : mixture_pool())
            CHECK(mixture_wigner(m).integral() == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("photon mixture invariants") {
    CHECK_THROWS_AS(PhotonMixture({{0, 0.5}, {1, 0.6}}), std::invalid_argument);
    CHECK_THROWS_AS(PhotonMixture({{0, -0.1}, {1, 1.1}}), std::invalid_argument);
    CHECK_THROWS_AS(PhotonMixture({{1, 0.5}, {1, 0.5}}), std::invalid_argument);
    CHECK_THROWS_AS(PhotonMixture({{-1, 1.0}}), std::invalid_argument);
    CHECK(PhotonMixture({{0, 0.0}, {1, 1.0}}).weights().size() == 1);  // zeros dropped
}

TEST_CASE("apply_loss") {
    SUBCASE("identity channel") {
        const PhotonMixture out = apply_loss(PhotonMixture::fock(1), 0.0);
        REQUIRE(out.weights().size() == 1);
        CHECK(out.weight(1) == doctest::Approx(1.0).epsilon(1e-15));
    }
    SUBCASE("half loss on a single photon") {
        const PhotonMixture out = apply_loss(PhotonMixture::fock(1), 0.5);
        CHECK(out.weight(0) == doctest::Approx(0.5).epsilon(1e-15));
        CHECK(out.weight(1) == doctest::Approx(0.5).epsilon(1e-15));
    }
    SUBCASE("two photons, quarter loss: binomial weights and Kraus oracle") {
        const PhotonMixture out = apply_loss(PhotonMixture::fock(2), 0.25);
        CHECK(out.weight(0) == doctest::Approx(0.0625).epsilon(1e-14));
        CHECK(out.weight(1) == doctest::Approx(0.375).epsilon(1e-14));
        CHECK(out.weight(2) == doctest::Approx(0.5625).epsilon(1e-14));
        const std::vector<double> kraus = kraus_loss_oracle(PhotonMixture::fock(2), 0.25);
        for (int n = 0; n <= 2; ++n)
            CHECK(out.weight(n) == doctest::Approx(kraus[n]).epsilon(1e-12));
    }
    SUBCASE("full loss maps everything to vacuum") {
        const PhotonMixture out = apply_loss(imperfect(), 1.0);
        CHECK(out.weight(0) == doctest::Approx(1.0).epsilon(1e-15));
    }
    SUBCASE("domain") {
        CHECK_THROWS_AS(apply_loss(imperfect(), -0.01), std::domain_error);
        CHECK_THROWS_AS(apply_loss(imperfect(), 1.01), std::domain_error);
    }
    SUBCASE("composition: two channels equal one combined channel") {
        RngStream rng(2024, 0);
        for (const PhotonMixture& m : mixture_pool()) {
            const double a = 0.8 * rng.next_unit();
            const double b = 0.8 * rng.next_unit();
            const PhotonMixture two = apply_loss(apply_loss(m, a), b);
            const PhotonMixture one = apply_loss(m, 1.0 - (1.0 - a) * (1.0 - b));
            for (int n = 0; n <= m.max_photon(); ++n)
                CHECK(two.weight(n) == doctest::Approx(one.weight(n)).epsilon(1e-12));
        }
    }
    SUBCASE("lossy state against the Kraus oracle") {
        const PhotonMixture out = apply_loss(imperfect(), 0.37);
        const std::vector<double> kraus = kraus_loss_oracle(imperfect(), 0.37);
        for (int n = 0; n <= 2; ++n)
            CHECK(out.weight(n) == doctest::Approx(kraus[n]).epsilon(1e-12));
    }
}

TEST_CASE("convolution closed form") {
    const RadialPolyGaussian w0 = fock_wigner(0);
    const RadialPolyGaussian w1 = fock_wigner(1);

    SUBCASE("vacuum pair: Gaussian with lambda 1/2") {
        const RadialPolyGaussian k = convolve(w0, w0);
        CHECK(k.lambda() == doctest::Approx(0.5).epsilon(1e-14));
        CHECK(k.degree() == 0);
        CHECK(k.value({0.0, 0.0}) == doctest::Approx(0.15915494309189535).epsilon(1e-13));
        // frozen from grid_convolution_oracle(w0, w0, 0, 0)
        CHECK(k.value({0.0, 0.0}) ==
              doctest::Approx(grid_convolution_oracle(w0, w0, 0.0, 0.0)).epsilon(1e-9));
    }
    SUBCASE("single-photon pair at the origin: purity value") {
        const RadialPolyGaussian k = convolve(w1, w1);
        CHECK(k.value({0.0, 0.0}) == doctest::Approx(1.0 / (2.0 * kPi)).epsilon(1e-13));
        CHECK(k.value({0.0, 0.0}) ==
              doctest::Approx(grid_convolution_oracle(w1, w1, 0.0, 0.0)).epsilon(1e-9));
    }
    SUBCASE("near-delta factor acts as the identity") {
        // unit-mass Gaussian spike: lambda = 1e4, c0 = lambda/pi
        const RadialPolyGaussian spike(1e4, {1e4 / kPi});
        CHECK(spike.integral() == doctest::Approx(1.0).epsilon(1e-12));
        const RadialPolyGaussian f = mixture_wigner(imperfect());
        const RadialPolyGaussian fs = convolve(f, spike);
        for (double s : {0.0, 0.3, 1.0, 2.5, 6.0})
            CHECK(fs.value_at(s) == doctest::Approx(f.value_at(s)).scale(1.0).epsilon(1e-3));
    }
    SUBCASE("mass is multiplicative") {
        for (const PhotonMixture& a : mixture_pool())
            for (const PhotonMixture& b : mixture_pool()) {
                const RadialPolyGaussian k = convolve(mixture_wigner(a), mixture_wigner(b));
                CHECK(k.integral() == doctest::Approx(1.0).epsilon(1e-9));
            }
    }
    SUBCASE("degree cap") {
        const RadialPolyGaussian w6 = fock_wigner(6);
        CHECK_THROWS_AS(convolve(w6, w6), CapabilityError);
    }
}

TEST_CASE("convolution matches the brute-force grid oracle") {
    // absolute agreement within 1e-6 on [-4,4]^2 for Fock 0..2 mixture pairs
    const std::vector<PhotonMixture> pool = {PhotonMixture::fock(0), PhotonMixture::fock(1),
                                             PhotonMixture::fock(2), imperfect()};
    const std::vector<std::pair<double, double>> points = {
        {0.0, 0.0}, {0.7, 0.0}, {1.0, 1.0}, {-2.0, 0.5}, {3.0, -2.5}, {4.0, 4.0}};
    for (std::size_t i = 0; i < pool.size(); ++i)
        for (std::size_t j = i; j < pool.size(); ++j) {
            const RadialPolyGaussian f = mixture_wigner(pool[i]);
            const RadialPolyGaussian g = mixture_wigner(pool[j]);
            const RadialPolyGaussian k = convolve(f, g);
            for (const auto& [ux, uy] : points) {
                const double closed = k.value({ux, uy});
                const double grid = grid_convolution_oracle(f, g, ux, uy, 8.0, 0.02);
                CHECK(closed == doctest::Approx(grid).scale(1.0).epsilon(1e-6));
            }
        }
}

TEST_CASE("convolutions of wigner functions are nonnegative") {
    for (const PhotonMixture& a : mixture_pool())
        for (const PhotonMixture& b : mixture_pool()) {
            const RadialPolyGaussian k = convolve(mixture_wigner(a), mixture_wigner(b));
            for (int i = 0; i <= 1000; ++i) {
                const double s = 100.0 * i / 1000.0;
                CHECK(k.value_at(s) >= -1e-12);
            }
        }
}

TEST_CASE("overlap identity at the origin") {
    // 2 pi (W_a * W_b)(0) = sum_n a_n b_n for Fock-diagonal states
    for (const PhotonMixture& a : mixture_pool())
        for (const PhotonMixture& b : mixture_pool()) {
            const double lhs =
                2.0 * kPi * convolve(mixture_wigner(a), mixture_wigner(b)).value({0.0, 0.0});
            double rhs = 0.0;
            for (const auto& [n, w] : a.weights()) rhs += w * b.weight(n);
            CHECK(lhs == doctest::Approx(rhs).scale(1.0).epsilon(1e-10));
        }
}

TEST_CASE("evaluate") {
    CHECK(fock_wigner(0).value({1.0, 0.0}) ==
          doctest::Approx(std::exp(-1.0) / kPi).epsilon(1e-14));

    SUBCASE("depends only on the squared radius") {
        const RadialPolyGaussian f = convolve(mixture_wigner(imperfect()), fock_wigner(1));
        RngStream rng(7, 0);
        for (int i = 0; i < 50; ++i) {
            const double s = 100.0 * rng.next_unit();
            const double phi = 2.0 * kPi * rng.next_unit();
            const double rad = std::sqrt(s);
            const double v1 = f.value({rad * std::cos(phi), rad * std::sin(phi)});
            const double v2 = f.value({rad, 0.0});
            CHECK(v1 == doctest::Approx(v2).epsilon(1e-12));
        }
    }
    SUBCASE("stable far into the tail") {
        const RadialPolyGaussian f = convolve(mixture_wigner(imperfect()), fock_wigner(2));
        const double v = f.value_at(100.0);
        CHECK(std::isfinite(v));
        CHECK(v >= 0.0);
        CHECK(v < 1e-15);
    }
}

TEST_CASE("fourier transform closed form") {
    // FT of W_1 is (1 - t/2) exp(-t/4)
    const RadialPolyGaussian ft = fourier_transform(fock_wigner(1));
    CHECK(ft.lambda() == doctest::Approx(0.25).epsilon(1e-15));
    REQUIRE(ft.coeffs().size() == 2);
    CHECK(ft.coeffs()[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(ft.coeffs()[1] == doctest::Approx(-0.5).epsilon(1e-14));
    // value at zero frequency equals the total integral
    for (const PhotonMixture& m : mixture_pool()) {
        const RadialPolyGaussian w = mixture_wigner(m);
        CHECK(fourier_transform(w).value_at(0.0) == doctest::Approx(w.integral()).epsilon(1e-12));
    }
}

TEST_CASE("radial profile") {
    SUBCASE("vacuum at the origin") {
        const std::vector<double> radii = {0.0};
        const auto prof = radial_profile(fock_wigner(0), radii);
        REQUIRE(prof.size() == 1);
        CHECK(prof[0].first == 0.0);
        CHECK(prof[0].second == doctest::Approx(1.0 / kPi).epsilon(1e-14));
    }
    SUBCASE("negative radius rejected") {
        const std::vector<double> radii = {0.5, -0.1};
        CHECK_THROWS_AS(radial_profile(fock_wigner(0), radii), std::domain_error);
    }
    SUBCASE("zero function gives zeros") {
        const RadialPolyGaussian zero(1.0, {0.0});
        const std::vector<double> radii = {0.0, 1.0, 2.0};
        for (const auto& [r, v] : radial_profile(zero, radii)) CHECK(v == 0.0);
    }
    SUBCASE("imperfect self-convolution: local structure near the origin, Gaussian tail") {
        const RadialPolyGaussian k = convolve(mixture_wigner(imperfect()), mixture_wigner(imperfect()));
        std::vector<double> radii;
        for (int i = 0; i <= 400; ++i) radii.push_back(4.0 * i / 400.0);
        const auto prof = radial_profile(k, radii);
        // the central peak falls to a local minimum and rises again: non-monotonic
        double first_min = 1e9;
        std::size_t argmin = 0;
        for (std::size_t i = 0; i < prof.size() / 2; ++i)
            if (prof[i].second < first_min) {
                first_min = prof[i].second;
                argmin = i;
            }
        CHECK(argmin > 0);
        CHECK(argmin < prof.size() / 2 - 1);
        CHECK(prof[0].second > 3.0 * first_min);  // pronounced central peak
        double later_max = 0.0;
        for (std::size_t i = argmin; i < prof.size(); ++i)
            later_max = std::max(later_max, prof[i].second);
        CHECK(later_max > first_min * 1.05);  // secondary ring after the dip
        // the secondary ring peaks near radius 2.1; beyond it the tail decays
        for (std::size_t i = 1; i < prof.size(); ++i)
            if (prof[i - 1].first > 2.3) CHECK(prof[i].second <= prof[i - 1].second + 1e-15);
    }
}

TEST_SUITE_END();
