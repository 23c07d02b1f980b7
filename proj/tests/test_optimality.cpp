#include "doctest.h"

#include <cmath>

#include "cubelsh/optimality.hpp"

using namespace cubelsh;

TEST_SUITE_BEGIN("optimality");

namespace {
constexpr double kRho_08_02 = 0.20625534576960057; // ln 0.9 / ln 0.6, frozen
constexpr double kRho_09_05 = 0.17829854307709050; // ln 0.95 / ln 0.75, frozen
}

TEST_CASE("exhaustive minimum at d=3 (0.8, 0.2): six dictators") {
    const ExhaustiveResult result = exhaustive_min_rho(3, RhoParams(0.8, 0.2), 1e-9);
    CHECK(result.min_rho == doctest::Approx(kRho_08_02).epsilon(1e-12));
    CHECK(result.argmin.size() == 6);
    CHECK(result.dictator_count_expected == 6);
    CHECK(result.argmin_is_exactly_dictators());
}

TEST_CASE("exhaustive minimum at d=1: both dictators, constants skipped") {
    const ExhaustiveResult result = exhaustive_min_rho(1, RhoParams(0.7, 0.3), 1e-9);
    CHECK(result.argmin.size() == 2);
    CHECK(result.argmin_is_exactly_dictators());
}

TEST_CASE("exhaustive minimum at d=2 (0.9, 0.5)") {
    const ExhaustiveResult result = exhaustive_min_rho(2, RhoParams(0.9, 0.5), 1e-9);
    CHECK(result.min_rho == doctest::Approx(kRho_09_05).epsilon(1e-9));
    CHECK(result.argmin.size() == 4);
    CHECK(result.argmin_is_exactly_dictators());
}

TEST_CASE("exhaustive scan rejects d > 4") {
    CHECK_THROWS_AS(exhaustive_min_rho(5, RhoParams(0.8, 0.2), 1e-9), UnsupportedScale);
}

TEST_CASE("fault injection shifts the reported minimum") {
    const WeightProfileTable table = enumerate_weight_profiles(2);
    const RhoParams params(0.9, 0.5);
    const ExhaustiveResult biased = exhaustive_min_rho(table, params, 1e-9, 1e-3);
    CHECK(biased.min_rho == doctest::Approx(kRho_09_05 + 1e-3).epsilon(1e-9));
}

TEST_CASE("main theorem on a reduced grid for d <= 3") {
    for (int d = 1; d <= 3; ++d) {
        const WeightProfileTable table = enumerate_weight_profiles(d);
        for (double alpha = 0.2; alpha < 0.95; alpha += 0.2) {
            for (double beta = 0.1; beta < alpha - 1e-9; beta += 0.2) {
                const RhoParams params(alpha, beta);
                const ExhaustiveResult result = exhaustive_min_rho(table, params, 1e-9);
                CHECK(std::abs(result.min_rho - bitsampling_rho(params)) <= 1e-9);
                CHECK(result.argmin_is_exactly_dictators());
            }
        }
    }
}

TEST_CASE("dictator characterization census") {
    for (int d = 1; d <= 4; ++d) {
        const DictatorCensus census = verify_dictator_characterization(d);
        CHECK(census.count == static_cast<std::uint64_t>(2 * d));
        CHECK(census.set_is_exactly_dictators);
    }
}

TEST_CASE("weight optimizer converges to e1") {
    const WeightOptimum optimum = optimize_weights(4, RhoParams(0.7, 0.3), 0.05, 400);
    CHECK(optimum.converged);
    REQUIRE(optimum.weights.size() == 5);
    CHECK(std::abs(optimum.weights[1] - 1.0) <= 1e-6);
    for (std::size_t k : {0u, 2u, 3u, 4u}) CHECK(std::abs(optimum.weights[k]) <= 1e-6);
    CHECK(optimum.rho_value ==
          doctest::Approx(bitsampling_rho(RhoParams(0.7, 0.3))).epsilon(1e-9));
}

TEST_CASE("weight optimizer at d=1 lands on (0, 1)") {
    const WeightOptimum optimum = optimize_weights(1, RhoParams(0.6, 0.2), 0.05, 400);
    CHECK(optimum.converged);
    CHECK(std::abs(optimum.weights[0]) <= 1e-6);
    CHECK(std::abs(optimum.weights[1] - 1.0) <= 1e-6);
}

TEST_CASE("refinement escapes the degenerate w0 = 1 corner") {
    const WeightOptimum optimum = refine_weights({1.0, 0.0, 0.0}, RhoParams(0.8, 0.4), 0.05, 400);
    CHECK(optimum.converged);
    CHECK(std::abs(optimum.weights[1] - 1.0) <= 1e-6);
    CHECK(std::isfinite(optimum.rho_value));
}

TEST_CASE("lemma w0: positive derivative and decreasing g") {
    Rng rng(67);
    const CheckReport report = check_lemma_w0(RhoParams(0.8, 0.3), 100, rng);
    CHECK(report.passed());
    CHECK(report.cases > 0);
    CHECK_THROWS_AS(check_lemma_w0(RhoParams(0.8, 0.0), 10, rng), InvalidArgument);
}

TEST_CASE("lemma w0 finite differences on the documented corner vectors") {
    const RhoParams params(0.8, 0.3);
    constexpr double step = 1e-6;
    for (std::vector<double> w : {std::vector<double>{0.5, 0.5}, std::vector<double>{0.99, 0.01}}) {
        std::vector<double> up = w, down = w;
        up[0] += step;
        up[1] -= step;
        down[0] -= step;
        down[1] += step;
        const double derivative =
            (rho_from_raw_weights(up, params) - rho_from_raw_weights(down, params)) / (2 * step);
        CHECK(derivative > 0.0);
    }
}

TEST_CASE("gamma reduction: mixtures never exceed x^gamma") {
    Rng rng(71);
    const CheckReport two = check_gamma_reduction(RhoParams(0.9, 0.5), GammaProbe(2.0), 100, rng);
    CHECK(two.passed());
    const CheckReport five = check_gamma_reduction(RhoParams(0.7, 0.2), GammaProbe(5.0), 100, rng);
    CHECK(five.passed());
    const CheckReport one = check_gamma_reduction(RhoParams(0.9, 0.5), GammaProbe(1.0), 10, rng);
    CHECK(one.passed());
    CHECK_THROWS_AS(GammaProbe(0.5), InvalidArgument);
}

TEST_CASE("continuous weight specs validate exponents and the simplex") {
    CHECK_THROWS_AS(ContinuousWeightSpec({{1.0, 0.5}}), InvalidArgument);
    CHECK_THROWS_AS(ContinuousWeightSpec({{0.5, 2.0}, {0.4, 3.0}}), InvalidArgument);
    CHECK_THROWS_AS(ContinuousWeightSpec({{1.5, 2.0}, {-0.5, 3.0}}), InvalidArgument);
    const ContinuousWeightSpec ok({{0.25, 1.0}, {0.75, 6.5}});
    CHECK(ok.evaluate(1.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(ok.evaluate(0.0) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("gamma reduction worked mixture: exponents {1, 4} at beta = 0.5") {
    // weights solving s(0.5) = 0.25 are w = 3/7 on exponent 1
    const ContinuousWeightSpec spec({{3.0 / 7.0, 1.0}, {4.0 / 7.0, 4.0}});
    CHECK(spec.evaluate(0.5) == doctest::Approx(0.25).epsilon(1e-12));
    for (double alpha = 0.55; alpha < 1.0; alpha += 0.05) {
        CHECK(spec.evaluate(alpha) <= alpha * alpha + 1e-12);
    }
}

TEST_CASE("transfer ratio phi for exponents (1, 2, 3) is 1/x") {
    const auto phi = [](double x) {
        return (std::pow(x, 1.0) - std::pow(x, 2.0)) / (std::pow(x, 2.0) - std::pow(x, 3.0));
    };
    for (double x = 0.1; x < 0.95; x += 0.1) {
        CHECK(phi(x) == doctest::Approx(1.0 / x).epsilon(1e-9));
        CHECK(phi(x + 0.05) < phi(x));
    }
}

TEST_CASE("rho(gamma) increases along the documented grid") {
    const std::vector<double> grid = {1.0, 1.5, 2.0, 3.0, 5.0, 10.0, 50.0};
    const CheckReport report = check_rho_gamma_increasing(RhoParams(0.9, 0.5), grid);
    CHECK(report.passed());

    const auto rho_gamma = [](double g) {
        return std::log((1.0 + std::pow(0.9, g)) / 2.0) / std::log((1.0 + std::pow(0.5, g)) / 2.0);
    };
    CHECK(rho_gamma(1.0) == doctest::Approx(kRho_09_05).epsilon(1e-12));
    CHECK(rho_gamma(50.0) < 1.0);

    CHECK_THROWS_AS(check_rho_gamma_increasing(RhoParams(0.9, 0.5), std::vector<double>{2.0, 1.0}),
                    InvalidArgument);
}

TEST_CASE("log inequality check") {
    const std::vector<double> xs = {0.1, 0.5, 1.0, 2.0, 10.0};
    CHECK(check_log_inequality(xs).passed());
    CHECK(std::log(2.0) < 1.0);
    CHECK(std::log(0.1) < -0.9);
    CHECK_THROWS_AS(check_log_inequality(std::vector<double>{-1.0}), InvalidArgument);
}

TEST_CASE("uniqueness margin on the coarse simplex grid at d=4") {
    const RhoParams params(0.9, 0.5);
    const double base = bitsampling_rho(params);
    // walk the resolution-0.05 grid via integer compositions of 20 into 5 bins
    int checked = 0;
    for (int c0 = 0; c0 <= 20; ++c0)
        for (int c1 = 0; c1 <= 20 - c0; ++c1)
            for (int c2 = 0; c2 <= 20 - c0 - c1; ++c2)
                for (int c3 = 0; c3 <= 20 - c0 - c1 - c2; ++c3) {
                    const int c4 = 20 - c0 - c1 - c2 - c3;
                    if (c1 == 20) continue; // e1 itself
                    const std::vector<double> w = {c0 / 20.0, c1 / 20.0, c2 / 20.0, c3 / 20.0,
                                                   c4 / 20.0};
                    const double value = rho_from_raw_weights(w, params);
                    if (std::isinf(value)) continue; // w0 = 1 corner
                    CHECK(value - base > 1e-12);
                    ++checked;
                }
    CHECK(checked > 10000);
}

TEST_CASE("verification driver passes clean and fails under fault injection") {
    VerificationConfig config;
    config.d_max = 2;
    config.grid_step = 0.25; // keep the unit-test run small
    config.interior_samples = 10;
    config.gamma_trials = 5;

    std::size_t total_violations = 0;
    for (const CheckReport& report : run_verification(config)) {
        total_violations += report.violations.size();
    }
    CHECK(total_violations == 0);

    config.dictator_rho_bias = 1e-3;
    bool main_theorem_failed = false;
    for (const CheckReport& report : run_verification(config)) {
        if (report.name == "main-theorem-exhaustive") {
            main_theorem_failed = !report.passed();
        }
    }
    CHECK(main_theorem_failed);
}

TEST_SUITE_END();
