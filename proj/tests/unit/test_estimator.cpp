#include "doctest.h"

#include <cmath>

#include "mixmoran/estimator.hpp"
#include "mixmoran/rng.hpp"
#include "support/corpus.hpp"

using namespace mixmoran;
using mixmoran::testing::example5;

namespace {

EstimatorConfig manual(std::uint64_t replicates, std::uint64_t cutoff, std::uint64_t seed = 1) {
    EstimatorConfig cfg;
    cfg.mode = ManualBudget{replicates, cutoff};
    cfg.base_seed = seed;
    return cfg;
}

}  // namespace

TEST_CASE("all-mutant start fixes immediately") {
    auto rep = estimate(example5(), Configuration::full(5), ProcessParams{0.3, 0.7}, manual(50, 10));
    CHECK(rep.fp_hat == 1.0);
    CHECK(rep.fixations == 50);
    CHECK(rep.mean_steps == 0.0);
    auto none = estimate(example5(), Configuration::empty(5), ProcessParams{0.3, 0.7}, manual(50, 10));
    CHECK(none.fp_hat == 0.0);
    CHECK(none.extinctions == 50);
}

TEST_CASE("example graph, lambda = 1/2, r = 1: estimate near 1/5") {
    auto rep = estimate(example5(), Configuration::of(5, {2}), ProcessParams{0.5, 1.0}, manual(100'000, 100'000, 7));
    CHECK(rep.cutoffs == 0);
    CHECK(rep.fixations + rep.extinctions == 100'000);
    CHECK(std::abs(rep.fp_hat - 0.2) <= 0.005);
    CHECK(rep.wilson_low <= rep.fp_hat);
    CHECK(rep.wilson_high >= rep.fp_hat);
}

TEST_CASE("results do not depend on the thread count") {
    const auto s0 = Configuration::of(5, {0});
    auto one = manual(4000, 10'000, 99);
    auto four = one;
    four.threads = 4;
    auto a = estimate(example5(), s0, ProcessParams{0.4, 1.6}, one);
    auto b = estimate(example5(), s0, ProcessParams{0.4, 1.6}, four);
    CHECK(a.fixations == b.fixations);
    CHECK(a.extinctions == b.extinctions);
    CHECK(a.mean_steps == b.mean_steps);
    auto c = estimate(example5(), s0, ProcessParams{0.4, 1.6}, manual(4000, 10'000, 100));
    CHECK(c.fixations != a.fixations);
}

TEST_CASE("cutoff handling") {
    const Graph g = cycle_graph(12);
    const auto s0 = Configuration::of(12, {0, 1, 2, 3, 4, 5});
    SUBCASE("tolerant mode brackets the estimate") {
        auto rep = estimate(g, s0, ProcessParams{0.5, 1.0}, manual(200, 3));
        CHECK_FALSE(rep.aborted);
        CHECK(rep.cutoffs == 200);
        CHECK(rep.bracket_low == 0.0);
        CHECK(rep.bracket_high == 1.0);
        CHECK(rep.fp_hat == rep.bracket_low);
    }
    SUBCASE("strict mode aborts") {
        auto cfg = manual(200, 3);
        cfg.strict_cutoff = true;
        auto rep = estimate(g, s0, ProcessParams{0.5, 1.0}, cfg);
        CHECK(rep.aborted);
        CHECK(std::isnan(rep.fp_hat));
    }
}

TEST_CASE("configuration errors") {
    const Graph g = example5();
    CHECK_THROWS_AS(estimate(g, Configuration::of(4, {0}), ProcessParams{0.5, 1.0}, manual(10, 10)), InvalidConfig);
    CHECK_THROWS_AS(estimate(g, Configuration::of(5, {0}), ProcessParams{0.5, 1.0}, manual(0, 10)), InvalidConfig);
    CHECK_THROWS_AS(estimate(g, Configuration::of(5, {0}), ProcessParams{0.5, 1.0}, manual(10, 0)), InvalidConfig);
    CHECK_THROWS_AS(estimate(g, Configuration::of(5, {0}), ProcessParams{1.5, 1.0}, manual(10, 10)),
                    std::invalid_argument);
}

TEST_CASE("certified regimes") {
    const Graph g = example5();  // alpha = 4
    const auto s0 = Configuration::of(5, {2, 3});
    auto half = certify_regime(g, s0, {Rational(1, 2), Rational(2)});
    REQUIRE(half);
    CHECK(half->regime == CertifiedRegime::HalfLambdaAdvantage);
    CHECK(half->constants.c1 == 1);
    CHECK(half->constants.c_fp == 2.0);
    CHECK(half->constants.c_tau == doctest::Approx(2.0));
    CHECK(certify_regime(g, s0, {Rational(1, 2), Rational(1)})->constants.c_tau == 0.25);
    CHECK_FALSE(certify_regime(g, s0, {Rational(1, 2), Rational(1, 2)}));
    CHECK_FALSE(certify_regime(g, s0, {Rational(1, 3), Rational(15)}));
    auto ar = certify_regime(g, s0, {Rational(1, 3), Rational(16)});
    REQUIRE(ar);
    CHECK(ar->regime == CertifiedRegime::AlmostRegularAdvantage);
    CHECK(ar->constants.c1 == 2);
    CHECK(std::string(to_string(ar->regime)) == "almost-regular");
    CHECK_FALSE(certify_regime(cycle_graph(5), Configuration::of(5, {0}), {Rational(1, 3), Rational(1)}));
    CHECK(certify_regime(cycle_graph(5), Configuration::of(5, {0}), {Rational(1, 3), Rational(11, 10)}));
}

TEST_CASE("Auto mode refuses uncertified parameters and records the regime") {
    EstimatorConfig cfg;
    cfg.mode = AutoBudget{};
    cfg.epsilon = 0.5;
    CHECK_THROWS_AS(estimate(example5(), Configuration::of(5, {2}), ProcessParams{0.3, 2.0}, cfg), InvalidConfig);
    CHECK_THROWS_AS(estimate(example5(), Configuration::of(5, {2}), ProcessParams{0.5, 0.8}, cfg), InvalidConfig);
    auto rep = estimate(complete_graph(3), Configuration::of(3, {0}), ProcessParams{0.5, 2.0}, cfg);
    REQUIRE(rep.regime);
    CHECK(*rep.regime == CertifiedRegime::HalfLambdaAdvantage);
    CHECK(rep.replicates == fpras_budget(3, 0.5, FprasConstants{1, 4, 1.0, 2.0}).replicates);
}

TEST_CASE("fpras_budget") {
    auto b = fpras_budget(5, 0.1, FprasConstants{1, 4, 1.0, 2.0});
    const double n_rep = std::ceil(std::log(16.0) / (2 * 0.01) * 25);
    CHECK(b.replicates == static_cast<std::uint64_t>(n_rep));
    CHECK(b.cutoff == static_cast<std::uint64_t>(std::ceil(8 * 2.0 * n_rep * 625)));
    CHECK(fpras_budget(5, 0.1, FprasConstants{1, 4, 2.0, 2.0}).replicates == static_cast<std::uint64_t>(std::ceil(n_rep / 4)));
    CHECK_THROWS_AS(fpras_budget(5, 0.0, FprasConstants{}), InvalidConfig);
    CHECK_THROWS_AS(fpras_budget(5, 1.0, FprasConstants{}), InvalidConfig);
}

TEST_CASE("Wilson interval") {
    auto w = wilson_interval(20, 100);
    CHECK(w.low == doctest::Approx(0.1333).epsilon(1e-3));
    CHECK(w.high == doctest::Approx(0.2888).epsilon(1e-3));
    auto zero = wilson_interval(0, 50);
    CHECK(zero.low == 0.0);
    CHECK(zero.high > 0.0);
    auto all = wilson_interval(50, 50);
    CHECK(all.high == 1.0);
    CHECK(all.low < 1.0);
}

TEST_CASE("a 1 x 1 sweep equals a direct call with the derived seed") {
    const Graph g = example5();
    const auto s0 = Configuration::of(5, {1});
    auto cfg = manual(500, 10'000, 31);
    auto pts = sweep(g, s0, {Rational(1, 4)}, {Rational(3, 2)}, cfg);
    REQUIRE(pts.size() == 1);
    auto direct_cfg = cfg;
    direct_cfg.base_seed = derive_seed(31, 0, 0);
    auto direct = estimate(g, s0, ExactParams{Rational(1, 4), Rational(3, 2)}, direct_cfg);
    CHECK(pts[0].report.fixations == direct.fixations);
    CHECK(pts[0].report.mean_steps == direct.mean_steps);
    CHECK(pts[0].lambda_index == 0);
    CHECK(pts[0].r_index == 0);
    CHECK_THROWS_AS(sweep(g, s0, {}, {Rational(1)}, cfg), InvalidConfig);
}

TEST_CASE("sweep ordering is lambda-major") {
    auto pts = sweep(complete_graph(3), Configuration::of(3, {0}), {Rational(0), Rational(1)},
                     {Rational(1), Rational(2), Rational(3)}, manual(10, 1000));
    REQUIRE(pts.size() == 6);
    CHECK(pts[4].lambda_index == 1);
    CHECK(pts[4].r_index == 1);
    CHECK(pts[4].params.r == 2);
}
