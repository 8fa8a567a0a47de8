#include "doctest.h"

#include <cmath>

#include "mixmoran/closed_forms.hpp"
#include "mixmoran/exact.hpp"
#include "support/corpus.hpp"

using namespace mixmoran;

TEST_CASE("neutral formulas") {
    CHECK(neutral_half_lambda_fp(10, 3) == doctest::Approx(0.3));
    CHECK(neutral_half_lambda_fp<Rational>(7, 2) == Rational(2, 7));
    CHECK(neutral_regular_fp(10, 3) == doctest::Approx(0.3));
    CHECK(neutral_half_lambda_fp(5, 0) == 0.0);
    CHECK(neutral_half_lambda_fp(5, 5) == 1.0);
    CHECK_THROWS_AS(neutral_half_lambda_fp(5, 6), ClosedFormError);
}

TEST_CASE("bidegreed weights") {
    // f(d2) at the pure rules: d1/d2 for Bd, d2/d1 for dB.
    CHECK(bidegreed_f_high<Rational>(1, 4, Rational(1)) == Rational(1, 4));
    CHECK(bidegreed_f_high<Rational>(1, 4, Rational(0)) == Rational(4));
    CHECK(bidegreed_f_high<Rational>(1, 4, Rational(1, 2)) == Rational(1));

    const Graph star = star_graph(3);
    const auto s0 = Configuration::of(4, {0});
    CHECK(bidegreed_neutral_fp(star, Rational(1), s0) == Rational(1, 10));
    CHECK(bidegreed_neutral_fp(star, Rational(0), s0) == Rational(1, 2));
    CHECK(bidegreed_neutral_fp(star, Rational(1, 2), s0) == Rational(1, 4));
    CHECK_THROWS_AS(bidegreed_weights(mixmoran::testing::example5(), 0.5), ClosedFormError);
}

TEST_CASE("bidegreed formula equals the exact solver at r = 1") {
    const Graph graphs[] = {star_graph(2), star_graph(5), path_graph(4), path_graph(6), book_graph(2),
                            cycle_graph(5), complete_graph(4)};
    for (const Graph& g : graphs) {
        const std::size_t n = g.vertex_count();
        for (Rational lambda : {Rational(0), Rational(1, 4), Rational(1, 2), Rational(3, 4), Rational(1)}) {
            const auto sol = solve_rational(g, {lambda, Rational(1)});
            for (std::size_t s = 0; s < (std::size_t{1} << n); ++s) {
                const auto cfg = Configuration::from_index(n, s);
                CHECK(bidegreed_neutral_fp(g, lambda, cfg) == fixation_probability(sol, cfg));
            }
        }
    }
}

TEST_CASE("cycle rates") {
    // n = 4, k = 2, lambda = 1/2, r = 2: F = 6.
    auto c = cycle_rates<Rational>(4, 2, {Rational(1, 2), Rational(2)});
    CHECK(c.fitness == 6);
    CHECK(c.p_up == Rational(1, 2) * Rational(1, 3) + Rational(1, 2) * Rational(1, 3));
    CHECK(c.p_down == Rational(1, 2) * Rational(1, 6) + Rational(1, 2) * Rational(1, 6));
    CHECK(c.gamma == Rational(1, 2));
    CHECK_THROWS_AS(cycle_rates<double>(4, 0, {0.5, 2.0}), ClosedFormError);
    CHECK_THROWS_AS(cycle_rates<double>(4, 4, {0.5, 2.0}), ClosedFormError);
    CHECK_THROWS_AS(cycle_fp(2, {0.5, 2.0}), ClosedFormError);
}

TEST_CASE("cycle formula equals the exact solver") {
    for (std::size_t n = 3; n <= 9; ++n)
        for (Rational lambda : {Rational(0), Rational(1, 2), Rational(1)})
            for (Rational r : {Rational(1, 2), Rational(1), Rational(2)}) {
                CAPTURE(n);
                const Graph g = cycle_graph(n);
                const auto one = Configuration::of(n, {0});
                if (n <= 6) CHECK(cycle_fp_exact(n, {lambda, r}) == fixation_probability(solve_rational(g, {lambda, r}), one));
                const double exact = fixation_probability(solve(g, {lambda.get_d(), r.get_d()}), one);
                CHECK(std::abs(cycle_fp(n, {lambda.get_d(), r.get_d()}) - exact) <= 1e-10);
            }
}

TEST_CASE("cycle: lambda = 1 reproduces the classical Moran formula") {
    for (std::size_t n : {3, 10, 100})
        for (double r : {0.5, 1.1, 2.0}) {
            const double classical = (1 - 1 / r) / (1 - std::pow(r, -static_cast<double>(n)));
            CHECK(cycle_fp(n, {1.0, r}) == doctest::Approx(classical).epsilon(1e-12));
        }
    const Rational exact = cycle_fp_exact(100, {Rational(1), Rational(2)});
    CHECK(std::abs(cycle_fp(100, {1.0, 2.0}) - exact.get_d()) <= 1e-15);
    CHECK(std::abs(exact.get_d() - 0.5) <= 1e-15);
}

TEST_CASE("cycle: long-double and log-space paths agree with exact rationals") {
    for (double lambda : {0.0, 0.3, 1.0})
        for (double r : {1e-3, 0.05, 20.0, 1e3}) {
            CAPTURE(lambda);
            CAPTURE(r);
            const double got = cycle_fp(400, {lambda, r});
            CHECK(std::isfinite(got));
            CHECK(got >= 0.0);
            CHECK(got <= 1.0);
        }
    // Partial products leave [1e-300, 1e300] here, forcing the log-space path.
    const ExactParams big{Rational(1, 3), Rational(1000)};
    CHECK(cycle_fp(200, to_double(big)) == doctest::Approx(cycle_fp_exact(200, big).get_d()).epsilon(1e-12));
    const ExactParams small{Rational(1, 3), Rational(1, 1000)};
    CHECK(cycle_fp(200, to_double(small)) <= 1e-300);
    CHECK(cycle_fp_exact(200, small) < Rational(mpz_class(1), mpz_class("1" + std::string(300, '0'))));
}

TEST_CASE("cycle fp is nondecreasing in r") {
    for (std::size_t n : {5, 20, 100})
        for (double lambda : {0.0, 0.25, 0.5, 0.75, 1.0}) {
            double prev = 0.0;
            for (double r = 0.25; r <= 4.0; r += 0.25) {
                const double fp = cycle_fp(n, {lambda, r});
                CHECK(fp >= prev - 1e-15);
                prev = fp;
            }
        }
}

TEST_CASE("star coefficients") {
    const auto s = star_coefficients<Rational>(3, {Rational(1, 2), Rational(2)});
    for (std::size_t i = 0; i <= 3; ++i) {
        CHECK(s.b[i] == 1 - s.a[i] - s.c[i]);
        if (i < 3) CHECK(s.alpha[i] == s.A[i] / (1 - s.C[i]));
        if (i > 0) CHECK(s.p[i] == s.a[i] / (1 - s.b[i]));
    }
    CHECK_THROWS_AS(star_coefficients<double>(1, {0.5, 1.0}), ClosedFormError);
    CHECK_THROWS_AS(star_transfer_matrix(s, 0), ClosedFormError);
    CHECK_THROWS_AS(star_transfer_matrix(s, 3), ClosedFormError);
}

TEST_CASE("star, 3 leaves, pure dB at r = 1") {
    const auto sol = star_fp<Rational>(3, {Rational(0), Rational(1)});
    CHECK(sol.leaf_start == Rational(1, 6));
    CHECK(sol.center_start == Rational(1, 2));
}

TEST_CASE("star recurrence equals the exact rational solver on the full table") {
    for (std::size_t N = 2; N <= 6; ++N)
        for (Rational lambda : {Rational(0), Rational(1, 2), Rational(1)})
            for (Rational r : {Rational(1, 2), Rational(1), Rational(2)}) {
                CAPTURE(N);
                const Graph g = star_graph(N);
                const auto sol = star_fp<Rational>(N, {lambda, r});
                const auto ex = solve_rational(g, {lambda, r});
                for (std::size_t s = 0; s < (std::size_t{1} << (N + 1)); ++s) {
                    const auto cfg = Configuration::from_index(N + 1, s);
                    CHECK(star_fp_of(sol, cfg) == fixation_probability(ex, cfg));
                }
            }
}

TEST_CASE("star recurrence in double equals the exact solver for up to 9 leaves") {
    for (std::size_t N = 2; N <= 9; ++N)
        for (double lambda : {0.0, 0.5, 1.0})
            for (double r : {0.5, 1.0, 2.0}) {
                CAPTURE(N);
                const Graph g = star_graph(N);
                const auto sol = star_fp<double>(N, {lambda, r});
                const auto ex = solve(g, {lambda, r});
                for (std::size_t s = 0; s < (std::size_t{1} << (N + 1)); ++s) {
                    const auto cfg = Configuration::from_index(N + 1, s);
                    CHECK(std::abs(star_fp_of(sol, cfg) - fixation_probability(ex, cfg)) <= 1e-10);
                }
            }
}

TEST_CASE("star center start is strictly decreasing in lambda at r = 1") {
    for (std::size_t N : {3, 9, 30}) {
        double prev = 2.0;
        for (int k = 0; k <= 20; ++k) {
            const double c = star_fp<double>(N, {k / 20.0, 1.0}).center_start;
            CHECK(c < prev);
            prev = c;
        }
    }
}
