#include "doctest.h"

#include <cmath>

#include "mixmoran/kernel.hpp"
#include "support/corpus.hpp"
#include "support/oracles.hpp"

using namespace mixmoran;
using mixmoran::testing::example5;

namespace {

// Converts the per-vertex distribution into a successor-state map.
template <typename T>
mixmoran::testing::StateDistribution<T> as_states(const TransitionDistribution<T>& td, std::uint64_t s) {
    mixmoran::testing::StateDistribution<T> out;
    for (std::size_t v = 0; v < td.gain.size(); ++v) {
        const std::uint64_t bit = std::uint64_t{1} << v;
        if (td.gain[v] != T(0)) out[s | bit] += td.gain[v];
        if (td.loss[v] != T(0)) out[s & ~bit] += td.loss[v];
    }
    if (td.stay != T(0)) out[s] += td.stay;
    return out;
}

const ExactParams kGrid[] = {
    {Rational(0), Rational(1)},    {Rational(1), Rational(1)},    {Rational(1, 2), Rational(1)},
    {Rational(1, 4), Rational(2)}, {Rational(3, 4), Rational(1, 2)}, {Rational(0), Rational(3)},
    {Rational(1), Rational(1, 3)}, {Rational(1, 2), Rational(5, 2)},
};

}  // namespace

TEST_CASE("total_fitness") {
    ProcessParams p{0.5, 2.0};
    CHECK(total_fitness(Configuration::empty(5), ProcessParams{0.5, 7.0}) == 5.0);
    CHECK(total_fitness(Configuration::of(5, {0, 3}), p) == 7.0);
    CHECK(total_fitness(Configuration::full(4), ProcessParams{0.5, 3.0}) == 12.0);
}

TEST_CASE("neighborhood_fitness") {
    const Graph g = example5();
    ProcessParams p{0.5, 2.0};
    CHECK(neighborhood_fitness(g, Configuration::empty(5), 1, p) == 4.0);
    CHECK(neighborhood_fitness(g, Configuration::full(5), 1, p) == 8.0);
    // N(3) = {1, 2, 4}; |N(3) ∩ {2}| = 1 by direct adjacency scan.
    const auto s = Configuration::of(5, {2});
    std::size_t hits = 0;
    for (Vertex v = 0; v < 5; ++v) hits += g.adjacent(3, v) && s.contains(v);
    REQUIRE(hits == 1);
    CHECK(neighborhood_fitness(g, s, 3, p) == 4.0);
}

TEST_CASE("transition_distribution: absorbing configurations stay put") {
    const Graph g = example5();
    for (auto cfg : {Configuration::empty(5), Configuration::full(5)}) {
        auto td = transition_distribution(g, cfg, ProcessParams{0.3, 2.0});
        CHECK(td.stay == 1.0);
        CHECK(td.total_gain() == 0.0);
        CHECK(td.total_loss() == 0.0);
    }
}

TEST_CASE("transition_distribution: K2 under pure Bd") {
    auto td = transition_distribution(complete_graph(2), Configuration::of(2, {0}), ExactParams{Rational(1), Rational(1)});
    CHECK(td.gain[1] == Rational(1, 2));
    CHECK(td.loss[0] == Rational(1, 2));
    CHECK(td.stay == 0);
}

TEST_CASE("transition_distribution: C3 under pure dB matches enumeration") {
    const Graph g = cycle_graph(3);
    ExactParams p{Rational(0), Rational(1)};
    auto td = transition_distribution(g, Configuration::of(3, {0}), p);
    CHECK(td.loss[0] == Rational(1, 3));
    CHECK(td.gain[1] == Rational(1, 6));
    CHECK(td.gain[2] == Rational(1, 6));
    CHECK(td.stay == Rational(1, 3));
    CHECK(as_states(td, 1) == mixmoran::testing::mixed_successors(g, 1, p));
}

TEST_CASE("transition_distribution equals the enumerated (rule, parent, child) kernel") {
    // Exact rational comparison on every configuration of every corpus graph
    // up to n = 6; lambda = 0 and 1 reduce to the pure rules.
    for (const auto& [name, g] : mixmoran::testing::small_corpus()) {
        if (g.vertex_count() > 6) continue;
        CAPTURE(name);
        const std::size_t n = g.vertex_count();
        for (const auto& p : kGrid) {
            for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
                auto td = transition_distribution(g, Configuration::from_index(n, s), p);
                CHECK(td.stay + td.total_gain() + td.total_loss() == 1);
                CHECK(td.stay >= 0);
                CHECK(as_states(td, s) == mixmoran::testing::mixed_successors(g, s, p));
            }
        }
    }
}

TEST_CASE("transition_distribution in double sums to one within 1e-12") {
    for (const auto& [name, g] : mixmoran::testing::small_corpus()) {
        const std::size_t n = g.vertex_count();
        for (double lambda : {0.0, 0.3, 0.5, 1.0})
            for (double r : {0.2, 1.0, 3.7}) {
                for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
                    auto td = transition_distribution(g, Configuration::from_index(n, s), ProcessParams{lambda, r});
                    CHECK(std::abs(td.stay + td.total_gain() + td.total_loss() - 1.0) <= 1e-12);
                }
            }
    }
}

TEST_CASE("lambda = 1/2, r = 1: expected change of |S| is exactly zero") {
    ExactParams p{Rational(1, 2), Rational(1)};
    for (const auto& [name, g] : mixmoran::testing::small_corpus()) {
        CAPTURE(name);
        const std::size_t n = g.vertex_count();
        for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
            auto td = transition_distribution(g, Configuration::from_index(n, s), p);
            CHECK(td.total_gain() == td.total_loss());
        }
    }
}

TEST_CASE("per-vertex flip probabilities are monotone in r for r >= 1") {
    const Rational rs[] = {Rational(1), Rational(3, 2), Rational(2), Rational(4)};
    for (const auto& [name, g] : mixmoran::testing::small_corpus()) {
        if (g.vertex_count() > 6) continue;
        CAPTURE(name);
        const std::size_t n = g.vertex_count();
        for (Rational lambda : {Rational(0), Rational(1, 3), Rational(1, 2), Rational(1)}) {
            for (std::uint64_t s = 1; s + 1 < (std::uint64_t{1} << n); ++s) {
                const auto cfg = Configuration::from_index(n, s);
                for (std::size_t k = 0; k + 1 < std::size(rs); ++k) {
                    auto lo = transition_distribution(g, cfg, ExactParams{lambda, rs[k]});
                    auto hi = transition_distribution(g, cfg, ExactParams{lambda, rs[k + 1]});
                    for (std::size_t v = 0; v < n; ++v) {
                        CHECK(hi.gain[v] >= lo.gain[v]);
                        CHECK(hi.loss[v] <= lo.loss[v]);
                    }
                }
            }
        }
    }
}

TEST_CASE("sample_step") {
    const Graph g = example5();
    SUBCASE("absorbing configuration is returned unchanged") {
        Rng rng(1);
        CHECK(sample_step(g, Configuration::full(5), ProcessParams{0.5, 2.0}, rng) == Configuration::full(5));
        CHECK(sample_step(g, Configuration::empty(5), ProcessParams{0.5, 2.0}, rng) == Configuration::empty(5));
    }
    SUBCASE("fixed seed gives a reproducible trajectory") {
        const Graph k2 = complete_graph(2);
        auto trajectory = [&](std::uint64_t seed) {
            Rng rng(seed);
            std::vector<std::uint64_t> out;
            auto cfg = Configuration::of(2, {0});
            for (int i = 0; i < 5; ++i) {
                out.push_back(cfg.index());
                cfg = sample_step(k2, cfg, ProcessParams{0.5, 1.0}, rng);
            }
            return out;
        };
        CHECK(trajectory(42) == trajectory(42));
    }
    SUBCASE("one step changes |S| by at most one") {
        Rng rng(5);
        auto cfg = Configuration::of(5, {2});
        for (int i = 0; i < 2000 && !cfg.is_absorbing(); ++i) {
            auto next = sample_step(g, cfg, ProcessParams{0.4, 1.7}, rng);
            const long d = static_cast<long>(next.count()) - static_cast<long>(cfg.count());
            CHECK(std::abs(d) <= 1);
            cfg = next;
        }
    }
}

TEST_CASE("sample_step flip frequencies match transition_distribution within 4 sigma") {
    const Graph g = example5();
    const auto s = Configuration::of(5, {2});
    for (ProcessParams p : {ProcessParams{0.5, 1.0}, ProcessParams{0.2, 3.0}, ProcessParams{0.9, 0.4}}) {
        CAPTURE(p.lambda);
        CAPTURE(p.r);
        const auto td = transition_distribution(g, s, p);
        const std::size_t samples = 1'000'000;
        std::vector<std::size_t> flips(5, 0);
        std::size_t stays = 0;
        Rng rng(2024);
        for (std::size_t i = 0; i < samples; ++i) {
            auto next = sample_step(g, s, p, rng);
            bool moved = false;
            for (Vertex v = 0; v < 5; ++v)
                if (next.contains(v) != s.contains(v)) {
                    ++flips[v];
                    moved = true;
                }
            stays += !moved;
        }
        auto within = [&](std::size_t count, double prob) {
            const double sigma = std::sqrt(samples * prob * (1 - prob));
            return std::abs(static_cast<double>(count) - samples * prob) <= 4 * sigma + 1e-9;
        };
        for (Vertex v = 0; v < 5; ++v) CHECK(within(flips[v], s.contains(v) ? td.loss[v] : td.gain[v]));
        CHECK(within(stays, td.stay));
    }
}

TEST_CASE("run_to_absorption") {
    const Graph g = example5();
    Rng rng(3);
    auto full = run_to_absorption(g, Configuration::full(5), ProcessParams{0.5, 1.0}, rng, 10);
    CHECK(full.outcome == Outcome::Fixation);
    CHECK(full.steps == 0);
    auto none = run_to_absorption(g, Configuration::empty(5), ProcessParams{0.5, 1.0}, rng, 10);
    CHECK(none.outcome == Outcome::Extinction);
    CHECK(none.steps == 0);

    auto cut = run_to_absorption(cycle_graph(12), Configuration::of(12, {0, 1, 2, 3, 4, 5}), ProcessParams{0.5, 1.0}, rng, 1);
    CHECK(cut.outcome == Outcome::Cutoff);
    CHECK(cut.steps == 1);
}

TEST_CASE("run_to_absorption: K2, lambda = 1/2, r = 1 fixes half the time") {
    const Graph k2 = complete_graph(2);
    std::size_t fixed = 0;
    const std::size_t runs = 100'000;
    for (std::size_t i = 0; i < runs; ++i) {
        Rng rng = Rng::stream(11, i);
        fixed += run_to_absorption(k2, Configuration::of(2, {0}), ProcessParams{0.5, 1.0}, rng, 100).outcome ==
                 Outcome::Fixation;
    }
    CHECK(std::abs(static_cast<double>(fixed) / runs - 0.5) <= 0.01);
}

TEST_CASE("default_max_steps") {
    CHECK(default_max_steps(10, 1.0) == 1'000'000);
    CHECK(default_max_steps(10, 2.0) == 2'000'000);
    // r < 1 uses the mirrored constant 1 / (1 - r).
    CHECK(default_max_steps(10, 0.5) == 2'000'000);
}
