#include "mixmoran/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mixmoran {

namespace {

// Rejection sampling proportional to fitness: propose uniformly, accept with
// fitness / max_fitness. Expected proposals <= max(r, 1/r).
inline bool accept(Rng& rng, bool mutant, const ProcessParams& p, double max_fitness) {
    const double f = mutant ? p.r : 1.0;
    return f >= max_fitness || rng.uniform() * max_fitness < f;
}

}  // namespace

int step_in_place(const Graph& g, Configuration& cfg, const ProcessParams& params, Rng& rng) {
    if (cfg.is_absorbing()) return 0;
    const std::size_t n = g.vertex_count();
    const double max_fitness = std::max(params.r, 1.0);

    Vertex parent = 0, child = 0;
    if (rng.uniform() < params.lambda) {
        // Birth-death: parent by fitness, child uniform among its neighbors.
        do {
            parent = static_cast<Vertex>(rng.below(n));
        } while (!accept(rng, cfg.contains(parent), params, max_fitness));
        auto nb = g.neighbors(parent);
        child = nb[rng.below(nb.size())];
    } else {
        // death-Birth: child uniform, parent among its neighbors by fitness.
        child = static_cast<Vertex>(rng.below(n));
        auto nb = g.neighbors(child);
        do {
            parent = nb[rng.below(nb.size())];
        } while (!accept(rng, cfg.contains(parent), params, max_fitness));
    }

    const bool parent_mutant = cfg.contains(parent);
    if (parent_mutant == cfg.contains(child)) return 0;
    if (parent_mutant) {
        cfg.insert(child);
        return +1;
    }
    cfg.erase(child);
    return -1;
}

Configuration sample_step(const Graph& g, const Configuration& cfg, const ProcessParams& params, Rng& rng) {
    Configuration next = cfg;
    step_in_place(g, next, params, rng);
    return next;
}

const char* to_string(Outcome o) {
    switch (o) {
        case Outcome::Fixation: return "fixation";
        case Outcome::Extinction: return "extinction";
        case Outcome::Cutoff: return "cutoff";
    }
    return "unknown";
}

AbsorptionResult run_to_absorption(const Graph& g, Configuration cfg, const ProcessParams& params, Rng& rng,
                                   std::uint64_t max_steps) {
    const std::size_t n = g.vertex_count();
    std::uint64_t steps = 0;
    while (!cfg.is_absorbing()) {
        if (steps >= max_steps) return {Outcome::Cutoff, steps};
        step_in_place(g, cfg, params, rng);
        ++steps;
    }
    return {cfg.count() == n ? Outcome::Fixation : Outcome::Extinction, steps};
}

std::uint64_t default_max_steps(std::size_t n, double r) {
    const double n4 = std::pow(static_cast<double>(n), 4);
    double scale = 1.0;
    if (r != 1.0) {
        const double rr = std::max(r, 1.0 / r);
        scale = std::max(rr / (rr - 1.0), 1.0);
    }
    const double steps = 100.0 * n4 * scale;
    if (!(steps < 1.8e19)) return std::numeric_limits<std::uint64_t>::max();
    return static_cast<std::uint64_t>(std::ceil(steps));
}

}  // namespace mixmoran
