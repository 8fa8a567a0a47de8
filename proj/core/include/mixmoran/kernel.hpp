#ifndef MIXMORAN_KERNEL_HPP
#define MIXMORAN_KERNEL_HPP

#include <cstdint>
#include <vector>

#include "mixmoran/configuration.hpp"
#include "mixmoran/graph.hpp"
#include "mixmoran/params.hpp"
#include "mixmoran/rng.hpp"

namespace mixmoran {

// w(S) = r|S| + (n - |S|)
template <typename T>
T total_fitness(const Configuration& cfg, const BasicParams<T>& params) {
    const long mutants = static_cast<long>(cfg.count());
    const long residents = static_cast<long>(cfg.size()) - mutants;
    return T(params.r * T(mutants) + T(residents));
}

// w_u(S) = r|N(u) ∩ S| + (deg_u - |N(u) ∩ S|)
template <typename T>
T neighborhood_fitness(const Graph& g, const Configuration& cfg, Vertex u, const BasicParams<T>& params) {
    const long m = static_cast<long>(mutant_neighbors(g, cfg, u));
    return T(params.r * T(m) + T(static_cast<long>(g.degree(u)) - m));
}

// One step of the mixed process marginalized to per-vertex flips.
// gain[v]: probability that a mutant is placed at resident v.
// loss[u]: probability that a resident is placed at mutant u.
// Entries for vertices that cannot flip are zero.
template <typename T>
struct TransitionDistribution {
    std::vector<T> gain;
    std::vector<T> loss;
    T stay;

    T total_gain() const {
        T s(0);
        for (const T& x : gain) s += x;
        return s;
    }
    T total_loss() const {
        T s(0);
        for (const T& x : loss) s += x;
        return s;
    }
};

template <typename T>
TransitionDistribution<T> transition_distribution(const Graph& g, const Configuration& cfg,
                                                  const BasicParams<T>& params) {
    const std::size_t n = g.vertex_count();
    TransitionDistribution<T> out{std::vector<T>(n, T(0)), std::vector<T>(n, T(0)), T(1)};
    if (cfg.is_absorbing()) return out;

    const T w = total_fitness(cfg, params);
    const T bd_weight = params.lambda;
    const T db_weight = T(T(1) - params.lambda) / T(static_cast<long>(n));
    T moved(0);
    for (std::size_t i = 0; i < n; ++i) {
        const Vertex x = static_cast<Vertex>(i);
        const bool mutant = cfg.contains(x);
        // Bd: an opposite-type neighbor y reproduces (fitness fy / w) and picks x (1/deg_y).
        // dB: x dies (1/n) and an opposite-type neighbor is chosen (fy / w_x).
        T bd(0);
        long opposite = 0;
        for (Vertex y : g.neighbors(x)) {
            if (cfg.contains(y) == mutant) continue;
            ++opposite;
            bd += T(1) / T(static_cast<long>(g.degree(y)));
        }
        if (opposite == 0) continue;
        const T f_opposite = mutant ? T(1) : params.r;
        const T wx = neighborhood_fitness(g, cfg, x, params);
        T p = T(bd_weight * f_opposite * bd / w) + T(db_weight * f_opposite * T(opposite) / wx);
        moved += p;
        (mutant ? out.loss : out.gain)[i] = p;
    }
    out.stay = T(1) - moved;
    return out;
}

// Performs one Bd/dB step on `cfg` in place. Returns +1 if a mutant was
// placed on a resident, -1 for the reverse, 0 if the configuration did not change.
int step_in_place(const Graph& g, Configuration& cfg, const ProcessParams& params, Rng& rng);

Configuration sample_step(const Graph& g, const Configuration& cfg, const ProcessParams& params, Rng& rng);

enum class Outcome { Fixation, Extinction, Cutoff };

const char* to_string(Outcome o);

struct AbsorptionResult {
    Outcome outcome;
    std::uint64_t steps;
};

AbsorptionResult run_to_absorption(const Graph& g, Configuration cfg, const ProcessParams& params, Rng& rng,
                                   std::uint64_t max_steps);

// 100 n^4 scaled by the r-dependent constant of the O_r(n^4) absorption bound.
std::uint64_t default_max_steps(std::size_t n, double r);

}  // namespace mixmoran

#endif
