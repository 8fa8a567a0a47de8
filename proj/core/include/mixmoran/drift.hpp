#ifndef MIXMORAN_DRIFT_HPP
#define MIXMORAN_DRIFT_HPP

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mixmoran/closed_forms.hpp"
#include "mixmoran/configuration.hpp"
#include "mixmoran/graph.hpp"
#include "mixmoran/kernel.hpp"
#include "mixmoran/params.hpp"

namespace mixmoran {

enum class PotentialKind {
    Cardinality,  // phi(u) = 1
    Degree,       // phi(u) = deg_u
    InvDegree,    // phi(u) = 1 / deg_u
    BidegreedF,   // phi(u) = f(deg_u), the neutral bidegreed weights
    Custom,       // caller-supplied table
};

// An additive potential phi(S) = sum_{u in S} phi(u).
class Potential {
public:
    explicit Potential(PotentialKind kind) : kind_(kind) {
        if (kind == PotentialKind::Custom) throw std::invalid_argument("use Potential::custom for weight tables");
    }

    static Potential custom(std::vector<double> weights) {
        for (double w : weights)
            if (!std::isfinite(w) || w < 0.0) throw std::invalid_argument("custom potential weights must be finite and >= 0");
        Potential p;
        p.kind_ = PotentialKind::Custom;
        p.custom_ = std::move(weights);
        return p;
    }

    PotentialKind kind() const noexcept { return kind_; }

    // Per-vertex weights. BidegreedF depends on lambda and requires a
    // bidegreed graph (throws ClosedFormError otherwise).
    template <typename T>
    std::vector<T> weights(const Graph& g, const BasicParams<T>& params) const {
        const std::size_t n = g.vertex_count();
        std::vector<T> w(n, T(1));
        switch (kind_) {
            case PotentialKind::Cardinality: break;
            case PotentialKind::Degree:
                for (std::size_t v = 0; v < n; ++v) w[v] = T(static_cast<long>(g.degree(static_cast<Vertex>(v))));
                break;
            case PotentialKind::InvDegree:
                for (std::size_t v = 0; v < n; ++v)
                    w[v] = T(T(1) / T(static_cast<long>(g.degree(static_cast<Vertex>(v)))));
                break;
            case PotentialKind::BidegreedF: return bidegreed_weights(g, params.lambda);
            case PotentialKind::Custom:
                if (custom_.size() != n) throw std::invalid_argument("custom potential size does not match graph");
                for (std::size_t v = 0; v < n; ++v) w[v] = T(custom_[v]);
                break;
        }
        return w;
    }

private:
    Potential() = default;

    PotentialKind kind_ = PotentialKind::Cardinality;
    std::vector<double> custom_;
};

class NotBoundaryEdge : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

template <typename T>
struct EdgeDrift {
    T bd;
    T db;
    T mixed;  // lambda * bd + (1 - lambda) * db
};

// bdry(S): ordered pairs (u, v) with u a mutant, v a resident, {u, v} in E.
inline std::vector<Edge> boundary_edges(const Graph& g, const Configuration& cfg) {
    std::vector<Edge> out;
    for (std::size_t i = 0; i < g.vertex_count(); ++i) {
        const Vertex u = static_cast<Vertex>(i);
        if (!cfg.contains(u)) continue;
        for (Vertex v : g.neighbors(u))
            if (!cfg.contains(v)) out.emplace_back(u, v);
    }
    return out;
}

// Every mutant has only resident neighbors and every resident only mutant
// neighbors.
inline bool is_bad_configuration(const Graph& g, const Configuration& cfg) {
    for (std::size_t i = 0; i < g.vertex_count(); ++i) {
        const Vertex x = static_cast<Vertex>(i);
        for (Vertex y : g.neighbors(x))
            if (cfg.contains(x) == cfg.contains(y)) return false;
    }
    return true;
}

namespace detail {

template <typename T>
EdgeDrift<T> edge_drift_unchecked(const Graph& g, const Configuration& cfg, const std::vector<T>& phi,
                                  const BasicParams<T>& params, const T& w, Vertex u, Vertex v) {
    const T up = phi[v];    // phi(S + v) - phi(S)
    const T down = phi[u];  // phi(S) - phi(S - u)
    const T deg_u(static_cast<long>(g.degree(u)));
    const T deg_v(static_cast<long>(g.degree(v)));
    const T n(static_cast<long>(g.vertex_count()));
    EdgeDrift<T> d;
    d.bd = T(T(params.r / deg_u * up - down / deg_v) / w);
    d.db = T(T(params.r / neighborhood_fitness(g, cfg, v, params) * up -
               T(1) / neighborhood_fitness(g, cfg, u, params) * down) /
             n);
    d.mixed = T(params.lambda * d.bd + T(T(1) - params.lambda) * d.db);
    return d;
}

}  // namespace detail

template <typename T>
EdgeDrift<T> edge_drift(const Graph& g, const Configuration& cfg, const Potential& potential,
                        const BasicParams<T>& params, Vertex u, Vertex v) {
    if (u >= g.vertex_count() || v >= g.vertex_count() || !cfg.contains(u) || cfg.contains(v) || !g.adjacent(u, v))
        throw NotBoundaryEdge("(" + std::to_string(u) + ", " + std::to_string(v) + ") is not a boundary edge");
    const std::vector<T> phi = potential.weights(g, params);
    return detail::edge_drift_unchecked(g, cfg, phi, params, total_fitness(cfg, params), u, v);
}

// E[phi(S_{t+1}) - phi(S_t) | S_t = S] as the sum of edge-wise drift terms.
template <typename T>
T expected_drift(const Graph& g, const Configuration& cfg, const Potential& potential,
                 const BasicParams<T>& params) {
    T total(0);
    if (cfg.is_absorbing()) return total;
    const std::vector<T> phi = potential.weights(g, params);
    const T w = total_fitness(cfg, params);
    for (auto [u, v] : boundary_edges(g, cfg))
        total += detail::edge_drift_unchecked(g, cfg, phi, params, w, u, v).mixed;
    return total;
}

// Smallest psi^lambda over bdry(S). S must be non-absorbing.
template <typename T>
T min_edge_drift(const Graph& g, const Configuration& cfg, const Potential& potential,
                 const BasicParams<T>& params) {
    if (cfg.is_absorbing()) throw std::invalid_argument("absorbing configuration has no boundary edges");
    const std::vector<T> phi = potential.weights(g, params);
    const T w = total_fitness(cfg, params);
    bool first = true;
    T best(0);
    for (auto [u, v] : boundary_edges(g, cfg)) {
        T m = detail::edge_drift_unchecked(g, cfg, phi, params, w, u, v).mixed;
        if (first || m < best) best = m;
        first = false;
    }
    return best;
}

}  // namespace mixmoran

#endif
