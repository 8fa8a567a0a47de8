#include <algorithm>
#include <numeric>
#include <set>

#include "mixmoran/graph.hpp"
#include "mixmoran/rng.hpp"

namespace mixmoran {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw GraphError(GraphErrorKind::InvalidParam, what);
}

}  // namespace

Graph cycle_graph(std::size_t n) {
    require(n >= 3, "cycle needs n >= 3");
    std::vector<Edge> e;
    for (std::size_t i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
    return Graph::from_edges(n, e);
}

Graph star_graph(std::size_t leaves) {
    require(leaves >= 1, "star needs at least one leaf");
    std::vector<Edge> e;
    for (std::size_t i = 1; i <= leaves; ++i) e.emplace_back(0, i);
    return Graph::from_edges(leaves + 1, e);
}

Graph complete_graph(std::size_t n) {
    require(n >= 2, "complete graph needs n >= 2");
    std::vector<Edge> e;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) e.emplace_back(i, j);
    return Graph::from_edges(n, e);
}

Graph path_graph(std::size_t n) {
    require(n >= 2, "path needs n >= 2");
    std::vector<Edge> e;
    for (std::size_t i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
    return Graph::from_edges(n, e);
}

Graph book_graph(std::size_t pages) {
    require(pages >= 1, "book needs at least one page");
    std::vector<Edge> e{{0, 1}};
    for (std::size_t k = 0; k < pages; ++k) {
        Vertex a = static_cast<Vertex>(2 + 2 * k), b = a + 1;
        e.emplace_back(0, a);
        e.emplace_back(a, b);
        e.emplace_back(b, 1);
    }
    return Graph::from_edges(2 + 2 * pages, e);
}

std::optional<Graph> generate_gnp(std::size_t n, double p, std::uint64_t seed) {
    require(n >= 2, "G(n,p) needs n >= 2");
    require(p > 0.0 && p <= 1.0, "G(n,p) needs p in (0, 1]");
    Rng rng(seed);
    std::vector<Edge> e;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (rng.uniform() < p) e.emplace_back(i, j);
    return build_if_connected(n, e);
}

std::optional<Graph> generate_connected_gnp(std::size_t n, double p, std::uint64_t seed,
                                            std::size_t max_attempts) {
    for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
        auto g = generate_gnp(n, p, attempt == 0 ? seed : derive_seed(seed, attempt));
        if (g) return g;
    }
    return std::nullopt;
}

std::optional<Graph> generate_random_regular(std::size_t n, std::size_t d, std::uint64_t seed,
                                             std::size_t max_attempts) {
    require(n >= 2 && d >= 1 && d < n, "regular graph needs 1 <= d < n");
    require((n * d) % 2 == 0, "n * d must be even");
    Rng rng(seed);
    std::vector<Vertex> stubs;
    for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
        stubs.clear();
        for (std::size_t v = 0; v < n; ++v)
            for (std::size_t k = 0; k < d; ++k) stubs.push_back(static_cast<Vertex>(v));
        for (std::size_t i = stubs.size(); i > 1; --i) std::swap(stubs[i - 1], stubs[rng.below(i)]);
        std::set<Edge> seen;
        std::vector<Edge> e;
        bool ok = true;
        for (std::size_t i = 0; ok && i < stubs.size(); i += 2) {
            Vertex u = stubs[i], v = stubs[i + 1];
            ok = u != v && seen.insert(std::minmax(u, v)).second;
            e.emplace_back(u, v);
        }
        if (!ok) continue;
        if (auto g = build_if_connected(n, e)) return g;
    }
    return std::nullopt;
}

}  // namespace mixmoran
