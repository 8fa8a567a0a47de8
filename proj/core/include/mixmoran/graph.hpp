#ifndef MIXMORAN_GRAPH_HPP
#define MIXMORAN_GRAPH_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mixmoran/rational.hpp"

namespace mixmoran {

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;

enum class GraphErrorKind { DuplicateEdge, SelfLoop, Disconnected, MalformedLine, InvalidParam };

const char* to_string(GraphErrorKind kind);

class GraphError : public std::runtime_error {
public:
    GraphError(GraphErrorKind kind, const std::string& what, std::size_t line = 0);

    GraphErrorKind kind() const noexcept { return kind_; }
    // 1-based line of the offending input, 0 when not parsing text.
    std::size_t line() const noexcept { return line_; }

private:
    GraphErrorKind kind_;
    std::size_t line_;
};

// Immutable, connected, undirected simple graph on vertices 0..n-1.
// Adjacency is stored in compressed rows with each neighbor list sorted.
class Graph {
public:
    // Validates simplicity and connectivity; throws GraphError otherwise.
    static Graph from_edges(std::size_t n, std::span<const Edge> edges);

    std::size_t vertex_count() const noexcept { return offsets_.size() - 1; }
    std::size_t edge_count() const noexcept { return neighbors_.size() / 2; }

    std::span<const Vertex> neighbors(Vertex v) const noexcept {
        return {neighbors_.data() + offsets_[v], neighbors_.data() + offsets_[v + 1]};
    }
    std::size_t degree(Vertex v) const noexcept { return offsets_[v + 1] - offsets_[v]; }
    const std::vector<std::size_t>& degrees() const noexcept { return degrees_; }

    bool adjacent(Vertex u, Vertex v) const;

    // Canonical edge list: (u, v) with u < v, sorted lexicographically.
    std::vector<Edge> edges() const;

    friend bool operator==(const Graph& a, const Graph& b) {
        return a.offsets_ == b.offsets_ && a.neighbors_ == b.neighbors_;
    }

private:
    Graph() = default;

    std::vector<std::size_t> offsets_;
    std::vector<Vertex> neighbors_;
    std::vector<std::size_t> degrees_;

    friend std::optional<Graph> build_if_connected(std::size_t n, std::span<const Edge> edges);
};

// Builds a graph from edges known to be simple; returns nullopt when disconnected.
std::optional<Graph> build_if_connected(std::size_t n, std::span<const Edge> edges);

struct DegreeProfile {
    std::size_t d_min = 0;
    std::size_t d_max = 0;
    Ratio alpha;  // d_max / d_min, exact
    std::vector<std::size_t> distinct_degrees;

    bool regular() const noexcept { return d_min == d_max; }
    bool bidegreed() const noexcept { return distinct_degrees.size() <= 2; }
    // (d1, d2) with d1 <= d2; only meaningful when bidegreed().
    std::size_t d1() const noexcept { return d_min; }
    std::size_t d2() const noexcept { return d_max; }

    // max degree <= a * min degree, decided exactly.
    bool almost_regular(Ratio a) const;
    // alpha^2 <= r, decided exactly.
    bool alpha_squared_at_most(const Rational& r) const;
};

DegreeProfile degree_profile(const Graph& g);

// ---- edge-list text format ------------------------------------------------

struct ParsedGraph {
    Graph graph;
    // original_ids[i] is the id used in the input for vertex i. Identity unless
    // the input used sparse ids and no "n <count>" header.
    std::vector<std::uint64_t> original_ids;
    bool remapped = false;
};

ParsedGraph parse_edge_list(std::istream& in);
ParsedGraph parse_edge_list(std::string_view text);
ParsedGraph read_edge_list_file(const std::string& path);

// "n <count>" header followed by one "u v" line per edge in canonical order.
std::string serialize_edge_list(const Graph& g);

// ---- named families and random generation ---------------------------------

Graph cycle_graph(std::size_t n);
Graph star_graph(std::size_t leaves);     // vertex 0 is the center
Graph complete_graph(std::size_t n);
Graph path_graph(std::size_t n);
// Two hubs 0 and 1 joined by an edge, plus `pages` paths 0 - a_k - b_k - 1.
Graph book_graph(std::size_t pages);

// Samples G(n, p) with the seeded generator. Returns nullopt if the sample is
// disconnected. Throws GraphError(InvalidParam) if n < 2 or p not in (0, 1].
std::optional<Graph> generate_gnp(std::size_t n, double p, std::uint64_t seed);

// Resamples with derived seeds until a connected sample appears or the retry
// budget is exhausted.
std::optional<Graph> generate_connected_gnp(std::size_t n, double p, std::uint64_t seed,
                                            std::size_t max_attempts);

// Uniform-ish random d-regular graph via the pairing model with rejection of
// loops, multi-edges and disconnected samples.
std::optional<Graph> generate_random_regular(std::size_t n, std::size_t d, std::uint64_t seed,
                                             std::size_t max_attempts = 1000);

}  // namespace mixmoran

#endif
