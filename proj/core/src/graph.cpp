#include "mixmoran/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <set>
#include <sstream>

namespace mixmoran {

const char* to_string(GraphErrorKind kind) {
    switch (kind) {
        case GraphErrorKind::DuplicateEdge: return "DuplicateEdge";
        case GraphErrorKind::SelfLoop: return "SelfLoop";
        case GraphErrorKind::Disconnected: return "Disconnected";
        case GraphErrorKind::MalformedLine: return "MalformedLine";
        case GraphErrorKind::InvalidParam: return "InvalidParam";
    }
    return "Unknown";
}

GraphError::GraphError(GraphErrorKind kind, const std::string& what, std::size_t line)
    : std::runtime_error(std::string(to_string(kind)) + (line ? " (line " + std::to_string(line) + ")" : "") +
                         ": " + what),
      kind_(kind),
      line_(line) {}

namespace {

bool connected(std::size_t n, const std::vector<std::size_t>& offsets, const std::vector<Vertex>& nbrs) {
    if (n == 0) return false;
    std::vector<char> seen(n, 0);
    std::vector<Vertex> stack{0};
    seen[0] = 1;
    std::size_t reached = 1;
    while (!stack.empty()) {
        Vertex u = stack.back();
        stack.pop_back();
        for (std::size_t k = offsets[u]; k < offsets[u + 1]; ++k) {
            Vertex v = nbrs[k];
            if (!seen[v]) {
                seen[v] = 1;
                ++reached;
                stack.push_back(v);
            }
        }
    }
    return reached == n;
}

}  // namespace

std::optional<Graph> build_if_connected(std::size_t n, std::span<const Edge> edges) {
    Graph g;
    g.degrees_.assign(n, 0);
    for (auto [u, v] : edges) {
        ++g.degrees_[u];
        ++g.degrees_[v];
    }
    g.offsets_.assign(n + 1, 0);
    for (std::size_t v = 0; v < n; ++v) g.offsets_[v + 1] = g.offsets_[v] + g.degrees_[v];
    g.neighbors_.resize(g.offsets_[n]);
    std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
    for (auto [u, v] : edges) {
        g.neighbors_[fill[u]++] = v;
        g.neighbors_[fill[v]++] = u;
    }
    for (std::size_t v = 0; v < n; ++v)
        std::sort(g.neighbors_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v]),
                  g.neighbors_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v + 1]));
    if (n < 2 || !connected(n, g.offsets_, g.neighbors_)) return std::nullopt;
    return g;
}

Graph Graph::from_edges(std::size_t n, std::span<const Edge> edges) {
    if (n < 2) throw GraphError(GraphErrorKind::InvalidParam, "graph needs at least 2 vertices");
    std::set<Edge> seen;
    for (auto [u, v] : edges) {
        if (u >= n || v >= n)
            throw GraphError(GraphErrorKind::InvalidParam,
                             "edge " + std::to_string(u) + " " + std::to_string(v) + " out of range");
        if (u == v) throw GraphError(GraphErrorKind::SelfLoop, "self-loop at " + std::to_string(u));
        if (!seen.insert(std::minmax(u, v)).second)
            throw GraphError(GraphErrorKind::DuplicateEdge,
                             "duplicate edge " + std::to_string(u) + " " + std::to_string(v));
    }
    auto g = build_if_connected(n, edges);
    if (!g) throw GraphError(GraphErrorKind::Disconnected, "graph is not connected");
    return std::move(*g);
}

bool Graph::adjacent(Vertex u, Vertex v) const {
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<Edge> Graph::edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count());
    for (Vertex u = 0; u < vertex_count(); ++u)
        for (Vertex v : neighbors(u))
            if (u < v) out.emplace_back(u, v);
    return out;
}

bool DegreeProfile::almost_regular(Ratio a) const {
    // d_max <= (num/den) d_min  <=>  d_max * den <= num * d_min
    return static_cast<unsigned __int128>(d_max) * a.den <= static_cast<unsigned __int128>(a.num) * d_min;
}

bool DegreeProfile::alpha_squared_at_most(const Rational& r) const {
    Rational a = alpha.to_rational();
    return a * a <= r;
}

DegreeProfile degree_profile(const Graph& g) {
    DegreeProfile p;
    const auto& deg = g.degrees();
    auto [lo, hi] = std::minmax_element(deg.begin(), deg.end());
    p.d_min = *lo;
    p.d_max = *hi;
    p.alpha = Ratio::reduced(p.d_max, p.d_min);
    std::set<std::size_t> distinct(deg.begin(), deg.end());
    p.distinct_degrees.assign(distinct.begin(), distinct.end());
    return p;
}

// ---- text format -------------------------------------------------------------

namespace {

std::string_view trim(std::string_view s) {
    auto ws = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
    while (!s.empty() && ws(s.front())) s.remove_prefix(1);
    while (!s.empty() && ws(s.back())) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
        std::size_t j = i;
        while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
        if (j > i) out.push_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

std::optional<std::uint64_t> parse_id(std::string_view tok) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) return std::nullopt;
    return v;
}

}  // namespace

ParsedGraph parse_edge_list(std::istream& in) {
    struct RawEdge {
        std::uint64_t u, v;
        std::size_t line;
    };
    std::vector<RawEdge> raw;
    std::optional<std::uint64_t> header_n;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view s = trim(line);
        if (s.empty() || s.front() == '#') continue;
        auto toks = split_ws(s);
        if (toks.size() != 2)
            throw GraphError(GraphErrorKind::MalformedLine, "expected two fields: '" + std::string(s) + "'", lineno);
        if (toks[0] == "n") {
            if (header_n || !raw.empty())
                throw GraphError(GraphErrorKind::MalformedLine, "header 'n <count>' must come first and once", lineno);
            header_n = parse_id(toks[1]);
            if (!header_n || *header_n < 2)
                throw GraphError(GraphErrorKind::MalformedLine, "invalid vertex count", lineno);
            continue;
        }
        auto u = parse_id(toks[0]);
        auto v = parse_id(toks[1]);
        if (!u || !v)
            throw GraphError(GraphErrorKind::MalformedLine, "vertex ids must be non-negative integers", lineno);
        if (header_n && (*u >= *header_n || *v >= *header_n))
            throw GraphError(GraphErrorKind::MalformedLine, "vertex id exceeds header count", lineno);
        if (*u == *v) throw GraphError(GraphErrorKind::SelfLoop, "self-loop at " + std::to_string(*u), lineno);
        raw.push_back({*u, *v, lineno});
    }
    if (raw.empty() && !header_n) throw GraphError(GraphErrorKind::MalformedLine, "no edges", lineno);

    std::vector<std::uint64_t> original_ids;
    bool remapped = false;
    std::map<std::uint64_t, Vertex> index;
    std::size_t n = 0;
    if (header_n) {
        n = static_cast<std::size_t>(*header_n);
        for (std::size_t i = 0; i < n; ++i) index[i] = static_cast<Vertex>(i);
    } else {
        for (const auto& e : raw) {
            index.emplace(e.u, 0);
            index.emplace(e.v, 0);
        }
        Vertex next = 0;
        for (auto& [id, v] : index) v = next++;
        n = index.size();
        remapped = index.rbegin()->first + 1 != n;
    }
    original_ids.reserve(n);
    for (const auto& [id, v] : index) original_ids.push_back(id);

    std::set<Edge> seen;
    std::vector<Edge> edges;
    for (const auto& e : raw) {
        Vertex u = index.at(e.u), v = index.at(e.v);
        if (!seen.insert(std::minmax(u, v)).second)
            throw GraphError(GraphErrorKind::DuplicateEdge,
                             "duplicate edge " + std::to_string(e.u) + " " + std::to_string(e.v), e.line);
        edges.emplace_back(u, v);
    }
    auto g = build_if_connected(n, edges);
    if (!g) throw GraphError(GraphErrorKind::Disconnected, "graph is not connected");
    return ParsedGraph{std::move(*g), std::move(original_ids), remapped};
}

ParsedGraph parse_edge_list(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_edge_list(in);
}

ParsedGraph read_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open graph file '" + path + "'");
    return parse_edge_list(in);
}

std::string serialize_edge_list(const Graph& g) {
    std::ostringstream out;
    out << "n " << g.vertex_count() << '\n';
    for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
    return out.str();
}

}  // namespace mixmoran
