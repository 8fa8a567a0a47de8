#ifndef MIXMORAN_CONFIGURATION_HPP
#define MIXMORAN_CONFIGURATION_HPP

#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <vector>

#include "mixmoran/graph.hpp"

namespace mixmoran {

// The mutant set S as a bit-packed subset of {0, ..., n-1}. Bits beyond n-1
// are always zero. The population count is cached.
class Configuration {
public:
    Configuration() = default;

    static Configuration empty(std::size_t n) { return Configuration(n); }
    static Configuration full(std::size_t n) {
        Configuration c(n);
        for (std::size_t i = 0; i < n; ++i) c.insert(static_cast<Vertex>(i));
        return c;
    }
    static Configuration of(std::size_t n, std::span<const Vertex> vertices) {
        Configuration c(n);
        for (Vertex v : vertices) {
            if (v >= n) throw std::out_of_range("vertex outside configuration");
            c.insert(v);
        }
        return c;
    }
    static Configuration of(std::size_t n, std::initializer_list<Vertex> vertices) {
        return of(n, std::span<const Vertex>(vertices.begin(), vertices.size()));
    }
    // Bit i of `index` is vertex i; requires n <= 64.
    static Configuration from_index(std::size_t n, std::uint64_t index) {
        if (n > 64) throw std::invalid_argument("state index needs n <= 64");
        Configuration c(n);
        if (n > 0) {
            c.words_[0] = n == 64 ? index : index & ((std::uint64_t{1} << n) - 1);
            c.count_ = static_cast<std::size_t>(std::popcount(c.words_[0]));
        }
        return c;
    }

    std::size_t size() const noexcept { return n_; }
    std::size_t count() const noexcept { return count_; }
    bool is_absorbing() const noexcept { return count_ == 0 || count_ == n_; }

    bool contains(Vertex v) const noexcept { return (words_[v >> 6] >> (v & 63)) & 1U; }

    void insert(Vertex v) noexcept {
        std::uint64_t bit = std::uint64_t{1} << (v & 63);
        if (!(words_[v >> 6] & bit)) {
            words_[v >> 6] |= bit;
            ++count_;
        }
    }
    void erase(Vertex v) noexcept {
        std::uint64_t bit = std::uint64_t{1} << (v & 63);
        if (words_[v >> 6] & bit) {
            words_[v >> 6] &= ~bit;
            --count_;
        }
    }

    Configuration with(Vertex v) const {
        Configuration c = *this;
        c.insert(v);
        return c;
    }
    Configuration without(Vertex v) const {
        Configuration c = *this;
        c.erase(v);
        return c;
    }

    std::uint64_t index() const {
        if (n_ > 64) throw std::logic_error("state index needs n <= 64");
        return n_ == 0 ? 0 : words_[0];
    }

    std::vector<Vertex> vertices() const {
        std::vector<Vertex> out;
        out.reserve(count_);
        for (std::size_t v = 0; v < n_; ++v)
            if (contains(static_cast<Vertex>(v))) out.push_back(static_cast<Vertex>(v));
        return out;
    }

    friend bool operator==(const Configuration& a, const Configuration& b) {
        return a.n_ == b.n_ && a.words_ == b.words_;
    }

private:
    explicit Configuration(std::size_t n) : n_(n), words_((n + 63) / 64 + (n == 0 ? 1 : 0), 0) {}

    std::size_t n_ = 0;
    std::size_t count_ = 0;
    std::vector<std::uint64_t> words_{0};
};

// |N(v) ∩ S|
inline std::size_t mutant_neighbors(const Graph& g, const Configuration& cfg, Vertex v) {
    std::size_t m = 0;
    for (Vertex u : g.neighbors(v)) m += cfg.contains(u);
    return m;
}

}  // namespace mixmoran

#endif
