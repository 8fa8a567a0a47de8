#ifndef MIXMORAN_CLOSED_FORMS_HPP
#define MIXMORAN_CLOSED_FORMS_HPP

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "mixmoran/configuration.hpp"
#include "mixmoran/graph.hpp"
#include "mixmoran/params.hpp"

namespace mixmoran {

class ClosedFormError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// ---- neutral (r = 1) formulas ------------------------------------------------

// At lambda = 1/2 and r = 1 on any connected graph: |S| / n.
template <typename T = double>
T neutral_half_lambda_fp(std::size_t n, std::size_t s_size) {
    if (n == 0 || s_size > n) throw ClosedFormError("need 0 <= |S| <= n");
    return T(T(static_cast<long>(s_size)) / T(static_cast<long>(n)));
}

// On a regular graph with r = 1, for every lambda: |S| / n.
template <typename T = double>
T neutral_regular_fp(std::size_t n, std::size_t s_size) {
    return neutral_half_lambda_fp<T>(n, s_size);
}

// f(d2) = (lambda d1 + (1 - lambda) d2) / (lambda d2 + (1 - lambda) d1); f(d1) = 1.
template <typename T>
T bidegreed_f_high(std::size_t d1, std::size_t d2, const T& lambda) {
    const T a(static_cast<long>(d1)), b(static_cast<long>(d2));
    return T(T(lambda * a + T(T(1) - lambda) * b) / T(lambda * b + T(T(1) - lambda) * a));
}

// Per-vertex f(deg_v) for a bidegreed graph. Throws ClosedFormError if the
// graph has more than two distinct degrees.
template <typename T>
std::vector<T> bidegreed_weights(const Graph& g, const T& lambda) {
    const DegreeProfile p = degree_profile(g);
    if (!p.bidegreed())
        throw ClosedFormError("graph is not bidegreed (" + std::to_string(p.distinct_degrees.size()) +
                              " distinct degrees)");
    const T high = bidegreed_f_high(p.d1(), p.d2(), lambda);
    std::vector<T> w(g.vertex_count(), T(1));
    for (std::size_t v = 0; v < g.vertex_count(); ++v)
        if (g.degree(static_cast<Vertex>(v)) == p.d2() && p.d2() != p.d1()) w[v] = high;
    return w;
}

// fp^{lambda,1}(S) = sum_{v in S} f(deg_v) / sum_{v in V} f(deg_v).
template <typename T>
T bidegreed_neutral_fp(const Graph& g, const T& lambda, const Configuration& s) {
    if (s.size() != g.vertex_count()) throw ClosedFormError("configuration size does not match graph");
    const std::vector<T> w = bidegreed_weights(g, lambda);
    T num(0), den(0);
    for (std::size_t v = 0; v < w.size(); ++v) {
        den += w[v];
        if (s.contains(static_cast<Vertex>(v))) num += w[v];
    }
    return T(num / den);
}

// ---- cycle -----------------------------------------------------------------

template <typename T>
struct CycleRates {
    std::size_t k;
    T fitness;  // F_k = r k + (n - k)
    T p_up;
    T p_down;
    T gamma;  // p_down / p_up
};

// Probabilities that a contiguous run of k mutants on the n-cycle grows or
// shrinks by one in a single step, 1 <= k <= n - 1.
template <typename T>
CycleRates<T> cycle_rates(std::size_t n, std::size_t k, const BasicParams<T>& params) {
    if (n < 3) throw ClosedFormError("cycle needs n >= 3");
    if (k < 1 || k >= n) throw ClosedFormError("cycle run length must be in [1, n-1]");
    const T& lambda = params.lambda;
    const T& r = params.r;
    const T nn(static_cast<long>(n));
    const T one_minus = T(T(1) - lambda);
    CycleRates<T> c{k, T(r * T(static_cast<long>(k)) + T(static_cast<long>(n - k))), T(0), T(0), T(0)};
    const T two_sided_up = T(T(2) * r / T(T(T(1) + r) * nn));
    const T two_sided_down = T(T(2) / T(T(T(1) + r) * nn));
    const T one_sided = T(T(1) / nn);
    c.p_up = T(lambda * r / c.fitness + one_minus * (k == n - 1 ? one_sided : two_sided_up));
    c.p_down = T(lambda / c.fitness + one_minus * (k == 1 ? one_sided : two_sided_down));
    c.gamma = T(c.p_down / c.p_up);
    return c;
}

// Fixation probability of a single mutant on the n-cycle,
// 1 / (1 + sum_{j=1}^{n-1} prod_{k=1}^{j} gamma_k).
// Evaluated in long double with a log-space fallback when partial products
// leave [1e-300, 1e300].
double cycle_fp(std::size_t n, const ProcessParams& params);

// Same formula in exact rational arithmetic.
Rational cycle_fp_exact(std::size_t n, const ExactParams& params);

// ---- star ------------------------------------------------------------------

using Matrix2 = std::array<std::array<double, 2>, 2>;

template <typename T>
using BasicMatrix2 = std::array<std::array<T, 2>, 2>;

// Recurrence coefficients for the star with N leaves (n = N + 1) in state
// (i mutant leaves, center mutant or resident). Index i runs over 0..N.
template <typename T>
struct StarCoefficients {
    std::size_t leaves = 0;
    // Center mutant: (1 - C_i) P*_i = A_i P*_{i+1} + B_i P0_i
    std::vector<T> A, B, C, alpha, beta;
    // Center resident: (1 - b_i) P0_i = a_i P*_i + c_i P0_{i-1}
    std::vector<T> a, b, c, p, q;
};

template <typename T>
struct StarSolution {
    T center_start;  // P*_0
    T leaf_start;    // P0_1
    // mutant_center[i] = P*_i, resident_center[i] = P0_i for i = 0..N.
    std::vector<T> mutant_center;
    std::vector<T> resident_center;
    BasicMatrix2<T> product;  // A^(N-1) = M_{N-1} ... M_1
};

template <typename T>
StarCoefficients<T> star_coefficients(std::size_t leaves, const BasicParams<T>& params) {
    if (leaves < 2) throw ClosedFormError("star needs at least 2 leaves");
    params.validate();
    const std::size_t N = leaves;
    const T NN(static_cast<long>(N));
    const T n(static_cast<long>(N + 1));
    const T& lambda = params.lambda;
    const T& r = params.r;
    const T rest = T(T(1) - lambda);

    StarCoefficients<T> s;
    s.leaves = N;
    for (std::size_t idx = 0; idx <= N; ++idx) {
        const T i(static_cast<long>(idx));
        const T d(static_cast<long>(N - idx));
        const T f_star = T(r * i + d + r);
        const T f_empty = T(r * i + d + T(1));
        const T g = T(r * i + d);

        s.A.push_back(T(lambda * r * d / T(NN * f_star) + rest * d / n));
        s.B.push_back(T(lambda * d / f_star + rest * d / T(n * g)));
        s.C.push_back(T(lambda * T(r * i / f_star + r * i / T(NN * f_star)) + rest * T(i / n + r * i / T(n * g))));
        s.a.push_back(T(lambda * r * i / f_empty + rest * r * i / T(n * g)));
        s.c.push_back(T(lambda * i / T(NN * f_empty) + rest * i / n));
        s.b.push_back(T(T(1) - s.a.back() - s.c.back()));

        const bool center_transient = idx < N;
        const bool empty_transient = idx > 0;
        const T one_minus_C = T(T(1) - s.C.back());
        const T one_minus_b = T(T(1) - s.b.back());
        if (center_transient && !(one_minus_C > T(0)))
            throw ClosedFormError("singular star recurrence: 1 - C_" + std::to_string(idx) + " <= 0");
        if (empty_transient && !(one_minus_b > T(0)))
            throw ClosedFormError("singular star recurrence: 1 - b_" + std::to_string(idx) + " <= 0");
        s.alpha.push_back(center_transient ? T(s.A.back() / one_minus_C) : T(0));
        s.beta.push_back(center_transient ? T(s.B.back() / one_minus_C) : T(0));
        s.p.push_back(empty_transient ? T(s.a.back() / one_minus_b) : T(0));
        s.q.push_back(empty_transient ? T(s.c.back() / one_minus_b) : T(0));
    }
    return s;
}

// M_i maps (P*_i, P0_{i-1}) to (P*_{i+1}, P0_i), 1 <= i <= N - 1.
template <typename T>
BasicMatrix2<T> star_transfer_matrix(const StarCoefficients<T>& s, std::size_t i) {
    if (i < 1 || i + 1 > s.leaves) throw ClosedFormError("transfer matrix index out of range");
    BasicMatrix2<T> m;
    m[0][0] = T(T(T(1) - s.beta[i] * s.p[i]) / s.alpha[i]);
    m[0][1] = T(-T(s.beta[i] * s.q[i]) / s.alpha[i]);
    m[1][0] = s.p[i];
    m[1][1] = s.q[i];
    return m;
}

template <typename T>
BasicMatrix2<T> multiply(const BasicMatrix2<T>& x, const BasicMatrix2<T>& y) {
    BasicMatrix2<T> z;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) z[i][j] = T(x[i][0] * y[0][j] + x[i][1] * y[1][j]);
    return z;
}

// Solves the star chain from the transfer-matrix product: P*_1 = 1 / A^(N-1)_{11},
// then forward substitution through M_1..M_{N-1} for the rest of the table.
template <typename T>
StarSolution<T> star_fp(std::size_t leaves, const BasicParams<T>& params) {
    const StarCoefficients<T> s = star_coefficients(leaves, params);
    const std::size_t N = leaves;

    BasicMatrix2<T> prod;
    prod[0][0] = T(1);
    prod[0][1] = T(0);
    prod[1][0] = T(0);
    prod[1][1] = T(1);
    for (std::size_t j = 1; j + 1 <= N; ++j) prod = multiply(star_transfer_matrix(s, j), prod);
    if (!(prod[0][0] != T(0))) throw ClosedFormError("singular star recurrence: A^(N-1)_11 = 0");

    StarSolution<T> sol;
    sol.product = prod;
    sol.mutant_center.assign(N + 1, T(0));
    sol.resident_center.assign(N + 1, T(0));
    sol.mutant_center[1] = T(T(1) / prod[0][0]);
    sol.resident_center[0] = T(0);
    for (std::size_t i = 1; i + 1 <= N; ++i) {
        const BasicMatrix2<T> m = star_transfer_matrix(s, i);
        sol.mutant_center[i + 1] = T(m[0][0] * sol.mutant_center[i] + m[0][1] * sol.resident_center[i - 1]);
        sol.resident_center[i] = T(m[1][0] * sol.mutant_center[i] + m[1][1] * sol.resident_center[i - 1]);
    }
    // The last step lands on P*_N = 1 up to rounding; pin the boundary value.
    sol.mutant_center[N] = T(1);
    sol.resident_center[N] = T(s.p[N] * sol.mutant_center[N] + s.q[N] * sol.resident_center[N - 1]);
    sol.mutant_center[0] = T(s.alpha[0] * sol.mutant_center[1]);
    sol.center_start = sol.mutant_center[0];
    sol.leaf_start = sol.resident_center[1];
    return sol;
}

// Looks up the fixation probability of an arbitrary mutant set on a star
// (vertex 0 is the center) from a solved table.
template <typename T>
T star_fp_of(const StarSolution<T>& sol, const Configuration& s) {
    const std::size_t N = sol.mutant_center.size() - 1;
    if (s.size() != N + 1) throw ClosedFormError("configuration size does not match star");
    const std::size_t mutant_leaves = s.count() - (s.contains(0) ? 1 : 0);
    return s.contains(0) ? sol.mutant_center[mutant_leaves] : sol.resident_center[mutant_leaves];
}

}  // namespace mixmoran

#endif
