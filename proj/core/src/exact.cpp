#include "mixmoran/exact.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include "mixmoran/kernel.hpp"

namespace mixmoran {

namespace {

void check_size(const Graph& g, std::size_t max_n) {
    if (g.vertex_count() > max_n)
        throw TooLarge("exact solver limited to n <= " + std::to_string(max_n) + " (got n = " +
                       std::to_string(g.vertex_count()) + ")");
    if (max_n > 30) throw TooLarge("exact solver cannot address more than 2^30 states");
}

// Row of the stay-eliminated system for a transient state:
//   x[S] = sum_k weight_k x[target_k] + const
// where targets are the transient successors.
struct Row {
    std::uint32_t begin;  // into the flat entry arrays
    std::uint32_t end;
    double fp_const;    // probability mass moving straight to V
    double time_const;  // 1 / (1 - stay)
};

struct System {
    std::vector<Row> rows;  // indexed by state; absorbing rows unused
    std::vector<std::uint32_t> target;
    std::vector<double> weight;
    std::vector<std::uint32_t> order;  // transient states by increasing |S|
};

System build_system(const Graph& g, const ProcessParams& params) {
    const std::size_t n = g.vertex_count();
    const std::uint32_t states = std::uint32_t{1} << n;
    const std::uint32_t full = states - 1;
    System sys;
    sys.rows.resize(states);
    sys.target.reserve(static_cast<std::size_t>(states) * n);
    sys.weight.reserve(static_cast<std::size_t>(states) * n);
    for (std::uint32_t s = 1; s < full; ++s) {
        const auto td = transition_distribution(g, Configuration::from_index(n, s), params);
        const double leave = 1.0 - td.stay;
        Row row{static_cast<std::uint32_t>(sys.target.size()), 0, 0.0, 1.0 / leave};
        for (std::size_t v = 0; v < n; ++v) {
            const std::uint32_t bit = std::uint32_t{1} << v;
            const double p = (s & bit) ? td.loss[v] : td.gain[v];
            if (p == 0.0) continue;
            const std::uint32_t next = s ^ bit;
            if (next == full) {
                row.fp_const += p / leave;
            } else if (next != 0) {
                sys.target.push_back(next);
                sys.weight.push_back(p / leave);
            }
        }
        row.end = static_cast<std::uint32_t>(sys.target.size());
        sys.rows[s] = row;
    }
    sys.order.resize(states - 2);
    std::iota(sys.order.begin(), sys.order.end(), 1U);
    std::stable_sort(sys.order.begin(), sys.order.end(),
                     [](std::uint32_t a, std::uint32_t b) { return std::popcount(a) < std::popcount(b); });
    return sys;
}

// Max-norm residuals (fp, relative time) of the current iterate.
std::pair<double, double> residuals(const System& sys, const std::vector<double>& fp,
                                    const std::vector<double>& t) {
    double rf = 0.0, rt = 0.0, tmax = 1.0;
    for (std::uint32_t s : sys.order) {
        const Row& row = sys.rows[s];
        double xf = row.fp_const, xt = row.time_const;
        for (std::uint32_t k = row.begin; k < row.end; ++k) {
            xf += sys.weight[k] * fp[sys.target[k]];
            xt += sys.weight[k] * t[sys.target[k]];
        }
        rf = std::max(rf, std::abs(xf - fp[s]));
        rt = std::max(rt, std::abs(xt - t[s]));
        tmax = std::max(tmax, std::abs(t[s]));
    }
    return {rf, rt / tmax};
}

void gauss_seidel(const System& sys, ExactSolution& sol, const SolveOptions& opt) {
    auto sweep = [&](std::uint32_t s) {
        const Row& row = sys.rows[s];
        double xf = row.fp_const, xt = row.time_const;
        for (std::uint32_t k = row.begin; k < row.end; ++k) {
            xf += sys.weight[k] * sol.fp[sys.target[k]];
            xt += sys.weight[k] * sol.abs_time[sys.target[k]];
        }
        sol.fp[s] = xf;
        sol.abs_time[s] = xt;
    };
    constexpr std::size_t check_every = 8;
    for (std::size_t it = 1; it <= opt.max_iterations; ++it) {
        if (it % 2 == 1) {
            for (std::uint32_t s : sys.order) sweep(s);
        } else {
            for (auto s = sys.order.rbegin(); s != sys.order.rend(); ++s) sweep(*s);
        }
        if (it % check_every == 0 || it == opt.max_iterations) {
            auto [rf, rt] = residuals(sys, sol.fp, sol.abs_time);
            sol.diagnostics.iterations = it;
            sol.diagnostics.residual = std::max(rf, rt);
            if (sol.diagnostics.residual <= opt.tolerance) return;
        }
    }
    throw NonConvergence("Gauss-Seidel did not reach residual " + std::to_string(opt.tolerance) + " in " +
                         std::to_string(opt.max_iterations) + " sweeps (residual " +
                         std::to_string(sol.diagnostics.residual) + ")");
}

void sparse_lu(const System& sys, ExactSolution& sol, const SolveOptions& opt) {
    const std::size_t m = sys.order.size();
    std::vector<std::uint32_t> slot(sys.rows.size(), 0);
    for (std::size_t i = 0; i < m; ++i) slot[sys.order[i]] = static_cast<std::uint32_t>(i);

    std::vector<Eigen::Triplet<double>> triplets;
    Eigen::MatrixXd rhs(static_cast<Eigen::Index>(m), 2);
    for (std::size_t i = 0; i < m; ++i) {
        const Row& row = sys.rows[sys.order[i]];
        const auto ii = static_cast<Eigen::Index>(i);
        triplets.emplace_back(ii, ii, 1.0);
        for (std::uint32_t k = row.begin; k < row.end; ++k)
            triplets.emplace_back(ii, static_cast<Eigen::Index>(slot[sys.target[k]]), -sys.weight[k]);
        rhs(ii, 0) = row.fp_const;
        rhs(ii, 1) = row.time_const;
    }
    Eigen::SparseMatrix<double> a(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
    a.setFromTriplets(triplets.begin(), triplets.end());
    a.makeCompressed();
    Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;
    lu.compute(a);
    if (lu.info() != Eigen::Success) throw NonConvergence("sparse LU factorization failed");
    Eigen::MatrixXd x = lu.solve(rhs);
    for (std::size_t i = 0; i < m; ++i) {
        sol.fp[sys.order[i]] = x(static_cast<Eigen::Index>(i), 0);
        sol.abs_time[sys.order[i]] = x(static_cast<Eigen::Index>(i), 1);
    }
    auto [rf, rt] = residuals(sys, sol.fp, sol.abs_time);
    sol.diagnostics.iterations = 1;
    sol.diagnostics.residual = std::max(rf, rt);
    if (sol.diagnostics.residual > std::max(opt.tolerance, 1e-10))
        throw NonConvergence("sparse LU residual " + std::to_string(sol.diagnostics.residual) + " too large");
}

}  // namespace

ExactSolution solve(const Graph& g, const ProcessParams& params, const SolveOptions& options) {
    params.validate();
    check_size(g, options.max_n);
    const std::size_t n = g.vertex_count();
    const std::size_t states = std::size_t{1} << n;

    ExactSolution sol;
    sol.n = n;
    sol.params = params;
    sol.fp.assign(states, 0.0);
    sol.abs_time.assign(states, 0.0);
    sol.fp[states - 1] = 1.0;
    sol.diagnostics.method = options.method;

    const System sys = build_system(g, params);
    if (options.method == SolverMethod::SparseLU) {
        sparse_lu(sys, sol, options);
    } else {
        gauss_seidel(sys, sol, options);
    }
    return sol;
}

double fixation_probability(const ExactSolution& sol, const Configuration& s) {
    if (s.size() != sol.n) throw std::invalid_argument("configuration size does not match solution");
    return sol.fp[s.index()];
}

double absorption_time(const ExactSolution& sol, const Configuration& s) {
    if (s.size() != sol.n) throw std::invalid_argument("configuration size does not match solution");
    return sol.abs_time[s.index()];
}

// ---- exact rational mode ------------------------------------------------------

ExactRationalSolution solve_rational(const Graph& g, const ExactParams& params, std::size_t max_n) {
    params.validate();
    check_size(g, max_n);
    const std::size_t n = g.vertex_count();
    const std::size_t states = std::size_t{1} << n;
    const std::size_t m = states - 2;  // unknowns are states 1 .. 2^n - 2

    // Dense augmented system (I - P) x = b with two right-hand sides.
    std::vector<std::vector<Rational>> a(m, std::vector<Rational>(m + 2, Rational(0)));
    for (std::size_t s = 1; s + 1 < states; ++s) {
        auto& row = a[s - 1];
        const auto td = transition_distribution(g, Configuration::from_index(n, s), params);
        row[s - 1] = 1 - td.stay;
        row[m + 1] = 1;
        for (std::size_t v = 0; v < n; ++v) {
            const std::size_t bit = std::size_t{1} << v;
            const Rational& p = (s & bit) ? td.loss[v] : td.gain[v];
            if (sgn(p) == 0) continue;
            const std::size_t next = s ^ bit;
            if (next == states - 1) {
                row[m] += p;
            } else if (next != 0) {
                row[next - 1] -= p;
            }
        }
    }

    for (std::size_t col = 0; col < m; ++col) {
        std::size_t pivot = col;
        while (pivot < m && sgn(a[pivot][col]) == 0) ++pivot;
        if (pivot == m) throw NonConvergence("singular system in rational solve");
        std::swap(a[pivot], a[col]);
        const Rational inv = 1 / a[col][col];
        for (std::size_t j = col; j < m + 2; ++j)
            if (sgn(a[col][j]) != 0) a[col][j] *= inv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == col || sgn(a[i][col]) == 0) continue;
            const Rational factor = a[i][col];
            for (std::size_t j = col; j < m + 2; ++j)
                if (sgn(a[col][j]) != 0) a[i][j] -= factor * a[col][j];
        }
    }

    ExactRationalSolution sol;
    sol.n = n;
    sol.params = params;
    sol.fp.assign(states, Rational(0));
    sol.abs_time.assign(states, Rational(0));
    sol.fp[states - 1] = 1;
    for (std::size_t s = 1; s + 1 < states; ++s) {
        sol.fp[s] = a[s - 1][m];
        sol.abs_time[s] = a[s - 1][m + 1];
    }
    return sol;
}

const Rational& fixation_probability(const ExactRationalSolution& sol, const Configuration& s) {
    if (s.size() != sol.n) throw std::invalid_argument("configuration size does not match solution");
    return sol.fp[s.index()];
}

const Rational& absorption_time(const ExactRationalSolution& sol, const Configuration& s) {
    if (s.size() != sol.n) throw std::invalid_argument("configuration size does not match solution");
    return sol.abs_time[s.index()];
}

}  // namespace mixmoran
