#ifndef MIXMORAN_EXACT_HPP
#define MIXMORAN_EXACT_HPP

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "mixmoran/configuration.hpp"
#include "mixmoran/graph.hpp"
#include "mixmoran/params.hpp"

namespace mixmoran {

class TooLarge : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NonConvergence : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class SolverMethod {
    GaussSeidel,  // sweeps alternating increasing / decreasing |S|
    SparseLU,     // direct factorization (Eigen)
};

struct SolveOptions {
    std::size_t max_n = 16;
    SolverMethod method = SolverMethod::GaussSeidel;
    // Target for the max-norm residual of the stay-eliminated system. The
    // absorption-time residual is measured relative to max(1, max_S t[S]).
    double tolerance = 1e-13;
    std::size_t max_iterations = 1'000'000;
};

struct SolverDiagnostics {
    SolverMethod method = SolverMethod::GaussSeidel;
    std::size_t iterations = 0;
    double residual = 0.0;
};

// Fixation probabilities and expected absorption times for all 2^n
// configurations, indexed by the packed state index (bit i = vertex i).
struct ExactSolution {
    std::size_t n = 0;
    ProcessParams params{};
    std::vector<double> fp;
    std::vector<double> abs_time;
    SolverDiagnostics diagnostics;
};

ExactSolution solve(const Graph& g, const ProcessParams& params, const SolveOptions& options = {});

double fixation_probability(const ExactSolution& sol, const Configuration& s);
double absorption_time(const ExactSolution& sol, const Configuration& s);

// Exact rational solve by Gaussian elimination; intended for n <= 8.
struct ExactRationalSolution {
    std::size_t n = 0;
    ExactParams params;
    std::vector<Rational> fp;
    std::vector<Rational> abs_time;
};

ExactRationalSolution solve_rational(const Graph& g, const ExactParams& params, std::size_t max_n = 8);

const Rational& fixation_probability(const ExactRationalSolution& sol, const Configuration& s);
const Rational& absorption_time(const ExactRationalSolution& sol, const Configuration& s);

}  // namespace mixmoran

#endif
