#ifndef MIXMORAN_ESTIMATOR_HPP
#define MIXMORAN_ESTIMATOR_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "mixmoran/configuration.hpp"
#include "mixmoran/graph.hpp"
#include "mixmoran/params.hpp"

namespace mixmoran {

class InvalidConfig : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Constants of the hypotheses fp(S0) >= c_fp n^{-c1} and E[tau] <= C_tau n^{c2}.
struct FprasConstants {
    int c1 = 1;
    int c2 = 4;
    double c_fp = 1.0;
    double c_tau = 1.0;
};

enum class CertifiedRegime {
    HalfLambdaAdvantage,    // lambda = 1/2, r >= 1
    AlmostRegularAdvantage  // r > 1 and r >= alpha^2, any lambda
};

const char* to_string(CertifiedRegime regime);

struct Certification {
    CertifiedRegime regime;
    FprasConstants constants;
};

// Looks up the regimes in which the fixation lower bound and absorption-time
// upper bound are proven. Returns nullopt when none applies.
std::optional<Certification> certify_regime(const Graph& g, const Configuration& s0, const ExactParams& params);

struct AutoBudget {
    // Overrides the certified constants. The regime must still be certified.
    std::optional<FprasConstants> constants;
};

struct ManualBudget {
    std::uint64_t replicates = 1;  // N
    std::uint64_t cutoff = 1;      // T
};

struct EstimatorConfig {
    double epsilon = 0.1;
    std::variant<AutoBudget, ManualBudget> mode = ManualBudget{};
    std::uint64_t base_seed = 0;
    // Strict: any replicate reaching the cutoff aborts the estimate.
    // Tolerant: cutoffs are counted and the estimate is bracketed.
    bool strict_cutoff = false;
    std::size_t threads = 1;
};

// N = ceil(ln 16 / (2 eps^2 c_fp^2) n^{2 c1}),  T = ceil(8 C_tau N n^{c2}).
ManualBudget fpras_budget(std::size_t n, double epsilon, const FprasConstants& c);

struct EstimateReport {
    std::uint64_t replicates = 0;
    std::uint64_t cutoff = 0;
    std::uint64_t fixations = 0;
    std::uint64_t extinctions = 0;
    std::uint64_t cutoffs = 0;
    double fp_hat = 0.0;  // fixations / N; NaN when aborted
    double mean_steps = 0.0;
    double wilson_low = 0.0;  // 95% Wilson score interval for fixations / N
    double wilson_high = 0.0;
    double bracket_low = 0.0;  // fixations / N
    double bracket_high = 0.0; // (fixations + cutoffs) / N
    bool aborted = false;
    std::optional<CertifiedRegime> regime;  // set in Auto mode
};

struct WilsonInterval {
    double low;
    double high;
};

WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z = 1.959963984540054);

EstimateReport estimate(const Graph& g, const Configuration& s0, const ExactParams& params,
                        const EstimatorConfig& cfg);

// Convenience overload for double parameters (Auto mode needs exact values to
// certify the regime; they are recovered exactly from the doubles).
EstimateReport estimate(const Graph& g, const Configuration& s0, const ProcessParams& params,
                        const EstimatorConfig& cfg);

struct SweepPoint {
    std::size_t lambda_index;
    std::size_t r_index;
    ExactParams params;
    EstimateReport report;
};

// One estimate per (lambda, r) grid point, seeded with derive_seed(base_seed, i, j).
std::vector<SweepPoint> sweep(const Graph& g, const Configuration& s0, const std::vector<Rational>& lambda_grid,
                              const std::vector<Rational>& r_grid, const EstimatorConfig& cfg);

}  // namespace mixmoran

#endif
