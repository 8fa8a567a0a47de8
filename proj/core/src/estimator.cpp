#include "mixmoran/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "mixmoran/kernel.hpp"
#include "mixmoran/rng.hpp"

namespace mixmoran {

const char* to_string(CertifiedRegime regime) {
    switch (regime) {
        case CertifiedRegime::HalfLambdaAdvantage: return "half-lambda";
        case CertifiedRegime::AlmostRegularAdvantage: return "almost-regular";
    }
    return "unknown";
}

std::optional<Certification> certify_regime(const Graph& g, const Configuration& s0, const ExactParams& params) {
    params.validate();
    if (s0.count() == 0) return std::nullopt;
    const double r = params.r.get_d();
    if (params.lambda == Rational(1, 2) && params.r >= 1) {
        // fp >= |S0| / n and E[tau] <= n^4 r / (r - 1), or n^4 / 4 when r = 1.
        FprasConstants c{1, 4, static_cast<double>(s0.count()), params.r == 1 ? 0.25 : r / (r - 1.0)};
        return Certification{CertifiedRegime::HalfLambdaAdvantage, c};
    }
    if (params.r > 1 && degree_profile(g).alpha_squared_at_most(params.r)) {
        // fp >= n^{-2}; E[tau] <= 4 n^4 r / (r - 1) covering both lambda branches
        // and the doubled steps out of bad configurations.
        FprasConstants c{2, 4, 1.0, 4.0 * r / (r - 1.0)};
        return Certification{CertifiedRegime::AlmostRegularAdvantage, c};
    }
    return std::nullopt;
}

ManualBudget fpras_budget(std::size_t n, double epsilon, const FprasConstants& c) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw InvalidConfig("epsilon must lie in (0, 1)");
    if (!(c.c_fp > 0.0 && c.c_tau > 0.0)) throw InvalidConfig("FPRAS constants must be positive");
    const double nn = static_cast<double>(n);
    const double replicates =
        std::ceil(std::log(16.0) / (2.0 * epsilon * epsilon * c.c_fp * c.c_fp) * std::pow(nn, 2 * c.c1));
    const double cutoff = std::ceil(8.0 * c.c_tau * replicates * std::pow(nn, c.c2));
    constexpr double cap = 1.8e19;
    if (!(replicates < cap)) throw InvalidConfig("replicate budget overflows");
    return {static_cast<std::uint64_t>(replicates),
            cutoff < cap ? static_cast<std::uint64_t>(cutoff) : std::numeric_limits<std::uint64_t>::max()};
}

WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
    if (trials == 0) return {0.0, 1.0};
    const double nn = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / nn;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / nn;
    const double center = (p + z2 / (2.0 * nn)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn)) / denom;
    // The endpoints are exactly 0 and 1 at the extremes; avoid rounding residue.
    return {successes == 0 ? 0.0 : std::max(0.0, center - half),
            successes == trials ? 1.0 : std::min(1.0, center + half)};
}

namespace {

struct Tally {
    std::uint64_t fixations = 0;
    std::uint64_t extinctions = 0;
    std::uint64_t cutoffs = 0;
    std::uint64_t steps = 0;
};

void run_range(const Graph& g, const Configuration& s0, const ProcessParams& p, std::uint64_t seed,
               std::uint64_t cutoff, std::uint64_t begin, std::uint64_t end, Tally& tally) {
    for (std::uint64_t i = begin; i < end; ++i) {
        Rng rng = Rng::stream(seed, i);
        const AbsorptionResult res = run_to_absorption(g, s0, p, rng, cutoff);
        tally.steps += res.steps;
        switch (res.outcome) {
            case Outcome::Fixation: ++tally.fixations; break;
            case Outcome::Extinction: ++tally.extinctions; break;
            case Outcome::Cutoff: ++tally.cutoffs; break;
        }
    }
}

}  // namespace

EstimateReport estimate(const Graph& g, const Configuration& s0, const ExactParams& params,
                        const EstimatorConfig& cfg) {
    params.validate();
    if (s0.size() != g.vertex_count()) throw InvalidConfig("initial set size does not match graph");

    EstimateReport report;
    ManualBudget budget;
    if (const auto* manual = std::get_if<ManualBudget>(&cfg.mode)) {
        if (manual->replicates < 1 || manual->cutoff < 1) throw InvalidConfig("N and T must be >= 1");
        budget = *manual;
    } else {
        const auto& automatic = std::get<AutoBudget>(cfg.mode);
        const auto cert = certify_regime(g, s0, params);
        if (!cert)
            throw InvalidConfig(
                "no certified FPRAS regime applies (need lambda = 1/2 with r >= 1, or r > 1 with r >= alpha^2)");
        report.regime = cert->regime;
        budget = fpras_budget(g.vertex_count(), cfg.epsilon, automatic.constants.value_or(cert->constants));
    }
    report.replicates = budget.replicates;
    report.cutoff = budget.cutoff;

    const ProcessParams p = to_double(params);
    const std::size_t threads = std::max<std::size_t>(1, std::min<std::uint64_t>(cfg.threads, budget.replicates));
    std::vector<Tally> tallies(threads);
    if (threads == 1) {
        run_range(g, s0, p, cfg.base_seed, budget.cutoff, 0, budget.replicates, tallies[0]);
    } else {
        std::vector<std::thread> pool;
        const std::uint64_t chunk = (budget.replicates + threads - 1) / threads;
        for (std::size_t t = 0; t < threads; ++t) {
            const std::uint64_t begin = std::min<std::uint64_t>(budget.replicates, t * chunk);
            const std::uint64_t end = std::min<std::uint64_t>(budget.replicates, begin + chunk);
            pool.emplace_back(run_range, std::cref(g), std::cref(s0), std::cref(p), cfg.base_seed, budget.cutoff,
                              begin, end, std::ref(tallies[t]));
        }
        for (auto& th : pool) th.join();
    }

    Tally total;
    for (const Tally& t : tallies) {
        total.fixations += t.fixations;
        total.extinctions += t.extinctions;
        total.cutoffs += t.cutoffs;
        total.steps += t.steps;
    }
    const double nn = static_cast<double>(budget.replicates);
    report.fixations = total.fixations;
    report.extinctions = total.extinctions;
    report.cutoffs = total.cutoffs;
    report.mean_steps = static_cast<double>(total.steps) / nn;
    report.bracket_low = static_cast<double>(total.fixations) / nn;
    report.bracket_high = static_cast<double>(total.fixations + total.cutoffs) / nn;
    const WilsonInterval ci = wilson_interval(total.fixations, budget.replicates);
    report.wilson_low = ci.low;
    report.wilson_high = ci.high;
    report.aborted = cfg.strict_cutoff && total.cutoffs > 0;
    report.fp_hat = report.aborted ? std::numeric_limits<double>::quiet_NaN() : report.bracket_low;
    return report;
}

EstimateReport estimate(const Graph& g, const Configuration& s0, const ProcessParams& params,
                        const EstimatorConfig& cfg) {
    return estimate(g, s0, ExactParams{Rational(params.lambda), Rational(params.r)}, cfg);
}

std::vector<SweepPoint> sweep(const Graph& g, const Configuration& s0, const std::vector<Rational>& lambda_grid,
                              const std::vector<Rational>& r_grid, const EstimatorConfig& cfg) {
    if (lambda_grid.empty() || r_grid.empty()) throw InvalidConfig("sweep grids must be non-empty");
    std::vector<SweepPoint> out;
    out.reserve(lambda_grid.size() * r_grid.size());
    for (std::size_t i = 0; i < lambda_grid.size(); ++i) {
        for (std::size_t j = 0; j < r_grid.size(); ++j) {
            EstimatorConfig point = cfg;
            point.base_seed = derive_seed(cfg.base_seed, i, j);
            ExactParams params{lambda_grid[i], r_grid[j]};
            out.push_back({i, j, params, estimate(g, s0, params, point)});
        }
    }
    return out;
}

}  // namespace mixmoran
