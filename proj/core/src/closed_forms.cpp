#include "mixmoran/closed_forms.hpp"

#include <algorithm>
#include <cmath>

namespace mixmoran {

double cycle_fp(std::size_t n, const ProcessParams& params) {
    params.validate();
    if (n < 3) throw ClosedFormError("cycle needs n >= 3");

    // Running product in extended precision while it stays in range.
    long double sum = 1.0L;
    long double prod = 1.0L;
    std::vector<double> log_gamma;
    log_gamma.reserve(n - 1);
    bool in_range = true;
    for (std::size_t k = 1; k < n; ++k) {
        const double g = cycle_rates(n, k, params).gamma;
        log_gamma.push_back(std::log(g));
        if (in_range) {
            prod *= g;
            if (prod < 1e-300L || prod > 1e300L) {
                in_range = false;
            } else {
                sum += prod;
            }
        }
    }
    if (in_range) return static_cast<double>(1.0L / sum);

    // Log-space: fp = exp(-logsumexp(0, L_1, ..., L_{n-1})) with L_j = sum_{k<=j} log gamma_k.
    std::vector<long double> partial{0.0L};
    long double acc = 0.0L;
    for (double lg : log_gamma) {
        acc += lg;
        partial.push_back(acc);
    }
    const long double top = *std::max_element(partial.begin(), partial.end());
    long double s = 0.0L;
    for (long double L : partial) s += std::exp(L - top);
    return static_cast<double>(std::exp(-(top + std::log(s))));
}

Rational cycle_fp_exact(std::size_t n, const ExactParams& params) {
    params.validate();
    if (n < 3) throw ClosedFormError("cycle needs n >= 3");
    Rational sum(1), prod(1);
    for (std::size_t k = 1; k < n; ++k) {
        prod *= cycle_rates(n, k, params).gamma;
        sum += prod;
    }
    Rational fp = 1 / sum;
    fp.canonicalize();
    return fp;
}

}  // namespace mixmoran
