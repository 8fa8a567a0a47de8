#ifndef MIXMORAN_PARAMS_HPP
#define MIXMORAN_PARAMS_HPP

#include <stdexcept>
#include <string>
#include <string_view>

#include "mixmoran/rational.hpp"

namespace mixmoran {

// Mixing probability lambda (a step is Bd with probability lambda, dB
// otherwise) and mutant fitness r (residents have fitness 1).
template <typename T>
struct BasicParams {
    T lambda;
    T r;

    void validate() const {
        if (!(lambda >= T(0) && lambda <= T(1)))
            throw std::invalid_argument("lambda must lie in [0, 1]");
        if (!(r > T(0))) throw std::invalid_argument("fitness r must be positive");
    }
};

using ProcessParams = BasicParams<double>;
using ExactParams = BasicParams<Rational>;

inline ExactParams parse_params(std::string_view lambda, std::string_view r) {
    ExactParams p{parse_rational(lambda), parse_rational(r)};
    p.validate();
    return p;
}

inline ProcessParams to_double(const ExactParams& p) { return {p.lambda.get_d(), p.r.get_d()}; }

}  // namespace mixmoran

#endif
