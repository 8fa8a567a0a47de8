#ifndef MIXMORAN_RATIONAL_HPP
#define MIXMORAN_RATIONAL_HPP

#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace mixmoran {

using Rational = mpq_class;

// Parses "3", "-2", "0.25", "1e-3", "2.5E2" or "1/3" into an exact rational.
// Throws std::invalid_argument on anything else.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);

// Exact ratio of two positive integers, kept in lowest terms.
struct Ratio {
    std::uint64_t num = 1;
    std::uint64_t den = 1;

    static Ratio reduced(std::uint64_t num, std::uint64_t den);
    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
    Rational to_rational() const;

    friend bool operator==(const Ratio&, const Ratio&) = default;
};

// Scalar conversion helpers used by the templates shared between the
// floating-point and exact-rational code paths.
template <typename T>
inline T scalar(long v) { return T(v); }

template <typename T>
inline double to_double(const T& v) { return static_cast<double>(v); }

template <>
inline double to_double<Rational>(const Rational& v) { return v.get_d(); }

}  // namespace mixmoran

#endif
