#include "mixmoran/rational.hpp"

#include <cctype>
#include <numeric>
#include <stdexcept>

namespace mixmoran {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

Rational pow10(long e) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(e < 0 ? -e : e));
    return e < 0 ? Rational(mpz_class(1), p) : Rational(p);
}

}  // namespace

Rational parse_rational(std::string_view text) {
    const std::string original(text);
    auto bad = [&]() { return std::invalid_argument("not a rational number: '" + original + "'"); };

    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    if (text.empty()) throw bad();

    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        Rational num = parse_rational(text.substr(0, slash));
        Rational den = parse_rational(text.substr(slash + 1));
        if (sgn(den) == 0) throw bad();
        Rational q = num / den;
        q.canonicalize();
        return q;
    }

    bool negative = false;
    if (text.front() == '+' || text.front() == '-') {
        negative = text.front() == '-';
        text.remove_prefix(1);
    }

    long exponent = 0;
    if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
        std::string_view exp_part = text.substr(e + 1);
        bool exp_negative = false;
        if (!exp_part.empty() && (exp_part.front() == '+' || exp_part.front() == '-')) {
            exp_negative = exp_part.front() == '-';
            exp_part.remove_prefix(1);
        }
        if (!all_digits(exp_part) || exp_part.size() > 6) throw bad();
        exponent = std::stol(std::string(exp_part));
        if (exp_negative) exponent = -exponent;
        text = text.substr(0, e);
    }

    std::string_view int_part = text;
    std::string_view frac_part;
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
        int_part = text.substr(0, dot);
        frac_part = text.substr(dot + 1);
    }
    if (int_part.empty() && frac_part.empty()) throw bad();
    if (!int_part.empty() && !all_digits(int_part)) throw bad();
    if (!frac_part.empty() && !all_digits(frac_part)) throw bad();

    std::string digits = std::string(int_part) + std::string(frac_part);
    if (digits.empty()) throw bad();
    Rational q(mpz_class(digits, 10));
    q *= pow10(exponent - static_cast<long>(frac_part.size()));
    q.canonicalize();
    return negative ? Rational(-q) : q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

Ratio Ratio::reduced(std::uint64_t num, std::uint64_t den) {
    if (den == 0) throw std::invalid_argument("ratio with zero denominator");
    std::uint64_t g = std::gcd(num, den);
    return Ratio{num / g, den / g};
}

Rational Ratio::to_rational() const {
    return Rational(mpz_class(std::to_string(num)), mpz_class(std::to_string(den)));
}

}  // namespace mixmoran
