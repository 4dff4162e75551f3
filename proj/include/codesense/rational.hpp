#ifndef CODESENSE_RATIONAL_HPP
#define CODESENSE_RATIONAL_HPP

#include <cstdint>
#include <numeric>
#include <string>

#include "codesense/errors.hpp"

namespace codesense {

// Small exact rational, used wherever a band endpoint sits on an integer and
// floating point would misclassify it (floor/ceil of (1±ε)p/2).
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational() = default;
    Rational(std::int64_t n, std::int64_t d) : num(n), den(d) { reduce(); }

    void reduce() {
        if (den == 0) throw DomainError("rational with zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
        if (num == 0) den = 1;
    }

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }

    std::string str() const {
        return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
    }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num == b.num && a.den == b.den;
    }
};

// Parses a decimal string such as "0.25" or "1/3" to an exact rational.
Rational parse_rational(const std::string& text);

// floor(q * scale) and ceil(q * scale) for nonnegative q, exact.
std::int64_t floor_scaled(const Rational& q, std::int64_t scale);
std::int64_t ceil_scaled(const Rational& q, std::int64_t scale);

// Weight band of Lemma 4: [ floor((1-eps)p/2), ceil((1+eps)p/2) ].
struct WeightBand {
    std::int64_t lo;  // last weight of the lower tail
    std::int64_t hi;  // first weight of the upper tail
};
WeightBand weight_band(const Rational& epsilon, std::int64_t p);

}  // namespace codesense

#endif
