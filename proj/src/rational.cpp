#include "codesense/rational.hpp"

#include <cctype>
#include <cstdlib>

namespace codesense {

Rational parse_rational(const std::string& text) {
    if (text.empty()) throw DomainError("empty rational literal");
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        std::int64_t n = std::stoll(text.substr(0, slash));
        std::int64_t d = std::stoll(text.substr(slash + 1));
        return Rational(n, d);
    }
    bool neg = text[0] == '-';
    std::size_t i = (neg || text[0] == '+') ? 1 : 0;
    std::int64_t num = 0;
    std::int64_t den = 1;
    bool seen_digit = false;
    bool seen_dot = false;
    for (; i < text.size(); ++i) {
        char c = text[i];
        if (c == '.') {
            if (seen_dot) throw DomainError("malformed decimal literal: " + text);
            seen_dot = true;
            continue;
        }
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw DomainError("malformed decimal literal: " + text);
        if (num > (INT64_MAX - 9) / 10) throw DomainError("decimal literal too long: " + text);
        num = num * 10 + (c - '0');
        if (seen_dot) den *= 10;
        seen_digit = true;
    }
    if (!seen_digit) throw DomainError("malformed decimal literal: " + text);
    return Rational(neg ? -num : num, den);
}

std::int64_t floor_scaled(const Rational& q, std::int64_t scale) {
    __int128 n = static_cast<__int128>(q.num) * scale;
    __int128 d = q.den;
    __int128 f = n / d;
    if (n % d != 0 && n < 0) f -= 1;
    return static_cast<std::int64_t>(f);
}

std::int64_t ceil_scaled(const Rational& q, std::int64_t scale) {
    __int128 n = static_cast<__int128>(q.num) * scale;
    __int128 d = q.den;
    __int128 c = n / d;
    if (n % d != 0 && n > 0) c += 1;
    return static_cast<std::int64_t>(c);
}

WeightBand weight_band(const Rational& epsilon, std::int64_t p) {
    if (epsilon.num <= 0 || epsilon.num >= epsilon.den)
        throw EpsilonOutOfRange("epsilon must satisfy 0 < epsilon < 1, got " + epsilon.str());
    Rational low(epsilon.den - epsilon.num, 2 * epsilon.den);
    Rational high(epsilon.den + epsilon.num, 2 * epsilon.den);
    return WeightBand{floor_scaled(low, p), ceil_scaled(high, p)};
}

}  // namespace codesense
