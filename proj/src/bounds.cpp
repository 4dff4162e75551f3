#include "codesense/bounds.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

namespace codesense {

BigInt binomial(std::int64_t p, std::int64_t w) {
    if (w < 0 || w > p) return 0;
    if (w > p - w) w = p - w;
    BigInt c = 1;
    for (std::int64_t i = 1; i <= w; ++i) {
        c *= p - w + i;
        c /= i;
    }
    return c;
}

BigInt binomial_sum(std::int64_t p, std::int64_t a) {
    BigInt sum = 0;
    BigInt c = 1;  // C(p, 0)
    for (std::int64_t w = 0; w <= a && w <= p; ++w) {
        sum += c;
        c *= p - w;
        c /= w + 1;
    }
    return sum;
}

double binary_entropy(double x) {
    if (x < 0.0 || x > 1.0) throw DomainError("entropy argument outside [0, 1]");
    if (x == 0.0 || x == 1.0) return 0.0;
    return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

bool entropy_quadratic_bound_check(double x) {
    if (x <= 0.0 || x >= 1.0) throw DomainError("quadratic bound needs 0 < x < 1");
    double lhs = -2.0 * (x - 0.5) * (x - 0.5);
    double rhs = binary_entropy(x) - 1.0;
    return lhs >= rhs - 1e-12;
}

double delta_upper_bound(double mu, std::uint64_t s) {
    if (mu < 0.0) throw DomainError("mu must be nonnegative");
    if (s < 1) throw DomainError("S must be at least 1");
    return mu * static_cast<double>(s);
}

double theorem_z_constant() { return (std::sqrt(2.0) - 1.0) / (2.0 * std::sqrt(6.0)); }

double lemma4_lower_bound(std::int64_t p, std::int64_t r, const Rational& epsilon) {
    WeightBand band = weight_band(epsilon, p);
    BigInt x = binomial_sum(p, band.lo);
    // 1 - 2^(1-r) X evaluated exactly as a rational, rounded once.
    BigRational tail(2 * x, BigInt(1) << r);
    BigRational value = BigRational(1) - tail;
    return value.convert_to<double>();
}

BigRational lemma5_upper_bound_exact(std::int64_t p, std::int64_t r, const Rational& epsilon) {
    WeightBand band = weight_band(epsilon, p);
    BigInt x = binomial_sum(p, band.lo);
    // (1 - 2^-r) 2^(1+r) X = 2 (2^r - 1) X
    BigInt num = 2 * ((BigInt(1) << r) - 1) * x;
    BigInt den = (2 * x - 1) * (2 * x - 1);
    return BigRational(num, den);
}

double lemma5_upper_bound(std::int64_t p, std::int64_t r, const Rational& epsilon) {
    return lemma5_upper_bound_exact(p, r, epsilon).convert_to<double>();
}

Theorem1Result theorem1_threshold(std::int64_t p, std::int64_t r) {
    if (r < 1 || r >= p) throw AssumptionViolated("need p > r >= 1");
    const std::int64_t k = p - r;  // log2(m + 1)
    double log2_m;
    if (k <= 62) {
        std::uint64_t m = (std::uint64_t{1} << k) - 1;
        if (static_cast<double>(m + 1) < static_cast<double>(p))
            throw AssumptionViolated("2^(p-r) >= p violated");
        log2_m = std::log2(static_cast<double>(m));
    } else {
        log2_m = static_cast<double>(k);  // 2^k - 1 is indistinguishable at double precision
    }
    Theorem1Result res;
    res.threshold = theorem_z_constant() * std::sqrt(static_cast<double>(p) / log2_m);
    double f = std::floor(res.threshold);
    if (f == res.threshold) f -= 1.0;  // strict inequality
    res.s_max = f < 0.0 ? 0 : static_cast<std::int64_t>(f);
    res.epsilon_star = std::sqrt(6.0 * static_cast<double>(k) / static_cast<double>(p));
    res.prob = 1.0 - std::ldexp(1.0, static_cast<int>(std::max<std::int64_t>(1 - k, -1070)));
    return res;
}

BoundReport make_bound_report(std::int64_t p, std::int64_t r, const Rational& epsilon) {
    BoundReport rep;
    rep.p = p;
    rep.r = r;
    rep.m = (p - r) <= 62 ? (std::uint64_t{1} << (p - r)) - 1 : 0;
    rep.epsilon = epsilon;
    rep.lemma4_lower = lemma4_lower_bound(p, r, epsilon);
    BigRational l5 = lemma5_upper_bound_exact(p, r, epsilon);
    rep.lemma5_upper = l5.convert_to<double>();
    rep.lemma5_exact = l5.str();
    rep.theorem1 = theorem1_threshold(p, r);
    rep.z_constant = theorem_z_constant();
    return rep;
}

nlohmann::json BoundReport::to_json() const {
    nlohmann::json j;
    j["p"] = p;
    j["r"] = r;
    j["m"] = m;
    j["epsilon"] = epsilon.value();
    j["lemma4_lower"] = lemma4_lower;
    j["lemma4_vacuous"] = lemma4_lower <= 0.0;
    j["lemma5_upper"] = lemma5_upper;
    j["lemma5_vacuous"] = lemma5_upper >= 1.0;
    j["lemma5_exact"] = lemma5_exact;
    j["theorem1"] = {{"s_max", theorem1.s_max},
                     {"epsilon_star", theorem1.epsilon_star},
                     {"prob", theorem1.prob},
                     {"threshold", theorem1.threshold}};
    j["z_constant"] = z_constant;
    return j;
}

AsymptoticReport asymptotic_report(double epsilon, double alpha) {
    if (epsilon <= 0.0 || epsilon >= 1.0) throw DomainError("epsilon must be in (0, 1)");
    if (alpha <= 0.0 || alpha >= 1.0) throw DomainError("alpha must be in (0, 1)");
    AsymptoticReport rep;
    rep.epsilon = epsilon;
    rep.alpha = alpha;
    rep.alpha_star = binary_entropy((1.0 - epsilon) / 2.0);
    rep.f1_upper = alpha - rep.alpha_star;
    rep.f2_upper = -rep.f1_upper;
    rep.regime = alpha > rep.alpha_star  ? Regime::AboveCritical
                 : alpha < rep.alpha_star ? Regime::BelowCritical
                                          : Regime::AtCritical;
    return rep;
}

nlohmann::json AsymptoticReport::to_json() const {
    nlohmann::json j;
    j["epsilon"] = epsilon;
    j["alpha"] = alpha;
    j["f1_upper"] = f1_upper;
    j["f2_upper"] = f2_upper;
    j["alpha_star"] = alpha_star;
    j["regime"] = regime == Regime::AboveCritical  ? "AboveCritical"
                  : regime == Regime::BelowCritical ? "BelowCritical"
                                                    : "AtCritical";
    return j;
}

}  // namespace codesense
