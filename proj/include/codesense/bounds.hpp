#ifndef CODESENSE_BOUNDS_HPP
#define CODESENSE_BOUNDS_HPP

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>
#include <nlohmann/json_fwd.hpp>

#include "codesense/rational.hpp"

namespace codesense {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// Exact C(p, w).
BigInt binomial(std::int64_t p, std::int64_t w);

/// Exact sum of C(p, w) for w = 0..a (empty when a < 0).
BigInt binomial_sum(std::int64_t p, std::int64_t a);

/// Binary entropy, H(0) = H(1) = 0 by continuity.
double binary_entropy(double x);

/// -2(x - 1/2)^2 >= H(x) - 1, with tolerance 1e-12 for rounding.
bool entropy_quadratic_bound_check(double x);

/// delta_S < mu * S.
double delta_upper_bound(double mu, std::uint64_t s);

/// Z = (sqrt(2) - 1) / (2 sqrt(6)).
double theorem_z_constant();

/// Lower bound on Prob[mu(Phi(H)) <= eps] over the random ensemble:
/// 1 - 2^(1-r) * sum_{w=0}^{floor((1-eps)p/2)} C(p,w). May be negative.
double lemma4_lower_bound(std::int64_t p, std::int64_t r, const Rational& epsilon);

/// Upper bound of the second-moment argument, with X the same binomial sum:
/// (1 - 2^-r) 2^(1+r) X / (2X - 1)^2. This bounds Prob[K_eps(H) = 0].
BigRational lemma5_upper_bound_exact(std::int64_t p, std::int64_t r, const Rational& epsilon);
double lemma5_upper_bound(std::int64_t p, std::int64_t r, const Rational& epsilon);

struct Theorem1Result {
    std::int64_t s_max = 0;       // largest S strictly below Z sqrt(p / log2 m)
    double epsilon_star = 0.0;    // sqrt(6 log2(m+1) / p)
    double prob = 0.0;            // 1 - 2^(1-p+r)
    double threshold = 0.0;       // Z sqrt(p / log2 m)
};

Theorem1Result theorem1_threshold(std::int64_t p, std::int64_t r);

struct BoundReport {
    std::int64_t p = 0;
    std::int64_t r = 0;
    std::uint64_t m = 0;
    Rational epsilon;
    double lemma4_lower = 0.0;  // may be negative (vacuous)
    double lemma5_upper = 0.0;  // may exceed 1 (vacuous)
    std::string lemma5_exact;   // exact rational, e.g. "222/5329"
    Theorem1Result theorem1;
    double z_constant = 0.0;

    nlohmann::json to_json() const;
};

BoundReport make_bound_report(std::int64_t p, std::int64_t r, const Rational& epsilon);

enum class Regime { BelowCritical, AtCritical, AboveCritical };

struct AsymptoticReport {
    double epsilon = 0.0;
    double alpha = 0.0;
    double f1_upper = 0.0;     // alpha - H((1-eps)/2)
    double f2_upper = 0.0;     // -(f1_upper)
    double alpha_star = 0.0;   // H((1-eps)/2)
    Regime regime = Regime::AtCritical;

    nlohmann::json to_json() const;
};

AsymptoticReport asymptotic_report(double epsilon, double alpha);

}  // namespace codesense

#endif
