#ifndef CODESENSE_ENSEMBLE_HPP
#define CODESENSE_ENSEMBLE_HPP

#include <cstdint>
#include <span>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "codesense/codeanalysis.hpp"
#include "codesense/gf2.hpp"
#include "codesense/rational.hpp"

namespace codesense {

enum class EnsembleMode { MonteCarlo, Exhaustive };

struct EnsembleSpec {
    std::size_t p = 0;
    std::size_t r = 0;
    std::uint64_t seed = 0;
    std::uint64_t trials = 0;
    EnsembleMode mode = EnsembleMode::MonteCarlo;
};

inline constexpr std::size_t kExhaustiveGuard = 20;  // r*p <= 20, i.e. <= 2^20 matrices

/// Uniform r x p matrix derived purely from (seed, index): trial i's matrix
/// does not depend on evaluation order, so parallel runs are reproducible.
BinaryMatrix sample(const EnsembleSpec& spec, std::uint64_t index);

/// E[A_w] = C(p, w) 2^-r for w = 1..p; entry 0 is 1 (the zero codeword).
std::vector<double> expected_weight_distribution(std::size_t p, std::size_t r);

/// Cov(w1, w2) = (1 - 2^-r) 2^-r C(p, w) when w1 = w2 = w, else 0.
double covariance(std::size_t p, std::size_t r, std::size_t w1, std::size_t w2);

/// Exact aggregates over all 2^(rp) matrices. Integer sums, so the
/// partitioned scan merges deterministically.
struct ExhaustiveStats {
    std::size_t p = 0;
    std::size_t r = 0;
    std::uint64_t total = 0;  // 2^(rp)
    std::vector<std::uint64_t> sum_aw;           // [w], w = 0..p
    std::vector<std::uint64_t> sum_aw_pair;      // [w1 * (p+1) + w2], w1, w2 = 1..p
    std::vector<std::uint64_t> k_zero_count;     // per epsilon
    std::vector<std::uint64_t> sum_k;            // per epsilon

    std::uint64_t pair(std::size_t w1, std::size_t w2) const { return sum_aw_pair[w1 * (p + 1) + w2]; }
};

ExhaustiveStats exhaustive_scan(std::size_t p, std::size_t r, std::span<const Rational> eps_list,
                                bool allow_large = false);
ExhaustiveStats exhaustive_scan_serial(std::size_t p, std::size_t r,
                                       std::span<const Rational> eps_list,
                                       bool allow_large = false);

struct EnsembleReport {
    EnsembleSpec spec;
    Rational epsilon;
    std::uint64_t k_zero_count = 0;
    std::uint64_t evaluated = 0;        // trials or 2^(rp)
    double prob_k_zero = 0.0;
    double stderr_ = 0.0;               // 0 in exhaustive mode
    std::vector<double> mean_aw;        // [w], w = 0..p
    double lemma4_lower = 0.0;
    double lemma5_upper = 0.0;
    double expected_k = 0.0;            // exact E[K_eps], closed form
    double prob_k_ge1 = 0.0;
    bool markov_check = false;          // Prob[K >= 1] <= E[K]
    bool exact = false;

    nlohmann::json to_json() const;
};

/// Monte-Carlo or exhaustive estimate of Prob[K_eps(H) = 0] over R_{r,p}.
/// K_eps is evaluated on the full code C(H). Throws DomainError on zero
/// trials in Monte-Carlo mode, TooLarge beyond the exhaustive guard.
EnsembleReport estimate_prob_k_zero(const EnsembleSpec& spec, const Rational& epsilon,
                                    bool allow_large = false);

/// Optional per-trial dump for offline analysis: one K value per trial.
std::vector<std::uint64_t> per_trial_k(const EnsembleSpec& spec, const Rational& epsilon);

struct ExponentRow {
    std::size_t p = 0;
    std::size_t r = 0;
    std::uint64_t trials = 0;
    std::uint64_t k_zero_count = 0;
    double exponent_k_zero = 0.0;      // (1/p) log2 Prob[K = 0]
    double exponent_k_nonzero = 0.0;   // (1/p) log2 Prob[K != 0]
    bool insufficient_k_zero = false;  // estimate was 0, log undefined
    bool insufficient_k_nonzero = false;
    double f1_bound = 0.0;
    double f2_bound = 0.0;
};

/// Finite-size exponent table for Theorem-2-style regime checks; r is the
/// nearest integer to alpha * p per row.
std::vector<ExponentRow> finite_size_exponents(const Rational& epsilon, const Rational& alpha,
                                               std::span<const std::size_t> p_list,
                                               std::uint64_t seed, std::uint64_t trials);

}  // namespace codesense

#endif
