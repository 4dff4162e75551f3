#ifndef CODESENSE_CODEANALYSIS_HPP
#define CODESENSE_CODEANALYSIS_HPP

#include <cstdint>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "codesense/gf2.hpp"
#include "codesense/rational.hpp"

namespace codesense {

/// Exact weight distribution {A_w} of a code, w = 0..p, counts[0] = 1.
struct WeightDistribution {
    std::vector<std::uint64_t> counts;
    std::size_t p = 0;

    std::uint64_t total() const;
};

inline constexpr std::size_t kWeightDistGuard = 32;

/// Full 2^k enumeration of the code spanned by G; O(2^k) row XOR steps.
/// Guarded at k <= 32 unless `allow_large` is set.
WeightDistribution weight_distribution(const BinaryMatrix& g, bool allow_large = false);

/// Single-threaded reference used to validate the partitioned kernel.
WeightDistribution weight_distribution_serial(const BinaryMatrix& g, bool allow_large = false);

/// K_eps: number of nonzero codewords with weight outside the open band
/// ((1-eps)p/2, (1+eps)p/2), i.e. the two tail sums of Lemma 4's statistic.
std::uint64_t k_epsilon(const WeightDistribution& dist, const Rational& epsilon);

/// Exact incoherence of the code's bipolar images, from weights alone:
/// max over nonzero codeword weights w of |p - 2w| / p.
double mu_exact_from_weights(const WeightDistribution& dist);

struct IncoherenceCertificate {
    Rational epsilon;
    std::uint64_t k_eps = 0;
    bool certified = false;
    double mu_bound = 1.0;  // epsilon when certified, exact mu otherwise
    double mu_exact = 1.0;
    std::int64_t band_lo = 0;
    std::int64_t band_hi = 0;

    nlohmann::json to_json() const;
};

IncoherenceCertificate incoherence_certificate(const BinaryMatrix& g, const Rational& epsilon,
                                               bool allow_large = false);

}  // namespace codesense

#endif
