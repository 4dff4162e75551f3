#include "codesense/codeanalysis.hpp"

#include <algorithm>
#include <numeric>

#include <nlohmann/json.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace codesense {

std::uint64_t WeightDistribution::total() const {
    return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
}

namespace {

void check_guard(const BinaryMatrix& g, bool allow_large) {
    if (g.rows() > kWeightDistGuard && !allow_large)
        throw TooLarge("weight distribution of a k = " + std::to_string(g.rows()) +
                       " code needs 2^k enumeration; pass allow_large to override");
    if (g.rows() >= 63) throw TooLarge("k >= 63 is not enumerable");
}

void accumulate_range(const BinaryMatrix& g, std::uint64_t first, std::uint64_t last,
                      std::vector<std::uint64_t>& counts) {
    visit_codewords(g, first, last, [&](std::uint64_t, std::span<const std::uint64_t> words) {
        ++counts[popcount_words(words)];
    });
}

}  // namespace

WeightDistribution weight_distribution_serial(const BinaryMatrix& g, bool allow_large) {
    check_guard(g, allow_large);
    WeightDistribution dist;
    dist.p = g.cols();
    dist.counts.assign(g.cols() + 1, 0);
    std::uint64_t total = std::uint64_t{1} << g.rows();
    accumulate_range(g, 0, total - 1, dist.counts);
    return dist;
}

WeightDistribution weight_distribution(const BinaryMatrix& g, bool allow_large) {
    check_guard(g, allow_large);
    WeightDistribution dist;
    dist.p = g.cols();
    dist.counts.assign(g.cols() + 1, 0);
    const std::uint64_t total = std::uint64_t{1} << g.rows();
    if (total < (std::uint64_t{1} << 14)) {
        accumulate_range(g, 0, total - 1, dist.counts);
        return dist;
    }
    // Partition message space into fixed chunks; histograms are integer
    // counts, so the merge is order-independent and thread count never
    // changes the result.
    const std::uint64_t chunk = std::uint64_t{1} << 14;
    const std::uint64_t nchunks = (total + chunk - 1) / chunk;
#pragma omp parallel
    {
        std::vector<std::uint64_t> local(g.cols() + 1, 0);
#pragma omp for schedule(static) nowait
        for (std::int64_t c = 0; c < static_cast<std::int64_t>(nchunks); ++c) {
            std::uint64_t first = static_cast<std::uint64_t>(c) * chunk;
            std::uint64_t last = std::min(first + chunk, total) - 1;
            accumulate_range(g, first, last, local);
        }
#pragma omp critical
        for (std::size_t w = 0; w <= g.cols(); ++w) dist.counts[w] += local[w];
    }
    return dist;
}

std::uint64_t k_epsilon(const WeightDistribution& dist, const Rational& epsilon) {
    WeightBand band = weight_band(epsilon, static_cast<std::int64_t>(dist.p));
    std::uint64_t k = 0;
    for (std::int64_t w = 1; w <= band.lo; ++w) k += dist.counts[static_cast<std::size_t>(w)];
    for (std::int64_t w = band.hi; w <= static_cast<std::int64_t>(dist.p); ++w)
        k += dist.counts[static_cast<std::size_t>(w)];
    return k;
}

double mu_exact_from_weights(const WeightDistribution& dist) {
    const std::int64_t p = static_cast<std::int64_t>(dist.p);
    std::int64_t max_num = -1;
    for (std::int64_t w = 1; w <= p; ++w) {
        if (dist.counts[static_cast<std::size_t>(w)] == 0) continue;
        std::int64_t num = p - 2 * w;
        if (num < 0) num = -num;
        max_num = std::max(max_num, num);
    }
    if (max_num < 0) return 0.0;  // no nonzero codewords
    return static_cast<double>(max_num) / static_cast<double>(p);
}

IncoherenceCertificate incoherence_certificate(const BinaryMatrix& g, const Rational& epsilon,
                                               bool allow_large) {
    WeightDistribution dist = weight_distribution(g, allow_large);
    WeightBand band = weight_band(epsilon, static_cast<std::int64_t>(dist.p));
    IncoherenceCertificate cert;
    cert.epsilon = epsilon;
    cert.k_eps = k_epsilon(dist, epsilon);
    cert.mu_exact = mu_exact_from_weights(dist);
    cert.certified = cert.k_eps == 0;
    cert.mu_bound = cert.certified ? epsilon.value() : cert.mu_exact;
    cert.band_lo = band.lo;
    cert.band_hi = band.hi;
    return cert;
}

nlohmann::json IncoherenceCertificate::to_json() const {
    nlohmann::json j;
    j["epsilon"] = epsilon.value();
    j["k_epsilon"] = k_eps;
    j["certified"] = certified;
    j["mu_bound"] = mu_bound;
    j["mu_exact"] = mu_exact;
    j["band"] = {band_lo, band_hi};
    return j;
}

}  // namespace codesense
