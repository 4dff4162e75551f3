#include "codesense/ensemble.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "codesense/bounds.hpp"

namespace codesense {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t counter_word(std::uint64_t seed, std::uint64_t index, std::uint64_t word) {
    std::uint64_t z = splitmix64(seed ^ 0x6A09E667F3BCC909ULL);
    z = splitmix64(z ^ splitmix64(index));
    return splitmix64(z ^ (word * 0xD1B54A32D192ED03ULL));
}

// Weight distribution of C(H); handles the degenerate rank(H) = p case.
WeightDistribution code_weight_distribution(const BinaryMatrix& h) {
    WeightDistribution dist;
    dist.p = h.cols();
    try {
        BinaryMatrix g = generator_from_parity_check(h);
        return weight_distribution_serial(g);
    } catch (const DegenerateCode&) {
        dist.counts.assign(h.cols() + 1, 0);
        dist.counts[0] = 1;
        return dist;
    }
}

BinaryMatrix matrix_from_index(std::size_t p, std::size_t r, std::uint64_t index) {
    BinaryMatrix h(r, p);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < p; ++j)
            if ((index >> (i * p + j)) & 1u) h.set(i, j, true);
    return h;
}

struct ScanAccumulator {
    std::vector<std::uint64_t> sum_aw;
    std::vector<std::uint64_t> sum_aw_pair;
    std::vector<std::uint64_t> k_zero_count;
    std::vector<std::uint64_t> sum_k;

    ScanAccumulator(std::size_t p, std::size_t neps)
        : sum_aw(p + 1, 0), sum_aw_pair((p + 1) * (p + 1), 0), k_zero_count(neps, 0),
          sum_k(neps, 0) {}

    void merge(const ScanAccumulator& o) {
        for (std::size_t i = 0; i < sum_aw.size(); ++i) sum_aw[i] += o.sum_aw[i];
        for (std::size_t i = 0; i < sum_aw_pair.size(); ++i) sum_aw_pair[i] += o.sum_aw_pair[i];
        for (std::size_t i = 0; i < k_zero_count.size(); ++i) {
            k_zero_count[i] += o.k_zero_count[i];
            sum_k[i] += o.sum_k[i];
        }
    }
};

void scan_range(std::size_t p, std::size_t r, std::span<const Rational> eps_list,
                std::uint64_t first, std::uint64_t last, ScanAccumulator& acc) {
    for (std::uint64_t idx = first; idx < last; ++idx) {
        BinaryMatrix h = matrix_from_index(p, r, idx);
        WeightDistribution dist = code_weight_distribution(h);
        for (std::size_t w = 0; w <= p; ++w) acc.sum_aw[w] += dist.counts[w];
        for (std::size_t w1 = 1; w1 <= p; ++w1)
            for (std::size_t w2 = 1; w2 <= p; ++w2)
                acc.sum_aw_pair[w1 * (p + 1) + w2] += dist.counts[w1] * dist.counts[w2];
        for (std::size_t e = 0; e < eps_list.size(); ++e) {
            std::uint64_t k = k_epsilon(dist, eps_list[e]);
            if (k == 0) ++acc.k_zero_count[e];
            acc.sum_k[e] += k;
        }
    }
}

void check_exhaustive_guard(std::size_t p, std::size_t r, bool allow_large) {
    if (r * p > kExhaustiveGuard && !allow_large)
        throw TooLarge("exhaustive scan over 2^" + std::to_string(r * p) +
                       " matrices exceeds the r*p <= 20 guard");
    if (r * p >= 40) throw TooLarge("exhaustive scan beyond 2^40 matrices is not supported");
}

}  // namespace

BinaryMatrix sample(const EnsembleSpec& spec, std::uint64_t index) {
    BinaryMatrix h(spec.r, spec.p);
    const std::size_t wpr = h.words_per_row();
    std::uint64_t ctr = 0;
    for (std::size_t i = 0; i < spec.r; ++i) {
        std::uint64_t* row = h.row_mut(i);
        for (std::size_t w = 0; w < wpr; ++w) row[w] = counter_word(spec.seed, index, ctr++);
        if (spec.p % 64) row[wpr - 1] &= (std::uint64_t{1} << (spec.p % 64)) - 1;
    }
    return h;
}

std::vector<double> expected_weight_distribution(std::size_t p, std::size_t r) {
    std::vector<double> out(p + 1, 0.0);
    out[0] = 1.0;
    double scale = std::ldexp(1.0, -static_cast<int>(r));
    for (std::size_t w = 1; w <= p; ++w)
        out[w] = binomial(static_cast<std::int64_t>(p), static_cast<std::int64_t>(w))
                     .convert_to<double>() *
                 scale;
    return out;
}

double covariance(std::size_t p, std::size_t r, std::size_t w1, std::size_t w2) {
    if (w1 < 1 || w1 > p || w2 < 1 || w2 > p)
        throw IndexOutOfRange("weights must lie in [1, p]");
    if (w1 != w2) return 0.0;
    double q = std::ldexp(1.0, -static_cast<int>(r));
    return (1.0 - q) * q *
           binomial(static_cast<std::int64_t>(p), static_cast<std::int64_t>(w1))
               .convert_to<double>();
}

ExhaustiveStats exhaustive_scan_serial(std::size_t p, std::size_t r,
                                       std::span<const Rational> eps_list, bool allow_large) {
    check_exhaustive_guard(p, r, allow_large);
    ExhaustiveStats stats;
    stats.p = p;
    stats.r = r;
    stats.total = std::uint64_t{1} << (r * p);
    ScanAccumulator acc(p, eps_list.size());
    scan_range(p, r, eps_list, 0, stats.total, acc);
    stats.sum_aw = std::move(acc.sum_aw);
    stats.sum_aw_pair = std::move(acc.sum_aw_pair);
    stats.k_zero_count = std::move(acc.k_zero_count);
    stats.sum_k = std::move(acc.sum_k);
    return stats;
}

ExhaustiveStats exhaustive_scan(std::size_t p, std::size_t r, std::span<const Rational> eps_list,
                                bool allow_large) {
    check_exhaustive_guard(p, r, allow_large);
    ExhaustiveStats stats;
    stats.p = p;
    stats.r = r;
    stats.total = std::uint64_t{1} << (r * p);
    ScanAccumulator acc(p, eps_list.size());
#pragma omp parallel
    {
        ScanAccumulator local(p, eps_list.size());
#pragma omp for schedule(static) nowait
        for (std::int64_t c = 0; c < 256; ++c) {
            std::uint64_t first = stats.total / 256 * static_cast<std::uint64_t>(c);
            std::uint64_t last =
                c == 255 ? stats.total : stats.total / 256 * static_cast<std::uint64_t>(c + 1);
            if (stats.total < 256) {  // tiny ensembles: single range on c == 0
                if (c != 0) continue;
                first = 0;
                last = stats.total;
            }
            scan_range(p, r, eps_list, first, last, local);
        }
#pragma omp critical
        acc.merge(local);
    }
    stats.sum_aw = std::move(acc.sum_aw);
    stats.sum_aw_pair = std::move(acc.sum_aw_pair);
    stats.k_zero_count = std::move(acc.k_zero_count);
    stats.sum_k = std::move(acc.sum_k);
    return stats;
}

EnsembleReport estimate_prob_k_zero(const EnsembleSpec& spec, const Rational& epsilon,
                                    bool allow_large) {
    EnsembleReport rep;
    rep.spec = spec;
    rep.epsilon = epsilon;
    rep.lemma4_lower = lemma4_lower_bound(static_cast<std::int64_t>(spec.p),
                                          static_cast<std::int64_t>(spec.r), epsilon);
    rep.lemma5_upper = lemma5_upper_bound(static_cast<std::int64_t>(spec.p),
                                          static_cast<std::int64_t>(spec.r), epsilon);
    // exact E[K_eps] = 2^-r (2X - 1) with X the Lemma 4 binomial sum
    {
        WeightBand band = weight_band(epsilon, static_cast<std::int64_t>(spec.p));
        BigInt x = binomial_sum(static_cast<std::int64_t>(spec.p), band.lo);
        BigRational ek(2 * x - 1, BigInt(1) << spec.r);
        rep.expected_k = ek.convert_to<double>();
    }

    if (spec.mode == EnsembleMode::Exhaustive) {
        const Rational eps_list[] = {epsilon};
        ExhaustiveStats stats = exhaustive_scan(spec.p, spec.r, eps_list, allow_large);
        rep.exact = true;
        rep.evaluated = stats.total;
        rep.k_zero_count = stats.k_zero_count[0];
        rep.prob_k_zero =
            static_cast<double>(stats.k_zero_count[0]) / static_cast<double>(stats.total);
        rep.stderr_ = 0.0;
        rep.mean_aw.resize(spec.p + 1);
        for (std::size_t w = 0; w <= spec.p; ++w)
            rep.mean_aw[w] =
                static_cast<double>(stats.sum_aw[w]) / static_cast<double>(stats.total);
        rep.prob_k_ge1 = 1.0 - rep.prob_k_zero;
        // exact integer comparison: count[K >= 1] <= sum K
        rep.markov_check = (stats.total - stats.k_zero_count[0]) <= stats.sum_k[0];
        return rep;
    }

    if (spec.trials == 0) throw DomainError("Monte-Carlo mode requires trials > 0");
    const std::uint64_t trials = spec.trials;
    std::uint64_t k_zero = 0;
    std::vector<std::uint64_t> sum_aw(spec.p + 1, 0);
#pragma omp parallel
    {
        std::uint64_t local_zero = 0;
        std::vector<std::uint64_t> local_aw(spec.p + 1, 0);
#pragma omp for schedule(static) nowait
        for (std::int64_t i = 0; i < static_cast<std::int64_t>(trials); ++i) {
            BinaryMatrix h = sample(spec, static_cast<std::uint64_t>(i));
            WeightDistribution dist = code_weight_distribution(h);
            if (k_epsilon(dist, epsilon) == 0) ++local_zero;
            for (std::size_t w = 0; w <= spec.p; ++w) local_aw[w] += dist.counts[w];
        }
#pragma omp critical
        {
            k_zero += local_zero;
            for (std::size_t w = 0; w <= spec.p; ++w) sum_aw[w] += local_aw[w];
        }
    }
    rep.exact = false;
    rep.evaluated = trials;
    rep.k_zero_count = k_zero;
    double freq = static_cast<double>(k_zero) / static_cast<double>(trials);
    rep.prob_k_zero = freq;
    rep.stderr_ = std::sqrt(freq * (1.0 - freq) / static_cast<double>(trials));
    rep.mean_aw.resize(spec.p + 1);
    for (std::size_t w = 0; w <= spec.p; ++w)
        rep.mean_aw[w] = static_cast<double>(sum_aw[w]) / static_cast<double>(trials);
    rep.prob_k_ge1 = 1.0 - freq;
    rep.markov_check = rep.prob_k_ge1 <= rep.expected_k;
    return rep;
}

std::vector<std::uint64_t> per_trial_k(const EnsembleSpec& spec, const Rational& epsilon) {
    if (spec.mode != EnsembleMode::MonteCarlo)
        throw DomainError("per-trial dump is a Monte-Carlo feature");
    std::vector<std::uint64_t> out(spec.trials);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(spec.trials); ++i) {
        BinaryMatrix h = sample(spec, static_cast<std::uint64_t>(i));
        out[static_cast<std::size_t>(i)] = k_epsilon(code_weight_distribution(h), epsilon);
    }
    return out;
}

std::vector<ExponentRow> finite_size_exponents(const Rational& epsilon, const Rational& alpha,
                                               std::span<const std::size_t> p_list,
                                               std::uint64_t seed, std::uint64_t trials) {
    if (alpha.num <= 0 || alpha.num >= alpha.den)
        throw DomainError("alpha must be in (0, 1)");
    AsymptoticReport asym = asymptotic_report(epsilon.value(), alpha.value());
    std::vector<ExponentRow> rows;
    for (std::size_t p : p_list) {
        ExponentRow row;
        row.p = p;
        row.r = static_cast<std::size_t>(
            (alpha.num * static_cast<std::int64_t>(p) + alpha.den / 2) / alpha.den);
        row.trials = trials;
        EnsembleSpec spec{p, row.r, seed, trials, EnsembleMode::MonteCarlo};
        EnsembleReport rep = estimate_prob_k_zero(spec, epsilon);
        row.k_zero_count = rep.k_zero_count;
        double pd = static_cast<double>(p);
        if (rep.k_zero_count == 0) {
            row.insufficient_k_zero = true;
        } else {
            row.exponent_k_zero = std::log2(rep.prob_k_zero) / pd;
        }
        if (rep.k_zero_count == trials) {
            row.insufficient_k_nonzero = true;
        } else {
            row.exponent_k_nonzero = std::log2(1.0 - rep.prob_k_zero) / pd;
        }
        row.f1_bound = asym.f1_upper;
        row.f2_bound = asym.f2_upper;
        rows.push_back(row);
    }
    return rows;
}

nlohmann::json EnsembleReport::to_json() const {
    nlohmann::json j;
    j["p"] = spec.p;
    j["r"] = spec.r;
    j["seed"] = spec.seed;
    j["trials"] = spec.trials;
    j["mode"] = spec.mode == EnsembleMode::Exhaustive ? "exhaustive" : "monte-carlo";
    j["epsilon"] = epsilon.value();
    j["evaluated"] = evaluated;
    j["k_zero_count"] = k_zero_count;
    j["prob_k_zero"] = prob_k_zero;
    j["stderr"] = stderr_;
    j["mean_aw"] = mean_aw;
    j["lemma4_lower"] = lemma4_lower;
    j["lemma5_upper"] = lemma5_upper;
    j["expected_k"] = expected_k;
    j["prob_k_ge1"] = prob_k_ge1;
    j["markov_check"] = markov_check;
    j["exact"] = exact;
    return j;
}

}  // namespace codesense
