#include <doctest.h>

#include <cmath>
#include <set>
#include <string>

#include <nlohmann/json.hpp>

#include "codesense/bounds.hpp"
#include "codesense/ensemble.hpp"

using namespace codesense;

TEST_CASE("sample is deterministic in (seed, index) and order-independent") {
    EnsembleSpec spec{8, 3, 7, 100, EnsembleMode::MonteCarlo};
    CHECK(sample(spec, 12) == sample(spec, 12));
    CHECK_FALSE(sample(spec, 12) == sample(spec, 13));
    EnsembleSpec other{8, 3, 8, 100, EnsembleMode::MonteCarlo};
    CHECK_FALSE(sample(spec, 12) == sample(other, 12));
}

TEST_CASE("sampled bits are uniform within 3 sigma") {
    EnsembleSpec spec{16, 4, 99, 0, EnsembleMode::MonteCarlo};
    std::size_t ones = 0, total = 0;
    for (std::uint64_t i = 0; i < 2000; ++i) {
        auto h = sample(spec, i);
        for (std::size_t row = 0; row < h.rows(); ++row) ones += h.row_weight(row);
        total += h.rows() * h.cols();
    }
    double freq = static_cast<double>(ones) / static_cast<double>(total);
    double sigma = 0.5 / std::sqrt(static_cast<double>(total));
    CHECK(std::abs(freq - 0.5) < 3.0 * sigma);
}

TEST_CASE("distinct indices give distinct matrices at birthday scale") {
    EnsembleSpec spec{16, 4, 1234, 0, EnsembleMode::MonteCarlo};
    std::set<std::string> seen;
    for (std::uint64_t i = 0; i < 500; ++i) {
        auto h = sample(spec, i);
        std::string key;
        for (std::size_t row = 0; row < h.rows(); ++row) key += h.row_hex(row);
        seen.insert(key);
    }
    CHECK(seen.size() == 500);  // 64-bit matrices, collision prob ~ 500^2 / 2^65
}

TEST_CASE("expected weight distribution closed form") {
    auto e = expected_weight_distribution(4, 2);
    CHECK(e[2] == doctest::Approx(1.5));
    auto full = expected_weight_distribution(6, 0);
    for (std::size_t w = 1; w <= 6; ++w)
        CHECK(full[w] == doctest::Approx(binomial(6, static_cast<std::int64_t>(w))
                                             .convert_to<double>()));
    double sum = 0.0;
    auto v = expected_weight_distribution(10, 3);
    for (std::size_t w = 1; w <= 10; ++w) sum += v[w];
    CHECK(sum == doctest::Approx((std::pow(2.0, 10) - 1.0) / 8.0).epsilon(1e-12));
}

TEST_CASE("covariance closed form") {
    CHECK(covariance(4, 2, 1, 2) == 0.0);
    CHECK(covariance(4, 2, 2, 2) == doctest::Approx(1.125));
    CHECK(covariance(8, 40, 3, 3) == doctest::Approx(0.0).epsilon(1e-10));
    CHECK_THROWS_AS(covariance(4, 2, 0, 1), IndexOutOfRange);
    CHECK_THROWS_AS(covariance(4, 2, 1, 5), IndexOutOfRange);
}

TEST_CASE("exhaustive scan reproduces the expectation formula exactly") {
    // sum over all 2^(rp) matrices of A_w must equal 2^(rp - r) C(p, w)
    for (auto [p, r] : {std::pair<std::size_t, std::size_t>{4, 2}, {5, 3}, {3, 4}}) {
        const Rational eps[] = {parse_rational("0.5")};
        auto stats = exhaustive_scan(p, r, eps);
        for (std::size_t w = 1; w <= p; ++w) {
            BigInt expect = (BigInt(1) << (r * p - r)) *
                            binomial(static_cast<std::int64_t>(p), static_cast<std::int64_t>(w));
            CHECK(BigInt(stats.sum_aw[w]) == expect);
        }
        CHECK(stats.sum_aw[0] == stats.total);
    }
}

TEST_CASE("exhaustive scan reproduces the covariance formula exactly") {
    for (auto [p, r] : {std::pair<std::size_t, std::size_t>{4, 2}, {5, 3}, {4, 4}}) {
        const Rational eps[] = {parse_rational("0.5")};
        auto stats = exhaustive_scan(p, r, eps);
        BigInt total = stats.total;
        for (std::size_t w1 = 1; w1 <= p; ++w1) {
            for (std::size_t w2 = 1; w2 <= p; ++w2) {
                // Cov = E[A1 A2] - E[A1] E[A2], cross-multiplied to integers:
                // (sum_pair * total - sum1 * sum2) * 2^(2r) == rhs * total^2
                BigInt lhs = (BigInt(stats.pair(w1, w2)) * total -
                              BigInt(stats.sum_aw[w1]) * BigInt(stats.sum_aw[w2])) *
                             (BigInt(1) << (2 * r));
                BigInt rhs = 0;
                if (w1 == w2)
                    rhs = ((BigInt(1) << r) - 1) *
                          binomial(static_cast<std::int64_t>(p),
                                   static_cast<std::int64_t>(w1)) *
                          total * total;
                CHECK(lhs == rhs);
            }
        }
    }
}

TEST_CASE("parallel and serial exhaustive scans agree") {
    const Rational eps[] = {parse_rational("0.25"), parse_rational("0.5")};
    auto a = exhaustive_scan(4, 3, eps);
    auto b = exhaustive_scan_serial(4, 3, eps);
    CHECK(a.sum_aw == b.sum_aw);
    CHECK(a.sum_aw_pair == b.sum_aw_pair);
    CHECK(a.k_zero_count == b.k_zero_count);
    CHECK(a.sum_k == b.sum_k);
}

TEST_CASE("exhaustive guard") {
    const Rational eps[] = {parse_rational("0.5")};
    CHECK_THROWS_AS(exhaustive_scan(7, 3, eps), TooLarge);
}

TEST_CASE("exhaustive report: Markov step and Lemma 4 sandwich") {
    EnsembleSpec spec{6, 2, 0, 0, EnsembleMode::Exhaustive};
    auto rep = estimate_prob_k_zero(spec, parse_rational("0.5"));
    CHECK(rep.exact);
    CHECK(rep.stderr_ == 0.0);
    CHECK(rep.evaluated == 4096);
    CHECK(rep.markov_check);
    CHECK(rep.prob_k_zero >= rep.lemma4_lower);
    CHECK(rep.prob_k_zero <= rep.lemma5_upper);
    CHECK(rep.prob_k_ge1 <= rep.expected_k);
    // ensemble mean of A_w matches the closed form
    auto expect = expected_weight_distribution(6, 2);
    for (std::size_t w = 1; w <= 6; ++w)
        CHECK(rep.mean_aw[w] == doctest::Approx(expect[w]).epsilon(1e-12));
}

TEST_CASE("Monte-Carlo converges to the exhaustive value") {
    EnsembleSpec ex{5, 3, 0, 0, EnsembleMode::Exhaustive};
    auto exact = estimate_prob_k_zero(ex, parse_rational("0.5"));
    EnsembleSpec mc{5, 3, 2718, 4000, EnsembleMode::MonteCarlo};
    auto est = estimate_prob_k_zero(mc, parse_rational("0.5"));
    double sigma = std::max(est.stderr_, 1e-3);
    CHECK(std::abs(est.prob_k_zero - exact.prob_k_zero) < 3.0 * sigma);
    CHECK(est.markov_check);
}

TEST_CASE("Monte-Carlo rejects zero trials and repeats bit-identically") {
    EnsembleSpec bad{6, 2, 1, 0, EnsembleMode::MonteCarlo};
    CHECK_THROWS_AS(estimate_prob_k_zero(bad, parse_rational("0.5")), DomainError);

    EnsembleSpec mc{8, 3, 31337, 500, EnsembleMode::MonteCarlo};
    auto a = estimate_prob_k_zero(mc, parse_rational("0.5"));
    auto b = estimate_prob_k_zero(mc, parse_rational("0.5"));
    CHECK(a.to_json().dump() == b.to_json().dump());
}

TEST_CASE("per-trial dump matches the aggregate count") {
    EnsembleSpec mc{6, 2, 424242, 300, EnsembleMode::MonteCarlo};
    auto ks = per_trial_k(mc, parse_rational("0.5"));
    auto rep = estimate_prob_k_zero(mc, parse_rational("0.5"));
    std::uint64_t zeros = 0;
    for (auto k : ks)
        if (k == 0) ++zeros;
    CHECK(zeros == rep.k_zero_count);
}

TEST_CASE("finite-size exponent rows carry the Theorem 2 bounds") {
    std::size_t ps[] = {10, 12};
    auto rows = finite_size_exponents(parse_rational("0.5"), parse_rational("0.5"), ps, 5, 400);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].r == 5);
    CHECK(rows[1].r == 6);
    for (const auto& row : rows) {
        CHECK(row.f1_bound == doctest::Approx(0.5 - binary_entropy(0.25)).epsilon(1e-10));
        CHECK(row.f1_bound + row.f2_bound == 0.0);
        if (!row.insufficient_k_zero) CHECK(row.exponent_k_zero <= 0.0);
    }
}
