#include <doctest.h>

#include <random>

#include <nlohmann/json.hpp>

#include "codesense/bounds.hpp"
#include "codesense/codeanalysis.hpp"

using namespace codesense;

namespace {

BinaryMatrix random_full_rank(std::size_t k, std::size_t p, std::mt19937_64& rng) {
    for (;;) {
        BinaryMatrix m(k, p);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < p; ++j)
                if (rng() & 1u) m.set(i, j, true);
        if (rank(m) == k) return m;
    }
}

}  // namespace

TEST_CASE("weight_distribution small examples") {
    auto g = BinaryMatrix::from_bit_rows({"1100", "0011"});
    auto dist = weight_distribution(g);
    CHECK(dist.counts == std::vector<std::uint64_t>{1, 0, 2, 0, 1});
    CHECK(dist.total() == 4);

    auto single = BinaryMatrix::from_bit_rows({"11"});
    CHECK(weight_distribution(single).counts == std::vector<std::uint64_t>{1, 0, 1});
}

TEST_CASE("weight_distribution of the full space is the binomial row") {
    for (std::size_t p : {4, 7, 10}) {
        auto dist = weight_distribution(BinaryMatrix::identity(p));
        for (std::size_t w = 0; w <= p; ++w)
            CHECK(dist.counts[w] ==
                  binomial(static_cast<std::int64_t>(p), static_cast<std::int64_t>(w))
                      .convert_to<std::uint64_t>());
    }
}

TEST_CASE("parallel and serial weight distributions agree") {
    std::mt19937_64 rng(17);
    auto g = random_full_rank(16, 24, rng);
    auto a = weight_distribution(g);
    auto b = weight_distribution_serial(g);
    CHECK(a.counts == b.counts);
}

TEST_CASE("weight_distribution guard") {
    BinaryMatrix g(33, 40);
    for (std::size_t i = 0; i < 33; ++i) g.set(i, i, true);
    CHECK_THROWS_AS(weight_distribution(g), TooLarge);
}

TEST_CASE("weight_distribution invariant under generator row permutation") {
    auto g1 = BinaryMatrix::from_bit_rows({"110010", "011001", "101100"});
    auto g2 = BinaryMatrix::from_bit_rows({"101100", "110010", "011001"});
    CHECK(weight_distribution(g1).counts == weight_distribution(g2).counts);
}

TEST_CASE("k_epsilon hand-checked examples") {
    // code {0000, 1100, 0011, 1111}: nonzero weights {2, 2, 4}
    auto g = BinaryMatrix::from_bit_rows({"1100", "0011"});
    auto dist = weight_distribution(g);
    CHECK(k_epsilon(dist, parse_rational("0.9")) == 1);

    auto rep = weight_distribution(BinaryMatrix::from_bit_rows({"11"}));
    CHECK(k_epsilon(rep, parse_rational("0.5")) == 1);

    CHECK_THROWS_AS(k_epsilon(dist, Rational(3, 2)), EpsilonOutOfRange);
    CHECK_THROWS_AS(k_epsilon(dist, Rational(0, 1)), EpsilonOutOfRange);
}

TEST_CASE("k_epsilon is zero when all nonzero weights sit at p/2") {
    auto g = BinaryMatrix::from_bit_rows({"1100", "0110"});  // weights {2, 2, 2}, p = 4
    auto dist = weight_distribution(g);
    for (const char* e : {"0.1", "0.25", "0.5", "0.9"})
        CHECK(k_epsilon(dist, parse_rational(e)) == 0);
}

TEST_CASE("k_epsilon is monotone nonincreasing in epsilon") {
    std::mt19937_64 rng(23);
    auto g = random_full_rank(6, 12, rng);
    auto dist = weight_distribution(g);
    std::uint64_t prev = UINT64_MAX;
    for (int num = 1; num < 20; ++num) {
        std::uint64_t k = k_epsilon(dist, Rational(num, 20));
        CHECK(k <= prev);
        prev = k;
    }
}

TEST_CASE("band endpoints use exact rational arithmetic") {
    // p = 8, eps = 1/2: (1-eps)p/2 = 2 exactly; float drift would misplace it
    WeightBand band = weight_band(parse_rational("0.5"), 8);
    CHECK(band.lo == 2);
    CHECK(band.hi == 6);
    band = weight_band(parse_rational("0.25"), 8);
    CHECK(band.lo == 3);
    CHECK(band.hi == 5);
}

TEST_CASE("incoherence certificate examples") {
    auto ortho = BinaryMatrix::from_bit_rows({"1100", "0110"});
    auto cert = incoherence_certificate(ortho, parse_rational("0.3"));
    CHECK(cert.certified);
    CHECK(cert.k_eps == 0);
    CHECK(cert.mu_bound == doctest::Approx(0.3));
    CHECK(cert.mu_exact == 0.0);

    auto split = BinaryMatrix::from_bit_rows({"1100", "0011"});
    auto cert2 = incoherence_certificate(split, parse_rational("0.5"));
    CHECK_FALSE(cert2.certified);
    CHECK(cert2.mu_exact == 1.0);  // weight-4 codeword: |1 - 2*4/4| = 1
    CHECK(cert2.mu_bound == 1.0);

    auto full = incoherence_certificate(BinaryMatrix::identity(6), parse_rational("0.5"));
    CHECK(full.mu_exact == 1.0);  // all-ones codeword is antipodal
}

TEST_CASE("certificate serializes with band endpoints") {
    auto cert = incoherence_certificate(BinaryMatrix::from_bit_rows({"1100", "0110"}),
                                        parse_rational("0.5"));
    auto j = cert.to_json();
    CHECK(j["certified"] == true);
    CHECK(j["band"][0] == 1);
    CHECK(j["band"][1] == 3);
    CHECK(j["k_epsilon"] == 0);
}
