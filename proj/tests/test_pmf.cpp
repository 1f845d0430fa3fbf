#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "oracles.hpp"
#include "thinlaw/pmf.hpp"

using namespace thinlaw;

TEST_CASE("from_weights normalizes and trims") {
    Pmf f = Pmf::from_weights({2.0, 2.0, 0.0, 0.0});
    CHECK(f.size() == 2);
    CHECK(f[0] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(f[1] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(f[5] == 0.0);
    CHECK(f.deficit() == 0.0);
    CHECK(!f.truncated());
    CHECK(f.mass() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("from_weights rejects bad input") {
    CHECK_THROWS_AS(Pmf::from_weights({}), EmptyOrNegative);
    CHECK_THROWS_AS(Pmf::from_weights({0.0, 0.0}), EmptyOrNegative);
    CHECK_THROWS_AS(Pmf::from_weights({0.5, -0.5}), EmptyOrNegative);
    CHECK_THROWS_AS(Pmf::from_weights({0.5, std::nan("")}), EmptyOrNegative);
    CHECK_NOTHROW(Pmf::from_weights({1.0, -1e-16}));  // rounding noise clamps to zero
}

TEST_CASE("binomial matches a Pascal-triangle oracle") {
    for (std::int64_t n : {1, 2, 5, 17, 40}) {
        for (double p : {0.05, 0.3, 0.5, 0.77}) {
            Pmf f = Pmf::binomial(n, p);
            auto ref = oracle::binomial(n, p);
            REQUIRE(f.size() == ref.size());
            CHECK(oracle::linf(f.weights(), ref) <= 1e-14);
        }
    }
}

TEST_CASE("binomial edge cases") {
    CHECK(Pmf::binomial(0, 0.4).size() == 1);
    CHECK(Pmf::binomial(3, 0.0).size() == 1);
    Pmf top = Pmf::binomial(3, 1.0);
    CHECK(top.size() == 4);
    CHECK(top[3] == 1.0);
    CHECK_THROWS_AS(Pmf::binomial(-1, 0.5), DomainError);
    CHECK_THROWS_AS(Pmf::binomial(2, 1.5), DomainError);
}

TEST_CASE("poisson truncation and recurrence") {
    for (double lambda : {0.3, 1.0, 2.5}) {
        Pmf f = Pmf::poisson(lambda);
        CHECK(f.truncated());
        CHECK(f.deficit() > 0.0);
        CHECK(f.deficit() <= 2e-15);
        CHECK(f[0] == doctest::Approx(std::exp(-lambda)).epsilon(1e-14));
        for (std::size_t i = 0; i + 1 < f.size(); ++i)
            CHECK(f[i + 1] / f[i] ==
                  doctest::Approx(lambda / static_cast<double>(i + 1)).epsilon(1e-12));
        CHECK(f.mean() == doctest::Approx(lambda).epsilon(1e-12));
        CHECK(f.variance() == doctest::Approx(lambda).epsilon(1e-10));
    }
    CHECK_THROWS_AS(Pmf::poisson(0.0), DomainError);
    CHECK_THROWS_AS(Pmf::poisson(1.0, 0.0), DomainError);
}

TEST_CASE("poisson_prefix matches the series") {
    Pmf f = Pmf::poisson_prefix(1.3, 9);
    auto ref = oracle::poisson_terms(1.3, 9);
    REQUIRE(f.size() == 9);
    for (std::size_t i = 0; i < 9; ++i)
        CHECK(f[i] == doctest::Approx(ref[i]).epsilon(1e-14));
    double tail = 1.0;
    for (double w : ref) tail -= w;
    CHECK(f.deficit() == doctest::Approx(tail).epsilon(1e-9));
    CHECK(f.truncated());
}

TEST_CASE("geometric and negative binomial") {
    Pmf g = Pmf::geometric(0.5);
    for (std::size_t i = 0; i < 10; ++i)
        CHECK(g[i] == doctest::Approx(std::pow(0.5, static_cast<double>(i + 1))).epsilon(1e-14));
    CHECK(g.mean() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(g.variance() == doctest::Approx(2.0).epsilon(1e-12));

    Pmf nb1 = Pmf::negative_binomial(1.0, 0.3);
    Pmf geo = Pmf::geometric(0.3);
    CHECK(oracle::linf(nb1.weights(), geo.weights()) <= 1e-14);

    Pmf nb = Pmf::negative_binomial(2.0, 0.5);
    CHECK(nb.mean() == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(nb.variance() == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(nb.truncated());

    CHECK_THROWS_AS(Pmf::geometric(0.0), DomainError);
    CHECK_THROWS_AS(Pmf::negative_binomial(0.0, 0.5), DomainError);
    CHECK(Pmf::geometric(1.0).size() == 1);
}

TEST_CASE("series constructors terminate when the partial sum saturates") {
    // Parameters whose running sum stalls a few ulps short of 1.0 must still
    // finish, with the true shortfall recorded as the deficit.
    double r = 1.3796551416266458, p = 0.3117801868366025;
    Pmf nb = Pmf::negative_binomial(r, p);
    CHECK(nb.truncated());
    CHECK(nb.deficit() <= 1e-14);
    CHECK(nb.mean() == doctest::Approx(r * (1.0 - p) / p).epsilon(1e-12));
    Pmf g = Pmf::geometric(p);
    CHECK(g.deficit() <= 1e-14);
    CHECK(g.mean() == doctest::Approx((1.0 - p) / p).epsilon(1e-12));
}

TEST_CASE("bernoulli and point mass") {
    Pmf b = Pmf::bernoulli(0.3);
    CHECK(b.size() == 2);
    CHECK(b[0] == doctest::Approx(0.7).epsilon(1e-15));
    CHECK(b.mean() == doctest::Approx(0.3).epsilon(1e-15));
    Pmf d3 = Pmf::point_mass(3);
    CHECK(d3.size() == 4);
    CHECK(d3[3] == 1.0);
    CHECK(d3.mean() == 3.0);
    CHECK(d3.variance() == 0.0);
    CHECK(d3.support_max() == 3);
}

TEST_CASE("raw preserves an explicit deficit") {
    Pmf f = Pmf::raw({0.25, 0.25}, 0.5);
    CHECK(f.mass() == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(f.deficit() == 0.5);
    CHECK(f.truncated());
    Pmf g = Pmf::raw({1.0}, -1e-3);
    CHECK(g.deficit() == 0.0);
}

TEST_CASE("mean and variance against the oracle") {
    SplitMix64 rng(42);
    for (int i = 0; i < 20; ++i) {
        Pmf f = oracle::random_pmf(rng);
        CHECK(f.mean() == doctest::Approx(oracle::mean(f.weights())).epsilon(1e-13));
        CHECK(f.variance() == doctest::Approx(oracle::variance(f.weights())).epsilon(1e-12));
    }
}

TEST_CASE("log_factorial agrees with lgamma across the table boundary") {
    CHECK(log_factorial(0) == 0.0);
    CHECK(log_factorial(1) == 0.0);
    CHECK(log_factorial(5) == doctest::Approx(std::log(120.0)).epsilon(1e-14));
    for (std::uint64_t n : {170ull, 65535ull, 65536ull, 70000ull})
        CHECK(log_factorial(n) ==
              doctest::Approx(std::lgamma(static_cast<double>(n) + 1.0)).epsilon(1e-13));
}

TEST_CASE("log_choose") {
    CHECK(std::exp(log_choose(5, 2)) == doctest::Approx(10.0).epsilon(1e-13));
    CHECK(log_choose(5, 0) == 0.0);
    CHECK(log_choose(5, 5) == 0.0);
}

TEST_CASE("kahan_sum compensates") {
    std::vector<double> xs(10, 0.1);
    CHECK(kahan_sum(xs) == doctest::Approx(1.0).epsilon(1e-16));
    std::vector<double> drip{1.0};
    drip.insert(drip.end(), 1000, 1e-16);  // each term alone is below one ulp of the sum
    CHECK(kahan_sum(drip) == doctest::Approx(1.0 + 1e-13).epsilon(1e-12));
}

TEST_CASE("linf_diff and approx_eq") {
    Pmf a = Pmf::bernoulli(0.5);
    Pmf b = Pmf::bernoulli(0.5 + 1e-12);
    CHECK(linf_diff(a, b) <= 2e-12);
    CHECK(approx_eq(a, b, 1e-10));
    CHECK(!approx_eq(a, Pmf::bernoulli(0.4), 1e-10));
    CHECK(linf_diff(a, Pmf::point_mass(0)) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("tolerances validate") {
    Tolerances t;
    CHECK_NOTHROW(t.validate());
    t.eps_eq = 1e-13;  // below eps_mass
    CHECK_THROWS_AS(t.validate(), DomainError);
    Tolerances u;
    u.tail_eps = 0.0;
    CHECK_THROWS_AS(u.validate(), DomainError);
}
