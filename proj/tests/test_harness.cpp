#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>

#include "oracles.hpp"
#include "thinlaw/harness.hpp"

using namespace thinlaw;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

bool all_pass(const std::vector<CheckResult>& cs) {
    for (const auto& c : cs)
        if (!c.pass) return false;
    return !cs.empty();
}
}  // namespace

TEST_CASE("sequence table reproduces the reference sweep") {
    SequenceTable t = sequences(Pmf::binomial(2, 0.5), 10);
    REQUIRE(t.column_names == std::vector<std::string>{"d", "t", "r", "h"});
    REQUIRE(t.n_values.size() == 10);
    CHECK(t.columns[0][0] == doctest::Approx(0.1335661).epsilon(1e-5));
    CHECK(t.columns[3][0] == doctest::Approx(1.0397208).epsilon(1e-5));
    for (std::size_t i = 1; i < 10; ++i) {
        CHECK(t.columns[0][i] <= t.columns[0][i - 1] + 1e-12);  // d decreasing
        CHECK(t.columns[1][i] <= t.columns[1][i - 1] + 1e-12);  // t decreasing
        CHECK(t.columns[2][i] <= t.columns[2][i - 1] + 1e-12);  // r decreasing
        CHECK(t.columns[3][i] >= t.columns[3][i - 1] - 1e-12);  // h increasing
    }
    CHECK(t.columns[0][0] == doctest::Approx(t.columns[1][0]).epsilon(1e-12));
    CHECK(t.columns[0][0] == doctest::Approx(t.columns[2][0]).epsilon(1e-12));
}

TEST_CASE("sequence table validates input") {
    CHECK_THROWS_AS(sequences(Pmf::bernoulli(0.5), 0), DomainError);
    CHECK_THROWS_AS(sequences(Pmf::bernoulli(0.5), 5, {"bogus"}), DomainError);
    CHECK_THROWS_AS(sequences(Pmf::point_mass(0), 5), ZeroMean);
    SequenceTable t = sequences(Pmf::geometric(0.5), 4, {"K", "l_n", "tv", "h_n", "h_tilde"});
    CHECK(t.columns.size() == 5);
    for (const auto& col : t.columns)
        for (double v : col) CHECK(std::isfinite(v));
}

TEST_CASE("thinning reduces divergence proportionally") {
    for (const auto& m : builtin_corpus()) {
        auto cs = check_thinning_lemma(m.pmf, {0.0, 0.3, 0.6, 1.0});
        CHECK(all_pass(cs));
        CHECK(cs[0].lhs == 0.0);
        CHECK(cs[0].rhs == 0.0);
        CHECK(cs.back().slack == doctest::Approx(0.0).epsilon(1e-12));
    }
}

TEST_CASE("divergence per summand shrinks under convolution") {
    CHECK(all_pass(check_convolution_lemma(Pmf::geometric(0.5), 8)));
    CHECK(all_pass(check_convolution_lemma(seeded_non_ulc_pmf(9), 6)));
}

TEST_CASE("derivative identity holds at interior alphas") {
    for (double a : {0.1, 0.5, 0.9}) {
        CheckResult c = check_debruijn(Pmf::binomial(3, 0.4), a, 1e-4);
        CHECK(c.pass);
        CHECK(std::abs(c.lhs - c.rhs) <= 1e-6);
    }
    CHECK_THROWS_AS(check_debruijn(Pmf::bernoulli(0.5), 0.5, 0.0), DomainError);
    CHECK_THROWS_AS(check_debruijn(Pmf::bernoulli(0.5), 1.0, 1e-4), DomainError);
}

TEST_CASE("log-Sobolev rows hold for every member") {
    for (const auto& m : builtin_corpus()) {
        auto cs = check_log_sobolev(m.pmf);
        REQUIRE(cs.size() == 3);
        CHECK(all_pass(cs));
    }
}

TEST_CASE("mixture identity is exact") {
    MixtureResult r = check_mixture_identity(
        {Pmf::poisson(1.0), Pmf::poisson(2.0), Pmf::poisson(3.0)});
    REQUIRE(r.betas.size() == 3);
    CHECK(r.betas[0] == doctest::Approx(5.0 / 12.0).epsilon(1e-12));
    CHECK(r.betas[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(r.betas[2] == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(r.check.pass);
    CHECK(r.check.lhs <= 1e-12);
    CHECK_THROWS_AS(check_mixture_identity({Pmf::bernoulli(0.5)}), DomainError);
    CHECK_THROWS_AS(check_mixture_identity({Pmf::bernoulli(0.5), Pmf::point_mass(0)}),
                    ZeroMean);
}

TEST_CASE("randomized mixture triples") {
    SplitMix64 rng(47);
    for (int i = 0; i < 10; ++i) {
        std::vector<Pmf> qs{oracle::random_pmf(rng), oracle::random_pmf(rng),
                            oracle::random_pmf(rng)};
        MixtureResult r = check_mixture_identity(qs, 1e-12);
        CHECK(r.check.pass);
        double total = 0.0;
        for (double b : r.betas) total += b;
        CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("leave-one-out bounds") {
    auto cs = check_leave_one_out(
        {Pmf::bernoulli(0.2), Pmf::bernoulli(0.3), Pmf::bernoulli(0.5)});
    REQUIRE(cs.size() == 3);
    CHECK(all_pass(cs));
    CHECK_THROWS_AS(check_leave_one_out({Pmf::bernoulli(0.5), Pmf::bernoulli(0.5)}),
                    DomainError);
    CHECK_THROWS_AS(
        check_leave_one_out({Pmf::bernoulli(0.5), Pmf::bernoulli(0.5), Pmf::point_mass(0)}),
        ZeroMean);
}

TEST_CASE("both KL directions to the size-biased law decrease") {
    auto exact = check_hn_monotone(Pmf::bernoulli(0.5), 6);
    CHECK(all_pass(exact));
    for (const auto& c : exact)
        if (c.name.rfind("h_n", 0) == 0) CHECK(c.slack == kInf);  // vacuous for exact pmfs
    auto geo = check_hn_monotone(Pmf::geometric(0.5), 8);
    CHECK(all_pass(geo));
    for (const auto& c : geo) CHECK(std::isfinite(c.slack));
}

TEST_CASE("entropy is monotone in the direction set by the class") {
    auto up = check_entropy_monotone(Pmf::binomial(3, 0.4), 8, Direction::increasing);
    CHECK(all_pass(up));
    auto down = check_entropy_monotone(Pmf::geometric(0.5), 8, Direction::decreasing);
    CHECK(all_pass(down));
    CHECK_THROWS_AS(check_entropy_monotone(Pmf::geometric(0.5), 8, Direction::increasing),
                    PreconditionFailed);
    CHECK_THROWS_AS(
        check_entropy_monotone(Pmf::from_weights({1, 1, 1, 1}), 8, Direction::increasing),
        PreconditionFailed);
    CHECK_THROWS_AS(
        check_entropy_monotone(Pmf::from_weights({1, 1, 1, 1}), 8, Direction::decreasing),
        PreconditionFailed);
}

TEST_CASE("entropy sandwich rows are present") {
    auto up = check_entropy_monotone(Pmf::binomial(2, 0.5), 6, Direction::increasing);
    int sandwich = 0;
    for (const auto& c : up)
        if (c.name.rfind("sandwich", 0) == 0) ++sandwich;
    CHECK(sandwich == 2);
}

TEST_CASE("convex order chain") {
    CHECK(all_pass(check_cx_chain(Pmf::binomial(2, 0.5), 6)));
    CHECK(all_pass(check_cx_chain(Pmf::geometric(0.5), 6)));
    CHECK_THROWS_AS(check_cx_chain(seeded_non_ulc_pmf(9), 6), PreconditionFailed);
}

TEST_CASE("binomial interpolation bound") {
    for (std::int64_t n : {2, 3, 7}) {
        CHECK(check_rulc_bound(Pmf::bernoulli(0.3), n).pass);
        CHECK(check_rulc_bound(Pmf::binomial(2, 0.5), n).pass);
        CHECK(check_rulc_bound(seeded_ulc_pmf(1), n).pass);
    }
    CHECK_THROWS_AS(check_rulc_bound(Pmf::geometric(0.5), 4), PreconditionFailed);
    CHECK_THROWS_AS(check_rulc_bound(Pmf::bernoulli(0.3), 0), DomainError);
}

TEST_CASE("estimated rates sit in the expected bands") {
    RateReport r = estimate_rate(Pmf::bernoulli(0.5), 16, 64);
    CHECK(std::abs(r.slope_d + 2.0) <= 0.15);
    CHECK(std::abs(r.slope_chi2 + 1.0) <= 0.15);
    CHECK(r.r2_d >= 0.999);
    CHECK(r.r2_chi2 >= 0.999);
    REQUIRE(r.k_chain.size() == 2);
    CHECK(r.k_chain[0].pass);
    CHECK(r.k_chain[1].pass);

    RateReport probe = estimate_rate(lambda_eq_var_probe(), 16, 64);
    CHECK(std::abs(probe.slope_chi2 + 2.0) <= 0.15);

    CHECK_THROWS_AS(estimate_rate(Pmf::poisson(1.0), 16, 32), DegenerateSequence);
    CHECK_THROWS_AS(estimate_rate(Pmf::bernoulli(0.5), 8, 8), DomainError);
}

TEST_CASE("distance to the limit obeys the divergence bound") {
    CHECK(all_pass(check_pinsker(Pmf::geometric(0.5), 2, 12)));
    CHECK(all_pass(check_pinsker(Pmf::poisson(2.0), 2, 6)));
    CheckResult slope = check_tv_slope(Pmf::bernoulli(0.5), 16, 64);
    CHECK(slope.pass);
    CHECK(slope.lhs <= -0.85);
    CHECK_THROWS_AS(check_tv_slope(Pmf::poisson(1.0), 16, 32), DegenerateSequence);
    auto both = check_tv_rate(Pmf::bernoulli(0.3), 16, 32);
    CHECK(all_pass(both));
}

TEST_CASE("entropy and divergence comparisons for ordered pairs") {
    Pmf f = law_of_thin_numbers(Pmf::binomial(2, 0.5), 2);
    Pmf g = law_of_thin_numbers(Pmf::binomial(2, 0.5), 3);
    auto cs = check_key_lemma(f, g);
    REQUIRE(cs.size() == 2);  // dominating law is both log-concave and ULC
    CHECK(all_pass(cs));
    CHECK_THROWS_AS(check_key_lemma(Pmf::bernoulli(0.3), Pmf::bernoulli(0.5)),
                    PreconditionFailed);
}

TEST_CASE("finite difference table alternates signs") {
    std::vector<double> recip;
    for (int n = 1; n <= 12; ++n) recip.push_back(1.0 / static_cast<double>(n));
    FiniteDiffTable t = complete_monotonicity(recip, 4);
    REQUIRE(t.diffs.size() == 5);
    for (std::size_t k = 0; k <= 4; ++k) {
        CHECK(t.diffs[k].size() == recip.size() - k);
        for (bool ok : t.sign_ok[k]) CHECK(ok);
        CHECK(t.noise_floor[k] ==
              doctest::Approx(std::ldexp(1e-14, static_cast<int>(k))).epsilon(1e-12));
    }
    CHECK(t.base == recip);

    FiniteDiffTable bad = complete_monotonicity({1.0, 0.0, 1.0}, 2);
    CHECK(!bad.sign_ok[1][1]);  // rises where it must fall

    CHECK_THROWS_AS(complete_monotonicity(recip, 7), DomainError);
    CHECK_THROWS_AS(complete_monotonicity({1.0, 0.5}, 4), TooShort);
}

TEST_CASE("self-convolution KL to size-biased law decreases") {
    auto geo = check_selfconv_sizebias_monotone(Pmf::geometric(0.5), 6);
    CHECK(all_pass(geo));
    auto exact = check_selfconv_sizebias_monotone(Pmf::bernoulli(0.4), 5);
    CHECK(all_pass(exact));
}

TEST_CASE("convergence thresholds at n=100") {
    for (const auto& m : builtin_corpus()) {
        auto cs = convergence_suite(m.pmf, 100);
        REQUIRE(cs.size() == 3);
        CHECK(all_pass(cs));
    }
}

TEST_CASE("seeded corpus generators are stable") {
    Pmf u = seeded_ulc_pmf(1);
    REQUIRE(u.size() == 6);
    CHECK(u[0] == doctest::Approx(0.19583).epsilon(2e-4));
    CHECK(u[1] == doctest::Approx(0.36243).epsilon(2e-4));
    CHECK(u[5] == doctest::Approx(0.00606).epsilon(2e-3));
    CHECK(u.mean() == doctest::Approx(1.4602).epsilon(1e-3));
    CHECK(is_ulc(u).holds);

    Pmf v = seeded_non_ulc_pmf(9);
    REQUIRE(v.size() == 6);
    CHECK(v.mean() == doctest::Approx(1.9044).epsilon(1e-3));
    CHECK(v.variance() == doctest::Approx(2.3039).epsilon(1e-3));
    CHECK(!is_ulc(v).holds);

    CHECK(linf_diff(seeded_ulc_pmf(4), seeded_ulc_pmf(4)) == 0.0);
}

TEST_CASE("the equal mean and variance probe is exact") {
    Pmf p = lambda_eq_var_probe();
    CHECK(p.mean() == p.variance());
    CHECK(p.mean() == 0.5);
}

TEST_CASE("builtin corpus shape") {
    auto corpus = builtin_corpus();
    REQUIRE(corpus.size() == 11);
    CHECK(corpus[0].name == "bern(0.3)");
    CHECK(corpus[7].name == "pois(1)");
    CHECK(corpus[10].name == "nonulc_seed_9");
    for (const auto& m : corpus) CHECK(m.pmf.mean() > 0.0);
}

TEST_CASE("suites run deterministically") {
    auto corpus = builtin_corpus();
    Tolerances tol;
    for (const std::string& s : {"thinning", "mixture", "schur"}) {
        auto a = run_suite(s, corpus, tol);
        auto b = run_suite(s, corpus, tol);
        REQUIRE(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
            CHECK(a[i].name == b[i].name);
            CHECK(a[i].lhs == b[i].lhs);
            CHECK(a[i].slack == b[i].slack);
            CHECK(a[i].status == b[i].status);
        }
    }
    CHECK_THROWS_AS(run_suite("bogus", corpus, tol), DomainError);
}

TEST_CASE("suite names are the documented fifteen") {
    const auto& names = suite_names();
    REQUIRE(names.size() == 15);
    CHECK(names.front() == "thinning");
    CHECK(names.back() == "schur");
}

TEST_CASE("precondition-violating members become skip rows") {
    std::vector<CorpusMember> only_geo{{"geom(0.5)", Pmf::geometric(0.5)}};
    auto rows = run_suite("rulc", only_geo, Tolerances{});
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].status == "skip");
    CHECK(!rows[0].note.empty());
}
