#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "thinlaw/info.hpp"
#include "thinlaw/orders.hpp"
#include "thinlaw/pmf.hpp"
#include "thinlaw/transforms.hpp"

namespace thinlaw {

struct SequenceTable {
    std::vector<std::int64_t> n_values;
    std::vector<std::string> column_names;
    std::vector<std::vector<double>> columns;  // parallel to column_names
};

// Columns among {d, t, r, h, h_n, h_tilde, K, l_n, tv}:
//   d(n) = D(law_of_thin_numbers(f,n));  t(n) = n D(thin(f,1/n));
//   r(n) = D(self_convolve(f,n))/n;      h(n) = H(law_of_thin_numbers(f,n));
//   h_n / h_tilde = KL between the thinned law and its size-biased version (both directions);
//   K = scaled Fisher information of the thinned law;  tv = distance to the Poisson.
SequenceTable sequences(const Pmf& f, std::int64_t n_max,
                        const std::vector<std::string>& columns = {"d", "t", "r", "h"});

std::vector<CheckResult> check_thinning_lemma(const Pmf& f, const std::vector<double>& alphas,
                                              double eps_ineq = 1e-9);

std::vector<CheckResult> check_convolution_lemma(const Pmf& f, std::int64_t n_max,
                                                 double eps_ineq = 1e-9);

// Central-difference derivative of alpha -> D(thin(f,alpha)) against the exact form
// mean(f) * D(thin(size_bias(f),alpha) || thin(f,alpha)).
CheckResult check_debruijn(const Pmf& f, double alpha, double step);

// Rows: D(f) <= lambda*D(S(f)||f); D(f) <= lambda*chi^2(S(f),f); and the chain
// lambda*D(S(f)||f) <= lambda*chi^2(S(f),f).
std::vector<CheckResult> check_log_sobolev(const Pmf& f, double eps_ineq = 1e-9);

struct MixtureResult {
    CheckResult check;
    std::vector<double> betas;
};

// Size-biasing a convolution equals the beta-mixture of componentwise size-biasings.
MixtureResult check_mixture_identity(const std::vector<Pmf>& qs, double tol = 1e-10);

// Rows qsq, sqq (leave-one-out mixture bounds in both KL directions) and
// strong: D(q) <= (1/(n-1)) sum_i D(q without component i).
std::vector<CheckResult> check_leave_one_out(const std::vector<Pmf>& qs, double eps_ineq = 1e-9);

// Both KL distances between the thinned law and its size-biased version are
// nonincreasing in n; infinite values make links vacuous until both sides are finite.
std::vector<CheckResult> check_hn_monotone(const Pmf& f, std::int64_t n_max,
                                           double eps_ineq = 1e-9);

enum class Direction { increasing, decreasing };

// h(n) monotone in the stated direction plus the entropy sandwich against H(po(lambda)).
std::vector<CheckResult> check_entropy_monotone(const Pmf& f, std::int64_t n_max, Direction dir,
                                                double eps_ineq = 1e-9);

// Convex-order chain across n plus the log-concavity relation to the Poisson at
// every n; direction selected by whether f is ULC or dominates the Poisson.
std::vector<CheckResult> check_cx_chain(const Pmf& f, std::int64_t n_max,
                                        double eps_ineq = 1e-9);

// d(n) bounded by the two-binomial interpolation at the integer parts of n*lambda.
CheckResult check_rulc_bound(const Pmf& f, std::int64_t n, double eps_ineq = 1e-9);

struct RateReport {
    double slope_d = 0.0;
    double r2_d = 0.0;
    double slope_chi2 = 0.0;
    double r2_chi2 = 0.0;
    std::vector<CheckResult> k_chain;
};

// Log-log slopes of d(n) and of chi^2(thin(S f,1/n), thin(f,1/n)), plus the
// chain d(n) <= K(law_of_thin_numbers(f,n)) <= K(thin(f,1/n)).
RateReport estimate_rate(const Pmf& f, std::int64_t n_lo, std::int64_t n_hi);

std::vector<CheckResult> check_pinsker(const Pmf& f, std::int64_t n_lo, std::int64_t n_hi,
                                       double eps_ineq = 1e-9);

// Slope of log V(n) against log n; throws DegenerateSequence when V is flat zero.
CheckResult check_tv_slope(const Pmf& f, std::int64_t n_lo, std::int64_t n_hi);

std::vector<CheckResult> check_tv_rate(const Pmf& f, std::int64_t n_lo, std::int64_t n_hi,
                                       double eps_ineq = 1e-9);

// With f convex-dominated by g: H(f) + D(f||g) <= H(g) when g is log-concave,
// and D(f) >= D(g) + D(f||g) when g is ULC.
std::vector<CheckResult> check_key_lemma(const Pmf& f, const Pmf& g, double eps_ineq = 1e-9);

struct FiniteDiffTable {
    std::vector<double> base;
    std::vector<std::vector<double>> diffs;    // diffs[k][i] = k-th forward difference at n_i
    std::vector<std::vector<bool>> sign_ok;    // alternating-sign verdicts
    std::vector<double> noise_floor;           // per order k
};

FiniteDiffTable complete_monotonicity(const std::vector<double>& s, int K,
                                      double eps_ineq = 1e-9);

// D(f^{*n} || S(f^{*n})) and its mirror are nonincreasing in n.
std::vector<CheckResult> check_selfconv_sizebias_monotone(const Pmf& f, std::int64_t n_max,
                                                          double eps_ineq = 1e-9);

// Distance to the Poisson limit at n_max in L-infinity, entropy gap, and divergence.
std::vector<CheckResult> convergence_suite(const Pmf& f, std::int64_t n_max,
                                           double eps_ineq = 1e-9);

struct CorpusMember {
    std::string name;
    Pmf pmf;
};

Pmf seeded_ulc_pmf(std::uint64_t seed);
Pmf seeded_non_ulc_pmf(std::uint64_t seed);

// Three-point pmf with mean equal to variance, exercising the refined chi^2 rate.
Pmf lambda_eq_var_probe();

std::vector<CorpusMember> builtin_corpus();

struct SuiteRow {
    std::string suite;
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;
    std::string status;  // pass | fail | skip
    std::string note;
};

const std::vector<std::string>& suite_names();

std::vector<SuiteRow> run_suite(const std::string& suite,
                                const std::vector<CorpusMember>& corpus,
                                const Tolerances& tol);

}  // namespace thinlaw
