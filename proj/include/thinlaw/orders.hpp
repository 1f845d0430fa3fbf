#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "thinlaw/pmf.hpp"

namespace thinlaw {

struct OrderReport {
    bool holds = false;
    std::optional<std::int64_t> witness;  // index or threshold of the first failure
    double margin = 0.0;                  // minimal slack over all checks
    std::string reason;                   // set when failure is structural, not numeric
};

struct ConvexTestFn {
    std::string name;
    std::function<double(std::int64_t)> eval;

    static ConvexTestFn hinge(std::int64_t k);
    static ConvexTestFn square();
    static ConvexTestFn table(std::vector<double> values);

    // Second differences nonnegative over [lo, hi].
    bool is_convex_on(std::int64_t lo, std::int64_t hi) const;
};

double expect(const ConvexTestFn& phi, const Pmf& f);

OrderReport is_log_concave(const Pmf& f, double eps_ineq = 1e-9);

// Ultra log-concavity: i f_i / f_{i-1} nonincreasing over the support interval.
OrderReport is_ulc(const Pmf& f, double eps_ineq = 1e-9);

// f is smaller in relative log-concavity: log(f_i/g_i) concave on supp(f).
OrderReport leq_lc(const Pmf& f, const Pmf& g, double eps_ineq = 1e-9);

// Usual stochastic order via survival dominance Pr(X > c) <= Pr(Y > c).
OrderReport leq_st(const Pmf& f, const Pmf& g, double eps_ineq = 1e-9);

// Convex order via double-tail-sum dominance; requires equal means.
OrderReport leq_cx(const Pmf& f, const Pmf& g, double eps_ineq = 1e-9);

bool majorizes(const std::vector<double>& b, const std::vector<double>& a);

// Law of sum of independent p_i-thinnings of f.
Pmf mixed_binomial_sum(const Pmf& f, const std::vector<double>& p);

struct CheckResult {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;  // oriented so pass <=> slack >= -eps_ineq
    bool pass = false;
};

CheckResult make_upper_bound_check(std::string name, double lhs, double rhs,
                                   double eps_ineq = 1e-9);
CheckResult make_lower_bound_check(std::string name, double lhs, double rhs,
                                   double eps_ineq = 1e-9);

// Schur concavity probe: the majorized (flatter) thinning vector p_a gives the
// larger expectation of a convex phi.
CheckResult schur_probe(const Pmf& f, const std::vector<double>& p_a,
                        const std::vector<double>& p_b, const ConvexTestFn& phi,
                        double eps_ineq = 1e-9);

}  // namespace thinlaw
