#pragma once

#include <cstdint>
#include <vector>

#include "thinlaw/errors.hpp"

namespace thinlaw {

struct Tolerances {
    double eps_mass = 1e-12;  // mass-balance slack
    double eps_eq = 1e-10;    // pointwise pmf equality
    double eps_ineq = 1e-9;   // inequality / monotonicity slack
    double tail_eps = 1e-15;  // truncation tail mass for infinite families

    void validate() const;  // throws DomainError unless 0 < eps_mass <= eps_eq <= eps_ineq
};

// Shared cumulative log-factorial table; falls back to lgamma beyond the table.
double log_factorial(std::uint64_t n);
double log_choose(std::uint64_t n, std::uint64_t k);

// Compensated summation.
double kahan_sum(const std::vector<double>& v);

// Probability mass function on {0, 1, 2, ...} with finite stored support.
// `deficit` is the tail mass removed when truncating an infinite-support family;
// it is carried, never renormalized away, so deficit > 0 marks a truncated view.
class Pmf {
public:
    static Pmf from_weights(const std::vector<double>& w);
    static Pmf binomial(std::int64_t n, double p);
    static Pmf poisson(double lambda, double tail_eps = 1e-15);
    static Pmf geometric(double p, double tail_eps = 1e-15);
    static Pmf negative_binomial(double r, double p, double tail_eps = 1e-15);
    static Pmf bernoulli(double p);
    static Pmf point_mass(std::size_t k = 0);

    // Poisson weights on 0..len-1 regardless of remaining tail mass; used when a
    // reference Poisson must cover the whole support of another pmf.
    static Pmf poisson_prefix(double lambda, std::size_t len);

    // Wraps weights produced by internal arithmetic: clamps rounding negatives,
    // trims trailing zeros, keeps the given deficit.
    static Pmf raw(std::vector<double> w, double deficit);

    const std::vector<double>& weights() const { return w_; }
    double operator[](std::size_t i) const { return i < w_.size() ? w_[i] : 0.0; }
    std::size_t size() const { return w_.size(); }
    double deficit() const { return deficit_; }
    bool truncated() const { return deficit_ > 0.0; }

    double mass() const;  // sum of stored weights
    double mean() const;
    double variance() const;
    std::int64_t support_max() const { return static_cast<std::int64_t>(w_.size()) - 1; }

private:
    Pmf(std::vector<double> w, double deficit) : w_(std::move(w)), deficit_(deficit) {}

    std::vector<double> w_;
    double deficit_ = 0.0;
};

double linf_diff(const Pmf& f, const Pmf& g);
bool approx_eq(const Pmf& f, const Pmf& g, double eps_eq = 1e-10);

}  // namespace thinlaw
