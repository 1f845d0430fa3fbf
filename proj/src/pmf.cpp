#include "thinlaw/pmf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>

namespace thinlaw {

namespace {

constexpr std::size_t kLogFactTable = 65536;
constexpr double kNegClamp = -1e-15;  // weights above this are rounding noise, clamp to 0
// Truncating constructors always drop real tail mass even when the partial
// sums round to 1, so the recorded deficit is floored at a positive value.
constexpr double kDeficitFloor = 1e-18;

std::vector<double> build_log_fact_table() {
    std::vector<double> t(kLogFactTable + 1, 0.0);
    double sum = 0.0, comp = 0.0;
    for (std::size_t n = 1; n <= kLogFactTable; ++n) {
        double term = std::log(static_cast<double>(n)) - comp;
        double next = sum + term;
        comp = (next - sum) - term;
        sum = next;
        t[n] = sum;
    }
    return t;
}

const std::vector<double>& log_fact_table() {
    static std::vector<double> table;
    static std::once_flag flag;
    std::call_once(flag, [] { table = build_log_fact_table(); });
    return table;
}

// Trim trailing zeros, clamp tiny negative rounding noise, validate.
std::vector<double> sanitize(std::vector<double> w) {
    if (w.empty()) throw EmptyOrNegative("pmf must have at least one weight");
    for (double& x : w) {
        if (std::isnan(x)) throw EmptyOrNegative("pmf weight is NaN");
        if (x < 0.0) {
            if (x < kNegClamp) throw EmptyOrNegative("pmf weight is negative");
            x = 0.0;
        }
    }
    while (w.size() > 1 && w.back() == 0.0) w.pop_back();
    return w;
}

}  // namespace

void Tolerances::validate() const {
    if (!(eps_mass > 0.0) || !(eps_eq > 0.0) || !(eps_ineq > 0.0) || !(tail_eps > 0.0))
        throw DomainError("tolerances must be positive");
    if (!(eps_mass <= eps_eq) || !(eps_eq <= eps_ineq))
        throw DomainError("tolerances must satisfy eps_mass <= eps_eq <= eps_ineq");
}

double log_factorial(std::uint64_t n) {
    const auto& t = log_fact_table();
    if (n < t.size()) return t[n];
    return std::lgamma(static_cast<double>(n) + 1.0);
}

double log_choose(std::uint64_t n, std::uint64_t k) {
    if (k > n) return -std::numeric_limits<double>::infinity();
    return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

double kahan_sum(const std::vector<double>& v) {
    double sum = 0.0, comp = 0.0;
    for (double x : v) {
        double term = x - comp;
        double next = sum + term;
        comp = (next - sum) - term;
        sum = next;
    }
    return sum;
}

Pmf Pmf::from_weights(const std::vector<double>& w) {
    auto clean = sanitize(w);
    double total = kahan_sum(clean);
    if (!(total > 0.0)) throw EmptyOrNegative("pmf weights sum to zero");
    for (double& x : clean) x /= total;
    return Pmf(std::move(clean), 0.0);
}

Pmf Pmf::raw(std::vector<double> w, double deficit) {
    auto clean = sanitize(std::move(w));
    if (deficit < 0.0) deficit = 0.0;
    return Pmf(std::move(clean), deficit);
}

Pmf Pmf::binomial(std::int64_t n, double p) {
    if (n < 0) throw DomainError("binomial requires n >= 0");
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("binomial requires p in [0,1]");
    if (n == 0 || p == 0.0) return point_mass(0);
    if (p == 1.0) return point_mass(static_cast<std::size_t>(n));
    const auto un = static_cast<std::uint64_t>(n);
    const double lp = std::log(p);
    const double lq = std::log1p(-p);
    std::vector<double> w(un + 1);
    for (std::uint64_t k = 0; k <= un; ++k) {
        w[k] = std::exp(log_choose(un, k) + static_cast<double>(k) * lp +
                        static_cast<double>(un - k) * lq);
    }
    return Pmf(sanitize(std::move(w)), 0.0);
}

Pmf Pmf::poisson(double lambda, double tail_eps) {
    if (!(lambda > 0.0)) throw DomainError("poisson requires lambda > 0");
    if (!(tail_eps > 0.0)) throw DomainError("poisson requires tail_eps > 0");
    std::vector<double> w;
    double term = std::exp(-lambda);
    double cum = 0.0, comp = 0.0;
    std::size_t i = 0;
    while (true) {
        w.push_back(term);
        double add = term - comp;
        double next = cum + add;
        comp = (next - cum) - add;
        cum = next;
        if (1.0 - cum < tail_eps) break;
        ++i;
        term *= lambda / static_cast<double>(i);
        if (term < 1e-300 && cum > 0.5) break;  // tail below double resolution
        if (w.size() > 4000000) throw DomainError("poisson truncation did not converge");
    }
    double deficit = std::max(kDeficitFloor, 1.0 - cum);
    return Pmf(std::move(w), deficit);
}

Pmf Pmf::poisson_prefix(double lambda, std::size_t len) {
    if (!(lambda > 0.0)) throw DomainError("poisson requires lambda > 0");
    if (len == 0) throw DomainError("poisson prefix length must be positive");
    std::vector<double> w(len);
    double term = std::exp(-lambda);
    double cum = 0.0, comp = 0.0;
    for (std::size_t i = 0; i < len; ++i) {
        w[i] = term;
        double add = term - comp;
        double next = cum + add;
        comp = (next - cum) - add;
        cum = next;
        term *= lambda / static_cast<double>(i + 1);
    }
    double deficit = std::max(kDeficitFloor, 1.0 - cum);
    return Pmf(sanitize(std::move(w)), deficit);
}

Pmf Pmf::geometric(double p, double tail_eps) {
    if (!(p > 0.0 && p <= 1.0)) throw DomainError("geometric requires p in (0,1]");
    if (p == 1.0) return point_mass(0);
    std::vector<double> w;
    double term = p;
    double cum = 0.0, comp = 0.0;
    while (true) {
        w.push_back(term);
        double add = term - comp;
        double next = cum + add;
        comp = (next - cum) - add;
        cum = next;
        if (1.0 - cum < tail_eps) break;
        term *= 1.0 - p;
        if (term < 1e-300 && cum > 0.5) break;  // tail below double resolution; deficit stays honest
        if (w.size() > 4000000) throw DomainError("geometric truncation did not converge");
    }
    double deficit = std::max(kDeficitFloor, 1.0 - cum);
    return Pmf(std::move(w), deficit);
}

Pmf Pmf::negative_binomial(double r, double p, double tail_eps) {
    if (!(r > 0.0)) throw DomainError("negative binomial requires r > 0");
    if (!(p > 0.0 && p <= 1.0)) throw DomainError("negative binomial requires p in (0,1]");
    if (p == 1.0) return point_mass(0);
    std::vector<double> w;
    double term = std::pow(p, r);
    double cum = 0.0, comp = 0.0;
    std::size_t i = 0;
    while (true) {
        w.push_back(term);
        double add = term - comp;
        double next = cum + add;
        comp = (next - cum) - add;
        cum = next;
        if (1.0 - cum < tail_eps) break;
        term *= (r + static_cast<double>(i)) / static_cast<double>(i + 1) * (1.0 - p);
        ++i;
        if (term < 1e-300 && cum > 0.5) break;  // tail below double resolution; deficit stays honest
        if (w.size() > 4000000) throw DomainError("negative binomial truncation did not converge");
    }
    double deficit = std::max(kDeficitFloor, 1.0 - cum);
    return Pmf(std::move(w), deficit);
}

Pmf Pmf::bernoulli(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("bernoulli requires p in [0,1]");
    if (p == 0.0) return point_mass(0);
    if (p == 1.0) return point_mass(1);
    return Pmf({1.0 - p, p}, 0.0);
}

Pmf Pmf::point_mass(std::size_t k) {
    std::vector<double> w(k + 1, 0.0);
    w[k] = 1.0;
    return Pmf(std::move(w), 0.0);
}

double Pmf::mass() const { return kahan_sum(w_); }

double Pmf::mean() const {
    double sum = 0.0, comp = 0.0;
    for (std::size_t i = 1; i < w_.size(); ++i) {
        double term = static_cast<double>(i) * w_[i] - comp;
        double next = sum + term;
        comp = (next - sum) - term;
        sum = next;
    }
    return sum;
}

double Pmf::variance() const {
    const double m = mean();
    double sum = 0.0, comp = 0.0;
    for (std::size_t i = 0; i < w_.size(); ++i) {
        double d = static_cast<double>(i) - m;
        double term = d * d * w_[i] - comp;
        double next = sum + term;
        comp = (next - sum) - term;
        sum = next;
    }
    return sum;
}

double linf_diff(const Pmf& f, const Pmf& g) {
    std::size_t n = std::max(f.size(), g.size());
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::abs(f[i] - g[i]));
    return m;
}

bool approx_eq(const Pmf& f, const Pmf& g, double eps_eq) {
    return linf_diff(f, g) <= eps_eq;
}

}  // namespace thinlaw
