#include "thinlaw/info.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "thinlaw/transforms.hpp"

namespace thinlaw {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Excess mass of f outside supp(g) up to this threshold is charged to the
// truncated tail rather than treated as a genuine support violation.
double excess_tolerance(const Pmf& f, const Pmf& g) {
    return 1e3 * std::max({1e-15, f.deficit(), g.deficit()});
}

bool either_truncated(const Pmf& f, const Pmf& g) {
    return f.truncated() || g.truncated();
}

}  // namespace

double entropy(const Pmf& f, double deficit_eps) {
    if (f.deficit() > deficit_eps)
        throw DeficitTooLarge("entropy requires nearly full mass on the stored support");
    const auto& w = f.weights();
    std::vector<double> terms;
    terms.reserve(w.size());
    for (double p : w)
        if (p > 0.0) terms.push_back(-p * std::log(p));
    return kahan_sum(terms);
}

double relative_entropy(const Pmf& f, const Pmf& g) {
    std::vector<double> terms;
    terms.reserve(f.size());
    double excess = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        double fi = f[i], gi = g[i];
        if (fi == 0.0) continue;
        if (gi == 0.0) {
            if (either_truncated(f, g)) {
                excess += fi;
                continue;
            }
            return kInf;
        }
        terms.push_back(fi * std::log(fi / gi));
    }
    if (excess > excess_tolerance(f, g)) return kInf;
    double d = kahan_sum(terms);
    if (d < 0.0) {
        if (d < -1e-12) throw DomainError("relative entropy summed below the rounding floor");
        d = 0.0;
    }
    return d;
}

double rel_ent_poisson(const Pmf& f, double mu) {
    if (!(mu > 0.0)) throw DomainError("poisson reference requires mu > 0");
    const auto& w = f.weights();
    std::vector<double> terms;
    terms.reserve(w.size());
    for (std::size_t i = 0; i < w.size(); ++i)
        if (w[i] > 0.0) terms.push_back(w[i] * log_factorial(i));
    double elogfact = kahan_sum(terms);
    double d = elogfact - f.mean() * std::log(mu) + mu - entropy(f);
    if (d < 0.0) {
        if (d < -1e-12) throw DomainError("relative entropy summed below the rounding floor");
        d = 0.0;
    }
    return d;
}

double d_poisson(const Pmf& f) {
    const double lambda = f.mean();
    if (!(lambda > 0.0)) throw ZeroMean("poisson divergence requires positive mean");
    return rel_ent_poisson(f, lambda);
}

double chi_squared(const Pmf& f, const Pmf& g) {
    std::vector<double> terms;
    terms.reserve(g.size());
    double excess = 0.0;
    std::size_t n = std::max(f.size(), g.size());
    for (std::size_t i = 0; i < n; ++i) {
        double fi = f[i], gi = g[i];
        if (gi == 0.0) {
            if (fi > 0.0) {
                if (either_truncated(f, g)) {
                    excess += fi;
                    continue;
                }
                return kInf;
            }
            continue;
        }
        double r = fi / gi - 1.0;
        terms.push_back(gi * r * r);
    }
    if (excess > excess_tolerance(f, g)) return kInf;
    return kahan_sum(terms);
}

double scaled_fisher(const Pmf& f) {
    const double m = f.mean();
    if (!(m > 0.0)) throw ZeroMean("scaled Fisher information requires positive mean");
    return m * chi_squared(size_bias(f), f);
}

double total_variation(const Pmf& f, const Pmf& g) {
    std::size_t n = std::max(f.size(), g.size());
    std::vector<double> terms;
    terms.reserve(n);
    for (std::size_t i = 0; i < n; ++i) terms.push_back(std::abs(f[i] - g[i]));
    return kahan_sum(terms);
}

double l_n(const Pmf& f, std::uint64_t n) {
    if (n == 0) throw DomainError("l_n requires n >= 1");
    const double lambda = f.mean();
    if (!(lambda > 0.0)) throw ZeroMean("l_n requires positive mean");
    Pmf s = self_convolve(f, n);
    const auto& w = s.weights();
    std::vector<double> terms;
    terms.reserve(w.size());
    const double dn = static_cast<double>(n);
    for (std::size_t k = 1; k < w.size(); ++k) {
        if (w[k] == 0.0) continue;
        double xbar = static_cast<double>(k) / dn;
        terms.push_back(w[k] * xbar * std::log(xbar / lambda));
    }
    return kahan_sum(terms);
}

}  // namespace thinlaw
