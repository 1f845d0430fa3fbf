#include "thinlaw/orders.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numeric>

#include "thinlaw/transforms.hpp"

namespace thinlaw {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Support {
    std::int64_t lo = 0;
    std::int64_t hi = 0;
    std::optional<std::int64_t> gap;  // first zero strictly inside [lo, hi]
};

Support find_support(const Pmf& f) {
    const auto& w = f.weights();
    Support s;
    std::size_t lo = 0;
    while (lo < w.size() && w[lo] == 0.0) ++lo;
    std::size_t hi = w.size() - 1;
    while (hi > lo && w[hi] == 0.0) --hi;
    s.lo = static_cast<std::int64_t>(lo);
    s.hi = static_cast<std::int64_t>(hi);
    for (std::size_t i = lo; i <= hi; ++i) {
        if (w[i] == 0.0) {
            s.gap = static_cast<std::int64_t>(i);
            break;
        }
    }
    return s;
}

OrderReport structural_failure(std::int64_t witness, std::string reason) {
    OrderReport r;
    r.holds = false;
    r.witness = witness;
    r.margin = -kInf;
    r.reason = std::move(reason);
    return r;
}

// s[c] = Pr(X >= c) for c = 0 .. len, tail deficit included.
std::vector<double> survival(const Pmf& f, std::size_t len) {
    std::vector<double> s(len + 1, 0.0);
    double acc = f.deficit();
    s[len] = acc;
    for (std::size_t c = len; c-- > 0;) {
        acc += f[c];
        s[c] = acc;
    }
    return s;
}

}  // namespace

ConvexTestFn ConvexTestFn::hinge(std::int64_t k) {
    return {"hinge(" + std::to_string(k) + ")",
            [k](std::int64_t x) { return x > k ? static_cast<double>(x - k) : 0.0; }};
}

ConvexTestFn ConvexTestFn::square() {
    return {"square", [](std::int64_t x) {
                double d = static_cast<double>(x);
                return d * d;
            }};
}

ConvexTestFn ConvexTestFn::table(std::vector<double> values) {
    if (values.empty()) throw DomainError("convex test table must be nonempty");
    auto v = std::make_shared<std::vector<double>>(std::move(values));
    return {"table", [v](std::int64_t x) {
                if (x < 0 || static_cast<std::size_t>(x) >= v->size())
                    throw DomainError("convex test table evaluated out of range");
                return (*v)[static_cast<std::size_t>(x)];
            }};
}

bool ConvexTestFn::is_convex_on(std::int64_t lo, std::int64_t hi) const {
    for (std::int64_t x = lo + 1; x < hi; ++x) {
        double d2 = eval(x - 1) - 2.0 * eval(x) + eval(x + 1);
        if (d2 < -1e-12) return false;
    }
    return true;
}

double expect(const ConvexTestFn& phi, const Pmf& f) {
    const auto& w = f.weights();
    std::vector<double> terms;
    terms.reserve(w.size());
    for (std::size_t i = 0; i < w.size(); ++i)
        if (w[i] > 0.0) terms.push_back(w[i] * phi.eval(static_cast<std::int64_t>(i)));
    return kahan_sum(terms);
}

OrderReport is_log_concave(const Pmf& f, double eps_ineq) {
    Support s = find_support(f);
    if (s.gap) return structural_failure(*s.gap, "support gap");
    const auto& w = f.weights();
    OrderReport r;
    r.holds = true;
    r.margin = kInf;
    for (std::int64_t i = s.lo + 1; i < s.hi; ++i) {
        auto u = static_cast<std::size_t>(i);
        double slack = w[u] * w[u] - w[u - 1] * w[u + 1];
        if (slack < r.margin) r.margin = slack;
        if (slack < -eps_ineq && r.holds) {
            r.holds = false;
            r.witness = i;
        }
    }
    if (r.margin == kInf) r.margin = 0.0;
    return r;
}

OrderReport is_ulc(const Pmf& f, double eps_ineq) {
    Support s = find_support(f);
    if (s.gap) return structural_failure(*s.gap, "support gap");
    const auto& w = f.weights();
    OrderReport r;
    r.holds = true;
    r.margin = kInf;
    double prev = kInf;
    for (std::int64_t i = s.lo + 1; i <= s.hi; ++i) {
        auto u = static_cast<std::size_t>(i);
        double ratio = static_cast<double>(i) * w[u] / w[u - 1];
        if (prev < kInf) {
            double slack = prev - ratio;
            if (slack < r.margin) r.margin = slack;
            if (slack < -eps_ineq && r.holds) {
                r.holds = false;
                r.witness = i;
            }
        }
        prev = ratio;
    }
    if (r.margin == kInf) r.margin = 0.0;
    return r;
}

OrderReport leq_lc(const Pmf& f, const Pmf& g, double eps_ineq) {
    Support sf = find_support(f);
    if (sf.gap) return structural_failure(*sf.gap, "support gap in f");
    Support sg = find_support(g);
    if (sg.gap) return structural_failure(*sg.gap, "support gap in g");
    if (sf.lo < sg.lo || sf.hi > sg.hi)
        return structural_failure(sf.lo < sg.lo ? sf.lo : sf.hi, "supp(f) not within supp(g)");
    OrderReport r;
    r.holds = true;
    r.margin = kInf;
    for (std::int64_t i = sf.lo + 1; i < sf.hi; ++i) {
        auto u = static_cast<std::size_t>(i);
        auto lr = [&](std::size_t j) { return std::log(f[j] / g[j]); };
        double d2 = lr(u - 1) - 2.0 * lr(u) + lr(u + 1);
        double slack = -d2;
        if (slack < r.margin) r.margin = slack;
        if (slack < -eps_ineq && r.holds) {
            r.holds = false;
            r.witness = i;
        }
    }
    if (r.margin == kInf) r.margin = 0.0;
    return r;
}

OrderReport leq_st(const Pmf& f, const Pmf& g, double eps_ineq) {
    std::size_t len = std::max(f.size(), g.size());
    auto sf = survival(f, len);
    auto sg = survival(g, len);
    OrderReport r;
    r.holds = true;
    r.margin = kInf;
    // Pr(X > c) = survival at c+1; scan c from the top, where suffix sums begin.
    for (std::size_t c1 = len + 1; c1-- > 1;) {
        double slack = sg[c1] - sf[c1];
        if (slack < r.margin) r.margin = slack;
        if (slack < -eps_ineq && r.holds) {
            r.holds = false;
            r.witness = static_cast<std::int64_t>(c1) - 1;
        }
    }
    if (r.margin == kInf) r.margin = 0.0;
    return r;
}

OrderReport leq_cx(const Pmf& f, const Pmf& g, double eps_ineq) {
    if (std::abs(f.mean() - g.mean()) > eps_ineq) {
        OrderReport r = structural_failure(-1, "means differ");
        r.witness.reset();
        r.margin = -std::abs(f.mean() - g.mean());
        return r;
    }
    std::size_t len = std::max(f.size(), g.size());
    auto sf = survival(f, len);
    auto sg = survival(g, len);
    // tf[k] = sum_{i >= k} Pr(X >= i) = E max(X - k + 1, 0).
    std::vector<double> tf(len + 2, 0.0), tg(len + 2, 0.0);
    for (std::size_t k = len + 1; k-- > 0;) {
        tf[k] = (k < sf.size() ? sf[k] : 0.0) + (k + 1 < tf.size() ? tf[k + 1] : 0.0);
        tg[k] = (k < sg.size() ? sg[k] : 0.0) + (k + 1 < tg.size() ? tg[k + 1] : 0.0);
    }
    OrderReport r;
    r.holds = true;
    r.margin = kInf;
    for (std::size_t k = len + 1; k-- > 0;) {
        double slack = tg[k] - tf[k];
        if (slack < r.margin) r.margin = slack;
        if (slack < -eps_ineq && r.holds) {
            r.holds = false;
            r.witness = static_cast<std::int64_t>(k);
        }
    }
    if (r.margin == kInf) r.margin = 0.0;
    return r;
}

bool majorizes(const std::vector<double>& b, const std::vector<double>& a) {
    if (b.size() != a.size()) throw LengthMismatch("majorization requires equal lengths");
    double sb = std::accumulate(b.begin(), b.end(), 0.0);
    double sa = std::accumulate(a.begin(), a.end(), 0.0);
    if (std::abs(sb - sa) > 1e-12) return false;
    auto bs = b;
    auto as = a;
    std::sort(bs.begin(), bs.end(), std::greater<>());
    std::sort(as.begin(), as.end(), std::greater<>());
    double pb = 0.0, pa = 0.0;
    for (std::size_t k = 0; k < bs.size(); ++k) {
        pb += bs[k];
        pa += as[k];
        if (pb < pa - 1e-12) return false;
    }
    return true;
}

Pmf mixed_binomial_sum(const Pmf& f, const std::vector<double>& p) {
    if (p.empty()) throw DomainError("mixed binomial sum requires at least one component");
    for (double pi : p)
        if (!(pi >= 0.0 && pi <= 1.0))
            throw DomainError("mixed binomial sum requires probabilities in [0,1]");
    Pmf acc = thin(f, p[0]);
    for (std::size_t i = 1; i < p.size(); ++i) acc = convolve(acc, thin(f, p[i]));
    return acc;
}

CheckResult make_upper_bound_check(std::string name, double lhs, double rhs, double eps_ineq) {
    CheckResult c;
    c.name = std::move(name);
    c.lhs = lhs;
    c.rhs = rhs;
    if (std::isinf(rhs) && rhs > 0.0) {
        c.slack = kInf;  // vacuous: any lhs is below an infinite bound
    } else if (std::isinf(lhs) && lhs > 0.0) {
        c.slack = -kInf;
    } else {
        c.slack = rhs - lhs;
    }
    c.pass = c.slack >= -eps_ineq;
    return c;
}

CheckResult make_lower_bound_check(std::string name, double lhs, double rhs, double eps_ineq) {
    CheckResult c = make_upper_bound_check(std::move(name), rhs, lhs, eps_ineq);
    c.lhs = lhs;
    c.rhs = rhs;
    return c;
}

CheckResult schur_probe(const Pmf& f, const std::vector<double>& p_a,
                        const std::vector<double>& p_b, const ConvexTestFn& phi,
                        double eps_ineq) {
    if (!is_ulc(f).holds) throw PreconditionFailed("schur probe requires a ULC base pmf");
    if (!majorizes(p_b, p_a))
        throw PreconditionFailed("schur probe requires p_b to majorize p_a");
    double lhs = expect(phi, mixed_binomial_sum(f, p_a));
    double rhs = expect(phi, mixed_binomial_sum(f, p_b));
    return make_lower_bound_check("schur:" + phi.name, lhs, rhs, eps_ineq);
}

}  // namespace thinlaw
