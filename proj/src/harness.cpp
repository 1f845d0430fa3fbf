#include "thinlaw/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "thinlaw/format.hpp"
#include "thinlaw/rng.hpp"

namespace thinlaw {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double d_of(const Pmf& f) { return d_poisson(f); }

struct Fit {
    double slope = 0.0;
    double r2 = 0.0;
};

Fit fit_loglog(const std::vector<double>& ns, const std::vector<double>& ys) {
    std::size_t m = ns.size();
    double sx = 0, sy = 0;
    std::vector<double> xs(m), ls(m);
    for (std::size_t i = 0; i < m; ++i) {
        xs[i] = std::log(ns[i]);
        ls[i] = std::log(ys[i]);
        sx += xs[i];
        sy += ls[i];
    }
    double mx = sx / static_cast<double>(m), my = sy / static_cast<double>(m);
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < m; ++i) {
        double dx = xs[i] - mx, dy = ls[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    Fit f;
    f.slope = sxy / sxx;
    f.r2 = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
    return f;
}

CheckResult band_check(std::string name, double value, double target, double band) {
    CheckResult c;
    c.name = std::move(name);
    c.lhs = value;
    c.rhs = target;
    c.slack = band - std::abs(value - target);
    c.pass = c.slack >= 0.0;
    return c;
}

CheckResult identity_check(std::string name, double diff, double tol) {
    CheckResult c;
    c.name = std::move(name);
    c.lhs = diff;
    c.rhs = tol;
    c.slack = tol - diff;
    c.pass = c.slack >= 0.0;
    return c;
}

CheckResult order_check(std::string name, const OrderReport& r) {
    CheckResult c;
    c.name = std::move(name);
    c.lhs = -r.margin;
    c.rhs = 0.0;
    c.slack = r.margin;
    c.pass = r.holds;
    return c;
}

Pmf conv_all(const std::vector<Pmf>& qs) {
    Pmf q = qs[0];
    for (std::size_t i = 1; i < qs.size(); ++i) q = convolve(q, qs[i]);
    return q;
}

Pmf conv_excluding(const std::vector<Pmf>& qs, std::size_t skip) {
    Pmf acc = Pmf::point_mass(0);
    bool have = false;
    for (std::size_t i = 0; i < qs.size(); ++i) {
        if (i == skip) continue;
        acc = have ? convolve(acc, qs[i]) : qs[i];
        have = true;
    }
    return acc;
}

std::vector<double> mixture_betas(const std::vector<Pmf>& qs) {
    std::vector<double> lambdas(qs.size());
    double total = 0.0;
    for (std::size_t i = 0; i < qs.size(); ++i) {
        lambdas[i] = qs[i].mean();
        if (!(lambdas[i] > 0.0))
            throw ZeroMean("mixture components must have positive mean");
        total += lambdas[i];
    }
    std::vector<double> betas(qs.size());
    for (std::size_t i = 0; i < qs.size(); ++i)
        betas[i] = (1.0 - lambdas[i] / total) / static_cast<double>(qs.size() - 1);
    return betas;
}

}  // namespace

SequenceTable sequences(const Pmf& f, std::int64_t n_max,
                        const std::vector<std::string>& columns) {
    if (!(f.mean() > 0.0)) throw ZeroMean("sequence table requires positive mean");
    if (n_max < 1) throw DomainError("sequence table requires n_max >= 1");
    static const std::vector<std::string> known = {"d",   "t", "r",   "h",  "h_n",
                                                   "h_tilde", "K", "l_n", "tv"};
    for (const auto& c : columns)
        if (std::find(known.begin(), known.end(), c) == known.end())
            throw DomainError("unknown sequence column: " + c);
    const double lambda = f.mean();
    auto need = [&](const char* c) {
        return std::find(columns.begin(), columns.end(), c) != columns.end();
    };
    const bool need_lotn = need("d") || need("h") || need("h_n") || need("h_tilde") ||
                           need("K") || need("tv");
    Pmf po_ref = need("tv") ? Pmf::poisson(lambda, 1e-15) : Pmf::point_mass(0);

    SequenceTable table;
    table.column_names = columns;
    table.columns.assign(columns.size(), {});
    Pmf fn = f;
    for (std::int64_t n = 1; n <= n_max; ++n) {
        table.n_values.push_back(n);
        if (n > 1) fn = convolve(fn, f);
        Pmf ln = Pmf::point_mass(0);
        if (need_lotn) ln = law_of_thin_numbers(f, static_cast<std::uint64_t>(n));
        for (std::size_t c = 0; c < columns.size(); ++c) {
            const std::string& col = columns[c];
            double v = 0.0;
            if (col == "d") v = d_of(ln);
            else if (col == "t") v = static_cast<double>(n) * d_of(thin(f, 1.0 / static_cast<double>(n)));
            else if (col == "r") v = d_of(fn) / static_cast<double>(n);
            else if (col == "h") v = entropy(ln);
            else if (col == "h_n") v = relative_entropy(ln, size_bias(ln));
            else if (col == "h_tilde") v = relative_entropy(size_bias(ln), ln);
            else if (col == "K") v = scaled_fisher(ln);
            else if (col == "l_n") v = l_n(f, static_cast<std::uint64_t>(n));
            else if (col == "tv") v = total_variation(ln, po_ref);
            table.columns[c].push_back(v);
        }
    }
    return table;
}

std::vector<CheckResult> check_thinning_lemma(const Pmf& f, const std::vector<double>& alphas,
                                              double eps_ineq) {
    if (!(f.mean() > 0.0)) throw ZeroMean("thinning check requires positive mean");
    const double d = d_of(f);
    std::vector<CheckResult> out;
    out.reserve(alphas.size());
    for (double a : alphas) {
        std::string name = "alpha=" + fmt_shortest(a);
        if (a == 0.0) {
            out.push_back(make_upper_bound_check(name, 0.0, 0.0, eps_ineq));
            continue;
        }
        out.push_back(make_upper_bound_check(name, d_of(thin(f, a)), a * d, eps_ineq));
    }
    return out;
}

std::vector<CheckResult> check_convolution_lemma(const Pmf& f, std::int64_t n_max,
                                                 double eps_ineq) {
    if (!(f.mean() > 0.0)) throw ZeroMean("convolution check requires positive mean");
    std::vector<CheckResult> out;
    Pmf fn = f;
    double prev = d_of(f);
    for (std::int64_t n = 2; n <= n_max; ++n) {
        fn = convolve(fn, f);
        double r = d_of(fn) / static_cast<double>(n);
        out.push_back(
            make_upper_bound_check("r:n=" + std::to_string(n), r, prev, eps_ineq));
        prev = r;
    }
    return out;
}

CheckResult check_debruijn(const Pmf& f, double alpha, double step) {
    if (!(step > 0.0) || !(alpha - step > 0.0) || !(alpha + step < 1.0))
        throw DomainError("derivative check requires 0 < alpha-step and alpha+step < 1");
    double hi = d_of(thin(f, alpha + step));
    double lo = d_of(thin(f, alpha - step));
    double lhs = (hi - lo) / (2.0 * step);
    double rhs = f.mean() * relative_entropy(thin(size_bias(f), alpha), thin(f, alpha));
    double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
    double tol = std::max(1e-6, step * step * scale);
    CheckResult c = identity_check("derivative:alpha=" + fmt_shortest(alpha),
                                   std::abs(lhs - rhs), tol);
    c.lhs = lhs;
    c.rhs = rhs;
    c.slack = tol - std::abs(lhs - rhs);
    return c;
}

std::vector<CheckResult> check_log_sobolev(const Pmf& f, double eps_ineq) {
    const double lambda = f.mean();
    if (!(lambda > 0.0)) throw ZeroMean("log-Sobolev check requires positive mean");
    const double d = d_of(f);
    Pmf s = size_bias(f);
    const double kl = relative_entropy(s, f);
    const double chi = chi_squared(s, f);
    std::vector<CheckResult> out;
    out.push_back(make_upper_bound_check("kl-form", d, lambda * kl, eps_ineq));
    out.push_back(make_upper_bound_check("chi2-form", d, lambda * chi, eps_ineq));
    out.push_back(make_upper_bound_check("chain", lambda * kl, lambda * chi, eps_ineq));
    return out;
}

MixtureResult check_mixture_identity(const std::vector<Pmf>& qs, double tol) {
    if (qs.size() < 2) throw DomainError("mixture identity requires at least two pmfs");
    auto betas = mixture_betas(qs);
    Pmf q = conv_all(qs);
    Pmf lhs = size_bias(q);
    std::vector<double> acc;
    for (std::size_t i = 0; i < qs.size(); ++i) {
        Pmf term = convolve(qs[i], size_bias(conv_excluding(qs, i)));
        if (term.size() > acc.size()) acc.resize(term.size(), 0.0);
        for (std::size_t j = 0; j < term.size(); ++j) acc[j] += betas[i] * term[j];
    }
    Pmf rhs = Pmf::raw(std::move(acc), lhs.deficit());
    MixtureResult res;
    res.betas = betas;
    res.check = identity_check("mixture", linf_diff(lhs, rhs), tol);
    return res;
}

std::vector<CheckResult> check_leave_one_out(const std::vector<Pmf>& qs, double eps_ineq) {
    if (qs.size() < 3) throw DomainError("leave-one-out checks require at least three pmfs");
    auto betas = mixture_betas(qs);
    Pmf q = conv_all(qs);
    Pmf sq = size_bias(q);
    double fwd_rhs = 0.0, rev_rhs = 0.0, strong_rhs = 0.0;
    for (std::size_t i = 0; i < qs.size(); ++i) {
        Pmf loo = conv_excluding(qs, i);
        Pmf sloo = size_bias(loo);
        fwd_rhs += betas[i] * relative_entropy(loo, sloo);
        rev_rhs += betas[i] * relative_entropy(sloo, loo);
        strong_rhs += d_of(loo) / static_cast<double>(qs.size() - 1);
    }
    std::vector<CheckResult> out;
    out.push_back(make_upper_bound_check("fwd", relative_entropy(q, sq), fwd_rhs, eps_ineq));
    out.push_back(make_upper_bound_check("rev", relative_entropy(sq, q), rev_rhs, eps_ineq));
    out.push_back(make_upper_bound_check("avg", d_of(q), strong_rhs, eps_ineq));
    return out;
}

std::vector<CheckResult> check_hn_monotone(const Pmf& f, std::int64_t n_max, double eps_ineq) {
    if (!(f.mean() > 0.0)) throw ZeroMean("monotonicity check requires positive mean");
    std::vector<double> hn, ht;
    for (std::int64_t n = 1; n <= n_max; ++n) {
        Pmf ln = law_of_thin_numbers(f, static_cast<std::uint64_t>(n));
        Pmf s = size_bias(ln);
        hn.push_back(relative_entropy(ln, s));
        ht.push_back(relative_entropy(s, ln));
    }
    std::vector<CheckResult> out;
    for (std::int64_t n = 2; n <= n_max; ++n) {
        auto i = static_cast<std::size_t>(n - 1);
        out.push_back(make_upper_bound_check("h_n:n=" + std::to_string(n), hn[i], hn[i - 1],
                                             eps_ineq));
        out.push_back(make_upper_bound_check("h_tilde:n=" + std::to_string(n), ht[i],
                                             ht[i - 1], eps_ineq));
    }
    return out;
}

std::vector<CheckResult> check_entropy_monotone(const Pmf& f, std::int64_t n_max,
                                                Direction dir, double eps_ineq) {
    const double lambda = f.mean();
    if (!(lambda > 0.0)) throw ZeroMean("entropy monotonicity requires positive mean");
    if (dir == Direction::increasing) {
        OrderReport u = is_ulc(f, eps_ineq);
        if (!u.holds)
            throw PreconditionFailed("increasing direction requires a ULC pmf (margin " +
                                     fmt_shortest(u.margin) + ")");
    } else {
        OrderReport lc = is_log_concave(f, eps_ineq);
        if (!lc.holds)
            throw PreconditionFailed("decreasing direction requires a log-concave pmf");
        OrderReport dom = leq_lc(Pmf::poisson(lambda, 1e-15), f, eps_ineq);
        if (!dom.holds)
            throw PreconditionFailed(
                "decreasing direction requires the Poisson to dominate in log-concavity" +
                (dom.reason.empty() ? "" : " (" + dom.reason + ")"));
    }
    std::vector<double> h(static_cast<std::size_t>(n_max));
    for (std::int64_t n = 1; n <= n_max; ++n)
        h[static_cast<std::size_t>(n - 1)] =
            entropy(law_of_thin_numbers(f, static_cast<std::uint64_t>(n)));
    const double h_po = entropy(Pmf::poisson(lambda, 1e-15));
    std::vector<CheckResult> out;
    for (std::int64_t n = 2; n <= n_max; ++n) {
        auto i = static_cast<std::size_t>(n - 1);
        double lo = dir == Direction::increasing ? h[i - 1] : h[i];
        double hi = dir == Direction::increasing ? h[i] : h[i - 1];
        out.push_back(make_upper_bound_check("h:n=" + std::to_string(n), lo, hi, eps_ineq));
    }
    double hmin = *std::min_element(h.begin(), h.end());
    double hmax = *std::max_element(h.begin(), h.end());
    if (dir == Direction::increasing) {
        out.push_back(make_upper_bound_check("sandwich-lower", entropy(f), hmin, eps_ineq));
        out.push_back(make_upper_bound_check("sandwich-upper", hmax, h_po, eps_ineq));
    } else {
        out.push_back(make_upper_bound_check("sandwich-lower", h_po, hmin, eps_ineq));
        out.push_back(make_upper_bound_check("sandwich-upper", hmax, entropy(f), eps_ineq));
    }
    return out;
}

std::vector<CheckResult> check_cx_chain(const Pmf& f, std::int64_t n_max, double eps_ineq) {
    const double lambda = f.mean();
    if (!(lambda > 0.0)) throw ZeroMean("convex-order chain requires positive mean");
    const bool forward = is_ulc(f, eps_ineq).holds;
    if (!forward) {
        OrderReport dom = leq_lc(Pmf::poisson(lambda, 1e-15), f, eps_ineq);
        if (!dom.holds)
            throw PreconditionFailed(
                "chain requires a ULC pmf or one dominated by the Poisson in log-concavity");
    }
    std::vector<Pmf> lotns;
    lotns.reserve(static_cast<std::size_t>(n_max));
    for (std::int64_t n = 1; n <= n_max; ++n)
        lotns.push_back(law_of_thin_numbers(f, static_cast<std::uint64_t>(n)));
    std::vector<CheckResult> out;
    for (std::int64_t n = 2; n <= n_max; ++n) {
        const Pmf& prev = lotns[static_cast<std::size_t>(n - 2)];
        const Pmf& cur = lotns[static_cast<std::size_t>(n - 1)];
        OrderReport rep = forward ? leq_cx(prev, cur, eps_ineq) : leq_cx(cur, prev, eps_ineq);
        out.push_back(order_check("cx:n=" + std::to_string(n), rep));
    }
    for (std::int64_t n = 1; n <= n_max; ++n) {
        const Pmf& cur = lotns[static_cast<std::size_t>(n - 1)];
        OrderReport rep =
            forward ? leq_lc(cur, Pmf::poisson_prefix(lambda, cur.size()), eps_ineq)
                    : leq_lc(Pmf::poisson(lambda, 1e-15), cur, eps_ineq);
        out.push_back(order_check("lc:n=" + std::to_string(n), rep));
    }
    return out;
}

CheckResult check_rulc_bound(const Pmf& f, std::int64_t n, double eps_ineq) {
    OrderReport u = is_ulc(f, eps_ineq);
    if (!u.holds) throw PreconditionFailed("binomial interpolation bound requires a ULC pmf");
    if (n < 1) throw DomainError("bound requires n >= 1");
    const double lambda = f.mean();
    const double x = static_cast<double>(n) * lambda;
    const double lo = std::floor(x);
    const double frac = x - lo;
    const auto m = static_cast<std::int64_t>(lo);
    const double inv_n = 1.0 / static_cast<double>(n);
    double rhs = (1.0 - frac) * rel_ent_poisson(Pmf::binomial(m, inv_n), lambda);
    if (frac > 0.0) rhs += frac * rel_ent_poisson(Pmf::binomial(m + 1, inv_n), lambda);
    double lhs = d_of(law_of_thin_numbers(f, static_cast<std::uint64_t>(n)));
    return make_upper_bound_check("rulc:n=" + std::to_string(n), lhs, rhs, eps_ineq);
}

RateReport estimate_rate(const Pmf& f, std::int64_t n_lo, std::int64_t n_hi) {
    if (!(f.mean() > 0.0)) throw ZeroMean("rate estimate requires positive mean");
    if (n_lo < 1 || n_hi <= n_lo) throw DomainError("rate estimate requires 1 <= n_lo < n_hi");
    Pmf sf = size_bias(f);
    std::vector<double> ns, ds, chis;
    double chain_hi_slack = kInf, chain_lo_slack = kInf;
    CheckResult chain_hi, chain_lo;
    for (std::int64_t n = n_lo; n <= n_hi; ++n) {
        const double inv_n = 1.0 / static_cast<double>(n);
        Pmf ln = law_of_thin_numbers(f, static_cast<std::uint64_t>(n));
        double d = d_of(ln);
        if (!(d > 1e-12))
            throw DegenerateSequence("divergence sequence is at the rounding floor at n=" +
                                     std::to_string(n));
        Pmf tf = thin(f, inv_n);
        double chi = chi_squared(thin(sf, inv_n), tf);
        ns.push_back(static_cast<double>(n));
        ds.push_back(d);
        chis.push_back(chi);
        double k_ln = scaled_fisher(ln);
        double k_tf = scaled_fisher(tf);
        CheckResult hi = make_upper_bound_check("chain-upper:n=" + std::to_string(n), d, k_ln);
        CheckResult lo = make_upper_bound_check("chain-lower:n=" + std::to_string(n), k_ln, k_tf);
        if (hi.slack < chain_hi_slack) {
            chain_hi_slack = hi.slack;
            chain_hi = hi;
        }
        if (lo.slack < chain_lo_slack) {
            chain_lo_slack = lo.slack;
            chain_lo = lo;
        }
    }
    RateReport rep;
    Fit fd = fit_loglog(ns, ds);
    Fit fc = fit_loglog(ns, chis);
    rep.slope_d = fd.slope;
    rep.r2_d = fd.r2;
    rep.slope_chi2 = fc.slope;
    rep.r2_chi2 = fc.r2;
    rep.k_chain.push_back(chain_hi);
    rep.k_chain.push_back(chain_lo);
    return rep;
}

std::vector<CheckResult> check_pinsker(const Pmf& f, std::int64_t n_lo, std::int64_t n_hi,
                                       double eps_ineq) {
    if (!(f.mean() > 0.0)) throw ZeroMean("distance check requires positive mean");
    Pmf po = Pmf::poisson(f.mean(), 1e-15);
    std::vector<CheckResult> out;
    for (std::int64_t n = n_lo; n <= n_hi; ++n) {
        Pmf ln = law_of_thin_numbers(f, static_cast<std::uint64_t>(n));
        double v = total_variation(ln, po);
        double bound = std::sqrt(2.0 * d_of(ln));
        out.push_back(
            make_upper_bound_check("pinsker:n=" + std::to_string(n), v, bound, eps_ineq));
    }
    return out;
}

CheckResult check_tv_slope(const Pmf& f, std::int64_t n_lo, std::int64_t n_hi) {
    if (!(f.mean() > 0.0)) throw ZeroMean("distance slope requires positive mean");
    Pmf po = Pmf::poisson(f.mean(), 1e-15);
    std::vector<double> ns, vs;
    double vmax = 0.0;
    for (std::int64_t n = n_lo; n <= n_hi; ++n) {
        Pmf ln = law_of_thin_numbers(f, static_cast<std::uint64_t>(n));
        double v = total_variation(ln, po);
        vmax = std::max(vmax, v);
        ns.push_back(static_cast<double>(n));
        vs.push_back(v);
    }
    if (vmax < 1e-12)
        throw DegenerateSequence("distance sequence is at the rounding floor");
    for (double v : vs)
        if (!(v > 0.0)) throw DegenerateSequence("distance sequence touches zero");
    Fit fit = fit_loglog(ns, vs);
    CheckResult c = make_upper_bound_check("slope", fit.slope, -0.85, 0.0);
    c.pass = c.slack >= 0.0;
    return c;
}

std::vector<CheckResult> check_tv_rate(const Pmf& f, std::int64_t n_lo, std::int64_t n_hi,
                                       double eps_ineq) {
    auto out = check_pinsker(f, n_lo, n_hi, eps_ineq);
    out.push_back(check_tv_slope(f, n_lo, n_hi));
    return out;
}

std::vector<CheckResult> check_key_lemma(const Pmf& f, const Pmf& g, double eps_ineq) {
    OrderReport cx = leq_cx(f, g, eps_ineq);
    if (!cx.holds)
        throw PreconditionFailed("requires f below g in the convex order" +
                                 (cx.reason.empty() ? "" : " (" + cx.reason + ")"));
    const bool g_lc = is_log_concave(g, eps_ineq).holds;
    const bool g_ulc = is_ulc(g, eps_ineq).holds;
    if (!g_lc && !g_ulc)
        throw PreconditionFailed("requires a log-concave or ULC dominating pmf");
    std::vector<CheckResult> out;
    if (g_lc) {
        out.push_back(make_upper_bound_check(
            "entropy-dominance", entropy(f) + relative_entropy(f, g), entropy(g), eps_ineq));
    }
    if (g_ulc) {
        out.push_back(make_lower_bound_check("divergence-dominance", d_of(f),
                                             d_of(g) + relative_entropy(f, g), eps_ineq));
    }
    return out;
}

FiniteDiffTable complete_monotonicity(const std::vector<double>& s, int K, double eps_ineq) {
    if (K < 0 || K > 6) throw DomainError("difference order must lie in [0, 6]");
    if (s.size() < static_cast<std::size_t>(K) + 1)
        throw TooShort("sequence shorter than the requested difference order");
    FiniteDiffTable t;
    t.base = s;
    double scale = 0.0;
    for (double v : s) scale = std::max(scale, std::abs(v));
    t.diffs.resize(static_cast<std::size_t>(K) + 1);
    t.sign_ok.resize(static_cast<std::size_t>(K) + 1);
    t.noise_floor.resize(static_cast<std::size_t>(K) + 1);
    t.diffs[0] = s;
    for (int k = 1; k <= K; ++k) {
        const auto& prev = t.diffs[static_cast<std::size_t>(k - 1)];
        std::vector<double> cur(prev.size() - 1);
        for (std::size_t i = 0; i + 1 < prev.size(); ++i) cur[i] = prev[i + 1] - prev[i];
        t.diffs[static_cast<std::size_t>(k)] = std::move(cur);
    }
    for (int k = 0; k <= K; ++k) {
        auto uk = static_cast<std::size_t>(k);
        t.noise_floor[uk] = std::ldexp(1e-14 * scale, k);
        double floor = std::max(eps_ineq, t.noise_floor[uk]);
        t.sign_ok[uk].resize(t.diffs[uk].size());
        for (std::size_t i = 0; i < t.diffs[uk].size(); ++i) {
            double signed_v = (k % 2 == 0) ? t.diffs[uk][i] : -t.diffs[uk][i];
            t.sign_ok[uk][i] = signed_v >= -floor;
        }
    }
    return t;
}

std::vector<CheckResult> check_selfconv_sizebias_monotone(const Pmf& f, std::int64_t n_max,
                                                          double eps_ineq) {
    if (!(f.mean() > 0.0)) throw ZeroMean("monotonicity check requires positive mean");
    std::vector<double> fwd, rev;
    Pmf fn = f;
    for (std::int64_t n = 1; n <= n_max; ++n) {
        if (n > 1) fn = convolve(fn, f);
        Pmf s = size_bias(fn);
        fwd.push_back(relative_entropy(fn, s));
        rev.push_back(relative_entropy(s, fn));
    }
    std::vector<CheckResult> out;
    for (std::int64_t n = 2; n <= n_max; ++n) {
        auto i = static_cast<std::size_t>(n - 1);
        out.push_back(make_upper_bound_check("selfconv-fwd:n=" + std::to_string(n), fwd[i],
                                             fwd[i - 1], eps_ineq));
        out.push_back(make_upper_bound_check("selfconv-rev:n=" + std::to_string(n), rev[i],
                                             rev[i - 1], eps_ineq));
    }
    return out;
}

std::vector<CheckResult> convergence_suite(const Pmf& f, std::int64_t n_max, double eps_ineq) {
    const double lambda = f.mean();
    if (!(lambda > 0.0)) throw ZeroMean("convergence checks require positive mean");
    if (n_max < 1) throw DomainError("convergence checks require n_max >= 1");
    const double sigma2 = f.variance();
    const double dn = static_cast<double>(n_max);
    Pmf ln = law_of_thin_numbers(f, static_cast<std::uint64_t>(n_max));
    Pmf po = Pmf::poisson(lambda, 1e-15);
    std::vector<CheckResult> out;
    out.push_back(make_upper_bound_check("linf", linf_diff(ln, po),
                                         0.25 * std::max(1.0, sigma2 / lambda) / dn, eps_ineq));
    out.push_back(make_upper_bound_check(
        "entropy-gap", std::abs(entropy(ln) - entropy(po)),
        std::max(0.1 / dn, std::abs(sigma2 - lambda) / (lambda * dn)), eps_ineq));
    out.push_back(make_upper_bound_check("divergence", d_of(ln), 10.0 / (dn * dn), eps_ineq));
    return out;
}

Pmf seeded_ulc_pmf(std::uint64_t seed) {
    SplitMix64 g(seed);
    int m = 4 + static_cast<int>(g.next_unit() * 3.0);
    std::vector<double> ratios(static_cast<std::size_t>(m));
    for (auto& r : ratios) r = 0.2 + 1.7 * g.next_unit();
    std::sort(ratios.begin(), ratios.end(), std::greater<>());
    std::vector<double> w{1.0};
    for (int i = 1; i <= m; ++i)
        w.push_back(w.back() * ratios[static_cast<std::size_t>(i - 1)] / static_cast<double>(i));
    return Pmf::from_weights(w);
}

Pmf seeded_non_ulc_pmf(std::uint64_t seed) {
    SplitMix64 g(seed);
    std::vector<double> w(6);
    for (auto& x : w) x = 0.05 + 0.95 * g.next_unit();
    return Pmf::from_weights(w);
}

Pmf lambda_eq_var_probe() { return Pmf::from_weights({0.625, 0.25, 0.125}); }

std::vector<CorpusMember> builtin_corpus() {
    std::vector<CorpusMember> c;
    c.push_back({"bern(0.3)", Pmf::bernoulli(0.3)});
    c.push_back({"bern(0.5)", Pmf::bernoulli(0.5)});
    c.push_back({"bin(2,0.5)", Pmf::binomial(2, 0.5)});
    c.push_back({"bin(3,0.4)", Pmf::binomial(3, 0.4)});
    c.push_back({"pmf(1,1,1,1)", Pmf::from_weights({1, 1, 1, 1})});
    c.push_back({"geom(0.5)", Pmf::geometric(0.5)});
    c.push_back({"nb(2,0.5)", Pmf::negative_binomial(2, 0.5)});
    c.push_back({"pois(1)", Pmf::poisson(1.0)});
    c.push_back({"pois(2)", Pmf::poisson(2.0)});
    c.push_back({"ulc_seed_1", seeded_ulc_pmf(1)});
    c.push_back({"nonulc_seed_9", seeded_non_ulc_pmf(9)});
    return c;
}

namespace {

SuiteRow row_from(const std::string& suite, const std::string& member, const CheckResult& c,
                  std::string note = "") {
    SuiteRow r;
    r.suite = suite;
    r.name = member.empty() ? c.name : member + ":" + c.name;
    r.lhs = c.lhs;
    r.rhs = c.rhs;
    r.slack = c.slack;
    r.status = c.pass ? "pass" : "fail";
    r.note = std::move(note);
    return r;
}

SuiteRow skip_row(const std::string& suite, const std::string& name, std::string reason) {
    SuiteRow r;
    r.suite = suite;
    r.name = name;
    r.status = "skip";
    r.note = std::move(reason);
    return r;
}

CheckResult aggregate_min(const std::vector<CheckResult>& cs, const std::string& name) {
    CheckResult best;
    best.name = name;
    best.slack = kInf;
    best.pass = true;
    best.lhs = 0.0;
    best.rhs = kInf;
    bool first = true;
    for (const auto& c : cs) {
        if (first || c.slack < best.slack) {
            best.lhs = c.lhs;
            best.rhs = c.rhs;
            best.slack = c.slack;
            first = false;
        }
        if (!c.pass) best.pass = false;
    }
    return best;
}

enum class MemberClass { ulc, reversed, other };

MemberClass classify(const Pmf& f, double eps) {
    if (is_ulc(f, eps).holds) return MemberClass::ulc;
    if (is_log_concave(f, eps).holds &&
        leq_lc(Pmf::poisson(f.mean(), 1e-15), f, eps).holds)
        return MemberClass::reversed;
    return MemberClass::other;
}

using Corpus = std::vector<CorpusMember>;

std::vector<SuiteRow> suite_thinning(const Corpus& corpus, const Tolerances& tol) {
    std::vector<SuiteRow> rows;
    for (const auto& m : corpus)
        for (const auto& c :
             check_thinning_lemma(m.pmf, {0.0, 0.25, 0.5, 0.75, 1.0}, tol.eps_ineq))
            rows.push_back(row_from("thinning", m.name, c));
    return rows;
}

std::vector<SuiteRow> suite_convolution(const Corpus& corpus, const Tolerances& tol) {
    std::vector<SuiteRow> rows;
    for (const auto& m : corpus)
        for (const auto& c : check_convolution_lemma(m.pmf, 10, tol.eps_ineq))
            rows.push_back(row_from("convolution", m.name, c));
    return rows;
}

std::vector<SuiteRow> suite_debruijn(const Corpus& corpus, const Tolerances&) {
    std::vector<SuiteRow> rows;
    for (const auto& m : corpus)
        for (double a : {0.1, 0.25, 0.5, 0.75, 0.9})
            rows.push_back(row_from("debruijn", m.name, check_debruijn(m.pmf, a, 1e-4)));
    return rows;
}

std::vector<SuiteRow> suite_logsobolev(const Corpus& corpus, const Tolerances& tol) {
    std::vector<SuiteRow> rows;
    for (const auto& m : corpus)
        for (const auto& c : check_log_sobolev(m.pmf, tol.eps_ineq))
            rows.push_back(row_from("logsobolev", m.name, c));
    return rows;
}

std::vector<SuiteRow> suite_mixture(const Corpus&, const Tolerances&) {
    struct Combo {
        std::string name;
        std::vector<Pmf> qs;
    };
    const std::vector<Combo> combos = {
        {"bern(0.5)+bern(0.5)", {Pmf::bernoulli(0.5), Pmf::bernoulli(0.5)}},
        {"bern(0.2)+bin(2,0.4)", {Pmf::bernoulli(0.2), Pmf::binomial(2, 0.4)}},
        {"bern(0.3)+bin(2,0.5)+geom(0.5)",
         {Pmf::bernoulli(0.3), Pmf::binomial(2, 0.5), Pmf::geometric(0.5)}},
        {"bin(3,0.4)+pois(1)", {Pmf::binomial(3, 0.4), Pmf::poisson(1.0)}},
        {"geom(0.5)+nb(2,0.5)", {Pmf::geometric(0.5), Pmf::negative_binomial(2, 0.5)}},
    };
    std::vector<SuiteRow> rows;
    for (const auto& combo : combos) {
        MixtureResult res = check_mixture_identity(combo.qs, 1e-12);
        std::string note = "betas=";
        for (std::size_t i = 0; i < res.betas.size(); ++i)
            note += (i ? "|" : "") + fmt_shortest(res.betas[i]);
        rows.push_back(row_from("mixture", combo.name, res.check, note));
    }
    return rows;
}

std::vector<SuiteRow> suite_leave_one_out(const Corpus& corpus, const Tolerances& tol) {
    struct Combo {
        std::string name;
        std::vector<Pmf> qs;
    };
    const std::vector<Combo> combos = {
        {"bin(2,0.5)x3", {Pmf::binomial(2, 0.5), Pmf::binomial(2, 0.5), Pmf::binomial(2, 0.5)}},
        {"bern(0.2)+bern(0.3)+bern(0.5)",
         {Pmf::bernoulli(0.2), Pmf::bernoulli(0.3), Pmf::bernoulli(0.5)}},
        {"bern(0.3)+bin(2,0.5)+bin(3,0.4)",
         {Pmf::bernoulli(0.3), Pmf::binomial(2, 0.5), Pmf::binomial(3, 0.4)}},
        {"geom(0.5)+nb(2,0.5)+bern(0.5)",
         {Pmf::geometric(0.5), Pmf::negative_binomial(2, 0.5), Pmf::bernoulli(0.5)}},
    };
    std::vector<SuiteRow> rows;
    for (const auto& combo : combos)
        for (const auto& c : check_leave_one_out(combo.qs, tol.eps_ineq))
            rows.push_back(row_from("leave_one_out", combo.name, c));
    for (const auto& m : corpus) {
        auto checks = check_selfconv_sizebias_monotone(m.pmf, 6, tol.eps_ineq);
        std::vector<CheckResult> fwd, rev;
        for (const auto& c : checks)
            (c.name.find("fwd") != std::string::npos ? fwd : rev).push_back(c);
        rows.push_back(row_from("leave_one_out", m.name, aggregate_min(fwd, "selfconv-fwd"),
                                "links n=1..6"));
        rows.push_back(row_from("leave_one_out", m.name, aggregate_min(rev, "selfconv-rev"),
                                "links n=1..6"));
    }
    return rows;
}

std::vector<SuiteRow> suite_hn(const Corpus& corpus, const Tolerances& tol) {
    std::vector<SuiteRow> rows;
    for (const auto& m : corpus)
        for (const auto& c : check_hn_monotone(m.pmf, 10, tol.eps_ineq))
            rows.push_back(row_from("hn", m.name, c));
    return rows;
}

std::vector<SuiteRow> suite_entropy(const Corpus& corpus, const Tolerances& tol) {
    std::vector<SuiteRow> rows;
    for (const auto& m : corpus) {
        MemberClass cls = classify(m.pmf, tol.eps_ineq);
        if (cls == MemberClass::other) {
            rows.push_back(skip_row("entropy", m.name,
                                    "neither ULC nor dominated by the Poisson; no direction"));
            continue;
        }
        Direction dir =
            cls == MemberClass::ulc ? Direction::increasing : Direction::decreasing;
        for (const auto& c : check_entropy_monotone(m.pmf, 10, dir, tol.eps_ineq))
            rows.push_back(row_from("entropy", m.name, c,
                                    dir == Direction::increasing ? "increasing" : "decreasing"));
    }
    return rows;
}

std::vector<SuiteRow> suite_cx_chain(const Corpus& corpus, const Tolerances& tol) {
    std::vector<SuiteRow> rows;
    for (const auto& m : corpus) {
        try {
            for (const auto& c : check_cx_chain(m.pmf, 8, tol.eps_ineq))
                rows.push_back(row_from("cx_chain", m.name, c));
        } catch (const PreconditionFailed& e) {
            rows.push_back(skip_row("cx_chain", m.name, e.what()));
        }
    }
    return rows;
}

std::vector<SuiteRow> suite_rulc(const Corpus& corpus, const Tolerances& tol) {
    std::vector<SuiteRow> rows;
    for (const auto& m : corpus) {
        if (!is_ulc(m.pmf, tol.eps_ineq).holds) {
            rows.push_back(skip_row("rulc", m.name, "not ULC"));
            continue;
        }
        for (std::int64_t n = 2; n <= 10; ++n)
            rows.push_back(row_from("rulc", m.name, check_rulc_bound(m.pmf, n, tol.eps_ineq)));
    }
    return rows;
}

std::vector<SuiteRow> suite_rate(const Corpus& corpus, const Tolerances&) {
    std::vector<SuiteRow> rows;
    for (const auto& m : corpus) {
        try {
            RateReport rep = estimate_rate(m.pmf, 16, 128);
            rows.push_back(row_from("rate", m.name,
                                    band_check("slope-d", rep.slope_d, -2.0, 0.15),
                                    "r2=" + fmt_shortest(rep.r2_d)));
            rows.push_back(row_from("rate", m.name,
                                    band_check("slope-chi2", rep.slope_chi2, -1.0, 0.15),
                                    "r2=" + fmt_shortest(rep.r2_chi2)));
            rows.push_back(row_from("rate", m.name, aggregate_min({rep.k_chain[0]}, "chain-upper"),
                                    "min over n=16..128"));
            rows.push_back(row_from("rate", m.name, aggregate_min({rep.k_chain[1]}, "chain-lower"),
                                    "min over n=16..128"));
        } catch (const DegenerateSequence& e) {
            rows.push_back(skip_row("rate", m.name, e.what()));
        }
    }
    RateReport probe = estimate_rate(lambda_eq_var_probe(), 16, 128);
    rows.push_back(row_from("rate", "lambda-eq-var-probe",
                            band_check("slope-chi2", probe.slope_chi2, -2.0, 0.15),
                            "r2=" + fmt_shortest(probe.r2_chi2)));
    return rows;
}

std::vector<SuiteRow> suite_tv(const Corpus& corpus, const Tolerances& tol) {
    std::vector<SuiteRow> rows;
    for (const auto& m : corpus) {
        auto pins = check_pinsker(m.pmf, 16, 128, tol.eps_ineq);
        rows.push_back(
            row_from("tv", m.name, aggregate_min(pins, "pinsker"), "min over n=16..128"));
        try {
            rows.push_back(row_from("tv", m.name, check_tv_slope(m.pmf, 16, 128)));
        } catch (const DegenerateSequence& e) {
            rows.push_back(skip_row("tv", m.name + ":slope", e.what()));
        }
    }
    return rows;
}

std::vector<SuiteRow> suite_key_lemma(const Corpus& corpus, const Tolerances& tol) {
    std::vector<SuiteRow> rows;
    for (const auto& m : corpus) {
        MemberClass cls = classify(m.pmf, tol.eps_ineq);
        if (cls == MemberClass::other) {
            rows.push_back(skip_row("key_lemma", m.name, "no convex-order chain direction"));
            continue;
        }
        for (std::int64_t n = 2; n <= 6; ++n) {
            Pmf a = law_of_thin_numbers(m.pmf, static_cast<std::uint64_t>(n - 1));
            Pmf b = law_of_thin_numbers(m.pmf, static_cast<std::uint64_t>(n));
            const Pmf& f = cls == MemberClass::ulc ? a : b;
            const Pmf& g = cls == MemberClass::ulc ? b : a;
            try {
                for (const auto& c : check_key_lemma(f, g, tol.eps_ineq))
                    rows.push_back(row_from("key_lemma", m.name + ":n=" + std::to_string(n), c));
            } catch (const PreconditionFailed& e) {
                rows.push_back(
                    skip_row("key_lemma", m.name + ":n=" + std::to_string(n), e.what()));
            }
        }
    }
    for (double lambda : {0.5, 1.0, 2.0}) {
        const auto n0 = static_cast<std::int64_t>(std::ceil(lambda));
        for (std::int64_t n = n0; n <= 10; ++n) {
            Pmf f = Pmf::binomial(n, lambda / static_cast<double>(n));
            Pmf g = Pmf::binomial(n + 1, lambda / static_cast<double>(n + 1));
            std::string name =
                "hoeffding:lambda=" + fmt_shortest(lambda) + ":n=" + std::to_string(n);
            try {
                for (const auto& c : check_key_lemma(f, g, tol.eps_ineq))
                    rows.push_back(row_from("key_lemma", name, c));
            } catch (const PreconditionFailed& e) {
                rows.push_back(skip_row("key_lemma", name, e.what()));
            }
        }
    }
    return rows;
}

std::vector<SuiteRow> suite_convergence(const Corpus& corpus, const Tolerances& tol) {
    std::vector<SuiteRow> rows;
    for (const auto& m : corpus)
        for (const auto& c : convergence_suite(m.pmf, 100, tol.eps_ineq))
            rows.push_back(row_from("convergence", m.name, c, "n=100"));
    return rows;
}

std::vector<SuiteRow> suite_schur(const Corpus&, const Tolerances& tol) {
    struct Base {
        std::string name;
        Pmf pmf;
    };
    const std::vector<Base> bases = {{"bin(2,0.5)", Pmf::binomial(2, 0.5)},
                                     {"ulc_seed_1", seeded_ulc_pmf(1)}};
    std::vector<SuiteRow> rows;
    for (const auto& base : bases) {
        for (int n = 2; n <= 3; ++n) {
            // Nondecreasing p-tuples on the grid i/8.
            std::vector<std::vector<double>> tuples;
            std::vector<double> cur(static_cast<std::size_t>(n), 0.0);
            auto rec = [&](auto&& self, int pos, int lo) -> void {
                if (pos == n) {
                    tuples.push_back(cur);
                    return;
                }
                for (int v = lo; v <= 8; ++v) {
                    cur[static_cast<std::size_t>(pos)] = static_cast<double>(v) / 8.0;
                    self(self, pos + 1, v);
                }
            };
            rec(rec, 0, 0);
            std::map<double, std::vector<std::size_t>> by_sum;
            for (std::size_t i = 0; i < tuples.size(); ++i) {
                double s = 0.0;
                for (double v : tuples[i]) s += v;
                by_sum[s].push_back(i);
            }
            const auto sup =
                static_cast<std::int64_t>(base.pmf.size() - 1) * static_cast<std::int64_t>(n);
            std::vector<ConvexTestFn> hinges;
            for (std::int64_t k = 0; k <= sup; ++k) hinges.push_back(ConvexTestFn::hinge(k));
            ConvexTestFn square = ConvexTestFn::square();
            std::vector<CheckResult> hinge_checks, square_checks;
            std::size_t pairs = 0;
            for (const auto& [sum, idx] : by_sum) {
                for (std::size_t ia : idx) {
                    for (std::size_t ib : idx) {
                        if (ia == ib) continue;
                        if (!majorizes(tuples[ib], tuples[ia])) continue;
                        ++pairs;
                        for (const auto& h : hinges)
                            hinge_checks.push_back(
                                schur_probe(base.pmf, tuples[ia], tuples[ib], h, tol.eps_ineq));
                        square_checks.push_back(
                            schur_probe(base.pmf, tuples[ia], tuples[ib], square, tol.eps_ineq));
                    }
                }
            }
            std::string note = "pairs=" + std::to_string(pairs) + ",n=" + std::to_string(n);
            rows.push_back(row_from("schur", base.name + ":n=" + std::to_string(n),
                                    aggregate_min(hinge_checks, "hinge"), note));
            rows.push_back(row_from("schur", base.name + ":n=" + std::to_string(n),
                                    aggregate_min(square_checks, "square"), note));
        }
    }
    return rows;
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {
        "thinning", "convolution", "debruijn",  "logsobolev", "mixture",
        "leave_one_out", "hn",      "entropy",  "cx_chain",   "rulc",
        "rate",     "tv",          "key_lemma", "convergence", "schur"};
    return names;
}

std::vector<SuiteRow> run_suite(const std::string& suite, const std::vector<CorpusMember>& corpus,
                                const Tolerances& tol) {
    tol.validate();
    if (suite == "thinning") return suite_thinning(corpus, tol);
    if (suite == "convolution") return suite_convolution(corpus, tol);
    if (suite == "debruijn") return suite_debruijn(corpus, tol);
    if (suite == "logsobolev") return suite_logsobolev(corpus, tol);
    if (suite == "mixture") return suite_mixture(corpus, tol);
    if (suite == "leave_one_out") return suite_leave_one_out(corpus, tol);
    if (suite == "hn") return suite_hn(corpus, tol);
    if (suite == "entropy") return suite_entropy(corpus, tol);
    if (suite == "cx_chain") return suite_cx_chain(corpus, tol);
    if (suite == "rulc") return suite_rulc(corpus, tol);
    if (suite == "rate") return suite_rate(corpus, tol);
    if (suite == "tv") return suite_tv(corpus, tol);
    if (suite == "key_lemma") return suite_key_lemma(corpus, tol);
    if (suite == "convergence") return suite_convergence(corpus, tol);
    if (suite == "schur") return suite_schur(corpus, tol);
    throw DomainError("unknown suite: " + suite);
}

}  // namespace thinlaw
