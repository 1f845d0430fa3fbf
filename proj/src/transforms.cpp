#include "thinlaw/transforms.hpp"

#include <cmath>
#include <vector>

namespace thinlaw {

Pmf thin(const Pmf& f, double alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw DomainError("thinning requires alpha in [0,1]");
    if (alpha == 1.0) return Pmf::raw(f.weights(), f.deficit());
    if (alpha == 0.0) {
        double d = f.deficit();
        return Pmf::raw({1.0 - d}, d);
    }
    const auto& w = f.weights();
    const double la = std::log(alpha);
    const double l1a = std::log1p(-alpha);
    std::vector<double> out(w.size(), 0.0);
    for (std::size_t j = 0; j < w.size(); ++j) {
        if (w[j] == 0.0) continue;
        for (std::size_t i = 0; i <= j; ++i) {
            double lk = log_choose(j, i) + static_cast<double>(i) * la +
                        static_cast<double>(j - i) * l1a;
            out[i] += w[j] * std::exp(lk);
        }
    }
    return Pmf::raw(std::move(out), f.deficit());
}

Pmf convolve(const Pmf& f, const Pmf& g) {
    const auto& a = f.weights();
    const auto& b = g.weights();
    std::vector<double> out(a.size() + b.size() - 1, 0.0);
    std::vector<double> comp(out.size(), 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0.0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            double term = a[i] * b[j] - comp[i + j];
            double next = out[i + j] + term;
            comp[i + j] = (next - out[i + j]) - term;
            out[i + j] = next;
        }
    }
    double df = f.deficit(), dg = g.deficit();
    double deficit = std::min(1.0, df + dg - df * dg);
    return Pmf::raw(std::move(out), deficit);
}

Pmf self_convolve(const Pmf& f, std::uint64_t n) {
    if (n == 0) throw DomainError("self convolution requires n >= 1");
    Pmf base = Pmf::raw(f.weights(), f.deficit());
    Pmf acc = Pmf::point_mass(0);
    bool have = false;
    while (n > 0) {
        if (n & 1) {
            acc = have ? convolve(acc, base) : base;
            have = true;
        }
        n >>= 1;
        if (n > 0) base = convolve(base, base);
    }
    return acc;
}

Pmf size_bias(const Pmf& f) {
    const double m = f.mean();
    if (!(m > 0.0)) throw ZeroMean("size bias requires positive mean");
    const auto& w = f.weights();
    if (w.size() < 2) throw ZeroMean("size bias requires positive mean");
    std::vector<double> out(w.size() - 1);
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
        out[i] = static_cast<double>(i + 1) * w[i + 1] / m;
    double sum = kahan_sum(out);
    // A shortfall in sum is rounding noise unless f itself is a truncated view.
    double deficit = f.truncated() ? std::max(1.0 - sum, f.deficit()) : 0.0;
    return Pmf::raw(std::move(out), deficit);
}

Pmf law_of_thin_numbers(const Pmf& f, std::uint64_t n) {
    if (n == 0) throw DomainError("law of thin numbers requires n >= 1");
    Pmf thinned = thin(f, 1.0 / static_cast<double>(n));
    return self_convolve(thinned, n);
}

}  // namespace thinlaw
