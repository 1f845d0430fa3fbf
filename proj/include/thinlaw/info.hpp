#pragma once

#include "thinlaw/pmf.hpp"

namespace thinlaw {

// Shannon entropy in nats; 0 log 0 = 0. Throws DeficitTooLarge if more than
// eps mass is missing from the stored support.
double entropy(const Pmf& f, double deficit_eps = 1e-9);

// KL divergence D(f || g). Mass of f on points where g is zero makes the
// divergence infinite, except that when either side is a truncated view such
// excess up to the truncation scale is attributed to the missing tail.
double relative_entropy(const Pmf& f, const Pmf& g);

// D(f || poisson(mean(f))) without truncating the Poisson reference.
double d_poisson(const Pmf& f);

// D(f || poisson(mu)) for an arbitrary rate, again via the closed form.
double rel_ent_poisson(const Pmf& f, double mu);

// chi^2(f, g) = sum over supp(g) of g_i (f_i/g_i - 1)^2; infinite if f puts
// real mass outside supp(g), with the same truncation allowance as above.
double chi_squared(const Pmf& f, const Pmf& g);

// K(f) = mean(f) * chi^2(size_bias(f), f).
double scaled_fisher(const Pmf& f);

double total_variation(const Pmf& f, const Pmf& g);

// l_n = E[ Xbar log(Xbar / lambda) ] where Xbar is the mean of n iid copies.
double l_n(const Pmf& f, std::uint64_t n);

}  // namespace thinlaw
