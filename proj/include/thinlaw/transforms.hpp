#pragma once

#include <cstdint>

#include "thinlaw/pmf.hpp"

namespace thinlaw {

// Binomial thinning: each unit survives independently with probability alpha.
Pmf thin(const Pmf& f, double alpha);

Pmf convolve(const Pmf& f, const Pmf& g);

// n-fold convolution via binary exponentiation; n >= 1.
Pmf self_convolve(const Pmf& f, std::uint64_t n);

// Size-biased distribution: weight i gets (i+1) f_{i+1} / mean(f).
Pmf size_bias(const Pmf& f);

// thin(self_convolve(f, n), 1/n); thinning each summand first gives the same law.
Pmf law_of_thin_numbers(const Pmf& f, std::uint64_t n);

}  // namespace thinlaw
