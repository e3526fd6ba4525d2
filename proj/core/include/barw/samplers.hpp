#pragma once

#include "barw/random.hpp"

namespace barw {

// Exact Bin(trials, p) draw: CDF inversion when trials * min(p, 1-p) < 10,
// otherwise Hormann's BTRS transformed rejection.
int sample_binomial(RandomStream& rng, int trials, double p);

// Exact Poisson(mean) draw: product of uniforms for mean <= 30, otherwise
// Hormann's PTRS transformed rejection.
int sample_poisson(RandomStream& rng, double mean);

}  // namespace barw
