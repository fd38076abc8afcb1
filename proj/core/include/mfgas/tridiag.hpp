#pragma once

#include <cstdint>
#include <vector>

#include "mfgas/rng.hpp"

namespace mfgas {

// Exact sampler for the 1D log gas with V = x^2 at inverse temperature
// beta: joint density proportional to prod_{i<j} |x_i - x_j|^beta
// e^{-sum x_i^2}.  Draws the symmetric tridiagonal ensemble (standard
// normal diagonal, chi sub-diagonal with parameters beta*(N-1) ... beta,
// over sqrt 2), takes eigenvalues, and rescales by 1/sqrt 2.
std::vector<double> sample_tridiagonal_gbe(int N, double beta, Rng& rng);

// Largest point only, via bisection on the index range; avoids the full
// spectrum for large N.
double sample_tridiagonal_gbe_max(int N, double beta, Rng& rng);

}
