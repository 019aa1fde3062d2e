#ifndef ROLLAGE_SIMULATE_HPP
#define ROLLAGE_SIMULATE_HPP

#include <cstdint>

#include "rollage/model_spec.hpp"
#include "rollage/time_series.hpp"

namespace rollage {

/// max(1000, 10 * (p + q)); bounds initialization bias from the zero start
/// below Monte-Carlo noise at the sample sizes used here.
int default_burn_in(const ModelSpec& spec);

/**
 * Generates burn_in + n steps of the ARMA recursion from zero initial state
 * with i.i.d. Gaussian noise N(0, sigma2_w) and returns the last n values.
 * Deterministic given (spec, n, seed, burn_in): the generator is mt19937_64
 * seeded from a SplitMix64 hash of the whole tuple, and normals come from the
 * Marsaglia polar transform (std::normal_distribution is implementation-
 * defined and would not reproduce across standard libraries).
 *
 * burn_in < 0 selects default_burn_in(spec).
 * Throws InvalidModel if validation fails.
 */
TimeSeries simulate(const ModelSpec& spec, int n, std::uint64_t seed, int burn_in = -1);

/**
 * Draws a random causal/invertible model with sigma2_w = 1, deterministic
 * given the seed. Coefficients are parameterized by i.i.d.
 * Uniform(-partial_range, partial_range) partial autocorrelations mapped
 * through the inverse Levinson-Durbin recursion, so every draw is causal by
 * construction; draws are still passed through validate_model and rejected
 * when a root lands within the numerical unit-circle margin.
 *
 * Throws RejectionBudgetExhausted after max_attempts rejected draws.
 */
ModelSpec random_model(ModelKind kind, int p, int q, std::uint64_t seed,
                       double partial_range = 1.0, int max_attempts = 100000);

/// The per-cell generator seed: SplitMix64 chain over the model coefficients,
/// n, seed, and burn_in. Exposed for determinism tests.
std::uint64_t stream_seed(const ModelSpec& spec, int n, std::uint64_t seed, int burn_in);

/// Maps partial autocorrelations (all in (-1,1)) to AR coefficients via the
/// inverse Levinson-Durbin recursion. The result is always causal.
std::vector<double> partials_to_ar(std::span<const double> partials);

}  // namespace rollage

#endif
