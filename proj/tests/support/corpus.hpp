#pragma once

#include <random>

#include "sisim/analysis.hpp"
#include "sisim/integrator.hpp"

// Randomized scenario generators shared by the unit and acceptance suites.
// All draws are seeded explicitly so every run is reproducible.
namespace corpus {

using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi);
int uniform_int(Rng& rng, int lo, int hi);

/// Random coefficient spec whose range stays inside [lo, hi] (analytic
/// bounds, not sampling).
sisim::TimeFunction random_fn(Rng& rng, double lo, double hi, double horizon,
                              int depth = 0);

sisim::ImpulseSchedule random_schedule(Rng& rng, double horizon);

/// Nonnegative-coefficient scenario with growth exponents capped so the
/// infected population cannot overflow over the horizon.
sisim::Scenario random_positivity_scenario(Rng& rng, bool with_impulses);

/// Impulse-free, mildly varying scenario with tight solver tolerances, for
/// the closed-form reconstruction comparisons.
sisim::Scenario random_oracle_scenario(Rng& rng);

/// Constant capacity, strictly positive incidence floor, initial total
/// inside the capacity region.
sisim::Scenario random_invariant_scenario(Rng& rng);

/// Constant limiting parameterization with an admissible endemic point.
sisim::LimitingParams random_admissible_limits(Rng& rng);

/// Constant-coefficient scenario realizing a limiting parameterization.
sisim::Scenario scenario_from_limits(const sisim::LimitingParams& lim,
                                     sisim::State initial, double horizon);

} // namespace corpus
