#pragma once

#include <vector>

#include "dickecat/dicke.hpp"
#include "dickecat/spin.hpp"

namespace dickecat {

/// Spin state left behind by detecting `photons` cavity photons.
struct HeraldOutcome {
  int photons = 0;
  SpinVector state;
  double probability = 0.0;
};

/// psi_n = <n|G> / ||<n|G>|| and P(n) = ||<n|G>||^2. Throws DomainError for n
/// outside [0, cutoff] and DegenerateStateError when P(n) < 1e-300.
HeraldOutcome herald(const GroundState& ground, int photons);

/// P(0), ..., P(cutoff).
std::vector<double> photon_distribution(const GroundState& ground);

/// Tr_photon |G><G|.
SpinDensityMatrix reduced_spin_density(const GroundState& ground);

}  // namespace dickecat
