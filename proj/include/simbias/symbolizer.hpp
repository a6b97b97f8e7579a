#pragma once

#include <span>
#include <vector>

#include "simbias/map_engine.hpp"
#include "simbias/symbol_string.hpp"

namespace simbias {

inline constexpr double kThreshold = 0.5;

// Bit k is 1 iff values[k] >= 0.5. Accepts 1..64 values.
SymbolString digitize(std::span<const double> values);
inline SymbolString digitize(const RealTrajectory& traj) { return digitize(traj.values()); }

// x_k + delta_k with delta_k ~ U[-delta, delta] i.i.d.; results are not clamped.
// delta == 0 returns the input unchanged and draws nothing.
std::vector<double> perturb_measurements(std::span<const double> values, double delta,
                                         RngStream& rng);

// Fused perturb + digitize used on the sampling hot path. Draws exactly the
// same noise sequence as perturb_measurements.
SymbolString digitize_perturbed(const RealTrajectory& traj, double delta, RngStream& rng);

}  // namespace simbias
