#include "simbias/symbolizer.hpp"

#include "simbias/error.hpp"

namespace simbias {

SymbolString digitize(std::span<const double> values) {
  if (values.empty() || values.size() > kMaxLength)
    fail(ErrorKind::Domain, "digitize needs 1 to 64 values");
  std::uint64_t bits = 0;
  for (double x : values) bits = (bits << 1) | static_cast<std::uint64_t>(x >= kThreshold);
  return SymbolString(bits, static_cast<int>(values.size()));
}

std::vector<double> perturb_measurements(std::span<const double> values, double delta,
                                         RngStream& rng) {
  if (!(delta >= 0.0)) fail(ErrorKind::Domain, "delta must be >= 0");
  std::vector<double> out(values.begin(), values.end());
  if (delta == 0.0) return out;
  for (double& x : out) x += rng.symmetric(delta);
  return out;
}

SymbolString digitize_perturbed(const RealTrajectory& traj, double delta, RngStream& rng) {
  if (delta == 0.0) return digitize(traj);
  std::uint64_t bits = 0;
  for (double x : traj.values()) {
    const double measured = x + rng.symmetric(delta);
    bits = (bits << 1) | static_cast<std::uint64_t>(measured >= kThreshold);
  }
  return SymbolString(bits, static_cast<int>(traj.size()));
}

}  // namespace simbias
