#include "simbias/map_engine.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "simbias/error.hpp"

namespace simbias {

std::string_view to_string(BoundaryPolicy policy) noexcept {
  return policy == BoundaryPolicy::Clamp ? "clamp" : "resample";
}

BoundaryPolicy parse_boundary_policy(std::string_view text) {
  if (text == "clamp") return BoundaryPolicy::Clamp;
  if (text == "resample") return BoundaryPolicy::Resample;
  fail(ErrorKind::Config, "unknown boundary policy '" + std::string(text) + "'");
}

MapParams::MapParams(const MapSettings& settings) : s_(settings) {
  if (!(s_.mu > 0.0 && s_.mu <= 4.0))
    fail(ErrorKind::Config, "mu must lie in (0, 4], got " + std::to_string(s_.mu));
  if (!(s_.eps >= 0.0) || !std::isfinite(s_.eps))
    fail(ErrorKind::Config, "eps must be a finite value >= 0");
  if (!(s_.delta >= 0.0) || !std::isfinite(s_.delta))
    fail(ErrorKind::Config, "delta must be a finite value >= 0");
  if (s_.n < 1 || s_.n > kMaxLength)
    fail(ErrorKind::Config, "n must lie in [1, 64], got " + std::to_string(s_.n));
  if (s_.transient_skip < 0) fail(ErrorKind::Config, "transient_skip must be >= 0");
}

double apply_boundary(double x_raw, BoundaryPolicy policy, RngStream& rng,
                      const ResampleContext& retry_ctx) {
  if (x_raw >= 0.0 && x_raw <= 1.0) return x_raw;
  if (policy == BoundaryPolicy::Clamp) return std::clamp(x_raw, 0.0, 1.0);

  for (std::uint64_t attempt = 0; attempt < kMaxResampleRetries; ++attempt) {
    const double x = retry_ctx.image + rng.symmetric(retry_ctx.eps);
    if (x >= 0.0 && x <= 1.0) return x;
  }
  fail(ErrorKind::Config, "resample retry budget exhausted; (mu, eps) pair is degenerate");
}

double noisy_step(double x, const MapParams& params, RngStream& rng) {
  const double image = step(x, params.mu(), 0.0);
  if (params.eps() == 0.0) return std::clamp(image, 0.0, 1.0);
  const double raw = image + rng.symmetric(params.eps());
  return apply_boundary(raw, params.boundary(), rng, {image, params.eps()});
}

RealTrajectory generate_trajectory(const MapParams& params, double x0, RngStream& rng) {
  if (!(x0 > 0.0 && x0 < 1.0)) fail(ErrorKind::Domain, "x0 must lie in (0, 1)");
  double x = x0;
  for (int k = 0; k < params.transient_skip(); ++k) x = noisy_step(x, params, rng);
  RealTrajectory traj;
  for (int k = 0; k < params.n(); ++k) {
    x = noisy_step(x, params, rng);
    traj.push_back(x);
  }
  return traj;
}

double sample_x0(RngStream& rng) noexcept { return rng.uniform_open01(); }

}  // namespace simbias
