#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

#include "simbias/rng.hpp"

namespace simbias {

inline constexpr int kMaxLength = 64;
inline constexpr int kDefaultLength = 25;
inline constexpr int kAlternateTransientSkip = 50;
inline constexpr std::uint64_t kMaxResampleRetries = 1'000'000;

enum class BoundaryPolicy { Clamp, Resample };

std::string_view to_string(BoundaryPolicy policy) noexcept;
BoundaryPolicy parse_boundary_policy(std::string_view text);

// Mutable bag of settings; validated into a MapParams.
struct MapSettings {
  double mu = 1.0;
  double eps = 0.0;
  double delta = 0.0;
  int n = kDefaultLength;
  int transient_skip = 0;
  BoundaryPolicy boundary = BoundaryPolicy::Clamp;
};

// Full configuration of one experiment. Immutable once constructed.
class MapParams {
public:
  // Throws Error(Config) unless mu in (0, 4], eps >= 0, delta >= 0,
  // 1 <= n <= 64 and transient_skip >= 0.
  explicit MapParams(const MapSettings& settings);

  double mu() const noexcept { return s_.mu; }
  double eps() const noexcept { return s_.eps; }
  double delta() const noexcept { return s_.delta; }
  int n() const noexcept { return s_.n; }
  int transient_skip() const noexcept { return s_.transient_skip; }
  BoundaryPolicy boundary() const noexcept { return s_.boundary; }
  const MapSettings& settings() const noexcept { return s_; }

private:
  MapSettings s_;
};

// Fixed-capacity real trajectory; every value lies in [0, 1].
class RealTrajectory {
public:
  RealTrajectory() = default;

  std::size_t size() const noexcept { return size_; }
  double operator[](std::size_t i) const noexcept { return values_[i]; }
  std::span<const double> values() const noexcept { return {values_.data(), size_}; }

  void push_back(double x) noexcept { values_[size_++] = x; }

private:
  std::array<double, kMaxLength> values_{};
  std::size_t size_ = 0;
};

// mu * x * (1 - x) + omega, before any boundary handling.
constexpr double step(double x, double mu, double omega) noexcept {
  return mu * x * (1.0 - x) + omega;
}

// Noise redraw context for BoundaryPolicy::Resample: the deterministic image
// mu*x*(1-x) that the noise is added to, and the noise half-width.
struct ResampleContext {
  double image = 0.0;
  double eps = 0.0;
};

// Maps a raw post-noise state back into [0, 1]. Clamp saturates. Resample
// redraws omega ~ U[-eps, eps] from rng until image + omega lands in [0, 1];
// throws Error(Config) after kMaxResampleRetries failed redraws.
double apply_boundary(double x_raw, BoundaryPolicy policy, RngStream& rng,
                      const ResampleContext& retry_ctx);

// One noisy iteration: draw omega, step, apply the boundary policy.
double noisy_step(double x, const MapParams& params, RngStream& rng);

// Runs transient_skip + n noisy iterations from x0 and returns the last n
// states. x0 must lie in (0, 1) (Error(Domain) otherwise).
RealTrajectory generate_trajectory(const MapParams& params, double x0, RngStream& rng);

// Uniform initial condition on the open interval (0, 1).
double sample_x0(RngStream& rng) noexcept;

}  // namespace simbias
