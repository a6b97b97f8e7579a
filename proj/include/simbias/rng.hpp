#pragma once

#include <array>
#include <cstdint>

namespace simbias {

// One deterministic stream of uniform draws, identified by (seed, stream_id).
//
// The generator is xoshiro256** with its state filled by splitmix64 from a
// mix of the seed and the stream id, so the sequence is fixed by the two
// integers alone and is identical on every platform. Real-valued draws are
// built from the top 53 bits, never through <random> distributions, whose
// output is implementation defined.
class RngStream {
public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id) noexcept;

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }

  std::uint64_t next_u64() noexcept;

  // Uniform on [0, 1).
  double uniform01() noexcept;
  // Uniform on the open interval (0, 1); never returns 0 or 1.
  double uniform_open01() noexcept;
  // Uniform on the closed interval [0, 1]; both endpoints reachable.
  double uniform_closed01() noexcept;
  // Uniform on the closed interval [-half_width, half_width].
  double symmetric(double half_width) noexcept;

private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::array<std::uint64_t, 4> state_;
};

std::uint64_t splitmix64(std::uint64_t& state) noexcept;

}  // namespace simbias
