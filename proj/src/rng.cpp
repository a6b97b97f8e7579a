#include "simbias/rng.hpp"

#include <bit>

namespace simbias {

std::uint64_t splitmix64(std::uint64_t& state) noexcept {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id) noexcept
    : seed_(seed), stream_id_(stream_id) {
  // Hash the stream id on its own before combining so that (s, i) and
  // (s + 1, i - 1) style neighbours land far apart.
  std::uint64_t id_state = stream_id ^ 0x6a09e667f3bcc909ULL;
  std::uint64_t sm = seed ^ splitmix64(id_state);
  for (auto& word : state_) word = splitmix64(sm);
}

std::uint64_t RngStream::next_u64() noexcept {
  auto& s = state_;
  const std::uint64_t result = std::rotl(s[1] * 5, 7) * 9;
  const std::uint64_t t = s[1] << 17;
  s[2] ^= s[0];
  s[3] ^= s[1];
  s[1] ^= s[2];
  s[0] ^= s[3];
  s[2] ^= t;
  s[3] = std::rotl(s[3], 45);
  return result;
}

double RngStream::uniform01() noexcept {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::uniform_open01() noexcept {
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double RngStream::uniform_closed01() noexcept {
  constexpr double kDenominator = static_cast<double>((std::uint64_t{1} << 53) - 1);
  return static_cast<double>(next_u64() >> 11) / kDenominator;
}

double RngStream::symmetric(double half_width) noexcept {
  return half_width * (2.0 * uniform_closed01() - 1.0);
}

}  // namespace simbias
