#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace simbias {

// Length-tagged binary string packed into one 64-bit word.
//
// Symbol k (0-based, in reading order) is stored at bit position len-1-k, so
// the first symbol is the most significant of the len low bits and the
// packed value orders the same way as the text. Bits at positions >= len
// are always zero.
class SymbolString {
public:
  SymbolString() = default;
  // Throws Error(Domain) if len is outside [1, 64]; high garbage bits are masked.
  SymbolString(std::uint64_t bits, int len);

  static SymbolString from_text(std::string_view text);
  static SymbolString zeros(int len) { return SymbolString(0, len); }
  static SymbolString ones(int len);

  std::uint64_t bits() const noexcept { return bits_; }
  int size() const noexcept { return len_; }

  int operator[](int k) const noexcept {
    return static_cast<int>((bits_ >> (len_ - 1 - k)) & 1u);
  }

  std::string to_text() const;
  SymbolString reversed() const noexcept;
  SymbolString complemented() const noexcept;
  bool is_constant() const noexcept;

  auto operator<=>(const SymbolString&) const = default;

private:
  std::uint64_t bits_ = 0;
  int len_ = 0;
};

constexpr std::uint64_t low_mask(int len) noexcept {
  return len >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << len) - 1);
}

}  // namespace simbias
