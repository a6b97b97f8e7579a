#include "simbias/symbol_string.hpp"


#include "simbias/error.hpp"

namespace simbias {

SymbolString::SymbolString(std::uint64_t bits, int len) : bits_(bits & low_mask(len)), len_(len) {
  if (len < 1 || len > 64) fail(ErrorKind::Domain, "symbol string length must lie in [1, 64]");
}

SymbolString SymbolString::ones(int len) { return SymbolString(~std::uint64_t{0}, len); }

SymbolString SymbolString::from_text(std::string_view text) {
  if (text.empty() || text.size() > 64)
    fail(ErrorKind::Parse, "symbol string must have 1 to 64 characters");
  std::uint64_t bits = 0;
  for (char c : text) {
    if (c != '0' && c != '1')
      fail(ErrorKind::Parse, "symbol string may only contain '0' and '1'");
    bits = (bits << 1) | static_cast<std::uint64_t>(c == '1');
  }
  return SymbolString(bits, static_cast<int>(text.size()));
}

std::string SymbolString::to_text() const {
  std::string out(static_cast<std::size_t>(len_), '0');
  for (int k = 0; k < len_; ++k)
    if ((*this)[k]) out[static_cast<std::size_t>(k)] = '1';
  return out;
}

SymbolString SymbolString::reversed() const noexcept {
  // Reverse all 64 bits, then shift the result down into the low len bits.
  SymbolString r;
  r.len_ = len_;
  std::uint64_t v = bits_;
  v = ((v >> 1) & 0x5555555555555555ULL) | ((v & 0x5555555555555555ULL) << 1);
  v = ((v >> 2) & 0x3333333333333333ULL) | ((v & 0x3333333333333333ULL) << 2);
  v = ((v >> 4) & 0x0f0f0f0f0f0f0f0fULL) | ((v & 0x0f0f0f0f0f0f0f0fULL) << 4);
  v = __builtin_bswap64(v);
  r.bits_ = v >> (64 - len_);
  return r;
}

SymbolString SymbolString::complemented() const noexcept {
  SymbolString c = *this;
  c.bits_ = ~bits_ & low_mask(len_);
  return c;
}

bool SymbolString::is_constant() const noexcept {
  return bits_ == 0 || bits_ == low_mask(len_);
}

}  // namespace simbias
