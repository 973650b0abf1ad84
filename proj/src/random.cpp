#include "tdp/random.hpp"

#include <stdexcept>

namespace tdp {

std::uint64_t SplitMix64::next_u64() {
  state_ += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint8_t SplitMix64::next_byte() {
  if (buffered_ == 0) {
    std::uint64_t v = next_u64();
    for (std::size_t i = 0; i < 8; ++i) {
      buffer_[i] = static_cast<std::uint8_t>(v >> (8 * i));
    }
    buffered_ = 8;
  }
  return buffer_[8 - buffered_--];
}

std::uint8_t ByteSequence::next_byte() {
  if (pos_ >= bytes_.size()) throw std::out_of_range("byte sequence exhausted");
  return bytes_[pos_++];
}

Element field_uniform(RandomSource& rs, Element lo, Element hi) {
  if (lo > hi) throw std::invalid_argument("field_uniform: lo > hi");
  const std::uint32_t range = hi - lo;
  std::size_t nbytes = 0;
  for (std::uint64_t cover = 1; cover <= range; cover <<= 8) ++nbytes;
  if (nbytes == 0) return lo;
  for (;;) {
    std::uint64_t value = 0;
    for (std::size_t i = 0; i < nbytes; ++i) {
      value |= static_cast<std::uint64_t>(rs.next_byte()) << (8 * i);
    }
    if (value <= range) return lo + static_cast<Element>(value);
  }
}

}  // namespace tdp
