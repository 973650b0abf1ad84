#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "tdp/field.hpp"

namespace tdp {

// A stream of uniformly distributed bytes. Not thread-safe; use one instance
// per thread.
class RandomSource {
 public:
  virtual ~RandomSource() = default;
  virtual std::uint8_t next_byte() = 0;

  void fill(std::span<std::uint8_t> out) {
    for (auto& b : out) b = next_byte();
  }
};

// SplitMix64; each 64-bit output is emitted as 8 bytes, little-endian.
class SplitMix64 final : public RandomSource {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64();
  std::uint8_t next_byte() override;

 private:
  std::uint64_t state_;
  std::array<std::uint8_t, 8> buffer_{};
  std::size_t buffered_ = 0;
};

// Replays a fixed byte sequence; throws std::out_of_range once exhausted.
class ByteSequence final : public RandomSource {
 public:
  explicit ByteSequence(std::vector<std::uint8_t> bytes) : bytes_(std::move(bytes)) {}

  std::uint8_t next_byte() override;
  [[nodiscard]] std::size_t remaining() const noexcept { return bytes_.size() - pos_; }

 private:
  std::vector<std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

// Uniform value on [lo, hi] by rejection sampling over the minimal number of
// little-endian bytes covering hi - lo. Consumes nothing when lo == hi.
Element field_uniform(RandomSource& rs, Element lo, Element hi);

}  // namespace tdp
