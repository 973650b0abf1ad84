#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tdp/matrix.hpp"
#include "tdp/protocol.hpp"

namespace tdp {

struct PlainBlock {
  Matrix m;
};

// Conjugate of its plaintext block: same trace, determinant and
// characteristic polynomial.
struct CipherBlock {
  Matrix c;
};

struct CipherMessage {
  FieldParams params;
  std::uint64_t plaintext_length;
  std::vector<CipherBlock> blocks;
};

// Largest n with 256^n <= p^(d^2): 63 at p=251, d=8. Zero when a block
// cannot carry a single byte (e.g. p=3, d=2).
std::size_t bytes_per_block(const FieldParams& params);

// Left-pads to bytes_per_block bytes, reads a big-endian integer and writes
// its d^2 big-endian base-p digits row-major.
PlainBlock encode_block(std::span<const std::uint8_t> bytes, const FieldParams& params);

// Inverse of encode_block; returns the trailing `length` bytes. Throws
// ValueOutOfRange if the digits are >= 256^bytes_per_block.
std::vector<std::uint8_t> decode_block(const PlainBlock& block, std::size_t length);

// k^-1 m k
CipherBlock encrypt_block(const SessionKey& k, const PlainBlock& m);
// k c k^-1
PlainBlock decrypt_block(const SessionKey& k, const CipherBlock& c);

// Blocks are encrypted independently; identical chunks give identical blocks.
CipherMessage encrypt_message(const SessionKey& k, std::span<const std::uint8_t> plaintext);
std::vector<std::uint8_t> decrypt_message(const SessionKey& k, const CipherMessage& cm);

}  // namespace tdp
