#include "tdp/cipher.hpp"

#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

#include "tdp/errors.hpp"

namespace tdp {

namespace mp = boost::multiprecision;

std::size_t bytes_per_block(const FieldParams& params) {
  const mp::cpp_int capacity = mp::pow(mp::cpp_int(params.prime()), static_cast<unsigned>(params.entries()));
  std::size_t n = 0;
  mp::cpp_int cover = 256;
  while (cover <= capacity) {
    ++n;
    cover <<= 8;
  }
  return n;
}

PlainBlock encode_block(std::span<const std::uint8_t> bytes, const FieldParams& params) {
  const std::size_t capacity = bytes_per_block(params);
  if (bytes.size() > capacity) {
    throw BlockTooLong("block of " + std::to_string(bytes.size()) + " bytes exceeds " +
                       std::to_string(capacity));
  }
  // leading zero padding does not change the value
  mp::cpp_int value = 0;
  for (std::uint8_t b : bytes) value = (value << 8) | b;

  const std::size_t n = params.entries();
  std::vector<Element> digits(n, 0);
  for (std::size_t i = n; i-- > 0 && value != 0;) {
    digits[i] = static_cast<Element>(value % params.prime());
    value /= params.prime();
  }
  return PlainBlock{Matrix(params, std::move(digits))};
}

std::vector<std::uint8_t> decode_block(const PlainBlock& block, std::size_t length) {
  const FieldParams& params = block.m.params();
  const std::size_t capacity = bytes_per_block(params);
  if (length > capacity) throw BlockTooLong("requested length exceeds block capacity");

  mp::cpp_int value = 0;
  for (Element e : block.m.entries()) value = value * params.prime() + e;
  if (value >> (8 * capacity) != 0) {
    throw ValueOutOfRange("block value exceeds 256^" + std::to_string(capacity));
  }
  std::vector<std::uint8_t> out(length);
  for (std::size_t i = length; i-- > 0;) {
    out[i] = static_cast<std::uint8_t>(value & 0xFF);
    value >>= 8;
  }
  return out;
}

namespace {

void require_key_params(const SessionKey& k, const Matrix& m) {
  if (k.k.params() != m.params()) throw ParamsMismatch("session key and block params differ");
}

}  // namespace

CipherBlock encrypt_block(const SessionKey& k, const PlainBlock& m) {
  require_key_params(k, m.m);
  return CipherBlock{inverse(k.k) * m.m * k.k};
}

PlainBlock decrypt_block(const SessionKey& k, const CipherBlock& c) {
  require_key_params(k, c.c);
  return PlainBlock{k.k * c.c * inverse(k.k)};
}

CipherMessage encrypt_message(const SessionKey& k, std::span<const std::uint8_t> plaintext) {
  const FieldParams& params = k.k.params();
  const std::size_t chunk = bytes_per_block(params);
  if (chunk == 0 && !plaintext.empty()) {
    throw BlockTooLong("parameters " + params.to_string() + " cannot carry a byte per block");
  }
  const Matrix k_inv = inverse(k.k);
  CipherMessage cm{params, plaintext.size(), {}};
  for (std::size_t off = 0; off < plaintext.size(); off += chunk) {
    const std::size_t len = std::min(chunk, plaintext.size() - off);
    const PlainBlock pb = encode_block(plaintext.subspan(off, len), params);
    cm.blocks.push_back(CipherBlock{k_inv * pb.m * k.k});
  }
  return cm;
}

std::vector<std::uint8_t> decrypt_message(const SessionKey& k, const CipherMessage& cm) {
  if (k.k.params() != cm.params) throw ParamsMismatch("session key and message params differ");
  const std::size_t chunk = bytes_per_block(cm.params);
  const std::size_t expected = chunk == 0 ? 0 : (cm.plaintext_length + chunk - 1) / chunk;
  if (cm.blocks.size() != expected) {
    throw std::invalid_argument("block count does not match plaintext length");
  }
  const Matrix k_inv = inverse(k.k);
  std::vector<std::uint8_t> out;
  out.reserve(cm.plaintext_length);
  std::uint64_t left = cm.plaintext_length;
  for (const auto& block : cm.blocks) {
    require_key_params(k, block.c);
    const std::size_t len = static_cast<std::size_t>(std::min<std::uint64_t>(chunk, left));
    const auto bytes = decode_block(PlainBlock{k.k * block.c * k_inv}, len);
    out.insert(out.end(), bytes.begin(), bytes.end());
    left -= len;
  }
  return out;
}

}  // namespace tdp
