#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "tdp/cipher.hpp"
#include "tdp/protocol.hpp"

namespace tdp {

// Binary record layout (all integers little-endian):
//
//   offset  size  field
//   0       4     magic "TDP1"
//   4       1     record type (1 setup, 2 private, 3 token, 4 session key, 5 ciphertext)
//   5       2     prime
//   7       1     dim
//   8       1     role (0 none, 1 alice, 2 bob)
//   9       4     matrix count
//   13            private only: spec count (1 byte), then d bytes per spec
//                 ciphertext only: plaintext length (8 bytes)
//                 matrices, row-major, one byte per entry
//
// Entries take one byte, so files require p <= 256.
enum class RecordType : std::uint8_t {
  setup = 1,
  private_key = 2,
  token = 3,
  session_key = 4,
  ciphertext = 5,
};

inline constexpr std::size_t kHeaderSize = 13;

struct KeyFile {
  RecordType type;
  FieldParams params;
  Role role = Role::none;
  std::vector<DiagonalSpec> specs;
  std::uint64_t plaintext_length = 0;
  std::vector<Matrix> matrices;
};

std::vector<std::uint8_t> serialize(const KeyFile& file);
// Throws FormatError on any layout violation, including trailing bytes.
KeyFile parse_keyfile(std::span<const std::uint8_t> bytes);

KeyFile to_keyfile(const PublicSetup& setup);
// Private files carry the four setup bases first, so the derived matrices can
// be recomputed from the specs when loading.
KeyFile to_keyfile(const PublicSetup& setup, const AlicePrivate& priv);
KeyFile to_keyfile(const PublicSetup& setup, const BobPrivate& priv);
KeyFile to_keyfile(const PublicToken& token);
KeyFile to_keyfile(const SessionKey& key);
KeyFile to_keyfile(const CipherMessage& message);

PublicSetup setup_from(const KeyFile& file);
PublicSetup private_setup_from(const KeyFile& file);
AlicePrivate alice_private_from(const KeyFile& file);
BobPrivate bob_private_from(const KeyFile& file);
PublicToken token_from(const KeyFile& file);
SessionKey session_key_from(const KeyFile& file);
CipherMessage ciphertext_from(const KeyFile& file);

std::vector<std::uint8_t> read_file(const std::filesystem::path& path);
// Writes to a sibling temp file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

}  // namespace tdp
