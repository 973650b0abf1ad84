#include "tdp/keyfile.hpp"

#include <cstring>
#include <fstream>
#include <iterator>
#include <stdexcept>
#include <string>
#include <system_error>

#include "tdp/errors.hpp"

namespace tdp {

namespace {

constexpr char kMagic[4] = {'T', 'D', 'P', '1'};

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::span<const std::uint8_t> take(std::size_t n) {
    if (bytes_.size() - pos_ < n) throw FormatError("file truncated");
    auto s = bytes_.subspan(pos_, n);
    pos_ += n;
    return s;
  }
  std::uint8_t u8() { return take(1)[0]; }
  std::uint64_t uint(std::size_t n) {
    auto s = take(n);
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < n; ++i) v |= static_cast<std::uint64_t>(s[i]) << (8 * i);
    return v;
  }
  [[nodiscard]] std::size_t remaining() const { return bytes_.size() - pos_; }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

void require(bool cond, const std::string& what) {
  if (!cond) throw FormatError(what);
}

}  // namespace

std::vector<std::uint8_t> serialize(const KeyFile& file) {
  const FieldParams& params = file.params;
  if (params.prime() > 256) {
    throw std::invalid_argument("key files store one byte per entry; prime must be <= 256");
  }
  if (params.dim() > 255) throw std::invalid_argument("dimension does not fit the dim byte");

  std::vector<std::uint8_t> out(std::begin(kMagic), std::end(kMagic));
  out.push_back(static_cast<std::uint8_t>(file.type));
  put_u16(out, static_cast<std::uint16_t>(params.prime()));
  out.push_back(static_cast<std::uint8_t>(params.dim()));
  out.push_back(static_cast<std::uint8_t>(file.role));
  put_u32(out, static_cast<std::uint32_t>(file.matrices.size()));

  if (file.type == RecordType::private_key) {
    if (file.specs.size() > 255) throw std::invalid_argument("too many diagonal specs");
    out.push_back(static_cast<std::uint8_t>(file.specs.size()));
    for (const auto& spec : file.specs) {
      if (spec.params() != params) throw ParamsMismatch("spec params differ from file params");
      for (Element e : spec.eigenvalues()) out.push_back(static_cast<std::uint8_t>(e));
    }
  }
  if (file.type == RecordType::ciphertext) put_u64(out, file.plaintext_length);

  for (const auto& m : file.matrices) {
    if (m.params() != params) throw ParamsMismatch("matrix params differ from file params");
    for (Element e : m.entries()) out.push_back(static_cast<std::uint8_t>(e));
  }
  return out;
}

KeyFile parse_keyfile(std::span<const std::uint8_t> bytes) {
  Reader in(bytes);
  auto magic = in.take(4);
  require(std::memcmp(magic.data(), kMagic, 4) == 0, "bad magic");

  const std::uint8_t type = in.u8();
  require(type >= 1 && type <= 5, "unknown record type " + std::to_string(type));
  const auto prime = static_cast<std::uint32_t>(in.uint(2));
  const std::uint8_t dim = in.u8();
  const std::uint8_t role = in.u8();
  require(role <= 2, "unknown role " + std::to_string(role));
  const auto count = static_cast<std::uint32_t>(in.uint(4));

  require(prime <= 256, "prime " + std::to_string(prime) + " does not fit one byte per entry");
  std::optional<FieldParams> params;
  try {
    params.emplace(prime, dim);
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("invalid parameters: ") + e.what());
  }

  KeyFile file{static_cast<RecordType>(type), *params, static_cast<Role>(role), {}, 0, {}};
  const std::size_t d = dim;

  if (file.type == RecordType::private_key) {
    const std::uint8_t nspecs = in.u8();
    for (std::uint8_t s = 0; s < nspecs; ++s) {
      auto raw = in.take(d);
      std::vector<Element> eig(raw.begin(), raw.end());
      for (Element e : eig) require(e >= 1 && e < prime, "eigenvalue out of range");
      file.specs.emplace_back(*params, std::move(eig));
    }
  }
  if (file.type == RecordType::ciphertext) file.plaintext_length = in.uint(8);

  require(in.remaining() == static_cast<std::uint64_t>(count) * d * d,
          "matrix payload length does not match header");
  for (std::uint32_t i = 0; i < count; ++i) {
    auto raw = in.take(d * d);
    std::vector<Element> entries(raw.begin(), raw.end());
    for (Element e : entries) require(e < prime, "matrix entry not reduced mod p");
    file.matrices.emplace_back(*params, std::move(entries));
  }
  return file;
}

// --- typed conversions ------------------------------------------------------

KeyFile to_keyfile(const PublicSetup& setup) {
  return KeyFile{RecordType::setup, setup.params, Role::none, {}, 0,
                 {setup.p_basis, setup.q_basis, setup.r_basis, setup.s_basis}};
}

KeyFile to_keyfile(const PublicSetup& setup, const AlicePrivate& priv) {
  return KeyFile{RecordType::private_key,
                 setup.params,
                 Role::alice,
                 {priv.d_a2, priv.d_a3, priv.d_x1, priv.d_x2},
                 0,
                 {setup.p_basis, setup.q_basis, setup.r_basis, setup.s_basis, priv.a1, priv.a2, priv.a3,
                  priv.x1, priv.x2}};
}

KeyFile to_keyfile(const PublicSetup& setup, const BobPrivate& priv) {
  return KeyFile{RecordType::private_key,
                 setup.params,
                 Role::bob,
                 {priv.d_b1, priv.d_b2, priv.d_y1, priv.d_y2},
                 0,
                 {setup.p_basis, setup.q_basis, setup.r_basis, setup.s_basis, priv.b1, priv.b2, priv.b3,
                  priv.y1, priv.y2}};
}

KeyFile to_keyfile(const PublicToken& token) {
  return KeyFile{RecordType::token, token.params(), token.role, {}, 0, {token.t1, token.t2, token.t3}};
}

KeyFile to_keyfile(const SessionKey& key) {
  return KeyFile{RecordType::session_key, key.k.params(), Role::none, {}, 0, {key.k}};
}

KeyFile to_keyfile(const CipherMessage& message) {
  KeyFile file{RecordType::ciphertext, message.params, Role::none, {}, message.plaintext_length, {}};
  for (const auto& b : message.blocks) file.matrices.push_back(b.c);
  return file;
}

namespace {

void expect(const KeyFile& file, RecordType type, std::size_t matrices, const char* what) {
  require(file.type == type, std::string("expected a ") + what + " record");
  require(file.matrices.size() == matrices,
          std::string(what) + " record must hold " + std::to_string(matrices) + " matrices");
}

PublicSetup bases_from(const KeyFile& file) {
  PublicSetup setup{file.params, file.matrices[0], file.matrices[1], file.matrices[2], file.matrices[3]};
  try {
    setup.check();
  } catch (const SingularMatrix&) {
    throw FormatError("setup basis is singular");
  }
  return setup;
}

}  // namespace

PublicSetup setup_from(const KeyFile& file) {
  expect(file, RecordType::setup, 4, "setup");
  return bases_from(file);
}

PublicSetup private_setup_from(const KeyFile& file) {
  expect(file, RecordType::private_key, 9, "private key");
  return bases_from(file);
}

AlicePrivate alice_private_from(const KeyFile& file) {
  expect(file, RecordType::private_key, 9, "private key");
  require(file.role == Role::alice, "private key does not belong to alice");
  require(file.specs.size() == 4, "private key must hold 4 diagonal specs");
  const PublicSetup setup = bases_from(file);
  require(determinant(file.matrices[4]) != 0, "a1 is singular");
  AlicePrivate priv = AlicePrivate::derive(setup, file.specs[0], file.specs[1], file.specs[2],
                                           file.specs[3], file.matrices[4]);
  require(priv.a2 == file.matrices[5] && priv.a3 == file.matrices[6] && priv.x1 == file.matrices[7] &&
              priv.x2 == file.matrices[8],
          "derived matrices do not match the stored diagonal specs");
  return priv;
}

BobPrivate bob_private_from(const KeyFile& file) {
  expect(file, RecordType::private_key, 9, "private key");
  require(file.role == Role::bob, "private key does not belong to bob");
  require(file.specs.size() == 4, "private key must hold 4 diagonal specs");
  const PublicSetup setup = bases_from(file);
  require(determinant(file.matrices[6]) != 0, "b3 is singular");
  BobPrivate priv = BobPrivate::derive(setup, file.specs[0], file.specs[1], file.specs[2],
                                       file.specs[3], file.matrices[6]);
  require(priv.b1 == file.matrices[4] && priv.b2 == file.matrices[5] && priv.y1 == file.matrices[7] &&
              priv.y2 == file.matrices[8],
          "derived matrices do not match the stored diagonal specs");
  return priv;
}

PublicToken token_from(const KeyFile& file) {
  expect(file, RecordType::token, 3, "token");
  require(file.role == Role::alice || file.role == Role::bob, "token must name alice or bob");
  return PublicToken{file.role, file.matrices[0], file.matrices[1], file.matrices[2]};
}

SessionKey session_key_from(const KeyFile& file) {
  expect(file, RecordType::session_key, 1, "session key");
  require(determinant(file.matrices[0]) != 0, "session key is singular");
  return SessionKey{file.matrices[0]};
}

CipherMessage ciphertext_from(const KeyFile& file) {
  const std::size_t chunk = bytes_per_block(file.params);
  const std::uint64_t blocks = chunk == 0 ? 0 : (file.plaintext_length + chunk - 1) / chunk;
  expect(file, RecordType::ciphertext, static_cast<std::size_t>(blocks), "ciphertext");
  CipherMessage cm{file.params, file.plaintext_length, {}};
  for (const auto& m : file.matrices) cm.blocks.push_back(CipherBlock{m});
  return cm;
}

// --- file io -------------------------------------------------------------------

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::system_error(errno, std::generic_category(), "cannot open " + path.string());
  return std::vector<std::uint8_t>(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_file_atomic(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::system_error(errno, std::generic_category(), "cannot write " + tmp.string());
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw std::system_error(errno, std::generic_category(), "write failed for " + tmp.string());
    }
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace tdp
