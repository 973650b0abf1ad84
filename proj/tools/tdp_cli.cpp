// tdp: key agreement, encryption and analysis over GL(d, F_p) from the shell.
//
// Exit codes: 0 ok, 1 I/O, 2 bad arguments or role mismatch, 3 malformed
// file, 4 parameter mismatch between files, 5 decryption range failure.

#include <chrono>
#include <cstdint>
#include <iomanip>
#include <iostream>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tdp/analysis.hpp"
#include "tdp/errors.hpp"
#include "tdp/keyfile.hpp"
#include "tdp/poly.hpp"

using namespace tdp;

namespace {

enum ExitCode : int {
  kOk = 0,
  kIoError = 1,
  kUsage = 2,
  kFormat = 3,
  kMismatch = 4,
  kRange = 5,
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::uint32_t prime = kDefaultPrime;
  std::uint32_t dim = kDefaultDim;
  std::uint32_t degree = kDefaultDim;
  std::uint64_t seed = 0;
  CLI::Option* seed_opt = nullptr;
  std::string format = "text";
  std::string in, out, key, peer, role;
  std::size_t sessions = 1000;
};

FieldParams make_params(std::uint32_t prime, std::uint32_t dim) {
  try {
    return FieldParams(prime, dim);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("invalid parameters: ") + e.what());
  }
}

std::uint64_t seed_of(const Options& o) {
  if (o.seed_opt != nullptr && o.seed_opt->count() > 0) return o.seed;
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) | rd();
}

void require_file_prime(const FieldParams& params) {
  if (params.prime() > 256) {
    throw UsageError("key files store one byte per entry; --prime must be at most 256");
  }
}

KeyFile load(const std::string& path) { return parse_keyfile(read_file(path)); }

void save(const std::string& path, const KeyFile& file) { write_file_atomic(path, serialize(file)); }

// 16 significant digits in the style of a printed table, exact below that.
std::string sci(const BigCount& n) {
  static const BigCount kExactLimit = big_pow(10, 16);
  if (n < kExactLimit) return n.str();
  std::string s = leading_digits(n, 16);
  const auto e = s.find('e');
  return s.substr(0, e) + "×10^" + s.substr(e + 1);
}

// Three significant digits, exact below that.
std::string approx(const BigCount& n) { return n < 1000 ? n.str() : rounded_digits(n, 3); }

std::string fixed(double v, int places) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(places) << v;
  return os.str();
}

std::string matrix_kv(const Matrix& m) {
  std::string s;
  for (Element e : m.entries()) {
    if (!s.empty()) s += ',';
    s += std::to_string(e);
  }
  return s;
}

std::string matrix_rows(const Matrix& m, const std::string& indent) {
  std::ostringstream os;
  const int width = static_cast<int>(std::to_string(m.prime() - 1).size());
  for (std::size_t r = 0; r < m.dim(); ++r) {
    os << (r ? "\n" : "") << indent;
    for (std::size_t c = 0; c < m.dim(); ++c) os << (c ? " " : "") << std::setw(width) << m(r, c);
  }
  return os.str();
}

// Collects lines for either human-readable text or key=value output.
class Report {
 public:
  explicit Report(const std::string& format) : kv_(format == "kv") {}

  void add(const std::string& key, const std::string& value, const std::string& text) {
    if (kv_) {
      out_ << key << '=' << value << '\n';
    } else if (!text.empty()) {
      out_ << text << '\n';
    }
  }
  void print() const { std::cout << out_.str(); }

 private:
  bool kv_;
  std::ostringstream out_;
};

// --- commands ---------------------------------------------------------------

int cmd_params(const Options& o) {
  const FieldParams params = make_params(o.prime, o.dim);
  const std::uint32_t p = params.prime(), d = params.dim();
  const KeyspaceReport ks = keyspace_size(params);
  Report r(o.format);
  r.add("prime", std::to_string(p), "field F_" + std::to_string(p) + ", " + std::to_string(d) + "x" +
                                        std::to_string(d) + " matrices");
  r.add("dim", std::to_string(d), "");
  r.add("total_matrices", total_matrices(p, d).str(), "total matrices p^(d^2) = " + sci(total_matrices(p, d)));
  r.add("gl_order", gl_order(p, d).str(), "|GL| = " + sci(gl_order(p, d)));
  r.add("singular", singular_count(p, d).str(), "singular = " + sci(singular_count(p, d)));
  r.add("nilpotent", nilpotent_count(p, d).str(), "nilpotent = " + sci(nilpotent_count(p, d)));
  r.add("irreducible", count_irreducible(d, p).str(),
        "monic irreducible of degree " + std::to_string(d) + " = " + sci(count_irreducible(d, p)));
  r.add("keyspace_p_minus_2", ks.count_p_minus_2.str(),
        "keyspace (p-2)^(4d) = " + approx(ks.count_p_minus_2) + " (2^" +
            fixed(ks.bits_p_minus_2, 1) + " classical, 2^" + fixed(ks.quantum_bits_p_minus_2, 1) +
            " quantum)");
  r.add("keyspace_p_minus_2_bits", fixed(ks.bits_p_minus_2, 4), "");
  r.add("keyspace_p_minus_2_quantum_bits", fixed(ks.quantum_bits_p_minus_2, 4), "");
  r.add("keyspace_p_minus_1", ks.count_p_minus_1.str(),
        "keyspace (p-1)^(4d) = " + approx(ks.count_p_minus_1) + " (2^" +
            fixed(ks.bits_p_minus_1, 1) + " classical, 2^" + fixed(ks.quantum_bits_p_minus_1, 1) +
            " quantum)");
  r.add("keyspace_p_minus_1_bits", fixed(ks.bits_p_minus_1, 4), "");
  r.add("keyspace_p_minus_1_quantum_bits", fixed(ks.quantum_bits_p_minus_1, 4), "");
  r.print();
  return kOk;
}

int cmd_setup(const Options& o) {
  const FieldParams params = make_params(o.prime, o.dim);
  require_file_prime(params);
  SplitMix64 rs(seed_of(o));
  save(o.out, to_keyfile(gen_setup(rs, params)));
  std::cout << "setup (" << params.to_string() << ") written to " << o.out << '\n';
  return kOk;
}

int cmd_keygen(const Options& o) {
  const PublicSetup setup = setup_from(load(o.in));
  SplitMix64 rs(seed_of(o));
  if (o.role == "alice") {
    save(o.out, to_keyfile(setup, alice_keygen(rs, setup)));
  } else {
    save(o.out, to_keyfile(setup, bob_keygen(rs, setup)));
  }
  std::cout << o.role << " private key written to " << o.out << '\n';
  return kOk;
}

int cmd_token(const Options& o) {
  const KeyFile file = load(o.key);
  const PublicToken token =
      file.role == Role::bob ? bob_token(bob_private_from(file)) : alice_token(alice_private_from(file));
  save(o.out, to_keyfile(token));
  std::cout << to_string(token.role) << " token written to " << o.out << '\n';
  return kOk;
}

int cmd_shared(const Options& o) {
  const KeyFile own = load(o.key);
  const PublicToken peer = token_from(load(o.peer));
  if (peer.params() != own.params) {
    throw ParamsMismatch("private key has " + own.params.to_string() + ", peer token has " +
                         peer.params().to_string());
  }
  const SessionKey k = own.role == Role::bob ? bob_shared(bob_private_from(own), peer)
                                             : alice_shared(alice_private_from(own), peer);
  save(o.out, to_keyfile(k));
  std::cout << "session key written to " << o.out << '\n';
  return kOk;
}

int cmd_encrypt(const Options& o) {
  const SessionKey k = session_key_from(load(o.key));
  const std::vector<std::uint8_t> plaintext = read_file(o.in);
  const CipherMessage cm = encrypt_message(k, plaintext);
  save(o.out, to_keyfile(cm));
  std::cout << plaintext.size() << " bytes in " << cm.blocks.size() << " blocks written to " << o.out << '\n';
  return kOk;
}

int cmd_decrypt(const Options& o) {
  const SessionKey k = session_key_from(load(o.key));
  const CipherMessage cm = ciphertext_from(load(o.in));
  const std::vector<std::uint8_t> plaintext = decrypt_message(k, cm);
  write_file_atomic(o.out, plaintext);
  std::cout << plaintext.size() << " bytes written to " << o.out << '\n';
  return kOk;
}

int cmd_stats(const Options& o) {
  const FieldParams params = make_params(o.prime, o.dim);
  if (o.sessions == 0) throw UsageError("--sessions must be at least 1");
  const std::uint64_t seed = seed_of(o);
  SplitMix64 rs(seed);
  const SessionSummary s = session_statistics(rs, params, o.sessions, true);

  Report r(o.format);
  r.add("sessions", std::to_string(s.sessions),
        "sessions " + std::to_string(s.sessions) + " (" + params.to_string() + ", seed " +
            std::to_string(seed) + ")");
  r.add("agreements", std::to_string(s.agreements),
        "agreement " + std::to_string(s.agreements) + "/" + std::to_string(s.sessions));
  r.add("roundtrips", std::to_string(s.roundtrips),
        "roundtrip " + std::to_string(s.roundtrips) + "/" + std::to_string(s.sessions));
  r.add("mean_session_seconds", fixed(s.mean_seconds, 6),
        "mean session time: " + fixed(s.mean_seconds * 1e3, 3) + " ms");
  r.add("singular_rejections", std::to_string(s.draws.singular_rejections),
        "singular retry rate: " + fixed(100 * s.retry_rate(), 3) + "% (" +
            std::to_string(s.draws.singular_rejections) + " rejections / " +
            std::to_string(s.draws.nonsingular_draws) + " draws)");
  r.add("nonsingular_draws", std::to_string(s.draws.nonsingular_draws), "");
  r.add("retry_rate", fixed(s.retry_rate(), 6), "");
  r.add("weak_sessions", std::to_string(s.weak_sessions), "weak sessions: " + std::to_string(s.weak_sessions));

  try {
    const StatsReport u = uniformity_stats(s.cipher_blocks);
    r.add("chi_square", fixed(u.chi_square, 3),
          "ciphertext uniformity: chi-square " + fixed(u.chi_square, 1) + " (df " +
              std::to_string(u.degrees_of_freedom) + ", critical " + fixed(u.critical_value, 1) + " at " +
              fixed(u.significance, 3) + "): " + (u.pass ? "pass" : "fail"));
    r.add("chi_square_critical", fixed(u.critical_value, 3), "");
    r.add("uniformity", u.pass ? "pass" : "fail", "");
  } catch (const TooFewSamples& e) {
    r.add("uniformity", "insufficient", std::string("ciphertext uniformity: ") + e.what());
  }
  const bool leak = s.leak_confirmed == s.sessions;
  r.add("similarity_preserved", leak ? "yes" : "no",
        std::string("trace/det/charpoly preserved: ") + (leak ? "yes" : "no"));
  r.print();
  return s.agreements == s.sessions ? kOk : kMismatch;
}

int cmd_attack(const Options& o) {
  const FieldParams params = make_params(o.prime, o.dim);
  std::uint64_t space = 0;
  try {
    space = pseudo_key_search_space(params);
  } catch (const ParamsTooLarge& e) {
    throw UsageError(std::string("attack limited to toy parameters: ") + e.what());
  }
  const std::uint64_t seed = seed_of(o);
  SplitMix64 rs(seed);
  const PublicSetup setup = gen_setup(rs, params);
  const AlicePrivate alice = alice_keygen(rs, setup);
  const BobPrivate bob = bob_keygen(rs, setup);
  const PublicToken u = alice_token(alice);
  const PublicToken p = bob_token(bob);
  const SessionKey k = bob_shared(bob, u);

  const auto start = std::chrono::steady_clock::now();
  const PseudoKeySearch found = brute_force_pseudo_key(setup, u, p, k);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const PseudoKey& pk = found.key;
  const bool same = pk.a1 == alice.a1 && pk.a2 == alice.a2 && pk.a3 == alice.a3 && pk.x1 == alice.x1 &&
                    pk.x2 == alice.x2;
  const bool reproduces = pk.a1 * p.t1 * pk.a2 * p.t2 * pk.a3 * p.t3 == k.k;

  Report r(o.format);
  r.add("seed", std::to_string(seed), "session " + params.to_string() + ", seed " + std::to_string(seed));
  r.add("search_space", std::to_string(space), "search space: " + std::to_string(space));
  r.add("candidates_examined", std::to_string(found.candidates_examined),
        "candidates examined: " + std::to_string(found.candidates_examined) + " (" + fixed(seconds, 3) + " s)");
  const std::pair<const char*, const Matrix*> parts[] = {
      {"a1", &pk.a1}, {"a2", &pk.a2}, {"a3", &pk.a3}, {"x1", &pk.x1}, {"x2", &pk.x2}};
  for (const auto& [name, m] : parts) {
    r.add(std::string(name) + "_prime", matrix_kv(*m), std::string(name) + "' =\n" + matrix_rows(*m, "  "));
  }
  r.add("equals_private_key", same ? "yes" : "no",
        std::string("pseudo-key equals alice's private key: ") + (same ? "yes" : "no"));
  r.add("reproduces_session_key", reproduces ? "yes" : "no",
        std::string("pseudo-key reproduces session key: ") + (reproduces ? "yes" : "no"));
  r.print();
  return kOk;
}

// Order of a scalar in F_p^*, for degree-one polynomials.
std::uint64_t scalar_order(Element a, std::uint32_t p) {
  std::uint64_t order = 1;
  for (Element x = a; x != 1; x = fp::mul(x, a, p)) ++order;
  return order;
}

int cmd_irreducible(const Options& o) {
  if (o.degree < 1) throw UsageError("--degree must be at least 1");
  make_params(o.prime, 2);  // validates the prime
  const std::uint32_t p = o.prime, d = o.degree;
  const std::uint64_t seed = seed_of(o);
  SplitMix64 rs(seed);
  const IrreducibleDraw draw = random_irreducible(rs, d, p);

  Report r(o.format);
  r.add("polynomial", draw.poly.to_string(), "polynomial: " + draw.poly.to_string());
  r.add("trials", std::to_string(draw.trials), "trials: " + std::to_string(draw.trials));

  const BigCount group = big_pow(p, d) - 1;
  std::optional<std::string> order;
  if (d == 1) {
    order = std::to_string(scalar_order(fp::neg(draw.poly.coeffs()[0], p), p));
  } else {
    const Matrix c = companion_matrix(draw.poly);
    r.add("companion", matrix_kv(c), "companion matrix:\n" + matrix_rows(c, "  "));
    if (group <= std::numeric_limits<std::uint64_t>::max()) {
      if (auto f = factor_u64(group.convert_to<std::uint64_t>())) order = element_order(c, *f).str();
    }
  }
  if (order) {
    const bool primitive = *order == group.str();
    r.add("order", *order, "order " + *order + ", primitive: " + (primitive ? "yes" : "no"));
    r.add("primitive", primitive ? "yes" : "no", "");
  } else {
    r.add("order", "unknown", "order: p^d - 1 could not be factored");
  }
  r.print();
  return kOk;
}

void add_params(CLI::App* sub, Options& o) {
  sub->add_option("--prime", o.prime, "field characteristic")->capture_default_str();
  sub->add_option("--dim", o.dim, "matrix dimension")->capture_default_str();
}

void add_seed(CLI::App* sub, Options& o) {
  sub->add_option("--seed", o.seed, "64-bit seed; random when omitted");
}

void add_format(CLI::App* sub, Options& o) {
  sub->add_option("--format", o.format, "report format")->check(CLI::IsMember({"text", "kv"}))->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Triple decomposition key agreement and conjugation cipher over GL(d, F_p)"};
  app.require_subcommand(1);
  Options o;

  auto* params = app.add_subcommand("params", "counting report for (p, d)");
  add_params(params, o);
  add_format(params, o);

  auto* setup = app.add_subcommand("setup", "draw the four public bases");
  add_params(setup, o);
  add_seed(setup, o);
  setup->add_option("--out", o.out)->required();

  auto* keygen = app.add_subcommand("keygen", "draw a private key");
  keygen->add_option("--in", o.in, "setup file")->required();
  keygen->add_option("--role", o.role)->required()->check(CLI::IsMember({"alice", "bob"}));
  keygen->add_option("--out", o.out)->required();
  add_seed(keygen, o);

  auto* token = app.add_subcommand("token", "public token from a private key");
  token->add_option("--key", o.key, "private key file")->required();
  token->add_option("--out", o.out)->required();

  auto* shared = app.add_subcommand("shared", "session key from own private key and the peer token");
  shared->add_option("--key", o.key, "private key file")->required();
  shared->add_option("--peer", o.peer, "peer token file")->required();
  shared->add_option("--out", o.out)->required();

  auto* encrypt = app.add_subcommand("encrypt", "encrypt a file under a session key");
  encrypt->add_option("--key", o.key, "session key file")->required();
  encrypt->add_option("--in", o.in, "plaintext file")->required();
  encrypt->add_option("--out", o.out)->required();

  auto* decrypt = app.add_subcommand("decrypt", "decrypt a ciphertext file");
  decrypt->add_option("--key", o.key, "session key file")->required();
  decrypt->add_option("--in", o.in, "ciphertext file")->required();
  decrypt->add_option("--out", o.out)->required();

  auto* stats = app.add_subcommand("stats", "run seeded sessions and report statistics");
  add_params(stats, o);
  add_seed(stats, o);
  add_format(stats, o);
  stats->add_option("--sessions", o.sessions)->capture_default_str();

  auto* attack = app.add_subcommand("attack", "brute-force a pseudo-key at toy parameters");
  add_params(attack, o);
  add_seed(attack, o);
  add_format(attack, o);

  auto* irreducible = app.add_subcommand("irreducible", "random monic irreducible polynomial");
  irreducible->add_option("--prime", o.prime)->capture_default_str();
  irreducible->add_option("--degree", o.degree)->capture_default_str();
  add_seed(irreducible, o);
  add_format(irreducible, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  // each subcommand has its own --seed; use the one that was parsed
  for (auto* sub : app.get_subcommands()) {
    if (auto* opt = sub->get_option_no_throw("--seed")) o.seed_opt = opt;
  }

  try {
    if (params->parsed()) return cmd_params(o);
    if (setup->parsed()) return cmd_setup(o);
    if (keygen->parsed()) return cmd_keygen(o);
    if (token->parsed()) return cmd_token(o);
    if (shared->parsed()) return cmd_shared(o);
    if (encrypt->parsed()) return cmd_encrypt(o);
    if (decrypt->parsed()) return cmd_decrypt(o);
    if (stats->parsed()) return cmd_stats(o);
    if (attack->parsed()) return cmd_attack(o);
    if (irreducible->parsed()) return cmd_irreducible(o);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const RoleMismatch& e) {
    std::cerr << "error: role mismatch: " << e.what() << '\n';
    return kUsage;
  } catch (const BlockTooLong& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const FormatError& e) {
    std::cerr << "error: malformed file: " << e.what() << '\n';
    return kFormat;
  } catch (const ParamsMismatch& e) {
    std::cerr << "error: parameter mismatch: " << e.what() << '\n';
    return kMismatch;
  } catch (const ValueOutOfRange& e) {
    std::cerr << "error: decryption failed (wrong key or corrupted ciphertext): " << e.what() << '\n';
    return kRange;
  } catch (const std::system_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
