#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tdp/cipher.hpp"
#include "tdp/poly.hpp"
#include "tdp/protocol.hpp"

namespace tdp {

// Brute-force size of the four secret diagonal specs, under two readings of
// which eigenvalues are allowed: (p-2)^(4d) and (p-1)^(4d).
struct KeyspaceReport {
  FieldParams params;
  BigCount count_p_minus_2;
  BigCount count_p_minus_1;
  double bits_p_minus_2;
  double quantum_bits_p_minus_2;
  double bits_p_minus_1;
  double quantum_bits_p_minus_1;
};

KeyspaceReport keyspace_size(const FieldParams& params);

double log2_big(const BigCount& n);
std::size_t bit_length(const BigCount& n);

// A decomposition of Alice's token that behaves like her private key.
struct PseudoKey {
  Matrix a1, a2, a3, x1, x2;
};

struct PseudoKeySearch {
  PseudoKey key;
  bool reproduces_session_key;
  std::uint64_t search_space;
  std::uint64_t candidates_examined;
};

// Largest (p-1)^(2d) the exhaustive search accepts.
inline constexpr std::uint64_t kMaxSearchSpace = 10'000'000;

std::uint64_t pseudo_key_search_space(const FieldParams& params);

// Enumerates x1' over the r-basis family and x2' over the s-basis family,
// solves a1' = u x1'^-1, a2' = x1' v x2'^-1, a3' = x2' w, and keeps candidates
// with a2' in the p-basis family and a3' in the q-basis family. Returns the
// first candidate that reproduces true_key from Bob's token.
// Throws ParamsTooLarge above kMaxSearchSpace, NotFound if nothing passes.
PseudoKeySearch brute_force_pseudo_key(const PublicSetup& setup, const PublicToken& alice_token,
                                       const PublicToken& bob_token, const SessionKey& true_key);

// Every candidate that passes the family tests, in enumeration order.
std::vector<PseudoKey> enumerate_pseudo_keys(const PublicSetup& setup, const PublicToken& alice_token);

// Pooled chi-square of matrix entries against uniform on [0, p-1].
struct StatsReport {
  std::uint32_t prime;
  std::uint64_t samples;
  std::vector<std::uint64_t> frequencies;
  double chi_square;
  unsigned degrees_of_freedom;
  double significance;
  double critical_value;
  bool pass;
};

inline constexpr double kUniformitySignificance = 0.001;

// Needs at least 10 * p values; throws TooFewSamples otherwise.
StatsReport uniformity_stats(std::uint32_t prime, std::span<const Element> values);
StatsReport uniformity_stats(std::span<const Matrix> matrices);

struct LeakReport {
  bool trace_equal;
  bool det_equal;
  bool charpoly_equal;

  [[nodiscard]] bool all() const noexcept { return trace_equal && det_equal && charpoly_equal; }
  [[nodiscard]] bool none() const noexcept { return !trace_equal && !det_equal && !charpoly_equal; }
};

LeakReport similarity_leak_check(const PlainBlock& m, const CipherBlock& c);

struct SessionSummary {
  std::size_t sessions = 0;
  std::size_t agreements = 0;
  std::size_t roundtrips = 0;
  std::size_t leak_confirmed = 0;   // blocks whose similarity invariants matched
  std::size_t weak_sessions = 0;    // validate_session flagged a pitfall
  std::size_t required_failures = 0;
  DrawCounters draws;
  double mean_seconds = 0.0;
  std::vector<Matrix> cipher_blocks;  // only when collect_blocks was set

  [[nodiscard]] double agreement_rate() const;
  // singular rejections per random nonsingular draw
  [[nodiscard]] double retry_rate() const;
};

// Full sessions: setup, both keygens, tokens, shared keys, then one random
// plaintext block encrypted under Bob's key and decrypted under Alice's.
SessionSummary session_statistics(RandomSource& rs, const FieldParams& params, std::size_t n,
                                  bool collect_blocks = false);

}  // namespace tdp
