#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "tdp/matrix.hpp"
#include "tdp/random.hpp"

namespace tdp {

enum class Role : std::uint8_t { none = 0, alice = 1, bob = 2 };

std::string to_string(Role role);

// Four public eigenvector bases.
//   p_basis: Alice's a2, Bob's y1
//   q_basis: Alice's a3, Bob's y2
//   r_basis: Alice's x1, Bob's b1
//   s_basis: Alice's x2, Bob's b2
// a1 and b3 range over all of GL(d, F_p).
struct PublicSetup {
  FieldParams params;
  Matrix p_basis;
  Matrix q_basis;
  Matrix r_basis;
  Matrix s_basis;

  // Throws SingularMatrix / ParamsMismatch if the bases are unusable.
  void check() const;
};

// Draw tallies that statistics reporting needs; keygen and setup accumulate
// into it when given one.
struct DrawCounters {
  std::size_t nonsingular_draws = 0;
  std::size_t singular_rejections = 0;
  std::size_t regenerations = 0;
};

struct AlicePrivate {
  DiagonalSpec d_a2, d_a3, d_x1, d_x2;
  Matrix a1, a2, a3, x1, x2;

  // Recomputes a2, a3, x1, x2 from the specs and the setup bases.
  static AlicePrivate derive(const PublicSetup& setup, DiagonalSpec d_a2, DiagonalSpec d_a3,
                             DiagonalSpec d_x1, DiagonalSpec d_x2, Matrix a1);
  [[nodiscard]] const FieldParams& params() const noexcept { return a1.params(); }
};

struct BobPrivate {
  DiagonalSpec d_b1, d_b2, d_y1, d_y2;
  Matrix b1, b2, b3, y1, y2;

  static BobPrivate derive(const PublicSetup& setup, DiagonalSpec d_b1, DiagonalSpec d_b2,
                           DiagonalSpec d_y1, DiagonalSpec d_y2, Matrix b3);
  [[nodiscard]] const FieldParams& params() const noexcept { return b3.params(); }
};

// (u, v, w) for Alice, (p, q, r) for Bob.
struct PublicToken {
  Role role;
  Matrix t1, t2, t3;

  [[nodiscard]] const FieldParams& params() const noexcept { return t1.params(); }
};

struct SessionKey {
  Matrix k;
};

PublicSetup gen_setup(RandomSource& rs, const FieldParams& params, DrawCounters* counters = nullptr);

// Draw order: d_a2, d_a3, d_x1, d_x2, then a1.
AlicePrivate alice_keygen(RandomSource& rs, const PublicSetup& setup, DrawCounters* counters = nullptr);
// Draw order: d_b1, d_b2, d_y1, d_y2, then b3.
BobPrivate bob_keygen(RandomSource& rs, const PublicSetup& setup, DrawCounters* counters = nullptr);

// u = a1 x1, v = x1^-1 a2 x2, w = x2^-1 a3
PublicToken alice_token(const AlicePrivate& priv);
// p = b1 y1, q = y1^-1 b2 y2, r = y2^-1 b3
PublicToken bob_token(const BobPrivate& priv);

// K = a1 p a2 q a3 r
SessionKey alice_shared(const AlicePrivate& priv, const PublicToken& bob);
// K = u b1 v b2 w b3
SessionKey bob_shared(const BobPrivate& priv, const PublicToken& alice);

struct CommutatorCheck {
  std::string name;  // e.g. "[a2,y1]"
  bool commutes;
  Matrix commutator;
};

struct ValidationReport {
  // Must all commute for the key agreement to work.
  std::vector<CommutatorCheck> required;
  // Must all fail to commute; any commuting pair marks the session weak.
  std::vector<CommutatorCheck> pitfalls;

  bool pitfall_a = false;  // x1~y1, x2~y1 and x2~y2: key computable from public data
  bool pitfall_b = false;  // a2~b1, a3~b2 and a3~b1: key computable from public data
  bool pitfall_c = false;  // (a2~b1 and x2~b1) or (a3~b2 and a3~y1): two-factor decomposition

  [[nodiscard]] bool required_ok() const;
  [[nodiscard]] bool weak() const;
  [[nodiscard]] const CommutatorCheck& pitfall(const std::string& name) const;
};

ValidationReport validate_session(const PublicSetup& setup, const AlicePrivate& a, const BobPrivate& b);

}  // namespace tdp
