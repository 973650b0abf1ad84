#include "tdp/protocol.hpp"

#include <stdexcept>

#include "tdp/commuting.hpp"
#include "tdp/errors.hpp"

namespace tdp {

std::string to_string(Role role) {
  switch (role) {
    case Role::none: return "none";
    case Role::alice: return "alice";
    case Role::bob: return "bob";
  }
  return "unknown";
}

void PublicSetup::check() const {
  for (const Matrix* m : {&p_basis, &q_basis, &r_basis, &s_basis}) {
    if (m->params() != params) throw ParamsMismatch("setup basis over " + m->params().to_string());
    if (determinant(*m) == 0) throw SingularMatrix("setup basis is singular");
  }
}

namespace {

Matrix draw_nonsingular(RandomSource& rs, const FieldParams& params, DrawCounters* counters) {
  auto draw = random_nonsingular(rs, params);
  if (counters != nullptr) {
    counters->nonsingular_draws += 1;
    counters->singular_rejections += draw.rejections;
  }
  return std::move(draw.matrix);
}

}  // namespace

PublicSetup gen_setup(RandomSource& rs, const FieldParams& params, DrawCounters* counters) {
  Matrix p = draw_nonsingular(rs, params, counters);
  Matrix q = draw_nonsingular(rs, params, counters);
  Matrix r = draw_nonsingular(rs, params, counters);
  Matrix s = draw_nonsingular(rs, params, counters);
  return PublicSetup{params, std::move(p), std::move(q), std::move(r), std::move(s)};
}

AlicePrivate AlicePrivate::derive(const PublicSetup& setup, DiagonalSpec d_a2, DiagonalSpec d_a3,
                                  DiagonalSpec d_x1, DiagonalSpec d_x2, Matrix a1) {
  if (a1.params() != setup.params) throw ParamsMismatch("a1 params differ from setup");
  Matrix a2 = commuting_from_basis(setup.p_basis, d_a2);
  Matrix a3 = commuting_from_basis(setup.q_basis, d_a3);
  Matrix x1 = commuting_from_basis(setup.r_basis, d_x1);
  Matrix x2 = commuting_from_basis(setup.s_basis, d_x2);
  return AlicePrivate{std::move(d_a2), std::move(d_a3), std::move(d_x1), std::move(d_x2),
                      std::move(a1),   std::move(a2),   std::move(a3),   std::move(x1),
                      std::move(x2)};
}

BobPrivate BobPrivate::derive(const PublicSetup& setup, DiagonalSpec d_b1, DiagonalSpec d_b2,
                              DiagonalSpec d_y1, DiagonalSpec d_y2, Matrix b3) {
  if (b3.params() != setup.params) throw ParamsMismatch("b3 params differ from setup");
  Matrix b1 = commuting_from_basis(setup.r_basis, d_b1);
  Matrix b2 = commuting_from_basis(setup.s_basis, d_b2);
  Matrix y1 = commuting_from_basis(setup.p_basis, d_y1);
  Matrix y2 = commuting_from_basis(setup.q_basis, d_y2);
  return BobPrivate{std::move(d_b1), std::move(d_b2), std::move(d_y1), std::move(d_y2),
                    std::move(b1),   std::move(b2),   std::move(b3),   std::move(y1),
                    std::move(y2)};
}

AlicePrivate alice_keygen(RandomSource& rs, const PublicSetup& setup, DrawCounters* counters) {
  const FieldParams& params = setup.params;
  for (;;) {
    DiagonalSpec d_a2 = random_diagonal(rs, params);
    DiagonalSpec d_a3 = random_diagonal(rs, params);
    DiagonalSpec d_x1 = random_diagonal(rs, params);
    DiagonalSpec d_x2 = random_diagonal(rs, params);
    Matrix a1 = draw_nonsingular(rs, params, counters);
    AlicePrivate priv = AlicePrivate::derive(setup, std::move(d_a2), std::move(d_a3),
                                             std::move(d_x1), std::move(d_x2), std::move(a1));
    // Products inverted later must be nonsingular; regenerate everything otherwise.
    if (determinant(priv.x1 * priv.x2) != 0 && determinant(priv.a1 * priv.a2 * priv.a3) != 0) {
      return priv;
    }
    if (counters != nullptr) ++counters->regenerations;
  }
}

BobPrivate bob_keygen(RandomSource& rs, const PublicSetup& setup, DrawCounters* counters) {
  const FieldParams& params = setup.params;
  for (;;) {
    DiagonalSpec d_b1 = random_diagonal(rs, params);
    DiagonalSpec d_b2 = random_diagonal(rs, params);
    DiagonalSpec d_y1 = random_diagonal(rs, params);
    DiagonalSpec d_y2 = random_diagonal(rs, params);
    Matrix b3 = draw_nonsingular(rs, params, counters);
    BobPrivate priv = BobPrivate::derive(setup, std::move(d_b1), std::move(d_b2),
                                         std::move(d_y1), std::move(d_y2), std::move(b3));
    if (determinant(priv.y1 * priv.y2) != 0 && determinant(priv.b1 * priv.b2 * priv.b3) != 0) {
      return priv;
    }
    if (counters != nullptr) ++counters->regenerations;
  }
}

PublicToken alice_token(const AlicePrivate& priv) {
  const Matrix x1_inv = inverse(priv.x1);
  const Matrix x2_inv = inverse(priv.x2);
  return PublicToken{Role::alice, priv.a1 * priv.x1, x1_inv * priv.a2 * priv.x2, x2_inv * priv.a3};
}

PublicToken bob_token(const BobPrivate& priv) {
  const Matrix y1_inv = inverse(priv.y1);
  const Matrix y2_inv = inverse(priv.y2);
  return PublicToken{Role::bob, priv.b1 * priv.y1, y1_inv * priv.b2 * priv.y2, y2_inv * priv.b3};
}

SessionKey alice_shared(const AlicePrivate& priv, const PublicToken& bob) {
  if (bob.role != Role::bob) throw RoleMismatch("alice needs bob's token, got " + to_string(bob.role));
  if (bob.params() != priv.params()) throw ParamsMismatch("token and private key params differ");
  return SessionKey{priv.a1 * bob.t1 * priv.a2 * bob.t2 * priv.a3 * bob.t3};
}

SessionKey bob_shared(const BobPrivate& priv, const PublicToken& alice) {
  if (alice.role != Role::alice) {
    throw RoleMismatch("bob needs alice's token, got " + to_string(alice.role));
  }
  if (alice.params() != priv.params()) throw ParamsMismatch("token and private key params differ");
  return SessionKey{alice.t1 * priv.b1 * alice.t2 * priv.b2 * alice.t3 * priv.b3};
}

bool ValidationReport::required_ok() const {
  for (const auto& c : required) {
    if (!c.commutes) return false;
  }
  return true;
}

bool ValidationReport::weak() const {
  for (const auto& c : pitfalls) {
    if (c.commutes) return true;
  }
  return false;
}

const CommutatorCheck& ValidationReport::pitfall(const std::string& name) const {
  for (const auto& c : pitfalls) {
    if (c.name == name) return c;
  }
  throw std::out_of_range("no pitfall check named " + name);
}

namespace {

CommutatorCheck check(std::string name, const Matrix& a, const Matrix& b) {
  Matrix c = commutator(a, b);
  const bool commutes = c.is_identity();
  return CommutatorCheck{std::move(name), commutes, std::move(c)};
}

}  // namespace

ValidationReport validate_session(const PublicSetup& setup, const AlicePrivate& a, const BobPrivate& b) {
  if (a.params() != setup.params || b.params() != setup.params) {
    throw ParamsMismatch("private keys and setup params differ");
  }
  ValidationReport report;
  report.required.push_back(check("[a2,y1]", a.a2, b.y1));
  report.required.push_back(check("[a3,y2]", a.a3, b.y2));
  report.required.push_back(check("[b1,x1]", b.b1, a.x1));
  report.required.push_back(check("[b2,x2]", b.b2, a.x2));

  report.pitfalls.push_back(check("[x1,y1]", a.x1, b.y1));
  report.pitfalls.push_back(check("[x2,y1]", a.x2, b.y1));
  report.pitfalls.push_back(check("[x2,y2]", a.x2, b.y2));
  report.pitfalls.push_back(check("[a2,b1]", a.a2, b.b1));
  report.pitfalls.push_back(check("[a3,b2]", a.a3, b.b2));
  report.pitfalls.push_back(check("[a3,b1]", a.a3, b.b1));
  report.pitfalls.push_back(check("[x2,b1]", a.x2, b.b1));
  report.pitfalls.push_back(check("[a3,y1]", a.a3, b.y1));

  auto c = [&](const char* n) { return report.pitfall(n).commutes; };
  report.pitfall_a = c("[x1,y1]") && c("[x2,y1]") && c("[x2,y2]");
  report.pitfall_b = c("[a2,b1]") && c("[a3,b2]") && c("[a3,b1]");
  report.pitfall_c = (c("[a2,b1]") && c("[x2,b1]")) || (c("[a3,b2]") && c("[a3,y1]"));
  return report;
}

}  // namespace tdp
