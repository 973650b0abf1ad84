#include "tdp/analysis.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include <boost/math/distributions/chi_squared.hpp>

#include "tdp/commuting.hpp"
#include "tdp/errors.hpp"

namespace tdp {

namespace mp = boost::multiprecision;

std::size_t bit_length(const BigCount& n) {
  return n == 0 ? 0 : static_cast<std::size_t>(mp::msb(n)) + 1;
}

double log2_big(const BigCount& n) {
  if (n <= 0) throw std::domain_error("log2 of non-positive value");
  const std::size_t bits = bit_length(n);
  if (bits <= 53) return std::log2(n.convert_to<double>());
  // keep the top 53 bits and add the shift back
  const std::size_t shift = bits - 53;
  const BigCount top = n >> shift;
  return std::log2(top.convert_to<double>()) + static_cast<double>(shift);
}

KeyspaceReport keyspace_size(const FieldParams& params) {
  const std::uint64_t exp = 4ULL * params.dim();
  const BigCount minus_two = big_pow(params.prime() - 2, exp);
  const BigCount nonzero = big_pow(params.prime() - 1, exp);
  const double bits_minus_2 = params.prime() > 3 ? log2_big(minus_two) : 0.0;
  const double nonzero_bits = log2_big(nonzero);
  return KeyspaceReport{params,          minus_two,          nonzero,           bits_minus_2,
                        bits_minus_2 / 2.0, nonzero_bits, nonzero_bits / 2.0};
}

// --- pseudo-key search ---------------------------------------------------

std::uint64_t pseudo_key_search_space(const FieldParams& params) {
  const BigCount space = big_pow(params.prime() - 1, 2ULL * params.dim());
  if (space > kMaxSearchSpace) {
    throw ParamsTooLarge("search space (p-1)^(2d) = " + space.str() + " exceeds " +
                         std::to_string(kMaxSearchSpace));
  }
  return space.convert_to<std::uint64_t>();
}

namespace {

struct FamilyMember {
  Matrix m;
  Matrix m_inv;
};

// All basis^-1 D basis for D ranging over (p-1)^d invertible diagonals,
// eigenvalue 0 varying fastest.
std::vector<FamilyMember> enumerate_family(const Matrix& basis) {
  const FieldParams& params = basis.params();
  const std::uint32_t p = params.prime();
  const std::size_t d = params.dim();
  const Matrix basis_inv = inverse(basis);

  std::vector<Element> eig(d, 1);
  std::vector<FamilyMember> out;
  for (;;) {
    std::vector<Element> inv_eig(d);
    for (std::size_t i = 0; i < d; ++i) inv_eig[i] = fp::inv(eig[i], p);
    const DiagonalSpec spec(params, eig);
    const DiagonalSpec spec_inv(params, inv_eig);
    out.push_back({basis_inv * Matrix::diagonal(spec) * basis,
                   basis_inv * Matrix::diagonal(spec_inv) * basis});
    std::size_t i = 0;
    while (i < d && eig[i] == p - 1) eig[i++] = 1;
    if (i == d) break;
    ++eig[i];
  }
  return out;
}

Matrix probe_member(const Matrix& basis) {
  const FieldParams& params = basis.params();
  std::vector<Element> eig(params.dim());
  for (std::size_t i = 0; i < eig.size(); ++i) {
    eig[i] = static_cast<Element>(i % (params.prime() - 1)) + 1;
  }
  return commuting_from_basis(basis, DiagonalSpec(params, std::move(eig)));
}

// Calls visit(candidate) for every candidate passing the family tests; stops
// early when visit returns true.
template <typename Visit>
std::uint64_t search_candidates(const PublicSetup& setup, const PublicToken& alice_token, Visit&& visit) {
  if (alice_token.role != Role::alice) throw RoleMismatch("pseudo-key search needs alice's token");
  if (alice_token.params() != setup.params) throw ParamsMismatch("token and setup params differ");
  pseudo_key_search_space(setup.params);

  const auto x1_family = enumerate_family(setup.r_basis);
  const auto x2_family = enumerate_family(setup.s_basis);
  const CommutingFamily a2_family(setup.p_basis);
  const CommutingFamily a3_family(setup.q_basis);
  const Matrix a2_probe = probe_member(setup.p_basis);
  const Matrix a3_probe = probe_member(setup.q_basis);
  const Matrix& u = alice_token.t1;
  const Matrix& v = alice_token.t2;
  const Matrix& w = alice_token.t3;

  std::uint64_t examined = 0;
  for (const auto& x1 : x1_family) {
    const Matrix left = x1.m * v;
    for (const auto& x2 : x2_family) {
      ++examined;
      const Matrix a2 = left * x2.m_inv;
      if (!verify_commuting_pair(a2, a2_probe) || !a2_family.contains(a2)) continue;
      const Matrix a3 = x2.m * w;
      if (!verify_commuting_pair(a3, a3_probe) || !a3_family.contains(a3)) continue;
      if (visit(PseudoKey{u * x1.m_inv, a2, a3, x1.m, x2.m})) return examined;
    }
  }
  return examined;
}

}  // namespace

PseudoKeySearch brute_force_pseudo_key(const PublicSetup& setup, const PublicToken& alice_token,
                                       const PublicToken& bob_token, const SessionKey& true_key) {
  if (bob_token.role != Role::bob) throw RoleMismatch("pseudo-key check needs bob's token");
  const std::uint64_t space = pseudo_key_search_space(setup.params);
  std::optional<PseudoKey> found;
  const std::uint64_t examined = search_candidates(setup, alice_token, [&](PseudoKey cand) {
    const Matrix k = cand.a1 * bob_token.t1 * cand.a2 * bob_token.t2 * cand.a3 * bob_token.t3;
    if (k != true_key.k) return false;
    found = std::move(cand);
    return true;
  });
  if (!found) throw NotFound("no pseudo-key reproduces the session key");
  return PseudoKeySearch{std::move(*found), true, space, examined};
}

std::vector<PseudoKey> enumerate_pseudo_keys(const PublicSetup& setup, const PublicToken& alice_token) {
  std::vector<PseudoKey> out;
  search_candidates(setup, alice_token, [&](PseudoKey cand) {
    out.push_back(std::move(cand));
    return false;
  });
  return out;
}

// --- uniformity ----------------------------------------------------------

StatsReport uniformity_stats(std::uint32_t prime, std::span<const Element> values) {
  if (prime < 2) throw std::invalid_argument("prime must be >= 2");
  if (values.size() < 10ULL * prime) {
    throw TooFewSamples("need at least " + std::to_string(10ULL * prime) + " samples, got " +
                        std::to_string(values.size()));
  }
  std::vector<std::uint64_t> freq(prime, 0);
  for (Element v : values) {
    if (v >= prime) throw std::invalid_argument("sample not reduced mod p");
    ++freq[v];
  }
  const double expected = static_cast<double>(values.size()) / prime;
  double chi = 0.0;
  for (std::uint64_t f : freq) {
    const double diff = static_cast<double>(f) - expected;
    chi += diff * diff / expected;
  }
  const unsigned dof = prime - 1;
  const boost::math::chi_squared dist(dof);
  const double critical = boost::math::quantile(boost::math::complement(dist, kUniformitySignificance));
  return StatsReport{prime, values.size(), std::move(freq), chi, dof, kUniformitySignificance, critical,
                     chi <= critical};
}

StatsReport uniformity_stats(std::span<const Matrix> matrices) {
  if (matrices.empty()) throw TooFewSamples("no matrices");
  const std::uint32_t prime = matrices.front().prime();
  std::vector<Element> pooled;
  pooled.reserve(matrices.size() * matrices.front().entries().size());
  for (const auto& m : matrices) {
    if (m.prime() != prime) throw ParamsMismatch("matrices over different primes");
    pooled.insert(pooled.end(), m.entries().begin(), m.entries().end());
  }
  return uniformity_stats(prime, pooled);
}

LeakReport similarity_leak_check(const PlainBlock& m, const CipherBlock& c) {
  require_same_params(m.m, c.c);
  return LeakReport{m.m.trace() == c.c.trace(), determinant(m.m) == determinant(c.c),
                    characteristic_polynomial(m.m) == characteristic_polynomial(c.c)};
}

// --- session statistics --------------------------------------------------

double SessionSummary::agreement_rate() const {
  return sessions == 0 ? 0.0 : static_cast<double>(agreements) / static_cast<double>(sessions);
}

double SessionSummary::retry_rate() const {
  return draws.nonsingular_draws == 0
             ? 0.0
             : static_cast<double>(draws.singular_rejections) / static_cast<double>(draws.nonsingular_draws);
}

SessionSummary session_statistics(RandomSource& rs, const FieldParams& params, std::size_t n,
                                  bool collect_blocks) {
  if (n == 0) throw std::invalid_argument("need at least one session");
  const std::size_t chunk = bytes_per_block(params);
  SessionSummary summary;
  double total_seconds = 0.0;
  std::vector<std::uint8_t> plaintext(chunk);

  for (std::size_t i = 0; i < n; ++i) {
    const auto start = std::chrono::steady_clock::now();
    const PublicSetup setup = gen_setup(rs, params, &summary.draws);
    const AlicePrivate alice = alice_keygen(rs, setup, &summary.draws);
    const BobPrivate bob = bob_keygen(rs, setup, &summary.draws);
    const PublicToken to_bob = alice_token(alice);
    const PublicToken to_alice = bob_token(bob);
    const SessionKey k_alice = alice_shared(alice, to_alice);
    const SessionKey k_bob = bob_shared(bob, to_bob);

    rs.fill(plaintext);
    const PlainBlock msg = encode_block(plaintext, params);
    const CipherBlock cif = encrypt_block(k_bob, msg);
    const PlainBlock rec = decrypt_block(k_alice, cif);
    const bool roundtrip = decode_block(rec, chunk) == plaintext;
    total_seconds += std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    ++summary.sessions;
    if (k_alice.k == k_bob.k) ++summary.agreements;
    if (roundtrip) ++summary.roundtrips;
    if (similarity_leak_check(msg, cif).all()) ++summary.leak_confirmed;
    const ValidationReport report = validate_session(setup, alice, bob);
    if (!report.required_ok()) ++summary.required_failures;
    if (report.weak()) ++summary.weak_sessions;
    if (collect_blocks) summary.cipher_blocks.push_back(cif.c);
  }
  summary.mean_seconds = total_seconds / static_cast<double>(n);
  return summary;
}

}  // namespace tdp
