#include "hamcay/group.hpp"

#include <numeric>
#include <sstream>

#include "hamcay/arith.hpp"
#include "hamcay/error.hpp"

namespace hamcay {

namespace {

constexpr residue_t kMaxPowerTable = residue_t{1} << 16;
constexpr std::uint64_t kMaxBfsOrder = std::uint64_t{1} << 27;

[[noreturn]] void invalid_group(residue_t p, residue_t n, residue_t alpha, const char* why) {
  std::ostringstream os;
  os << "invalid group (p=" << p << ", n=" << n << ", alpha=" << alpha << "): " << why;
  throw Error(ErrorKind::invalid_group, os.str());
}

}  // namespace

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_group: return "invalid_group";
    case ErrorKind::invalid_input: return "invalid_input";
    case ErrorKind::not_generating: return "not_generating";
    case ErrorKind::unsupported_order: return "unsupported_order";
    case ErrorKind::oracle_timeout: return "oracle_timeout";
    case ErrorKind::theorem_violation: return "theorem_violation";
    case ErrorKind::precondition: return "precondition";
    case ErrorKind::structure: return "structure";
    case ErrorKind::side_condition: return "side_condition";
    case ErrorKind::role_swap_loop: return "role_swap_loop";
    case ErrorKind::size_guard: return "size_guard";
  }
  return "unknown";
}

GroupSpec::GroupSpec(residue_t p, residue_t n, residue_t alpha) : p_(p), n_(n), alpha_(alpha) {
  if (p >= kMaxModulus || !arith::is_prime(p)) invalid_group(p, n, alpha, "p must be a prime below 2^31");
  if (n == 0 || n >= kMaxModulus) invalid_group(p, n, alpha, "n must lie in [1, 2^31)");
  if (!arith::is_square_free(n)) invalid_group(p, n, alpha, "n must be square-free");
  if (std::gcd(p, n) != 1) invalid_group(p, n, alpha, "gcd(p, n) must be 1");
  if (n == 1) {
    if (alpha != 1) invalid_group(p, n, alpha, "alpha must be 1 when n = 1");
  } else {
    if (alpha == 0 || alpha >= n) invalid_group(p, n, alpha, "alpha must lie in [1, n)");
    if (arith::powmod(alpha, p, n) != 1) invalid_group(p, n, alpha, "alpha^p must be 1 mod n");
  }
  primes_ = arith::prime_factors(n);
  if (p <= kMaxPowerTable) {
    alpha_powers_.resize(p);
    residue_t cur = 1 % n;
    for (residue_t j = 0; j < p; ++j) {
      alpha_powers_[j] = cur;
      cur = arith::mulmod(cur, alpha, n);
    }
  }
}

residue_t GroupSpec::alpha_pow(residue_t j) const {
  if (!alpha_powers_.empty()) return alpha_powers_[j % p_];
  return arith::powmod(alpha_, j % p_, n_);
}

bool SubgroupDescriptor::contains(const GroupSpec& g, GroupElement u) const {
  if (u.i != 0 && !spans_quotient) return false;
  return u.x % (g.n() / cyclic_order) == 0;
}

residue_t SubgroupDescriptor::order(const GroupSpec& g) const {
  return (spans_quotient ? g.p() : 1) * cyclic_order;
}

GroupElement identity() { return {0, 0}; }

GroupElement mul(const GroupSpec& g, GroupElement u, GroupElement v) {
  const residue_t i = (u.i + v.i) % g.p();
  const residue_t x = (arith::mulmod(u.x, g.alpha_pow(v.i), g.n()) + v.x) % g.n();
  return {i, x};
}

GroupElement inv(const GroupSpec& g, GroupElement u) {
  // (i, x)^-1 = (-i, -x * alpha^-i); alpha^-i = alpha^(p - i).
  const residue_t i = arith::negmod(u.i, g.p());
  const residue_t x = arith::negmod(arith::mulmod(u.x, g.alpha_pow(i), g.n()), g.n());
  return {i, x};
}

GroupElement pow(const GroupSpec& g, GroupElement u, std::int64_t e) {
  if (e < 0) {
    u = inv(g, u);
    e = -e;
  }
  GroupElement result = identity();
  while (e > 0) {
    if (e & 1) result = mul(g, result, u);
    u = mul(g, u, u);
    e >>= 1;
  }
  return result;
}

residue_t element_order(const GroupSpec& g, GroupElement u) {
  // (i, x)^m has normal part x * sum_{j<m} alpha^(ij). For i != 0 the p-th power is
  // (0, x * S) where S = p on primes fixed by alpha and S = 0 on the others.
  residue_t order = 1;
  for (residue_t l : g.prime_factors_n()) {
    if (u.x % l == 0) continue;
    if (u.i == 0 || g.alpha() % l == 1) order *= l;
  }
  return u.i == 0 ? order : order * g.p();
}

void require_element(const GroupSpec& g, GroupElement u) {
  if (!g.contains(u)) {
    std::ostringstream os;
    os << "element (" << u.i << "," << u.x << ") is not in the group (p=" << g.p() << ", n=" << g.n() << ")";
    throw Error(ErrorKind::invalid_input, os.str());
  }
}

std::vector<residue_t> commutator_subgroup(const GroupSpec& g) {
  std::vector<residue_t> mask;
  for (residue_t l : g.prime_factors_n()) {
    if (g.alpha() % l != 1) mask.push_back(l);
  }
  return mask;
}

SubgroupDescriptor commutator_descriptor(const GroupSpec& g) {
  SubgroupDescriptor d;
  for (residue_t l : commutator_subgroup(g)) d.cyclic_order *= l;
  return d;
}

residue_t commutator_order(const GroupSpec& g) { return commutator_descriptor(g).cyclic_order; }

bool in_commutator(const GroupSpec& g, GroupElement u) { return commutator_descriptor(g).contains(g, u); }

SubgroupDescriptor centre(const GroupSpec& g) {
  if (g.is_abelian()) return {true, g.n()};
  SubgroupDescriptor d;
  for (residue_t l : g.prime_factors_n()) {
    if (g.alpha() % l == 1) d.cyclic_order *= l;
  }
  return d;
}

CrtComponents crt_decompose(std::span<const residue_t> primes, residue_t x) {
  CrtComponents c;
  for (residue_t l : primes) c.residues.emplace(l, x % l);
  return c;
}

CrtComponents crt_decompose(const GroupSpec& g, residue_t x) { return crt_decompose(g.prime_factors_n(), x); }

residue_t crt_recombine(const CrtComponents& c) {
  residue_t modulus = 1;
  for (const auto& [l, r] : c.residues) modulus *= l;
  residue_t x = 0;
  for (const auto& [l, r] : c.residues) {
    const residue_t rest = modulus / l;
    const residue_t coeff = arith::mulmod(r % l, arith::invmod(rest % l, l), l);
    x = (x + arith::mulmod(coeff, rest, modulus)) % modulus;
  }
  return x;
}

std::vector<residue_t> support(const GroupSpec& g, residue_t x) {
  std::vector<residue_t> out;
  for (residue_t l : g.prime_factors_n()) {
    if (x % l != 0) out.push_back(l);
  }
  return out;
}

namespace {

bool closure_is_everything(const GroupSpec& g, std::span<const GroupElement> gens) {
  const std::uint64_t order = g.order();
  std::vector<bool> seen(order, false);
  std::vector<std::uint64_t> queue;
  queue.reserve(order);
  queue.push_back(0);
  seen[0] = true;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const GroupElement v = g.element_at(queue[head]);
    for (const auto& s : gens) {
      const std::uint64_t w = g.index(mul(g, v, s));
      if (!seen[w]) {
        seen[w] = true;
        queue.push_back(w);
      }
    }
  }
  return queue.size() == order;
}

}  // namespace

bool is_generating_set(const GroupSpec& g, std::span<const GroupElement> gens) {
  for (const auto& s : gens) require_element(g, s);
  if (g.prime_factors_n().size() <= 1) {
    if (g.order() > kMaxBfsOrder) throw Error(ErrorKind::size_guard, "group too large for closure BFS");
    return closure_is_everything(g, gens);
  }
  // |G| is square-free, so a subgroup is all of G iff it maps onto every
  // quotient of order p*l: its order is then divisible by p and by every l.
  for (residue_t l : g.prime_factors_n()) {
    const GroupSpec gl(g.p(), l, g.alpha() % l);
    std::vector<GroupElement> projected;
    projected.reserve(gens.size());
    for (const auto& s : gens) projected.push_back({s.i, s.x % l});
    if (gl.order() > kMaxBfsOrder) throw Error(ErrorKind::size_guard, "group too large for closure BFS");
    if (!closure_is_everything(gl, projected)) return false;
  }
  return true;
}

std::vector<GroupElement> Quotient::project(std::span<const GroupElement> us) const {
  std::vector<GroupElement> out;
  out.reserve(us.size());
  for (const auto& u : us) out.push_back(project(u));
  return out;
}

Quotient quotient_by_cyclic(const GroupSpec& g, GroupElement b) {
  require_element(g, b);
  if (b.i != 0) throw Error(ErrorKind::invalid_input, "quotient_by_cyclic: b must lie in the cyclic normal part");
  const residue_t n2 = std::gcd(b.x, g.n());  // gcd(0, n) = n
  const residue_t alpha2 = n2 == 1 ? 1 : g.alpha() % n2;
  return Quotient{GroupSpec(g.p(), n2, alpha2), g.n() / n2};
}

}  // namespace hamcay
