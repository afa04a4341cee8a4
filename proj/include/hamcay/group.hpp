#pragma once

// Groups of square-free order presented as a semidirect product C_n x|_alpha C_p.
//
// The element (i, x) stands for a^i g^x, where a generates the order-p
// quotient and g generates the cyclic normal part C_n. Multiplication is
//
//   (i, x) * (j, y) = (i + j mod p, x * alpha^j + y mod n),
//
// so conjugating the normal part by a scales it by a power of alpha.

#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

namespace hamcay {

using residue_t = std::uint64_t;

struct GroupElement {
  residue_t i = 0;  // exponent of a, mod p
  residue_t x = 0;  // exponent of g, mod n

  friend auto operator<=>(const GroupElement&, const GroupElement&) = default;
};

class GroupSpec {
 public:
  // Upper bound on n (and on p); keeps every product below 2^62.
  static constexpr residue_t kMaxModulus = residue_t{1} << 31;

  // Validates all invariants; throws Error(invalid_group) on violation.
  // For n == 1 the twist must be given as 1.
  GroupSpec(residue_t p, residue_t n, residue_t alpha);

  residue_t p() const { return p_; }
  residue_t n() const { return n_; }
  residue_t alpha() const { return alpha_; }
  residue_t order() const { return p_ * n_; }
  const std::vector<residue_t>& prime_factors_n() const { return primes_; }

  // alpha^j mod n.
  residue_t alpha_pow(residue_t j) const;

  bool contains(GroupElement u) const { return u.i < p_ && u.x < n_; }

  // Deterministic indexing i * n + x.
  std::uint64_t index(GroupElement u) const { return u.i * n_ + u.x; }
  GroupElement element_at(std::uint64_t idx) const { return {idx / n_, idx % n_}; }

  bool is_abelian() const { return alpha_ % n_ == 1 % n_; }

  friend bool operator==(const GroupSpec& a, const GroupSpec& b) {
    return a.p_ == b.p_ && a.n_ == b.n_ && a.alpha_ == b.alpha_;
  }

 private:
  residue_t p_;
  residue_t n_;
  residue_t alpha_;
  std::vector<residue_t> primes_;
  std::vector<residue_t> alpha_powers_;  // empty when p is too large to tabulate
};

// Residues of an element of C_n modulo each prime factor of n.
struct CrtComponents {
  std::map<residue_t, residue_t> residues;  // prime -> residue mod prime

  friend bool operator==(const CrtComponents&, const CrtComponents&) = default;
};

// A subgroup of the form {(i, x) : (i == 0 or spans_quotient) and x = 0 mod (n / cyclic_order)}.
// Covers the commutator subgroup and the centre of every GroupSpec.
struct SubgroupDescriptor {
  bool spans_quotient = false;
  residue_t cyclic_order = 1;  // order of the intersection with C_n

  bool contains(const GroupSpec& g, GroupElement u) const;
  residue_t order(const GroupSpec& g) const;
};

GroupElement identity();
GroupElement mul(const GroupSpec& g, GroupElement u, GroupElement v);
GroupElement inv(const GroupSpec& g, GroupElement u);
GroupElement pow(const GroupSpec& g, GroupElement u, std::int64_t e);
residue_t element_order(const GroupSpec& g, GroupElement u);

// Throws Error(invalid_input) when u is not an element of g.
void require_element(const GroupSpec& g, GroupElement u);

// Primes l | n on which alpha is nontrivial; G' = {(0, x) : x = 0 mod every other prime}.
std::vector<residue_t> commutator_subgroup(const GroupSpec& g);
SubgroupDescriptor commutator_descriptor(const GroupSpec& g);
residue_t commutator_order(const GroupSpec& g);
bool in_commutator(const GroupSpec& g, GroupElement u);

SubgroupDescriptor centre(const GroupSpec& g);

CrtComponents crt_decompose(const GroupSpec& g, residue_t x);
CrtComponents crt_decompose(std::span<const residue_t> primes, residue_t x);
residue_t crt_recombine(const CrtComponents& c);

// Primes l | n with x != 0 mod l.
std::vector<residue_t> support(const GroupSpec& g, residue_t x);

// Orbit BFS over element indices.
bool is_generating_set(const GroupSpec& g, std::span<const GroupElement> gens);

struct Quotient {
  GroupSpec group;
  residue_t kernel_order;

  GroupElement project(GroupElement u) const { return {u.i, u.x % group.n()}; }
  std::vector<GroupElement> project(std::span<const GroupElement> us) const;
};

// G / <b> for b in the cyclic normal part. Throws Error(invalid_input) if b.i != 0.
Quotient quotient_by_cyclic(const GroupSpec& g, GroupElement b);

}  // namespace hamcay
