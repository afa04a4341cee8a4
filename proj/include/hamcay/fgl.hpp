#pragma once

// Factor Group Lemma machinery.
//
// If N is a cyclic normal subgroup, (s_1, ..., s_m) is a hamiltonian cycle in
// Cay(G/N; A), and the voltage s_1 * ... * s_m generates N, then the word
// repeated |N| times is a hamiltonian cycle in Cay(G; A). Here N is always a
// subgroup of the cyclic normal part C_n, named by its order.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hamcay/cayley.hpp"
#include "hamcay/group.hpp"

namespace hamcay {

struct SearchConfig;

struct Voltage {
  GroupElement element;
  CrtComponents projections;  // element.x reduced modulo each prime of |N|
};

// Product of the signed generators of w, evaluated in g.
GroupElement voltage(const GroupSpec& g, const GenWord& w);

Voltage make_voltage(const GroupSpec& g, GroupElement v, std::span<const residue_t> n_primes);

// Generator (0, n / order) of the unique subgroup of C_n with the given order.
GroupElement cyclic_subgroup_generator(const GroupSpec& g, residue_t order);

// True iff v generates the subgroup of C_n whose order is the product of n_primes.
// Throws Error(invalid_input) if v is outside that subgroup.
bool generates_cyclic(const GroupSpec& g, GroupElement v, std::span<const residue_t> n_primes);

// Repeats quotient_cycle |N| times. Both hypotheses are checked and the result is
// re-verified; a failed hypothesis throws Error(precondition).
GenWord fgl_lift(const GroupSpec& g, const GenWord& quotient_cycle, residue_t n_order);

struct LiftOutcome {
  GenWord word;
  std::string strategy;           // "direct", "coset-snake" or "oracle"
  std::optional<Voltage> voltage;
  std::optional<GenWord> lifted_cycle;  // the cycle repeated by the final FGL step
  residue_t subgroup_order = 1;   // |N| of that step
};

// Coset-snake construction over <b>: for a divisor d of |b|, walk each coset of
// <b> in G/<b^d> along b^(d-1) or b^-(d-1), stepping between cosets with the
// quotient cycle, and pick the directions so the walk closes in G/<b^d> with a
// voltage that generates <b^d>. The result is FGL-lifted to G.
std::optional<LiftOutcome> coset_snake_lift(const GroupSpec& g, const std::vector<GroupElement>& gens,
                                            std::size_t b_index, const GenWord& quotient_cycle);

// Hamiltonian cycle in Cay(G; A) from one in Cay(G/<b>; A), for b in A with <b>
// normal and <b> meeting the centre trivially. Strategies in order: FGL over <b>,
// the coset snake, then the search oracle. Throws Error(precondition) on a failed
// hypothesis and Error(oracle_timeout) when every strategy is exhausted.
LiftOutcome normal_easy_lift(const GroupSpec& g, const std::vector<GroupElement>& gens, GroupElement b,
                             const GenWord& quotient_cycle, const SearchConfig& cfg);

}  // namespace hamcay
