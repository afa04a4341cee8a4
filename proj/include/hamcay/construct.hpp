#pragma once

// Deterministic construction of hamiltonian cycles in Cayley graphs of order
// pqrs. Every returned certificate has been walked and checked.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hamcay/cayley.hpp"
#include "hamcay/certificate.hpp"
#include "hamcay/group.hpp"
#include "hamcay/search.hpp"

namespace hamcay {

enum class Subcase { case2, p_equals_3, not_distinct, ell_generic, p_equals_7 };

std::string_view to_string(Subcase s);

// A cycle in the quotient C_p written over the symbols a (1), b (2), c (3);
// negative entries are inverses.
struct CandidateCycle {
  std::string name;
  std::vector<std::int32_t> steps;
};

// Candidate quotient cycles in the order they are tried. Every returned word has
// length p and is checked to be a hamiltonian cycle of C_p with a = 1, b = k,
// c = ell. Throws Error(side_condition) when (p, k, ell) is not admissible.
std::vector<CandidateCycle> candidate_cycles(residue_t p, residue_t k, residue_t ell, Subcase subcase);

// A generator other than a, written as a^k * gamma (after inverting it if needed).
struct Companion {
  std::size_t index = 0;  // position in the generating set
  bool inverted = false;
  residue_t k = 0;        // in [1, (p-1)/2]
  GroupElement gamma;     // (0, x)
  CrtComponents gamma_components;
};

struct PrimeLabels {
  residue_t q = 0, r = 0, s = 0;
};

struct NormalizedGens {
  std::size_t a_index = 0;
  GroupElement a;
  std::vector<Companion> companions;  // sorted by k, so companions.front().k == ell
  residue_t k = 0;
  residue_t ell = 0;
  std::optional<PrimeLabels> labels;  // three generators only: |gamma_b| = qr, |gamma_c| = rs
};

// Greedy single pass in input order: drop an element whenever the rest still
// generates. Throws Error(not_generating) if gens does not generate.
std::vector<std::size_t> irredundant_subset(const GroupSpec& g, const std::vector<GroupElement>& gens);

// a is the first generator (or gens[a_index]). Throws Error(precondition) if a
// generator lies in the cyclic normal part, Error(structure) if three generators
// do not have commutator parts of orders qr and rs.
NormalizedGens normalize_generators(const GroupSpec& g, const std::vector<GroupElement>& gens);
NormalizedGens normalize_generators(const GroupSpec& g, const std::vector<GroupElement>& gens, std::size_t a_index);

// Which branch of the three-generator ladder handles a frame with exponents
// 1 <= ell <= k <= (p-1)/2.
enum class Case3Route { p_equals_3, not_distinct, relabel_not_distinct, ell_generic, p_equals_7, role_swap };

std::string_view to_string(Case3Route r);
Case3Route route_case3(residue_t p, residue_t k, residue_t ell);

// Exponents (k', ell') of the frame obtained by putting c in the role of a.
std::pair<residue_t, residue_t> swapped_exponents(residue_t p, residue_t k, residue_t ell);

struct ConstructOptions {
  SearchConfig oracle = delegated_config();
  std::ostream* trace = nullptr;  // human-readable proof path
};

// |A| = 2, A disjoint from G', |G'| = qrs.
HamCertificate construct_case2(const GroupSpec& g, const std::vector<GroupElement>& gens, const NormalizedGens& ng,
                               const ConstructOptions& opts = {});

// |A| = 3, A disjoint from G', |G'| = qrs. Throws Error(role_swap_loop) if the
// role swap does not reach an earlier subcase.
HamCertificate construct_case3(const GroupSpec& g, const std::vector<GroupElement>& gens, const NormalizedGens& ng,
                               const ConstructOptions& opts = {});

// Full dispatch. Throws Error(unsupported_order) unless |G| is a product of four
// distinct odd primes, Error(not_generating), Error(oracle_timeout) and
// Error(theorem_violation).
HamCertificate construct_hamiltonian(const GroupSpec& g, const std::vector<GroupElement>& gens,
                                     const ConstructOptions& opts = {});

}  // namespace hamcay
