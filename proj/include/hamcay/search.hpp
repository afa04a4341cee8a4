#pragma once

// Search oracle: pruned backtracking for hamiltonian cycles in Cayley graphs,
// a quotient-lifting front end for large groups, the group-instance factory,
// and cross-validation of constructive certificates.

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hamcay/cayley.hpp"
#include "hamcay/certificate.hpp"
#include "hamcay/fgl.hpp"
#include "hamcay/group.hpp"

namespace hamcay {

enum class Heuristic { degree_order, input_order };

struct SearchConfig {
  static constexpr std::uint64_t kMaxVerticesLimit = std::uint64_t{1} << 20;

  std::chrono::milliseconds timeout{10000};
  std::uint64_t max_vertices = kMaxVerticesLimit;
  Heuristic heuristic = Heuristic::degree_order;
  // 0 keeps generator order for tie-breaking; any other value shuffles it deterministically.
  std::uint64_t seed = 0;
  // Backtracking nodes before giving up with status timeout; 0 means no limit.
  std::uint64_t max_nodes = 0;

  // Throws Error(invalid_input) unless timeout > 0 and max_vertices <= 2^20.
  void validate() const;
};

// Budget used when a construction delegates to the oracle.
SearchConfig delegated_config();

enum class SearchStatus { found, not_found, timeout };

std::string_view to_string(SearchStatus s);

struct SearchResult {
  SearchStatus status = SearchStatus::not_found;
  std::optional<GenWord> word;
  std::uint64_t nodes = 0;
  std::chrono::milliseconds elapsed{0};
};

// Backtracking from the identity with the first step fixed to the first
// non-identity generator. A branch is cut as soon as an unvisited vertex keeps
// fewer than two usable neighbours. Throws Error(not_generating) if A does not
// generate and Error(size_guard) above cfg.max_vertices.
SearchResult brute_force_ham(const GroupSpec& g, const std::vector<GroupElement>& gens, const SearchConfig& cfg);

// Same search, reporting every cycle to `visit` until it returns true or
// max_cycles cycles have been seen. status is found iff `visit` accepted one.
using CycleVisitor = std::function<bool(const GenWord&)>;
SearchResult enumerate_ham_cycles(const GroupSpec& g, const std::vector<GroupElement>& gens, const SearchConfig& cfg,
                                  const CycleVisitor& visit, std::uint64_t max_cycles);

struct OracleResult {
  SearchStatus status = SearchStatus::not_found;
  std::optional<GenWord> word;
  std::optional<VoltageRecord> voltage_record;  // set when the cycle was lifted from a quotient
  std::chrono::milliseconds elapsed{0};
};

// Oracle for delegated cases. For each subgroup N of C_n, smallest quotient
// first, enumerates hamiltonian cycles of Cay(G/N; A) and FGL-lifts the first
// whose voltage generates N; finishes with brute_force_ham on G itself.
OracleResult find_hamiltonian_cycle(const GroupSpec& g, const std::vector<GroupElement>& gens,
                                    const SearchConfig& cfg);

// All GroupSpecs of order p*q*r*s: each prime in turn as the quotient order,
// twists up to alpha -> alpha^t, each class represented by its lexicographically
// smallest CRT vector. Throws Error(invalid_input) unless the primes are distinct and odd.
std::vector<GroupSpec> enumerate_groups(std::span<const residue_t> primes);

struct CrossValidation {
  bool certificate_ok = false;
  std::string certificate_diagnostic;
  bool search_ran = false;  // false when |G| exceeds the cross-validation size guard
  SearchStatus search_status = SearchStatus::not_found;
  bool search_ok = false;
  std::chrono::milliseconds certificate_millis{0};
  std::chrono::milliseconds search_millis{0};
};

inline constexpr std::uint64_t kCrossValidateMaxOrder = 5000;

// Re-verifies the certificate and, for |G| <= 5000, runs brute_force_ham and
// verifies its answer too.
CrossValidation cross_validate(const GroupSpec& g, const std::vector<GroupElement>& gens,
                               const HamCertificate& cert, const SearchConfig& cfg);

}  // namespace hamcay
