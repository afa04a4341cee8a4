#pragma once

// Cayley-graph semantics: generator words as walks, the hamiltonian-cycle
// checker, and DOT export for small graphs.

#include <cstdint>
#include <string>
#include <vector>

#include "hamcay/group.hpp"

namespace hamcay {

// A walk from the identity. Step +j means right-multiplying by gens[j-1],
// step -j by its inverse.
struct GenWord {
  std::vector<GroupElement> gens;
  std::vector<std::int32_t> steps;

  std::size_t size() const { return steps.size(); }
};

// Largest group the checker will allocate a visited bitset for.
inline constexpr std::uint64_t kMaxVerifyOrder = std::uint64_t{1} << 27;

// Signed generator for one step. Throws Error(invalid_input) on a bad index.
GroupElement step_element(const GroupSpec& g, const std::vector<GroupElement>& gens, std::int32_t step);

// Throws Error(invalid_input) if a generator is not in g or a step is out of range.
void validate_word(const GroupSpec& g, const GenWord& w);

std::vector<GroupElement> eval_walk(const GroupSpec& g, GroupElement start, const GenWord& w);

// The word read backwards with every sign flipped.
GenWord reversed_inverse(const GenWord& w);

// Rotation by `shift` steps: the same cycle based at another vertex.
GenWord rotate(const GenWord& w, std::size_t shift);

// The first reason a word fails to be a hamiltonian cycle, if any.
struct CycleCheck {
  enum class Verdict { ok, length_mismatch, bad_step, revisit, wrong_endpoint };

  Verdict verdict = Verdict::ok;
  std::size_t position = 0;  // vertex index in the walk (revisit, wrong_endpoint) or step index (bad_step)
  GroupElement vertex{};     // offending vertex

  bool ok() const { return verdict == Verdict::ok; }
  std::string describe() const;
};

CycleCheck check_hamiltonian_cycle(const GroupSpec& g, const GenWord& w);
bool is_hamiltonian_cycle(const GroupSpec& g, const GenWord& w);

inline constexpr std::uint64_t kMaxDotOrder = 200;

// Undirected DOT graph over A u A^-1. Throws Error(size_guard) above kMaxDotOrder.
std::string export_dot(const GroupSpec& g, const std::vector<GroupElement>& gens);

}  // namespace hamcay
