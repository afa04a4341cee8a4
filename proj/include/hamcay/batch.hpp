#pragma once

// Batch driver: deterministic generating-set samples per group and a worker
// pool running construct_hamiltonian on each (group, gens) instance.

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "hamcay/construct.hpp"
#include "hamcay/group.hpp"

namespace hamcay {

// Up to `count` irredundant generating sets of G. The first is {(1,0), (0,1)}
// when it is irredundant; the rest alternate between sizes 2 and 3 and are
// drawn from a generator seeded by `seed` and the group parameters.
std::vector<std::vector<GroupElement>> sample_generating_sets(const GroupSpec& g, std::size_t count,
                                                              std::uint64_t seed);

struct BatchRecord {
  GroupSpec group;
  std::vector<GroupElement> gens;
  std::string case_label;  // empty when no certificate was produced
  bool found = false;
  std::string error_kind;  // to_string(ErrorKind) on failure
  std::string error;
  std::chrono::milliseconds millis{0};
};

struct BatchOptions {
  std::size_t sets_per_group = 3;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  ConstructOptions construct;
};

// Records are delivered to `sink` under a mutex as workers finish; the returned
// vector is in instance order regardless of thread count.
std::vector<BatchRecord> run_batch(const std::vector<GroupSpec>& groups, const BatchOptions& opts,
                                   const std::function<void(const BatchRecord&)>& sink = {});

// case label -> count, with failures counted under "error:<kind>".
std::map<std::string, std::size_t> case_histogram(const std::vector<BatchRecord>& records);

}  // namespace hamcay
