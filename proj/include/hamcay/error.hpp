#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hamcay {

enum class ErrorKind {
  invalid_group,       // GroupSpec invariants violated
  invalid_input,       // malformed element, word, or argument
  not_generating,      // generating set does not generate the group
  unsupported_order,   // |G| is not a product of four distinct odd primes
  oracle_timeout,      // search budget exhausted
  theorem_violation,   // a step the proof guarantees failed: implementation bug
  precondition,        // a lemma's hypothesis does not hold
  structure,           // normalized generator frame has the wrong shape
  side_condition,      // candidate-cycle parameters out of range
  role_swap_loop,      // the role swap did not reach an earlier subcase
  size_guard,          // instance exceeds a configured size limit
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace hamcay
