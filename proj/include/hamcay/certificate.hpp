#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "hamcay/cayley.hpp"
#include "hamcay/fgl.hpp"
#include "hamcay/group.hpp"

namespace hamcay {

namespace case_label {
inline constexpr std::string_view kCase1 = "case1";
inline constexpr std::string_view kCase2 = "case2";
inline constexpr std::string_view kPEquals3 = "3.1";
inline constexpr std::string_view kNotDistinct = "3.2";
inline constexpr std::string_view kEllGeneric = "3.3";
inline constexpr std::string_view kPEquals7 = "3.4";
inline constexpr std::string_view kRoleSwap = "3.5-swap";
inline constexpr std::string_view kOracle = "oracle";
}  // namespace case_label

struct VoltageRecord {
  GenWord quotient_cycle;     // the cycle whose repetition is the final word
  residue_t subgroup_order;   // |N| for that lift
  Voltage voltage;
};

struct HamCertificate {
  GroupSpec group;
  GenWord word;  // word.gens is the input generating set
  std::string case_label;
  std::string candidate;  // name of the winning candidate cycle, empty for search results
  std::optional<VoltageRecord> voltage_record;
};

}  // namespace hamcay
