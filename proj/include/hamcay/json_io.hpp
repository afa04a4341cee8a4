#pragma once

// JSON encodings shared by the CLI and the tests. Decoders throw
// Error(invalid_input) on malformed documents and Error(invalid_group) on bad groups.

#include <string>
#include <vector>

#include <json.hpp>

#include "hamcay/batch.hpp"
#include "hamcay/cayley.hpp"
#include "hamcay/certificate.hpp"
#include "hamcay/group.hpp"

namespace hamcay::json_io {

using nlohmann::json;

json group_to_json(const GroupSpec& g);
GroupSpec group_from_json(const json& j);

json element_to_json(GroupElement u);
GroupElement element_from_json(const json& j);

json gens_to_json(const std::vector<GroupElement>& gens);
std::vector<GroupElement> gens_from_json(const json& j);

json steps_to_json(const std::vector<std::int32_t>& steps);
std::vector<std::int32_t> steps_from_json(const json& j);

// {"group", "gens", "word", "case", "candidate", "voltage": {"x", "projections"} | null, "verified"}
json certificate_to_json(const HamCertificate& cert);

// Parses a certificate document. The word is not checked here.
struct ParsedCertificate {
  GroupSpec group;
  std::vector<GroupElement> gens;
  std::vector<std::int32_t> steps;
  std::string case_label;
};
ParsedCertificate certificate_from_json(const json& j);

// One line of the batch report: {"group", "gens", "case", "found", "millis"} plus
// "error" for failed instances.
json batch_record_to_json(const BatchRecord& r);

// Parses text, throwing Error(invalid_input) with the parser's message on failure.
json parse(const std::string& text, const std::string& what);

}  // namespace hamcay::json_io
