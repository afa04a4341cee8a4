#include "hamcay/json_io.hpp"

#include <limits>

#include "hamcay/error.hpp"

namespace hamcay::json_io {

namespace {

[[noreturn]] void malformed(const std::string& what) { throw Error(ErrorKind::invalid_input, what); }

const json& field(const json& j, const char* key, const char* what) {
  if (!j.is_object()) malformed(std::string(what) + " must be a JSON object");
  const auto it = j.find(key);
  if (it == j.end()) malformed(std::string(what) + " is missing \"" + key + "\"");
  return *it;
}

residue_t non_negative(const json& j, const char* what) {
  if (!j.is_number_integer()) malformed(std::string(what) + " must be an integer");
  if (j.is_number_unsigned()) return j.get<residue_t>();
  const auto v = j.get<std::int64_t>();
  if (v < 0) malformed(std::string(what) + " must be non-negative");
  return static_cast<residue_t>(v);
}

}  // namespace

json group_to_json(const GroupSpec& g) { return json{{"p", g.p()}, {"n", g.n()}, {"alpha", g.alpha()}}; }

GroupSpec group_from_json(const json& j) {
  return GroupSpec(non_negative(field(j, "p", "group"), "p"), non_negative(field(j, "n", "group"), "n"),
                   non_negative(field(j, "alpha", "group"), "alpha"));
}

json element_to_json(GroupElement u) { return json{{"i", u.i}, {"x", u.x}}; }

GroupElement element_from_json(const json& j) {
  return {non_negative(field(j, "i", "element"), "i"), non_negative(field(j, "x", "element"), "x")};
}

json gens_to_json(const std::vector<GroupElement>& gens) {
  json out = json::array();
  for (const auto& s : gens) out.push_back(element_to_json(s));
  return out;
}

std::vector<GroupElement> gens_from_json(const json& j) {
  if (!j.is_array()) malformed("generators must be a JSON array");
  std::vector<GroupElement> out;
  for (const auto& e : j) out.push_back(element_from_json(e));
  return out;
}

json steps_to_json(const std::vector<std::int32_t>& steps) { return json(steps); }

std::vector<std::int32_t> steps_from_json(const json& j) {
  if (!j.is_array()) malformed("word must be a JSON array of signed integers");
  std::vector<std::int32_t> out;
  out.reserve(j.size());
  for (const auto& e : j) {
    if (!e.is_number_integer()) malformed("word entries must be integers");
    const auto v = e.get<std::int64_t>();
    if (v == 0 || v > std::numeric_limits<std::int32_t>::max() || v < -std::numeric_limits<std::int32_t>::max()) {
      malformed("word entries must be nonzero 32-bit integers");
    }
    out.push_back(static_cast<std::int32_t>(v));
  }
  return out;
}

json certificate_to_json(const HamCertificate& cert) {
  json j;
  j["group"] = group_to_json(cert.group);
  j["gens"] = gens_to_json(cert.word.gens);
  j["word"] = steps_to_json(cert.word.steps);
  j["case"] = cert.case_label;
  j["candidate"] = cert.candidate;
  if (cert.voltage_record) {
    json proj = json::object();
    for (const auto& [prime, residue] : cert.voltage_record->voltage.projections.residues) {
      proj[std::to_string(prime)] = residue;
    }
    j["voltage"] = json{{"x", cert.voltage_record->voltage.element.x},
                        {"subgroup_order", cert.voltage_record->subgroup_order},
                        {"projections", proj}};
  } else {
    j["voltage"] = nullptr;
  }
  j["verified"] = is_hamiltonian_cycle(cert.group, cert.word);
  return j;
}

ParsedCertificate certificate_from_json(const json& j) {
  const json& case_field = j.contains("case") ? j.at("case") : json("");
  if (!case_field.is_string()) malformed("certificate \"case\" must be a string");
  return ParsedCertificate{group_from_json(field(j, "group", "certificate")),
                           gens_from_json(field(j, "gens", "certificate")),
                           steps_from_json(field(j, "word", "certificate")), case_field.get<std::string>()};
}

json batch_record_to_json(const BatchRecord& r) {
  json j;
  j["group"] = group_to_json(r.group);
  j["gens"] = gens_to_json(r.gens);
  j["case"] = r.case_label;
  j["found"] = r.found;
  j["millis"] = r.millis.count();
  if (!r.found) j["error"] = r.error_kind + ": " + r.error;
  return j;
}

json parse(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    malformed(what + ": " + e.what());
  }
}

}  // namespace hamcay::json_io
