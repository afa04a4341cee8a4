#include "hamcay/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "hamcay/batch.hpp"
#include "hamcay/construct.hpp"
#include "hamcay/error.hpp"
#include "hamcay/json_io.hpp"
#include "hamcay/search.hpp"

namespace hamcay {

namespace {

using json_io::json;

struct GroupArgs {
  std::optional<residue_t> p, n, alpha;
  std::string group_file;
  std::string gens_json;
  std::vector<std::string> gen;
};

struct SearchArgs {
  double timeout_seconds = 0;  // 0: the command's default
  std::uint64_t max_vertices = SearchConfig::kMaxVerticesLimit;
  std::string heuristic = "degree-order";
  std::uint64_t seed = 0;
};

void add_group_options(CLI::App* cmd, GroupArgs& a, bool with_gens) {
  cmd->add_option("--p", a.p, "order of the cyclic quotient (prime)");
  cmd->add_option("--n", a.n, "order of the cyclic normal part");
  cmd->add_option("--alpha", a.alpha, "twist exponent, alpha^p = 1 mod n");
  cmd->add_option("--group-file", a.group_file, "JSON file {\"p\", \"n\", \"alpha\"}");
  if (with_gens) {
    cmd->add_option("--gens", a.gens_json, "generators as JSON, e.g. [{\"i\":1,\"x\":0},[0,1]]");
    cmd->add_option("--gen", a.gen, "one generator as i,x (repeatable)");
  }
}

void add_search_options(CLI::App* cmd, SearchArgs& s) {
  cmd->add_option("--timeout", s.timeout_seconds, "search budget in seconds")->check(CLI::PositiveNumber);
  cmd->add_option("--max-vertices", s.max_vertices, "largest graph the search will attempt");
  cmd->add_option("--heuristic", s.heuristic, "neighbour order")->check(CLI::IsMember({"degree-order", "input-order"}));
  cmd->add_option("--seed", s.seed, "tie-breaking seed (0 keeps generator order)");
}

[[noreturn]] void malformed(const std::string& what) { throw Error(ErrorKind::invalid_input, what); }

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) malformed("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::optional<GroupSpec> group_from_args(const GroupArgs& a) {
  const bool inline_any = a.p || a.n || a.alpha;
  if (inline_any && !a.group_file.empty()) malformed("give the group either inline (--p/--n/--alpha) or by --group-file");
  if (!a.group_file.empty()) return json_io::group_from_json(json_io::parse(read_file(a.group_file), a.group_file));
  if (!inline_any) return std::nullopt;
  if (!a.p || !a.n || !a.alpha) malformed("--p, --n and --alpha must be given together");
  return GroupSpec(*a.p, *a.n, *a.alpha);
}

GroupSpec require_group(const GroupArgs& a) {
  auto g = group_from_args(a);
  if (!g) malformed("missing group: use --p/--n/--alpha or --group-file");
  return *g;
}

GroupElement parse_pair(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) malformed("--gen expects i,x but got \"" + text + "\"");
  try {
    std::size_t used_i = 0, used_x = 0;
    const std::string si = text.substr(0, comma), sx = text.substr(comma + 1);
    if (si.empty() || sx.empty() || si[0] == '-' || sx[0] == '-') throw std::invalid_argument(text);
    const residue_t i = std::stoull(si, &used_i);
    const residue_t x = std::stoull(sx, &used_x);
    if (used_i != si.size() || used_x != sx.size()) throw std::invalid_argument(text);
    return {i, x};
  } catch (const std::logic_error&) {
    malformed("--gen expects non-negative integers i,x but got \"" + text + "\"");
  }
}

std::vector<GroupElement> gens_from_args(const GroupArgs& a) {
  std::vector<GroupElement> gens;
  if (!a.gens_json.empty()) {
    const json j = json_io::parse(a.gens_json, "--gens");
    if (!j.is_array()) malformed("--gens must be a JSON array");
    for (const auto& e : j) {
      if (e.is_array() && e.size() == 2) {
        gens.push_back(json_io::element_from_json(json{{"i", e[0]}, {"x", e[1]}}));
      } else {
        gens.push_back(json_io::element_from_json(e));
      }
    }
  }
  for (const auto& text : a.gen) gens.push_back(parse_pair(text));
  return gens;
}

std::vector<GroupElement> require_gens(const GroupSpec& g, const GroupArgs& a) {
  auto gens = gens_from_args(a);
  if (gens.empty()) malformed("missing generators: use --gens or --gen");
  for (const auto& s : gens) require_element(g, s);
  return gens;
}

SearchConfig config_from_args(const SearchArgs& s, SearchConfig base) {
  if (s.timeout_seconds > 0) {
    base.timeout = std::chrono::milliseconds(static_cast<std::int64_t>(s.timeout_seconds * 1000.0 + 0.5));
    if (base.timeout.count() == 0) base.timeout = std::chrono::milliseconds(1);
  }
  base.max_vertices = s.max_vertices;
  base.heuristic = s.heuristic == "input-order" ? Heuristic::input_order : Heuristic::degree_order;
  base.seed = s.seed;
  base.validate();
  return base;
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_group:
    case ErrorKind::invalid_input:
    case ErrorKind::side_condition:
    case ErrorKind::size_guard:
      return kExitMalformed;
    case ErrorKind::not_generating:
    case ErrorKind::unsupported_order:
      return kExitUnsupported;
    case ErrorKind::oracle_timeout:
      return kExitTimeout;
    case ErrorKind::theorem_violation:
    case ErrorKind::precondition:
    case ErrorKind::structure:
    case ErrorKind::role_swap_loop:
      return kExitTheoremViolation;
  }
  return kExitMalformed;
}

// Writes to --out when given, otherwise to out.
class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) malformed("cannot write " + path);
      stream_ = &file_;
    }
  }
  std::ostream& get() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

int cmd_construct(const GroupArgs& ga, const SearchArgs& sa, const std::string& out_path, bool quiet,
                  std::ostream& out, std::ostream& err) {
  const GroupSpec g = require_group(ga);
  const auto gens = require_gens(g, ga);
  ConstructOptions opts;
  opts.oracle = config_from_args(sa, delegated_config());
  opts.trace = quiet ? nullptr : &err;
  const HamCertificate cert = construct_hamiltonian(g, gens, opts);
  Output o(out_path, out);
  o.get() << json_io::certificate_to_json(cert).dump() << '\n';
  if (!quiet) err << "certificate: case " << cert.case_label << ", word length " << cert.word.size() << ", verified\n";
  return kExitOk;
}

int cmd_verify(const GroupArgs& ga, const std::string& file, std::ostream& out, std::ostream& err) {
  const json doc = json_io::parse(read_file(file), file);
  std::optional<GroupSpec> g = group_from_args(ga);
  std::vector<GroupElement> gens = gens_from_args(ga);
  std::vector<std::int32_t> steps;
  if (doc.is_object()) {
    const json_io::ParsedCertificate cert = json_io::certificate_from_json(doc);
    if (!g) g = cert.group;
    if (gens.empty()) gens = cert.gens;
    steps = cert.steps;
  } else {
    steps = json_io::steps_from_json(doc);
  }
  if (!g) malformed("verify: the word file has no group; use --p/--n/--alpha or --group-file");
  if (gens.empty()) malformed("verify: the word file has no generators; use --gens or --gen");
  const GenWord w{gens, steps};
  validate_word(*g, w);
  const CycleCheck check = check_hamiltonian_cycle(*g, w);
  if (check.ok()) {
    out << "ok: hamiltonian cycle of length " << w.size() << '\n';
    return kExitOk;
  }
  out << "not a hamiltonian cycle: " << check.describe() << '\n';
  err << "verify failed: " << check.describe() << '\n';
  return kExitVerifyFailed;
}

int cmd_search(const GroupArgs& ga, const SearchArgs& sa, bool lift, const std::string& out_path, std::ostream& out,
               std::ostream& err) {
  const GroupSpec g = require_group(ga);
  const auto gens = require_gens(g, ga);
  const SearchConfig cfg = config_from_args(sa, SearchConfig{});
  HamCertificate cert{g, GenWord{gens, {}}, std::string(case_label::kOracle), "", std::nullopt};
  SearchStatus status;
  if (lift) {
    OracleResult r = find_hamiltonian_cycle(g, gens, cfg);
    status = r.status;
    if (r.word) cert.word = *std::move(r.word);
    cert.voltage_record = std::move(r.voltage_record);
  } else {
    SearchResult r = brute_force_ham(g, gens, cfg);
    status = r.status;
    if (r.word) cert.word = *std::move(r.word);
    err << "search: " << r.nodes << " nodes\n";
  }
  if (status == SearchStatus::timeout) {
    err << "search: budget exhausted without a cycle\n";
    return kExitTimeout;
  }
  if (status == SearchStatus::not_found) {
    err << "search: exhaustive search found no hamiltonian cycle\n";
    return kExitTheoremViolation;
  }
  Output o(out_path, out);
  o.get() << json_io::certificate_to_json(cert).dump() << '\n';
  return kExitOk;
}

int cmd_enumerate(const std::vector<residue_t>& primes, bool construct_all, std::size_t sets, unsigned threads,
                  std::uint64_t seed, bool timings, const SearchArgs& sa, const std::string& out_path,
                  std::ostream& out, std::ostream& err) {
  if (primes.size() != 4) malformed("enumerate expects four primes");
  const auto groups = enumerate_groups(primes);
  Output o(out_path, out);
  if (!construct_all) {
    for (const auto& g : groups) {
      json j;
      j["group"] = json_io::group_to_json(g);
      j["commutator_order"] = commutator_order(g);
      j["centre_order"] = centre(g).order(g);
      o.get() << j.dump() << '\n';
    }
    return kExitOk;
  }
  BatchOptions opts;
  opts.sets_per_group = sets;
  opts.threads = threads;
  opts.seed = seed;
  opts.construct.oracle = config_from_args(sa, delegated_config());
  const auto records = run_batch(groups, opts);
  int code = kExitOk;
  for (const auto& r : records) {
    json j = json_io::batch_record_to_json(r);
    if (!timings) j.erase("millis");
    o.get() << j.dump() << '\n';
    if (!r.found) {
      err << "instance failed: " << r.error_kind << ": " << r.error << '\n';
      const int c = r.error_kind == "oracle_timeout" ? kExitTimeout
                    : (r.error_kind == "not_generating" || r.error_kind == "unsupported_order") ? kExitUnsupported
                                                                                                : kExitTheoremViolation;
      code = std::max(code, c);
    }
  }
  json hist = json::object();
  for (const auto& [label, count] : case_histogram(records)) hist[label] = count;
  o.get() << json{{"histogram", hist}, {"instances", records.size()}}.dump() << '\n';
  return code;
}

int cmd_export_dot(const GroupArgs& ga, const std::string& out_path, std::ostream& out) {
  const GroupSpec g = require_group(ga);
  const auto gens = require_gens(g, ga);
  Output o(out_path, out);
  o.get() << export_dot(g, gens);
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"hamiltonian cycles in Cayley graphs of groups of order pqrs", "hamcay"};
  app.require_subcommand(1);

  GroupArgs ga;
  SearchArgs sa;
  std::string out_path;
  bool quiet = false;

  auto* construct = app.add_subcommand("construct", "build and verify a hamiltonian cycle");
  add_group_options(construct, ga, true);
  add_search_options(construct, sa);
  construct->add_option("--out", out_path, "write the certificate here");
  construct->add_flag("--quiet", quiet, "no case trace on stderr");

  std::string word_file;
  auto* verify = app.add_subcommand("verify", "check a certificate or word");
  verify->add_option("file", word_file, "certificate JSON or word array")->required();
  add_group_options(verify, ga, true);

  bool lift = false;
  auto* search = app.add_subcommand("search", "backtracking search for a hamiltonian cycle");
  add_group_options(search, ga, true);
  add_search_options(search, sa);
  search->add_flag("--lift", lift, "search quotients first and lift the cycle");
  search->add_option("--out", out_path, "write the certificate here");

  std::vector<residue_t> primes;
  bool construct_all = false, no_timings = false;
  std::size_t sets = 3;
  unsigned threads = 1;
  std::uint64_t batch_seed = 1;
  auto* enumerate = app.add_subcommand("enumerate", "list the groups of order pqrs");
  enumerate->add_option("primes", primes, "four distinct odd primes")->required()->expected(4);
  enumerate->add_flag("--construct-all", construct_all, "construct cycles for sampled generating sets");
  enumerate->add_option("--sets", sets, "generating sets per group")->check(CLI::PositiveNumber);
  enumerate->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
  enumerate->add_option("--seed", batch_seed, "sampling seed");
  enumerate->add_flag("--no-timings", no_timings, "omit millis from the report");
  enumerate->add_option("--timeout", sa.timeout_seconds, "oracle budget in seconds")->check(CLI::PositiveNumber);
  enumerate->add_option("--out", out_path, "write the report here");

  auto* dot = app.add_subcommand("export-dot", "Cayley graph in DOT format");
  add_group_options(dot, ga, true);
  dot->add_option("--out", out_path, "write the graph here");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitMalformed;
  }

  try {
    if (*construct) return cmd_construct(ga, sa, out_path, quiet, out, err);
    if (*verify) return cmd_verify(ga, word_file, out, err);
    if (*search) return cmd_search(ga, sa, lift, out_path, out, err);
    if (*enumerate) {
      return cmd_enumerate(primes, construct_all, sets, threads, batch_seed, !no_timings, sa, out_path, out, err);
    }
    if (*dot) return cmd_export_dot(ga, out_path, out);
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitMalformed;
  }
  return kExitMalformed;
}

}  // namespace hamcay
