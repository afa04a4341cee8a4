#include "hamcay/construct.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

#include "hamcay/arith.hpp"
#include "hamcay/error.hpp"
#include "hamcay/fgl.hpp"

namespace hamcay {

namespace {

[[noreturn]] void side_condition(const std::string& what) { throw Error(ErrorKind::side_condition, what); }

void append_power(std::vector<std::int32_t>& out, std::int32_t symbol, std::int64_t e) {
  const std::int32_t step = e < 0 ? -symbol : symbol;
  for (std::int64_t t = 0; t < (e < 0 ? -e : e); ++t) out.push_back(step);
}

constexpr std::int32_t kA = 1, kB = 2, kC = 3;

// Walks the word in C_p with a = 1, b = k, c = ell.
bool hamiltonian_in_cp(residue_t p, residue_t k, residue_t ell, const std::vector<std::int32_t>& steps) {
  if (steps.size() != p) return false;
  std::vector<bool> seen(p, false);
  residue_t pos = 0;
  for (std::size_t t = 0; t < steps.size(); ++t) {
    if (seen[pos]) return false;
    seen[pos] = true;
    const std::int32_t sym = steps[t] < 0 ? -steps[t] : steps[t];
    const residue_t unit = sym == kA ? 1 : sym == kB ? k % p : ell % p;
    pos = steps[t] < 0 ? arith::submod(pos, unit, p) : (pos + unit) % p;
  }
  return pos == 0;
}

std::string join_steps(const std::vector<std::int32_t>& steps) {
  std::ostringstream os;
  for (std::size_t t = 0; t < steps.size(); ++t) {
    const std::int32_t sym = steps[t] < 0 ? -steps[t] : steps[t];
    if (t) os << ' ';
    os << "abc"[sym - 1];
    if (steps[t] < 0) os << "^-1";
  }
  return os.str();
}

std::string describe(const CrtComponents& c) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (const auto& [prime, residue] : c.residues) {
    if (!first) os << ", ";
    first = false;
    os << prime << ": " << residue;
  }
  os << '}';
  return os.str();
}

void trace(const ConstructOptions& opts, const std::string& line) {
  if (opts.trace) *opts.trace << line << '\n';
}

bool is_pqrs(const GroupSpec& g) {
  return g.p() % 2 == 1 && g.n() % 2 == 1 && g.prime_factors_n().size() == 3;
}

void require_full_commutator(const GroupSpec& g, const char* who) {
  if (!is_pqrs(g) || commutator_order(g) != g.n()) {
    throw Error(ErrorKind::precondition, std::string(who) + ": requires |G| = pqrs with |G'| = qrs");
  }
}

// Instantiates a symbolic candidate over the generating set.
GenWord instantiate(const NormalizedGens& ng, const std::vector<GroupElement>& gens,
                    const std::vector<std::int32_t>& symbolic) {
  std::vector<std::int32_t> sym_step{0, static_cast<std::int32_t>(ng.a_index + 1)};
  // companions are sorted by k: the last is b, the first (of two) is c.
  const Companion& b = ng.companions.back();
  sym_step.push_back((b.inverted ? -1 : 1) * static_cast<std::int32_t>(b.index + 1));
  if (ng.companions.size() > 1) {
    const Companion& c = ng.companions.front();
    sym_step.push_back((c.inverted ? -1 : 1) * static_cast<std::int32_t>(c.index + 1));
  }
  GenWord w{gens, {}};
  w.steps.reserve(symbolic.size());
  for (std::int32_t s : symbolic) {
    const std::int32_t sym = s < 0 ? -s : s;
    if (sym >= static_cast<std::int32_t>(sym_step.size())) throw Error(ErrorKind::invalid_input, "candidate uses a missing symbol");
    w.steps.push_back(s < 0 ? -sym_step[sym] : sym_step[sym]);
  }
  return w;
}

HamCertificate try_candidates(const GroupSpec& g, const std::vector<GroupElement>& gens, const NormalizedGens& ng,
                              Subcase subcase, std::string_view label, const ConstructOptions& opts) {
  const auto& primes = g.prime_factors_n();
  const auto candidates = candidate_cycles(g.p(), ng.k, ng.ell, subcase);
  for (const auto& cand : candidates) {
    const GenWord word = instantiate(ng, gens, cand.steps);
    const GroupElement v = voltage(g, word);
    const bool generates = v.i == 0 && generates_cyclic(g, v, primes);
    {
      std::ostringstream os;
      os << "  candidate " << cand.name << " = (" << join_steps(cand.steps) << "): voltage (" << v.i << "," << v.x
         << ")";
      if (v.i == 0) os << " projections " << describe(crt_decompose(primes, v.x));
      os << (generates ? " generates G'" : " does not generate G'");
      trace(opts, os.str());
    }
    if (!generates) continue;
    HamCertificate cert{g, fgl_lift(g, word, g.n()), std::string(label), cand.name,
                        VoltageRecord{word, g.n(), make_voltage(g, v, primes)}};
    return cert;
  }
  std::ostringstream os;
  os << "subcase " << to_string(subcase) << ": no candidate voltage generates G' (p=" << g.p() << ", k=" << ng.k
     << ", ell=" << ng.ell << ")";
  throw Error(ErrorKind::theorem_violation, os.str());
}

std::string describe(const NormalizedGens& ng) {
  std::ostringstream os;
  os << "a=gen" << ng.a_index + 1 << " (" << ng.a.i << "," << ng.a.x << ")";
  for (const auto& c : ng.companions) {
    os << "; gen" << c.index + 1 << (c.inverted ? "^-1" : "") << " = a^" << c.k << " * (0," << c.gamma.x << ")";
  }
  os << "; k=" << ng.k << " ell=" << ng.ell;
  if (ng.labels) os << "; q=" << ng.labels->q << " r=" << ng.labels->r << " s=" << ng.labels->s;
  return os.str();
}

HamCertificate dispatch_case3(const GroupSpec& g, const std::vector<GroupElement>& gens, const NormalizedGens& ng,
                              const ConstructOptions& opts, bool swapped) {
  const residue_t p = g.p();
  const auto label = [&](std::string_view own) { return swapped ? case_label::kRoleSwap : own; };
  trace(opts, "case3 frame: " + describe(ng));
  switch (route_case3(p, ng.k, ng.ell)) {
    case Case3Route::p_equals_3:
      trace(opts, "case3: p = 3");
      return try_candidates(g, gens, ng, Subcase::p_equals_3, label(case_label::kPEquals3), opts);
    case Case3Route::not_distinct:
      trace(opts, "case3: images of a and c coincide");
      return try_candidates(g, gens, ng, Subcase::not_distinct, label(case_label::kNotDistinct), opts);
    case Case3Route::relabel_not_distinct: {
      // Images of b and c coincide: make b the distinguished generator, so c has exponent 1.
      const NormalizedGens re = normalize_generators(g, gens, ng.companions.back().index);
      trace(opts, "case3: images of b and c coincide, relabelled: " + describe(re));
      if (re.ell != 1) throw Error(ErrorKind::theorem_violation, "relabelling did not make the images of a and c coincide");
      return try_candidates(g, gens, re, Subcase::not_distinct, label(case_label::kNotDistinct), opts);
    }
    case Case3Route::ell_generic:
      trace(opts, "case3: ell != (p-3)/2");
      return try_candidates(g, gens, ng, Subcase::ell_generic, label(case_label::kEllGeneric), opts);
    case Case3Route::p_equals_7:
      trace(opts, "case3: p = 7, ell = 2, k = 3");
      return try_candidates(g, gens, ng, Subcase::p_equals_7, label(case_label::kPEquals7), opts);
    case Case3Route::role_swap:
      break;
  }
  if (swapped) {
    std::ostringstream os;
    os << "role swap reached ell = (p-3)/2 again (p=" << p << ", k=" << ng.k << ", ell=" << ng.ell << ")";
    throw Error(ErrorKind::role_swap_loop, os.str());
  }
  trace(opts, "case3: ell = (p-3)/2 with p > 7, putting c in the role of a");
  return dispatch_case3(g, gens, normalize_generators(g, gens, ng.companions.front().index), opts, true);
}

HamCertificate finish(const GroupSpec& g, const std::vector<GroupElement>& gens, const std::vector<std::size_t>& kept,
                      HamCertificate cert) {
  const auto remap = [&](GenWord& w) {
    for (auto& s : w.steps) {
      const auto j = static_cast<std::size_t>(s < 0 ? -s : s) - 1;
      const auto original = static_cast<std::int32_t>(kept.at(j) + 1);
      s = s < 0 ? -original : original;
    }
    w.gens = gens;
  };
  remap(cert.word);
  if (cert.voltage_record) remap(cert.voltage_record->quotient_cycle);
  const CycleCheck check = check_hamiltonian_cycle(g, cert.word);
  if (!check.ok()) {
    throw Error(ErrorKind::theorem_violation, "constructed word failed verification (" + cert.case_label + "): " +
                                                  check.describe());
  }
  return cert;
}

HamCertificate run_oracle(const GroupSpec& g, const std::vector<GroupElement>& gens, const ConstructOptions& opts,
                          const std::string& why) {
  trace(opts, "oracle: " + why);
  OracleResult r = find_hamiltonian_cycle(g, gens, opts.oracle);
  if (r.status == SearchStatus::timeout) throw Error(ErrorKind::oracle_timeout, "oracle timed out (" + why + ")");
  if (r.status != SearchStatus::found || !r.word) {
    throw Error(ErrorKind::theorem_violation, "exhaustive search found no hamiltonian cycle (" + why + ")");
  }
  if (r.voltage_record) {
    trace(opts, "oracle: lifted a cycle of G/N with |N| = " + std::to_string(r.voltage_record->subgroup_order));
  }
  return HamCertificate{g, *std::move(r.word), std::string(case_label::kOracle), "", std::move(r.voltage_record)};
}

}  // namespace

std::string_view to_string(Subcase s) {
  switch (s) {
    case Subcase::case2: return "case2";
    case Subcase::p_equals_3: return "3.1";
    case Subcase::not_distinct: return "3.2";
    case Subcase::ell_generic: return "3.3";
    case Subcase::p_equals_7: return "3.4";
  }
  return "unknown";
}

std::string_view to_string(Case3Route r) {
  switch (r) {
    case Case3Route::p_equals_3: return "p_equals_3";
    case Case3Route::not_distinct: return "not_distinct";
    case Case3Route::relabel_not_distinct: return "relabel_not_distinct";
    case Case3Route::ell_generic: return "ell_generic";
    case Case3Route::p_equals_7: return "p_equals_7";
    case Case3Route::role_swap: return "role_swap";
  }
  return "unknown";
}

Case3Route route_case3(residue_t p, residue_t k, residue_t ell) {
  if (ell < 1 || ell > k || k > (p - 1) / 2) side_condition("route_case3 needs 1 <= ell <= k <= (p-1)/2");
  if (p == 3) return Case3Route::p_equals_3;
  if (ell == 1) return Case3Route::not_distinct;
  if (k == ell) return Case3Route::relabel_not_distinct;
  if (ell != (p - 3) / 2) return Case3Route::ell_generic;
  if (p == 7) return Case3Route::p_equals_7;
  return Case3Route::role_swap;
}

std::pair<residue_t, residue_t> swapped_exponents(residue_t p, residue_t k, residue_t ell) {
  // With c as the new a: a = c^(1/ell), b = c^(k/ell) in G/G'.
  const residue_t inv_ell = arith::invmod(ell % p, p);
  const auto reduce = [&](residue_t e) { return e > (p - 1) / 2 ? p - e : e; };
  const residue_t ea = reduce(inv_ell);
  const residue_t eb = reduce(arith::mulmod(k % p, inv_ell, p));
  return {std::max(ea, eb), std::min(ea, eb)};
}

std::vector<CandidateCycle> candidate_cycles(residue_t p, residue_t k, residue_t ell, Subcase subcase) {
  if (p < 3 || p % 2 == 0 || !arith::is_prime(p)) side_condition("candidate_cycles: p must be an odd prime");
  if (p > (residue_t{1} << 20)) side_condition("candidate_cycles: p too large for a symbolic word");
  const auto pk = static_cast<std::int64_t>(p);
  const auto kk = static_cast<std::int64_t>(k);
  const auto ll = static_cast<std::int64_t>(ell);
  std::vector<CandidateCycle> out;
  const auto make = [&](std::string name, std::initializer_list<std::pair<std::int32_t, std::int64_t>> parts) {
    CandidateCycle c{std::move(name), {}};
    for (const auto& [sym, e] : parts) append_power(c.steps, sym, e);
    out.push_back(std::move(c));
  };

  switch (subcase) {
    case Subcase::case2:
      if (k < 1 || k > (p - 1) / 2) side_condition("case2 needs 1 <= k <= (p-1)/2");
      make("C", {{kB, 1}, {kA, -(kk - 1)}, {kB, 1}, {kA, pk - kk - 1}});
      break;
    case Subcase::p_equals_3:
      if (p != 3 || k != 1 || ell != 1) side_condition("3.1 needs p = 3 and k = ell = 1");
      make("C1", {{kA, 1}, {kB, 1}, {kC, 1}});
      make("C2", {{kA, 1}, {kC, 1}, {kB, 1}});
      break;
    case Subcase::not_distinct:
      if (p < 5 || ell != 1 || k < 1 || kk > pk - 3) side_condition("3.2 needs p >= 5, ell = 1 and p - k >= 3");
      make("C1", {{kB, 1}, {kA, -(kk - 1)}, {kB, 1}, {kC, 1}, {kA, pk - kk - 2}});
      make("C2", {{kB, 1}, {kA, -(kk - 1)}, {kB, 1}, {kA, 1}, {kC, 1}, {kA, pk - kk - 3}});
      break;
    case Subcase::ell_generic:
      if (k < 1 || ell < 1 || kk + ll > pk - 3) side_condition("3.3 needs k, ell >= 1 and k + ell <= p - 3");
      make("C1", {{kB, 1}, {kA, -(kk - 1)}, {kB, 1}, {kC, 1}, {kA, -(ll - 1)}, {kC, 1}, {kA, pk - kk - ll - 2}});
      make("C2",
           {{kB, 1}, {kA, -(kk - 1)}, {kB, 1}, {kA, 1}, {kC, 1}, {kA, -(ll - 1)}, {kC, 1}, {kA, pk - kk - ll - 3}});
      break;
    case Subcase::p_equals_7:
      if (p != 7 || k != 3 || ell != 2) side_condition("3.4 needs p = 7, k = 3, ell = 2");
      make("C", {{kC, 1}, {kA, 2}, {kC, 1}, {kA, -1}, {kB, 1}, {kA, -1}});
      make("C1", {{kB, 1}, {kA, -(kk - 1)}, {kB, 1}, {kC, 1}, {kA, -(ll - 1)}, {kC, 1}, {kA, pk - kk - ll - 2}});
      break;
  }
  for (const auto& c : out) {
    if (!hamiltonian_in_cp(p, k, ell, c.steps)) {
      throw Error(ErrorKind::theorem_violation, "candidate " + c.name + " of subcase " + std::string(to_string(subcase)) +
                                                    " is not a hamiltonian cycle of C_" + std::to_string(p));
    }
  }
  return out;
}

std::vector<std::size_t> irredundant_subset(const GroupSpec& g, const std::vector<GroupElement>& gens) {
  if (!is_generating_set(g, gens)) throw Error(ErrorKind::not_generating, "A does not generate G");
  std::vector<std::size_t> kept(gens.size());
  for (std::size_t j = 0; j < gens.size(); ++j) kept[j] = j;
  for (std::size_t j = 0; j < gens.size(); ++j) {
    std::vector<GroupElement> rest;
    for (std::size_t t : kept) {
      if (t != j) rest.push_back(gens[t]);
    }
    if (!rest.empty() && is_generating_set(g, rest)) kept.erase(std::find(kept.begin(), kept.end(), j));
  }
  return kept;
}

NormalizedGens normalize_generators(const GroupSpec& g, const std::vector<GroupElement>& gens) {
  return normalize_generators(g, gens, 0);
}

NormalizedGens normalize_generators(const GroupSpec& g, const std::vector<GroupElement>& gens, std::size_t a_index) {
  if (a_index >= gens.size()) throw Error(ErrorKind::invalid_input, "normalize_generators: a_index out of range");
  for (std::size_t j = 0; j < gens.size(); ++j) {
    require_element(g, gens[j]);
    if (gens[j].i == 0) {
      throw Error(ErrorKind::precondition, "normalize_generators: generator " + std::to_string(j + 1) +
                                               " has trivial image in G/C_n");
    }
  }
  const residue_t p = g.p();
  NormalizedGens ng;
  ng.a_index = a_index;
  ng.a = gens[a_index];
  const residue_t a_inv = arith::invmod(ng.a.i, p);
  for (std::size_t j = 0; j < gens.size(); ++j) {
    if (j == a_index) continue;
    Companion c;
    c.index = j;
    const residue_t k_raw = arith::mulmod(gens[j].i, a_inv, p);
    c.inverted = k_raw > (p - 1) / 2;
    c.k = c.inverted ? p - k_raw : k_raw;
    const GroupElement s = c.inverted ? inv(g, gens[j]) : gens[j];
    c.gamma = mul(g, pow(g, ng.a, -static_cast<std::int64_t>(c.k)), s);
    if (c.gamma.i != 0) throw Error(ErrorKind::theorem_violation, "normalize_generators: a^-k b left the normal part");
    c.gamma_components = crt_decompose(g, c.gamma.x);
    ng.companions.push_back(std::move(c));
  }
  std::stable_sort(ng.companions.begin(), ng.companions.end(),
                   [](const Companion& x, const Companion& y) { return x.k < y.k; });
  if (!ng.companions.empty()) {
    ng.ell = ng.companions.front().k;
    ng.k = ng.companions.back().k;
  }

  if (ng.companions.size() == 2 && is_pqrs(g) && commutator_order(g) == g.n()) {
    const auto sb = support(g, ng.companions.back().gamma.x);
    const auto sc = support(g, ng.companions.front().gamma.x);
    std::vector<residue_t> shared;
    std::set_intersection(sb.begin(), sb.end(), sc.begin(), sc.end(), std::back_inserter(shared));
    if (sb.size() != 2 || sc.size() != 2 || shared.size() != 1) {
      std::ostringstream os;
      os << "normalize_generators: commutator parts have supports of sizes " << sb.size() << " and " << sc.size()
         << " sharing " << shared.size() << " primes; expected orders qr and rs";
      throw Error(ErrorKind::structure, os.str());
    }
    PrimeLabels labels;
    labels.r = shared.front();
    labels.q = sb[0] == labels.r ? sb[1] : sb[0];
    labels.s = sc[0] == labels.r ? sc[1] : sc[0];
    ng.labels = labels;
  }
  return ng;
}

HamCertificate construct_case2(const GroupSpec& g, const std::vector<GroupElement>& gens, const NormalizedGens& ng,
                               const ConstructOptions& opts) {
  require_full_commutator(g, "construct_case2");
  if (gens.size() != 2 || ng.companions.size() != 1) throw Error(ErrorKind::precondition, "construct_case2: |A| must be 2");
  trace(opts, "case2 frame: " + describe(ng));
  return try_candidates(g, gens, ng, Subcase::case2, case_label::kCase2, opts);
}

HamCertificate construct_case3(const GroupSpec& g, const std::vector<GroupElement>& gens, const NormalizedGens& ng,
                               const ConstructOptions& opts) {
  require_full_commutator(g, "construct_case3");
  if (gens.size() != 3 || ng.companions.size() != 2) throw Error(ErrorKind::precondition, "construct_case3: |A| must be 3");
  return dispatch_case3(g, gens, ng, opts, false);
}

HamCertificate construct_hamiltonian(const GroupSpec& g, const std::vector<GroupElement>& gens,
                                     const ConstructOptions& opts) {
  if (!is_pqrs(g)) {
    std::ostringstream os;
    os << "|G| = " << g.order() << " is not a product of four distinct odd primes";
    throw Error(ErrorKind::unsupported_order, os.str());
  }
  if (gens.empty()) throw Error(ErrorKind::not_generating, "empty generating set");
  for (const auto& s : gens) require_element(g, s);
  const std::vector<std::size_t> kept = irredundant_subset(g, gens);
  std::vector<GroupElement> sub;
  for (std::size_t j : kept) sub.push_back(gens[j]);
  if (kept.size() < gens.size()) {
    trace(opts, "irredundant subset keeps " + std::to_string(kept.size()) + " of " + std::to_string(gens.size()) +
                    " generators");
  }

  const auto comm = commutator_subgroup(g);
  if (comm.size() <= 2) {
    return finish(g, gens, kept, run_oracle(g, sub, opts, "|G'| has " + std::to_string(comm.size()) + " prime factors"));
  }
  if (sub.size() >= 4 || sub.size() < 2) {
    return finish(g, gens, kept, run_oracle(g, sub, opts, "|A| = " + std::to_string(sub.size())));
  }

  const auto b_it = std::find_if(sub.begin(), sub.end(), [&](const GroupElement& s) { return in_commutator(g, s); });
  if (b_it != sub.end()) {
    const GroupElement b = *b_it;
    const Quotient q = quotient_by_cyclic(g, b);
    std::ostringstream os;
    os << "case1: b = gen" << kept[static_cast<std::size_t>(b_it - sub.begin())] + 1 << " (0," << b.x << ") of order "
       << element_order(g, b) << ", quotient of order " << q.group.order();
    trace(opts, os.str());
    const OracleResult qr = find_hamiltonian_cycle(q.group, q.project(sub), opts.oracle);
    if (qr.status == SearchStatus::timeout) throw Error(ErrorKind::oracle_timeout, "case1: quotient search timed out");
    if (qr.status != SearchStatus::found || !qr.word) {
      throw Error(ErrorKind::theorem_violation, "case1: quotient has no hamiltonian cycle");
    }
    LiftOutcome lift = normal_easy_lift(g, sub, b, GenWord{sub, qr.word->steps}, opts.oracle);
    trace(opts, "case1: lifted by " + lift.strategy);
    HamCertificate cert{g, std::move(lift.word), std::string(case_label::kCase1), lift.strategy, std::nullopt};
    if (lift.voltage && lift.lifted_cycle) {
      cert.voltage_record = VoltageRecord{*std::move(lift.lifted_cycle), lift.subgroup_order, *std::move(lift.voltage)};
    }
    return finish(g, gens, kept, std::move(cert));
  }

  const NormalizedGens ng = normalize_generators(g, sub);
  if (sub.size() == 2) return finish(g, gens, kept, construct_case2(g, sub, ng, opts));
  return finish(g, gens, kept, construct_case3(g, sub, ng, opts));
}

}  // namespace hamcay
