#include "hamcay/search.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "hamcay/arith.hpp"
#include "hamcay/error.hpp"

namespace hamcay {

namespace {

using Clock = std::chrono::steady_clock;

std::chrono::milliseconds since(Clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0);
}

// Cayley graph with one adjacency row per vertex. Left multiplication is an
// automorphism, so the set of distinct non-identity step elements is the same
// at every vertex and deduplication happens once, on labels.
struct CayleyAdjacency {
  std::uint32_t vertices = 0;
  std::uint32_t degree = 0;
  std::vector<std::int32_t> labels;      // signed step for each column
  std::vector<std::uint32_t> neighbour;  // vertices * degree
  std::size_t first_label = 0;           // column of the first non-identity generator, positive
};

CayleyAdjacency build_adjacency(const GroupSpec& g, const std::vector<GroupElement>& gens, std::uint64_t seed) {
  CayleyAdjacency adj;
  adj.vertices = static_cast<std::uint32_t>(g.order());
  std::vector<GroupElement> elems;
  for (std::size_t j = 0; j < gens.size(); ++j) {
    for (int sign : {1, -1}) {
      const GroupElement s = sign > 0 ? gens[j] : inv(g, gens[j]);
      if (s == identity() || std::find(elems.begin(), elems.end(), s) != elems.end()) continue;
      elems.push_back(s);
      adj.labels.push_back(sign * static_cast<std::int32_t>(j + 1));
    }
  }
  if (seed != 0 && adj.labels.size() > 1) {
    std::vector<std::size_t> perm(adj.labels.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::mt19937_64 rng(seed);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<GroupElement> e2;
    std::vector<std::int32_t> l2;
    for (std::size_t k : perm) {
      e2.push_back(elems[k]);
      l2.push_back(adj.labels[k]);
    }
    elems = std::move(e2);
    adj.labels = std::move(l2);
  }
  adj.degree = static_cast<std::uint32_t>(elems.size());
  if (!adj.labels.empty()) {
    // First non-identity generator, taken positively when possible.
    std::int32_t best = 0;
    for (std::size_t k = 0; k < adj.labels.size(); ++k) {
      const std::int32_t l = adj.labels[k];
      const std::int32_t b = best;
      if (best == 0 || std::abs(l) < std::abs(b) || (std::abs(l) == std::abs(b) && l > 0)) {
        best = l;
        adj.first_label = k;
      }
    }
  }
  adj.neighbour.resize(static_cast<std::size_t>(adj.vertices) * adj.degree);
  for (std::uint32_t v = 0; v < adj.vertices; ++v) {
    const GroupElement u = g.element_at(v);
    for (std::uint32_t k = 0; k < adj.degree; ++k) {
      adj.neighbour[static_cast<std::size_t>(v) * adj.degree + k] = static_cast<std::uint32_t>(g.index(mul(g, u, elems[k])));
    }
  }
  return adj;
}

class Backtracker {
 public:
  Backtracker(const CayleyAdjacency& adj, Heuristic heuristic)
      : adj_(adj),
        heuristic_(heuristic),
        visited_(adj.vertices, 0),
        avail_(adj.vertices, adj.degree),
        cand_(static_cast<std::size_t>(adj.vertices) * std::max<std::uint32_t>(adj.degree, 1)),
        ncand_(adj.vertices, 0),
        next_(adj.vertices, 0),
        mark_(adj.vertices, 0) {}

  // Returns found when `on_cycle` accepted a cycle, not_found when the tree is
  // exhausted or max_cycles were rejected, timeout past the deadline.
  template <typename OnCycle>
  SearchStatus run(Clock::time_point deadline, std::uint64_t max_nodes, std::uint64_t max_cycles, std::uint64_t& nodes,
                   OnCycle&& on_cycle) {
    const std::uint32_t total = adj_.vertices;
    const std::uint32_t start = 0;
    path_.assign(1, start);
    path_label_.assign(1, 0);
    visited_[start] = 1;
    if (total == 1) return SearchStatus::not_found;
    if (adj_.degree == 0) return SearchStatus::not_found;
    cand_[0] = static_cast<std::uint16_t>(adj_.first_label);
    ncand_[0] = 1;
    next_[0] = 0;
    std::uint64_t cycles = 0;

    while (true) {
      if ((++nodes & 0x3ff) == 0 && Clock::now() > deadline) return SearchStatus::timeout;
      if (nodes == max_nodes) return SearchStatus::timeout;
      const std::size_t depth = path_.size() - 1;
      const std::uint32_t u = path_.back();
      if (next_[depth] >= ncand_[depth]) {
        if (depth == 0) return SearchStatus::not_found;
        retreat();
        continue;
      }
      const std::uint16_t k = cand_[depth * adj_.degree + next_[depth]++];
      const std::uint32_t v = adj_.neighbour[static_cast<std::size_t>(u) * adj_.degree + k];
      if (visited_[v]) continue;
      advance(u, v, adj_.labels[k]);
      if (!survives(u) || !connected(v)) {
        retreat();
        continue;
      }
      if (path_.size() == total) {
        const std::int32_t closing = closing_label(v, start);
        if (closing != 0) {
          std::vector<std::int32_t> steps(path_label_.begin() + 1, path_label_.end());
          steps.push_back(closing);
          ++cycles;
          if (on_cycle(steps)) return SearchStatus::found;
          if (cycles >= max_cycles) return SearchStatus::not_found;
        }
        retreat();
        continue;
      }
      if (!order_candidates(v)) retreat();
    }
  }

 private:
  void advance(std::uint32_t u, std::uint32_t v, std::int32_t label) {
    if (u != path_.front()) {
      for (std::uint32_t k = 0; k < adj_.degree; ++k) --avail_[adj_.neighbour[static_cast<std::size_t>(u) * adj_.degree + k]];
    }
    visited_[v] = 1;
    path_.push_back(v);
    path_label_.push_back(label);
    const std::size_t depth = path_.size() - 1;
    ncand_[depth] = 0;
    next_[depth] = 0;
  }

  void retreat() {
    const std::uint32_t v = path_.back();
    path_.pop_back();
    path_label_.pop_back();
    visited_[v] = 0;
    const std::uint32_t u = path_.back();
    if (u != path_.front()) {
      for (std::uint32_t k = 0; k < adj_.degree; ++k) ++avail_[adj_.neighbour[static_cast<std::size_t>(u) * adj_.degree + k]];
    }
  }

  // After u became interior: every unvisited neighbour still needs two usable
  // neighbours, and the start still needs one for the closing edge.
  bool survives(std::uint32_t u) const {
    const std::uint32_t start = path_.front();
    if (u == start) return true;
    const bool complete = path_.size() == adj_.vertices;
    for (std::uint32_t k = 0; k < adj_.degree; ++k) {
      const std::uint32_t w = adj_.neighbour[static_cast<std::size_t>(u) * adj_.degree + k];
      if (!visited_[w] && avail_[w] < 2) return false;
      if (w == start && !complete && avail_[w] < 1) return false;
    }
    return true;
  }

  // The unvisited vertices must all be reachable from the endpoint v through
  // unvisited vertices, and one of them (or v) must touch the start. Checked at
  // every depth on small graphs and at every 16th depth otherwise.
  bool connected(std::uint32_t v) {
    const std::size_t remaining = adj_.vertices - path_.size();
    if (remaining == 0) return true;
    if (adj_.vertices > 512 && path_.size() % 16 != 0) return true;
    if (++epoch_ == 0) {
      std::fill(mark_.begin(), mark_.end(), 0);
      epoch_ = 1;
    }
    const std::uint32_t start = path_.front();
    bool touches_start = false;
    std::size_t reached = 0;
    queue_.assign(1, v);
    for (std::size_t h = 0; h < queue_.size(); ++h) {
      const std::uint32_t x = queue_[h];
      for (std::uint32_t k = 0; k < adj_.degree; ++k) {
        const std::uint32_t w = adj_.neighbour[static_cast<std::size_t>(x) * adj_.degree + k];
        if (w == start && x != v) touches_start = true;
        if (visited_[w] || mark_[w] == epoch_) continue;
        mark_[w] = epoch_;
        ++reached;
        queue_.push_back(w);
      }
    }
    return reached == remaining && touches_start;
  }

  std::int32_t closing_label(std::uint32_t v, std::uint32_t start) const {
    for (std::uint32_t k = 0; k < adj_.degree; ++k) {
      if (adj_.neighbour[static_cast<std::size_t>(v) * adj_.degree + k] == start) return adj_.labels[k];
    }
    return 0;
  }

  // Fills the candidate list for the new endpoint v. An unvisited neighbour with
  // exactly two usable neighbours must be entered from v next; two such
  // neighbours is a dead end.
  bool order_candidates(std::uint32_t v) {
    const std::size_t depth = path_.size() - 1;
    std::uint16_t* out = &cand_[depth * adj_.degree];
    std::uint16_t count = 0;
    int forced = -1;
    for (std::uint32_t k = 0; k < adj_.degree; ++k) {
      const std::uint32_t w = adj_.neighbour[static_cast<std::size_t>(v) * adj_.degree + k];
      if (visited_[w]) continue;
      if (avail_[w] == 2 && path_.size() + 1 < adj_.vertices) {
        if (forced >= 0 && adj_.neighbour[static_cast<std::size_t>(v) * adj_.degree + forced] != w) return false;
        forced = static_cast<int>(k);
      }
      out[count++] = static_cast<std::uint16_t>(k);
    }
    if (forced >= 0) {
      out[0] = static_cast<std::uint16_t>(forced);
      count = 1;
    } else if (heuristic_ == Heuristic::degree_order) {
      const std::uint32_t row = v * adj_.degree;
      std::stable_sort(out, out + count, [&](std::uint16_t a, std::uint16_t b) {
        return avail_[adj_.neighbour[row + a]] < avail_[adj_.neighbour[row + b]];
      });
    }
    ncand_[depth] = count;
    next_[depth] = 0;
    return count > 0;
  }

  const CayleyAdjacency& adj_;
  Heuristic heuristic_;
  std::vector<std::uint8_t> visited_;
  std::vector<std::uint32_t> avail_;
  std::vector<std::uint16_t> cand_;
  std::vector<std::uint16_t> ncand_;
  std::vector<std::uint16_t> next_;
  std::vector<std::uint32_t> mark_;
  std::uint32_t epoch_ = 0;
  std::vector<std::uint32_t> queue_;
  std::vector<std::uint32_t> path_;
  std::vector<std::int32_t> path_label_;
};

void check_search_input(const GroupSpec& g, const std::vector<GroupElement>& gens, const SearchConfig& cfg) {
  cfg.validate();
  for (const auto& s : gens) require_element(g, s);
  if (g.order() > cfg.max_vertices) {
    throw Error(ErrorKind::size_guard, "search: |G| = " + std::to_string(g.order()) + " exceeds max_vertices " +
                                           std::to_string(cfg.max_vertices));
  }
  if (gens.size() > 16000) throw Error(ErrorKind::invalid_input, "search: too many generators");
  if (!is_generating_set(g, gens)) throw Error(ErrorKind::not_generating, "search: A does not generate G");
}

SearchResult run_search(const GroupSpec& g, const std::vector<GroupElement>& gens, const SearchConfig& cfg,
                        const CycleVisitor& visit, std::uint64_t max_cycles) {
  const auto t0 = Clock::now();
  check_search_input(g, gens, cfg);
  const CayleyAdjacency adj = build_adjacency(g, gens, cfg.seed);
  Backtracker bt(adj, cfg.heuristic);
  SearchResult result;
  std::optional<GenWord> accepted;
  result.status = bt.run(t0 + cfg.timeout, cfg.max_nodes, max_cycles, result.nodes, [&](const std::vector<std::int32_t>& steps) {
    GenWord w{gens, steps};
    if (visit(w)) {
      accepted = std::move(w);
      return true;
    }
    return false;
  });
  result.word = std::move(accepted);
  result.elapsed = since(t0);
  return result;
}

// Per-quotient budget for the lifting front end.
constexpr std::uint64_t kCyclesPerRestart = 48;
constexpr int kRestartsPerQuotient = 32;

// Node budget of a restart: grows geometrically so an unlucky branch order
// is abandoned early but later restarts can still search deeply.
std::uint64_t restart_nodes(std::uint64_t order, int restart) {
  const std::uint64_t base = std::max<std::uint64_t>(20000, 40 * order);
  return base << std::min(restart / 4, 30);
}

}  // namespace

void SearchConfig::validate() const {
  if (timeout.count() <= 0) throw Error(ErrorKind::invalid_input, "search timeout must be positive");
  if (max_vertices > kMaxVerticesLimit) throw Error(ErrorKind::invalid_input, "max_vertices must be at most 2^20");
}

SearchConfig delegated_config() {
  SearchConfig cfg;
  cfg.timeout = std::chrono::seconds(60);
  return cfg;
}

std::string_view to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::found: return "found";
    case SearchStatus::not_found: return "not_found";
    case SearchStatus::timeout: return "timeout";
  }
  return "unknown";
}

SearchResult brute_force_ham(const GroupSpec& g, const std::vector<GroupElement>& gens, const SearchConfig& cfg) {
  const auto t0 = Clock::now();
  cfg.validate();
  const auto accept = [&](const GenWord& w) { return is_hamiltonian_cycle(g, w); };
  SearchResult r;
  if (cfg.max_nodes != 0) {
    r = run_search(g, gens, cfg, accept, 1);
  } else {
    // Restarts with reshuffled neighbour order and growing node budgets. One
    // that ends under its budget has exhausted the tree, so not_found is exact.
    std::uint64_t nodes = 0;
    for (int restart = 0;; ++restart) {
      SearchConfig sub = cfg;
      sub.timeout = std::max<std::chrono::milliseconds>(cfg.timeout - since(t0), std::chrono::milliseconds(1));
      sub.seed = cfg.seed + static_cast<std::uint64_t>(restart);
      sub.max_nodes = restart_nodes(g.order(), restart);
      r = run_search(g, gens, sub, accept, 1);
      nodes += r.nodes;
      if (r.status != SearchStatus::timeout || since(t0) >= cfg.timeout) break;
    }
    r.nodes = nodes;
    r.elapsed = since(t0);
  }
  if (r.status == SearchStatus::found && !is_hamiltonian_cycle(g, *r.word)) {
    throw Error(ErrorKind::theorem_violation, "brute_force_ham produced an invalid cycle");
  }
  return r;
}

SearchResult enumerate_ham_cycles(const GroupSpec& g, const std::vector<GroupElement>& gens, const SearchConfig& cfg,
                                  const CycleVisitor& visit, std::uint64_t max_cycles) {
  return run_search(g, gens, cfg, visit, max_cycles);
}

OracleResult find_hamiltonian_cycle(const GroupSpec& g, const std::vector<GroupElement>& gens,
                                    const SearchConfig& cfg) {
  const auto t0 = Clock::now();
  const auto deadline = t0 + cfg.timeout;
  cfg.validate();
  for (const auto& s : gens) require_element(g, s);
  if (g.order() <= kMaxVerifyOrder && !is_generating_set(g, gens)) {
    throw Error(ErrorKind::not_generating, "oracle: A does not generate G");
  }

  OracleResult out;
  const auto divs = arith::divisors(g.n());
  for (std::size_t di = 0; di + 1 < divs.size(); ++di) {
    const residue_t d = divs[di];
    const Quotient q = quotient_by_cyclic(g, {0, d});
    if (q.group.order() > cfg.max_vertices) break;
    const auto remaining = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - Clock::now());
    if (remaining.count() <= 1) break;
    const auto slice_end = Clock::now() + std::max<std::chrono::milliseconds>(remaining / 4, std::chrono::milliseconds(1));
    const std::vector<GroupElement> qgens = q.project(gens);
    const std::vector<residue_t> n_primes = arith::prime_factors(q.kernel_order);

    for (int restart = 0; restart < kRestartsPerQuotient && Clock::now() < slice_end; ++restart) {
      SearchConfig sub = cfg;
      sub.timeout = std::max<std::chrono::milliseconds>(
          std::chrono::duration_cast<std::chrono::milliseconds>(slice_end - Clock::now()), std::chrono::milliseconds(1));
      sub.seed = cfg.seed + static_cast<std::uint64_t>(restart);
      sub.max_nodes = restart_nodes(q.group.order(), restart);
      std::optional<GenWord> lifted;
      std::optional<VoltageRecord> record;
      enumerate_ham_cycles(q.group, qgens, sub, [&](const GenWord& qw) {
        const GenWord cycle{gens, qw.steps};
        const GroupElement v = voltage(g, cycle);
        if (!generates_cyclic(g, v, n_primes)) return false;
        lifted = fgl_lift(g, cycle, q.kernel_order);
        record = VoltageRecord{cycle, q.kernel_order, make_voltage(g, v, n_primes)};
        return true;
      }, kCyclesPerRestart);
      if (lifted) {
        out.status = SearchStatus::found;
        out.word = std::move(lifted);
        if (q.kernel_order > 1) out.voltage_record = std::move(record);
        out.elapsed = since(t0);
        return out;
      }
    }
  }

  const auto remaining = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - Clock::now());
  if (remaining.count() <= 0 || g.order() > cfg.max_vertices) {
    out.status = SearchStatus::timeout;
    out.elapsed = since(t0);
    return out;
  }
  SearchConfig sub = cfg;
  sub.timeout = remaining;
  SearchResult r = brute_force_ham(g, gens, sub);
  out.status = r.status;
  out.word = std::move(r.word);
  out.elapsed = since(t0);
  return out;
}

std::vector<GroupSpec> enumerate_groups(std::span<const residue_t> primes) {
  std::set<residue_t> distinct(primes.begin(), primes.end());
  if (distinct.size() != primes.size()) throw Error(ErrorKind::invalid_input, "enumerate_groups: primes must be distinct");
  for (residue_t l : primes) {
    if (!arith::is_prime(l) || l == 2) {
      throw Error(ErrorKind::invalid_input, "enumerate_groups: " + std::to_string(l) + " is not an odd prime");
    }
  }
  std::vector<GroupSpec> out;
  for (residue_t p : primes) {
    std::vector<residue_t> rest;
    for (residue_t l : distinct) {
      if (l != p) rest.push_back(l);
    }
    residue_t n = 1;
    for (residue_t l : rest) n *= l;

    // p-th roots of unity modulo each remaining prime.
    std::vector<std::vector<residue_t>> roots;
    for (residue_t l : rest) {
      std::vector<residue_t> rs{1};
      if ((l - 1) % p == 0) {
        const residue_t zeta = arith::powmod(arith::primitive_root(l), (l - 1) / p, l);
        residue_t cur = zeta;
        for (residue_t t = 1; t < p; ++t) {
          rs.push_back(cur);
          cur = arith::mulmod(cur, zeta, l);
        }
        std::sort(rs.begin(), rs.end());
      }
      roots.push_back(std::move(rs));
    }

    std::set<std::vector<residue_t>> canonical;
    std::vector<std::size_t> pos(rest.size(), 0);
    while (true) {
      std::vector<residue_t> vec(rest.size());
      for (std::size_t j = 0; j < rest.size(); ++j) vec[j] = roots[j][pos[j]];
      std::vector<residue_t> best = vec;
      for (residue_t t = 2; t < p; ++t) {
        std::vector<residue_t> alt(rest.size());
        for (std::size_t j = 0; j < rest.size(); ++j) alt[j] = arith::powmod(vec[j], t, rest[j]);
        best = std::min(best, alt);
      }
      canonical.insert(best);
      std::size_t j = 0;
      while (j < rest.size() && ++pos[j] == roots[j].size()) pos[j++] = 0;
      if (j == rest.size()) break;
    }
    for (const auto& vec : canonical) {
      CrtComponents c;
      for (std::size_t j = 0; j < rest.size(); ++j) c.residues.emplace(rest[j], vec[j]);
      const residue_t alpha = n == 1 ? 1 : crt_recombine(c);
      out.emplace_back(p, n, alpha);
    }
  }
  return out;
}

CrossValidation cross_validate(const GroupSpec& g, const std::vector<GroupElement>& gens, const HamCertificate& cert,
                               const SearchConfig& cfg) {
  CrossValidation report;
  auto t0 = Clock::now();
  if (!(cert.group == g) || cert.word.gens != gens) {
    report.certificate_diagnostic = "certificate is for a different group or generating set";
  } else {
    const CycleCheck check = check_hamiltonian_cycle(g, cert.word);
    report.certificate_ok = check.ok();
    report.certificate_diagnostic = check.describe();
  }
  report.certificate_millis = since(t0);
  if (g.order() > kCrossValidateMaxOrder) return report;

  report.search_ran = true;
  t0 = Clock::now();
  const SearchResult r = brute_force_ham(g, gens, cfg);
  report.search_millis = since(t0);
  report.search_status = r.status;
  if (r.status == SearchStatus::timeout) {
    throw Error(ErrorKind::oracle_timeout, "cross_validate: brute-force search timed out");
  }
  report.search_ok = r.status == SearchStatus::found && is_hamiltonian_cycle(g, *r.word);
  return report;
}

}  // namespace hamcay
