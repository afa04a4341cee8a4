#include "hamcay/cayley.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "hamcay/error.hpp"

namespace hamcay {

GroupElement step_element(const GroupSpec& g, const std::vector<GroupElement>& gens, std::int32_t step) {
  const std::int64_t idx = step < 0 ? -static_cast<std::int64_t>(step) : step;
  if (step == 0 || idx > static_cast<std::int64_t>(gens.size())) {
    throw Error(ErrorKind::invalid_input, "word step " + std::to_string(step) + " out of range");
  }
  const GroupElement s = gens[static_cast<std::size_t>(idx - 1)];
  return step > 0 ? s : inv(g, s);
}

void validate_word(const GroupSpec& g, const GenWord& w) {
  for (const auto& s : w.gens) require_element(g, s);
  for (std::int32_t step : w.steps) (void)step_element(g, w.gens, step);
}

std::vector<GroupElement> eval_walk(const GroupSpec& g, GroupElement start, const GenWord& w) {
  require_element(g, start);
  validate_word(g, w);
  std::vector<GroupElement> walk;
  walk.reserve(w.size() + 1);
  walk.push_back(start);
  for (std::int32_t step : w.steps) walk.push_back(mul(g, walk.back(), step_element(g, w.gens, step)));
  return walk;
}

GenWord reversed_inverse(const GenWord& w) {
  GenWord out{w.gens, {}};
  out.steps.reserve(w.size());
  for (auto it = w.steps.rbegin(); it != w.steps.rend(); ++it) out.steps.push_back(-*it);
  return out;
}

GenWord rotate(const GenWord& w, std::size_t shift) {
  GenWord out = w;
  if (!out.steps.empty()) {
    std::rotate(out.steps.begin(), out.steps.begin() + static_cast<std::ptrdiff_t>(shift % out.size()),
                out.steps.end());
  }
  return out;
}

std::string CycleCheck::describe() const {
  std::ostringstream os;
  switch (verdict) {
    case Verdict::ok:
      os << "ok";
      break;
    case Verdict::length_mismatch:
      os << "length mismatch";
      break;
    case Verdict::bad_step:
      os << "bad step at index " << position;
      break;
    case Verdict::revisit:
      os << "revisited vertex (" << vertex.i << "," << vertex.x << ") at walk index " << position;
      break;
    case Verdict::wrong_endpoint:
      os << "wrong endpoint (" << vertex.i << "," << vertex.x << ")";
      break;
  }
  return os.str();
}

CycleCheck check_hamiltonian_cycle(const GroupSpec& g, const GenWord& w) {
  using Verdict = CycleCheck::Verdict;
  for (const auto& s : w.gens) require_element(g, s);
  const std::uint64_t order = g.order();
  if (order > kMaxVerifyOrder) throw Error(ErrorKind::size_guard, "group too large to verify");
  if (w.size() != order) return {Verdict::length_mismatch, w.size(), {}};

  std::vector<GroupElement> signed_gens;  // index (j - 1) * 2 + (step < 0)
  signed_gens.reserve(w.gens.size() * 2);
  for (const auto& s : w.gens) {
    signed_gens.push_back(s);
    signed_gens.push_back(inv(g, s));
  }

  std::vector<bool> seen(order, false);
  GroupElement cur = identity();
  seen[0] = true;
  for (std::size_t t = 0; t < w.size(); ++t) {
    const std::int32_t step = w.steps[t];
    const std::int64_t idx = step < 0 ? -static_cast<std::int64_t>(step) : step;
    if (step == 0 || idx > static_cast<std::int64_t>(w.gens.size())) return {Verdict::bad_step, t, cur};
    cur = mul(g, cur, signed_gens[static_cast<std::size_t>((idx - 1) * 2 + (step < 0 ? 1 : 0))]);
    if (t + 1 == w.size()) break;
    const std::uint64_t k = g.index(cur);
    if (seen[k]) return {Verdict::revisit, t + 1, cur};
    seen[k] = true;
  }
  if (cur != identity()) return {Verdict::wrong_endpoint, w.size(), cur};
  return {};
}

bool is_hamiltonian_cycle(const GroupSpec& g, const GenWord& w) { return check_hamiltonian_cycle(g, w).ok(); }

std::string export_dot(const GroupSpec& g, const std::vector<GroupElement>& gens) {
  if (g.order() > kMaxDotOrder) {
    throw Error(ErrorKind::size_guard, "export_dot: |G| = " + std::to_string(g.order()) + " exceeds " +
                                           std::to_string(kMaxDotOrder));
  }
  for (const auto& s : gens) require_element(g, s);
  std::set<std::pair<std::uint64_t, std::uint64_t>> edges;
  for (std::uint64_t v = 0; v < g.order(); ++v) {
    const GroupElement u = g.element_at(v);
    for (const auto& s : gens) {
      const std::uint64_t w = g.index(mul(g, u, s));
      if (w != v) edges.emplace(std::min(v, w), std::max(v, w));
    }
  }
  std::ostringstream os;
  os << "graph cayley {\n";
  for (std::uint64_t v = 0; v < g.order(); ++v) {
    const GroupElement u = g.element_at(v);
    os << "  " << v << " [label=\"" << u.i << "," << u.x << "\"];\n";
  }
  for (const auto& [a, b] : edges) os << "  " << a << " -- " << b << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace hamcay
