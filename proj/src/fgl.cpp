#include "hamcay/fgl.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "hamcay/arith.hpp"
#include "hamcay/error.hpp"
#include "hamcay/search.hpp"

namespace hamcay {

namespace {

std::vector<residue_t> primes_dividing(const GroupSpec& g, residue_t order) {
  std::vector<residue_t> out;
  for (residue_t l : g.prime_factors_n()) {
    if (order % l == 0) out.push_back(l);
  }
  return out;
}

[[noreturn]] void precondition(const std::string& what) { throw Error(ErrorKind::precondition, what); }

GenWord repeat_word(const GenWord& w, residue_t times) {
  GenWord out{w.gens, {}};
  out.steps.reserve(w.size() * times);
  for (residue_t t = 0; t < times; ++t) out.steps.insert(out.steps.end(), w.steps.begin(), w.steps.end());
  return out;
}

// Upper bound on (m + 1) * d cells of the coset-snake feasibility table.
constexpr std::uint64_t kMaxSnakeTable = std::uint64_t{1} << 26;
constexpr int kSnakeSamples = 64;

}  // namespace

GroupElement voltage(const GroupSpec& g, const GenWord& w) {
  validate_word(g, w);
  GroupElement v = identity();
  for (std::int32_t step : w.steps) v = mul(g, v, step_element(g, w.gens, step));
  return v;
}

Voltage make_voltage(const GroupSpec& g, GroupElement v, std::span<const residue_t> n_primes) {
  (void)g;
  return Voltage{v, crt_decompose(n_primes, v.x)};
}

GroupElement cyclic_subgroup_generator(const GroupSpec& g, residue_t order) {
  if (order == 0 || g.n() % order != 0) {
    throw Error(ErrorKind::invalid_input, "no subgroup of order " + std::to_string(order) + " in C_" +
                                              std::to_string(g.n()));
  }
  return {0, (g.n() / order) % g.n()};
}

bool generates_cyclic(const GroupSpec& g, GroupElement v, std::span<const residue_t> n_primes) {
  require_element(g, v);
  residue_t order = 1;
  for (residue_t l : n_primes) {
    if (g.n() % l != 0 || !arith::is_prime(l)) {
      throw Error(ErrorKind::invalid_input, "generates_cyclic: " + std::to_string(l) + " is not a prime factor of n");
    }
    order *= l;
  }
  if (v.i != 0 || v.x % (g.n() / order) != 0) {
    throw Error(ErrorKind::invalid_input, "generates_cyclic: element lies outside N");
  }
  return std::all_of(n_primes.begin(), n_primes.end(), [&](residue_t l) { return v.x % l != 0; });
}

GenWord fgl_lift(const GroupSpec& g, const GenWord& quotient_cycle, residue_t n_order) {
  validate_word(g, quotient_cycle);
  const GroupElement n_gen = cyclic_subgroup_generator(g, n_order);
  const Quotient q = quotient_by_cyclic(g, n_gen);
  const GenWord projected{q.project(quotient_cycle.gens), quotient_cycle.steps};
  const CycleCheck qc = check_hamiltonian_cycle(q.group, projected);
  if (!qc.ok()) precondition("fgl_lift: quotient cycle is not hamiltonian in G/N (" + qc.describe() + ")");

  const GroupElement v = voltage(g, quotient_cycle);
  const auto n_primes = primes_dividing(g, n_order);
  if (!generates_cyclic(g, v, n_primes)) {
    std::ostringstream os;
    os << "fgl_lift: voltage (" << v.i << "," << v.x << ") does not generate N of order " << n_order;
    precondition(os.str());
  }

  GenWord lifted = repeat_word(quotient_cycle, n_order);
  const CycleCheck check = check_hamiltonian_cycle(g, lifted);
  if (!check.ok()) throw Error(ErrorKind::theorem_violation, "fgl_lift: lifted word failed verification: " + check.describe());
  return lifted;
}

std::optional<LiftOutcome> coset_snake_lift(const GroupSpec& g, const std::vector<GroupElement>& gens,
                                            std::size_t b_index, const GenWord& quotient_cycle) {
  const GroupElement b = gens.at(b_index);
  if (b.i != 0 || b.x == 0) return std::nullopt;
  const residue_t n = g.n();
  const residue_t h = std::gcd(b.x, n);
  const residue_t nb = n / h;  // |b|
  const std::size_t m = quotient_cycle.size();

  // Prefix products g_0 = e, g_j = s_1 ... s_j. Conjugation by g_j scales the
  // exponent of b by alpha^(-i_j); g_m = b^c0.
  std::vector<residue_t> theta(m);
  GroupElement prefix = identity();
  for (std::size_t j = 0; j < m; ++j) {
    theta[j] = g.alpha_pow(arith::negmod(prefix.i, g.p())) % nb;
    prefix = mul(g, prefix, step_element(g, gens, quotient_cycle.steps[j]));
  }
  if (prefix.i != 0 || prefix.x % h != 0) return std::nullopt;
  const residue_t unit = (b.x / h) % nb;
  const residue_t c0 = arith::mulmod((prefix.x / h) % nb, arith::invmod(unit, nb), nb);

  const auto b_step = static_cast<std::int32_t>(b_index + 1);
  std::mt19937_64 rng(0x5eed5eedULL);

  for (residue_t d : arith::divisors(nb)) {
    if (d == 1) continue;
    if (static_cast<std::uint64_t>(m + 1) * d > kMaxSnakeTable) break;
    // Walking b^(eps (d-1)) is b^(-eps) in G/<b^d>. feasible[j * d + r]: from
    // partial sum r before step j, the walk can still close.
    const residue_t target = arith::negmod(c0 % d, d);
    std::vector<std::uint8_t> feasible((m + 1) * d, 0);
    feasible[m * d + target] = 1;
    for (std::size_t j = m; j-- > 0;) {
      const residue_t t = theta[j] % d;
      for (residue_t r = 0; r < d; ++r) {
        const residue_t plus = arith::submod(r, t, d);  // eps = +1 contributes -theta
        const residue_t minus = (r + t) % d;
        feasible[j * d + r] = feasible[(j + 1) * d + plus] | feasible[(j + 1) * d + minus];
      }
    }
    if (!feasible[0]) continue;

    const residue_t lift_order = nb / d;
    const auto lift_primes = primes_dividing(g, lift_order);
    for (int sample = 0; sample < kSnakeSamples; ++sample) {
      std::vector<int> eps(m);
      residue_t r = 0;
      residue_t e_total = c0;  // exponent of b in the voltage, mod |b|
      for (std::size_t j = 0; j < m; ++j) {
        const residue_t t = theta[j] % d;
        const residue_t plus = arith::submod(r, t, d);
        const residue_t minus = (r + t) % d;
        const bool can_plus = feasible[(j + 1) * d + plus] != 0;
        const bool can_minus = feasible[(j + 1) * d + minus] != 0;
        const bool pick_plus = can_plus && (!can_minus || (rng() & 1));
        eps[j] = pick_plus ? 1 : -1;
        r = pick_plus ? plus : minus;
        const residue_t contrib = arith::mulmod((d - 1) % nb, theta[j], nb);
        e_total = pick_plus ? (e_total + contrib) % nb : arith::submod(e_total, contrib, nb);
      }
      const bool generates = std::all_of(lift_primes.begin(), lift_primes.end(),
                                         [&](residue_t l) { return e_total % l != 0; });
      if (!generates) continue;

      GenWord snake{gens, {}};
      snake.steps.reserve(m * d);
      for (std::size_t j = 0; j < m; ++j) {
        for (residue_t t = 0; t + 1 < d; ++t) snake.steps.push_back(eps[j] * b_step);
        snake.steps.push_back(quotient_cycle.steps[j]);
      }
      LiftOutcome out;
      out.word = fgl_lift(g, snake, lift_order);
      out.strategy = "coset-snake";
      out.voltage = make_voltage(g, voltage(g, snake), lift_primes);
      out.lifted_cycle = std::move(snake);
      out.subgroup_order = lift_order;
      return out;
    }
  }
  return std::nullopt;
}

LiftOutcome normal_easy_lift(const GroupSpec& g, const std::vector<GroupElement>& gens, GroupElement b,
                             const GenWord& quotient_cycle, const SearchConfig& cfg) {
  for (const auto& s : gens) require_element(g, s);
  require_element(g, b);
  if (quotient_cycle.gens != gens) throw Error(ErrorKind::invalid_input, "normal_easy_lift: quotient cycle must be a word over A");
  validate_word(g, quotient_cycle);
  const auto it = std::find(gens.begin(), gens.end(), b);
  if (it == gens.end()) precondition("normal_easy_lift: b is not in A");
  const auto b_index = static_cast<std::size_t>(it - gens.begin());
  if (b.i != 0) precondition("normal_easy_lift: <b> is not inside the cyclic normal subgroup");

  const Quotient q = quotient_by_cyclic(g, b);
  const CycleCheck qc = check_hamiltonian_cycle(q.group, GenWord{q.project(gens), quotient_cycle.steps});
  if (!qc.ok()) precondition("normal_easy_lift: quotient cycle is not hamiltonian in G/<b> (" + qc.describe() + ")");

  const SubgroupDescriptor z = centre(g);
  const auto b_primes = support(g, b.x);
  for (residue_t l : b_primes) {
    if (z.cyclic_order % l == 0) precondition("normal_easy_lift: <b> meets the centre (prime " + std::to_string(l) + ")");
  }

  const residue_t nb = element_order(g, b);
  LiftOutcome out;
  out.subgroup_order = nb;

  const GroupElement v = voltage(g, quotient_cycle);
  if (generates_cyclic(g, v, b_primes)) {
    out.word = fgl_lift(g, quotient_cycle, nb);
    out.strategy = "direct";
    out.voltage = make_voltage(g, v, b_primes);
    out.lifted_cycle = quotient_cycle;
    return out;
  }

  if (auto snake = coset_snake_lift(g, gens, b_index, quotient_cycle)) return *std::move(snake);

  OracleResult found = find_hamiltonian_cycle(g, gens, cfg);
  if (found.status != SearchStatus::found || !found.word) {
    throw Error(ErrorKind::oracle_timeout, "normal_easy_lift: every strategy exhausted (oracle " +
                                               std::string(to_string(found.status)) + ")");
  }
  out.word = *std::move(found.word);
  out.strategy = "oracle";
  if (found.voltage_record) {
    out.voltage = found.voltage_record->voltage;
    out.lifted_cycle = found.voltage_record->quotient_cycle;
    out.subgroup_order = found.voltage_record->subgroup_order;
  } else {
    out.voltage.reset();
    out.subgroup_order = 1;
  }
  return out;
}

}  // namespace hamcay
