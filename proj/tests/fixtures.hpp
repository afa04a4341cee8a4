#pragma once

// Instance factories shared by the test binaries.

#include <algorithm>
#include <optional>
#include <random>
#include <vector>

#include "hamcay/cayley.hpp"
#include "hamcay/group.hpp"
#include "hamcay/search.hpp"
#include "oracles.hpp"

namespace fixtures {

using hamcay::GroupElement;
using hamcay::GroupSpec;
using hamcay::residue_t;

inline bool prime(residue_t v) {
  if (v < 2) return false;
  for (residue_t d = 2; d * d <= v; ++d) {
    if (v % d == 0) return false;
  }
  return true;
}

inline bool square_free(residue_t v) {
  for (residue_t d = 2; d * d <= v; ++d) {
    if (v % (d * d) == 0) return false;
  }
  return true;
}

inline residue_t gcd(residue_t a, residue_t b) { return b == 0 ? a : gcd(b, a % b); }

// Every (p, n, alpha) with p * n < bound, alpha a p-th root of unity mod n,
// one alpha per orbit under alpha -> alpha^t (the smallest residue).
inline std::vector<GroupSpec> small_groups(residue_t bound, bool odd_only) {
  std::vector<GroupSpec> out;
  for (residue_t p = 2; p < bound; ++p) {
    if (!prime(p) || (odd_only && p == 2)) continue;
    for (residue_t n = 1; p * n < bound; ++n) {
      if (!square_free(n) || gcd(p, n) != 1 || (odd_only && n % 2 == 0)) continue;
      if (n == 1) {
        out.emplace_back(p, 1, 1);
        continue;
      }
      for (residue_t alpha = 1; alpha < n; ++alpha) {
        if (oracle::slow_pow(alpha, p, n) != 1) continue;
        bool smallest = true;
        for (residue_t t = 2; t < p && smallest; ++t) smallest = oracle::slow_pow(alpha, t, n) >= alpha;
        if (smallest) out.emplace_back(p, n, alpha);
      }
    }
  }
  return out;
}

// Smallest nontrivial p-th root of unity mod the prime l (requires p | l - 1).
inline residue_t root_of_unity(residue_t p, residue_t l) {
  for (residue_t z = 2; z < l; ++z) {
    if (oracle::slow_pow(z, p, l) == 1) return z;
  }
  return 1;
}

inline residue_t inverse_mod(residue_t a, residue_t m) {
  for (residue_t t = 1; t < m; ++t) {
    if (a * t % m == 1) return t;
  }
  return 0;
}

// GroupSpec(p, qrs) with alpha nontrivial mod each of q, r, s.
inline GroupSpec full_twist(residue_t p, residue_t q, residue_t r, residue_t s) {
  return GroupSpec(p, q * r * s,
                   oracle::crt_scan({{q, root_of_unity(p, q)}, {r, root_of_unity(p, r)}, {s, root_of_unity(p, s)}}));
}

struct Instance {
  GroupSpec group;
  std::vector<GroupElement> gens;
};

// A = {a, a^k gamma, a^ell gamma'} with |gamma| = qr and |gamma'| = rs. gamma'
// mod r is chosen so that <b, c> also misses a prime, which keeps A irredundant.
inline Instance case3_instance(residue_t p, residue_t q, residue_t r, residue_t s, residue_t k, residue_t ell) {
  const GroupSpec g = full_twist(p, q, r, s);
  const residue_t ar = g.alpha() % r;
  const residue_t num = (oracle::slow_pow(ar, ell, r) + r - 1) % r;
  const residue_t den = (oracle::slow_pow(ar, k, r) + r - 1) % r;
  const residue_t gamma = oracle::crt_scan({{q, 1}, {r, 1}, {s, 0}});
  const residue_t gamma2 = oracle::crt_scan({{q, 0}, {r, num * inverse_mod(den, r) % r}, {s, 1}});
  return {g, {{1, 0}, {k, gamma}, {ell, gamma2}}};
}

// A group, the order of a subgroup N of C_n, and a closed word over A whose
// image is a hamiltonian cycle of G/N. The quotient cycle comes from the
// search and is re-checked with the oracle walk; the voltage class is decided
// by oracle arithmetic, so `generating` does not depend on the library.
struct FglTriple {
  GroupSpec group;
  residue_t n_order;
  hamcay::GenWord cycle;
  bool generating;
};

inline std::vector<residue_t> prime_divisors(residue_t v) {
  std::vector<residue_t> out;
  for (residue_t d = 2; d <= v; ++d) {
    if (v % d == 0 && prime(d)) out.push_back(d);
  }
  return out;
}

inline std::vector<FglTriple> fgl_triples(std::size_t count, bool generating, std::uint64_t seed,
                                          residue_t bound = 5001) {
  std::vector<GroupSpec> groups;
  for (const auto& g : small_groups(bound, false)) {
    if (g.n() > 1) groups.push_back(g);
  }
  std::mt19937_64 rng(seed);
  std::vector<FglTriple> out;
  while (out.size() < count) {
    const GroupSpec g = groups[rng() % groups.size()];
    std::vector<residue_t> divs;
    for (residue_t d = 2; d <= g.n(); ++d) {
      if (g.n() % d == 0) divs.push_back(d);
    }
    const residue_t m = divs[rng() % divs.size()];
    const residue_t nq = g.n() / m;
    const GroupSpec q(g.p(), nq, nq == 1 ? 1 : g.alpha() % nq);
    std::vector<GroupElement> qgens{{1, rng() % nq}};
    if (nq > 1) qgens.push_back({rng() % g.p(), 1});
    if (!hamcay::is_generating_set(q, qgens)) continue;

    hamcay::SearchConfig cfg;
    cfg.timeout = std::chrono::milliseconds(2000);
    const auto found = hamcay::brute_force_ham(q, qgens, cfg);
    if (found.status != hamcay::SearchStatus::found) continue;

    const oracle::AffineGroup oq(q.p(), q.n(), q.alpha());
    std::vector<oracle::Pair> op, oi;
    for (const auto& s : qgens) {
      op.push_back({s.i, s.x});
      oi.push_back(oq.inverse({s.i, s.x}));
    }
    if (oracle::walk_diagnostic(q.order(), op, found.word->steps, oi,
                                [&](oracle::Pair u, oracle::Pair v) { return oq.multiply(u, v); }) != "ok") {
      continue;
    }

    // Lift each quotient generator (i, x') to (i, x' + nq t) and keep the
    // first choice whose voltage lands in the requested class.
    const oracle::AffineGroup og(g.p(), g.n(), g.alpha());
    const auto n_primes = prime_divisors(m);
    for (int attempt = 0; attempt < 64; ++attempt) {
      std::vector<GroupElement> gens;
      for (const auto& s : qgens) gens.push_back({s.i, s.x + nq * (rng() % m)});
      oracle::Pair v{0, 0};
      for (std::int32_t step : found.word->steps) {
        const auto& s = gens[static_cast<std::size_t>(std::abs(step)) - 1];
        v = og.multiply(v, step > 0 ? oracle::Pair{s.i, s.x} : og.inverse({s.i, s.x}));
      }
      bool gen = v.first == 0;
      for (residue_t l : n_primes) gen = gen && v.second % l != 0;
      if (gen != generating) continue;
      out.push_back({g, m, hamcay::GenWord{gens, found.word->steps}, generating});
      break;
    }
  }
  return out;
}

}  // namespace fixtures
