#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "hamcay/cayley.hpp"
#include "hamcay/error.hpp"
#include "hamcay/fgl.hpp"
#include "hamcay/group.hpp"
#include "hamcay/search.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace hamcay;

namespace {

const GroupSpec kG21(3, 7, 2);

oracle::Pair as_pair(GroupElement u) { return {u.i, u.x}; }

bool oracle_hamiltonian(const GroupSpec& g, const GenWord& w) {
  const oracle::AffineGroup og(g.p(), g.n(), g.alpha());
  std::vector<oracle::Pair> gens, invs;
  for (const auto& s : w.gens) {
    gens.push_back(as_pair(s));
    invs.push_back(og.inverse(as_pair(s)));
  }
  return oracle::walk_diagnostic(g.order(), gens, w.steps, invs,
                                 [&](oracle::Pair u, oracle::Pair v) { return og.multiply(u, v); }) == "ok";
}

std::set<GroupElement> vertex_set(const GroupSpec& g, const GenWord& w) {
  const auto walk = eval_walk(g, identity(), w);
  return {walk.begin(), walk.end()};
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::invalid_input;
}

const std::vector<residue_t> k1729{7, 13, 19};

GroupSpec g1729() { return fixtures::full_twist(3, 7, 13, 19); }

}  // namespace

TEST_CASE("voltage examples") {
  CHECK(voltage(kG21, GenWord{{{1, 0}, {1, 1}}, {}}) == identity());
  CHECK(voltage(kG21, GenWord{{{1, 0}, {1, 1}}, {2, -2}}) == identity());
  CHECK(voltage(kG21, GenWord{{{1, 0}, {1, 1}}, {1, -1}}) == identity());
  CHECK(voltage(kG21, GenWord{{{1, 0}, {1, 1}}, {2, 2, 1}}) == GroupElement{0, 6});
}

TEST_CASE("voltage equals the walk endpoint") {
  std::mt19937_64 rng(5);
  for (const auto& g : fixtures::small_groups(300, true)) {
    const oracle::AffineGroup og(g.p(), g.n(), g.alpha());
    const std::vector<GroupElement> gens{{1, 0}, {0, 1 % g.n()}, {g.p() - 1, 2 % g.n()}};
    GenWord w{gens, {}};
    for (int t = 0; t < 25; ++t) {
      const auto j = static_cast<std::int32_t>(1 + rng() % 3);
      w.steps.push_back(rng() % 2 ? j : -j);
    }
    oracle::Pair v{0, 0};
    for (auto step : w.steps) {
      const auto s = as_pair(gens[static_cast<std::size_t>(std::abs(step)) - 1]);
      v = og.multiply(v, step > 0 ? s : og.inverse(s));
    }
    CHECK(as_pair(voltage(g, w)) == v);
    CHECK(voltage(g, w) == eval_walk(g, identity(), w).back());
  }
}

TEST_CASE("make_voltage projections") {
  const GroupSpec g = g1729();
  const Voltage v = make_voltage(g, {0, 100}, k1729);
  CHECK(v.projections.residues == std::map<residue_t, residue_t>{{7, 2}, {13, 9}, {19, 5}});
}

TEST_CASE("generates_cyclic examples") {
  CHECK_FALSE(generates_cyclic(kG21, identity(), std::vector<residue_t>{7}));
  CHECK(generates_cyclic(kG21, {0, 6}, std::vector<residue_t>{7}));

  const GroupSpec g = g1729();
  CHECK_FALSE(generates_cyclic(g, {0, 91}, k1729));
  CHECK(generates_cyclic(g, {0, 2}, k1729));
  CHECK(generates_cyclic(g, {0, 91}, std::vector<residue_t>{19}));
  CHECK_FALSE(generates_cyclic(g, {0, 7 * 13 * 2}, std::vector<residue_t>{19, 13}) );

  CHECK(kind_of([&] { generates_cyclic(g, {1, 0}, k1729); }) == ErrorKind::invalid_input);
  CHECK(kind_of([&] { generates_cyclic(g, {0, 1}, std::vector<residue_t>{7}); }) == ErrorKind::invalid_input);
  CHECK(kind_of([&] { generates_cyclic(g, {0, 1}, std::vector<residue_t>{11}); }) == ErrorKind::invalid_input);
}

TEST_CASE("fgl_lift examples") {
  // C_15 with a single generator: the quotient C_3 cycle (1,1,1) lifts five times.
  const GroupSpec c15(3, 5, 1);
  const GenWord q{{{1, 1}}, {1, 1, 1}};
  const GenWord lifted = fgl_lift(c15, q, 5);
  CHECK(lifted.steps == std::vector<std::int32_t>(15, 1));
  CHECK(oracle_hamiltonian(c15, lifted));
  CHECK(kind_of([] { GroupSpec(3, 3, 1); }) == ErrorKind::invalid_group);

  const GenWord w{{{1, 0}, {1, 1}}, {2, 2, 1}};
  const GenWord big = fgl_lift(kG21, w, 7);
  CHECK(big.size() == 21);
  CHECK(oracle_hamiltonian(kG21, big));

  CHECK(kind_of([&] { fgl_lift(kG21, GenWord{{{1, 0}}, {1, 1, 1}}, 7); }) == ErrorKind::precondition);
  CHECK(kind_of([&] { fgl_lift(kG21, GenWord{{{1, 0}, {1, 1}}, {2, 2}}, 7); }) == ErrorKind::precondition);
  CHECK(kind_of([&] { fgl_lift(kG21, GenWord{{{1, 0}, {1, 1}}, {2, 2, 1}}, 5); }) == ErrorKind::invalid_input);
}

TEST_CASE("fgl_lift on random triples") {
  for (const auto& t : fixtures::fgl_triples(25, true, 101, 1500)) {
    const GenWord lifted = fgl_lift(t.group, t.cycle, t.n_order);
    CHECK(lifted.size() == t.group.order());
    CHECK(oracle_hamiltonian(t.group, lifted));
  }
  for (const auto& t : fixtures::fgl_triples(25, false, 202, 1500)) {
    CHECK(kind_of([&] { fgl_lift(t.group, t.cycle, t.n_order); }) == ErrorKind::precondition);
    GenWord repeated{t.cycle.gens, {}};
    for (residue_t k = 0; k < t.n_order; ++k) {
      repeated.steps.insert(repeated.steps.end(), t.cycle.steps.begin(), t.cycle.steps.end());
    }
    CHECK_FALSE(oracle_hamiltonian(t.group, repeated));
  }
}

TEST_CASE("generation by the voltage is rotation invariant") {
  for (bool gen : {true, false}) {
    for (const auto& t : fixtures::fgl_triples(10, gen, 303 + gen, 800)) {
      std::vector<residue_t> primes;
      for (residue_t l : t.group.prime_factors_n()) {
        if (t.n_order % l == 0) primes.push_back(l);
      }
      for (std::size_t s = 0; s < t.cycle.size(); ++s) {
        const GroupElement v = voltage(t.group, rotate(t.cycle, s));
        CHECK(generates_cyclic(t.group, v, primes) == gen);
      }
    }
  }
}

TEST_CASE("inverting a generator keeps the vertex set") {
  std::mt19937_64 rng(9);
  for (const auto& g : fixtures::small_groups(200, true)) {
    std::vector<GroupElement> gens{{1, 0}, {0, 1 % g.n()}, {1, g.n() - 1}};
    GenWord w{gens, {}};
    for (int t = 0; t < 30; ++t) {
      const auto j = static_cast<std::int32_t>(1 + rng() % 3);
      w.steps.push_back(rng() % 2 ? j : -j);
    }
    const std::size_t flip = rng() % gens.size();
    GenWord w2 = w;
    w2.gens[flip] = inv(g, gens[flip]);
    for (auto& step : w2.steps) {
      if (static_cast<std::size_t>(std::abs(step)) == flip + 1) step = -step;
    }
    CHECK(vertex_set(g, w) == vertex_set(g, w2));
  }
}

TEST_CASE("normal_easy_lift examples") {
  const std::vector<GroupElement> gens{{1, 0}, {0, 1}};
  const GenWord q{gens, {1, 1, 1}};
  const LiftOutcome out = normal_easy_lift(kG21, gens, {0, 1}, q, SearchConfig{});
  CHECK(out.word.size() == 21);
  CHECK(out.word.gens == gens);
  CHECK(oracle_hamiltonian(kG21, out.word));
  CHECK(out.strategy == "coset-snake");

  // alpha = 16 is trivial mod 5, so (0, 7) is central
  const GroupSpec g35(3, 35, 16);
  REQUIRE(centre(g35).cyclic_order == 5);
  const std::vector<GroupElement> a35{{1, 0}, {0, 7}, {0, 5}};
  const Quotient q35 = quotient_by_cyclic(g35, {0, 7});
  const auto q35_cycle = brute_force_ham(q35.group, q35.project(a35), SearchConfig{});
  REQUIRE(q35_cycle.status == SearchStatus::found);
  try {
    normal_easy_lift(g35, a35, {0, 7}, GenWord{a35, q35_cycle.word->steps}, SearchConfig{});
    FAIL("central b accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::precondition);
    CHECK(std::string(e.what()).find("centre") != std::string::npos);
  }

  CHECK(kind_of([&] { normal_easy_lift(kG21, gens, {0, 1}, GenWord{gens, {1, 1}}, SearchConfig{}); }) ==
        ErrorKind::precondition);
  CHECK(kind_of([&] { normal_easy_lift(kG21, gens, {0, 2}, q, SearchConfig{}); }) == ErrorKind::precondition);
  CHECK(kind_of([&] { normal_easy_lift(kG21, {{1, 0}, {1, 1}}, {1, 1}, GenWord{{{1, 0}, {1, 1}}, {1, 1, 1}},
                                       SearchConfig{}); }) == ErrorKind::precondition);
}

TEST_CASE("normal_easy_lift takes the direct lift when the voltage generates") {
  const std::vector<GroupElement> gens{{1, 0}, {1, 1}, {0, 1}};
  const LiftOutcome out = normal_easy_lift(kG21, gens, {0, 1}, GenWord{gens, {2, 2, 1}}, SearchConfig{});
  CHECK(out.strategy == "direct");
  CHECK(oracle_hamiltonian(kG21, out.word));
  REQUIRE(out.voltage);
  CHECK(out.voltage->element == GroupElement{0, 6});
}

TEST_CASE("normal_easy_lift over random normal generators") {
  // b in G' of odd groups; the quotient cycle comes from the search and the
  // lift is checked by the oracle walk.
  std::mt19937_64 rng(17);
  int done = 0;
  for (const auto& g : fixtures::small_groups(1200, true)) {
    const auto gp = commutator_subgroup(g);
    if (gp.empty() || rng() % 3 != 0) continue;
    residue_t m = 1;
    for (residue_t l : gp) m *= l;
    const GroupElement b{0, (g.n() / m) * (1 + rng() % (m - 1)) % g.n()};
    if (b.x == 0 || support(g, b.x).empty()) continue;
    const std::vector<GroupElement> gens{{1, rng() % g.n()}, b, {0, 1}};
    const Quotient q = quotient_by_cyclic(g, b);
    SearchConfig cfg;
    cfg.timeout = std::chrono::milliseconds(3000);
    const auto found = brute_force_ham(q.group, q.project(gens), cfg);
    if (found.status != SearchStatus::found) continue;
    const LiftOutcome out = normal_easy_lift(g, gens, b, GenWord{gens, found.word->steps}, cfg);
    CHECK(oracle_hamiltonian(g, out.word));
    CHECK(out.strategy != "oracle");
    ++done;
  }
  CHECK(done > 10);
}

TEST_CASE("coset snake declines elements outside C_n") {
  const std::vector<GroupElement> gens{{1, 0}, {0, 1}};
  CHECK_FALSE(coset_snake_lift(kG21, gens, 0, GenWord{gens, {2, 2, 2}}).has_value());
}
