#pragma once

// Independent reference implementations used only by the tests. None of them
// calls the library's arithmetic: the group law comes from rewriting words in
// a and g, subgroups from closures, and cycles are checked with std::set.

#include <cstdint>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

using u64 = std::uint64_t;
using Pair = std::pair<u64, u64>;  // (i, x) meaning a^i g^x

// Residue with x = r_j mod m_j for all j, found by scanning.
inline u64 crt_scan(const std::vector<Pair>& residues) {
  u64 n = 1;
  for (const auto& [m, r] : residues) n *= m;
  for (u64 x = 0; x < n; ++x) {
    bool ok = true;
    for (const auto& [m, r] : residues) ok = ok && x % m == r % m;
    if (ok) return x;
  }
  return n;
}

inline u64 slow_pow(u64 base, u64 e, u64 m) {
  u64 r = 1 % m;
  for (u64 t = 0; t < e; ++t) r = r * (base % m) % m;
  return r;
}

// Words over {a, g} with the relations a^p = g^n = 1 and g a = a g^alpha,
// reduced by literal rewriting.
class WordGroup {
 public:
  WordGroup(u64 p, u64 n, u64 alpha) : p_(p), n_(n), alpha_(alpha) {}

  Pair multiply(Pair u, Pair v) const {
    std::string w = std::string(u.first, 'a') + std::string(u.second, 'g') + std::string(v.first, 'a') +
                    std::string(v.second, 'g');
    return reduce(w);
  }

  Pair reduce(std::string w) const {
    while (true) {
      w = drop_runs(w);
      const auto pos = w.find("ga");
      if (pos == std::string::npos) break;
      // Move one a left across the maximal run of g's before it.
      std::size_t start = pos;
      while (start > 0 && w[start - 1] == 'g') --start;
      const std::size_t run = pos + 1 - start;
      std::string moved = "a" + std::string(run * alpha_, 'g');
      w = w.substr(0, start) + moved + w.substr(pos + 2);
    }
    u64 i = 0, x = 0;
    for (char c : w) (c == 'a' ? i : x) += 1;
    return {i % p_, x % n_};
  }

  u64 order() const { return p_ * n_; }
  u64 index(Pair u) const { return u.first * n_ + u.second; }
  Pair element(u64 idx) const { return {idx / n_, idx % n_}; }

 private:
  std::string drop_runs(const std::string& w) const {
    std::string out;
    std::size_t j = 0;
    while (j < w.size()) {
      std::size_t k = j;
      while (k < w.size() && w[k] == w[j]) ++k;
      const u64 len = k - j;
      const u64 keep = len % (w[j] == 'a' ? p_ : n_);
      out.append(keep, w[j]);
      j = k;
    }
    return out == w ? out : drop_runs(out);
  }

  u64 p_, n_, alpha_;
};

// a^i g^x as the pair (i mod p, affine map t -> alpha^i t + x on Z_n); the
// product applies the left factor first. Used where word rewriting is too slow.
class AffineGroup {
 public:
  AffineGroup(u64 p, u64 n, u64 alpha) : p_(p), n_(n), alpha_(alpha) {}

  Pair multiply(Pair u, Pair v) const {
    const u64 scale = slow_pow(alpha_, v.first, n_);
    return {(u.first + v.first) % p_, static_cast<u64>((static_cast<unsigned __int128>(u.second) * scale + v.second) % n_)};
  }

  Pair inverse(Pair u) const {
    // (i, x)^-1 = (p - i, -x * alpha^(p - i)), solved by direct search over the scale.
    const u64 j = (p_ - u.first) % p_;
    const u64 scale = slow_pow(alpha_, j, n_);
    const u64 y = (n_ - static_cast<u64>((static_cast<unsigned __int128>(u.second) * scale) % n_)) % n_;
    return {j, y};
  }

 private:
  u64 p_, n_, alpha_;
};

// Full multiplication table, indexed by i * n + x.
struct Table {
  u64 order = 0;
  std::vector<std::uint32_t> product;  // order * order
  std::vector<std::uint32_t> inverse;
  std::uint32_t mul(std::uint32_t u, std::uint32_t v) const { return product[u * order + v]; }
};

template <typename Mul>
Table build_table(u64 order, Mul&& mul) {
  Table t;
  t.order = order;
  t.product.resize(order * order);
  t.inverse.resize(order);
  for (u64 u = 0; u < order; ++u) {
    for (u64 v = 0; v < order; ++v) {
      t.product[u * order + v] = static_cast<std::uint32_t>(mul(u, v));
      if (t.product[u * order + v] == 0) t.inverse[u] = static_cast<std::uint32_t>(v);
    }
  }
  return t;
}

inline std::set<std::uint32_t> closure(const Table& t, const std::vector<std::uint32_t>& gens) {
  std::set<std::uint32_t> seen{0};
  std::vector<std::uint32_t> frontier{0};
  while (!frontier.empty()) {
    const auto v = frontier.back();
    frontier.pop_back();
    for (auto s : gens) {
      const auto w = t.mul(v, s);
      if (seen.insert(w).second) frontier.push_back(w);
    }
  }
  return seen;
}

inline std::set<std::uint32_t> commutator_subgroup(const Table& t) {
  std::set<std::uint32_t> comms;
  for (std::uint32_t u = 0; u < t.order; ++u) {
    for (std::uint32_t v = 0; v < t.order; ++v) {
      comms.insert(t.mul(t.mul(t.inverse[u], t.inverse[v]), t.mul(u, v)));
    }
  }
  return closure(t, {comms.begin(), comms.end()});
}

inline std::set<std::uint32_t> centre(const Table& t) {
  std::set<std::uint32_t> z;
  for (std::uint32_t u = 0; u < t.order; ++u) {
    bool central = true;
    for (std::uint32_t v = 0; v < t.order && central; ++v) central = t.mul(u, v) == t.mul(v, u);
    if (central) z.insert(u);
  }
  return z;
}

inline u64 order_by_repetition(const Table& t, std::uint32_t u) {
  u64 m = 1;
  for (std::uint32_t cur = u; cur != 0; cur = t.mul(cur, u)) ++m;
  return m;
}

// First failure of a closed walk, phrased like the library's checker:
// "length mismatch", "revisited vertex (i,x) at walk index t", "wrong endpoint (i,x)", or "ok".
template <typename Mul>
std::string walk_diagnostic(u64 order, const std::vector<Pair>& gens, const std::vector<std::int32_t>& steps,
                            const std::vector<Pair>& inverses, Mul&& mul) {
  if (steps.size() != order) return "length mismatch";
  std::set<Pair> visited{{0, 0}};
  Pair cur{0, 0};
  for (std::size_t t = 0; t < steps.size(); ++t) {
    const std::size_t j = static_cast<std::size_t>(steps[t] < 0 ? -steps[t] : steps[t]) - 1;
    cur = mul(cur, steps[t] < 0 ? inverses[j] : gens[j]);
    if (t + 1 < steps.size() && !visited.insert(cur).second) {
      std::ostringstream os;
      os << "revisited vertex (" << cur.first << "," << cur.second << ") at walk index " << t + 1;
      return os.str();
    }
  }
  if (cur != Pair{0, 0}) {
    std::ostringstream os;
    os << "wrong endpoint (" << cur.first << "," << cur.second << ")";
    return os.str();
  }
  return "ok";
}

}  // namespace oracle
