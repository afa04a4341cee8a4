#include "hamcay/batch.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <random>
#include <set>
#include <thread>

#include "hamcay/error.hpp"

namespace hamcay {

namespace {

constexpr int kAttemptsPerSet = 4000;

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

}  // namespace

std::vector<std::vector<GroupElement>> sample_generating_sets(const GroupSpec& g, std::size_t count,
                                                              std::uint64_t seed) {
  std::vector<std::vector<GroupElement>> out;
  if (count == 0) return out;
  std::set<std::vector<GroupElement>> seen;
  const auto accept = [&](std::vector<GroupElement> gens) {
    if (!is_generating_set(g, gens) || irredundant_subset(g, gens).size() != gens.size()) return false;
    std::vector<GroupElement> key = gens;
    std::sort(key.begin(), key.end());
    if (!seen.insert(key).second) return false;
    out.push_back(std::move(gens));
    return true;
  };
  if (g.n() > 1) accept({{1, 0}, {0, 1}});

  std::mt19937_64 rng(mix(mix(mix(seed, g.p()), g.n()), g.alpha()));
  std::uniform_int_distribution<residue_t> di(0, g.p() - 1), dx(0, g.n() - 1);
  std::size_t size = 2;
  while (out.size() < count) {
    bool added = false;
    for (int attempt = 0; attempt < kAttemptsPerSet && !added; ++attempt) {
      std::vector<GroupElement> gens(size);
      for (auto& s : gens) s = {di(rng), dx(rng)};
      added = accept(std::move(gens));
    }
    if (!added && size == 3) break;  // the group has no (more) irredundant sets of this shape
    size = size == 2 ? 3 : 2;
  }
  return out;
}

std::vector<BatchRecord> run_batch(const std::vector<GroupSpec>& groups, const BatchOptions& opts,
                                   const std::function<void(const BatchRecord&)>& sink) {
  std::vector<BatchRecord> records;
  for (const auto& g : groups) {
    for (auto& gens : sample_generating_sets(g, opts.sets_per_group, opts.seed)) {
      records.push_back(BatchRecord{g, std::move(gens), "", false, "", "", {}});
    }
  }
  std::mutex sink_mutex;
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    ConstructOptions local = opts.construct;
    local.trace = nullptr;
    for (std::size_t j = next++; j < records.size(); j = next++) {
      BatchRecord& rec = records[j];
      const auto t0 = std::chrono::steady_clock::now();
      try {
        const HamCertificate cert = construct_hamiltonian(rec.group, rec.gens, local);
        rec.found = is_hamiltonian_cycle(rec.group, cert.word);
        rec.case_label = cert.case_label;
      } catch (const Error& e) {
        rec.error_kind = std::string(to_string(e.kind()));
        rec.error = e.what();
      }
      rec.millis = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0);
      if (sink) {
        std::lock_guard<std::mutex> lock(sink_mutex);
        sink(rec);
      }
    }
  };
  const unsigned n_threads = std::max(1u, opts.threads);
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return records;
}

std::map<std::string, std::size_t> case_histogram(const std::vector<BatchRecord>& records) {
  std::map<std::string, std::size_t> hist;
  for (const auto& r : records) ++hist[r.found ? r.case_label : "error:" + r.error_kind];
  return hist;
}

}  // namespace hamcay
