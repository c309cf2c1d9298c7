#include "rdffrag/selector.hpp"

#include <algorithm>

#include "rdffrag/error.hpp"
#include "rdffrag/miner.hpp"

namespace rdffrag {

long long benefit_single(const Pattern& p, const QueryGraph& q) {
  return static_cast<long long>(p.edge_count()) * usage(q, p);
}

long long benefit_set(const std::vector<Pattern>& patterns, const Workload& workload) {
  long long total = 0;
  for (const QueryGraph& q : workload.queries) {
    long long best = 0;
    for (const Pattern& p : patterns) best = std::max(best, benefit_single(p, q));
    total += best;
  }
  return total;
}

namespace {

// a1/b1 > a2/b2 over non-negative values, with x/0 read as +inf for x > 0
// and 0/0 as 0. Cross-multiplication keeps the comparison exact.
bool ratio_greater(long long a1, long long b1, long long a2, long long b2) {
  if (b1 == 0 && b2 == 0) return a1 > 0 && a2 == 0;
  if (b1 == 0) return a1 > 0;
  if (b2 == 0) return a2 == 0 && a1 > 0;
  return a1 * b2 > a2 * b1;
}

bool ratio_equal(long long a1, long long b1, long long a2, long long b2) {
  return !ratio_greater(a1, b1, a2, b2) && !ratio_greater(a2, b2, a1, b1);
}

}  // namespace

SelectionResult select_patterns(const std::vector<PatternStats>& candidates,
                                const Workload& workload, const SelectionConfig& cfg) {
  std::vector<PatternStats> cands = candidates;
  std::sort(cands.begin(), cands.end(),
            [](const PatternStats& a, const PatternStats& b) {
              int ea = a.pattern.edge_count(), eb = b.pattern.edge_count();
              return ea != eb ? ea < eb : a.pattern.id < b.pattern.id;
            });

  const std::size_t nq = workload.queries.size();
  // use(Q, p) per candidate per query, computed once.
  std::vector<std::vector<char>> use(cands.size(), std::vector<char>(nq, 0));
  for (std::size_t i = 0; i < cands.size(); ++i)
    for (std::size_t k = 0; k < nq; ++k)
      use[i][k] = static_cast<char>(usage(workload.queries[k], cands[i].pattern));

  auto benefit_of = [&](const std::vector<std::size_t>& chosen) {
    long long total = 0;
    for (std::size_t k = 0; k < nq; ++k) {
      long long best = 0;
      for (std::size_t i : chosen)
        if (use[i][k])
          best = std::max(best, static_cast<long long>(cands[i].pattern.edge_count()));
      total += best;
    }
    return total;
  };

  // The seed is the forced one-plain-edge-per-property set that makes the
  // fragmentation cover the hot graph. One-edge self-loop patterns add no
  // coverage, so they compete in the greedy pool like everything else.
  std::vector<std::size_t> seed, multis;
  long long seed_cost = 0;
  for (std::size_t i = 0; i < cands.size(); ++i) {
    const QueryGraph& pg = cands[i].pattern.graph;
    bool plain_single =
        cands[i].pattern.edge_count() == 1 && !(pg.edges[0].from == pg.edges[0].to);
    if (plain_single) {
      seed.push_back(i);
      seed_cost += cands[i].match_edge_count;
    } else {
      multis.push_back(i);
    }
  }
  if (seed_cost > cfg.storage_capacity)
    throw ConfigError("storage budget below the single-edge seed cost (" +
                      std::to_string(seed_cost) + " > " +
                      std::to_string(cfg.storage_capacity) + ")");
  const long long residual = cfg.storage_capacity - seed_cost;

  // Phase 1: the one multi-edge pattern with the best standalone
  // benefit-per-edge ratio that fits the residual budget.
  long long best_a = 0, best_b = 0;
  std::ptrdiff_t p1 = -1;
  for (std::size_t i : multis) {
    if (cands[i].match_edge_count > residual) continue;
    long long a = benefit_of({i});
    long long b = cands[i].match_edge_count;
    if (p1 < 0 || ratio_greater(a, b, best_a, best_b) ||
        (ratio_equal(a, b, best_a, best_b) &&
         cands[i].pattern.id < cands[static_cast<std::size_t>(p1)].pattern.id)) {
      p1 = static_cast<std::ptrdiff_t>(i);
      best_a = a;
      best_b = b;
    }
  }

  // Phase 2: iterative greedy on marginal benefit per unit of match-edge
  // cost; stops when nothing fits or the best marginal gain is zero.
  std::vector<std::size_t> current = seed;
  std::vector<char> in_p2(cands.size(), 0);
  long long used_budget = 0;
  long long current_benefit = benefit_of(current);
  while (true) {
    std::ptrdiff_t pick = -1;
    long long pick_gain = 0, pick_cost = 0;
    for (std::size_t i : multis) {
      if (in_p2[i] || used_budget + cands[i].match_edge_count > residual) continue;
      std::vector<std::size_t> with = current;
      with.push_back(i);
      long long gain = benefit_of(with) - current_benefit;
      long long cost = cands[i].match_edge_count;
      if (pick < 0 || ratio_greater(gain, cost, pick_gain, pick_cost) ||
          (ratio_equal(gain, cost, pick_gain, pick_cost) &&
           cands[i].pattern.id < cands[static_cast<std::size_t>(pick)].pattern.id)) {
        pick = static_cast<std::ptrdiff_t>(i);
        pick_gain = gain;
        pick_cost = cost;
      }
    }
    if (pick < 0 || pick_gain <= 0) break;
    in_p2[static_cast<std::size_t>(pick)] = 1;
    current.push_back(static_cast<std::size_t>(pick));
    used_budget += pick_cost;
    current_benefit += pick_gain;
  }

  std::vector<std::size_t> with_p1 = seed;
  if (p1 >= 0) with_p1.push_back(static_cast<std::size_t>(p1));
  long long b1 = benefit_of(with_p1);
  long long b2 = current_benefit;

  const std::vector<std::size_t>& chosen = b1 >= b2 ? with_p1 : current;
  SelectionResult result;
  std::vector<std::size_t> sorted_chosen = chosen;
  std::sort(sorted_chosen.begin(), sorted_chosen.end());
  for (std::size_t i : sorted_chosen) {
    result.selected.push_back(cands[i]);
    result.total_edge_cost += cands[i].match_edge_count;
  }
  result.benefit = std::max(b1, b2);
  return result;
}

}  // namespace rdffrag
