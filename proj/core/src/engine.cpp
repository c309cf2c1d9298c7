#include "rdffrag/engine.hpp"

#include <algorithm>
#include <bit>
#include <thread>

#include "rdffrag/error.hpp"

namespace rdffrag {

namespace {

constexpr long long kCostCap = 4'000'000'000'000'000'000LL;

long long sat_mul(long long a, long long b) {
  if (a == 0 || b == 0) return 0;
  if (a > kCostCap / b) return kCostCap;
  return a * b;
}

long long sat_add(long long a, long long b) {
  return a > kCostCap - b ? kCostCap : a + b;
}

// Connected groups of edges, linked through shared vertices (constants count).
std::size_t edge_components_count(const std::vector<QEdge>& edges);

std::vector<std::vector<QEdge>> edge_components(const std::vector<QEdge>& edges) {
  std::map<QVertex, int> vid;
  std::vector<int> parent;
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto id = [&](const QVertex& v) {
    auto [it, fresh] = vid.emplace(v, static_cast<int>(parent.size()));
    if (fresh) parent.push_back(it->second);
    return it->second;
  };
  for (const QEdge& e : edges) {
    int a = find(id(e.from)), b = find(id(e.to));
    if (a != b) parent[a] = b;
  }
  std::vector<std::vector<QEdge>> out;
  std::map<int, int> root_to_out;
  for (const QEdge& e : edges) {
    int root = find(vid.at(e.from));
    auto [it, fresh] = root_to_out.emplace(root, static_cast<int>(out.size()));
    if (fresh) out.emplace_back();
    out[it->second].push_back(e);
  }
  return out;
}

std::size_t edge_components_count(const std::vector<QEdge>& edges) {
  return edge_components(edges).size();
}

bool edges_connected(const std::vector<QEdge>& edges) {
  if (edges.empty()) return true;
  return edge_components_count(edges) == 1;
}

// Enumerates set partitions of the hot edges into connected blocks whose
// normalized shape is a dictionary entry. Each block is identified by its
// sorted index set and always contains the lowest unassigned edge, so every
// partition comes up exactly once.
struct HotPartitioner {
  const std::vector<QEdge>& edges;
  const Dictionary& dict;
  std::size_t max_block;
  std::vector<bool> used;
  std::vector<std::pair<QueryGraph, std::string>> blocks;  // (subquery, code)

  std::vector<std::vector<std::pair<QueryGraph, std::string>>> results;

  void run() {
    used.assign(edges.size(), false);
    recurse();
  }

  void recurse() {
    std::size_t seed = 0;
    while (seed < edges.size() && used[seed]) ++seed;
    if (seed == edges.size()) {
      results.push_back(blocks);
      return;
    }
    std::vector<std::size_t> block{seed};
    used[seed] = true;
    choose(seed, seed + 1, block);
    used[seed] = false;
  }

  // Picks any subset of the edges after `next - 1` on top of `block`.
  void choose(std::size_t seed, std::size_t next, std::vector<std::size_t>& block) {
    try_block(block);
    if (block.size() >= max_block) return;
    for (std::size_t i = next; i < edges.size(); ++i) {
      if (used[i]) continue;
      used[i] = true;
      block.push_back(i);
      choose(seed, i + 1, block);
      block.pop_back();
      used[i] = false;
    }
  }

  void try_block(const std::vector<std::size_t>& block) {
    QueryGraph sub;
    for (std::size_t i : block) sub.edges.push_back(edges[i]);
    if (!edges_connected(sub.edges)) return;
    std::string code = canonical_code(normalize(sub));
    if (!dict.entries.count(code)) {
      // A single hot edge always routes to its property's one-edge pattern;
      // that fragment holds every edge of the property, so even a self-loop
      // shape evaluates completely there.
      if (block.size() != 1) return;
      code = "0>1:" + sub.edges[0].label;
      if (!dict.entries.count(code)) return;
    }
    blocks.emplace_back(std::move(sub), std::move(code));
    recurse();
    blocks.pop_back();
  }
};

}  // namespace

Decomposition decompose(const QueryGraph& q, const Dictionary& dict) {
  if (q.edges.size() > 12)
    throw ConfigError("query too large for decomposition enumeration");

  std::vector<QEdge> hot, cold, wildcard;
  for (const QEdge& e : q.edges) {
    if (e.label_is_variable)
      wildcard.push_back(e);
    else if (dict.is_hot_property(e.label))
      hot.push_back(e);
    else
      cold.push_back(e);
  }

  std::vector<SubQuery> fixed;
  for (const std::vector<QEdge>& comp : edge_components(cold)) {
    SubQuery sq;
    sq.graph.edges = comp;
    sq.kind = SubQuery::Kind::Cold;
    fixed.push_back(std::move(sq));
  }
  for (const QEdge& e : wildcard) {
    SubQuery sq;
    sq.graph.edges.push_back(e);
    sq.kind = SubQuery::Kind::Wildcard;
    fixed.push_back(std::move(sq));
  }
  long long fixed_cost = 1;
  for (const SubQuery& sq : fixed)
    fixed_cost = sat_mul(fixed_cost, estimate_card(sq.graph, dict));

  std::size_t max_block = 1;
  for (const auto& [code, entry] : dict.entries) {
    std::size_t edges = static_cast<std::size_t>(
        std::count(code.begin(), code.end(), ' ')) + 1;
    max_block = std::max(max_block, edges);
  }

  HotPartitioner part{hot, dict, max_block};
  if (hot.empty())
    part.results.push_back({});
  else
    part.run();
  if (part.results.empty())
    throw ConfigError("no valid decomposition; single-edge patterns missing");

  // Minimum cost; ties prefer fewer subqueries, then the smallest sorted
  // code list.
  Decomposition best;
  bool have_best = false;
  std::vector<std::string> best_codes;
  for (const auto& blocks : part.results) {
    long long cost = fixed_cost;
    std::vector<std::string> codes;
    for (const auto& [sub, code] : blocks) {
      cost = sat_mul(cost, estimate_card(sub, dict));
      codes.push_back(code);
    }
    std::sort(codes.begin(), codes.end());
    std::size_t t = blocks.size() + fixed.size();
    bool better;
    if (!have_best) {
      better = true;
    } else if (cost != best.cost) {
      better = cost < best.cost;
    } else if (t != best.subqueries.size()) {
      better = t < best.subqueries.size();
    } else {
      better = codes < best_codes;
    }
    if (!better) continue;
    have_best = true;
    best.cost = cost;
    best_codes = codes;
    best.subqueries.clear();
    std::vector<std::pair<std::string, QueryGraph>> ordered;
    for (const auto& [sub, code] : blocks) ordered.emplace_back(code, sub);
    std::sort(ordered.begin(), ordered.end());
    for (auto& [code, sub] : ordered) {
      SubQuery sq;
      sq.graph = std::move(sub);
      sq.kind = SubQuery::Kind::Pattern;
      sq.code = code;
      best.subqueries.push_back(std::move(sq));
    }
    for (const SubQuery& sq : fixed) best.subqueries.push_back(sq);
  }
  return best;
}

namespace {

bool subqueries_share_variable(const QueryGraph& a, const std::set<std::string>& vars) {
  for (const std::string& v : a.variables())
    if (vars.count(v)) return true;
  return false;
}

}  // namespace

JoinPlan optimize(const Decomposition& d, const Dictionary& dict) {
  const std::size_t t = d.subqueries.size();
  if (t == 0) throw ConfigError("cannot optimize an empty decomposition");
  if (t > 16) throw ConfigError("too many subqueries for plan enumeration");

  std::vector<long long> card(t);
  for (std::size_t i = 0; i < t; ++i)
    card[i] = estimate_card(d.subqueries[i].graph, dict);

  if (t == 1) return JoinPlan{{0}, card[0]};

  struct State {
    long long cost = -1;
    int disconnected = 0;
    std::vector<int> order;
  };
  std::vector<State> table(std::size_t{1} << t);
  std::vector<long long> prod(std::size_t{1} << t, 1);
  for (std::size_t mask = 1; mask < prod.size(); ++mask) {
    std::size_t low = mask & (mask - 1);
    std::size_t bit = mask ^ low;
    int k = std::countr_zero(bit);
    prod[mask] = sat_mul(prod[low], card[static_cast<std::size_t>(k)]);
  }
  for (std::size_t i = 0; i < t; ++i)
    table[std::size_t{1} << i] = State{0, 0, {static_cast<int>(i)}};

  for (std::size_t mask = 1; mask < table.size(); ++mask) {
    if ((mask & (mask - 1)) == 0) continue;  // singletons are seeded
    State best;
    for (std::size_t k = 0; k < t; ++k) {
      if (!(mask >> k & 1)) continue;
      std::size_t prev = mask ^ (std::size_t{1} << k);
      const State& p = table[prev];
      long long cost = sat_add(p.cost, prod[mask]);
      std::set<std::string> prev_vars;
      for (std::size_t i = 0; i < t; ++i)
        if (prev >> i & 1)
          for (const std::string& v : d.subqueries[i].graph.variables())
            prev_vars.insert(v);
      int disc = p.disconnected +
                 (subqueries_share_variable(d.subqueries[k].graph, prev_vars) ? 0 : 1);
      std::vector<int> order = p.order;
      order.push_back(static_cast<int>(k));
      bool better = best.cost < 0 || cost < best.cost ||
                    (cost == best.cost &&
                     (disc < best.disconnected ||
                      (disc == best.disconnected && order < best.order)));
      if (better) best = State{cost, disc, std::move(order)};
    }
    table[mask] = std::move(best);
  }
  const State& final = table.back();
  return JoinPlan{final.order, final.cost};
}

SimulatedCluster::SimulatedCluster(const Fragmentation& frags,
                                   const std::map<std::string, int>& site_of, int sites)
    : sites_(sites), site_of_(site_of) {
  for (const Fragment& f : frags.fragments) {
    ids_.push_back(f.id);
    graphs_.emplace(f.id, f.graph);
    if (f.source == Fragment::Source::Cold) site_of_[f.id] = 0;
  }
  std::sort(ids_.begin(), ids_.end());
}

SimulatedCluster::SimulatedCluster(const Fragmentation& frags, const Allocation& alloc,
                                   int sites)
    : SimulatedCluster(frags, alloc.site_of, sites) {}

const RdfGraph& SimulatedCluster::fragment_graph(const std::string& id) const {
  auto it = graphs_.find(id);
  if (it == graphs_.end()) throw ConfigError("unknown fragment: " + id);
  return it->second;
}

int SimulatedCluster::site_of(const std::string& id) const {
  auto it = site_of_.find(id);
  if (it == site_of_.end()) throw ConfigError("fragment not allocated: " + id);
  return it->second;
}

namespace {

// Natural join on shared variables; Cartesian product when none are shared.
std::set<Binding> join_bindings(const std::set<Binding>& left,
                                const std::set<Binding>& right) {
  std::set<Binding> out;
  if (left.empty() || right.empty()) return out;
  std::vector<std::string> shared;
  for (const auto& [var, term] : *left.begin())
    if (right.begin()->count(var)) shared.push_back(var);

  std::map<std::vector<Term>, std::vector<const Binding*>> index;
  for (const Binding& rb : right) {
    std::vector<Term> key;
    for (const std::string& v : shared) key.push_back(rb.at(v));
    index[std::move(key)].push_back(&rb);
  }
  for (const Binding& lb : left) {
    std::vector<Term> key;
    for (const std::string& v : shared) key.push_back(lb.at(v));
    auto it = index.find(key);
    if (it == index.end()) continue;
    for (const Binding* rb : it->second) {
      Binding merged = lb;
      merged.insert(rb->begin(), rb->end());
      out.insert(std::move(merged));
    }
  }
  return out;
}

struct SiteTask {
  int subquery = 0;
  std::string fragment_id;
};

}  // namespace

ExecutionReport execute(const QueryGraph& q, const JoinPlan& plan,
                        const Decomposition& d, const SimulatedCluster& cluster,
                        const Dictionary& dict) {
  auto started = std::chrono::steady_clock::now();
  ExecutionReport report;

  // Route each subquery to the sites holding its relevant fragments.
  std::map<int, std::vector<SiteTask>> tasks_by_site;
  for (std::size_t i = 0; i < d.subqueries.size(); ++i) {
    const SubQuery& sq = d.subqueries[i];
    std::vector<std::string> targets;
    switch (sq.kind) {
      case SubQuery::Kind::Pattern: {
        auto res = lookup(sq.graph, dict);
        if (!res) throw ConfigError("decomposition block missing from dictionary");
        targets = res->fragment_ids;
        break;
      }
      case SubQuery::Kind::Cold:
        targets.push_back("cold");
        break;
      case SubQuery::Kind::Wildcard:
        targets = cluster.fragment_ids();
        break;
    }
    for (const std::string& id : targets) {
      int site = cluster.site_of(id);
      tasks_by_site[site].push_back({static_cast<int>(i), id});
      report.sites_touched.insert(site);
    }
  }

  // Site workers evaluate their subqueries in parallel and "ship" the
  // binding tables back; results are merged per subquery afterwards.
  struct TaskResult {
    int subquery;
    std::set<Binding> bindings;
  };
  std::vector<std::vector<TaskResult>> per_site(tasks_by_site.size());
  std::vector<std::exception_ptr> worker_errors(tasks_by_site.size());
  std::vector<std::thread> workers;
  std::size_t slot = 0;
  for (const auto& [site, tasks] : tasks_by_site) {
    workers.emplace_back([&, slot, &tasks = tasks] {
      try {
        for (const SiteTask& task : tasks) {
          MatchSet ms = evaluate(d.subqueries[task.subquery].graph,
                                 cluster.fragment_graph(task.fragment_id));
          per_site[slot].push_back({task.subquery, std::move(ms.bindings)});
        }
      } catch (...) {
        worker_errors[slot] = std::current_exception();
      }
    });
    ++slot;
  }
  for (std::thread& w : workers) w.join();
  for (const std::exception_ptr& err : worker_errors)
    if (err) std::rethrow_exception(err);

  std::vector<std::set<Binding>> merged(d.subqueries.size());
  for (const std::vector<TaskResult>& results : per_site) {
    for (const TaskResult& r : results) {
      report.shipped_bindings += static_cast<long long>(r.bindings.size());
      report.shipped_cells +=
          static_cast<long long>(r.bindings.size()) *
          static_cast<long long>(d.subqueries[r.subquery].graph.variables().size());
      merged[r.subquery].insert(r.bindings.begin(), r.bindings.end());
    }
  }

  std::set<Binding> result = merged[plan.order.front()];
  for (std::size_t step = 1; step < plan.order.size() && !result.empty(); ++step)
    result = join_bindings(result, merged[plan.order[step]]);

  report.bindings.query = q;
  report.bindings.bindings = std::move(result);
  report.elapsed = std::chrono::duration_cast<std::chrono::microseconds>(
      std::chrono::steady_clock::now() - started);
  return report;
}

}  // namespace rdffrag
