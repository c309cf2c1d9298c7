#include <benchmark/benchmark.h>

#include <sstream>

#include "rdffrag/pipeline.hpp"

namespace {

using namespace rdffrag;

struct Instance {
  RdfGraph graph;
  Workload workload;
};

Instance make_instance(int subjects) {
  std::ostringstream g;
  for (int i = 0; i < subjects; ++i) {
    g << "<s" << i << "> <p0> <c" << i % 31 << "> .\n";
    g << "<s" << i << "> <p1> <d" << i % 17 << "> .\n";
    if (i % 4 == 0) g << "<s" << i << "> <r0> <x" << i % 97 << "> .\n";
  }
  std::ostringstream w;
  for (int i = 0; i < 40; ++i) {
    if (i % 4 == 3)
      w << "SELECT * WHERE { ?x <p0> ?y }\n\n";
    else
      w << "SELECT * WHERE { ?x <p0> ?y . ?x <p1> ?z }\n\n";
  }
  return Instance{parse_ntriples(g.str()), parse_workload(w.str())};
}

Config offline_config(int sites, Fragmentation::Strategy strategy) {
  Config cfg;
  cfg.theta = 2;
  cfg.min_sup = 4;
  cfg.sites = sites;
  cfg.strategy = strategy;
  return cfg;
}

void OfflinePipeline(benchmark::State& state) {
  Instance inst = make_instance(static_cast<int>(state.range(0)));
  Config cfg = offline_config(3, Fragmentation::Strategy::Vertical);
  for (auto _ : state) {
    OfflineResult off = run_offline(cfg, inst.graph, inst.workload);
    benchmark::DoNotOptimize(off.frags.fragments.size());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(OfflinePipeline)->RangeMultiplier(4)->Range(256, 4096)->Complexity();

void DistributedQuery(benchmark::State& state) {
  Instance inst = make_instance(static_cast<int>(state.range(0)));
  Config cfg = offline_config(3, Fragmentation::Strategy::Vertical);
  OfflineResult off = run_offline(cfg, inst.graph, inst.workload);
  SimulatedCluster cluster(off.frags, off.alloc, cfg.sites);
  QueryGraph q = inst.workload.queries.front();
  for (auto _ : state) {
    Decomposition dec = decompose(q, off.dict);
    JoinPlan plan = optimize(dec, off.dict);
    ExecutionReport rep = execute(q, plan, dec, cluster, off.dict);
    benchmark::DoNotOptimize(rep.bindings.bindings.size());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(DistributedQuery)->RangeMultiplier(4)->Range(256, 4096)->Complexity();

}  // namespace
