#include <benchmark/benchmark.h>

#include <sstream>

#include "rdffrag/matcher.hpp"
#include "rdffrag/query_graph.hpp"
#include "rdffrag/rdf_graph.hpp"

namespace {

using namespace rdffrag;

// Deterministic layered graph: stars of p0/p1 edges plus p2 chains.
RdfGraph layered_graph(int subjects) {
  std::ostringstream text;
  for (int i = 0; i < subjects; ++i) {
    text << "<s" << i << "> <p0> <c" << i % 37 << "> .\n";
    text << "<s" << i << "> <p1> <d" << i % 53 << "> .\n";
    if (i % 3 == 0) text << "<s" << i << "> <p2> <s" << (i + 1) % subjects << "> .\n";
  }
  return parse_ntriples(text.str());
}

void StarQuery(benchmark::State& state) {
  RdfGraph g = layered_graph(static_cast<int>(state.range(0)));
  QueryGraph q = parse_query("SELECT * WHERE { ?x <p0> ?y . ?x <p1> ?z }").at(0);
  for (auto _ : state) {
    MatchSet ms = evaluate(q, g);
    benchmark::DoNotOptimize(ms.bindings.size());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(StarQuery)->RangeMultiplier(4)->Range(256, 16384)->Complexity();

void ChainQuery(benchmark::State& state) {
  RdfGraph g = layered_graph(static_cast<int>(state.range(0)));
  QueryGraph q =
      parse_query("SELECT * WHERE { ?x <p2> ?y . ?y <p2> ?z . ?z <p0> ?u }").at(0);
  for (auto _ : state) {
    MatchSet ms = evaluate(q, g);
    benchmark::DoNotOptimize(ms.bindings.size());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(ChainQuery)->RangeMultiplier(4)->Range(256, 16384)->Complexity();

void PatternContainment(benchmark::State& state) {
  QueryGraph q = parse_query(
                     "SELECT * WHERE { ?a <p0> ?b . ?a <p1> ?c . ?b <p2> ?d . "
                     "?d <p0> ?e }")
                     .at(0);
  Pattern p = Pattern::from_graph(
      parse_query("SELECT * WHERE { ?x <p0> ?y . ?x <p1> ?z }").at(0));
  for (auto _ : state) benchmark::DoNotOptimize(contains_pattern(q, p));
}
BENCHMARK(PatternContainment);

}  // namespace
