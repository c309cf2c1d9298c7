#include <set>

#include "doctest.h"
#include "rdffrag/error.hpp"
#include "rdffrag/rdf_graph.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace rdffrag;

TEST_CASE("single triple parses into a two-vertex graph") {
  RdfGraph g = parse_ntriples("<a1> <influencedBy> <a2> .");
  CHECK(g.vertices().size() == 2);
  CHECK(g.edge_count() == 1);
  CHECK(g.labels() == std::set<std::string>{"influencedBy"});
}

TEST_CASE("g0 has nine vertices and nine edges") {
  RdfGraph g = fixtures::g0();
  CHECK(g.vertices().size() == 9);
  CHECK(g.edge_count() == 9);
}

TEST_CASE("malformed lines report their line number") {
  CHECK_THROWS_AS(parse_ntriples("a1 influencedBy"), ParseError);
  try {
    parse_ntriples("<a> <p> <b> .\na1 influencedBy\n");
    FAIL("expected parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(parse_ntriples("<a> <p> <b>"), ParseError);       // missing dot
  CHECK_THROWS_AS(parse_ntriples("\"lit\" <p> <b> ."), ParseError); // literal subject
  CHECK_THROWS_AS(parse_ntriples("<a> \"p\" <b> ."), ParseError);   // literal property
}

TEST_CASE("empty input is an empty graph") {
  RdfGraph g = parse_ntriples("");
  CHECK(g.empty());
  CHECK(g.edge_count() == 0);
}

TEST_CASE("duplicate triples collapse") {
  RdfGraph g = parse_ntriples("<a> <p> <b> .\n<a> <p> <b> .\n");
  CHECK(g.edge_count() == 1);
}

TEST_CASE("comments and blank lines are skipped") {
  RdfGraph g = parse_ntriples("# header\n\n<a> <p> <b> .\n  # indented comment\n");
  CHECK(g.edge_count() == 1);
}

TEST_CASE("literals round-trip with escapes") {
  RdfGraph g = parse_ntriples("<a> <p> \"say \\\"hi\\\" \\\\ done\" .");
  std::string text = serialize_ntriples(g);
  CHECK(parse_ntriples(text) == g);
}

TEST_CASE("theta=2 split of g0/w0 yields 5 hot and 4 cold edges") {
  GraphSplit split = split_hot_cold(fixtures::g0(), fixtures::w0(), 2);
  CHECK(split.frequent_properties ==
        std::set<std::string>{"influencedBy", "mainInterest"});
  CHECK(split.hot.edge_count() == 5);
  CHECK(split.cold.edge_count() == 4);
}

TEST_CASE("empty workload makes everything cold") {
  GraphSplit split = split_hot_cold(fixtures::g0(), Workload{}, 1);
  CHECK(split.hot.empty());
  CHECK(split.cold.edge_count() == 9);
}

TEST_CASE("theta above the max property frequency empties the hot graph") {
  GraphSplit split = split_hot_cold(fixtures::g0(), fixtures::w0(), 5);
  CHECK(split.hot.empty());
  CHECK(split.cold.edge_count() == 9);
}

TEST_CASE("each query counts once per property it mentions") {
  // Two mainInterest edges inside one query still count as one query.
  Workload w;
  w.queries.push_back(fixtures::query(
      "SELECT * WHERE { ?x <mainInterest> ?z . ?x <mainInterest> ?u }"));
  GraphSplit split = split_hot_cold(fixtures::g0(), w, 2);
  CHECK(split.frequent_properties.empty());
}

TEST_CASE("hot and cold partition the edges for random instances") {
  oracles::Rng rng(oracles::test_seed(11));
  for (int trial = 0; trial < 30; ++trial) {
    RdfGraph g = oracles::random_graph(rng, 12, 40, 5);
    Workload w = oracles::random_workload(rng, g, 8, 3, true);
    int theta = 1 + rng.below(3);
    GraphSplit split = split_hot_cold(g, w, theta);

    std::set<Triple> all(g.edges().begin(), g.edges().end());
    std::set<Triple> merged(split.hot.edges().begin(), split.hot.edges().end());
    for (const Triple& t : split.cold.edges()) {
      CHECK(merged.insert(t).second);  // disjoint
    }
    CHECK(merged == all);  // covering

    // Monotonicity: raising theta never moves an edge from cold to hot.
    GraphSplit higher = split_hot_cold(g, w, theta + 1);
    for (const Triple& t : higher.hot.edges()) CHECK(split.hot.has_edge(t));
  }
}

TEST_CASE("serialize/parse round-trip on random graphs") {
  oracles::Rng rng(oracles::test_seed(12));
  for (int trial = 0; trial < 20; ++trial) {
    RdfGraph g = oracles::random_graph(rng, 10, 30, 4);
    CHECK(parse_ntriples(serialize_ntriples(g)) == g);
  }
}

TEST_CASE("serializer output is sorted and bit-stable") {
  RdfGraph g = parse_ntriples("<b> <p> <c> .\n<a> <q> <b> .\n<a> <p> <b> .\n");
  CHECK(serialize_ntriples(g) ==
        "<a> <p> <b> .\n<a> <q> <b> .\n<b> <p> <c> .\n");
}
