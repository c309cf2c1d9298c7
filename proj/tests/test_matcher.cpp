#include "doctest.h"
#include "rdffrag/matcher.hpp"
#include "rdffrag/rdf_graph.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace rdffrag;

namespace {

Pattern pattern_of(const char* query_text) {
  return Pattern::from_graph(normalize(fixtures::query(query_text)));
}

}  // namespace

TEST_CASE("single-edge query over g0") {
  MatchSet ms = evaluate(fixtures::query("SELECT * WHERE { ?x <influencedBy> ?y }"),
                         fixtures::g0());
  REQUIRE(ms.bindings.size() == 2);
  std::set<std::pair<std::string, std::string>> pairs;
  for (const Binding& b : ms.bindings)
    pairs.emplace(b.at("?x").lexical, b.at("?y").lexical);
  CHECK(pairs == std::set<std::pair<std::string, std::string>>{{"a1", "a2"},
                                                               {"a2", "a3"}});
}

TEST_CASE("two-edge join over g0") {
  MatchSet ms = evaluate(fixtures::query(fixtures::kQ1), fixtures::g0());
  REQUIRE(ms.bindings.size() == 2);
  for (const Binding& b : ms.bindings) CHECK(b.at("?z") == Term::iri("m1"));
}

TEST_CASE("property absent from the hot graph yields no matches") {
  GraphSplit split = split_hot_cold(fixtures::g0(), fixtures::w0(), 2);
  MatchSet ms = evaluate(fixtures::query(fixtures::kQ6), split.hot);
  CHECK(ms.bindings.empty());
}

TEST_CASE("constants restrict matches") {
  MatchSet ms = evaluate(fixtures::query(fixtures::kQ3p), fixtures::g0());
  CHECK(ms.bindings.size() == 2);
  MatchSet none = evaluate(
      fixtures::query("SELECT * WHERE { ?x <mainInterest> <nosuch> }"), fixtures::g0());
  CHECK(none.bindings.empty());
}

TEST_CASE("variable properties match any label and are reported") {
  MatchSet ms =
      evaluate(fixtures::query("SELECT * WHERE { <b1> ?p ?x }"), fixtures::g0());
  CHECK(ms.bindings.size() == 2);
  for (const Binding& b : ms.bindings) CHECK(b.at("?p") == Term::iri("author"));
}

TEST_CASE("repeated property variables must agree") {
  RdfGraph g = parse_ntriples("<a> <p> <b> .\n<b> <q> <c> .\n<x> <p> <y> .\n");
  MatchSet ms =
      evaluate(fixtures::query("SELECT * WHERE { ?a ?p ?b . ?x ?p ?y }"), g);
  // Both edges must carry the same property.
  for (const Binding& b : ms.bindings) CHECK(b.at("?p").is_iri());
  CHECK(ms.bindings.size() == 5);  // (p,p): 2x2, (q,q): 1
}

TEST_CASE("non-injective vertex mappings are allowed") {
  RdfGraph g = parse_ntriples("<a> <p> <a> .");
  MatchSet ms = evaluate(fixtures::query("SELECT * WHERE { ?x <p> ?y }"), g);
  REQUIRE(ms.bindings.size() == 1);
  CHECK(ms.bindings.begin()->at("?x") == ms.bindings.begin()->at("?y"));
}

TEST_CASE("evaluate agrees with the brute-force enumerator") {
  oracles::Rng rng(oracles::test_seed(31));
  int checked = 0;
  for (int trial = 0; checked < 60; ++trial) {
    RdfGraph g = oracles::random_graph(rng, 8, trial % 3 == 0 ? 200 : 25, 4);
    QueryGraph q = oracles::random_query(rng, g, 4, true, true);
    if (q.variables().size() > 4) continue;  // keep the oracle tractable
    CHECK(evaluate(q, g).bindings == oracles::brute_force_evaluate(q, g));
    ++checked;
  }
}

TEST_CASE("soundness: every binding realizes only edges of g") {
  oracles::Rng rng(oracles::test_seed(32));
  for (int trial = 0; trial < 30; ++trial) {
    RdfGraph g = oracles::random_graph(rng, 10, 60, 5);
    QueryGraph q = oracles::random_query(rng, g, 4, true, true);
    for (const Binding& b : evaluate(q, g).bindings) {
      for (const QEdge& e : q.edges) {
        Term s = e.from.is_variable() ? b.at(e.from.var) : e.from.term;
        Term o = e.to.is_variable() ? b.at(e.to.var) : e.to.term;
        std::string prop = e.label_is_variable ? b.at(e.label).lexical : e.label;
        CHECK(g.has_edge({s, prop, o}));
      }
    }
  }
}

TEST_CASE("monotonicity over growing graphs") {
  oracles::Rng rng(oracles::test_seed(33));
  for (int trial = 0; trial < 20; ++trial) {
    RdfGraph g2 = oracles::random_graph(rng, 10, 60, 4);
    std::vector<Triple> half(g2.edges().begin(),
                             g2.edges().begin() + g2.edges().size() / 2);
    RdfGraph g1(half);
    QueryGraph q = oracles::random_query(rng, g2, 3, true, false);
    std::set<Binding> small = evaluate(q, g1).bindings;
    std::set<Binding> big = evaluate(q, g2).bindings;
    for (const Binding& b : small) CHECK(big.count(b));
  }
}

TEST_CASE("pattern containment on w0 fixtures") {
  Pattern p_b = pattern_of(fixtures::kQ1);
  Pattern e_inf = pattern_of("SELECT * WHERE { ?x <influencedBy> ?y }");
  QueryGraph q1 = fixtures::query(fixtures::kQ1);

  CHECK(contains_pattern(q1, e_inf));
  CHECK(contains_pattern(q1, p_b));  // self containment via normalization

  // Object-chained two-edge pattern: q1's edges share their subject.
  Pattern chained = pattern_of(
      "SELECT * WHERE { ?a <influencedBy> ?b . ?b <mainInterest> ?c }");
  CHECK(!contains_pattern(q1, chained));
}

TEST_CASE("containment is edge-injective") {
  // A two-edge path with twice the same label does not embed into a
  // single-edge query.
  Pattern path = pattern_of("SELECT * WHERE { ?a <p> ?b . ?b <p> ?c }");
  QueryGraph single = fixtures::query("SELECT * WHERE { ?x <p> ?y }");
  CHECK(!contains_pattern(single, path));
  // But it embeds into a 2-cycle with non-injective vertices.
  QueryGraph cycle = fixtures::query("SELECT * WHERE { ?x <p> ?y . ?y <p> ?x }");
  CHECK(contains_pattern(cycle, path));
}

TEST_CASE("containment agrees with the exhaustive oracle") {
  oracles::Rng rng(oracles::test_seed(34));
  std::vector<std::string> labels{"p0", "p1"};
  std::vector<oracles::IntGraph> universe = oracles::pattern_universe(labels, 3);
  RdfGraph dummy = oracles::random_graph(rng, 6, 20, 2);
  for (int trial = 0; trial < 25; ++trial) {
    QueryGraph q = oracles::random_query(rng, dummy, 4, false, false);
    for (const oracles::IntGraph& ig : universe) {
      QueryGraph shape = oracles::to_query_graph(ig);
      Pattern p = Pattern::from_graph(shape);
      bool expected = oracles::brute_force_contains(shape, q);
      CHECK(contains_pattern(q, p) == expected);
      if (contains_pattern(q, p)) CHECK(p.graph.edges.size() <= q.edges.size());
    }
  }
}

TEST_CASE("match-induced subgraph of p_b over g0 has four edges") {
  GraphSplit split = split_hot_cold(fixtures::g0(), fixtures::w0(), 2);
  RdfGraph frag = match_induced_subgraph(pattern_of(fixtures::kQ1), fixtures::g0());
  CHECK(frag.edge_count() == 4);
  RdfGraph hot_frag =
      match_induced_subgraph(pattern_of(fixtures::kQ1), split.hot);
  CHECK(hot_frag.edge_count() == 4);
}

TEST_CASE("match-induced subgraph of a single-edge pattern collects all edges") {
  RdfGraph frag = match_induced_subgraph(
      pattern_of("SELECT * WHERE { ?x <mainInterest> ?z }"), fixtures::g0());
  CHECK(frag.edge_count() == 3);
}

TEST_CASE("induced subgraph of an empty graph is empty") {
  RdfGraph frag = match_induced_subgraph(pattern_of(fixtures::kQ1), RdfGraph{});
  CHECK(frag.empty());
}
