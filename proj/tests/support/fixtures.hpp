#pragma once

#include <string>

#include "rdffrag/query_graph.hpp"
#include "rdffrag/rdf_graph.hpp"

namespace fixtures {

inline const char* kG0 =
    "<a1> <influencedBy> <a2> .\n"
    "<a2> <influencedBy> <a3> .\n"
    "<a1> <mainInterest> <m1> .\n"
    "<a2> <mainInterest> <m1> .\n"
    "<a3> <mainInterest> <m2> .\n"
    "<b1> <author> <a1> .\n"
    "<b1> <author> <a2> .\n"
    "<c1> <wappen> <w1> .\n"
    "<a1> <name> \"Aristotle\" .\n";

inline const char* kQ1 = "SELECT * WHERE { ?x <influencedBy> ?y . ?x <mainInterest> ?z }";
inline const char* kQ4 = "SELECT * WHERE { ?x <mainInterest> ?z }";
inline const char* kQ5 = "SELECT * WHERE { ?b <author> ?x . ?x <influencedBy> ?y }";
inline const char* kQ6 = "SELECT * WHERE { ?c <wappen> ?w }";
inline const char* kQ3p =
    "SELECT * WHERE { ?x <influencedBy> ?y . ?x <mainInterest> <m1> }";
inline const char* kQ7 =
    "SELECT * WHERE { ?x <influencedBy> ?y . ?x <mainInterest> ?z . "
    "?y <mainInterest> ?w }";

inline rdffrag::RdfGraph g0() { return rdffrag::parse_ntriples(kG0); }

inline rdffrag::QueryGraph query(const std::string& text) {
  return rdffrag::parse_query(text).at(0);
}

inline rdffrag::Workload w0() {
  rdffrag::Workload w;
  w.queries.push_back(query(kQ1));
  w.queries.push_back(query(kQ1));
  w.queries.push_back(query(kQ1));
  w.queries.push_back(query(kQ4));
  w.queries.push_back(query(kQ5));
  w.queries.push_back(query(kQ6));
  return w;
}

inline rdffrag::Workload w1() {
  rdffrag::Workload w = w0();
  w.queries.push_back(query(kQ3p));
  return w;
}

// Canonical codes of the three w0 patterns.
inline const char* kCodeInf = "0>1:influencedBy";
inline const char* kCodeMain = "0>1:mainInterest";
inline const char* kCodeB = "0>1:influencedBy 0>2:mainInterest";

}  // namespace fixtures
