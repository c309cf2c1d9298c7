#include "rdffrag/matcher.hpp"

#include <algorithm>
#include <optional>

namespace rdffrag {

namespace {

// Resolved view of one triple pattern against the current partial binding.
struct Slotted {
  // -1 when the position is a constant; otherwise index into the slot table.
  int from_slot = -1, to_slot = -1, label_slot = -1;
  Term from_const, to_const;
  std::string label;  // concrete property when label_slot < 0
};

struct SearchState {
  const RdfGraph& g;
  std::vector<Slotted> edges;           // in evaluation order
  std::vector<std::optional<Term>> slots;
  std::vector<std::string> slot_names;
  std::set<Binding>* out;

  void emit() {
    Binding b;
    for (std::size_t i = 0; i < slots.size(); ++i) b.emplace(slot_names[i], *slots[i]);
    out->insert(std::move(b));
  }

  void search(std::size_t depth) {
    if (depth == edges.size()) {
      emit();
      return;
    }
    const Slotted& e = edges[depth];
    const Term* from = e.from_slot < 0 ? &e.from_const
                                       : (slots[e.from_slot] ? &*slots[e.from_slot] : nullptr);
    const Term* to = e.to_slot < 0 ? &e.to_const
                                   : (slots[e.to_slot] ? &*slots[e.to_slot] : nullptr);
    const std::string* prop = nullptr;
    if (e.label_slot < 0) {
      prop = &e.label;
    } else if (slots[e.label_slot]) {
      if (!slots[e.label_slot]->is_iri()) return;  // a literal never labels an edge
      prop = &slots[e.label_slot]->lexical;
    }

    const std::vector<int>* cands;
    std::vector<int> all;
    if (prop && from)
      cands = &g.out_edges(*from, *prop);
    else if (prop && to)
      cands = &g.in_edges(*to, *prop);
    else if (prop)
      cands = &g.by_property(*prop);
    else if (from)
      cands = &g.out_edges(*from);
    else if (to)
      cands = &g.in_edges(*to);
    else {
      all.resize(g.edge_count());
      for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
      cands = &all;
    }

    for (int idx : *cands) {
      const Triple& t = g.edges()[idx];
      if (from && t.subject != *from) continue;
      if (to && t.object != *to) continue;
      if (prop && t.property != *prop) continue;
      // Tentatively bind free positions; a variable shared between the two
      // endpoints must see the same term.
      std::vector<int> bound;
      auto bind = [&](int slot, const Term& value) {
        if (slot < 0) return true;
        if (slots[slot]) return *slots[slot] == value;
        slots[slot] = value;
        bound.push_back(slot);
        return true;
      };
      bool ok = (!from ? bind(e.from_slot, t.subject) : true) &&
                (!to ? bind(e.to_slot, t.object) : true) &&
                (!prop ? bind(e.label_slot, Term::iri(t.property)) : true);
      if (ok) search(depth + 1);
      for (int s : bound) slots[s].reset();
    }
  }
};

// Static candidate-count estimate used only to order the triple patterns.
std::size_t estimate(const QEdge& e, const RdfGraph& g) {
  bool fc = !e.from.is_variable(), tc = !e.to.is_variable();
  if (!e.label_is_variable) {
    if (fc && tc)
      return std::min<std::size_t>(g.out_edges(e.from.term, e.label).size(),
                                   g.in_edges(e.to.term, e.label).size());
    if (fc) return g.out_edges(e.from.term, e.label).size();
    if (tc) return g.in_edges(e.to.term, e.label).size();
    return g.by_property(e.label).size();
  }
  if (fc) return g.out_edges(e.from.term).size();
  if (tc) return g.in_edges(e.to.term).size();
  return g.edge_count();
}

std::vector<std::string> edge_vars(const QEdge& e) {
  std::vector<std::string> vs;
  if (e.from.is_variable()) vs.push_back(e.from.var);
  if (e.to.is_variable()) vs.push_back(e.to.var);
  if (e.label_is_variable) vs.push_back(e.label);
  return vs;
}

// Ascending candidate counts, preferring edges that share a variable with
// the ones already placed.
std::vector<QEdge> order_edges(const QueryGraph& q, const RdfGraph& g) {
  std::vector<QEdge> pending = q.edges;
  std::vector<std::size_t> cost(pending.size());
  for (std::size_t i = 0; i < pending.size(); ++i) cost[i] = estimate(pending[i], g);

  std::vector<QEdge> ordered;
  std::set<std::string> seen_vars;
  std::vector<bool> used(pending.size(), false);
  for (std::size_t step = 0; step < pending.size(); ++step) {
    int best = -1;
    bool best_adj = false;
    for (std::size_t i = 0; i < pending.size(); ++i) {
      if (used[i]) continue;
      bool adj = false;
      for (const std::string& v : edge_vars(pending[i]))
        if (seen_vars.count(v)) adj = true;
      if (best < 0 || (adj && !best_adj) ||
          (adj == best_adj && cost[i] < cost[best])) {
        best = static_cast<int>(i);
        best_adj = adj;
      }
    }
    used[best] = true;
    ordered.push_back(pending[best]);
    for (const std::string& v : edge_vars(pending[best])) seen_vars.insert(v);
  }
  return ordered;
}

}  // namespace

MatchSet evaluate(const QueryGraph& q, const RdfGraph& g) {
  MatchSet ms;
  ms.query = q;

  std::vector<std::string> vars = q.variables();
  std::map<std::string, int> slot_of;
  for (const std::string& v : vars) slot_of.emplace(v, static_cast<int>(slot_of.size()));

  SearchState st{g, {}, {}, vars, &ms.bindings};
  st.slots.resize(vars.size());
  for (const QEdge& e : order_edges(q, g)) {
    Slotted s;
    if (e.from.is_variable())
      s.from_slot = slot_of.at(e.from.var);
    else
      s.from_const = e.from.term;
    if (e.to.is_variable())
      s.to_slot = slot_of.at(e.to.var);
    else
      s.to_const = e.to.term;
    if (e.label_is_variable)
      s.label_slot = slot_of.at(e.label);
    else
      s.label = e.label;
    st.edges.push_back(std::move(s));
  }
  st.search(0);
  return ms;
}

namespace {

struct EmbedState {
  const std::vector<QEdge>& pattern_edges;
  const QueryGraph& q;
  std::map<std::string, QVertex> image;
  std::vector<bool> used;  // of q.edges
  std::vector<PatternEmbedding>* out;
  bool first_only;

  bool done() const { return first_only && !out->empty(); }

  void search(std::size_t depth) {
    if (done()) return;
    if (depth == pattern_edges.size()) {
      out->push_back(image);
      return;
    }
    const QEdge& pe = pattern_edges[depth];
    auto mapped = [&](const QVertex& pv) -> const QVertex* {
      auto it = image.find(pv.var);
      return it == image.end() ? nullptr : &it->second;
    };
    const QVertex* from = mapped(pe.from);
    const QVertex* to = mapped(pe.to);
    for (std::size_t i = 0; i < q.edges.size(); ++i) {
      if (used[i]) continue;
      const QEdge& qe = q.edges[i];
      if (qe.label_is_variable || qe.label != pe.label) continue;
      if (from && !(qe.from == *from)) continue;
      if (to && !(qe.to == *to)) continue;
      if (pe.from.var == pe.to.var && !(qe.from == qe.to)) continue;
      std::vector<std::string> added;
      if (!from) {
        image.emplace(pe.from.var, qe.from);
        added.push_back(pe.from.var);
      }
      if (!to && !image.count(pe.to.var)) {
        image.emplace(pe.to.var, qe.to);
        added.push_back(pe.to.var);
      } else if (!to && !(image.at(pe.to.var) == qe.to)) {
        for (const std::string& v : added) image.erase(v);
        continue;
      }
      used[i] = true;
      search(depth + 1);
      used[i] = false;
      for (const std::string& v : added) image.erase(v);
      if (done()) return;
    }
  }
};

}  // namespace

std::vector<PatternEmbedding> pattern_embeddings(const QueryGraph& pattern,
                                                 const QueryGraph& q,
                                                 bool first_only) {
  std::vector<PatternEmbedding> out;
  EmbedState st{pattern.edges, q, {}, std::vector<bool>(q.edges.size(), false), &out,
                first_only};
  st.search(0);
  return out;
}

bool contains_pattern(const QueryGraph& q, const Pattern& p) {
  return !pattern_embeddings(p.graph, q, /*first_only=*/true).empty();
}

RdfGraph induced_subgraph(const QueryGraph& pattern, const std::set<Binding>& bindings) {
  std::set<Triple> edges;
  for (const Binding& b : bindings) {
    for (const QEdge& e : pattern.edges) {
      edges.insert(Triple{b.at(e.from.var), e.label, b.at(e.to.var)});
    }
  }
  return RdfGraph(std::vector<Triple>(edges.begin(), edges.end()));
}

RdfGraph match_induced_subgraph(const Pattern& p, const RdfGraph& g) {
  return induced_subgraph(p.graph, evaluate(p.graph, g).bindings);
}

}  // namespace rdffrag
