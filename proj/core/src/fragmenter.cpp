#include "rdffrag/fragmenter.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "rdffrag/error.hpp"
#include "rdffrag/miner.hpp"

namespace rdffrag {

std::string conjunct_descriptor(const SimplePredicate& sp) {
  return sp.variable + (sp.equals ? "=" : "!=") + to_ntriples(sp.value);
}

std::string Fragment::descriptor() const {
  if (source == Source::Cold) return "cold";
  std::string d = pattern_code;
  if (source == Source::Horizontal) {
    if (residual) {
      d += "|residual";
    } else {
      for (const SimplePredicate& sp : conjuncts) d += "|" + conjunct_descriptor(sp);
    }
  }
  return d;
}

std::vector<std::string> split_outside_quotes(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false, angled = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (quoted) {
      if (c == '\\' && i + 1 < s.size()) {
        cur += c;
        cur += s[++i];
        continue;
      }
      if (c == '"') quoted = false;
      cur += c;
      continue;
    }
    if (angled) {
      if (c == '>') angled = false;
      cur += c;
      continue;
    }
    if (c == '"') quoted = true;
    if (c == '<') angled = true;
    if (c == sep) {
      out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(std::move(cur));
  return out;
}

SimplePredicate parse_conjunct(const std::string& s) {
  std::size_t eq = std::string::npos;
  bool quoted = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '"') quoted = !quoted;
    if (s[i] == '=' && !quoted) {
      eq = i;
      break;
    }
  }
  if (eq == std::string::npos) throw ParseError("malformed conjunct: " + s);
  SimplePredicate sp;
  sp.equals = !(eq > 0 && s[eq - 1] == '!');
  sp.variable = s.substr(0, sp.equals ? eq : eq - 1);
  std::string val = s.substr(eq + 1);
  if (val.size() >= 2 && val.front() == '<' && val.back() == '>') {
    sp.value = Term::iri(val.substr(1, val.size() - 2));
  } else if (val.size() >= 2 && val.front() == '"' && val.back() == '"') {
    std::string lex;
    for (std::size_t i = 1; i + 1 < val.size(); ++i) {
      if (val[i] == '\\' && i + 2 < val.size()) ++i;
      lex += val[i];
    }
    sp.value = Term::literal(std::move(lex));
  } else {
    throw ParseError("malformed conjunct value: " + s);
  }
  return sp;
}

bool binding_satisfies(const Binding& b, const std::vector<SimplePredicate>& conjuncts) {
  for (const SimplePredicate& sp : conjuncts) {
    const Term& t = b.at(sp.variable);
    if (sp.equals != (t == sp.value)) return false;
  }
  return true;
}

namespace {

std::string fragment_id(int n) { return "F" + std::to_string(n); }

void sort_by_id(Fragmentation& frags) {
  std::sort(frags.fragments.begin(), frags.fragments.end(),
            [](const Fragment& a, const Fragment& b) { return a.id < b.id; });
}

}  // namespace

Fragmentation vertical_fragmentation(const SelectionResult& selection,
                                     const RdfGraph& hot) {
  Fragmentation frags;
  frags.strategy = Fragmentation::Strategy::Vertical;
  int n = 1;
  for (const PatternStats& st : selection.selected) {
    Fragment f;
    f.id = fragment_id(n++);
    f.source = Fragment::Source::Vertical;
    f.pattern_code = st.pattern.id;
    MatchSet ms = evaluate(st.pattern.graph, hot);
    f.match_count = static_cast<long long>(ms.bindings.size());
    f.graph = induced_subgraph(st.pattern.graph, ms.bindings);
    frags.fragments.push_back(std::move(f));
  }
  sort_by_id(frags);
  return frags;
}

std::vector<SimplePredicate> harvest_simple_predicates(const Pattern& p,
                                                       const Workload& workload) {
  std::set<std::pair<std::string, Term>> pairs;
  for (const QueryGraph& q : workload.queries) {
    for (const PatternEmbedding& emb : pattern_embeddings(p.graph, q)) {
      for (const auto& [var, image] : emb)
        if (!image.is_variable()) pairs.emplace(var, image.term);
    }
  }
  std::vector<SimplePredicate> sps;
  for (const auto& [var, value] : pairs) {
    sps.push_back({var, true, value});
    sps.push_back({var, false, value});
  }
  std::sort(sps.begin(), sps.end(),
            [](const SimplePredicate& a, const SimplePredicate& b) {
              if (a.variable != b.variable) return a.variable < b.variable;
              if (a.value != b.value) return a.value < b.value;
              return a.equals && !b.equals;
            });
  return sps;
}

namespace {

// use(Q, mp): an embedding of the pattern whose images agree with every
// conjunct; a positive conjunct needs the exact constant at the image, a
// negative one needs anything else (a variable qualifies).
int minterm_usage(const QueryGraph& q, const Pattern& p,
                  const std::vector<SimplePredicate>& conjuncts) {
  for (const PatternEmbedding& emb : pattern_embeddings(p.graph, q)) {
    bool ok = true;
    for (const SimplePredicate& sp : conjuncts) {
      const QVertex& image = emb.at(sp.variable);
      bool is_value = !image.is_variable() && image.term == sp.value;
      if (sp.equals != is_value) {
        ok = false;
        break;
      }
    }
    if (ok) return 1;
  }
  return 0;
}

}  // namespace

std::vector<MintermPredicate> enumerate_minterms(const Pattern& p,
                                                 const std::vector<SimplePredicate>& sps,
                                                 const Workload& workload, int min_acc) {
  std::vector<MintermPredicate> out;
  if (sps.empty()) {
    MintermPredicate mp;
    mp.pattern = p;
    mp.acc = access_frequency(workload, p);
    out.push_back(std::move(mp));
    return out;
  }

  std::set<std::pair<std::string, Term>> pair_set;
  for (const SimplePredicate& sp : sps) pair_set.emplace(sp.variable, sp.value);
  std::vector<std::pair<std::string, Term>> pairs(pair_set.begin(), pair_set.end());
  if (pairs.size() > 20)
    throw ConfigError("too many distinct simple-predicate pairs for pattern " + p.id);

  std::vector<MintermPredicate> kept, pruned;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs.size()); ++mask) {
    MintermPredicate mp;
    mp.pattern = p;
    bool consistent = true;
    std::map<std::string, const Term*> positive;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      bool equals = (mask >> i) & 1;
      if (equals) {
        auto [it, fresh] = positive.emplace(pairs[i].first, &pairs[i].second);
        if (!fresh && !(*it->second == pairs[i].second)) {
          consistent = false;  // two different required values for one variable
          break;
        }
      }
      mp.conjuncts.push_back({pairs[i].first, equals, pairs[i].second});
    }
    if (!consistent) continue;
    std::sort(mp.conjuncts.begin(), mp.conjuncts.end());
    for (const QueryGraph& q : workload.queries)
      mp.acc += minterm_usage(q, p, mp.conjuncts);
    (mp.acc >= min_acc ? kept : pruned).push_back(std::move(mp));
  }

  auto desc = [](const MintermPredicate& mp) {
    std::string d;
    for (const SimplePredicate& sp : mp.conjuncts) d += conjunct_descriptor(sp) + "|";
    return d;
  };
  std::sort(kept.begin(), kept.end(),
            [&](const MintermPredicate& a, const MintermPredicate& b) {
              return desc(a) < desc(b);
            });
  out = std::move(kept);
  if (!pruned.empty()) {
    MintermPredicate residual;
    residual.pattern = p;
    residual.residual = true;
    for (MintermPredicate& mp : pruned) {
      residual.acc += mp.acc;
      residual.absorbed.push_back(std::move(mp.conjuncts));
    }
    out.push_back(std::move(residual));
  }
  return out;
}

Fragmentation horizontal_fragmentation(const SelectionResult& selection,
                                       const RdfGraph& hot, const Workload& workload,
                                       int min_acc) {
  Fragmentation frags;
  frags.strategy = Fragmentation::Strategy::Horizontal;
  int n = 1;
  for (const PatternStats& st : selection.selected) {
    const Pattern& p = st.pattern;
    MatchSet ms = evaluate(p.graph, hot);
    std::vector<SimplePredicate> sps = harvest_simple_predicates(p, workload);
    std::vector<MintermPredicate> minterms =
        enumerate_minterms(p, sps, workload, min_acc);

    std::set<Binding> assigned;
    std::vector<std::pair<const MintermPredicate*, std::set<Binding>>> contents;
    for (const MintermPredicate& mp : minterms) {
      if (mp.residual) continue;
      std::set<Binding> mine;
      for (const Binding& b : ms.bindings)
        if (binding_satisfies(b, mp.conjuncts)) {
          mine.insert(b);
          assigned.insert(b);
        }
      contents.emplace_back(&mp, std::move(mine));
    }
    // The residual holds every match outside all kept minterms, which is
    // exactly the union of the pruned minterms' matches.
    for (const MintermPredicate& mp : minterms) {
      if (!mp.residual) continue;
      std::set<Binding> mine;
      for (const Binding& b : ms.bindings)
        if (!assigned.count(b)) mine.insert(b);
      contents.emplace_back(&mp, std::move(mine));
    }

    for (auto& [mp, bindings] : contents) {
      Fragment f;
      f.id = fragment_id(n++);
      f.source = Fragment::Source::Horizontal;
      f.pattern_code = p.id;
      f.conjuncts = mp->conjuncts;
      f.residual = mp->residual;
      f.absorbed = mp->absorbed;
      f.match_count = static_cast<long long>(bindings.size());
      f.graph = induced_subgraph(p.graph, bindings);
      frags.fragments.push_back(std::move(f));
    }
  }
  sort_by_id(frags);
  return frags;
}

void append_cold_fragment(Fragmentation& frags, const RdfGraph& cold) {
  Fragment f;
  f.id = "cold";
  f.source = Fragment::Source::Cold;
  f.match_count = static_cast<long long>(cold.edge_count());
  f.graph = cold;
  frags.fragments.push_back(std::move(f));
  sort_by_id(frags);
}

void save_fragments(const Fragmentation& frags, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::ostringstream manifest;
  for (const Fragment& f : frags.fragments) {
    std::ofstream out(dir / (f.id + ".nt"));
    out << serialize_ntriples(f.graph);
    manifest << f.id << '\t' << f.descriptor() << '\t' << f.match_count << '\t'
             << f.graph.edge_count() << '\n';
  }
  std::ofstream mf(dir / "manifest");
  mf << manifest.str();
}

Fragmentation load_fragments(const std::filesystem::path& dir) {
  std::ifstream mf(dir / "manifest");
  if (!mf) throw ConfigError("missing manifest in " + dir.string());
  Fragmentation frags;
  std::string line;
  while (std::getline(mf, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cols = split_outside_quotes(line, '\t');
    if (cols.size() != 4) throw ParseError("malformed manifest line: " + line);
    Fragment f;
    f.id = cols[0];
    f.match_count = std::stoll(cols[2]);
    const std::string& desc = cols[1];
    if (desc == "cold") {
      f.source = Fragment::Source::Cold;
    } else {
      std::vector<std::string> parts = split_outside_quotes(desc, '|');
      f.pattern_code = parts[0];
      if (parts.size() == 1) {
        f.source = Fragment::Source::Vertical;
      } else {
        f.source = Fragment::Source::Horizontal;
        if (parts.size() == 2 && parts[1] == "residual") {
          f.residual = true;
        } else {
          for (std::size_t i = 1; i < parts.size(); ++i)
            f.conjuncts.push_back(parse_conjunct(parts[i]));
        }
      }
    }
    std::ifstream gf(dir / (f.id + ".nt"));
    if (!gf) throw ConfigError("missing fragment file " + f.id + ".nt");
    std::ostringstream text;
    text << gf.rdbuf();
    f.graph = parse_ntriples(text.str());
    frags.fragments.push_back(std::move(f));
  }
  // Strategy is recovered from the shape of the descriptors; the dictionary
  // header is authoritative when present.
  frags.strategy = Fragmentation::Strategy::Vertical;
  for (const Fragment& f : frags.fragments)
    if (f.source == Fragment::Source::Horizontal)
      frags.strategy = Fragmentation::Strategy::Horizontal;
  return frags;
}

}  // namespace rdffrag
