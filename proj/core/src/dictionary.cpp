#include "rdffrag/dictionary.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "rdffrag/error.hpp"
#include "rdffrag/matcher.hpp"

namespace rdffrag {

namespace {

// Saturating multiply; worst-case card products can overflow on large
// wildcard-heavy queries.
long long sat_mul(long long a, long long b) {
  constexpr long long kCap = 4'000'000'000'000'000'000LL;
  if (a == 0 || b == 0) return 0;
  if (a > kCap / b) return kCap;
  return a * b;
}

}  // namespace

bool Dictionary::is_hot_property(const std::string& p) const {
  return entries.count("0>1:" + p) > 0;
}

long long Dictionary::hot_edge_total() const {
  // Plain single-edge entries partition the hot graph by property.
  long long total = 0;
  for (const auto& [code, entry] : entries)
    if (code.rfind("0>1:", 0) == 0 && code.find(' ') == std::string::npos)
      total += entry.match_count;
  return total;
}

long long Dictionary::cold_edge_total() const {
  long long total = 0;
  for (const auto& [prop, count] : cold_stats) total += count;
  return total;
}

Dictionary build_dictionary(const Fragmentation& frags, const Allocation& alloc,
                            const SelectionResult& selection, const RdfGraph& cold,
                            int sites) {
  Dictionary dict;
  dict.strategy = frags.strategy;
  dict.sites = sites;

  for (const PatternStats& st : selection.selected) {
    DictionaryEntry entry;
    entry.code = st.pattern.id;
    entry.match_count = st.match_count;
    entry.edge_count = st.match_edge_count;
    dict.entries.emplace(entry.code, std::move(entry));
  }

  for (const Fragment& f : frags.fragments) {
    if (f.source == Fragment::Source::Cold) continue;
    auto it = dict.entries.find(f.pattern_code);
    if (it == dict.entries.end())
      throw ConfigError("fragment " + f.id + " has no selected pattern entry");
    DictionaryEntry& entry = it->second;
    entry.fragment_ids.push_back(f.id);
    auto site = alloc.site_of.find(f.id);
    if (site == alloc.site_of.end())
      throw ConfigError("fragment " + f.id + " missing from the allocation");
    entry.site_ids.push_back(site->second);
    if (f.source == Fragment::Source::Horizontal) {
      MintermInfo mi;
      mi.conjuncts = f.conjuncts;
      mi.residual = f.residual;
      mi.fragment_id = f.id;
      mi.match_count = f.match_count;
      entry.minterms.push_back(std::move(mi));
    }
  }

  for (const auto& label : cold.labels())
    dict.cold_stats[label] = static_cast<long long>(cold.property_count(label));
  return dict;
}

namespace {

bool minterm_consistent(const MintermInfo& mi,
                        const std::vector<PatternEmbedding>& embeddings) {
  if (mi.residual) return true;  // the remainder is always relevant
  for (const PatternEmbedding& emb : embeddings) {
    bool ok = true;
    for (const SimplePredicate& sp : mi.conjuncts) {
      const QVertex& image = emb.at(sp.variable);
      if (image.is_variable()) continue;  // could still bind either way
      if (sp.equals != (image.term == sp.value)) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  }
  return false;
}

}  // namespace

std::optional<LookupResult> lookup(const QueryGraph& subquery, const Dictionary& dict) {
  for (const QEdge& e : subquery.edges)
    if (e.label_is_variable) return std::nullopt;
  std::string code = canonical_code(normalize(subquery));
  auto it = dict.entries.find(code);
  // A single-edge subquery whose shape collapsed to a self-loop still
  // belongs to its property's one-edge pattern.
  if (it == dict.entries.end() && subquery.edges.size() == 1)
    it = dict.entries.find("0>1:" + subquery.edges[0].label);
  if (it == dict.entries.end()) return std::nullopt;
  code = it->first;

  LookupResult res;
  res.entry = &it->second;
  if (dict.strategy == Fragmentation::Strategy::Vertical || it->second.minterms.empty()) {
    res.fragment_ids = it->second.fragment_ids;
    res.site_ids = it->second.site_ids;
    return res;
  }
  QueryGraph pattern = pattern_graph_from_code(code);
  std::vector<PatternEmbedding> embs = pattern_embeddings(pattern, subquery);
  for (const MintermInfo& mi : it->second.minterms) {
    if (!minterm_consistent(mi, embs)) continue;
    res.fragment_ids.push_back(mi.fragment_id);
    for (std::size_t i = 0; i < it->second.fragment_ids.size(); ++i)
      if (it->second.fragment_ids[i] == mi.fragment_id)
        res.site_ids.push_back(it->second.site_ids[i]);
  }
  return res;
}

long long estimate_card(const QueryGraph& subquery, const Dictionary& dict) {
  bool all_concrete = true;
  for (const QEdge& e : subquery.edges)
    if (e.label_is_variable) all_concrete = false;

  if (all_concrete) {
    if (auto res = lookup(subquery, dict)) {
      if (dict.strategy == Fragmentation::Strategy::Horizontal &&
          !res->entry->minterms.empty()) {
        long long total = 0;
        std::set<std::string> narrowed(res->fragment_ids.begin(),
                                       res->fragment_ids.end());
        for (const MintermInfo& mi : res->entry->minterms)
          if (narrowed.count(mi.fragment_id)) total += mi.match_count;
        return total;
      }
      return res->entry->match_count;
    }
  }

  // Worst case: the product of per-edge counts.
  long long product = 1;
  for (const QEdge& e : subquery.edges) {
    long long card;
    if (e.label_is_variable) {
      card = dict.hot_edge_total() + dict.cold_edge_total();
    } else if (dict.is_hot_property(e.label)) {
      card = dict.entries.at("0>1:" + e.label).match_count;
    } else {
      auto it = dict.cold_stats.find(e.label);
      card = it == dict.cold_stats.end() ? 0 : it->second;
    }
    product = sat_mul(product, card);
  }
  return product;
}

namespace {

std::string minterm_field(const MintermInfo& mi) {
  std::string conj;
  if (mi.residual) {
    conj = "residual";
  } else if (mi.conjuncts.empty()) {
    conj = "-";
  } else {
    for (std::size_t i = 0; i < mi.conjuncts.size(); ++i) {
      if (i) conj += '&';
      conj += conjunct_descriptor(mi.conjuncts[i]);
    }
  }
  return conj + "@" + mi.fragment_id + "@" + std::to_string(mi.match_count);
}

MintermInfo parse_minterm_field(const std::string& s) {
  std::vector<std::string> parts = split_outside_quotes(s, '@');
  if (parts.size() != 3) throw ParseError("malformed minterm field: " + s);
  MintermInfo mi;
  mi.fragment_id = parts[1];
  mi.match_count = std::stoll(parts[2]);
  if (parts[0] == "residual") {
    mi.residual = true;
  } else if (parts[0] != "-") {
    for (const std::string& c : split_outside_quotes(parts[0], '&'))
      mi.conjuncts.push_back(parse_conjunct(c));
  }
  return mi;
}

template <typename T>
std::string join(const std::vector<T>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ',';
    if constexpr (std::is_same_v<T, std::string>)
      out += xs[i];
    else
      out += std::to_string(xs[i]);
  }
  return out;
}

}  // namespace

void save_dictionary(const Dictionary& dict, const std::filesystem::path& path) {
  std::ofstream out(path);
  out << "strategy="
      << (dict.strategy == Fragmentation::Strategy::Vertical ? 'v' : 'h')
      << " sites=" << dict.sites << '\n';
  for (const auto& [code, entry] : dict.entries) {
    out << code << '\t' << entry.match_count << '\t' << entry.edge_count << '\t'
        << join(entry.fragment_ids) << '\t' << join(entry.site_ids);
    if (!entry.minterms.empty()) {
      out << '\t';
      for (std::size_t i = 0; i < entry.minterms.size(); ++i) {
        if (i) out << ';';
        out << minterm_field(entry.minterms[i]);
      }
    }
    out << '\n';
  }
  for (const auto& [prop, count] : dict.cold_stats)
    out << "cold:" << prop << '\t' << count << '\n';
}

Dictionary load_dictionary(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("missing dictionary file: " + path.string());
  Dictionary dict;
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty dictionary file");
  {
    std::istringstream hdr(line);
    std::string strat, sites;
    hdr >> strat >> sites;
    if (strat == "strategy=v")
      dict.strategy = Fragmentation::Strategy::Vertical;
    else if (strat == "strategy=h")
      dict.strategy = Fragmentation::Strategy::Horizontal;
    else
      throw ParseError("malformed dictionary header: " + line);
    if (sites.rfind("sites=", 0) != 0)
      throw ParseError("malformed dictionary header: " + line);
    dict.sites = std::stoi(sites.substr(6));
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.rfind("cold:", 0) == 0) {
      std::vector<std::string> cols = split_outside_quotes(line, '\t');
      if (cols.size() != 2) throw ParseError("malformed cold stats line: " + line);
      dict.cold_stats[cols[0].substr(5)] = std::stoll(cols[1]);
      continue;
    }
    std::vector<std::string> cols = split_outside_quotes(line, '\t');
    if (cols.size() != 5 && cols.size() != 6)
      throw ParseError("malformed dictionary line: " + line);
    DictionaryEntry entry;
    entry.code = cols[0];
    entry.match_count = std::stoll(cols[1]);
    entry.edge_count = std::stoll(cols[2]);
    if (!cols[3].empty())
      for (const std::string& id : split_outside_quotes(cols[3], ','))
        entry.fragment_ids.push_back(id);
    if (!cols[4].empty())
      for (const std::string& s : split_outside_quotes(cols[4], ','))
        entry.site_ids.push_back(std::stoi(s));
    if (cols.size() == 6)
      for (const std::string& f : split_outside_quotes(cols[5], ';'))
        entry.minterms.push_back(parse_minterm_field(f));
    dict.entries.emplace(entry.code, std::move(entry));
  }
  return dict;
}

}  // namespace rdffrag
