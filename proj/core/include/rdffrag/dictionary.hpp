#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rdffrag/allocator.hpp"
#include "rdffrag/fragmenter.hpp"
#include "rdffrag/pattern.hpp"

namespace rdffrag {

/// One minterm fragment of a pattern entry.
struct MintermInfo {
  std::vector<SimplePredicate> conjuncts;
  bool residual = false;
  std::string fragment_id;
  long long match_count = 0;
};

struct DictionaryEntry {
  std::string code;
  long long match_count = 0;  // |[[p]]| over hot
  long long edge_count = 0;   // |E([[p]])| over hot
  std::vector<std::string> fragment_ids;
  std::vector<int> site_ids;               // aligned with fragment_ids
  std::vector<MintermInfo> minterms;       // horizontal strategy only
};

/// Global metadata consulted by the online pipeline: pattern entries keyed
/// by canonical code, per-property cold edge counts, strategy and site
/// count. Built once offline, read-only afterwards.
struct Dictionary {
  Fragmentation::Strategy strategy = Fragmentation::Strategy::Vertical;
  int sites = 1;
  std::map<std::string, DictionaryEntry> entries;
  std::map<std::string, long long> cold_stats;

  bool is_hot_property(const std::string& p) const;
  long long hot_edge_total() const;
  long long cold_edge_total() const;
};

Dictionary build_dictionary(const Fragmentation& frags, const Allocation& alloc,
                            const SelectionResult& selection, const RdfGraph& cold,
                            int sites);

/// Fragments (and their sites) relevant to a subquery of this entry's shape:
/// all of them under the vertical strategy; under the horizontal strategy
/// only the minterms consistent with the subquery's constants, plus the
/// residual.
struct LookupResult {
  const DictionaryEntry* entry = nullptr;
  std::vector<std::string> fragment_ids;
  std::vector<int> site_ids;
};

std::optional<LookupResult> lookup(const QueryGraph& subquery, const Dictionary& dict);

/// card(q): stored match count for pattern-shaped subqueries (narrowed to
/// consistent minterms when constants allow), product of per-edge cold
/// counts for cold subqueries, 0 for unknown properties. Worst-case products
/// throughout.
long long estimate_card(const QueryGraph& subquery, const Dictionary& dict);

void save_dictionary(const Dictionary& dict, const std::filesystem::path& path);
Dictionary load_dictionary(const std::filesystem::path& path);

}  // namespace rdffrag
