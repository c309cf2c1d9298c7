#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "rdffrag/allocator.hpp"
#include "rdffrag/dictionary.hpp"
#include "rdffrag/engine.hpp"
#include "rdffrag/fragmenter.hpp"
#include "rdffrag/miner.hpp"
#include "rdffrag/selector.hpp"

namespace rdffrag {

struct Config {
  int theta = 1;
  int min_sup = 1;
  long long storage_capacity = 0;  // 0 = default to 2 * |E(hot)|
  int sites = 1;
  Fragmentation::Strategy strategy = Fragmentation::Strategy::Vertical;
  int min_acc = 1;
  int max_pattern_edges = 4;
  int concurrency = 1;
  std::string graph_path;
  std::string workload_path;
  std::string out_dir;
  // theta / minSup may be given as "N%" of the workload size; resolved once
  // the workload is known.
  std::string theta_raw;
  std::string min_sup_raw;
};

/// Flat key=value file; '#' comments. Unknown keys are an error.
Config load_config_file(const std::filesystem::path& path);

/// Resolves "N%" counts against the workload size (ceiling, at least 1).
int resolve_count(const std::string& raw, std::size_t workload_size);

/// All offline stages run in memory.
struct OfflineResult {
  GraphSplit split;
  std::vector<PatternStats> mined;
  SelectionResult selection;
  Fragmentation frags;  // includes the cold fragment
  AllocationGraph allocation_graph;
  Allocation alloc;
  Dictionary dict;
  std::size_t graph_edges = 0;
};

OfflineResult run_offline(const Config& cfg, const RdfGraph& g, const Workload& w);

struct PipelineResult {
  std::size_t pattern_count = 0;
  long long benefit = 0;
  double redundancy = 0.0;  // total fragment edges (cold included) / |E(G)|
  std::vector<long long> site_edges;
  std::vector<std::string> warnings;
};

/// split -> mine -> select -> fragment -> allocate -> persist.
PipelineResult run_pipeline(const Config& cfg);

/// Persisted artifacts reloaded for the online pipeline.
struct Artifacts {
  Fragmentation frags;
  Dictionary dict;
  SimulatedCluster cluster;
};

Artifacts load_artifacts(const std::filesystem::path& dir);

struct QueryRun {
  Decomposition decomposition;
  JoinPlan plan;
  ExecutionReport report;
};

QueryRun run_query(const QueryGraph& q, const Artifacts& artifacts);

struct BenchReport {
  std::string strategy;
  std::size_t queries = 0;
  double mean_ms = 0.0;
  double median_ms = 0.0;
  double queries_per_minute = 0.0;
  double mean_sites_touched = 0.0;
  long long shipped_bindings = 0;
};

/// Replays a workload against loaded artifacts; `concurrency` independent
/// engine instances share the read-only artifacts.
BenchReport run_bench(const Artifacts& artifacts, const Workload& queries,
                      int concurrency = 1);

std::string read_file(const std::filesystem::path& path);

}  // namespace rdffrag
