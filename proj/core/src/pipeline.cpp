#include "rdffrag/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "rdffrag/error.hpp"

namespace rdffrag {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int resolve_count(const std::string& raw, std::size_t workload_size) {
  if (raw.empty()) throw ConfigError("empty count value");
  if (raw.back() == '%') {
    double pct = std::stod(raw.substr(0, raw.size() - 1));
    if (pct < 0) throw ConfigError("negative percentage: " + raw);
    int v = static_cast<int>(
        std::ceil(pct / 100.0 * static_cast<double>(workload_size)));
    return std::max(1, v);
  }
  int v = std::stoi(raw);
  if (v < 1) throw ConfigError("count must be >= 1: " + raw);
  return v;
}

Config load_config_file(const std::filesystem::path& path) {
  Config cfg;
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path.string());
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    std::size_t eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("expected key=value", lineno);
    std::string key = line.substr(first, eq - first);
    std::string value = line.substr(eq + 1);
    while (!key.empty() && (key.back() == ' ' || key.back() == '\t')) key.pop_back();
    std::size_t vf = value.find_first_not_of(" \t");
    value = vf == std::string::npos ? "" : value.substr(vf);
    while (!value.empty() && (value.back() == ' ' || value.back() == '\t' ||
                              value.back() == '\r'))
      value.pop_back();

    if (key == "theta")
      cfg.theta_raw = value;
    else if (key == "min_sup")
      cfg.min_sup_raw = value;
    else if (key == "sc")
      cfg.storage_capacity = std::stoll(value);
    else if (key == "sites")
      cfg.sites = std::stoi(value);
    else if (key == "strategy")
      cfg.strategy = value == "horizontal" || value == "h"
                         ? Fragmentation::Strategy::Horizontal
                         : Fragmentation::Strategy::Vertical;
    else if (key == "min_acc")
      cfg.min_acc = std::stoi(value);
    else if (key == "max_pattern_edges")
      cfg.max_pattern_edges = std::stoi(value);
    else if (key == "concurrency")
      cfg.concurrency = std::stoi(value);
    else if (key == "graph")
      cfg.graph_path = value;
    else if (key == "workload")
      cfg.workload_path = value;
    else if (key == "out")
      cfg.out_dir = value;
    else
      throw ParseError("unknown config key: " + key, lineno);
  }
  return cfg;
}

OfflineResult run_offline(const Config& cfg, const RdfGraph& g, const Workload& w) {
  OfflineResult res;
  res.graph_edges = g.edge_count();

  int theta = cfg.theta_raw.empty() ? cfg.theta
                                    : resolve_count(cfg.theta_raw, w.queries.size());
  int min_sup = cfg.min_sup_raw.empty()
                    ? cfg.min_sup
                    : resolve_count(cfg.min_sup_raw, w.queries.size());
  if (theta < 1 || min_sup < 1) throw ConfigError("theta and minSup must be >= 1");
  if (cfg.sites < 1) throw ConfigError("site count must be >= 1");
  if (cfg.min_acc < 1) throw ConfigError("minAcc must be >= 1");

  res.split = split_hot_cold(g, w, theta);

  long long hot_edges = static_cast<long long>(res.split.hot.edge_count());
  long long sc = cfg.storage_capacity > 0 ? cfg.storage_capacity : 2 * hot_edges;
  if (sc < hot_edges)
    throw ConfigError("SC (" + std::to_string(sc) + ") below hot graph size (" +
                      std::to_string(hot_edges) + ")");

  res.mined = mine_frequent_patterns(w, res.split.frequent_properties, min_sup,
                                     res.split.hot, cfg.max_pattern_edges);
  res.selection = select_patterns(res.mined, w, {sc, min_sup, theta});

  res.frags = cfg.strategy == Fragmentation::Strategy::Vertical
                  ? vertical_fragmentation(res.selection, res.split.hot)
                  : horizontal_fragmentation(res.selection, res.split.hot, w,
                                             cfg.min_acc);
  append_cold_fragment(res.frags, res.split.cold);

  res.allocation_graph = build_allocation_graph(res.frags, w);
  res.alloc = allocate(res.allocation_graph, cfg.sites);
  res.dict = build_dictionary(res.frags, res.alloc, res.selection, res.split.cold,
                              cfg.sites);
  return res;
}

PipelineResult run_pipeline(const Config& cfg) {
  RdfGraph g = parse_ntriples(read_file(cfg.graph_path));
  Workload w = parse_workload(read_file(cfg.workload_path));
  OfflineResult off = run_offline(cfg, g, w);

  if (cfg.out_dir.empty()) throw ConfigError("output directory not set");
  std::filesystem::create_directories(cfg.out_dir);
  save_fragments(off.frags, cfg.out_dir);
  save_dictionary(off.dict, std::filesystem::path(cfg.out_dir) / "dictionary");

  PipelineResult res;
  res.pattern_count = off.selection.selected.size();
  res.benefit = off.selection.benefit;
  long long fragment_edges = 0;
  res.site_edges.assign(static_cast<std::size_t>(cfg.sites), 0);
  for (const Fragment& f : off.frags.fragments) {
    fragment_edges += static_cast<long long>(f.graph.edge_count());
    int site = f.source == Fragment::Source::Cold ? 0 : off.alloc.site_of.at(f.id);
    res.site_edges[static_cast<std::size_t>(site)] +=
        static_cast<long long>(f.graph.edge_count());
  }
  res.redundancy = g.edge_count() == 0
                       ? 1.0
                       : static_cast<double>(fragment_edges) /
                             static_cast<double>(g.edge_count());
  res.warnings = off.alloc.warnings;
  return res;
}

Artifacts load_artifacts(const std::filesystem::path& dir) {
  Fragmentation frags = load_fragments(dir);
  Dictionary dict = load_dictionary(dir / "dictionary");
  frags.strategy = dict.strategy;
  std::map<std::string, int> site_of;
  for (const auto& [code, entry] : dict.entries)
    for (std::size_t i = 0; i < entry.fragment_ids.size(); ++i)
      site_of[entry.fragment_ids[i]] = entry.site_ids[i];
  SimulatedCluster cluster(frags, site_of, dict.sites);
  return Artifacts{std::move(frags), std::move(dict), std::move(cluster)};
}

QueryRun run_query(const QueryGraph& q, const Artifacts& artifacts) {
  QueryRun run;
  run.decomposition = decompose(q, artifacts.dict);
  run.plan = optimize(run.decomposition, artifacts.dict);
  run.report =
      execute(q, run.plan, run.decomposition, artifacts.cluster, artifacts.dict);
  return run;
}

BenchReport run_bench(const Artifacts& artifacts, const Workload& queries,
                      int concurrency) {
  if (concurrency < 1) throw ConfigError("concurrency must be >= 1");
  BenchReport report;
  report.strategy =
      artifacts.dict.strategy == Fragmentation::Strategy::Vertical ? "vertical"
                                                                   : "horizontal";
  report.queries = queries.queries.size();
  if (queries.queries.empty()) return report;

  std::vector<double> latencies(queries.queries.size(), 0.0);
  std::vector<long long> sites(queries.queries.size(), 0);
  std::vector<long long> shipped(queries.queries.size(), 0);

  auto wall_start = std::chrono::steady_clock::now();
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::string first_error;
  auto worker = [&] {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= queries.queries.size()) break;
      try {
        auto t0 = std::chrono::steady_clock::now();
        QueryRun run = run_query(queries.queries[i], artifacts);
        auto t1 = std::chrono::steady_clock::now();
        latencies[i] = std::chrono::duration<double, std::milli>(t1 - t0).count();
        sites[i] = static_cast<long long>(run.report.sites_touched.size());
        shipped[i] = run.report.shipped_bindings;
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (first_error.empty())
          first_error = "query " + std::to_string(i) + ": " + e.what();
      }
    }
  };
  if (concurrency == 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (int t = 0; t < concurrency; ++t) threads.emplace_back(worker);
    for (std::thread& t : threads) t.join();
  }
  if (!first_error.empty()) throw ConfigError(first_error);
  double wall_minutes = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - wall_start)
                            .count() /
                        60.0;

  double total = 0.0, total_sites = 0.0;
  for (std::size_t i = 0; i < latencies.size(); ++i) {
    total += latencies[i];
    total_sites += static_cast<double>(sites[i]);
    report.shipped_bindings += shipped[i];
  }
  std::vector<double> sorted = latencies;
  std::sort(sorted.begin(), sorted.end());
  report.mean_ms = total / static_cast<double>(latencies.size());
  report.median_ms = sorted.size() % 2
                         ? sorted[sorted.size() / 2]
                         : (sorted[sorted.size() / 2 - 1] + sorted[sorted.size() / 2]) / 2;
  report.queries_per_minute =
      wall_minutes > 0 ? static_cast<double>(latencies.size()) / wall_minutes : 0.0;
  report.mean_sites_touched = total_sites / static_cast<double>(latencies.size());
  return report;
}

}  // namespace rdffrag
