// Command-line driver for the fragmentation/allocation pipeline and the
// simulated distributed query engine.

#include <cstdio>
#include <filesystem>
#include <iostream>

#include "CLI11.hpp"
#include "rdffrag/error.hpp"
#include "rdffrag/pipeline.hpp"

namespace {

using namespace rdffrag;

struct Options {
  Config cfg;
  std::string config_path;
  std::string query_path;
};

Config effective_config(const Options& opt, const Config& overrides,
                        const std::vector<std::string>& set_flags) {
  Config cfg = opt.config_path.empty() ? Config{} : load_config_file(opt.config_path);
  auto flagged = [&](const std::string& name) {
    return std::find(set_flags.begin(), set_flags.end(), name) != set_flags.end();
  };
  if (flagged("--theta")) cfg.theta_raw = overrides.theta_raw;
  if (flagged("--min-sup")) cfg.min_sup_raw = overrides.min_sup_raw;
  if (flagged("--sc")) cfg.storage_capacity = overrides.storage_capacity;
  if (flagged("--sites")) cfg.sites = overrides.sites;
  if (flagged("--strategy")) cfg.strategy = overrides.strategy;
  if (flagged("--min-acc")) cfg.min_acc = overrides.min_acc;
  if (flagged("--max-pattern-edges"))
    cfg.max_pattern_edges = overrides.max_pattern_edges;
  if (flagged("--concurrency")) cfg.concurrency = overrides.concurrency;
  if (flagged("--graph")) cfg.graph_path = overrides.graph_path;
  if (flagged("--workload")) cfg.workload_path = overrides.workload_path;
  if (flagged("--out")) cfg.out_dir = overrides.out_dir;
  return cfg;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError(what);
}

OfflineResult offline_from(const Config& cfg) {
  require(!cfg.graph_path.empty(), "--graph is required");
  require(!cfg.workload_path.empty(), "--workload is required");
  RdfGraph g = parse_ntriples(read_file(cfg.graph_path));
  Workload w = parse_workload(read_file(cfg.workload_path));
  return run_offline(cfg, g, w);
}

int cmd_mine(const Config& cfg) {
  OfflineResult off = offline_from(cfg);
  for (const PatternStats& st : off.mined)
    std::cout << st.pattern.id << '\t' << st.acc << '\t' << st.pattern.edge_count()
              << '\n';
  return 0;
}

int cmd_select(const Config& cfg) {
  OfflineResult off = offline_from(cfg);
  for (const PatternStats& st : off.selection.selected)
    std::cout << st.pattern.id << '\n';
  long long sc = cfg.storage_capacity > 0
                     ? cfg.storage_capacity
                     : 2 * static_cast<long long>(off.split.hot.edge_count());
  std::cout << "benefit=" << off.selection.benefit
            << " cost=" << off.selection.total_edge_cost << " SC=" << sc << '\n';
  return 0;
}

int cmd_partition(const Config& cfg) {
  require(!cfg.out_dir.empty(), "--out is required");
  PipelineResult res = run_pipeline(cfg);
  for (const std::string& warning : res.warnings)
    std::cerr << "warning: " << warning << '\n';
  std::cout << "patterns=" << res.pattern_count << '\n';
  std::cout << "benefit=" << res.benefit << '\n';
  std::printf("redundancy=%.4f\n", res.redundancy);
  for (std::size_t s = 0; s < res.site_edges.size(); ++s)
    std::cout << "site " << s << " edges=" << res.site_edges[s] << '\n';
  return 0;
}

int cmd_allocate(const Config& cfg) {
  OfflineResult off = offline_from(cfg);
  for (const std::string& warning : off.alloc.warnings)
    std::cerr << "warning: " << warning << '\n';
  for (std::size_t site = 0; site < off.alloc.clusters.size(); ++site) {
    std::cout << "site " << site << ":";
    const auto& cluster = off.alloc.clusters[site];
    for (std::size_t i = 0; i < cluster.size(); ++i)
      std::cout << (i ? ", " : " ") << cluster[i];
    std::cout << '\n';
  }
  // Edge skew across sites, cold fragment included at site 0.
  std::vector<long long> edges(static_cast<std::size_t>(off.dict.sites), 0);
  for (const Fragment& f : off.frags.fragments) {
    int site = f.source == Fragment::Source::Cold ? 0 : off.alloc.site_of.at(f.id);
    edges[static_cast<std::size_t>(site)] +=
        static_cast<long long>(f.graph.edge_count());
  }
  long long mx = 0, mn = edges.empty() ? 0 : edges[0];
  for (long long e : edges) {
    mx = std::max(mx, e);
    mn = std::min(mn, e);
  }
  if (mn == 0)
    std::cout << "skew=inf\n";
  else
    std::printf("skew=%.4f\n", static_cast<double>(mx) / static_cast<double>(mn));
  return 0;
}

int cmd_query(const Config& cfg, const std::string& query_path) {
  require(!cfg.out_dir.empty(), "--out (artifact directory) is required");
  Artifacts artifacts = load_artifacts(cfg.out_dir);
  std::vector<QueryGraph> components = parse_query(read_file(query_path));
  for (const QueryGraph& q : components) {
    QueryRun run = run_query(q, artifacts);

    std::cout << "decomposition:";
    for (const SubQuery& sq : run.decomposition.subqueries) {
      switch (sq.kind) {
        case SubQuery::Kind::Pattern:
          std::cout << " [" << sq.code << "]";
          break;
        case SubQuery::Kind::Cold:
          std::cout << " [cold " << sq.graph.edges.size() << " edge"
                    << (sq.graph.edges.size() == 1 ? "" : "s") << "]";
          break;
        case SubQuery::Kind::Wildcard:
          std::cout << " [wildcard]";
          break;
      }
    }
    std::cout << '\n';
    std::cout << "plan:";
    for (int i : run.plan.order) std::cout << " q" << i;
    std::cout << '\n';

    std::vector<std::string> vars = q.variables();
    for (std::size_t i = 0; i < vars.size(); ++i)
      std::cout << (i ? "\t" : "") << vars[i];
    std::cout << '\n';
    for (const Binding& b : run.report.bindings.bindings) {
      for (std::size_t i = 0; i < vars.size(); ++i)
        std::cout << (i ? "\t" : "") << to_ntriples(b.at(vars[i]));
      std::cout << '\n';
    }
    std::cout << "sites=" << run.report.sites_touched.size()
              << " shipped=" << run.report.shipped_bindings
              << " cost_est=" << run.plan.est_cost << " elapsed_ms="
              << run.report.elapsed.count() / 1000 << '\n';
  }
  return 0;
}

int cmd_bench(const Config& cfg) {
  require(!cfg.out_dir.empty(), "--out (artifact directory) is required");
  require(!cfg.workload_path.empty(), "--workload is required");
  Artifacts artifacts = load_artifacts(cfg.out_dir);
  Workload queries = parse_workload(read_file(cfg.workload_path));
  BenchReport r = run_bench(artifacts, queries, cfg.concurrency);
  std::cout << "strategy\tqueries\tmean_ms\tmedian_ms\tqpm\tmean_sites\tshipped\n";
  if (r.queries == 0) return 0;
  std::printf("%s\t%zu\t%.3f\t%.3f\t%.1f\t%.3f\t%lld\n", r.strategy.c_str(), r.queries,
              r.mean_ms, r.median_ms, r.queries_per_minute, r.mean_sites_touched,
              r.shipped_bindings);
  return 0;
}

int cmd_stats(const Config& cfg) {
  require(!cfg.out_dir.empty(), "--out (artifact directory) is required");
  Artifacts artifacts = load_artifacts(cfg.out_dir);
  const Dictionary& dict = artifacts.dict;
  std::cout << "strategy="
            << (dict.strategy == Fragmentation::Strategy::Vertical ? "vertical"
                                                                   : "horizontal")
            << '\n';
  std::cout << "sites=" << dict.sites << '\n';
  std::cout << "patterns=" << dict.entries.size() << '\n';
  std::cout << "fragments=" << artifacts.frags.fragments.size() << '\n';
  long long fragment_edges = 0;
  std::vector<long long> site_edges(static_cast<std::size_t>(dict.sites), 0);
  for (const Fragment& f : artifacts.frags.fragments) {
    fragment_edges += static_cast<long long>(f.graph.edge_count());
    int site = f.source == Fragment::Source::Cold ? 0
                                                  : artifacts.cluster.site_of(f.id);
    site_edges[static_cast<std::size_t>(site)] +=
        static_cast<long long>(f.graph.edge_count());
  }
  long long total = dict.hot_edge_total() + dict.cold_edge_total();
  if (total > 0)
    std::printf("redundancy=%.4f\n",
                static_cast<double>(fragment_edges) / static_cast<double>(total));
  for (std::size_t s = 0; s < site_edges.size(); ++s)
    std::cout << "site " << s << " edges=" << site_edges[s] << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Workload-driven RDF fragmentation, allocation and distributed "
               "BGP query processing"};
  app.require_subcommand(1);

  Options opt;
  Config& ov = opt.cfg;
  std::string strategy_name = "vertical";

  app.add_option("--config", opt.config_path, "key=value config file");
  app.add_option("--graph", ov.graph_path, "N-Triples data graph");
  app.add_option("--workload", ov.workload_path, "SPARQL workload file");
  app.add_option("--theta", ov.theta_raw, "hot property threshold (count or N%)");
  app.add_option("--min-sup", ov.min_sup_raw, "pattern support (count or N%)");
  app.add_option("--sc", ov.storage_capacity, "storage budget in edges");
  app.add_option("--sites", ov.sites, "number of sites");
  app.add_option("--strategy", strategy_name, "vertical | horizontal");
  app.add_option("--min-acc", ov.min_acc, "minterm pruning threshold");
  app.add_option("--max-pattern-edges", ov.max_pattern_edges, "pattern growth cap");
  app.add_option("--out", ov.out_dir, "artifact directory");
  app.add_option("--concurrency", ov.concurrency, "bench engine instances");

  CLI::App* mine = app.add_subcommand("mine", "mine frequent access patterns");
  CLI::App* select = app.add_subcommand("select", "select patterns under budget");
  CLI::App* partition =
      app.add_subcommand("partition", "run the offline pipeline and persist");
  CLI::App* allocate = app.add_subcommand("allocate", "cluster fragments onto sites");
  CLI::App* query = app.add_subcommand("query", "decompose, optimize and execute");
  query->add_option("queryfile", opt.query_path, "SPARQL query file")->required();
  CLI::App* bench = app.add_subcommand("bench", "replay a workload and report");
  CLI::App* stats = app.add_subcommand("stats", "summarize persisted artifacts");

  // Global flags remain usable after the subcommand name.
  for (CLI::App* sub : app.get_subcommands(nullptr)) sub->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    if (strategy_name == "horizontal" || strategy_name == "h")
      ov.strategy = rdffrag::Fragmentation::Strategy::Horizontal;
    else if (strategy_name == "vertical" || strategy_name == "v")
      ov.strategy = rdffrag::Fragmentation::Strategy::Vertical;
    else
      throw rdffrag::ConfigError("unknown strategy: " + strategy_name);

    std::vector<std::string> set_flags;
    for (const auto* o : app.get_options())
      if (o->count() > 0) set_flags.push_back(o->get_name());
    rdffrag::Config cfg = effective_config(opt, ov, set_flags);

    if (mine->parsed()) return cmd_mine(cfg);
    if (select->parsed()) return cmd_select(cfg);
    if (partition->parsed()) return cmd_partition(cfg);
    if (allocate->parsed()) return cmd_allocate(cfg);
    if (query->parsed()) return cmd_query(cfg, opt.query_path);
    if (bench->parsed()) return cmd_bench(cfg);
    if (stats->parsed()) return cmd_stats(cfg);
  } catch (const rdffrag::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const rdffrag::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
