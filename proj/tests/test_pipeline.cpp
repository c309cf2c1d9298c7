#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "rdffrag/error.hpp"
#include "rdffrag/pipeline.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace rdffrag;

namespace {

namespace fs = std::filesystem;

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name)
      : path(fs::temp_directory_path() / name) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

Config fixture_config(const fs::path& dir, long long sc = 9,
                      Fragmentation::Strategy strategy =
                          Fragmentation::Strategy::Vertical) {
  Config cfg;
  cfg.theta = 2;
  cfg.min_sup = 2;
  cfg.storage_capacity = sc;
  cfg.sites = 2;
  cfg.strategy = strategy;
  cfg.graph_path = std::string(RDFFRAG_TEST_DATA_DIR) + "/g0.nt";
  cfg.workload_path = std::string(RDFFRAG_TEST_DATA_DIR) + "/w0.sparql";
  cfg.out_dir = dir.string();
  return cfg;
}

}  // namespace

TEST_CASE("pipeline on g0/w0 reproduces the worked summary") {
  TempDir dir("rdffrag_pipe1");
  PipelineResult res = run_pipeline(fixture_config(dir.path));
  CHECK(res.pattern_count == 3);
  CHECK(res.benefit == 8);
  CHECK(res.redundancy == doctest::Approx(13.0 / 9.0));  // 9 hot copies + 4 cold
  REQUIRE(res.site_edges.size() == 2);
  CHECK(res.site_edges[0] == 9);  // F1(2) + F2(3) + cold(4)
  CHECK(res.site_edges[1] == 4);  // F3
}

TEST_CASE("pipeline at SC=8 selects two patterns with benefit 5") {
  TempDir dir("rdffrag_pipe2");
  PipelineResult res = run_pipeline(fixture_config(dir.path, 8));
  CHECK(res.pattern_count == 2);
  CHECK(res.benefit == 5);
}

TEST_CASE("missing input files raise config errors") {
  Config cfg = fixture_config("/tmp/rdffrag_nowhere");
  cfg.graph_path = "/tmp/rdffrag_does_not_exist.nt";
  CHECK_THROWS_AS(run_pipeline(cfg), ConfigError);
}

TEST_CASE("pipeline artifacts reload into a working engine") {
  TempDir dir("rdffrag_pipe3");
  run_pipeline(fixture_config(dir.path));
  Artifacts artifacts = load_artifacts(dir.path);
  CHECK(artifacts.dict.entries.size() == 3);
  CHECK(artifacts.frags.fragments.size() == 4);  // three patterns + cold

  QueryGraph q5 = fixtures::query(fixtures::kQ5);
  QueryRun run = run_query(q5, artifacts);
  CHECK(run.report.bindings.bindings == evaluate(q5, fixtures::g0()).bindings);
}

TEST_CASE("two runs produce byte-identical manifests and dictionaries") {
  for (auto strategy : {Fragmentation::Strategy::Vertical,
                        Fragmentation::Strategy::Horizontal}) {
    TempDir a("rdffrag_pipe_a"), b("rdffrag_pipe_b");
    run_pipeline(fixture_config(a.path, 9, strategy));
    run_pipeline(fixture_config(b.path, 9, strategy));
    CHECK(read_file(a.path / "manifest") == read_file(b.path / "manifest"));
    CHECK(read_file(a.path / "dictionary") == read_file(b.path / "dictionary"));
    for (const auto& entry : fs::directory_iterator(a.path)) {
      fs::path other = b.path / entry.path().filename();
      CHECK(fs::exists(other));
      CHECK(read_file(entry.path()) == read_file(other));
    }
  }
}

TEST_CASE("bench replays a workload and reports oracle-equal answers") {
  TempDir dir("rdffrag_pipe4");
  run_pipeline(fixture_config(dir.path));
  Artifacts artifacts = load_artifacts(dir.path);
  Workload w = fixtures::w0();
  for (const QueryGraph& q : w.queries) {
    QueryRun run = run_query(q, artifacts);
    CHECK(run.report.bindings.bindings == evaluate(q, fixtures::g0()).bindings);
  }
  BenchReport rep = run_bench(artifacts, w, 2);
  CHECK(rep.queries == 6);
  CHECK(rep.strategy == "vertical");
  CHECK(rep.mean_sites_touched > 0);
  CHECK(rep.mean_sites_touched <= 2.0);
  BenchReport empty = run_bench(artifacts, Workload{}, 1);
  CHECK(empty.queries == 0);
}

TEST_CASE("both strategies produce comparable bench rows on the same inputs") {
  TempDir v("rdffrag_pipe_v"), h("rdffrag_pipe_h");
  run_pipeline(fixture_config(v.path, 9, Fragmentation::Strategy::Vertical));
  run_pipeline(fixture_config(h.path, 9, Fragmentation::Strategy::Horizontal));
  Workload w = fixtures::w0();
  BenchReport rv = run_bench(load_artifacts(v.path), w, 1);
  BenchReport rh = run_bench(load_artifacts(h.path), w, 1);
  CHECK(rv.strategy == "vertical");
  CHECK(rh.strategy == "horizontal");
  CHECK(rv.queries == rh.queries);
  CHECK(rv.shipped_bindings > 0);
  CHECK(rh.shipped_bindings > 0);
}

TEST_CASE("config files parse and flags win") {
  TempDir dir("rdffrag_pipe5");
  fs::path cfg_path = dir.path / "run.cfg";
  {
    std::ofstream out(cfg_path);
    out << "# fixture run\n"
        << "theta=2\n"
        << "min_sup = 2\n"
        << "sc=9\n"
        << "sites=2\n"
        << "strategy=vertical\n";
  }
  Config cfg = load_config_file(cfg_path);
  CHECK(cfg.theta_raw == "2");
  CHECK(cfg.min_sup_raw == "2");
  CHECK(cfg.storage_capacity == 9);
  CHECK(cfg.sites == 2);

  fs::path bad = dir.path / "bad.cfg";
  {
    std::ofstream out(bad);
    out << "nonsense=1\n";
  }
  CHECK_THROWS_AS(load_config_file(bad), ParseError);
}

TEST_CASE("percentage counts resolve against the workload size") {
  CHECK(resolve_count("2", 100) == 2);
  CHECK(resolve_count("0.1%", 8'151'238) == 8152);
  CHECK(resolve_count("50%", 6) == 3);
  CHECK(resolve_count("1%", 10) == 1);
  CHECK(resolve_count("0.0001%", 10) == 1);  // floor of 1
  CHECK_THROWS_AS(resolve_count("0", 10), ConfigError);
}

TEST_CASE("artifacts survive hostile term content end to end") {
  // Literals with quotes, backslashes, tabs and separator characters, plus
  // IRIs full of descriptor separators, all funneled through persisted
  // fragments, manifest, dictionary and back into the engine.
  TempDir dir("rdffrag_pipe_hostile");
  std::string graph_text =
      "<s1> <p0> \"tab\there|pipe&at@semi;end\" .\n"
      "<s1> <p1> <urn:x?a=1|2&3@4;5> .\n"
      "<s2> <p0> \"quote\\\"backslash\\\\done\" .\n"
      "<s2> <p1> <urn:x?a=1|2&3@4;5> .\n"
      "<s3> <p0> \"plain\" .\n";
  std::string workload_text =
      "SELECT * WHERE { ?x <p0> ?y . ?x <p1> ?z }\n\n"
      "SELECT * WHERE { ?x <p0> ?y . ?x <p1> ?z }\n\n"
      "SELECT * WHERE { ?x <p0> \"quote\\\"backslash\\\\done\" . ?x <p1> ?z }\n\n"
      "SELECT * WHERE { ?x <p1> <urn:x?a=1|2&3@4;5> }\n\n";
  std::ofstream(dir.path / "g.nt") << graph_text;
  std::ofstream(dir.path / "w.sparql") << workload_text;

  for (auto strategy : {Fragmentation::Strategy::Vertical,
                        Fragmentation::Strategy::Horizontal}) {
    Config cfg;
    cfg.theta = 2;
    cfg.min_sup = 2;
    cfg.storage_capacity = 20;
    cfg.sites = 2;
    cfg.strategy = strategy;
    cfg.graph_path = (dir.path / "g.nt").string();
    cfg.workload_path = (dir.path / "w.sparql").string();
    cfg.out_dir = (dir.path / "out").string();
    std::filesystem::remove_all(cfg.out_dir);
    run_pipeline(cfg);

    Artifacts artifacts = load_artifacts(cfg.out_dir);
    RdfGraph g = parse_ntriples(graph_text);
    for (const QueryGraph& q : parse_workload(workload_text).queries) {
      QueryRun run = run_query(q, artifacts);
      CHECK(run.report.bindings.bindings == evaluate(q, g).bindings);
    }
  }
}

TEST_CASE("bench concurrency does not change the aggregate results") {
  TempDir dir("rdffrag_pipe_conc");
  run_pipeline(fixture_config(dir.path));
  Artifacts artifacts = load_artifacts(dir.path);
  Workload w;
  for (int i = 0; i < 5; ++i)
    for (const QueryGraph& q : fixtures::w0().queries) w.queries.push_back(q);
  BenchReport serial = run_bench(artifacts, w, 1);
  BenchReport parallel = run_bench(artifacts, w, 4);
  CHECK(serial.queries == parallel.queries);
  CHECK(serial.shipped_bindings == parallel.shipped_bindings);
  CHECK(serial.mean_sites_touched ==
        doctest::Approx(parallel.mean_sites_touched));
}

TEST_CASE("end-to-end correctness across strategies on random instances") {
  oracles::Rng rng(oracles::test_seed(91));
  int checked = 0;
  while (checked < 8) {
    RdfGraph g = oracles::random_graph(rng, 12, 80, 6);
    Workload w = oracles::random_workload(rng, g, 10, 3, true);
    for (auto strategy : {Fragmentation::Strategy::Vertical,
                          Fragmentation::Strategy::Horizontal}) {
      Config cfg;
      cfg.theta = 1 + rng.below(2);
      cfg.min_sup = 1 + rng.below(2);
      cfg.storage_capacity = 2 * static_cast<long long>(g.edge_count()) + 4;
      cfg.sites = 1 + rng.below(3);
      cfg.strategy = strategy;
      OfflineResult off = run_offline(cfg, g, w);
      SimulatedCluster cluster(off.frags, off.alloc, cfg.sites);
      for (const QueryGraph& q : w.queries) {
        Decomposition dec = decompose(q, off.dict);
        JoinPlan plan = optimize(dec, off.dict);
        ExecutionReport rep = execute(q, plan, dec, cluster, off.dict);
        CHECK(rep.bindings.bindings == evaluate(q, g).bindings);
      }
    }
    ++checked;
  }
}
