/*
Copyright (c) 2026 The scgraph authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "scgraph/algorithms/cc.hpp"
#include "scgraph/algorithms/gsim.hpp"
#include "scgraph/algorithms/pagerank.hpp"
#include "scgraph/algorithms/sssp.hpp"
#include "scgraph/engine.hpp"
#include "scgraph/input_graph.hpp"
#include "scgraph/kronecker.hpp"
#include "scgraph/partition.hpp"
#include "scgraph/subgraph_io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitNotConverged = 3;

void write_metrics_json(const scg::PartitionMetrics& m, const std::string& method,
                        std::uint64_t seed, const std::filesystem::path& dir) {
  nlohmann::ordered_json j;
  j["imbalance"] = m.imbalance;
  j["replicationFactor"] = m.replication_factor;
  j["edgeCounts"] = m.edge_counts;
  j["vertexCounts"] = m.vertex_counts;
  j["method"] = method;
  j["seed"] = seed;
  std::ofstream f(dir / "metrics.json");
  if (!f) throw scg::DataError("cannot write metrics.json in " + dir.string());
  f << j.dump(2) << '\n';
}

nlohmann::ordered_json read_metrics_json(const std::filesystem::path& dir) {
  std::ifstream f(dir / "metrics.json");
  if (!f) throw scg::DataError("missing metrics.json in " + dir.string());
  nlohmann::ordered_json j;
  f >> j;
  return j;
}

// A partition directory must agree with its own metrics.json before a job
// may run on it.
void check_partition_dir(const std::vector<scg::Subgraph>& sgs,
                         const nlohmann::ordered_json& meta,
                         const std::filesystem::path& dir) {
  const auto edge_counts = meta.at("edgeCounts").get<std::vector<std::size_t>>();
  const auto vertex_counts = meta.at("vertexCounts").get<std::vector<std::size_t>>();
  if (edge_counts.size() != sgs.size() || vertex_counts.size() != sgs.size()) {
    throw scg::DataError(dir.string() + ": metrics.json partition count mismatch");
  }
  for (std::size_t i = 0; i < sgs.size(); ++i) {
    if (sgs[i].num_edges() != edge_counts[i] ||
        sgs[i].num_vertices() != vertex_counts[i]) {
      throw scg::DataError(dir.string() + ": metrics.json disagrees with part file " +
                           std::to_string(i));
    }
  }
}

std::size_t global_vertex_count(const std::vector<scg::Subgraph>& sgs) {
  std::size_t n = 0;
  for (const auto& sg : sgs) {
    for (std::size_t i = 0; i < sg.num_vertices(); ++i) {
      if (sg.role_at(i).role != scg::Role::Mirror) ++n;
    }
  }
  return n;
}

struct RunFlags {
  std::string algo;
  std::string dir;
  std::string out = "result.tsv";
  std::string stats;
  std::string pattern;
  std::uint64_t source = 0;
  bool source_set = false;
  double alpha = 0.85;
  double eps = 0.0;
  int workers = 0;
  int max_supersteps = 0;
  bool validate = false;
};

template <class A, class Factory>
int run_engine(std::vector<scg::Subgraph> sgs, Factory&& make, const RunFlags& f) {
  scg::EngineOptions opt;
  opt.threads = f.workers > 0 ? f.workers : static_cast<int>(sgs.size());
  opt.max_supersteps = f.max_supersteps;
  opt.validate = f.validate;
  scg::Engine<A> engine(std::move(sgs), std::forward<Factory>(make), opt);
  const scg::RunSummary summary = engine.run();
  engine.write_results(f.out);
  if (!f.stats.empty()) scg::write_stats_csv(summary.stats, f.stats);
  std::cout << "supersteps=" << summary.supersteps
            << " pairs_sent=" << summary.total_pairs_sent()
            << " converged=" << (summary.converged ? "yes" : "no") << '\n';
  return summary.converged ? kExitOk : kExitNotConverged;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"subgraph-centric graph engine with vertex-cut partitioning"};
  app.require_subcommand(1);

  // --- gen ---
  auto* gen = app.add_subcommand("gen", "generate a Kronecker power-law edge list");
  int scale = 10;
  std::uint64_t edge_factor = 16, gen_seed = 0;
  std::string gen_out = "edges.txt";
  gen->add_option("--scale", scale, "log2 of vertex count")->capture_default_str();
  gen->add_option("--edgefactor", edge_factor, "edges per vertex")->capture_default_str();
  gen->add_option("--seed", gen_seed, "generator seed")->capture_default_str();
  gen->add_option("-o,--out", gen_out, "output edge-list file")->capture_default_str();

  // --- partition ---
  auto* part = app.add_subcommand("partition", "vertex-cut partition an edge list");
  std::string part_in, part_labels, part_method = "cdbh", part_out = "parts";
  int nparts = 1;
  std::uint64_t part_seed = 0;
  bool undirected = false;
  part->add_option("-i,--input", part_in, "edge-list file")->required();
  part->add_option("--labels", part_labels, "vertex label file");
  part->add_option("-n,--partitions", nparts, "number of partitions")->required();
  part->add_option("--method", part_method, "rh | cdbh")->capture_default_str();
  part->add_option("--seed", part_seed, "partitioning seed")->capture_default_str();
  part->add_flag("--undirected", undirected, "symmetrize the input at load");
  part->add_option("-o,--out", part_out, "output directory")->capture_default_str();

  // --- metrics ---
  auto* met = app.add_subcommand("metrics", "print metrics of a partition directory");
  std::string met_dir;
  met->add_option("-d,--dir", met_dir, "partition directory")->required();

  // --- run ---
  auto* run = app.add_subcommand("run", "run an algorithm over a partition directory");
  RunFlags rf;
  run->add_option("--algo", rf.algo, "cc | sssp | pr | gsim")->required();
  run->add_option("-d,--dir", rf.dir, "partition directory")->required();
  auto* src_opt = run->add_option("--source", rf.source, "source vertex (sssp)");
  run->add_option("--alpha", rf.alpha, "damping factor (pr)")->capture_default_str();
  run->add_option("--eps", rf.eps, "activity tolerance (pr); 0 = 1e-9/N");
  run->add_option("--pattern", rf.pattern, "pattern graph file (gsim)");
  run->add_option("--workers", rf.workers, "worker threads (default: partition count)");
  run->add_option("--max-supersteps", rf.max_supersteps, "superstep safety cap");
  run->add_option("--stats", rf.stats, "per-superstep stats CSV path");
  run->add_flag("--validate", rf.validate, "enable debug coherence checks");
  run->add_option("-o,--out", rf.out, "result file")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*gen) {
      scg::KroneckerParams p;
      p.scale = scale;
      p.edge_factor = edge_factor;
      p.seed = gen_seed;
      const auto edges = scg::kronecker_edges(p);
      std::ofstream f(gen_out);
      if (!f) throw scg::DataError("cannot write " + gen_out);
      for (const auto& e : edges) f << e.src << ' ' << e.dst << '\n';
      std::cout << "wrote " << edges.size() << " edges to " << gen_out << '\n';
      return kExitOk;
    }

    if (*part) {
      scg::EdgeListSpec spec;
      spec.path = part_in;
      spec.directed = !undirected;
      const scg::InputGraph g = scg::load_edge_list(spec, part_labels);
      const auto method = scg::partition_method_from(part_method);
      scg::PartitionResult res = scg::partition(g, nparts, method, part_seed);
      std::filesystem::create_directories(part_out);
      scg::dump_subgraphs(res.subgraphs, part_out);
      write_metrics_json(res.metrics, part_method, part_seed, part_out);
      std::cout << "imbalance=" << res.metrics.imbalance
                << " replicationFactor=" << res.metrics.replication_factor << '\n';
      return kExitOk;
    }

    if (*met) {
      const auto sgs = scg::load_subgraphs(met_dir);
      const auto m = scg::compute_metrics(sgs);
      std::cout << "imbalance=" << m.imbalance
                << " replicationFactor=" << m.replication_factor << '\n';
      return kExitOk;
    }

    if (*run) {
      rf.source_set = src_opt->count() > 0;
      auto sgs = scg::load_subgraphs(rf.dir);
      check_partition_dir(sgs, read_metrics_json(rf.dir), rf.dir);
      if (rf.algo == "cc") {
        return run_engine<scg::ConnectedComponents>(
            std::move(sgs),
            [](const scg::Subgraph& sg) { return scg::ConnectedComponents(sg); }, rf);
      }
      if (rf.algo == "sssp") {
        if (!rf.source_set) {
          std::cerr << "sssp requires --source\n";
          return kExitUsage;
        }
        return run_engine<scg::Sssp>(
            std::move(sgs),
            [&rf](const scg::Subgraph& sg) { return scg::Sssp(sg, rf.source); }, rf);
      }
      if (rf.algo == "pr") {
        const std::size_t n = global_vertex_count(sgs);
        return run_engine<scg::PageRank>(
            std::move(sgs),
            [&rf, n](const scg::Subgraph& sg) {
              return scg::PageRank(sg, rf.alpha, rf.eps, n);
            },
            rf);
      }
      if (rf.algo == "gsim") {
        if (rf.pattern.empty()) {
          std::cerr << "gsim requires --pattern\n";
          return kExitUsage;
        }
        static scg::PatternGraph q = scg::load_pattern(rf.pattern);
        return run_engine<scg::GraphSim>(
            std::move(sgs),
            [](const scg::Subgraph& sg) { return scg::GraphSim(sg, q); }, rf);
      }
      std::cerr << "unknown algorithm: " << rf.algo << '\n';
      return kExitUsage;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitOk;
}
