#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <map>
#include <string>

#include "scgraph/algorithms/cc.hpp"
#include "scgraph/algorithms/gsim.hpp"
#include "scgraph/algorithms/pagerank.hpp"
#include "scgraph/algorithms/sssp.hpp"
#include "scgraph/engine.hpp"
#include "scgraph/kronecker.hpp"
#include "scgraph/partition.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using scg::InputGraph;
using scg::VertexId;

namespace {

template <class A, class Factory>
std::map<VertexId, std::string> run_results(const InputGraph& g, int n,
                                            Factory&& make_algo,
                                            std::uint64_t seed = 7) {
  const auto res = scg::partition(g, n, scg::PartitionMethod::RH, seed);
  scg::EngineOptions opt;
  opt.validate = true;
  scg::Engine<A> eng(res.subgraphs, std::forward<Factory>(make_algo), opt);
  const auto summary = eng.run();
  REQUIRE(summary.converged);
  std::map<VertexId, std::string> out;
  for (const auto& [v, text] : eng.results()) out.emplace(v, text);
  return out;
}

scg::PatternGraph make_pattern(std::vector<std::string> labels,
                               const std::vector<std::pair<int, int>>& edges) {
  scg::PatternGraph q;
  q.labels = std::move(labels);
  q.out.resize(q.labels.size());
  for (std::size_t u = 0; u < q.labels.size(); ++u) {
    q.ordinal_of[static_cast<VertexId>(u)] = static_cast<int>(u);
    q.id_of.push_back(static_cast<VertexId>(u));
  }
  for (const auto& [s, d] : edges) q.out[static_cast<std::size_t>(s)].push_back(d);
  return q;
}

std::string expected_gsim_text(const std::vector<std::set<VertexId>>& sim,
                               VertexId v) {
  std::string s;
  for (std::size_t u = 0; u < sim.size(); ++u) {
    if (sim[u].count(v)) {
      if (!s.empty()) s += ',';
      s += std::to_string(u);
    }
  }
  return s.empty() ? "-" : s;
}

}  // namespace

TEST_CASE("aggregators are commutative and associative") {
  for (int i = 0; i < 200; ++i) {
    const std::uint64_t a = scg::hash_counter(1, 3 * i);
    const std::uint64_t b = scg::hash_counter(1, 3 * i + 1);
    const std::uint64_t c = scg::hash_counter(1, 3 * i + 2);
    using CC = scg::ConnectedComponents;
    CHECK(CC::merge(a, b) == CC::merge(b, a));
    CHECK(CC::merge(CC::merge(a, b), c) == CC::merge(a, CC::merge(b, c)));

    const double x = scg::hash_unit(2, 3 * i) * 10.0;
    const double y = scg::hash_unit(2, 3 * i + 1) * 10.0;
    const double z = scg::hash_unit(2, 3 * i + 2) * 10.0;
    using PR = scg::PageRank;
    CHECK(PR::merge(x, y) == PR::merge(y, x));
    CHECK(PR::merge(PR::merge(x, y), z) ==
          Catch::Approx(PR::merge(x, PR::merge(y, z))).epsilon(1e-12));
    using SP = scg::Sssp;
    CHECK(SP::merge(x, y) == SP::merge(y, x));
    CHECK(SP::merge(SP::merge(x, y), z) == SP::merge(x, SP::merge(y, z)));
  }

  using GS = scg::GraphSim;
  const GS::Value a = {{0, 2}, {2, -1}};
  const GS::Value b = {{1, 5}, {2, 1}};
  const GS::Value c = {{0, -2}, {3, 4}};
  CHECK(GS::merge(a, b) == GS::merge(b, a));
  CHECK(GS::merge(GS::merge(a, b), c) == GS::merge(a, GS::merge(b, c)));
  CHECK(GS::merge(a, b) == GS::Value{{0, 2}, {1, 5}, {2, 0}});
}

TEST_CASE("connected components on an edgeless graph") {
  const auto g = scg::make_input_graph({}, true, {3, 8, 12});
  const auto got = run_results<scg::ConnectedComponents>(
      g, 2, [](const scg::Subgraph& sg) { return scg::ConnectedComponents(sg); });
  REQUIRE(got.size() == 3);
  for (const auto& [v, text] : got) CHECK(text == std::to_string(v));
}

TEST_CASE("connected components match a union-find oracle on a power-law graph") {
  scg::KroneckerParams p;
  p.scale = 10;
  p.seed = 9;
  const auto g = scg::kronecker_generate(p);
  const auto expect = oracle::cc_labels(g);
  for (int n : {1, 4}) {
    const auto got = run_results<scg::ConnectedComponents>(
        g, n,
        [](const scg::Subgraph& sg) { return scg::ConnectedComponents(sg); });
    REQUIRE(got.size() == expect.size());
    for (const auto& [v, text] : got) {
      CHECK(text == std::to_string(expect.at(v)));
    }
  }
}

TEST_CASE("sssp trivial cases") {
  SECTION("isolated source") {
    const auto g = scg::make_input_graph({}, true, {5});
    const auto got = run_results<scg::Sssp>(
        g, 1, [](const scg::Subgraph& sg) { return scg::Sssp(sg, 5); });
    CHECK(got.at(5) == "0");
  }
  SECTION("path split across two partitions") {
    const auto g = scg::make_input_graph({{1, 2}, {2, 3}}, true);
    auto sgs = testutil::build_from_plan(g, {{{1, 2}}, {{2, 3}}}, 0);
    scg::Engine<scg::Sssp> eng(
        std::move(sgs), [](const scg::Subgraph& sg) { return scg::Sssp(sg, 1); });
    REQUIRE(eng.run().converged);
    std::map<VertexId, std::string> got;
    for (const auto& [v, text] : eng.results()) got.emplace(v, text);
    CHECK(got.at(1) == "0");
    CHECK(got.at(2) == "1");
    CHECK(got.at(3) == "2");
  }
  SECTION("unreachable vertices report inf") {
    const auto g = scg::make_input_graph({{1, 2}}, true, {9});
    const auto got = run_results<scg::Sssp>(
        g, 2, [](const scg::Subgraph& sg) { return scg::Sssp(sg, 1); });
    CHECK(got.at(9) == "inf");
  }
}

TEST_CASE("sssp matches dijkstra on a random weighted graph") {
  const auto g = testutil::random_graph(31, 200, 1000, /*weighted=*/true);
  const auto expect = oracle::dijkstra(g, 0);
  for (int n : {1, 2, 4, 8}) {
    const auto got = run_results<scg::Sssp>(
        g, n, [](const scg::Subgraph& sg) { return scg::Sssp(sg, 0); });
    REQUIRE(got.size() == expect.size());
    for (const auto& [v, text] : got) {
      const double d = expect.at(v);
      if (std::isinf(d)) {
        CHECK(text == "inf");
      } else {
        CHECK(std::stod(text) == Catch::Approx(d).margin(1e-12));
      }
    }
  }
}

TEST_CASE("pagerank of a single vertex is the teleport mass") {
  const auto g = scg::make_input_graph({}, true, {0});
  const auto got = run_results<scg::PageRank>(g, 1, [](const scg::Subgraph& sg) {
    return scg::PageRank(sg, 0.85, 0.0, 1);
  });
  CHECK(std::stod(got.at(0)) == Catch::Approx(0.15).margin(1e-12));
}

TEST_CASE("pagerank matches a jacobi oracle on a power-law graph") {
  scg::KroneckerParams p;
  p.scale = 10;
  p.seed = 12;
  const auto g = scg::kronecker_generate(p);
  const auto expect = oracle::pagerank_jacobi(g, 0.85, 200);
  for (int n : {1, 4}) {
    const auto got = run_results<scg::PageRank>(
        g, n,
        [&](const scg::Subgraph& sg) {
          return scg::PageRank(sg, 0.85, 1e-12, g.num_vertices());
        });
    REQUIRE(got.size() == expect.size());
    double mass = 0.0;
    for (const auto& [v, text] : got) {
      const double r = std::stod(text);
      CHECK(r == Catch::Approx(expect.at(v)).margin(1e-8));
      mass += r;
    }
    // Dangling vertices leak their mass, so the total stays below 1.
    CHECK(mass <= 1.0 + 1e-9);
    CHECK(mass >= 0.15 - 1e-9);
  }
}

TEST_CASE("graph simulation requires labels") {
  const auto g = scg::make_input_graph({{0, 1}}, true);
  const auto res = scg::partition(g, 1, scg::PartitionMethod::RH, 0);
  const auto q = make_pattern({"a"}, {});
  CHECK_THROWS_AS(scg::GraphSim(res.subgraphs[0], q), scg::DataError);
}

TEST_CASE("graph simulation with a single-vertex pattern is label matching") {
  auto g = scg::make_input_graph({{0, 1}, {1, 2}}, true);
  g.labels = {{0, "a"}, {1, "b"}, {2, "a"}};
  const auto q = make_pattern({"a"}, {});
  const auto got = run_results<scg::GraphSim>(
      g, 2, [&](const scg::Subgraph& sg) { return scg::GraphSim(sg, q); });
  CHECK(got.at(0) == "0");
  CHECK(got.at(1) == "-");
  CHECK(got.at(2) == "0");
}

TEST_CASE("graph simulation prunes vertices without required successors") {
  // Pattern: 0(a) -> 1(b). Data: 1(a)->2(b), 3(a)->4(c). Vertex 3 has no
  // b-successor and must drop out.
  auto g = scg::make_input_graph({{1, 2}, {3, 4}}, true);
  g.labels = {{1, "a"}, {2, "b"}, {3, "a"}, {4, "c"}};
  const auto q = make_pattern({"a", "b"}, {{0, 1}});
  for (int n : {1, 2}) {
    const auto got = run_results<scg::GraphSim>(
        g, n, [&](const scg::Subgraph& sg) { return scg::GraphSim(sg, q); });
    CHECK(got.at(1) == "0");
    CHECK(got.at(2) == "1");
    CHECK(got.at(3) == "-");
    CHECK(got.at(4) == "-");
  }
}

TEST_CASE("graph simulation cascades removals") {
  // Chain pattern 0(a)->1(b)->2(c) against a data chain that dead-ends:
  // pruning the b-vertex must retroactively prune its a-parent.
  auto g = scg::make_input_graph({{10, 11}, {11, 12}, {20, 21}}, true);
  g.labels = {{10, "a"}, {11, "b"}, {12, "c"},
              {20, "a"}, {21, "b"}};  // 21 has no c-successor
  const auto q = make_pattern({"a", "b", "c"}, {{0, 1}, {1, 2}});
  for (int n : {1, 3}) {
    const auto got = run_results<scg::GraphSim>(
        g, n, [&](const scg::Subgraph& sg) { return scg::GraphSim(sg, q); });
    CHECK(got.at(10) == "0");
    CHECK(got.at(11) == "1");
    CHECK(got.at(12) == "2");
    CHECK(got.at(20) == "-");
    CHECK(got.at(21) == "-");
  }
}

TEST_CASE("graph simulation matches the fixpoint oracle on random graphs") {
  const auto q = make_pattern({"a", "b", "c"}, {{0, 1}, {1, 2}, {0, 2}});
  for (std::uint64_t seed : {41ULL, 42ULL, 43ULL}) {
    const auto g = testutil::random_labeled_graph(seed, 60, 150, {"a", "b", "c"});
    const auto sim = oracle::gsim_fixpoint(g, q);
    for (int n : {1, 3}) {
      const auto got = run_results<scg::GraphSim>(
          g, n, [&](const scg::Subgraph& sg) { return scg::GraphSim(sg, q); });
      REQUIRE(got.size() == g.num_vertices());
      for (const auto& [v, text] : got) {
        CHECK(text == expected_gsim_text(sim, v));
      }
    }
  }
}
