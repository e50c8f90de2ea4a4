// Shared graph builders for the test suites.
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "scgraph/hash.hpp"
#include "scgraph/input_graph.hpp"
#include "scgraph/partition.hpp"
#include "scgraph/types.hpp"

namespace testutil {

using scg::Edge;
using scg::InputGraph;
using scg::VertexId;

// Six-vertex directed example: A=0 B=1 C=2 D=3 E=4 F=5, edges
// (A,B) (A,C) (A,D) (A,F) (C,E) (E,F).
inline InputGraph star_ring_graph() {
  std::vector<Edge> edges = {
      {0, 1}, {0, 2}, {0, 3}, {0, 5}, {2, 4}, {4, 5},
  };
  return scg::make_input_graph(edges, /*directed=*/true);
}

// The forced two-way split of the graph above used by the metrics tests:
// p0 = {(A,B),(A,D)}, p1 = {(A,F),(A,C),(C,E),(E,F)}.
inline std::vector<std::vector<Edge>> star_ring_plan() {
  std::vector<std::vector<Edge>> plan(2);
  plan[0] = {{0, 1}, {0, 3}};
  plan[1] = {{0, 5}, {0, 2}, {2, 4}, {4, 5}};
  return plan;
}

// Seven-vertex undirected example: A=0..G=6, edges {A,D} {A,G} {B,D}
// {B,G} {C,G} {C,E} {E,F} {C,F}. One connected component.
inline InputGraph seven_vertex_graph() {
  std::vector<Edge> edges = {
      {0, 3}, {0, 6}, {1, 3}, {1, 6}, {5, 6}, {5, 4}, {4, 2}, {5, 2},
  };
  // Note G=6 here borders three parts in the forced plan below.
  return scg::make_input_graph(edges, /*directed=*/false);
}

// Forced three-way plan for the graph above: p0 gets A's edges, p1 gets
// B's, p2 gets the C/E/F cluster. Cut vertices are D(3) and G(6).
inline std::vector<std::vector<Edge>> seven_vertex_plan() {
  std::vector<std::vector<Edge>> plan(3);
  auto both = [&](int p, VertexId a, VertexId b) {
    plan[p].push_back({a, b});
    plan[p].push_back({b, a});
  };
  both(0, 0, 3);
  both(0, 0, 6);
  both(1, 1, 3);
  both(1, 1, 6);
  both(2, 5, 6);
  both(2, 5, 4);
  both(2, 4, 2);
  both(2, 5, 2);
  return plan;
}

// Builds subgraphs from an explicit per-partition edge plan, electing
// masters with the given seed. Mirrors the partition_with pipeline but
// with a fixed assignment.
inline std::vector<scg::Subgraph> build_from_plan(
    const InputGraph& g, const std::vector<std::vector<Edge>>& plan,
    std::uint64_t seed) {
  const int n = static_cast<int>(plan.size());
  const scg::DegreeTable degrees = scg::compute_degrees(g);
  std::map<VertexId, std::set<int>> replicas;
  for (int p = 0; p < n; ++p) {
    for (const Edge& e : plan[p]) {
      replicas[e.src].insert(p);
      replicas[e.dst].insert(p);
    }
  }
  const scg::RoleTable masters = scg::elect_masters(replicas, seed);
  std::vector<scg::Subgraph> out;
  for (int p = 0; p < n; ++p) {
    scg::RoleTable local;
    for (const auto& [v, parts] : replicas) {
      if (!parts.count(p)) continue;
      local.emplace(v, scg::role_view_for_partition(masters.at(v), p));
    }
    scg::DegreeTable deg;
    for (const auto& [v, r] : local) {
      (void)r;
      deg.emplace(v, degrees.at(v));
    }
    out.push_back(scg::build_subgraph(p, n, plan[p], deg, local, {},
                                      g.labels.empty() ? nullptr : &g.labels));
  }
  return out;
}

// Finds a master-election seed under which every listed vertex gets the
// requested master partition, given its replica set.
inline std::uint64_t find_seed(
    const std::map<VertexId, std::pair<std::vector<int>, int>>& want) {
  for (std::uint64_t seed = 0; seed < 100000; ++seed) {
    bool ok = true;
    for (const auto& [v, rw] : want) {
      const auto& [reps, target] = rw;
      const std::size_t pick =
          scg::hash64(v ^ seed) % static_cast<std::uint64_t>(reps.size());
      if (reps[pick] != target) {
        ok = false;
        break;
      }
    }
    if (ok) return seed;
  }
  throw std::runtime_error("no election seed found");
}

// Deterministic directed random graph: m draws of (src, dst, weight) with
// endpoints in [0, nv) derived from hash counters. Self-loops skipped.
inline InputGraph random_graph(std::uint64_t seed, std::uint64_t nv,
                               std::uint64_t m, bool weighted,
                               bool directed = true) {
  std::vector<Edge> edges;
  for (std::uint64_t i = 0; i < m; ++i) {
    const VertexId s = scg::hash_counter(seed, 3 * i) % nv;
    const VertexId d = scg::hash_counter(seed, 3 * i + 1) % nv;
    if (s == d) continue;
    const double w = weighted ? 1.0 + scg::hash_unit(seed, 3 * i + 2) * 9.0 : 1.0;
    edges.push_back({s, d, w});
  }
  std::vector<VertexId> all(nv);
  for (std::uint64_t v = 0; v < nv; ++v) all[v] = v;
  return scg::make_input_graph(edges, directed, all);
}

// As above but every vertex also gets a label from `alphabet`.
inline InputGraph random_labeled_graph(std::uint64_t seed, std::uint64_t nv,
                                       std::uint64_t m,
                                       const std::vector<std::string>& alphabet) {
  InputGraph g = random_graph(seed, nv, m, /*weighted=*/false);
  for (VertexId v : g.vertices) {
    g.labels[v] = alphabet[scg::hash_counter(seed ^ 0xabcdULL, v) % alphabet.size()];
  }
  return g;
}

}  // namespace testutil
