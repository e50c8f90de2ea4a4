// Independent reference implementations used only by tests. These stay
// deliberately naive and separate from the engine code paths they check.
#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "scgraph/algorithms/gsim.hpp"
#include "scgraph/input_graph.hpp"
#include "scgraph/types.hpp"

namespace oracle {

using scg::Edge;
using scg::InputGraph;
using scg::VertexId;

// Union-find connected-component labels over the undirected closure;
// label = smallest vertex id in the component.
inline std::map<VertexId, VertexId> cc_labels(const InputGraph& g) {
  std::map<VertexId, std::size_t> idx;
  for (VertexId v : g.vertices) idx.emplace(v, idx.size());
  std::vector<std::size_t> parent(idx.size());
  for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = i;
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (const Edge& e : g.edges) {
    parent[find(idx.at(e.src))] = find(idx.at(e.dst));
  }
  std::vector<VertexId> min_id(idx.size(), std::numeric_limits<VertexId>::max());
  for (VertexId v : g.vertices) {
    const std::size_t r = find(idx.at(v));
    min_id[r] = std::min(min_id[r], v);
  }
  std::map<VertexId, VertexId> labels;
  for (VertexId v : g.vertices) labels[v] = min_id[find(idx.at(v))];
  return labels;
}

// Sequential Dijkstra from `source` over directed weighted edges.
inline std::map<VertexId, double> dijkstra(const InputGraph& g, VertexId source) {
  std::map<VertexId, std::vector<std::pair<VertexId, double>>> adj;
  for (const Edge& e : g.edges) adj[e.src].emplace_back(e.dst, e.weight);
  std::map<VertexId, double> dist;
  const double inf = std::numeric_limits<double>::infinity();
  for (VertexId v : g.vertices) dist[v] = inf;
  if (!dist.count(source)) return dist;
  dist[source] = 0.0;
  using Q = std::pair<double, VertexId>;
  std::priority_queue<Q, std::vector<Q>, std::greater<Q>> pq;
  pq.push({0.0, source});
  while (!pq.empty()) {
    const auto [d, u] = pq.top();
    pq.pop();
    if (d > dist[u]) continue;
    const auto it = adj.find(u);
    if (it == adj.end()) continue;
    for (const auto& [w, wt] : it->second) {
      if (d + wt < dist[w]) {
        dist[w] = d + wt;
        pq.push({dist[w], w});
      }
    }
  }
  return dist;
}

// Jacobi power iteration: x(u) = (1-alpha)/N + alpha * sum_{v in N_in(u)}
// x(v)/outdeg(v). Dangling vertices drop their mass (no redistribution).
inline std::map<VertexId, double> pagerank_jacobi(const InputGraph& g, double alpha,
                                                  int iterations) {
  const double n = static_cast<double>(g.num_vertices());
  std::map<VertexId, std::size_t> outdeg;
  for (const Edge& e : g.edges) ++outdeg[e.src];
  std::map<VertexId, double> x;
  for (VertexId v : g.vertices) x[v] = 1.0 / n;
  for (int it = 0; it < iterations; ++it) {
    std::map<VertexId, double> next;
    for (VertexId v : g.vertices) next[v] = (1.0 - alpha) / n;
    for (const Edge& e : g.edges) {
      next[e.dst] += alpha * x[e.src] / static_cast<double>(outdeg[e.src]);
    }
    x = std::move(next);
  }
  return x;
}

// Naive graph-simulation fixpoint: start from label matches, repeatedly
// remove (u, v) pairs violating the successor condition until stable.
inline std::vector<std::set<VertexId>> gsim_fixpoint(
    const InputGraph& g, const scg::PatternGraph& q) {
  std::map<VertexId, std::vector<VertexId>> out;
  for (const Edge& e : g.edges) out[e.src].push_back(e.dst);
  std::vector<std::set<VertexId>> sim(q.size());
  for (std::size_t u = 0; u < q.size(); ++u) {
    for (VertexId v : g.vertices) {
      const auto it = g.labels.find(v);
      if (it != g.labels.end() && it->second == q.labels[u]) sim[u].insert(v);
    }
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t u = 0; u < q.size(); ++u) {
      for (auto it = sim[u].begin(); it != sim[u].end();) {
        bool ok = true;
        for (int succ : q.out[u]) {
          bool witness = false;
          const auto oit = out.find(*it);
          if (oit != out.end()) {
            for (VertexId w : oit->second) {
              if (sim[static_cast<std::size_t>(succ)].count(w)) {
                witness = true;
                break;
              }
            }
          }
          if (!witness) {
            ok = false;
            break;
          }
        }
        if (!ok) {
          it = sim[u].erase(it);
          changed = true;
        } else {
          ++it;
        }
      }
    }
  }
  return sim;
}

}  // namespace oracle
