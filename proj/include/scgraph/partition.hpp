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
#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "scgraph/hash.hpp"
#include "scgraph/input_graph.hpp"
#include "scgraph/subgraph.hpp"
#include "scgraph/types.hpp"

namespace scg {

enum class PartitionMethod { RH, CDBH };

inline const char* to_string(PartitionMethod m) {
  return m == PartitionMethod::RH ? "rh" : "cdbh";
}
inline PartitionMethod partition_method_from(const std::string& s) {
  if (s == "rh") return PartitionMethod::RH;
  if (s == "cdbh") return PartitionMethod::CDBH;
  throw DataError("unknown partition method: " + s);
}

struct PartitionMetrics {
  double imbalance = 1.0;          // max_i |E_i| / (|E|/n)
  double replication_factor = 1.0; // sum_i |V_i| / |V|
  std::vector<std::size_t> edge_counts;
  std::vector<std::size_t> vertex_counts;
};

inline DegreeTable compute_degrees(const InputGraph& g) {
  DegreeTable t;
  t.reserve(g.num_vertices());
  for (VertexId v : g.vertices) t[v] = VertexDegrees{};
  for (const Edge& e : g.edges) {
    auto& s = t[e.src];
    ++s.total;
    ++s.out;
    ++t[e.dst].total;
  }
  return t;
}

// Random-hash vertex-cut: owner from the canonical (id-sorted) endpoint
// pair, so both orientations of an edge land in the same partition.
inline int assign_edge_rh(const Edge& e, int n) {
  if (n < 1) throw DataError("assign_edge_rh: partition count must be >= 1");
  const VertexId a = std::min(e.src, e.dst), b = std::max(e.src, e.dst);
  return static_cast<int>(hash64(hash64(a) * 31 + hash64(b)) %
                          static_cast<std::uint64_t>(n));
}

// Canonical degree-based hashing: sort endpoints by id, then hash the one
// with the smaller total degree (ties keep the smaller id). Hub edges thus
// spread across partitions while low-degree endpoints stay put.
inline int assign_edge_cdbh(const Edge& e, const DegreeTable& degrees, int n) {
  if (n < 1) throw DataError("assign_edge_cdbh: partition count must be >= 1");
  const VertexId a = std::min(e.src, e.dst), b = std::max(e.src, e.dst);
  const auto ita = degrees.find(a);
  if (ita == degrees.end()) {
    throw DataError("assign_edge_cdbh: no degree entry for vertex " +
                    std::to_string(a));
  }
  const auto itb = degrees.find(b);
  if (itb == degrees.end()) {
    throw DataError("assign_edge_cdbh: no degree entry for vertex " +
                    std::to_string(b));
  }
  const VertexId pivot = itb->second.total < ita->second.total ? b : a;
  return static_cast<int>(hash64(pivot) % static_cast<std::uint64_t>(n));
}

// Random master election: replica sets are iterated in ascending partition
// id; the master index is a pure function of (vertex id, seed).
inline RoleTable elect_masters(const std::map<VertexId, std::set<int>>& replicas,
                               std::uint64_t seed) {
  RoleTable roles;
  roles.reserve(replicas.size());
  for (const auto& [v, parts] : replicas) {
    ReplicaRole r;
    if (parts.size() == 1) {
      roles[v] = r;  // Internal
      continue;
    }
    std::vector<int> sorted(parts.begin(), parts.end());
    const std::size_t mi =
        static_cast<std::size_t>(hash64(v ^ seed) % sorted.size());
    const int master = sorted[mi];
    // One table serves all partitions; each holder reads its own view.
    r.role = Role::Master;
    r.master_partition = master;
    for (int p : sorted) {
      if (p != master) r.mirror_partitions.push_back(p);
    }
    roles[v] = r;
  }
  return roles;
}

// elect_masters produces master-view entries; a mirror partition stores the
// Mirror view of the same vertex.
inline ReplicaRole role_view_for_partition(const ReplicaRole& master_view, int pid) {
  if (master_view.role == Role::Internal) return master_view;
  ReplicaRole r;
  if (master_view.master_partition == pid) {
    r.role = Role::Master;
    r.mirror_partitions = master_view.mirror_partitions;
  } else {
    r.role = Role::Mirror;
    r.master_partition = master_view.master_partition;
  }
  return r;
}

using EdgeAssigner = std::function<int(const Edge&)>;

struct PartitionResult {
  std::vector<Subgraph> subgraphs;
  PartitionMetrics metrics;
};

inline PartitionMetrics compute_metrics(const std::vector<Subgraph>& sgs) {
  PartitionMetrics m;
  std::size_t total_edges = 0, replica_count = 0, distinct = 0;
  for (const Subgraph& sg : sgs) {
    m.edge_counts.push_back(sg.num_edges());
    m.vertex_counts.push_back(sg.num_vertices());
    total_edges += sg.num_edges();
    replica_count += sg.num_vertices();
    for (std::size_t i = 0; i < sg.num_vertices(); ++i) {
      if (sg.role_at(i).role != Role::Mirror) ++distinct;
    }
  }
  const std::size_t n = sgs.size();
  if (total_edges == 0) {
    m.imbalance = 1.0;
  } else {
    const std::size_t mx = *std::max_element(m.edge_counts.begin(), m.edge_counts.end());
    m.imbalance = static_cast<double>(mx) /
                  (static_cast<double>(total_edges) / static_cast<double>(n));
  }
  m.replication_factor =
      distinct == 0 ? 1.0
                    : static_cast<double>(replica_count) / static_cast<double>(distinct);
  return m;
}

// Full vertex-cut pipeline with an arbitrary per-edge assigner: assign
// edges, place isolated vertices, elect masters, build subgraphs.
inline PartitionResult partition_with(const InputGraph& g, int n,
                                      const EdgeAssigner& assign,
                                      std::uint64_t seed) {
  if (n < 1) throw DataError("partition: partition count must be >= 1");
  const DegreeTable degrees = compute_degrees(g);

  std::vector<std::vector<Edge>> owned(static_cast<std::size_t>(n));
  std::map<VertexId, std::set<int>> replicas;
  for (const Edge& e : g.edges) {
    const int pid = assign(e);
    owned[static_cast<std::size_t>(pid)].push_back(e);
    replicas[e.src].insert(pid);
    replicas[e.dst].insert(pid);
  }
  std::vector<std::set<VertexId>> isolated(static_cast<std::size_t>(n));
  for (VertexId v : g.vertices) {
    if (!replicas.count(v)) {
      const int pid = static_cast<int>(hash64(v ^ seed) % static_cast<std::uint64_t>(n));
      isolated[static_cast<std::size_t>(pid)].insert(v);
      replicas[v].insert(pid);
    }
  }
  const RoleTable master_view = elect_masters(replicas, seed);

  PartitionResult res;
  res.subgraphs.reserve(static_cast<std::size_t>(n));
  for (int pid = 0; pid < n; ++pid) {
    RoleTable local;
    for (const Edge& e : owned[static_cast<std::size_t>(pid)]) {
      for (VertexId v : {e.src, e.dst}) {
        if (!local.count(v)) local[v] = role_view_for_partition(master_view.at(v), pid);
      }
    }
    res.subgraphs.push_back(build_subgraph(
        pid, n, owned[static_cast<std::size_t>(pid)], degrees, local,
        isolated[static_cast<std::size_t>(pid)],
        g.has_labels() ? &g.labels : nullptr));
  }
  res.metrics = compute_metrics(res.subgraphs);
  return res;
}

inline PartitionResult partition(const InputGraph& g, int n, PartitionMethod method,
                                 std::uint64_t seed) {
  if (method == PartitionMethod::RH) {
    return partition_with(g, n, [n](const Edge& e) { return assign_edge_rh(e, n); },
                          seed);
  }
  const DegreeTable degrees = compute_degrees(g);
  return partition_with(
      g, n, [&degrees, n](const Edge& e) { return assign_edge_cdbh(e, degrees, n); },
      seed);
}

}  // namespace scg
