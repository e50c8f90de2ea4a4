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
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "scgraph/types.hpp"

namespace scg {

enum class Role : std::uint8_t { Internal, Master, Mirror };

// Replica placement of one vertex. A Master records where its Mirrors
// live; a Mirror records its Master's partition. Together these form the
// distributed routing table that lets workers exchange frontier updates.
struct ReplicaRole {
  Role role = Role::Internal;
  int master_partition = -1;           // valid iff role == Mirror
  std::vector<int> mirror_partitions;  // valid iff role == Master, sorted

  friend bool operator==(const ReplicaRole& a, const ReplicaRole& b) {
    return a.role == b.role && a.master_partition == b.master_partition &&
           a.mirror_partitions == b.mirror_partitions;
  }
};

struct VertexDegrees {
  std::uint64_t total = 0;  // global in+out degree
  std::uint64_t out = 0;    // global out degree
};

using DegreeTable = std::unordered_map<VertexId, VertexDegrees>;
using RoleTable = std::unordered_map<VertexId, ReplicaRole>;

// One partition's edges plus associated vertices. Structure is read-only
// after construction; adjacency is stored in compressed sorted-neighbor
// form. Algorithm state lives outside, in the algorithm objects.
class Subgraph {
 public:
  Subgraph() = default;

  int partition_id() const { return partition_id_; }
  int num_partitions() const { return n_partitions_; }
  std::size_t num_vertices() const { return ids_.size(); }
  std::size_t num_edges() const { return weights_.size(); }

  bool has_vertex(VertexId v) const { return find(v) >= 0; }

  // Dense local index in [0, num_vertices()), usable as an array key by
  // algorithm state. Throws on unknown ids.
  std::size_t local_index(VertexId v) const {
    const auto i = find(v);
    if (i < 0) {
      throw DataError("partition " + std::to_string(partition_id_) +
                      ": unknown vertex " + std::to_string(v));
    }
    return static_cast<std::size_t>(i);
  }

  VertexId vertex_id(std::size_t local) const { return ids_[local]; }
  std::span<const VertexId> vertex_ids() const { return ids_; }

  const ReplicaRole& role(VertexId v) const { return roles_[local_index(v)]; }
  const ReplicaRole& role_at(std::size_t local) const { return roles_[local]; }

  std::uint64_t full_degree(VertexId v) const {
    return degrees_[local_index(v)].total;
  }
  std::uint64_t out_degree_global(VertexId v) const {
    return degrees_[local_index(v)].out;
  }
  const VertexDegrees& degrees_at(std::size_t local) const {
    return degrees_[local];
  }

  // MA_i ∪ MI_i, ascending by vertex id.
  std::span<const VertexId> frontier_vertices() const { return frontier_; }

  // Local out-neighbors {u | (v, u) ∈ E_i}, sorted.
  std::span<const VertexId> children(VertexId v) const {
    const std::size_t i = local_index(v);
    return {out_nbr_.data() + out_off_[i], out_off_[i + 1] - out_off_[i]};
  }
  // Local in-neighbors {u | (u, v) ∈ E_i}, sorted.
  std::span<const VertexId> parents(VertexId v) const {
    const std::size_t i = local_index(v);
    return {in_nbr_.data() + in_off_[i], in_off_[i + 1] - in_off_[i]};
  }
  std::span<const VertexId> children_at(std::size_t local) const {
    return {out_nbr_.data() + out_off_[local], out_off_[local + 1] - out_off_[local]};
  }
  std::span<const VertexId> parents_at(std::size_t local) const {
    return {in_nbr_.data() + in_off_[local], in_off_[local + 1] - in_off_[local]};
  }

  // Weight of a locally-owned edge, or nullopt (edges are owned exactly
  // once, so absence here is not an error).
  std::optional<double> edge(VertexId src, VertexId dst) const {
    if (!has_vertex(src) || !has_vertex(dst)) return std::nullopt;
    const std::size_t i = local_index(src);
    const auto begin = out_nbr_.begin() + static_cast<std::ptrdiff_t>(out_off_[i]);
    const auto end = out_nbr_.begin() + static_cast<std::ptrdiff_t>(out_off_[i + 1]);
    const auto it = std::lower_bound(begin, end, dst);
    if (it == end || *it != dst) return std::nullopt;
    return weights_[static_cast<std::size_t>(it - out_nbr_.begin())];
  }
  double out_weight_at(std::size_t local, std::size_t k) const {
    return weights_[out_off_[local] + k];
  }

  bool has_labels() const { return !labels_.empty(); }
  const std::string& label(VertexId v) const {
    static const std::string kEmpty;
    if (labels_.empty()) return kEmpty;
    return labels_[local_index(v)];
  }

  std::vector<Edge> owned_edges() const {
    std::vector<Edge> es;
    es.reserve(num_edges());
    for (std::size_t i = 0; i < ids_.size(); ++i) {
      for (std::size_t k = out_off_[i]; k < out_off_[i + 1]; ++k) {
        es.push_back({ids_[i], out_nbr_[k], weights_[k]});
      }
    }
    return es;
  }

  friend bool operator==(const Subgraph& a, const Subgraph& b) {
    return a.partition_id_ == b.partition_id_ &&
           a.n_partitions_ == b.n_partitions_ && a.ids_ == b.ids_ &&
           a.degrees_eq(b) && a.roles_ == b.roles_ && a.labels_ == b.labels_ &&
           a.out_off_ == b.out_off_ && a.out_nbr_ == b.out_nbr_ &&
           a.weights_ == b.weights_;
  }

  friend Subgraph build_subgraph(int partition_id, int n_partitions,
                                 const std::vector<Edge>& assigned_edges,
                                 const DegreeTable& degree_table,
                                 const RoleTable& role_table,
                                 const std::set<VertexId>& isolated_assignees,
                                 const std::map<VertexId, std::string>* labels);

 private:
  std::ptrdiff_t find(VertexId v) const {
    const auto it = std::lower_bound(ids_.begin(), ids_.end(), v);
    if (it == ids_.end() || *it != v) return -1;
    return it - ids_.begin();
  }
  bool degrees_eq(const Subgraph& b) const {
    if (degrees_.size() != b.degrees_.size()) return false;
    for (std::size_t i = 0; i < degrees_.size(); ++i) {
      if (degrees_[i].total != b.degrees_[i].total ||
          degrees_[i].out != b.degrees_[i].out)
        return false;
    }
    return true;
  }

  int partition_id_ = 0;
  int n_partitions_ = 1;
  std::vector<VertexId> ids_;  // sorted
  std::vector<VertexDegrees> degrees_;
  std::vector<ReplicaRole> roles_;
  std::vector<std::string> labels_;  // empty if no labels
  std::vector<VertexId> frontier_;
  // CSR out-adjacency with per-edge weights; in-adjacency for reverse queries.
  std::vector<std::size_t> out_off_, in_off_;
  std::vector<VertexId> out_nbr_, in_nbr_;
  std::vector<double> weights_;
};

inline Subgraph build_subgraph(int partition_id, int n_partitions,
                               const std::vector<Edge>& assigned_edges,
                               const DegreeTable& degree_table,
                               const RoleTable& role_table,
                               const std::set<VertexId>& isolated_assignees = {},
                               const std::map<VertexId, std::string>* labels = nullptr) {
  Subgraph sg;
  sg.partition_id_ = partition_id;
  sg.n_partitions_ = n_partitions;

  std::vector<VertexId> ids;
  ids.reserve(assigned_edges.size() * 2 + isolated_assignees.size());
  for (const Edge& e : assigned_edges) {
    for (VertexId v : {e.src, e.dst}) {
      if (!degree_table.count(v)) {
        throw DataError("build_subgraph: vertex " + std::to_string(v) +
                        " missing from degree table");
      }
      if (!role_table.count(v)) {
        throw DataError("build_subgraph: vertex " + std::to_string(v) +
                        " missing from role table");
      }
      ids.push_back(v);
    }
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  for (VertexId v : isolated_assignees) {
    if (std::binary_search(ids.begin(), ids.end(), v)) {
      throw DataError("build_subgraph: isolated vertex " + std::to_string(v) +
                      " appears as an edge endpoint");
    }
    ids.push_back(v);
  }
  std::sort(ids.begin(), ids.end());
  sg.ids_ = std::move(ids);

  const std::size_t nv = sg.ids_.size();
  sg.degrees_.resize(nv);
  sg.roles_.resize(nv);
  for (std::size_t i = 0; i < nv; ++i) {
    const VertexId v = sg.ids_[i];
    if (const auto it = degree_table.find(v); it != degree_table.end()) {
      sg.degrees_[i] = it->second;
    }
    if (const auto it = role_table.find(v); it != role_table.end()) {
      sg.roles_[i] = it->second;
    } else {
      sg.roles_[i] = ReplicaRole{};  // isolated assignees default Internal
    }
    if (sg.roles_[i].role != Role::Internal) sg.frontier_.push_back(v);
  }
  if (labels && !labels->empty()) {
    sg.labels_.resize(nv);
    for (std::size_t i = 0; i < nv; ++i) {
      if (const auto it = labels->find(sg.ids_[i]); it != labels->end()) {
        sg.labels_[i] = it->second;
      }
    }
  }

  // CSR build: count, prefix-sum, fill, then sort each neighbor run.
  std::vector<Edge> edges = assigned_edges;
  std::sort(edges.begin(), edges.end());
  for (std::size_t i = 1; i < edges.size(); ++i) {
    if (edges[i].src == edges[i - 1].src && edges[i].dst == edges[i - 1].dst) {
      throw DataError("build_subgraph: duplicate edge " +
                      std::to_string(edges[i].src) + " -> " +
                      std::to_string(edges[i].dst));
    }
  }
  sg.out_off_.assign(nv + 1, 0);
  sg.in_off_.assign(nv + 1, 0);
  for (const Edge& e : edges) {
    ++sg.out_off_[sg.local_index(e.src) + 1];
    ++sg.in_off_[sg.local_index(e.dst) + 1];
  }
  for (std::size_t i = 0; i < nv; ++i) {
    sg.out_off_[i + 1] += sg.out_off_[i];
    sg.in_off_[i + 1] += sg.in_off_[i];
  }
  sg.out_nbr_.resize(edges.size());
  sg.weights_.resize(edges.size());
  sg.in_nbr_.resize(edges.size());
  std::vector<std::size_t> ocur(sg.out_off_.begin(), sg.out_off_.end() - 1);
  std::vector<std::size_t> icur(sg.in_off_.begin(), sg.in_off_.end() - 1);
  for (const Edge& e : edges) {
    const std::size_t s = sg.local_index(e.src), d = sg.local_index(e.dst);
    sg.out_nbr_[ocur[s]] = e.dst;
    sg.weights_[ocur[s]] = e.weight;
    ++ocur[s];
    sg.in_nbr_[icur[d]] = e.src;
    ++icur[d];
  }
  // out runs are already sorted (edges sorted by src then dst); in runs need it.
  for (std::size_t i = 0; i < nv; ++i) {
    std::sort(sg.in_nbr_.begin() + static_cast<std::ptrdiff_t>(sg.in_off_[i]),
              sg.in_nbr_.begin() + static_cast<std::ptrdiff_t>(sg.in_off_[i + 1]));
  }
  return sg;
}

}  // namespace scg
