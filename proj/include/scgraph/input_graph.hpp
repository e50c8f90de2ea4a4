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
#include <cstddef>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "scgraph/types.hpp"

namespace scg {

// Immutable global edge/vertex collection, the partitioner's input.
// Always directed; undirected sources are expanded into two opposite
// edges at load time. Edges are deduplicated by (src, dst), keeping the
// minimum weight, and sorted.
struct InputGraph {
  std::vector<Edge> edges;             // sorted by (src, dst), unique
  std::vector<VertexId> vertices;      // sorted, unique, superset of endpoints
  std::map<VertexId, std::string> labels;

  std::size_t num_edges() const { return edges.size(); }
  std::size_t num_vertices() const { return vertices.size(); }
  bool has_labels() const { return !labels.empty(); }
};

// Normalizes a raw edge stream (plus extra vertices, e.g. isolated ones
// mentioned only in a label file) into an InputGraph.
inline InputGraph make_input_graph(std::vector<Edge> edges, bool directed,
                                   std::vector<VertexId> extra_vertices = {},
                                   std::map<VertexId, std::string> labels = {}) {
  for (const Edge& e : edges) {
    if (e.weight < 0.0) {
      throw DataError("negative edge weight on edge " + std::to_string(e.src) +
                      " -> " + std::to_string(e.dst));
    }
  }
  if (!directed) {
    const std::size_t n = edges.size();
    edges.reserve(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
      edges.push_back({edges[i].dst, edges[i].src, edges[i].weight});
    }
  }
  std::sort(edges.begin(), edges.end());
  // Collapse duplicate (src, dst); sort order puts the minimum weight first.
  edges.erase(std::unique(edges.begin(), edges.end(),
                          [](const Edge& a, const Edge& b) {
                            return a.src == b.src && a.dst == b.dst;
                          }),
              edges.end());

  InputGraph g;
  g.vertices = std::move(extra_vertices);
  for (const Edge& e : edges) {
    g.vertices.push_back(e.src);
    g.vertices.push_back(e.dst);
  }
  for (const auto& [v, lbl] : labels) g.vertices.push_back(v);
  std::sort(g.vertices.begin(), g.vertices.end());
  g.vertices.erase(std::unique(g.vertices.begin(), g.vertices.end()),
                   g.vertices.end());
  g.edges = std::move(edges);
  g.labels = std::move(labels);
  return g;
}

struct EdgeListSpec {
  std::string path;
  bool directed = true;
  char comment = '#';
};

// Whitespace-separated "src dst [weight]" lines; '#' lines are comments.
inline std::vector<Edge> read_edge_lines(const EdgeListSpec& spec) {
  std::ifstream in(spec.path);
  if (!in) throw DataError("cannot open edge list: " + spec.path);
  std::vector<Edge> edges;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == spec.comment) continue;
    std::istringstream ls(line);
    Edge e;
    double w = 1.0;
    if (!(ls >> e.src >> e.dst)) {
      throw DataError(spec.path + ":" + std::to_string(lineno) +
                      ": malformed edge line");
    }
    if (ls >> w) e.weight = w;
    std::string rest;
    if (ls >> rest) {
      throw DataError(spec.path + ":" + std::to_string(lineno) +
                      ": trailing tokens on edge line");
    }
    if (e.weight < 0.0) {
      throw DataError(spec.path + ":" + std::to_string(lineno) +
                      ": negative edge weight");
    }
    edges.push_back(e);
  }
  return edges;
}

// One "<vertexId> <label>" per line.
inline std::map<VertexId, std::string> read_label_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open label file: " + path);
  std::map<VertexId, std::string> labels;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    VertexId v;
    std::string lbl;
    if (!(ls >> v >> lbl)) {
      throw DataError(path + ":" + std::to_string(lineno) +
                      ": malformed label line");
    }
    labels[v] = lbl;
  }
  return labels;
}

inline InputGraph load_edge_list(const EdgeListSpec& spec,
                                 const std::string& label_path = "") {
  std::map<VertexId, std::string> labels;
  if (!label_path.empty()) labels = read_label_file(label_path);
  return make_input_graph(read_edge_lines(spec), spec.directed, {},
                          std::move(labels));
}

}  // namespace scg
