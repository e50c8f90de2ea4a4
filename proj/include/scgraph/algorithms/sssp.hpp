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

#include <cstdio>
#include <limits>
#include <queue>
#include <string>
#include <vector>

#include "scgraph/pair_vector.hpp"
#include "scgraph/subgraph.hpp"
#include "scgraph/transport.hpp"
#include "scgraph/types.hpp"

namespace scg {

// Single-source shortest paths: sequential Dijkstra per subgraph. Workers
// without the source are idle at superstep 0; afterwards externally improved
// frontier distances are pushed into the min-priority queue and the local
// Dijkstra resumes. Aggregator: min. Unreachable vertices report "inf".
class Sssp {
 public:
  using Value = double;
  using State = double;
  static constexpr bool kAllowInternalEmit = false;
  static constexpr double kUnreachable = std::numeric_limits<double>::infinity();

  static Value merge(const Value& a, const Value& b) { return a < b ? a : b; }
  static void encode(const Value& v, std::string& buf) { put_f64(buf, v); }
  static Value decode(ByteReader& r) { return r.f64(); }

  Sssp(const Subgraph& sg, VertexId source)
      : sg_(&sg), source_(source), dist_(sg.num_vertices(), kUnreachable) {}

  template <class Emitter>
  void compute(const Subgraph& sg, int superstep, const PairVector<Value>& inbox,
               Emitter& emit) {
    using QEntry = std::pair<double, std::size_t>;
    std::priority_queue<QEntry, std::vector<QEntry>, std::greater<QEntry>> pq;
    std::vector<char> improved(sg.num_vertices(), 0);

    if (superstep == 0) {
      if (sg.has_vertex(source_)) {
        const std::size_t s = sg.local_index(source_);
        dist_[s] = 0.0;
        pq.push({0.0, s});
      }
    } else {
      for (const auto& [v, d] : inbox) {
        const std::size_t i = sg.local_index(v);
        if (d < dist_[i]) {
          dist_[i] = d;
          pq.push({d, i});
        }
      }
    }

    while (!pq.empty()) {
      const auto [d, i] = pq.top();
      pq.pop();
      if (d > dist_[i]) continue;  // stale entry
      const auto nbrs = sg.children_at(i);
      for (std::size_t k = 0; k < nbrs.size(); ++k) {
        const std::size_t j = sg.local_index(nbrs[k]);
        const double nd = d + sg.out_weight_at(i, k);
        if (nd < dist_[j]) {
          dist_[j] = nd;
          improved[j] = 1;
          pq.push({nd, j});
        }
      }
    }

    for (VertexId v : sg.frontier_vertices()) {
      const std::size_t i = sg.local_index(v);
      if (improved[i]) emit.add(v, dist_[i]);
    }
  }

  double distance(VertexId v) const { return dist_[sg_->local_index(v)]; }
  State debug_state(VertexId v) const { return distance(v); }
  std::string result_text(VertexId v) const {
    const double d = distance(v);
    if (d == kUnreachable) return "inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", d);
    return buf;
  }

 private:
  const Subgraph* sg_;
  VertexId source_;
  std::vector<double> dist_;
};

}  // namespace scg
