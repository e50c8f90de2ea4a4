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

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "scgraph/pair_vector.hpp"
#include "scgraph/subgraph.hpp"
#include "scgraph/transport.hpp"
#include "scgraph/types.hpp"

namespace scg {

// Connected components: label(v) converges to the smallest vertex id in
// v's component. The subgraph's local components are fixed, so they are
// found once up front; every superstep then lowers each local component to
// the minimum label among its members (seeded from the inbox). Edges count
// in both directions, so directed inputs are handled on their undirected
// closure. Aggregator: min.
class ConnectedComponents {
 public:
  using Value = VertexId;
  using State = std::uint64_t;
  static constexpr bool kAllowInternalEmit = false;

  static Value merge(const Value& a, const Value& b) { return a < b ? a : b; }
  static void encode(const Value& v, std::string& buf) { put_u64(buf, v); }
  static Value decode(ByteReader& r) { return r.u64(); }

  explicit ConnectedComponents(const Subgraph& sg) : sg_(&sg) {
    const std::size_t nv = sg.num_vertices();
    labels_.reserve(nv);
    for (VertexId v : sg.vertex_ids()) labels_.push_back(v);

    comp_.assign(nv, SIZE_MAX);
    std::vector<std::size_t> stack;
    for (std::size_t s = 0; s < nv; ++s) {
      if (comp_[s] != SIZE_MAX) continue;
      comp_[s] = n_comps_;
      stack.push_back(s);
      while (!stack.empty()) {
        const std::size_t i = stack.back();
        stack.pop_back();
        auto visit = [&](VertexId nb) {
          const std::size_t j = sg.local_index(nb);
          if (comp_[j] == SIZE_MAX) {
            comp_[j] = n_comps_;
            stack.push_back(j);
          }
        };
        for (VertexId nb : sg.children_at(i)) visit(nb);
        for (VertexId nb : sg.parents_at(i)) visit(nb);
      }
      ++n_comps_;
    }
  }

  template <class Emitter>
  void compute(const Subgraph& sg, int superstep, const PairVector<Value>& inbox,
               Emitter& emit) {
    const std::size_t nv = sg.num_vertices();
    for (const auto& [v, label] : inbox) {
      const std::size_t i = sg.local_index(v);
      if (label < labels_[i]) labels_[i] = label;
    }
    std::vector<VertexId> comp_min(n_comps_, std::numeric_limits<VertexId>::max());
    for (std::size_t i = 0; i < nv; ++i) {
      comp_min[comp_[i]] = std::min(comp_min[comp_[i]], labels_[i]);
    }
    std::vector<char> changed(nv, 0);
    for (std::size_t i = 0; i < nv; ++i) {
      if (labels_[i] > comp_min[comp_[i]]) {
        labels_[i] = comp_min[comp_[i]];
        changed[i] = 1;
      }
    }

    for (VertexId v : sg.frontier_vertices()) {
      const std::size_t i = sg.local_index(v);
      const bool init_changed = superstep == 0 && labels_[i] != v;
      if (changed[i] || init_changed) emit.add(v, labels_[i]);
    }
  }

  VertexId label(VertexId v) const { return labels_[sg_->local_index(v)]; }
  State debug_state(VertexId v) const { return label(v); }
  std::string result_text(VertexId v) const { return std::to_string(label(v)); }

 private:
  const Subgraph* sg_;
  std::vector<VertexId> labels_;
  std::vector<std::size_t> comp_;  // local component index per vertex
  std::size_t n_comps_ = 0;
};

}  // namespace scg
