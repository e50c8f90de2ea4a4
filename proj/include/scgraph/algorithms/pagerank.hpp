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
#include <map>
#include <string>
#include <vector>

#include "scgraph/pair_vector.hpp"
#include "scgraph/subgraph.hpp"
#include "scgraph/transport.hpp"
#include "scgraph/types.hpp"

namespace scg {

// Accumulative PageRank. Every vertex starts with a pending delta of
// (1-alpha)/N; applying a delta adds it to the rank and forwards
// alpha*delta/outDegree along local out-edges. Deltas addressed to frontier
// vertices are never applied locally: they are withheld, routed through the
// exchange, summed at the master, and applied uniformly by every replica on
// arrival — each contribution counted exactly once. The initial delta of a
// frontier vertex is injected by its master only, for the same reason.
// Contributions to dangling vertices' successors do not exist (out-degree 0
// drops its mass). Aggregator: sum.
class PageRank {
 public:
  using Value = double;
  using State = double;
  static constexpr bool kAllowInternalEmit = false;

  static Value merge(const Value& a, const Value& b) { return a + b; }
  static void encode(const Value& v, std::string& buf) { put_f64(buf, v); }
  static Value decode(ByteReader& r) { return r.f64(); }

  // epsilon <= 0 selects the default activity threshold 1e-9 / N.
  PageRank(const Subgraph& sg, double alpha, double epsilon, std::size_t global_n)
      : sg_(&sg),
        alpha_(alpha),
        n_(static_cast<double>(global_n)),
        eps_(epsilon > 0 ? epsilon : 1e-9 / static_cast<double>(global_n)),
        value_(sg.num_vertices(), 0.0),
        delta_(sg.num_vertices(), 0.0) {}

  template <class Emitter>
  void compute(const Subgraph& sg, int superstep, const PairVector<Value>& inbox,
               Emitter& emit) {
    std::map<VertexId, double> withheld;

    auto apply = [&](std::size_t i, double d) {
      value_[i] += d;
      const std::uint64_t outdeg = sg.degrees_at(i).out;
      if (outdeg == 0) return;  // dangling: mass dropped
      const double c = alpha_ * d / static_cast<double>(outdeg);
      for (VertexId w : sg.children_at(i)) {
        const std::size_t j = sg.local_index(w);
        if (sg.role_at(j).role == Role::Internal) {
          delta_[j] += c;
        } else {
          withheld[w] += c;
        }
      }
    };

    if (superstep == 0) {
      const double seed = (1.0 - alpha_) / n_;
      for (std::size_t i = 0; i < sg.num_vertices(); ++i) {
        switch (sg.role_at(i).role) {
          case Role::Internal:
            delta_[i] += seed;
            break;
          case Role::Master:
            withheld[sg.vertex_id(i)] += seed;
            break;
          case Role::Mirror:
            break;
        }
      }
    }
    // Merged frontier deltas arrive identically at every replica; each
    // replica applies them and forwards along its own share of out-edges.
    for (const auto& [v, d] : inbox) apply(sg.local_index(v), d);

    // Local cascade: passes until no internal vertex stays active.
    bool active = true;
    while (active) {
      active = false;
      for (std::size_t i = 0; i < sg.num_vertices(); ++i) {
        if (delta_[i] > eps_) {
          const double d = delta_[i];
          delta_[i] = 0.0;
          apply(i, d);
          active = true;
        }
      }
    }

    // The activity threshold applies to emissions as well; otherwise the
    // geometrically shrinking contributions circulate forever.
    for (const auto& [v, d] : withheld) {
      if (d > eps_) emit.add(v, d);
    }
  }

  double rank(VertexId v) const { return value_[sg_->local_index(v)]; }
  State debug_state(VertexId v) const { return rank(v); }
  std::string result_text(VertexId v) const {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", rank(v));
    return buf;
  }

 private:
  const Subgraph* sg_;
  double alpha_;
  double n_;
  double eps_;
  std::vector<double> value_;
  std::vector<double> delta_;
};

}  // namespace scg
