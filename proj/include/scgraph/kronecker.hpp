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

#include <cmath>
#include <cstdint>
#include <vector>

#include "scgraph/hash.hpp"
#include "scgraph/input_graph.hpp"
#include "scgraph/types.hpp"

namespace scg {

// Graph500-style stochastic Kronecker generator. |V| = 2^scale,
// |E| = edge_factor * 2^scale raw edges (self-loops and duplicates kept in
// the raw stream, collapsed on load). Randomness comes from hash64 in
// counter mode, so the stream is reproducible on any platform.
struct KroneckerParams {
  int scale = 10;
  std::uint64_t edge_factor = 16;
  double a = 0.57, b = 0.19, c = 0.19, d = 0.05;
  std::uint64_t seed = 0;
};

inline void validate(const KroneckerParams& p) {
  if (p.scale < 1) throw DataError("kronecker: scale must be >= 1");
  if (std::abs(p.a + p.b + p.c + p.d - 1.0) > 1e-12) {
    throw DataError("kronecker: initiator probabilities must sum to 1");
  }
}

// Raw edge stream, exactly edge_factor << scale edges.
inline std::vector<Edge> kronecker_edges(const KroneckerParams& p) {
  validate(p);
  const std::uint64_t n_edges = p.edge_factor << p.scale;
  std::vector<Edge> edges;
  edges.reserve(n_edges);
  for (std::uint64_t i = 0; i < n_edges; ++i) {
    VertexId src = 0, dst = 0;
    for (int level = 0; level < p.scale; ++level) {
      const double r = hash_unit(p.seed, i * static_cast<std::uint64_t>(p.scale) +
                                             static_cast<std::uint64_t>(level));
      unsigned qs = 0, qd = 0;
      if (r < p.a) {
        // quadrant (0,0)
      } else if (r < p.a + p.b) {
        qd = 1;
      } else if (r < p.a + p.b + p.c) {
        qs = 1;
      } else {
        qs = 1;
        qd = 1;
      }
      src = (src << 1) | qs;
      dst = (dst << 1) | qd;
    }
    edges.push_back({src, dst, 1.0});
  }
  return edges;
}

inline InputGraph kronecker_generate(const KroneckerParams& p) {
  return make_input_graph(kronecker_edges(p), /*directed=*/true);
}

}  // namespace scg
