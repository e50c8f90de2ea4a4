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
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "scgraph/pair_vector.hpp"
#include "scgraph/subgraph.hpp"
#include "scgraph/transport.hpp"
#include "scgraph/types.hpp"

namespace scg {

// Pattern graph for graph simulation. At most 64 vertices so a match set
// fits in one bitmask; post maps are dense arrays indexed by ordinal.
struct PatternGraph {
  std::vector<std::string> labels;          // by ordinal
  std::vector<std::vector<int>> out;        // ordinal -> successor ordinals
  std::map<VertexId, int> ordinal_of;       // original id -> ordinal
  std::vector<VertexId> id_of;              // ordinal -> original id

  std::size_t size() const { return labels.size(); }
};

// Lines: `v <id> <label>` then `e <src> <dst>`.
inline PatternGraph load_pattern(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open pattern file: " + path);
  PatternGraph q;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    char tag;
    ls >> tag;
    if (tag == 'v') {
      VertexId id;
      std::string label;
      if (!(ls >> id >> label)) {
        throw DataError(path + ":" + std::to_string(lineno) + ": malformed v line");
      }
      if (q.ordinal_of.count(id)) {
        throw DataError(path + ": duplicate pattern vertex " + std::to_string(id));
      }
      if (q.size() >= 64) throw DataError(path + ": pattern larger than 64 vertices");
      q.ordinal_of[id] = static_cast<int>(q.size());
      q.id_of.push_back(id);
      q.labels.push_back(label);
      q.out.emplace_back();
    } else if (tag == 'e') {
      VertexId s, d;
      if (!(ls >> s >> d)) {
        throw DataError(path + ":" + std::to_string(lineno) + ": malformed e line");
      }
      if (!q.ordinal_of.count(s) || !q.ordinal_of.count(d)) {
        throw DataError(path + ":" + std::to_string(lineno) +
                        ": edge references undeclared pattern vertex");
      }
      q.out[static_cast<std::size_t>(q.ordinal_of[s])].push_back(q.ordinal_of[d]);
    } else {
      throw DataError(path + ":" + std::to_string(lineno) + ": unknown line tag");
    }
  }
  if (q.size() == 0) throw DataError(path + ": empty pattern");
  return q;
}

// Graph simulation by iterative pruning. sim(u) starts as all label-matching
// vertices; post(v)[u] counts v's out-neighbors currently in sim(u), summed
// globally through the exchange. A vertex leaves sim(u) when some required
// successor count hits zero; the resulting counter decrements are again
// routed through the exchange (never applied to the local post copy, so each
// decrement lands exactly once at every replica). Superstep 0 emits a post
// map for every vertex, which also guarantees every vertex is re-checked at
// superstep 1. Aggregator: per-key map sum.
class GraphSim {
 public:
  // Sparse counter-delta map: (pattern ordinal, delta), ordinal-sorted.
  using Value = std::vector<std::pair<std::uint32_t, std::int64_t>>;
  using State = std::string;
  static constexpr bool kAllowInternalEmit = true;

  static Value merge(const Value& a, const Value& b) {
    Value out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
      if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
        out.push_back(a[i++]);
      } else if (i == a.size() || b[j].first < a[i].first) {
        out.push_back(b[j++]);
      } else {
        out.emplace_back(a[i].first, a[i].second + b[j].second);
        ++i;
        ++j;
      }
    }
    return out;
  }
  static void encode(const Value& v, std::string& buf) {
    put_u32(buf, static_cast<std::uint32_t>(v.size()));
    for (const auto& [u, c] : v) {
      put_u32(buf, u);
      put_u64(buf, static_cast<std::uint64_t>(c));
    }
  }
  static Value decode(ByteReader& r) {
    const std::uint32_t count = r.u32();
    Value v;
    v.reserve(count);
    for (std::uint32_t i = 0; i < count; ++i) {
      const std::uint32_t u = r.u32();
      v.emplace_back(u, static_cast<std::int64_t>(r.u64()));
    }
    return v;
  }

  GraphSim(const Subgraph& sg, const PatternGraph& pattern)
      : sg_(&sg), q_(&pattern), nq_(pattern.size()) {
    if (sg.num_vertices() > 0 && !sg.has_labels()) {
      throw DataError("graph simulation requires a labeled graph");
    }
    const std::size_t nv = sg.num_vertices();
    sim_.assign(nv, 0);
    post_.assign(nv * nq_, 0);
    for (std::size_t i = 0; i < nv; ++i) {
      const std::string& vl = sg.label(sg.vertex_id(i));
      for (std::size_t u = 0; u < nq_; ++u) {
        if (pattern.labels[u] == vl) sim_[i] |= (1ULL << u);
      }
    }
  }

  template <class Emitter>
  void compute(const Subgraph& sg, int superstep, const PairVector<Value>& inbox,
               Emitter& emit) {
    const std::size_t nv = sg.num_vertices();
    std::vector<std::int64_t> temp(nv * nq_, 0);
    std::vector<char> touched(nv, 0);

    if (superstep == 0) {
      for (std::size_t i = 0; i < nv; ++i) {
        if (sim_[i] == 0) continue;
        for (std::size_t u = 0; u < nq_; ++u) {
          if (!(sim_[i] & (1ULL << u))) continue;
          for (VertexId vp : sg.parents_at(i)) {
            temp[sg.local_index(vp) * nq_ + u] += 1;
          }
        }
      }
      // Every vertex emits its (possibly empty) local post contribution.
      for (std::size_t i = 0; i < nv; ++i) {
        emit.add(sg.vertex_id(i), sparse_row(temp, i));
      }
      return;
    }

    std::vector<std::size_t> changed;
    for (const auto& [v, dmap] : inbox) {
      const std::size_t i = sg.local_index(v);
      for (const auto& [u, c] : dmap) post_[i * nq_ + u] += c;
      changed.push_back(i);
    }
    for (std::size_t i : changed) {
      for (std::size_t u = 0; u < nq_; ++u) {
        if (!(sim_[i] & (1ULL << u))) continue;
        bool dead = false;
        for (int succ : q_->out[u]) {
          if (post_[i * nq_ + static_cast<std::size_t>(succ)] == 0) {
            dead = true;
            break;
          }
        }
        if (!dead) continue;
        sim_[i] &= ~(1ULL << u);
        for (VertexId vp : sg.parents_at(i)) {
          const std::size_t p = sg.local_index(vp);
          temp[p * nq_ + u] -= 1;
          touched[p] = 1;
        }
      }
    }
    for (std::size_t i = 0; i < nv; ++i) {
      if (!touched[i]) continue;
      Value row = sparse_row(temp, i);
      if (!row.empty()) emit.add(sg.vertex_id(i), std::move(row));
    }
  }

  // Bitmask of pattern ordinals u with v ∈ sim(u).
  std::uint64_t match_mask(VertexId v) const { return sim_[sg_->local_index(v)]; }

  State debug_state(VertexId v) const {
    const std::size_t i = sg_->local_index(v);
    std::string s = std::to_string(sim_[i]);
    for (std::size_t u = 0; u < nq_; ++u) {
      s += ':';
      s += std::to_string(post_[i * nq_ + u]);
    }
    return s;
  }

  std::string result_text(VertexId v) const {
    const std::uint64_t mask = match_mask(v);
    if (mask == 0) return "-";
    std::string s;
    for (std::size_t u = 0; u < nq_; ++u) {
      if (mask & (1ULL << u)) {
        if (!s.empty()) s += ',';
        s += std::to_string(q_->id_of[u]);
      }
    }
    return s;
  }

 private:
  Value sparse_row(const std::vector<std::int64_t>& rows, std::size_t i) const {
    Value v;
    for (std::size_t u = 0; u < nq_; ++u) {
      if (rows[i * nq_ + u] != 0) {
        v.emplace_back(static_cast<std::uint32_t>(u), rows[i * nq_ + u]);
      }
    }
    return v;
  }

  const Subgraph* sg_;
  const PatternGraph* q_;
  std::size_t nq_;
  std::vector<std::uint64_t> sim_;     // per local vertex: matched ordinals
  std::vector<std::int64_t> post_;     // dense nv x nq counters
};

}  // namespace scg
