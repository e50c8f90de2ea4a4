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

#include <map>
#include <utility>
#include <vector>

#include "scgraph/types.hpp"

namespace scg {

// Ordered (vertex-id, value) pairs: a Compute call's emitted deltas and the
// next superstep's incoming messages. At most one pair per key.
template <class V>
struct PairVector {
  std::vector<std::pair<VertexId, V>> pairs;

  bool empty() const { return pairs.empty(); }
  std::size_t size() const { return pairs.size(); }
  void clear() { pairs.clear(); }
  auto begin() const { return pairs.begin(); }
  auto end() const { return pairs.end(); }
};

// Coalescing builder: duplicate keys are merged with the algorithm's
// aggregator before emission; take() yields pairs sorted by key.
template <class V, class Merge>
class PairBuilder {
 public:
  explicit PairBuilder(Merge merge) : merge_(std::move(merge)) {}

  void add(VertexId k, V v) {
    auto [it, fresh] = acc_.try_emplace(k, std::move(v));
    if (!fresh) it->second = merge_(it->second, v);
  }
  bool empty() const { return acc_.empty(); }

  PairVector<V> take() {
    PairVector<V> out;
    out.pairs.reserve(acc_.size());
    for (auto& [k, v] : acc_) out.pairs.emplace_back(k, std::move(v));
    acc_.clear();
    return out;
  }

 private:
  Merge merge_;
  std::map<VertexId, V> acc_;
};

}  // namespace scg
