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

#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <string>
#include <thread>
#include <type_traits>
#include <utility>
#include <vector>

#include "scgraph/pair_vector.hpp"
#include "scgraph/subgraph.hpp"
#include "scgraph/transport.hpp"
#include "scgraph/types.hpp"

namespace scg {

// One row per (superstep, worker).
struct SuperstepStats {
  int superstep = 0;
  int worker = 0;
  double compute_s = 0.0;
  double network_s = 0.0;
  double sync_s = 0.0;
  std::uint64_t pairs_sent = 0;
  std::uint64_t pairs_received = 0;
};

struct EngineOptions {
  // 0 = one thread per worker; 1 = single-threaded reference mode. Results
  // are identical either way; only wall times differ.
  int threads = 1;
  int max_supersteps = 0;  // 0 = 10 * n_partitions + 1000
  bool validate = false;   // per-superstep replica-coherence scan
  Transport* transport = nullptr;  // default: in-process mailbox
};

struct RunSummary {
  bool converged = false;
  int supersteps = 0;
  std::vector<SuperstepStats> stats;

  std::uint64_t total_pairs_sent() const {
    std::uint64_t s = 0;
    for (const auto& r : stats) s += r.pairs_sent;
    return s;
  }
};

namespace detail {
inline double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}
}  // namespace detail

// Routes every emitted pair to its key's master partition (Aggregate),
// merges arrivals per key in ascending origin-partition order, then delivers
// the merged value to every replica partition of the key, the master's own
// included (Disseminate). Batches move through the Transport as encoded
// payloads: u32 origin partition, u64 pair count, then (u64 key, value)
// records using the algorithm's value codec.
template <class A>
struct ExchangeOutcome {
  std::vector<PairVector<typename A::Value>> inboxes;
  std::vector<std::uint64_t> sent, received;
  std::vector<double> network_s;
};

template <class A>
ExchangeOutcome<A> sbs_exchange(const std::vector<Subgraph>& sgs,
                                const std::vector<PairVector<typename A::Value>>& outboxes,
                                Transport& transport) {
  using Value = typename A::Value;
  const int n = static_cast<int>(sgs.size());
  ExchangeOutcome<A> out;
  out.inboxes.resize(static_cast<std::size_t>(n));
  out.sent.assign(static_cast<std::size_t>(n), 0);
  out.received.assign(static_cast<std::size_t>(n), 0);
  out.network_s.assign(static_cast<std::size_t>(n), 0.0);

  auto encode_batches = [&](int from, const std::vector<PairVector<Value>>& per_dest) {
    for (int to = 0; to < n; ++to) {
      std::string payload;
      const auto& pv = per_dest[static_cast<std::size_t>(to)];
      put_u32(payload, static_cast<std::uint32_t>(from));
      put_u64(payload, pv.size());
      for (const auto& [k, v] : pv) {
        put_u64(payload, k);
        A::encode(v, payload);
      }
      transport.send(from, to, std::move(payload));
      out.sent[static_cast<std::size_t>(from)] += pv.size();
    }
  };
  auto decode_batches = [&](int to) {
    // collect() returns one batch per origin, indexed by origin id.
    std::vector<PairVector<Value>> per_origin(static_cast<std::size_t>(n));
    std::vector<std::string> raw = transport.collect(to);
    for (int from = 0; from < n; ++from) {
      ByteReader r(raw[static_cast<std::size_t>(from)]);
      const int origin = static_cast<int>(r.u32());
      if (origin != from) throw ProtocolError("batch origin mismatch");
      const std::uint64_t count = r.u64();
      auto& pv = per_origin[static_cast<std::size_t>(from)];
      pv.pairs.reserve(count);
      for (std::uint64_t i = 0; i < count; ++i) {
        const VertexId k = r.u64();
        pv.pairs.emplace_back(k, A::decode(r));
      }
      if (!r.done()) throw ProtocolError("trailing bytes in batch");
      out.received[static_cast<std::size_t>(to)] += count;
    }
    return per_origin;
  };

  // Aggregate: client side.
  for (int w = 0; w < n; ++w) {
    const auto t0 = std::chrono::steady_clock::now();
    const Subgraph& sg = sgs[static_cast<std::size_t>(w)];
    std::vector<PairVector<Value>> per_dest(static_cast<std::size_t>(n));
    for (const auto& [k, v] : outboxes[static_cast<std::size_t>(w)]) {
      if (!sg.has_vertex(k)) {
        throw ProtocolError("partition " + std::to_string(w) +
                            " emitted pair for foreign vertex " + std::to_string(k));
      }
      const ReplicaRole& r = sg.role(k);
      if (r.role == Role::Internal && !A::kAllowInternalEmit) {
        throw ProtocolError("partition " + std::to_string(w) +
                            " emitted pair for non-frontier vertex " + std::to_string(k));
      }
      const int master = r.role == Role::Mirror ? r.master_partition : w;
      per_dest[static_cast<std::size_t>(master)].pairs.emplace_back(k, v);
    }
    encode_batches(w, per_dest);
    out.network_s[static_cast<std::size_t>(w)] += detail::seconds_since(t0);
  }

  // Aggregate: server side + Disseminate: master side.
  std::vector<std::vector<PairVector<Value>>> downstream(static_cast<std::size_t>(n));
  for (int w = 0; w < n; ++w) {
    const auto t0 = std::chrono::steady_clock::now();
    const Subgraph& sg = sgs[static_cast<std::size_t>(w)];
    const auto per_origin = decode_batches(w);
    // Fixed merge order: ascending origin partition id, then key order
    // inside a batch (outboxes are key-sorted by the builder).
    PairBuilder<Value, decltype(&A::merge)> merged(&A::merge);
    for (const auto& pv : per_origin) {
      for (const auto& [k, v] : pv) merged.add(k, v);
    }
    std::vector<PairVector<Value>> per_dest(static_cast<std::size_t>(n));
    for (auto& [k, v] : merged.take().pairs) {
      const ReplicaRole& r = sg.role(k);
      per_dest[static_cast<std::size_t>(w)].pairs.emplace_back(k, v);
      for (int mp : r.mirror_partitions) {
        per_dest[static_cast<std::size_t>(mp)].pairs.emplace_back(k, v);
      }
    }
    downstream[static_cast<std::size_t>(w)] = std::move(per_dest);
    out.network_s[static_cast<std::size_t>(w)] += detail::seconds_since(t0);
  }
  for (int w = 0; w < n; ++w) {
    const auto t0 = std::chrono::steady_clock::now();
    encode_batches(w, downstream[static_cast<std::size_t>(w)]);
    out.network_s[static_cast<std::size_t>(w)] += detail::seconds_since(t0);
  }

  // Disseminate: replica side. Keys from distinct masters never collide, so
  // the builder only sorts.
  for (int w = 0; w < n; ++w) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto per_origin = decode_batches(w);
    PairBuilder<Value, decltype(&A::merge)> box(&A::merge);
    for (const auto& pv : per_origin) {
      for (const auto& [k, v] : pv) box.add(k, v);
    }
    out.inboxes[static_cast<std::size_t>(w)] = box.take();
    out.network_s[static_cast<std::size_t>(w)] += detail::seconds_since(t0);
  }
  return out;
}

// BSP driver: barrier-synchronized supersteps of per-subgraph Compute calls
// followed by the Aggregate/Disseminate exchange. A worker halts when its
// Compute emits nothing and is reactivated by a non-empty inbox; the job
// terminates when every worker is halted and every inbox is empty.
template <class A>
class Engine {
 public:
  using Value = typename A::Value;
  using Emitter = PairBuilder<Value, decltype(&A::merge)>;

  template <class Factory>
  Engine(std::vector<Subgraph> subgraphs, Factory&& make_algo, EngineOptions opt = {})
      : sgs_(std::move(subgraphs)), opt_(opt) {
    algos_.reserve(sgs_.size());
    for (const Subgraph& sg : sgs_) algos_.push_back(make_algo(sg));
    transport_ = opt_.transport ? opt_.transport : &default_transport_;
  }

  RunSummary run() {
    const int n = static_cast<int>(sgs_.size());
    const int max_steps =
        opt_.max_supersteps > 0 ? opt_.max_supersteps : 10 * n + 1000;
    transport_->start(n);

    std::vector<PairVector<Value>> inbox(static_cast<std::size_t>(n));
    std::vector<char> halted(static_cast<std::size_t>(n), 0);
    RunSummary summary;

    for (int step = 0; step < max_steps; ++step) {
      const auto step_t0 = std::chrono::steady_clock::now();
      std::vector<PairVector<Value>> outbox(static_cast<std::size_t>(n));
      std::vector<double> compute_s(static_cast<std::size_t>(n), 0.0);

      auto run_worker = [&](int w) {
        const bool active = !halted[static_cast<std::size_t>(w)] ||
                            !inbox[static_cast<std::size_t>(w)].empty();
        if (!active) return;
        const auto t0 = std::chrono::steady_clock::now();
        Emitter emit(&A::merge);
        algos_[static_cast<std::size_t>(w)].compute(sgs_[static_cast<std::size_t>(w)],
                                                    step,
                                                    inbox[static_cast<std::size_t>(w)],
                                                    emit);
        halted[static_cast<std::size_t>(w)] = emit.empty();
        outbox[static_cast<std::size_t>(w)] = emit.take();
        compute_s[static_cast<std::size_t>(w)] = detail::seconds_since(t0);
      };
      const int threads = opt_.threads <= 0 ? n : std::min(opt_.threads, n);
      if (threads <= 1) {
        for (int w = 0; w < n; ++w) run_worker(w);
      } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(threads));
        for (int tid = 0; tid < threads; ++tid) {
          pool.emplace_back([&, tid] {
            for (int w = tid; w < n; w += threads) run_worker(w);
          });
        }
        for (auto& t : pool) t.join();  // end-of-compute barrier
      }

      auto exchange = sbs_exchange<A>(sgs_, outbox, *transport_);
      if (opt_.validate) {
        validate_inbox_coherence(exchange.inboxes);
        std::uint64_t s = 0, r = 0;
        for (int w = 0; w < n; ++w) {
          s += exchange.sent[static_cast<std::size_t>(w)];
          r += exchange.received[static_cast<std::size_t>(w)];
        }
        if (s != r) throw ProtocolError("pair conservation violated");
      }
      inbox = std::move(exchange.inboxes);

      const double step_wall = detail::seconds_since(step_t0);
      for (int w = 0; w < n; ++w) {
        SuperstepStats row;
        row.superstep = step;
        row.worker = w;
        row.compute_s = compute_s[static_cast<std::size_t>(w)];
        row.network_s = exchange.network_s[static_cast<std::size_t>(w)];
        row.sync_s = std::max(0.0, step_wall - row.compute_s - row.network_s);
        row.pairs_sent = exchange.sent[static_cast<std::size_t>(w)];
        row.pairs_received = exchange.received[static_cast<std::size_t>(w)];
        summary.stats.push_back(row);
      }
      summary.supersteps = step + 1;

      bool done = true;
      for (int w = 0; w < n; ++w) {
        if (!halted[static_cast<std::size_t>(w)] ||
            !inbox[static_cast<std::size_t>(w)].empty()) {
          done = false;
          break;
        }
      }
      if (done) {
        summary.converged = true;
        break;
      }
    }
    if (opt_.validate) validate_state_coherence();
    return summary;
  }

  const std::vector<Subgraph>& subgraphs() const { return sgs_; }
  const A& algo(int w) const { return algos_[static_cast<std::size_t>(w)]; }

  // Final per-vertex results gathered from masters (and internals),
  // ascending by vertex id.
  std::vector<std::pair<VertexId, std::string>> results() const {
    std::vector<std::pair<VertexId, std::string>> out;
    for (std::size_t w = 0; w < sgs_.size(); ++w) {
      const Subgraph& sg = sgs_[w];
      for (std::size_t i = 0; i < sg.num_vertices(); ++i) {
        if (sg.role_at(i).role == Role::Mirror) continue;
        out.emplace_back(sg.vertex_id(i), algos_[w].result_text(sg.vertex_id(i)));
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  void write_results(const std::string& path) const {
    std::ofstream f(path);
    if (!f) throw DataError("cannot write " + path);
    for (const auto& [v, text] : results()) f << v << '\t' << text << '\n';
  }

 private:
  // All replicas of a key must receive bit-identical merged values.
  void validate_inbox_coherence(const std::vector<PairVector<Value>>& inboxes) const {
    for (std::size_t w = 0; w < sgs_.size(); ++w) {
      for (const auto& [k, v] : inboxes[w]) {
        const ReplicaRole& r = sgs_[w].role(k);
        if (r.role != Role::Master) continue;
        std::string master_bytes;
        A::encode(v, master_bytes);
        for (int mp : r.mirror_partitions) {
          const auto& mi = inboxes[static_cast<std::size_t>(mp)].pairs;
          const auto it = std::lower_bound(
              mi.begin(), mi.end(), k,
              [](const auto& p, VertexId key) { return p.first < key; });
          if (it == mi.end() || it->first != k) {
            throw ProtocolError("replica of vertex " + std::to_string(k) +
                                " in partition " + std::to_string(mp) +
                                " missing disseminated value");
          }
          std::string mirror_bytes;
          A::encode(it->second, mirror_bytes);
          if (mirror_bytes != master_bytes) {
            throw ProtocolError("replicas of vertex " + std::to_string(k) +
                                " received diverging values");
          }
        }
      }
    }
  }

  // At termination every replica of a frontier vertex must agree on the
  // vertex value: exactly for integer/string state, within 1e-9 for floats.
  void validate_state_coherence() const {
    using State = typename A::State;
    for (std::size_t w = 0; w < sgs_.size(); ++w) {
      const Subgraph& sg = sgs_[w];
      for (VertexId v : sg.frontier_vertices()) {
        const ReplicaRole& r = sg.role(v);
        if (r.role != Role::Master) continue;
        const State master_state = algos_[w].debug_state(v);
        for (int mp : r.mirror_partitions) {
          const State mirror_state =
              algos_[static_cast<std::size_t>(mp)].debug_state(v);
          bool ok;
          if constexpr (std::is_floating_point_v<State>) {
            const double scale =
                std::max({1.0, std::abs(master_state), std::abs(mirror_state)});
            // Exact equality first: it also covers matching infinities.
            ok = master_state == mirror_state ||
                 std::abs(master_state - mirror_state) <= 1e-9 * scale;
          } else {
            ok = master_state == mirror_state;
          }
          if (!ok) {
            throw ProtocolError("replica values of vertex " + std::to_string(v) +
                                " disagree between partitions " + std::to_string(w) +
                                " and " + std::to_string(mp));
          }
        }
      }
    }
  }

  std::vector<Subgraph> sgs_;
  std::vector<A> algos_;
  EngineOptions opt_;
  InProcessTransport default_transport_;
  Transport* transport_ = nullptr;
};

inline void write_stats_csv(const std::vector<SuperstepStats>& stats,
                            const std::string& path) {
  std::ofstream f(path);
  if (!f) throw DataError("cannot write " + path);
  f << "superstep,worker,compute_s,network_s,sync_s,pairs_sent,pairs_received\n";
  for (const auto& r : stats) {
    f << r.superstep << ',' << r.worker << ',' << r.compute_s << ',' << r.network_s
      << ',' << r.sync_s << ',' << r.pairs_sent << ',' << r.pairs_received << '\n';
  }
}

}  // namespace scg
