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
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "scgraph/subgraph.hpp"
#include "scgraph/types.hpp"

namespace scg {

// Text dump, one file per partition:
//   P <partitionId> <nPartitions>
//   V <id> <fullDegree> <outDegree> <role:{I,A,R}> [<masterPid>|<mirrorPids,>] [label]
//   E <src> <dst> <weight>
// Weights are printed with 17 significant digits so the loader round-trips
// doubles bit-exactly.

inline std::string part_file_name(int pid, int n) {
  return "part-" + std::to_string(pid) + "-of-" + std::to_string(n) + ".sg";
}

inline void dump_subgraph(const Subgraph& sg, std::ostream& out) {
  out << "P " << sg.partition_id() << ' ' << sg.num_partitions() << '\n';
  for (std::size_t i = 0; i < sg.num_vertices(); ++i) {
    const VertexId v = sg.vertex_id(i);
    const ReplicaRole& r = sg.role_at(i);
    out << "V " << v << ' ' << sg.degrees_at(i).total << ' '
        << sg.degrees_at(i).out << ' ';
    switch (r.role) {
      case Role::Internal:
        out << 'I';
        break;
      case Role::Master: {
        out << "A ";
        for (std::size_t k = 0; k < r.mirror_partitions.size(); ++k) {
          if (k) out << ',';
          out << r.mirror_partitions[k];
        }
        break;
      }
      case Role::Mirror:
        out << "R " << r.master_partition;
        break;
    }
    if (sg.has_labels() && !sg.label(v).empty()) out << ' ' << sg.label(v);
    out << '\n';
  }
  char wbuf[64];
  for (std::size_t i = 0; i < sg.num_vertices(); ++i) {
    const VertexId src = sg.vertex_id(i);
    const auto nbrs = sg.children_at(i);
    for (std::size_t k = 0; k < nbrs.size(); ++k) {
      std::snprintf(wbuf, sizeof wbuf, "%.17g", sg.out_weight_at(i, k));
      out << "E " << src << ' ' << nbrs[k] << ' ' << wbuf << '\n';
    }
  }
}

inline Subgraph load_subgraph(std::istream& in, const std::string& name = "<stream>") {
  std::string line;
  int pid = -1, n = -1;
  DegreeTable degrees;
  RoleTable roles;
  std::map<VertexId, std::string> labels;
  std::set<VertexId> vertices;
  std::vector<Edge> edges;
  std::size_t lineno = 0;
  auto fail = [&](const std::string& msg) -> DataError {
    return DataError(name + ":" + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    char tag;
    ls >> tag;
    if (tag == 'P') {
      if (!(ls >> pid >> n)) throw fail("malformed P line");
    } else if (tag == 'V') {
      VertexId v;
      VertexDegrees d;
      std::string role_tok;
      if (!(ls >> v >> d.total >> d.out >> role_tok)) throw fail("malformed V line");
      ReplicaRole r;
      std::string label;
      if (role_tok == "I") {
        r.role = Role::Internal;
        ls >> label;
      } else if (role_tok == "A") {
        r.role = Role::Master;
        std::string pids;
        if (!(ls >> pids)) throw fail("master vertex missing mirror list");
        std::istringstream ps(pids);
        std::string tok;
        while (std::getline(ps, tok, ',')) {
          r.mirror_partitions.push_back(std::stoi(tok));
        }
        ls >> label;
      } else if (role_tok == "R") {
        r.role = Role::Mirror;
        if (!(ls >> r.master_partition)) throw fail("mirror vertex missing master pid");
        ls >> label;
      } else {
        throw fail("unknown role tag '" + role_tok + "'");
      }
      degrees[v] = d;
      roles[v] = r;
      vertices.insert(v);
      if (!label.empty()) labels[v] = label;
    } else if (tag == 'E') {
      Edge e;
      if (!(ls >> e.src >> e.dst >> e.weight)) throw fail("malformed E line");
      edges.push_back(e);
    } else {
      throw fail(std::string("unknown line tag '") + tag + "'");
    }
  }
  if (pid < 0) throw DataError(name + ": missing P header line");
  // Vertices with no local edges were assigned here isolated (or are
  // label-only); pass them through as isolated assignees.
  std::set<VertexId> isolated = vertices;
  for (const Edge& e : edges) {
    isolated.erase(e.src);
    isolated.erase(e.dst);
  }
  return build_subgraph(pid, n, edges, degrees, roles, isolated,
                        labels.empty() ? nullptr : &labels);
}

inline void dump_subgraphs(const std::vector<Subgraph>& sgs,
                           const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  for (const Subgraph& sg : sgs) {
    const auto path = dir / part_file_name(sg.partition_id(), sg.num_partitions());
    std::ofstream out(path);
    if (!out) throw DataError("cannot write " + path.string());
    dump_subgraph(sg, out);
  }
}

inline std::vector<Subgraph> load_subgraphs(const std::filesystem::path& dir) {
  std::vector<Subgraph> sgs;
  int n = -1;
  for (int pid = 0;; ++pid) {
    // Number of partitions is only known from the first header.
    std::filesystem::path path;
    bool found = false;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
      const std::string fname = entry.path().filename().string();
      if (fname.rfind("part-" + std::to_string(pid) + "-of-", 0) == 0) {
        path = entry.path();
        found = true;
        break;
      }
    }
    if (!found) break;
    std::ifstream in(path);
    if (!in) throw DataError("cannot read " + path.string());
    sgs.push_back(load_subgraph(in, path.string()));
    if (n < 0) {
      n = sgs.back().num_partitions();
    } else if (sgs.back().num_partitions() != n) {
      throw DataError(path.string() + ": partition count mismatch with siblings");
    }
  }
  if (sgs.empty()) throw DataError("no part-*.sg files in " + dir.string());
  if (static_cast<int>(sgs.size()) != n) {
    throw DataError(dir.string() + ": header claims " + std::to_string(n) +
                    " partitions but found " + std::to_string(sgs.size()) +
                    " files");
  }
  return sgs;
}

}  // namespace scg
