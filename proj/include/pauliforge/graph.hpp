// Copyright 2026 The pauliforge authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace pauliforge {

/// Unweighted, undirected graph with an optional designated start vertex.
struct Graph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;  // normalized u < v, sorted, unique
  std::optional<int> start;

  void add_edge(int u, int v) {
    if (u == v) throw std::invalid_argument("Graph: self-loop");
    if (u < 0 || v < 0 || u >= n || v >= n) throw std::invalid_argument("Graph: bad vertex");
    if (u > v) std::swap(u, v);
    edges.emplace_back(u, v);
  }

  void normalize() {
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  }

  std::vector<std::vector<int>> adjacency() const {
    std::vector<std::vector<int>> adj(static_cast<size_t>(n));
    for (auto [u, v] : edges) {
      adj[static_cast<size_t>(u)].push_back(v);
      adj[static_cast<size_t>(v)].push_back(u);
    }
    return adj;
  }

  bool connected() const {
    if (n == 0) return true;
    const auto adj = adjacency();
    std::vector<char> seen(static_cast<size_t>(n), 0);
    std::vector<int> stack = {0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (int u : adj[static_cast<size_t>(v)])
        if (!seen[static_cast<size_t>(u)]) {
          seen[static_cast<size_t>(u)] = 1;
          ++count;
          stack.push_back(u);
        }
    }
    return count == n;
  }
};

/// HP -> HPS reduction: one new vertex s (index n) connected to every
/// original vertex. |V'| = n+1, |E'| = |E| + n.
inline Graph hp2hps(const Graph& g) {
  if (g.n < 1) throw std::invalid_argument("hp2hps: empty graph");
  Graph out = g;
  out.n = g.n + 1;
  for (int v = 0; v < g.n; ++v) out.add_edge(v, g.n);
  out.normalize();
  out.start = g.n;
  return out;
}

/// Exhaustive Hamiltonian-path search, optionally pinned to a start vertex.
/// Returns a witness vertex sequence or nothing.
inline std::optional<std::vector<int>> brute_hamiltonian_path(const Graph& g,
                                                              std::optional<int> start = {},
                                                              int vertex_limit = 9) {
  if (g.n > vertex_limit)
    throw std::invalid_argument("brute_hamiltonian_path: graph above vertex limit");
  if (g.n == 0) return std::vector<int>{};
  const auto adj = g.adjacency();
  std::vector<int> path;
  uint32_t visited = 0;

  std::optional<std::vector<int>> result;
  auto dfs = [&](auto&& self, int v) -> bool {
    path.push_back(v);
    visited |= 1u << v;
    if (static_cast<int>(path.size()) == g.n) {
      result = path;
      return true;
    }
    for (int u : adj[static_cast<size_t>(v)])
      if (!(visited & (1u << u)) && self(self, u)) return true;
    path.pop_back();
    visited &= ~(1u << v);
    return false;
  };

  if (start) {
    if (*start < 0 || *start >= g.n) throw std::invalid_argument("brute_hamiltonian_path: bad start");
    dfs(dfs, *start);
  } else {
    for (int v = 0; v < g.n && !result; ++v) dfs(dfs, v);
  }
  return result;
}

/// Graph file: first line `n m`, then m lines `u v`, optional `start s`.
inline void write_graph(const Graph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_graph: cannot open " + path);
  out << g.n << " " << g.edges.size() << "\n";
  for (auto [u, v] : g.edges) out << u << " " << v << "\n";
  if (g.start) out << "start " << *g.start << "\n";
}

inline Graph read_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_graph: cannot open " + path);
  Graph g;
  size_t m = 0;
  if (!(in >> g.n >> m)) throw std::runtime_error("read_graph: bad header");
  for (size_t i = 0; i < m; ++i) {
    int u, v;
    if (!(in >> u >> v)) throw std::runtime_error("read_graph: truncated edge list");
    g.add_edge(u, v);
  }
  std::string word;
  if (in >> word) {
    if (word != "start") throw std::runtime_error("read_graph: unexpected trailer");
    int s;
    in >> s;
    g.start = s;
  }
  g.normalize();
  return g;
}

}  // namespace pauliforge
