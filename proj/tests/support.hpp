#pragma once

// Seeded generators shared by the unit tests, the acceptance binary and the
// benchmarks.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "ddpp/bramble.hpp"
#include "ddpp/digraph.hpp"

namespace ddpp::testing {

using Rng = std::mt19937_64;

inline bool coin(Rng& rng, double p) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p; }

inline int pick(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline Digraph random_digraph(int n, double p, Rng& rng) {
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = 0; v < n; ++v) {
      if (u != v && coin(rng, p)) edges.emplace_back(u, v);
    }
  }
  return Digraph(n, edges);
}

/// k distinct random vertices.
inline std::vector<Vertex> sample(int n, int k, Rng& rng) {
  std::vector<Vertex> all(static_cast<std::size_t>(n));
  std::iota(all.begin(), all.end(), 0);
  std::shuffle(all.begin(), all.end(), rng);
  all.resize(static_cast<std::size_t>(k));
  return all;
}

/// Random instance with distinct sources and distinct sinks. With
/// `allow_fixed` false no s_i equals t_i.
inline LinkageInstance random_instance(int n, int k, double p, Rng& rng, bool allow_fixed = true) {
  Digraph g = random_digraph(n, p, rng);
  while (true) {
    auto s = sample(n, k, rng);
    auto t = sample(n, k, rng);
    bool ok = true;
    for (int i = 0; i < k && !allow_fixed; ++i) ok = ok && s[i] != t[i];
    if (ok) return LinkageInstance(g, std::move(s), std::move(t));
  }
}

struct PlantedInstance {
  LinkageInstance instance;
  Bramble bramble;
};

struct PlantedShape {
  int k = 1;
  int bags = 6;
  int bag_length = 3;         // vertices per bag cycle
  double share = 0.4;         // chance a bag reuses a vertex of the previous one
  int extra = 2;              // vertices in no bag and no terminal
  double density = 0.3;       // background edge probability
  double terminal_density = 0.3;
  /// Sources reach the graph only through the first bag and sinks are
  /// reached only from the last, which forces low-order cuts through them.
  bool gateway = false;
};

/// A random digraph around a planted bramble of directed cycles, some
/// consecutive ones sharing a vertex (depth two). Touching is forced by an
/// edge pair between every two disjoint bags. Terminals avoid all bags.
inline PlantedInstance planted_instance(const PlantedShape& shape, Rng& rng) {
  std::vector<Edge> edges;
  Bramble b;
  Vertex next = 0;
  std::vector<int> uses;  // bags per vertex
  for (int i = 0; i < shape.bags; ++i) {
    std::vector<Vertex> cycle;
    if (i > 0 && coin(rng, shape.share)) {
      // Reuse a vertex of the previous bag that is still in only one bag.
      std::vector<Vertex> free;
      for (Vertex v : b.bags.back()) {
        if (uses[v] == 1) free.push_back(v);
      }
      if (!free.empty()) {
        const Vertex v = free[static_cast<std::size_t>(pick(rng, 0, static_cast<int>(free.size()) - 1))];
        cycle.push_back(v);
        ++uses[v];
      }
    }
    while (static_cast<int>(cycle.size()) < shape.bag_length) {
      cycle.push_back(next++);
      uses.push_back(1);
    }
    for (std::size_t a = 0; a < cycle.size(); ++a) edges.emplace_back(cycle[a], cycle[(a + 1) % cycle.size()]);
    b.bags.push_back(make_set(cycle));
  }
  for (int i = 0; i < shape.bags; ++i) {
    for (int j = i + 1; j < shape.bags; ++j) {
      if (sets_intersect(b.bags[i], b.bags[j])) continue;
      const auto& x = b.bags[i];
      const auto& y = b.bags[j];
      edges.emplace_back(x[static_cast<std::size_t>(pick(rng, 0, static_cast<int>(x.size()) - 1))],
                         y[static_cast<std::size_t>(pick(rng, 0, static_cast<int>(y.size()) - 1))]);
      edges.emplace_back(y[static_cast<std::size_t>(pick(rng, 0, static_cast<int>(y.size()) - 1))],
                         x[static_cast<std::size_t>(pick(rng, 0, static_cast<int>(x.size()) - 1))]);
    }
  }
  const Vertex bag_vertices = next;
  next += shape.extra;
  std::vector<Vertex> sources, sinks;
  for (int i = 0; i < shape.k; ++i) sources.push_back(next++);
  for (int i = 0; i < shape.k; ++i) sinks.push_back(next++);
  const int n = next;
  const Vertex first_terminal = bag_vertices + shape.extra;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = 0; v < n; ++v) {
      if (u == v) continue;
      const bool terminal = u >= first_terminal || v >= first_terminal;
      if (terminal && shape.gateway) continue;
      if (coin(rng, terminal ? shape.terminal_density : shape.density)) edges.emplace_back(u, v);
    }
  }
  if (shape.gateway) {
    for (Vertex s : sources) {
      for (Vertex v : b.bags.front()) edges.emplace_back(s, v);
    }
    for (Vertex t : sinks) {
      for (Vertex v : b.bags.back()) edges.emplace_back(v, t);
    }
  }
  return {LinkageInstance(Digraph(n, edges), std::move(sources), std::move(sinks)), std::move(b)};
}

}  // namespace ddpp::testing
