#include "ddpp/flow.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>

#include "ddpp/error.hpp"
#include "vertex_flow.hpp"

namespace ddpp {

MengerResult max_disjoint_paths(const Digraph& g, const VertexSet& s_set, const VertexSet& t_set) {
  return max_disjoint_paths(g, s_set, t_set, {});
}

MengerResult max_disjoint_paths(const Digraph& g, const VertexSet& s_set, const VertexSet& t_set,
                                const std::vector<bool>& blocked) {
  detail::VertexSplitFlow::Options options;
  options.blocked = blocked;
  detail::VertexSplitFlow flow(g, s_set, t_set, options);
  flow.run();
  MengerResult result;
  result.paths = flow.paths();
  result.separation = flow.min_cut();
  if (result.separation.order() != result.count()) {
    fail(ErrorKind::InvariantViolation, "max flow and min cut disagree");
  }
  return result;
}

namespace {

struct AnchorCut {
  int value;
  Separation separation;
};

// Min cut between S and K with s and v forced strictly onto their sides.
// Returns nullopt when the flow exceeds `limit` (or is unbounded).
std::optional<AnchorCut> anchored_cut(const Digraph& g, const VertexSet& s_set,
                                      const VertexSet& k_set, Vertex s, Vertex v, int limit) {
  detail::VertexSplitFlow::Options options;
  options.uncuttable.assign(static_cast<std::size_t>(g.vertex_count()), false);
  options.uncuttable[s] = true;
  options.uncuttable[v] = true;
  detail::VertexSplitFlow flow(g, s_set, k_set, options);
  const int value = flow.run(limit + 1);
  if (value > limit) return std::nullopt;
  return AnchorCut{value, flow.min_cut()};
}

}  // namespace

std::optional<Separation> min_proper_separation(const Digraph& g, const VertexSet& s_set,
                                                const VertexSet& k_set) {
  require(!is_subset(s_set, k_set) && !is_subset(k_set, s_set), ErrorKind::PreconditionViolation,
          "min_proper_separation: one set contains the other, no proper separation can exist");
  const VertexSet s_only = set_difference(s_set, k_set);
  const VertexSet k_only = set_difference(k_set, s_set);
  std::optional<Separation> best;
  int best_order = g.vertex_count();
  VertexSet best_cut;
  for (Vertex s : s_only) {
    for (Vertex v : k_only) {
      if (g.has_edge(s, v)) continue;  // s and v can never sit on opposite strict sides
      auto cut = anchored_cut(g, s_set, k_set, s, v, best_order);
      if (!cut) continue;
      VertexSet middle = cut->separation.cut();
      if (!best || cut->value < best_order || (cut->value == best_order && middle < best_cut)) {
        best_order = cut->value;
        best_cut = std::move(middle);
        best = std::move(cut->separation);
      }
    }
  }
  return best;
}

bool is_alpha_connected(const Digraph& g, const VertexSet& s_set, const VertexSet& t_set, int alpha) {
  require(alpha >= 0, ErrorKind::InvalidInput, "alpha must be non-negative");
  if (alpha == 0) return true;
  if (is_subset(s_set, t_set) || is_subset(t_set, s_set)) return true;
  for (Vertex s : set_difference(s_set, t_set)) {
    for (Vertex v : set_difference(t_set, s_set)) {
      if (g.has_edge(s, v)) continue;
      if (anchored_cut(g, s_set, t_set, s, v, alpha - 1)) return false;
    }
  }
  return true;
}

namespace detail {

bool well_linked_pairs_with(const Digraph& g, const std::vector<Vertex>& x, int fresh,
                            bool disjoint_only) {
  const int n = fresh + 1;
  const std::uint32_t full = (n >= 32) ? ~0u : ((1u << n) - 1u);
  const std::uint32_t bit = 1u << fresh;
  auto members = [&](std::uint32_t mask) {
    VertexSet set;
    for (int i = 0; i < n; ++i) {
      if (mask & (1u << i)) set.push_back(x[static_cast<std::size_t>(i)]);
    }
    return make_set(std::move(set));
  };
  for (std::uint32_t u1 = 1; u1 <= full; ++u1) {
    const int size = std::popcount(u1);
    for (std::uint32_t u2 = 1; u2 <= full; ++u2) {
      if (std::popcount(u2) != size) continue;
      if (((u1 | u2) & bit) == 0) continue;
      if (u1 == u2) continue;  // zero-length paths
      if (disjoint_only && (u1 & u2)) continue;
      VertexSplitFlow flow(g, members(u1), members(u2));
      if (flow.run(size) < size) return false;
    }
  }
  return true;
}

}  // namespace detail

bool is_well_linked(const Digraph& g, const VertexSet& x, const WellLinkedOptions& options) {
  require(static_cast<int>(x.size()) <= options.max_set_size && x.size() < 31, ErrorKind::SizeLimit,
          "is_well_linked: set of " + std::to_string(x.size()) + " vertices exceeds the cap of " +
              std::to_string(options.max_set_size));
  for (Vertex v : x) require(g.valid(v), ErrorKind::InvalidInput, "is_well_linked: vertex out of range");
  const std::vector<Vertex> list(x.begin(), x.end());
  for (int fresh = 0; fresh < static_cast<int>(list.size()); ++fresh) {
    if (!detail::well_linked_pairs_with(g, list, fresh, options.disjoint_only)) return false;
  }
  return true;
}

}  // namespace ddpp
