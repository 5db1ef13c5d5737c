#include "ddpp/bramble.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>

#include "ddpp/error.hpp"
#include "ddpp/flow.hpp"

namespace ddpp {

bool bags_touch(const Digraph& g, const VertexSet& a, const VertexSet& b) {
  if (sets_intersect(a, b)) return true;
  auto links = [&g](const VertexSet& from, const VertexSet& to) {
    for (Vertex u : from) {
      for (Vertex w : g.out(u)) {
        if (set_contains(to, w)) return true;
      }
    }
    return false;
  };
  return links(a, b) && links(b, a);
}

BrambleCheck validate_bramble(const Digraph& g, const Bramble& b) {
  BrambleCheck check;
  for (int i = 0; i < b.size(); ++i) {
    const VertexSet& bag = b.bags[i];
    bool in_range = !bag.empty() && std::is_sorted(bag.begin(), bag.end()) &&
                    std::adjacent_find(bag.begin(), bag.end()) == bag.end();
    for (Vertex v : bag) in_range = in_range && g.valid(v);
    if (!in_range) {
      check.ok = false;
      check.bag = i;
      check.message = "bag " + std::to_string(i + 1) + " is empty, unsorted or out of range";
      return check;
    }
    if (!induces_strongly_connected(g, bag)) {
      check.ok = false;
      check.bag = i;
      check.message = "bag " + std::to_string(i + 1) + " is not strongly connected";
      return check;
    }
  }
  for (int i = 0; i < b.size(); ++i) {
    for (int j = i + 1; j < b.size(); ++j) {
      if (!bags_touch(g, b.bags[i], b.bags[j])) {
        check.ok = false;
        check.bag = i;
        check.other = j;
        check.message = "bags " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                        " do not touch";
        return check;
      }
    }
  }
  return check;
}

int depth(const Bramble& b) {
  std::map<Vertex, int> count;
  int best = 0;
  for (const auto& bag : b.bags) {
    for (Vertex v : bag) best = std::max(best, ++count[v]);
  }
  return best;
}

// ---- directed grid -----------------------------------------------------------

Path GridLabels::cycle(int j) const {
  Path c;
  for (int i = 1; i <= 2 * order; ++i) c.push_back(vertex(i, j));
  return c;
}

Path GridLabels::radial(int i) const {
  Path p;
  for (int j = 1; j <= order; ++j) p.push_back(vertex(i, j));
  if (i % 2 == 0) std::reverse(p.begin(), p.end());
  return p;
}

Grid gen_grid(int r) {
  require(r >= 2, ErrorKind::InvalidInput, "grid order must be at least 2");
  require(r <= 2000, ErrorKind::SizeLimit, "grid order too large");
  Grid grid;
  grid.labels.order = r;
  std::vector<Edge> edges;
  for (int j = 1; j <= r; ++j) {
    const Path c = grid.labels.cycle(j);
    for (std::size_t a = 0; a < c.size(); ++a) edges.emplace_back(c[a], c[(a + 1) % c.size()]);
  }
  for (int i = 1; i <= 2 * r; ++i) {
    const Path p = grid.labels.radial(i);
    for (std::size_t a = 0; a + 1 < p.size(); ++a) edges.emplace_back(p[a], p[a + 1]);
  }
  grid.graph = Digraph(2 * r * r, edges);
  return grid;
}

Bramble grid_bramble(const Digraph& g, const GridLabels& labels) {
  const int r = labels.order;
  require(r >= 2 && g.vertex_count() == 2 * r * r, ErrorKind::InvalidInput,
          "grid_bramble: labels do not match the graph");
  Bramble b;
  b.bags.push_back(make_set(labels.cycle(1)));
  for (int i = 2; i <= r; ++i) {
    const int down = 2 * i;                          // even: descends from ring i to ring 1
    const int up = (2 * i + 1 > 2 * r) ? 1 : 2 * i + 1;  // odd: ascends back to ring i
    // Walk the four arcs explicitly: C_i from v_up^i around to v_down^i,
    // P_down to ring 1, the C_1 edge v_down^1 -> v_up^1, then P_up.
    Path cycle;
    for (int step = 0, pos = up; step < 2 * r; ++step) {
      cycle.push_back(labels.vertex(pos, i));
      if (pos == down) break;
      pos = pos % (2 * r) + 1;
    }
    for (int j = i - 1; j >= 1; --j) cycle.push_back(labels.vertex(down, j));
    for (int j = 1; j < i; ++j) cycle.push_back(labels.vertex(up, j));
    for (std::size_t a = 0; a < cycle.size(); ++a) {
      const Vertex from = cycle[a];
      const Vertex to = cycle[(a + 1) % cycle.size()];
      if (!g.has_edge(from, to)) {
        fail(ErrorKind::InvariantViolation, "grid_bramble: missing grid edge");
      }
    }
    b.bags.push_back(make_set(cycle));
  }
  return b;
}

// ---- hitting path ---------------------------------------------------------------

Path hitting_path(const Digraph& g, const Bramble& b) {
  if (b.bags.empty()) return {};
  const int n = g.vertex_count();
  Path path{b.bags.front().front()};
  auto first_hits = [&](const Path& p) {
    std::vector<int> first(b.bags.size(), -1);
    for (std::size_t bag = 0; bag < b.bags.size(); ++bag) {
      for (std::size_t pos = 0; pos < p.size(); ++pos) {
        if (set_contains(b.bags[bag], p[pos])) {
          first[bag] = static_cast<int>(pos);
          break;
        }
      }
    }
    return first;
  };
  for (std::size_t round = 0; round <= b.bags.size(); ++round) {
    const auto first = first_hits(path);
    const auto unhit = std::find(first.begin(), first.end(), -1);
    if (unhit == first.end()) return path;
    const VertexSet& target = b.bags[static_cast<std::size_t>(unhit - first.begin())];

    // The hit bag whose first contact comes last; everything hit so far is
    // already hit by the prefix ending there.
    std::size_t star = 0;
    for (std::size_t bag = 0; bag < first.size(); ++bag) {
      if (first[bag] > first[star]) star = bag;
    }
    const VertexSet& inside = b.bags[star];
    path.resize(static_cast<std::size_t>(first[star]) + 1);

    std::vector<bool> allowed(static_cast<std::size_t>(n), false);
    std::vector<bool> goal(static_cast<std::size_t>(n), false);
    for (Vertex v : inside) {
      allowed[v] = true;
      if (set_contains(target, v)) {
        goal[v] = true;
        continue;
      }
      for (Vertex w : g.out(v)) {
        if (set_contains(target, w)) goal[v] = true;
      }
    }
    auto route = shortest_path(g, path.back(), goal, allowed);
    if (!route) fail(ErrorKind::PreconditionViolation, "hitting_path: bramble is not valid");
    path.insert(path.end(), route->begin() + 1, route->end());
    if (!set_contains(target, path.back())) {
      for (Vertex w : g.out(path.back())) {
        if (set_contains(target, w)) {
          path.push_back(w);
          break;
        }
      }
    }
  }
  fail(ErrorKind::InvariantViolation, "hitting_path did not terminate");
}

// ---- well-linked subsets of a path ------------------------------------------------

namespace {

// Grows `path` at one end. `forward` extends past the last vertex along
// out-edges, otherwise before the first along in-edges.
void extend_greedily(const Digraph& g, std::vector<Vertex>& path, std::vector<bool>& used, bool forward) {
  while (true) {
    const Vertex end = forward ? path.back() : path.front();
    Vertex best = -1;
    int best_free = 0;
    for (Vertex w : forward ? g.out(end) : g.in(end)) {
      if (used[w]) continue;
      int free = 0;
      for (Vertex z : forward ? g.out(w) : g.in(w)) free += used[z] ? 0 : 1;
      if (best < 0 || free < best_free) {
        best = w;
        best_free = free;
      }
    }
    if (best < 0) return;
    used[best] = true;
    if (forward) {
      path.push_back(best);
    } else {
      path.insert(path.begin(), best);
    }
  }
}

}  // namespace

Path greedy_long_path(const Digraph& g, std::uint64_t seed) {
  const int n = g.vertex_count();
  std::vector<Vertex> starts(static_cast<std::size_t>(n));
  std::iota(starts.begin(), starts.end(), 0);
  if (seed != 0) {
    std::mt19937_64 rng(seed);
    std::shuffle(starts.begin(), starts.end(), rng);
  }
  Path best;
  for (Vertex s : starts) {
    std::vector<bool> used(static_cast<std::size_t>(n), false);
    used[s] = true;
    Path p{s};
    extend_greedily(g, p, used, true);
    extend_greedily(g, p, used, false);
    if (p.size() > best.size()) best = std::move(p);
    if (static_cast<int>(best.size()) == n) break;
  }
  return best;
}

namespace {

bool extend_well_linked(const Digraph& g, const Path& p, std::size_t next, int target,
                        std::vector<Vertex>& chosen) {
  if (static_cast<int>(chosen.size()) == target) return true;
  const std::size_t need = static_cast<std::size_t>(target) - chosen.size();
  for (std::size_t pos = next; pos + need <= p.size(); ++pos) {
    chosen.push_back(p[pos]);
    if (detail::well_linked_pairs_with(g, chosen, static_cast<int>(chosen.size()) - 1, false) &&
        extend_well_linked(g, p, pos + 1, target, chosen)) {
      return true;
    }
    chosen.pop_back();
  }
  return false;
}

}  // namespace

std::optional<VertexSet> well_linked_on_path(const Digraph& g, const Path& p, int target_size,
                                             int cap) {
  require(target_size >= 0, ErrorKind::InvalidInput, "target size must be non-negative");
  require(target_size <= cap && target_size < 31, ErrorKind::SizeLimit,
          "well_linked_on_path: target size " + std::to_string(target_size) + " exceeds cap " +
              std::to_string(cap));
  for (Vertex v : p) require(g.valid(v), ErrorKind::InvalidInput, "path vertex out of range");
  std::vector<Vertex> chosen;
  if (!extend_well_linked(g, p, 0, target_size, chosen)) return std::nullopt;
  return make_set(chosen);
}

}  // namespace ddpp
