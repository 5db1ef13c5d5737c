#include "ddpp/weave.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>
#include <tuple>

#include "ddpp/error.hpp"
#include "ddpp/flow.hpp"

namespace ddpp {

// ---- magnitudes ---------------------------------------------------------------------

Magnitude Magnitude::from_log2(double bits) {
  Magnitude m;
  m.log2 = bits;
  if (!std::isfinite(bits)) {
    m.tower = true;
  } else if (bits < 62.0) {
    m.exact = static_cast<std::uint64_t>(std::llround(std::exp2(bits)));
  }
  return m;
}

bool Magnitude::exceeds(std::uint64_t n) const {
  if (tower) return true;
  if (exact) return *exact > n;
  return true;
}

std::string Magnitude::describe() const {
  if (tower) return "tower of twos (log2 overflows a double)";
  if (exact) return std::to_string(*exact);
  std::ostringstream out;
  out << "2^" << log2;
  return out.str();
}

namespace {

void check_positive(int value, const char* name) {
  require(value >= 1, ErrorKind::InvalidInput, std::string(name) + " must be positive");
}

}  // namespace

Magnitude uncross_pair_threshold(int k, int t) {
  check_positive(k, "k");
  check_positive(t, "t");
  return Magnitude::from_log2(std::log2(10.0 * k) + 2.0 * (t + k));
}

Magnitude uncross_two_threshold(int k, int t) {
  check_positive(k, "k");
  check_positive(t, "t");
  const double inner = 10.0 * t * std::exp2(4.0 * t);
  return Magnitude::from_log2(k + inner);
}

Magnitude grid_side_threshold(int t) {
  check_positive(t, "t");
  return Magnitude::from_log2(2.0 * t);
}

Magnitude well_linked_threshold(int t) {
  check_positive(t, "t");
  // f_t iterated T^8 >= 2^16 times starting from 2; the second iteration
  // already has an exponent of more than 2^160.
  Magnitude m;
  m.tower = true;
  m.log2 = INFINITY;
  return m;
}

// ---- Ramsey -------------------------------------------------------------------------

RamseyResult ramsey_monochromatic(int m, const PairColoring& is_red, int r, int t) {
  require(r >= 1 && t >= 1, ErrorKind::InvalidInput, "clique sizes must be positive");
  require(r + t < 31 && m >= (1 << (r + t)), ErrorKind::InvalidInput,
          "need at least 2^(r+t) items");
  std::vector<int> pool(static_cast<std::size_t>(m));
  std::iota(pool.begin(), pool.end(), 0);
  std::vector<int> reds;
  std::vector<int> blues;
  int last = -1;
  while (!pool.empty()) {
    const int pivot = pool.front();
    std::vector<int> red_side;
    std::vector<int> blue_side;
    for (std::size_t i = 1; i < pool.size(); ++i) {
      (is_red(pivot, pool[i]) ? red_side : blue_side).push_back(pool[i]);
    }
    if (red_side.empty() && blue_side.empty()) {
      last = pivot;
      break;
    }
    if (red_side.size() >= blue_side.size()) {
      reds.push_back(pivot);
      pool = std::move(red_side);
    } else {
      blues.push_back(pivot);
      pool = std::move(blue_side);
    }
  }
  // Pivots tagged red are pairwise red with everything picked after them,
  // and the final pivot may join either side.
  auto take = [](std::vector<int> items, int size) {
    items.resize(static_cast<std::size_t>(size));
    return items;
  };
  if (static_cast<int>(reds.size()) >= r) return {true, take(reds, r)};
  if (static_cast<int>(blues.size()) >= t) return {false, take(blues, t)};
  if (static_cast<int>(reds.size()) + 1 >= r) {
    reds.push_back(last);
    return {true, take(reds, r)};
  }
  if (static_cast<int>(blues.size()) + 1 >= t) {
    blues.push_back(last);
    return {false, take(blues, t)};
  }
  fail(ErrorKind::InvariantViolation, "halving walk ended too early");
}

namespace {

// First (lexicographic) clique of the given size in the graph of pairs
// colored `want`, or nullopt.
std::optional<IndexSet> find_clique(int m, const PairColoring& is_red, bool want, int size) {
  if (size <= 0) return IndexSet{};
  if (m < size) return std::nullopt;
  std::vector<std::vector<bool>> adj(static_cast<std::size_t>(m), std::vector<bool>(static_cast<std::size_t>(m)));
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) adj[i][j] = adj[j][i] = (is_red(i, j) == want);
  }
  IndexSet current;
  std::function<bool(const std::vector<int>&)> grow = [&](const std::vector<int>& candidates) {
    if (static_cast<int>(current.size()) == size) return true;
    if (static_cast<int>(current.size() + candidates.size()) < size) return false;
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      if (static_cast<int>(current.size() + candidates.size() - c) < size) return false;
      const int v = candidates[c];
      std::vector<int> next;
      for (std::size_t d = c + 1; d < candidates.size(); ++d) {
        if (adj[v][candidates[d]]) next.push_back(candidates[d]);
      }
      current.push_back(v);
      if (grow(next)) return true;
      current.pop_back();
    }
    return false;
  };
  std::vector<int> all(static_cast<std::size_t>(m));
  std::iota(all.begin(), all.end(), 0);
  if (grow(all)) return current;
  return std::nullopt;
}

}  // namespace

std::optional<RamseyResult> ramsey_search(int m, const PairColoring& is_red, int r, int t) {
  require(r >= 1 && t >= 1, ErrorKind::InvalidInput, "clique sizes must be positive");
  if (r + t < 31 && m >= (1 << (r + t))) return ramsey_monochromatic(m, is_red, r, t);
  if (auto red = find_clique(m, is_red, true, r)) return RamseyResult{true, *red};
  if (auto blue = find_clique(m, is_red, false, t)) return RamseyResult{false, *blue};
  return std::nullopt;
}

// ---- shared checks ------------------------------------------------------------------

namespace {

bool is_path_in(const Digraph& g, const Path& p) {
  if (p.empty()) return false;
  for (Vertex v : p) {
    if (!g.valid(v)) return false;
  }
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    if (!g.has_edge(p[i], p[i + 1])) return false;
  }
  return make_set(p).size() == p.size();
}

void require_linkage(const Digraph& g, const std::vector<Path>& paths, const char* name) {
  std::vector<int> usage(static_cast<std::size_t>(g.vertex_count()), 0);
  for (const Path& p : paths) {
    require(is_path_in(g, p), ErrorKind::PreconditionViolation,
            std::string(name) + " contains something that is not a path of the graph");
    for (Vertex v : p) {
      require(++usage[v] == 1, ErrorKind::PreconditionViolation,
              std::string(name) + " is not vertex-disjoint at vertex " + std::to_string(v));
    }
  }
}

VertexSet vertices_of(const Path& p) { return make_set(p); }

// Bramble certificate check shared by every weave output.
std::optional<std::string> bramble_problem(const Digraph& g, const Bramble& b, int size) {
  if (b.size() != size) return "bramble has " + std::to_string(b.size()) + " bags, wanted " + std::to_string(size);
  const auto check = validate_bramble(g, b);
  if (!check) return "invalid bramble: " + check.message;
  if (depth(b) > 2) return "bramble depth " + std::to_string(depth(b)) + " exceeds two";
  return std::nullopt;
}

template <class Outcome>
Outcome finish_bramble(const Digraph& g, Bramble b, int size, const WeaveConfig& cfg, const char* stage) {
  if (auto problem = bramble_problem(g, b, size)) {
    if (!cfg.relaxed) fail(ErrorKind::InvariantViolation, std::string(stage) + ": " + *problem);
    return WeaveFailure{stage, *problem};
  }
  return b;
}

int strict_threshold(const Magnitude& minimum, const std::optional<int>& override_value, const char* what) {
  if (!override_value) {
    return minimum.exact && *minimum.exact < static_cast<std::uint64_t>(1) << 30
               ? static_cast<int>(*minimum.exact)
               : -1;  // unreachable at machine scale
  }
  require(!minimum.exceeds(static_cast<std::uint64_t>(*override_value)), ErrorKind::InvalidInput,
          std::string(what) + " override is below the structural minimum " + minimum.describe());
  return *override_value;
}

}  // namespace

// ---- single linkage uncrossing ------------------------------------------------------

namespace {

struct PairContext {
  const Digraph& g;
  const std::vector<Path>& p;
  const std::vector<Path>& q;
  const std::vector<int>& pi;
  std::vector<VertexSet> pv;
  std::vector<VertexSet> qv;
};

// Edges of the auxiliary cycle, in order: even positions are P-paths, odd are
// Q-paths; position 2m holds P_{a_m}, 2m+1 holds Q_{a_m}.
struct CycleEdge {
  int index;
  bool is_p;
};

const VertexSet& edge_vertices(const PairContext& c, const CycleEdge& e) {
  return e.is_p ? c.pv[e.index] : c.qv[e.index];
}

const Path& edge_path(const PairContext& c, const CycleEdge& e) {
  return e.is_p ? c.p[e.index] : c.q[e.index];
}

// The five-edge family starting at P_j.
VertexSet window_vertices(const PairContext& c, int j) {
  const int j1 = c.pi[j];
  const int j2 = c.pi[j1];
  VertexSet out = set_union(c.pv[j], c.qv[j]);
  out = set_union(out, c.pv[j1]);
  out = set_union(out, c.qv[j1]);
  return set_union(out, c.pv[j2]);
}

PairOutcome finish_index_set(const PairContext& c, IndexSet j_set, int k, const WeaveConfig& cfg) {
  std::sort(j_set.begin(), j_set.end());
  std::string problem;
  if (static_cast<int>(j_set.size()) != k) problem = "index set has wrong size";
  std::vector<VertexSet> families;
  for (int j : j_set) families.push_back(window_vertices(c, j));
  for (std::size_t a = 0; a < families.size() && problem.empty(); ++a) {
    for (std::size_t b = a + 1; b < families.size(); ++b) {
      if (sets_intersect(families[a], families[b])) {
        problem = "window families of indices " + std::to_string(j_set[a]) + " and " +
                  std::to_string(j_set[b]) + " intersect";
        break;
      }
    }
  }
  if (!problem.empty()) {
    if (!cfg.relaxed) fail(ErrorKind::InvariantViolation, "uncross_pair: " + problem);
    return WeaveFailure{"uncross_pair", problem};
  }
  return j_set;
}

// Ramsey over pairwise-disjoint-or-not strongly connected pieces; red means
// the pieces intersect. Returns the chosen side or nullopt.
std::optional<RamseyResult> color_pieces(const std::vector<VertexSet>& pieces, int t, int k, bool strict) {
  const PairColoring red = [&](int a, int b) { return sets_intersect(pieces[a], pieces[b]); };
  const int m = static_cast<int>(pieces.size());
  if (strict) return ramsey_monochromatic(m, red, t, k);
  return ramsey_search(m, red, t, k);
}

}  // namespace

PairOutcome uncross_pair(const Digraph& g, const std::vector<Path>& p, const std::vector<Path>& q,
                         const std::vector<int>& pi, int k, int t, const WeaveConfig& cfg) {
  check_positive(k, "k");
  check_positive(t, "t");
  const int size = static_cast<int>(p.size());
  require(size >= 1 && q.size() == p.size() && pi.size() == p.size(), ErrorKind::PreconditionViolation,
          "P, Q and the permutation must have the same positive length");
  {
    std::vector<int> sorted = pi;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < size; ++i) {
      require(sorted[i] == i, ErrorKind::PreconditionViolation, "pi is not a permutation");
    }
  }
  require_linkage(g, p, "P");
  require_linkage(g, q, "Q");
  std::vector<Vertex> xs;
  std::vector<Vertex> ys;
  for (int i = 0; i < size; ++i) {
    xs.push_back(p[i].front());
    ys.push_back(p[i].back());
    require(q[i].front() == p[i].back(), ErrorKind::PreconditionViolation,
            "Q_" + std::to_string(i) + " does not start at the end of P_" + std::to_string(i));
    require(q[i].back() == p[pi[i]].front(), ErrorKind::PreconditionViolation,
            "Q_" + std::to_string(i) + " does not end at the start of P_pi(" + std::to_string(i) + ")");
  }
  require(!sets_intersect(make_set(xs), make_set(ys)), ErrorKind::PreconditionViolation,
          "X and Y must be disjoint");

  const bool strict = !cfg.relaxed;
  if (strict) {
    const int need = strict_threshold(uncross_pair_threshold(k, t), cfg.pair_threshold, "pair threshold");
    require(need >= 0 && size >= need, ErrorKind::SizeLimit,
            "linkage of order " + std::to_string(size) + " is below the threshold " +
                uncross_pair_threshold(k, t).describe());
  }

  PairContext c{g, p, q, pi, {}, {}};
  for (int i = 0; i < size; ++i) {
    c.pv.push_back(vertices_of(p[i]));
    c.qv.push_back(vertices_of(q[i]));
  }

  // Components of H are the cycles of pi.
  std::vector<std::vector<int>> comps;
  {
    std::vector<bool> seen(static_cast<std::size_t>(size), false);
    for (int a = 0; a < size; ++a) {
      if (seen[a]) continue;
      std::vector<int> comp;
      for (int i = a; !seen[i]; i = pi[i]) {
        seen[i] = true;
        comp.push_back(i);
      }
      comps.push_back(std::move(comp));
    }
  }
  const int ramsey_need = (k + t < 31) ? (1 << (k + t)) : -1;

  // Many components: each is a strongly connected closed walk.
  if (strict ? (ramsey_need > 0 && static_cast<int>(comps.size()) >= ramsey_need) : comps.size() >= 2) {
    std::vector<VertexSet> pieces;
    for (const auto& comp : comps) {
      VertexSet piece;
      for (int i : comp) piece = set_union(piece, set_union(c.pv[i], c.qv[i]));
      pieces.push_back(std::move(piece));
    }
    if (auto pick = color_pieces(pieces, t, k, strict)) {
      if (pick->red) {
        Bramble b;
        for (int i : pick->items) b.bags.push_back(pieces[i]);
        return finish_bramble<PairOutcome>(g, std::move(b), t, cfg, "uncross_pair");
      }
      IndexSet j_set;
      for (int i : pick->items) j_set.push_back(comps[i].front());
      // Blue components are vertex-disjoint, so their windows are too, even
      // when a short component makes a window revisit its own paths.
      return finish_index_set(c, std::move(j_set), k, cfg);
    }
  }

  // Long component: walk its edge cycle in segments of 10k edges.
  const auto longest = std::max_element(comps.begin(), comps.end(),
                                        [](const auto& a, const auto& b) { return a.size() < b.size(); });
  std::vector<CycleEdge> edges;
  for (int i : *longest) {
    edges.push_back({i, true});
    edges.push_back({i, false});
  }
  const int total = static_cast<int>(edges.size());
  int seg_len = 10 * k;
  int seg_count = total / seg_len;
  if (strict) {
    require(ramsey_need > 0 && seg_count >= ramsey_need, ErrorKind::InvariantViolation,
            "neither many components nor a long component");
  } else if (seg_count == 0) {
    seg_len = total;
    seg_count = 1;
  }

  std::vector<VertexSet> pieces;
  std::vector<int> piece_window;
  for (int s = 0; s < seg_count; ++s) {
    const int lo = s * seg_len;
    const int hi = lo + seg_len;
    bool crossing = false;
    bool built = false;
    for (int a = lo; a < hi && !built; ++a) {
      for (int b = a + 6; b < hi && !built; ++b) {
        const VertexSet shared = set_intersection(edge_vertices(c, edges[a]), edge_vertices(c, edges[b]));
        if (shared.empty()) continue;
        crossing = true;
        // A P-edge strictly inside (a, b) with four more edges before b.
        int w = a + 1;
        if (w % 2 != 0) ++w;
        if (w + 4 >= b) continue;
        // Closed walk: tail of edge a from the first shared vertex met along
        // edge b, every edge in between, then edge b up to that vertex.
        const Path& pb = edge_path(c, edges[b]);
        const auto meet = std::find_if(pb.begin(), pb.end(), [&](Vertex v) { return set_contains(shared, v); });
        const Vertex v = *meet;
        const Path& pa = edge_path(c, edges[a]);
        const auto from = std::find(pa.begin(), pa.end(), v);
        VertexSet piece = make_set(Path(from, pa.end()));
        for (int e = a + 1; e < b; ++e) piece = set_union(piece, edge_vertices(c, edges[e]));
        piece = set_union(piece, make_set(Path(pb.begin(), meet + 1)));
        pieces.push_back(std::move(piece));
        piece_window.push_back(edges[w].index);
        built = true;
      }
    }
    if (!crossing) {
      // No far-apart pair meets: k windows spaced ten edges apart are disjoint.
      IndexSet j_set;
      const int first = lo % 2 == 0 ? lo : lo + 1;
      for (int w = first; static_cast<int>(j_set.size()) < k && w + 4 < hi; w += 10) {
        j_set.push_back(edges[w].index);
      }
      if (static_cast<int>(j_set.size()) == k) return finish_index_set(c, std::move(j_set), k, cfg);
    }
  }
  if (pieces.empty()) {
    if (strict) fail(ErrorKind::InvariantViolation, "uncross_pair: no usable segment");
    return WeaveFailure{"uncross_pair", "no segment of the long component is usable"};
  }
  if (auto pick = color_pieces(pieces, t, k, strict)) {
    if (pick->red) {
      Bramble b;
      for (int i : pick->items) b.bags.push_back(pieces[i]);
      return finish_bramble<PairOutcome>(g, std::move(b), t, cfg, "uncross_pair");
    }
    IndexSet j_set;
    for (int i : pick->items) j_set.push_back(piece_window[i]);
    return finish_index_set(c, std::move(j_set), k, cfg);
  }
  return WeaveFailure{"uncross_pair", "segment pieces contain no monochromatic set of the needed size"};
}

// ---- two linkages -------------------------------------------------------------------

namespace {

// For the return linkage of a sublinkage: paths from the ends back to the
// starts, as a permutation on local indices.
struct ReturnLinkage {
  std::vector<Path> q;
  std::vector<int> pi;
};

std::optional<ReturnLinkage> return_linkage(const Digraph& g, const std::vector<Path>& fwd) {
  std::vector<Vertex> starts;
  std::vector<Vertex> ends;
  for (const Path& p : fwd) {
    starts.push_back(p.front());
    ends.push_back(p.back());
  }
  const MengerResult back = max_disjoint_paths(g, make_set(ends), make_set(starts));
  if (back.count() != static_cast<int>(fwd.size())) return std::nullopt;
  ReturnLinkage out;
  out.q.resize(fwd.size());
  out.pi.assign(fwd.size(), -1);
  for (const Path& path : back.paths) {
    const auto from = std::find(ends.begin(), ends.end(), path.front()) - ends.begin();
    const auto to = std::find(starts.begin(), starts.end(), path.back()) - starts.begin();
    out.q[static_cast<std::size_t>(from)] = path;
    out.pi[static_cast<std::size_t>(from)] = static_cast<int>(to);
  }
  return out;
}

Path slice_from(const Path& p, Vertex v) { return Path(std::find(p.begin(), p.end(), v), p.end()); }

Path slice_to(const Path& p, Vertex v) {
  return Path(p.begin(), std::find(p.begin(), p.end(), v) + 1);
}

std::vector<Path> pick(const std::vector<Path>& paths, const IndexSet& idx) {
  std::vector<Path> out;
  for (int i : idx) out.push_back(paths[i]);
  return out;
}

}  // namespace

TwoLinkageOutcome uncross_two_linkages(const Digraph& g, const VertexSet& x,
                                       const std::vector<Path>& p, const std::vector<Path>& r,
                                       int k, int t, const WeaveConfig& cfg) {
  check_positive(k, "k");
  check_positive(t, "t");
  require_linkage(g, p, "P");
  require_linkage(g, r, "R");
  std::vector<Vertex> x1, x2, y1, y2;
  for (const Path& path : p) {
    x1.push_back(path.front());
    x2.push_back(path.back());
  }
  for (const Path& path : r) {
    y1.push_back(path.front());
    y2.push_back(path.back());
  }
  const std::vector<VertexSet> ends{make_set(x1), make_set(x2), make_set(y1), make_set(y2)};
  for (std::size_t a = 0; a < ends.size(); ++a) {
    require(is_subset(ends[a], x), ErrorKind::PreconditionViolation, "linkage endpoints must lie in x");
    for (std::size_t b = a + 1; b < ends.size(); ++b) {
      require(!sets_intersect(ends[a], ends[b]), ErrorKind::PreconditionViolation,
              "X1, X2, Y1, Y2 must be pairwise disjoint");
    }
  }
  const int m = static_cast<int>(std::min(p.size(), r.size()));
  if (!cfg.relaxed) {
    const int need = strict_threshold(uncross_two_threshold(k, t), cfg.two_threshold, "two-linkage threshold");
    require(need >= 0 && m >= need, ErrorKind::SizeLimit,
            "linkages of order " + std::to_string(m) + " are below the threshold " +
                uncross_two_threshold(k, t).describe());
  }

  std::vector<VertexSet> pv, rv;
  for (const Path& path : p) pv.push_back(vertices_of(path));
  for (const Path& path : r) rv.push_back(vertices_of(path));

  // Stage one, red iff P_i meets R_j (i < j): a blue set gives P' from its
  // first half and R' from its second.
  const PairColoring forward = [&](int i, int j) { return sets_intersect(pv[i], rv[j]); };
  // Stage two, red iff P_j meets R_i (i < j): a blue set gives R' first.
  const PairColoring backward = [&](int i, int j) { return sets_intersect(pv[j], rv[i]); };
  auto split = [&](const IndexSet& items, bool p_first) {
    const IndexSet head(items.begin(), items.begin() + k);
    const IndexSet tail(items.begin() + k, items.end());
    return p_first ? DisjointSublinkages{head, tail} : DisjointSublinkages{tail, head};
  };
  if (auto blue = find_clique(m, forward, false, 2 * k)) return split(*blue, true);
  if (auto blue = find_clique(m, backward, false, 2 * k)) return split(*blue, false);

  // Mutually crossing items: P_i meets R_j and P_j meets R_i.
  const PairColoring mutual = [&](int i, int j) { return forward(i, j) && backward(i, j); };
  const int largest = m / 2;
  std::string last_reason = "no mutually crossing family of the needed size";
  for (int inner = largest; inner >= t; --inner) {
    const auto family = find_clique(m, mutual, true, 2 * inner);
    if (!family) continue;
    IndexSet pi_idx, ri_idx;
    for (std::size_t a = 0; a < family->size(); ++a) ((a % 2 == 0) ? pi_idx : ri_idx).push_back((*family)[a]);
    const std::vector<Path> ps = pick(p, pi_idx);
    const std::vector<Path> rs = pick(r, ri_idx);
    const auto qx = return_linkage(g, ps);
    const auto qy = return_linkage(g, rs);
    if (!qx || !qy) {
      last_reason = "x is not well-linked enough to close the sublinkages";
      continue;
    }
    const PairOutcome side_p = uncross_pair(g, ps, qx->q, qx->pi, t, t, cfg);
    if (const auto* b = std::get_if<Bramble>(&side_p)) return *b;
    const PairOutcome side_r = uncross_pair(g, rs, qy->q, qy->pi, t, t, cfg);
    if (const auto* b = std::get_if<Bramble>(&side_r)) return *b;
    const auto* jp = std::get_if<IndexSet>(&side_p);
    const auto* jr = std::get_if<IndexSet>(&side_r);
    if (jp == nullptr || jr == nullptr) {
      const auto* f = std::get_if<WeaveFailure>(jp == nullptr ? &side_p : &side_r);
      last_reason = f->reason;
      continue;
    }
    Bramble b;
    for (int a = 0; a < t; ++a) {
      const int j = (*jp)[a];
      const int j1 = qx->pi[j];
      const int j2 = qx->pi[j1];
      const int l = (*jr)[a];
      const int l1 = qy->pi[l];
      const int l2 = qy->pi[l1];
      // Every chosen P meets every chosen R, so both hand-over points exist.
      const VertexSet u_set = set_intersection(vertices_of(ps[j2]), vertices_of(rs[l]));
      const VertexSet w_set = set_intersection(vertices_of(rs[l2]), vertices_of(ps[j]));
      const Vertex u = *std::find_if(ps[j2].begin(), ps[j2].end(), [&](Vertex v) { return set_contains(u_set, v); });
      const Vertex w = *std::find_if(rs[l2].begin(), rs[l2].end(), [&](Vertex v) { return set_contains(w_set, v); });
      std::vector<Vertex> bag;
      for (const Path* part : {&qx->q[j], &ps[j1], &qx->q[j1], &qy->q[l], &rs[l1], &qy->q[l1]}) {
        bag.insert(bag.end(), part->begin(), part->end());
      }
      for (const Path& part : {slice_from(ps[j], w), slice_to(ps[j2], u), slice_from(rs[l], u), slice_to(rs[l2], w)}) {
        bag.insert(bag.end(), part.begin(), part.end());
      }
      b.bags.push_back(make_set(std::move(bag)));
    }
    auto done = finish_bramble<TwoLinkageOutcome>(g, std::move(b), t, cfg, "uncross_two_linkages");
    if (std::holds_alternative<Bramble>(done)) return done;
    last_reason = std::get<WeaveFailure>(done).reason;
  }
  if (!cfg.relaxed) fail(ErrorKind::InvariantViolation, "uncross_two_linkages: " + last_reason);
  return WeaveFailure{"uncross_two_linkages", last_reason};
}

// ---- bramble from a well-linked set -------------------------------------------------

namespace {

struct Block {
  std::vector<Vertex> in_col, in_row, out_col, out_row;
};

struct Route {
  int from;  // block index
  int to;
  bool column;
  std::vector<Path> paths;
};

bool linkages_disjoint(const std::vector<Path>& a, const std::vector<Path>& b) {
  VertexSet va, vb;
  for (const Path& p : a) va = set_union(va, make_set(p));
  for (const Path& p : b) vb = set_union(vb, make_set(p));
  return !sets_intersect(va, vb);
}

}  // namespace

BrambleOutcome bramble_from_well_linked(const Digraph& g, const Path& p, const VertexSet& x, int t,
                                        const WeaveConfig& cfg) {
  check_positive(t, "t");
  require(is_path_in(g, p), ErrorKind::InvalidInput, "p is not a path of the graph");
  require(is_subset(x, make_set(p)), ErrorKind::InvalidInput, "x must lie on p");
  if (!cfg.relaxed) {
    fail(ErrorKind::SizeLimit, "a well-linked set of " + std::to_string(x.size()) +
                                   " vertices is below the requirement (" + well_linked_threshold(t).describe() +
                                   ")");
  }
  const char* stage = "bramble_from_well_linked";
  const int side = cfg.grid_side.value_or(std::max(2, t));
  require(side >= 2, ErrorKind::InvalidInput, "grid side must be at least 2");
  if (side < t) return WeaveFailure{stage, "grid side is smaller than the bramble size"};
  const int blocks = side * side;
  const int width = cfg.block_size.value_or(static_cast<int>(x.size()) / (4 * blocks));
  require(width >= 0, ErrorKind::InvalidInput, "block size must be non-negative");
  if (width < 1 || static_cast<std::size_t>(4 * blocks * width) > x.size()) {
    return WeaveFailure{stage, "too few well-linked vertices for " + std::to_string(blocks) + " blocks"};
  }

  // x in path order, cut into consecutive blocks of 4*width vertices.
  std::vector<int> position(static_cast<std::size_t>(g.vertex_count()), -1);
  for (std::size_t i = 0; i < p.size(); ++i) position[p[i]] = static_cast<int>(i);
  std::vector<Vertex> ordered(x.begin(), x.end());
  std::sort(ordered.begin(), ordered.end(), [&](Vertex a, Vertex b) { return position[a] < position[b]; });
  std::vector<Block> block(static_cast<std::size_t>(blocks));
  for (int b = 0; b < blocks; ++b) {
    auto at = ordered.begin() + 4 * width * b;
    block[b].in_col.assign(at, at + width);
    block[b].in_row.assign(at + width, at + 2 * width);
    block[b].out_col.assign(at + 2 * width, at + 3 * width);
    block[b].out_row.assign(at + 3 * width, at + 4 * width);
  }
  auto id = [side](int row, int col) { return row * side + col; };

  std::vector<Route> routes;
  for (int row = 0; row < side; ++row) {
    for (int col = 0; col < side; ++col) {
      routes.push_back({id(row, col), id((row + 1) % side, col), true, {}});
      routes.push_back({id(row, col), id(row, (col + 1) % side), false, {}});
    }
  }
  std::sort(routes.begin(), routes.end(), [](const Route& a, const Route& b) {
    return std::tie(a.from, a.to, a.column) < std::tie(b.from, b.to, b.column);
  });
  for (Route& route : routes) {
    const auto& from = route.column ? block[route.from].out_col : block[route.from].out_row;
    const auto& to = route.column ? block[route.to].in_col : block[route.to].in_row;
    route.paths = max_disjoint_paths(g, make_set(from), make_set(to)).paths;
    if (route.paths.empty()) return WeaveFailure{stage, "no path between two blocks; x is not well-linked"};
  }

  // Disjointify the routes pairwise, in order.
  for (std::size_t a = 0; a < routes.size(); ++a) {
    for (std::size_t b = a + 1; b < routes.size(); ++b) {
      if (linkages_disjoint(routes[a].paths, routes[b].paths)) continue;
      const int smaller = static_cast<int>(std::min(routes[a].paths.size(), routes[b].paths.size()));
      for (int size = std::max(1, smaller / 2); size >= 1; --size) {
        const auto out = uncross_two_linkages(g, x, routes[a].paths, routes[b].paths, size, t, cfg);
        if (const auto* found = std::get_if<Bramble>(&out)) {
          return finish_bramble<BrambleOutcome>(g, *found, t, cfg, stage);
        }
        if (const auto* sub = std::get_if<DisjointSublinkages>(&out)) {
          routes[a].paths = pick(routes[a].paths, sub->p);
          routes[b].paths = pick(routes[b].paths, sub->r);
          break;
        }
      }
    }
  }

  // One representative path per route, then columns and rows.
  auto route_between = [&](int from, int to, bool column) -> const Path& {
    for (const Route& r : routes) {
      if (r.from == from && r.to == to && r.column == column) return r.paths.front();
    }
    fail(ErrorKind::InvariantViolation, "missing route");
  };
  auto assemble = [&](bool column, int line) {
    std::vector<Vertex> bag;
    for (int step = 0; step < side; ++step) {
      const int here = column ? id(step, line) : id(line, step);
      const int prev = column ? id((step + side - 1) % side, line) : id(line, (step + side - 1) % side);
      const int next = column ? id((step + 1) % side, line) : id(line, (step + 1) % side);
      const Path& in = route_between(prev, here, column);
      const Path& out = route_between(here, next, column);
      bag.insert(bag.end(), out.begin(), out.end());
      // Along p from where the incoming route lands to where the outgoing leaves.
      const int lo = position[in.back()];
      const int hi = position[out.front()];
      for (int i = lo; i <= hi; ++i) bag.push_back(p[static_cast<std::size_t>(i)]);
    }
    return make_set(std::move(bag));
  };
  std::vector<VertexSet> columns, rows;
  for (int line = 0; line < side; ++line) {
    columns.push_back(assemble(true, line));
    rows.push_back(assemble(false, line));
  }

  const auto pick_cols = color_pieces(columns, t, t, false);
  if (!pick_cols) return WeaveFailure{stage, "columns contain no monochromatic set of size t"};
  if (pick_cols->red) {
    Bramble b;
    for (int i : pick_cols->items) b.bags.push_back(columns[i]);
    return finish_bramble<BrambleOutcome>(g, std::move(b), t, cfg, stage);
  }
  const auto pick_rows = color_pieces(rows, t, t, false);
  if (!pick_rows) return WeaveFailure{stage, "rows contain no monochromatic set of size t"};
  if (pick_rows->red) {
    Bramble b;
    for (int i : pick_rows->items) b.bags.push_back(rows[i]);
    return finish_bramble<BrambleOutcome>(g, std::move(b), t, cfg, stage);
  }
  Bramble b;
  for (int a = 0; a < t; ++a) {
    b.bags.push_back(set_union(columns[pick_cols->items[a]], rows[pick_rows->items[a]]));
  }
  return finish_bramble<BrambleOutcome>(g, std::move(b), t, cfg, stage);
}

}  // namespace ddpp
