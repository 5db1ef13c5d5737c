#include "ddpp/linker.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <set>

#include "ddpp/error.hpp"
#include "ddpp/flow.hpp"

namespace ddpp {

int connectivity_requirement(int k) {
  require(k >= 0 && k <= 300, ErrorKind::SizeLimit, "k out of supported range");
  return 36 * k * k * k + 2 * k;
}

std::uint64_t required_bramble_size(int k) {
  const std::uint64_t kk = static_cast<std::uint64_t>(k);
  const std::uint64_t alpha = static_cast<std::uint64_t>(connectivity_requirement(k));
  const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  auto mul = [&](std::uint64_t a, std::uint64_t b) {
    require(a == 0 || b <= max / a, ErrorKind::SizeLimit, "bramble size overflows 64 bits");
    return a * b;
  };
  auto add = [&](std::uint64_t a, std::uint64_t b) {
    require(b <= max - a, ErrorKind::SizeLimit, "bramble size overflows 64 bits");
    return a + b;
  };
  const std::uint64_t pruning = mul(mul(4 * kk, alpha), alpha);
  return add(add(add(4 * kk, pruning), mul(188, mul(kk, mul(kk, kk)))), 1);
}

const char* to_string(CutStop stop) {
  switch (stop) {
    case CutStop::HighOrder: return "high-order";
    case CutStop::Inseparable: return "inseparable";
    case CutStop::CliqueExhausted: return "clique-exhausted";
    case CutStop::Stalled: return "stalled";
    case CutStop::CapReached: return "cap-reached";
  }
  return "unknown";
}

// ---- subsets ----------------------------------------------------------------------

namespace {

std::pair<int, int> subsets_pair_rec(const VertexSet& universe, std::vector<int> idx,
                                     const std::vector<VertexSet>& sets) {
  if (universe.size() == 1) return {std::min(idx[0], idx[1]), std::max(idx[0], idx[1])};
  for (Vertex v : universe) {
    const VertexSet rest = set_difference(universe, {v});
    std::vector<int> full;
    for (int i : idx) {
      if (set_difference(sets[i], {v}) == rest) full.push_back(i);
    }
    if (full.size() > 1) continue;
    const int drop = full.empty() ? idx.back() : full.front();
    idx.erase(std::find(idx.begin(), idx.end(), drop));
    std::vector<VertexSet> trimmed = sets;
    for (int i : idx) trimmed[i] = set_difference(sets[i], {v});
    return subsets_pair_rec(rest, std::move(idx), trimmed);
  }
  fail(ErrorKind::InvariantViolation, "no element to drop in subsets_pair");
}

}  // namespace

std::pair<int, int> subsets_pair(const VertexSet& universe, const std::vector<VertexSet>& subsets) {
  require(!universe.empty(), ErrorKind::PreconditionViolation, "universe must be non-empty");
  require(subsets.size() == universe.size() + 1, ErrorKind::PreconditionViolation,
          "need exactly |universe| + 1 subsets");
  for (const auto& s : subsets) {
    require(is_subset(s, universe), ErrorKind::PreconditionViolation, "subset leaves the universe");
    require(s != universe, ErrorKind::PreconditionViolation, "a subset equals the universe");
  }
  std::vector<int> idx(subsets.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
  const auto result = subsets_pair_rec(universe, std::move(idx), subsets);
  require(set_union(subsets[result.first], subsets[result.second]) != universe, ErrorKind::InvariantViolation,
          "subsets_pair produced a covering pair");
  return result;
}

// ---- cut sequence -----------------------------------------------------------------

namespace {

void require_terminals_outside(const Bramble& b, const IndexSet& bags, const VertexSet& terminals) {
  for (int idx : bags) {
    require(!sets_intersect(b.bags[idx], terminals), ErrorKind::PreconditionViolation,
            "bag " + std::to_string(idx) + " contains a terminal");
  }
}

IndexSet all_bags(const Bramble& b) {
  IndexSet all(static_cast<std::size_t>(b.size()));
  for (int i = 0; i < b.size(); ++i) all[i] = i;
  return all;
}

VertexSet source_ids(const ContractedView& view, const VertexSet& s_set) {
  std::vector<Vertex> ids;
  for (Vertex s : s_set) {
    const Vertex id = view.id_of_base(s);
    require(id >= 0, ErrorKind::PreconditionViolation, "terminal was contracted");
    ids.push_back(id);
  }
  return make_set(std::move(ids));
}

}  // namespace

CutSequenceState cut_sequence(const Digraph& g, const Bramble& b, const IndexSet& reference,
                              const VertexSet& s_set, int alpha, int max_iterations) {
  require(alpha >= 1, ErrorKind::InvalidInput, "alpha must be positive");
  require(!s_set.empty(), ErrorKind::InvalidInput, "source set must be non-empty");
  require_terminals_outside(b, reference, s_set);
  CutSequenceState state;
  IndexSet current = reference;
  for (int i = 1; i <= max_iterations; ++i) {
    const ContractedView view(g, b, reference, current);
    const VertexSet sources = source_ids(view, s_set);
    const VertexSet clique = view.clique();
    if (clique.empty()) {
      state.stop = CutStop::CliqueExhausted;
      state.result = current;
      return state;
    }
    const auto sep = min_proper_separation(view.graph(), sources, clique);
    if (!sep) {
      state.stop = CutStop::Inseparable;
      state.result = current;
      return state;
    }
    if (sep->order() >= alpha) {
      state.stop = CutStop::HighOrder;
      state.stop_order = sep->order();
      state.result = current;
      return state;
    }
    CutRecord rec;
    rec.graph = view.graph();
    rec.sources = sources;
    rec.clique = clique;
    rec.prime = *sep;
    const VertexSet cut = sep->cut();
    rec.cut_labels = view.labels(cut);
    const VertexSet removed = set_intersection(cut, clique);
    rec.removed_nodes = view.labels(removed);
    std::vector<Vertex> bag_vertices;
    for (Vertex id : removed) {
      rec.removed_bags.push_back(view.bag_of(id));
      const auto& bag = view.image(id);
      bag_vertices.insert(bag_vertices.end(), bag.begin(), bag.end());
    }
    std::sort(rec.removed_bags.begin(), rec.removed_bags.end());
    for (int idx : current) {
      if (!std::binary_search(rec.removed_bags.begin(), rec.removed_bags.end(), idx)) rec.surviving.push_back(idx);
    }
    // (A_i, B_i): drop C_i and add the vertices of the removed bags to both sides.
    const ContractedView next(g, b, reference, rec.surviving);
    const VertexSet expanded = make_set(std::move(bag_vertices));  // labels of base vertices
    rec.removed_vertices = expanded;
    rec.next.side_a = next.ids(set_union(view.labels(set_difference(sep->side_a, removed)), expanded));
    rec.next.side_b = next.ids(set_union(view.labels(set_difference(sep->side_b, removed)), expanded));
    rec.next_is_separation = rec.next.side_a.size() + rec.next.side_b.size() > 0 &&
                             check_separation(next.graph(), rec.next).empty();
    rec.next_avoids_clique = !sets_intersect(rec.next.cut(), next.clique());
    const bool stalled = removed.empty();
    current = rec.surviving;
    state.records.push_back(std::move(rec));
    if (stalled) {
      state.stop = CutStop::Stalled;
      state.result = current;
      return state;
    }
  }
  state.stop = CutStop::CapReached;
  state.result = current;
  return state;
}

bool cut_conflicts(const CutSequenceState& state, int j, int i) {
  const int m = static_cast<int>(state.records.size());
  require(i >= 1 && i <= m && j >= 1 && j <= m, ErrorKind::InvalidInput, "record index out of range");
  const CutRecord& cut_rec = state.records[static_cast<std::size_t>(j - 1)];
  const CutRecord& removed_rec = state.records[static_cast<std::size_t>(i - 1)];
  // Node labels of removed bags count as meeting the bag.
  if (sets_intersect(cut_rec.cut_labels, removed_rec.removed_nodes)) return true;
  return sets_intersect(cut_rec.cut_labels, removed_rec.removed_vertices);
}

IndexSet find_index_set(const CutSequenceState& state, int k) {
  require(k >= 0, ErrorKind::InvalidInput, "k must be non-negative");
  const int m = static_cast<int>(state.records.size());
  require(m >= 1, ErrorKind::InvariantViolation, "no completed iterations");
  IndexSet chosen{m};
  std::set<int> alive;
  for (int i = 1; i < m; ++i) {
    if (!cut_conflicts(state, m, i)) alive.insert(i);
  }
  while (static_cast<int>(chosen.size()) < k + 1) {
    require(!alive.empty(), ErrorKind::InvariantViolation,
            "cut sequence too short for " + std::to_string(k + 1) + " indices");
    const int l = *alive.rbegin();
    chosen.push_back(l);
    alive.erase(l);
    for (auto it = alive.begin(); it != alive.end();) {
      it = cut_conflicts(state, l, *it) ? alive.erase(it) : std::next(it);
    }
  }
  return chosen;
}

// ---- one side ---------------------------------------------------------------------

OneSideResult link_one_side(const Digraph& g, const Bramble& b, const IndexSet& reference,
                            const VertexSet& s_set, int k, int alpha, int beta, const LinkerConfig& cfg) {
  require(k >= 1 && alpha >= 1, ErrorKind::InvalidInput, "k and alpha must be positive");
  if (!cfg.relaxed) {
    require(beta >= alpha && alpha >= k, ErrorKind::InvalidInput, "need beta >= alpha >= k");
    const std::uint64_t need = 4ull * static_cast<std::uint64_t>(k) * alpha * alpha;
    require(reference.size() > need, ErrorKind::SizeLimit,
            "bramble of size " + std::to_string(reference.size()) + " needs more than " + std::to_string(need) +
                " bags");
    require(strong_connectivity(g) >= beta, ErrorKind::PreconditionViolation,
            "graph is not " + std::to_string(beta) + "-strongly connected");
  }
  const int cap = cfg.max_iterations.value_or(2 * k * alpha);
  OneSideResult out;
  out.trace = cut_sequence(g, b, reference, s_set, alpha, cap);
  if (!out.trace.succeeded()) {
    out.failure = StageFailure{"link_one_side", std::string("cut sequence stopped: ") + to_string(out.trace.stop)};
    if (!cfg.relaxed) fail(ErrorKind::InvariantViolation, out.failure->reason);
    return out;
  }
  out.bags = out.trace.result;
  const ContractedView view(g, b, reference, out.bags);
  out.certified = is_alpha_connected(view.graph(), source_ids(view, s_set), view.clique(), alpha);
  if (!out.certified) {
    out.failure = StageFailure{"link_one_side", "alpha-connectivity certificate failed"};
    if (!cfg.relaxed) fail(ErrorKind::InvariantViolation, out.failure->reason);
  }
  return out;
}

namespace {

int alpha_s_for(int k, const LinkerConfig& cfg) {
  return cfg.alpha_s.value_or(cfg.relaxed ? 2 * k : connectivity_requirement(k));
}

int alpha_t_for(int k, const LinkerConfig& cfg) { return cfg.alpha_t.value_or(3 * k); }

}  // namespace

ContractedLinks link_contracted(const LinkageInstance& inst, const Bramble& b, const LinkerConfig& cfg) {
  const int k = inst.k();
  require(k >= 1, ErrorKind::InvalidInput, "need at least one terminal pair");
  const int alpha_s = alpha_s_for(k, cfg);
  const int alpha_t = alpha_t_for(k, cfg);
  const int beta = cfg.relaxed ? alpha_s : connectivity_requirement(k);
  ContractedLinks out;
  out.source_side = link_one_side(inst.graph, b, all_bags(b), make_set(inst.sources), k, alpha_s, beta, cfg);
  if (out.source_side.failure) {
    out.failure = StageFailure{"link_contracted/source", out.source_side.failure->reason};
    return out;
  }
  out.bags_s = out.source_side.bags;
  const Digraph reversed = inst.graph.reversed();
  out.sink_side = link_one_side(reversed, b, out.bags_s, make_set(inst.sinks), k, alpha_t, beta, cfg);
  if (out.sink_side.failure) {
    out.failure = StageFailure{"link_contracted/sink", out.sink_side.failure->reason};
    return out;
  }
  out.bags_t = out.sink_side.bags;
  if (!cfg.relaxed) {
    const std::uint64_t kk = static_cast<std::uint64_t>(k);
    require(out.bags_s.size() - out.bags_t.size() < 36 * kk * kk * kk, ErrorKind::InvariantViolation,
            "sink side removed too many bags");
  }
  return out;
}

// ---- minimal linkages -------------------------------------------------------------

namespace {

std::vector<Path> reversed_paths(std::vector<Path> paths) {
  for (auto& p : paths) std::reverse(p.begin(), p.end());
  return paths;
}

std::vector<Path> minimal_to_clique(const ContractedView& view, std::vector<Path> paths) {
  for (auto& p : paths) {
    for (std::size_t i = 1; i < p.size(); ++i) {
      if (view.is_node(p[i])) {
        p.resize(i + 1);
        break;
      }
    }
  }
  for (bool changed = true; changed;) {
    changed = false;
    std::set<Vertex> used;
    for (const auto& p : paths) {
      if (!p.empty() && view.is_node(p.back())) used.insert(p.back());
    }
    for (auto& p : paths) {
      if (p.size() < 3 || !view.is_node(p.back())) continue;
      for (std::size_t pos = 1; pos + 1 < p.size() && !changed; ++pos) {
        const Vertex base = view.base_vertex(p[pos]);
        for (int bag : view.bags_containing(base)) {
          const Vertex node = view.id_of_bag(bag);
          if (node < 0) continue;
          const bool own_shortcut = node == p.back() && pos + 2 < p.size();
          if (own_shortcut || !used.count(node)) {
            p.resize(pos + 1);
            p.push_back(node);
            changed = true;
            break;
          }
        }
      }
      if (changed) break;
    }
  }
  return paths;
}

}  // namespace

std::vector<Path> make_b_minimal(const ContractedView& view, std::vector<Path> paths, LinkDirection dir) {
  if (dir == LinkDirection::FromClique) return reversed_paths(minimal_to_clique(view, reversed_paths(std::move(paths))));
  return minimal_to_clique(view, std::move(paths));
}

bool is_b_minimal(const ContractedView& view, const std::vector<Path>& paths, LinkDirection dir) {
  const std::vector<Path> oriented = dir == LinkDirection::FromClique ? reversed_paths(paths) : paths;
  std::set<Vertex> used;
  for (const auto& p : oriented) {
    if (p.size() < 2 || view.is_node(p.front()) || !view.is_node(p.back())) return false;
    used.insert(p.back());
  }
  for (const auto& p : oriented) {
    for (std::size_t pos = 1; pos + 1 < p.size(); ++pos) {
      if (view.is_node(p[pos])) return false;
      for (int bag : view.bags_containing(view.base_vertex(p[pos]))) {
        const Vertex node = view.id_of_bag(bag);
        if (node >= 0 && !used.count(node)) return false;
      }
    }
  }
  return true;
}

// ---- link up ----------------------------------------------------------------------

namespace {

bool is_simple_path(const Digraph& g, const Path& p) {
  if (p.empty()) return false;
  for (Vertex v : p) {
    if (!g.valid(v)) return false;
  }
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    if (!g.has_edge(p[i], p[i + 1])) return false;
  }
  return make_set(p).size() == p.size();
}

std::vector<bool> mask_of(int n, const VertexSet& set) {
  std::vector<bool> mask(static_cast<std::size_t>(n), false);
  for (Vertex v : set) mask[v] = true;
  return mask;
}

template <class Result>
Result fail_stage(Result r, const LinkerConfig& cfg, const std::string& stage, const std::string& reason) {
  if (!cfg.relaxed) fail(ErrorKind::InvariantViolation, stage + ": " + reason);
  r.failure = StageFailure{stage, reason};
  return r;
}

}  // namespace

LinkUpResult link_up(const LinkageInstance& inst, const Bramble& b, const LinkerConfig& cfg) {
  const Digraph& g = inst.graph;
  const int k = inst.k();
  require(k >= 1, ErrorKind::InvalidInput, "need at least one terminal pair");
  VertexSet terminals = set_union(make_set(inst.sources), make_set(inst.sinks));
  require_terminals_outside(b, all_bags(b), terminals);
  if (!cfg.relaxed) {
    const std::uint64_t kk = static_cast<std::uint64_t>(k);
    require(static_cast<std::uint64_t>(b.size()) > 188 * kk * kk * kk, ErrorKind::SizeLimit,
            "bramble needs more than 188k^3 bags");
    require(strong_connectivity(g) >= connectivity_requirement(k), ErrorKind::SizeLimit,
            "graph is not (36k^3 + 2k)-strongly connected");
  }
  LinkUpResult r;
  r.sides = link_contracted(inst, b, cfg);
  if (r.sides.failure) {
    r.failure = r.sides.failure;
    return r;
  }

  // Sources into K_T, avoiding W.
  const ContractedView vt(g, b, all_bags(b), r.sides.bags_t);
  std::vector<bool> blocked(static_cast<std::size_t>(vt.graph().vertex_count()), false);
  for (Vertex id = 0; id < vt.base_count(); ++id) {
    const Vertex v = vt.base_vertex(id);
    int in_t = 0;
    int in_s = 0;
    for (int bag : vt.bags_containing(v)) {
      in_t += std::binary_search(r.sides.bags_t.begin(), r.sides.bags_t.end(), bag) ? 1 : 0;
      in_s += std::binary_search(r.sides.bags_s.begin(), r.sides.bags_s.end(), bag) ? 1 : 0;
    }
    if (in_t == 1 && in_s == 2) blocked[id] = true;
  }
  std::vector<Vertex> s_ids;
  for (Vertex s : inst.sources) s_ids.push_back(vt.id_of_base(s));
  const MengerResult into = max_disjoint_paths(vt.graph(), make_set(s_ids), vt.clique(), blocked);
  if (into.count() < k) {
    return fail_stage(std::move(r), cfg, "link_up",
                      "claim 1: only " + std::to_string(into.count()) + " of " + std::to_string(k) +
                          " disjoint paths from S to the clique");
  }
  std::vector<Path> paths(static_cast<std::size_t>(k));
  for (const Path& p : into.paths) {
    const auto i = std::find(s_ids.begin(), s_ids.end(), p.front()) - s_ids.begin();
    paths[static_cast<std::size_t>(i)] = p;
  }
  paths = make_b_minimal(vt, std::move(paths), LinkDirection::ToClique);

  for (int i = 0; i < k; ++i) {
    const Path& p = paths[i];
    const Vertex node = p.back();
    const VertexSet& bag = vt.image(node);
    const Vertex q = vt.base_vertex(p[p.size() - 2]);
    Path base;
    for (std::size_t j = 0; j + 1 < p.size(); ++j) base.push_back(vt.base_vertex(p[j]));
    Vertex end = -1;
    if (set_contains(bag, q)) {
      end = q;
    } else {
      for (Vertex x : bag) {
        if (g.has_edge(q, x)) {
          end = x;
          break;
        }
      }
      require(end >= 0, ErrorKind::InvariantViolation, "no edge into the chosen bag");
      base.push_back(end);
    }
    r.source_paths.push_back(std::move(base));
    r.source_ends.push_back(end);
    r.source_bags.push_back(vt.bag_of(node));
  }

  // From K_T to the sinks in G(B_T; B_S), avoiding the used nodes and s'.
  const ContractedView vt2(g, b, r.sides.bags_s, r.sides.bags_t);
  std::vector<bool> blocked2(static_cast<std::size_t>(vt2.graph().vertex_count()), false);
  for (int bag : r.source_bags) blocked2[vt2.id_of_bag(bag)] = true;
  for (Vertex s : r.source_ends) {
    if (const Vertex id = vt2.id_of_base(s); id >= 0) blocked2[id] = true;
  }
  std::vector<Vertex> free_nodes;
  for (Vertex id : vt2.clique()) {
    if (!blocked2[id]) free_nodes.push_back(id);
  }
  std::vector<Vertex> t_ids;
  for (Vertex t : inst.sinks) t_ids.push_back(vt2.id_of_base(t));
  const MengerResult out_of = max_disjoint_paths(vt2.graph(), make_set(free_nodes), make_set(t_ids), blocked2);
  if (out_of.count() < k) {
    return fail_stage(std::move(r), cfg, "link_up",
                      "claim 2: only " + std::to_string(out_of.count()) + " of " + std::to_string(k) +
                          " disjoint paths from the clique to T");
  }
  std::vector<Path> back(static_cast<std::size_t>(k));
  for (const Path& p : out_of.paths) {
    const auto i = std::find(t_ids.begin(), t_ids.end(), p.back()) - t_ids.begin();
    back[static_cast<std::size_t>(i)] = p;
  }
  back = make_b_minimal(vt2, std::move(back), LinkDirection::FromClique);
  for (int i = 0; i < k; ++i) {
    const Path& p = back[i];
    const Vertex node = p.front();
    const VertexSet& bag = vt2.image(node);
    const Vertex rv = vt2.base_vertex(p[1]);
    Path base;
    Vertex start = -1;
    if (set_contains(bag, rv)) {
      start = rv;
    } else {
      for (Vertex x : bag) {
        if (g.has_edge(x, rv)) {
          start = x;
          break;
        }
      }
      require(start >= 0, ErrorKind::InvariantViolation, "no edge out of the chosen bag");
      base.push_back(start);
    }
    for (std::size_t j = 1; j < p.size(); ++j) base.push_back(vt2.base_vertex(p[j]));
    r.sink_paths.push_back(std::move(base));
    r.sink_ends.push_back(start);
    r.sink_bags.push_back(vt2.bag_of(node));
  }

  if (auto problem = check_link_up(inst, b, r)) return fail_stage(std::move(r), cfg, "link_up", *problem);
  return r;
}

std::optional<std::string> check_link_up(const LinkageInstance& inst, const Bramble& b, const LinkUpResult& r) {
  const Digraph& g = inst.graph;
  const int k = inst.k();
  const auto sz = static_cast<std::size_t>(k);
  if (r.source_paths.size() != sz || r.sink_paths.size() != sz || r.source_ends.size() != sz ||
      r.sink_ends.size() != sz || r.source_bags.size() != sz || r.sink_bags.size() != sz) {
    return "A1: expected " + std::to_string(k) + " paths on each side";
  }
  for (int i = 0; i < k; ++i) {
    const Path& ps = r.source_paths[i];
    const Path& pt = r.sink_paths[i];
    if (!is_simple_path(g, ps) || ps.front() != inst.sources[i] || ps.back() != r.source_ends[i]) {
      return "A1: P^s_" + std::to_string(i + 1) + " is not a path from s to s'";
    }
    if (!is_simple_path(g, pt) || pt.front() != r.sink_ends[i] || pt.back() != inst.sinks[i]) {
      return "A1: P^t_" + std::to_string(i + 1) + " is not a path from t' to t";
    }
  }
  IndexSet chosen = r.source_bags;
  chosen.insert(chosen.end(), r.sink_bags.begin(), r.sink_bags.end());
  for (int idx : chosen) {
    if (idx < 0 || idx >= b.size()) return std::string("A2: bag index out of range");
  }
  if (std::set<int>(chosen.begin(), chosen.end()).size() != chosen.size()) return std::string("A2: bags not distinct");
  for (int i = 0; i < k; ++i) {
    if (!set_contains(b.bags[r.source_bags[i]], r.source_ends[i]) ||
        !set_contains(b.bags[r.sink_bags[i]], r.sink_ends[i])) {
      return "A2: endpoint " + std::to_string(i + 1) + " is not in its bag";
    }
  }
  auto one_side = [&](const std::vector<Path>& paths, const std::vector<Vertex>& ends,
                      const char* tag) -> std::optional<std::string> {
    std::vector<std::vector<int>> on(static_cast<std::size_t>(g.vertex_count()));
    for (int i = 0; i < k; ++i) {
      for (Vertex v : paths[i]) on[v].push_back(i);
    }
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
      if (on[v].size() > 2) return std::string(tag) + ": vertex " + std::to_string(v) + " on three paths";
      if (on[v].size() == 2 && v != ends[on[v][0]] && v != ends[on[v][1]]) {
        return std::string(tag) + ": paths share vertex " + std::to_string(v) + " away from their ends";
      }
    }
    return std::nullopt;
  };
  if (auto p = one_side(r.source_paths, r.source_ends, "A3")) return p;
  if (auto p = one_side(r.sink_paths, r.sink_ends, "A4")) return p;
  auto bag_count = [&](Vertex v) {
    int c = 0;
    for (int idx : chosen) c += set_contains(b.bags[idx], v) ? 1 : 0;
    return c;
  };
  for (int i = 0; i < k; ++i) {
    for (const Path* p : {&r.source_paths[i], &r.sink_paths[i]}) {
      for (std::size_t j = 1; j + 1 < p->size(); ++j) {
        if (bag_count((*p)[j]) > 1) return "A5: internal vertex " + std::to_string((*p)[j]) + " in two chosen bags";
      }
    }
  }
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      if (i == j) continue;
      const VertexSet both = set_intersection(make_set(r.source_paths[i]), make_set(r.sink_paths[j]));
      if (both.empty()) continue;
      for (int l = 0; l < k; ++l) {
        if (l == i || l == j) continue;
        const VertexSet bags = set_union(b.bags[r.source_bags[l]], b.bags[r.sink_bags[l]]);
        if (sets_intersect(both, bags)) {
          return "A6: P^s_" + std::to_string(i + 1) + " and P^t_" + std::to_string(j + 1) + " meet inside bags of pair " +
                 std::to_string(l + 1);
        }
      }
    }
  }
  std::vector<Path> all = r.source_paths;
  all.insert(all.end(), r.sink_paths.begin(), r.sink_paths.end());
  const auto usage = vertex_usage(g.vertex_count(), all);
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (usage[v] > 2) return "A7: vertex " + std::to_string(v) + " on three paths";
  }
  return std::nullopt;
}

// ---- inside -----------------------------------------------------------------------

std::vector<Path> link_inside(const Digraph& g, const Bramble& b, const IndexSet& source_bags,
                              const IndexSet& sink_bags, const std::vector<Vertex>& s_primes,
                              const std::vector<Vertex>& t_primes) {
  const std::size_t k = s_primes.size();
  require(t_primes.size() == k && source_bags.size() == k && sink_bags.size() == k, ErrorKind::InvalidInput,
          "endpoint and bag lists must have equal length");
  IndexSet chosen = source_bags;
  chosen.insert(chosen.end(), sink_bags.begin(), sink_bags.end());
  for (int idx : chosen) require(idx >= 0 && idx < b.size(), ErrorKind::InvalidInput, "bag index out of range");
  require(std::set<int>(chosen.begin(), chosen.end()).size() == chosen.size(), ErrorKind::PreconditionViolation,
          "endpoints must lie in distinct bags");
  std::vector<Path> out;
  for (std::size_t i = 0; i < k; ++i) {
    const VertexSet& bs = b.bags[source_bags[i]];
    const VertexSet& bt = b.bags[sink_bags[i]];
    require(set_contains(bs, s_primes[i]) && set_contains(bt, t_primes[i]), ErrorKind::PreconditionViolation,
            "endpoint " + std::to_string(i + 1) + " is not in its bag");
    Vertex v = -1;
    Vertex w = -1;
    if (const VertexSet shared = set_intersection(bs, bt); !shared.empty()) {
      v = w = shared.front();
    } else {
      for (Vertex x : bs) {
        for (Vertex y : g.out(x)) {
          if (set_contains(bt, y)) {
            v = x;
            w = y;
            break;
          }
        }
        if (v >= 0) break;
      }
    }
    require(v >= 0, ErrorKind::PreconditionViolation, "bags of pair " + std::to_string(i + 1) + " do not touch");
    const auto first = shortest_path(g, s_primes[i], mask_of(g.vertex_count(), {v}), mask_of(g.vertex_count(), bs));
    const auto second = shortest_path(g, w, mask_of(g.vertex_count(), {t_primes[i]}), mask_of(g.vertex_count(), bt));
    require(first && second, ErrorKind::PreconditionViolation, "bag is not strongly connected");
    Path walk = *first;
    walk.insert(walk.end(), second->begin() + (v == w ? 1 : 0), second->end());
    out.push_back(walk_to_path(walk));
  }
  return out;
}

std::vector<Path> link_inside(const Digraph& g, const Bramble& b, const std::vector<Vertex>& s_primes,
                              const std::vector<Vertex>& t_primes) {
  require(s_primes.size() == t_primes.size(), ErrorKind::InvalidInput, "endpoint lists differ in length");
  std::vector<Vertex> ends = s_primes;
  ends.insert(ends.end(), t_primes.begin(), t_primes.end());
  // Kuhn's augmenting paths: endpoint -> bag.
  std::vector<int> bag_owner(static_cast<std::size_t>(b.size()), -1);
  std::function<bool(int, std::vector<bool>&)> augment = [&](int e, std::vector<bool>& seen) {
    for (int idx = 0; idx < b.size(); ++idx) {
      if (seen[idx] || !set_contains(b.bags[idx], ends[e])) continue;
      seen[idx] = true;
      if (bag_owner[idx] < 0 || augment(bag_owner[idx], seen)) {
        bag_owner[idx] = e;
        return true;
      }
    }
    return false;
  };
  for (std::size_t e = 0; e < ends.size(); ++e) {
    std::vector<bool> seen(static_cast<std::size_t>(b.size()), false);
    require(augment(static_cast<int>(e), seen), ErrorKind::PreconditionViolation,
            "endpoints cannot be placed in distinct bags");
  }
  IndexSet bag_of(ends.size(), -1);
  for (int idx = 0; idx < b.size(); ++idx) {
    if (bag_owner[idx] >= 0) bag_of[bag_owner[idx]] = idx;
  }
  const std::size_t k = s_primes.size();
  return link_inside(g, b, IndexSet(bag_of.begin(), bag_of.begin() + static_cast<long>(k)),
                     IndexSet(bag_of.begin() + static_cast<long>(k), bag_of.end()), s_primes, t_primes);
}

// ---- solver -----------------------------------------------------------------------

SolveReport solve_with_bramble(const LinkageInstance& inst, const Bramble& b, const LinkerConfig& cfg) {
  const Digraph& g = inst.graph;
  const auto check = validate_bramble(g, b);
  require(check.ok, ErrorKind::PreconditionViolation, "invalid bramble: " + check.message);
  require(depth(b) <= 2, ErrorKind::PreconditionViolation, "bramble depth exceeds two");
  const int k = inst.k();
  if (!cfg.relaxed) {
    require(static_cast<std::uint64_t>(b.size()) >= required_bramble_size(k), ErrorKind::SizeLimit,
            "bramble of size " + std::to_string(b.size()) + " is below the required " +
                std::to_string(required_bramble_size(k)));
    require(strong_connectivity(g) >= connectivity_requirement(k), ErrorKind::SizeLimit,
            "graph is not (36k^3 + 2k)-strongly connected");
  }
  SolveReport report;
  const VertexSet terminals = set_union(make_set(inst.sources), make_set(inst.sinks));
  Bramble kept;
  for (int idx = 0; idx < b.size(); ++idx) {
    if (!sets_intersect(b.bags[idx], terminals)) {
      report.kept_bags.push_back(idx);
      kept.bags.push_back(b.bags[idx]);
    }
  }

  std::vector<int> routed;
  std::vector<Vertex> s_sub;
  std::vector<Vertex> t_sub;
  for (int i = 0; i < k; ++i) {
    if (inst.sources[i] == inst.sinks[i]) continue;
    routed.push_back(i);
    s_sub.push_back(inst.sources[i]);
    t_sub.push_back(inst.sinks[i]);
  }
  PathSystem sol;
  sol.congestion_bound = 2;
  sol.paths.resize(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) sol.paths[i] = {inst.sources[i]};

  if (!routed.empty()) {
    const LinkageInstance sub(g, s_sub, t_sub);
    report.link = link_up(sub, kept, cfg);
    if (report.link->failure) {
      report.failure = report.link->failure;
      return report;
    }
    const LinkUpResult& link = *report.link;
    report.inside = link_inside(g, kept, link.source_bags, link.sink_bags, link.source_ends, link.sink_ends);
    for (std::size_t j = 0; j < routed.size(); ++j) {
      Path walk = link.source_paths[j];
      walk.insert(walk.end(), report.inside[j].begin() + 1, report.inside[j].end());
      walk.insert(walk.end(), link.sink_paths[j].begin() + 1, link.sink_paths[j].end());
      sol.paths[routed[j]] = walk_to_path(walk);
    }
  }
  const auto verdict = verify_solution(inst, sol, 2);
  if (!verdict) {
    if (!cfg.relaxed) fail(ErrorKind::InvariantViolation, "assembled solution fails verification: " + verdict.message);
    report.failure = StageFailure{"verify", verdict.message};
    return report;
  }
  report.solution = std::move(sol);
  return report;
}

}  // namespace ddpp
