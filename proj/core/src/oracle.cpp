#include "ddpp/oracle.hpp"

#include <algorithm>
#include <deque>
#include <functional>

#include "ddpp/error.hpp"

namespace ddpp {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Feasible: return "feasible";
    case Verdict::Infeasible: return "infeasible";
    case Verdict::BudgetExceeded: return "budget-exceeded";
  }
  return "unknown";
}

namespace {

class LinkageSearch {
 public:
  LinkageSearch(const LinkageInstance& inst, int congestion, std::uint64_t budget)
      : inst_(inst), g_(inst.graph), congestion_(congestion), budget_(budget) {
    const auto n = static_cast<std::size_t>(g_.vertex_count());
    usage_.assign(n, 0);
    reserved_.assign(n, 0);
    on_path_.assign(n, false);
    for (int i = 0; i < inst.k(); ++i) {
      ++reserved_[inst.sources[i]];
      if (inst.sinks[i] != inst.sources[i]) ++reserved_[inst.sinks[i]];
    }
    paths_.resize(static_cast<std::size_t>(inst.k()));
  }

  OracleResult run() {
    OracleResult result;
    const bool found = route(0);
    result.nodes = nodes_;
    if (found) {
      result.verdict = Verdict::Feasible;
      result.solution.paths = paths_;
      result.solution.congestion_bound = congestion_;
    } else {
      result.verdict = exceeded_ ? Verdict::BudgetExceeded : Verdict::Infeasible;
    }
    return result;
  }

 private:
  bool usable(Vertex v) const {
    return !on_path_[v] && usage_[v] + reserved_[v] + 1 <= congestion_;
  }

  bool tick() {
    if (++nodes_ > budget_) exceeded_ = true;
    return !exceeded_;
  }

  // Can `target` still be reached from `from` through usable vertices?
  bool reachable(Vertex from, Vertex target) const {
    std::vector<bool> seen(on_path_.size(), false);
    std::deque<Vertex> queue{from};
    seen[from] = true;
    while (!queue.empty()) {
      const Vertex v = queue.front();
      queue.pop_front();
      for (Vertex w : g_.out(v)) {
        if (w == target) return true;
        if (!seen[w] && usable(w)) {
          seen[w] = true;
          queue.push_back(w);
        }
      }
    }
    return false;
  }

  bool route(int i) {
    if (i == inst_.k()) return true;
    if (!tick()) return false;
    const Vertex s = inst_.sources[i];
    const Vertex t = inst_.sinks[i];
    --reserved_[s];
    if (t != s) --reserved_[t];
    bool found = false;
    if (usable(s)) {
      Path& path = paths_[static_cast<std::size_t>(i)];
      path.assign(1, s);
      ++usage_[s];
      on_path_[s] = true;
      if (s == t) {
        on_path_[s] = false;
        found = route(i + 1);
        if (!found) --usage_[s];
      } else {
        found = extend(i, t);
        if (!found) {
          on_path_[s] = false;
          --usage_[s];
        }
      }
    }
    if (!found) {
      ++reserved_[s];
      if (t != s) ++reserved_[t];
    }
    return found;
  }

  bool extend(int i, Vertex t) {
    if (!tick()) return false;
    Path& path = paths_[static_cast<std::size_t>(i)];
    const Vertex v = path.back();
    if (!usable(t) || !reachable(v, t)) return false;
    for (Vertex w : g_.out(v)) {
      if (!usable(w)) continue;
      path.push_back(w);
      ++usage_[w];
      on_path_[w] = true;
      bool found;
      if (w == t) {
        for (Vertex u : path) on_path_[u] = false;
        found = route(i + 1);
        if (!found) {
          for (Vertex u : path) on_path_[u] = true;
        }
      } else {
        found = extend(i, t);
      }
      if (found) return true;
      on_path_[w] = false;
      --usage_[w];
      path.pop_back();
      if (exceeded_) return false;
    }
    return false;
  }

  const LinkageInstance& inst_;
  const Digraph& g_;
  int congestion_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  bool exceeded_ = false;
  std::vector<int> usage_;
  std::vector<int> reserved_;
  std::vector<bool> on_path_;
  std::vector<Path> paths_;
};

}  // namespace

OracleResult brute_force_linkage(const LinkageInstance& inst, int congestion, std::uint64_t budget) {
  require(congestion == 1 || congestion == 2, ErrorKind::InvalidInput, "congestion must be 1 or 2");
  LinkageSearch search(inst, congestion, budget);
  OracleResult result = search.run();
  if (result.verdict == Verdict::Feasible) {
    const auto check = verify_solution(inst, result.solution, congestion);
    if (!check) fail(ErrorKind::InvariantViolation, "oracle produced an invalid solution: " + check.message);
  }
  return result;
}

// ---- bramble order --------------------------------------------------------------

namespace {

bool cover_within(const Bramble& b, std::vector<bool>& chosen, int budget) {
  const VertexSet* unhit = nullptr;
  for (const auto& bag : b.bags) {
    const bool hit = std::any_of(bag.begin(), bag.end(), [&](Vertex v) { return chosen[v]; });
    if (!hit) {
      unhit = &bag;
      break;
    }
  }
  if (unhit == nullptr) return true;
  if (budget == 0) return false;
  for (Vertex v : *unhit) {
    chosen[v] = true;
    const bool ok = cover_within(b, chosen, budget - 1);
    chosen[v] = false;
    if (ok) return true;
  }
  return false;
}

}  // namespace

int bramble_order(const Digraph& g, const Bramble& b, int cap) {
  for (const auto& bag : b.bags) {
    for (Vertex v : bag) require(g.valid(v), ErrorKind::InvalidInput, "bag vertex out of range");
  }
  std::vector<bool> chosen(static_cast<std::size_t>(g.vertex_count()), false);
  for (int size = 0; size <= cap; ++size) {
    if (cover_within(b, chosen, size)) return size;
  }
  fail(ErrorKind::SizeLimit, "bramble order exceeds cap " + std::to_string(cap));
}

// ---- separation enumeration ---------------------------------------------------------

namespace {

enum Side : char { kA = 0, kB = 1, kBoth = 2 };

// Enumerates every separation consistent with `allowed` sides per vertex and
// reports it to `visit` (side vector, order). Branches that already exceed
// `bound()` are cut.
void enumerate_separations(const Digraph& g, const std::vector<std::vector<Side>>& allowed,
                           const std::function<int()>& bound,
                           const std::function<void(const std::vector<Side>&, int)>& visit) {
  const int n = g.vertex_count();
  std::vector<Side> side(static_cast<std::size_t>(n), kBoth);
  std::function<void(int, int)> go = [&](int v, int order) {
    if (order > bound()) return;
    if (v == n) {
      visit(side, order);
      return;
    }
    for (Side s : allowed[v]) {
      bool ok = true;
      if (s == kA) {
        for (Vertex w : g.out(v)) ok = ok && !(w < v && side[w] == kB);
      } else if (s == kB) {
        for (Vertex w : g.in(v)) ok = ok && !(w < v && side[w] == kA);
      }
      if (!ok) continue;
      side[v] = s;
      go(v + 1, order + (s == kBoth ? 1 : 0));
    }
    side[v] = kBoth;
  };
  go(0, 0);
}

Separation to_separation(const std::vector<Side>& side) {
  Separation sep;
  for (Vertex v = 0; v < static_cast<Vertex>(side.size()); ++v) {
    if (side[v] != kB) sep.side_a.push_back(v);
    if (side[v] != kA) sep.side_b.push_back(v);
  }
  return sep;
}

void check_cap(const Digraph& g, int cap) {
  require(g.vertex_count() <= cap, ErrorKind::SizeLimit,
          "enumeration limited to " + std::to_string(cap) + " vertices");
}

}  // namespace

SeparationWitness enumerate_min_separation(const Digraph& g, int cap) {
  check_cap(g, cap);
  require(g.vertex_count() >= 2, ErrorKind::InvalidInput, "need at least two vertices");
  const int n = g.vertex_count();
  const std::vector<std::vector<Side>> allowed(static_cast<std::size_t>(n), {kA, kB, kBoth});
  SeparationWitness witness;
  int best = n;  // orders are < n for nontrivial separations
  enumerate_separations(
      g, allowed, [&] { return best - 1; },
      [&](const std::vector<Side>& side, int order) {
        const bool a_only = std::find(side.begin(), side.end(), kA) != side.end();
        const bool b_only = std::find(side.begin(), side.end(), kB) != side.end();
        if (!a_only || !b_only) return;
        if (order < best) {
          best = order;
          witness.separation = to_separation(side);
        }
      });
  witness.connectivity = std::min(n - 1, best);
  return witness;
}

Separation enumerate_min_st_separation(const Digraph& g, const VertexSet& s_set,
                                       const VertexSet& t_set, int cap) {
  check_cap(g, cap);
  const int n = g.vertex_count();
  std::vector<std::vector<Side>> allowed(static_cast<std::size_t>(n), {kA, kB, kBoth});
  for (Vertex v = 0; v < n; ++v) {
    const bool in_s = set_contains(s_set, v);
    const bool in_t = set_contains(t_set, v);
    if (in_s && in_t) allowed[v] = {kBoth};
    else if (in_s) allowed[v] = {kA, kBoth};
    else if (in_t) allowed[v] = {kB, kBoth};
  }
  int best = n + 1;
  Separation result;
  enumerate_separations(
      g, allowed, [&] { return best - 1; },
      [&](const std::vector<Side>& side, int order) {
        if (order < best) {
          best = order;
          result = to_separation(side);
        }
      });
  return result;
}

std::optional<Separation> enumerate_min_proper_separation(const Digraph& g, const VertexSet& s_set,
                                                          const VertexSet& k_set, int cap) {
  check_cap(g, cap);
  const int n = g.vertex_count();
  std::vector<std::vector<Side>> allowed(static_cast<std::size_t>(n), {kA, kB, kBoth});
  for (Vertex v = 0; v < n; ++v) {
    const bool in_s = set_contains(s_set, v);
    const bool in_k = set_contains(k_set, v);
    if (in_s && in_k) allowed[v] = {kBoth};
    else if (in_s) allowed[v] = {kA, kBoth};
    else if (in_k) allowed[v] = {kB, kBoth};
  }
  int best = n + 1;
  std::optional<Separation> result;
  enumerate_separations(
      g, allowed, [&] { return best - 1; },
      [&](const std::vector<Side>& side, int order) {
        bool s_strict = false;
        bool k_strict = false;
        for (Vertex v : s_set) s_strict = s_strict || side[v] == kA;
        for (Vertex v : k_set) k_strict = k_strict || side[v] == kB;
        if (s_strict && k_strict && order < best) {
          best = order;
          result = to_separation(side);
        }
      });
  return result;
}

}  // namespace ddpp
