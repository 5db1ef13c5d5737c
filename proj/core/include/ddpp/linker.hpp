#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ddpp/bramble.hpp"
#include "ddpp/contracted.hpp"
#include "ddpp/digraph.hpp"

namespace ddpp {

/// A stage that could not finish, named so callers can report it.
struct StageFailure {
  std::string stage;
  std::string reason;
};

struct LinkerConfig {
  /// Skip the connectivity and bramble-size hypotheses. Outputs are still
  /// certified; unmet claims come back as StageFailure values.
  bool relaxed = false;
  std::optional<int> alpha_s;  // strict: 36k^3 + 2k, relaxed default 2k
  std::optional<int> alpha_t;  // 3k
  std::optional<int> max_iterations;  // cut-sequence cap, default 2k * alpha
};

/// 36k^3 + 2k.
int connectivity_requirement(int k);
/// Bramble size the solver needs in strict mode: room for the terminal
/// bags (4k), both one-sided prunings (4k * alpha_s^2 bounds both) and the
/// 188k^3 + 1 left for linking. Throws SizeLimit on overflow.
std::uint64_t required_bramble_size(int k);

/// Indices i < j with subsets[i] ∪ subsets[j] != universe. Needs exactly
/// |universe| + 1 proper subsets of a non-empty universe.
std::pair<int, int> subsets_pair(const VertexSet& universe, const std::vector<VertexSet>& subsets);

// ---- cut sequence -----------------------------------------------------------------

/// One iteration i of the cut sequence.
struct CutRecord {
  Digraph graph;       // G_{i-1}
  VertexSet sources;   // S in G_{i-1}
  VertexSet clique;    // K_{i-1} in G_{i-1}
  Separation prime;    // (A'_i, B'_i), ids of G_{i-1}
  VertexSet cut_labels;        // A'_i ∩ B'_i as view labels
  VertexSet removed_nodes;     // C_i as labels
  IndexSet removed_bags;       // bags of C_i
  VertexSet removed_vertices;  // union of those bags
  IndexSet surviving;          // B_i
  Separation next;             // (A_i, B_i), ids of G_i
  bool next_is_separation = false;
  bool next_avoids_clique = false;  // A_i ∩ B_i ∩ K_i = ∅

  int order() const { return prime.order(); }
};

enum class CutStop {
  HighOrder,        // a separation of order >= alpha appeared
  Inseparable,      // nothing properly separates S from the clique
  CliqueExhausted,  // every bag was removed
  Stalled,          // a low-order cut removed no bag
  CapReached,
};

const char* to_string(CutStop stop);

struct CutSequenceState {
  std::vector<CutRecord> records;  // low-order iterations only
  CutStop stop = CutStop::CapReached;
  int stop_order = -1;  // order of the stopping separation for HighOrder
  IndexSet result;      // B_{m-1}, the bags alive when the sequence stopped

  bool succeeded() const { return stop == CutStop::HighOrder || stop == CutStop::Inseparable; }
};

/// Runs the cut sequence in G(B_i; B) where B = `reference`. The source set
/// must avoid every reference bag.
CutSequenceState cut_sequence(const Digraph& g, const Bramble& b, const IndexSet& reference,
                              const VertexSet& s_set, int alpha, int max_iterations);

/// k+1 iteration numbers (1-based, descending) such that for i < j in the
/// set no bag removed at i meets the cut of j. Uses every record of the
/// state. Throws InvariantViolation when the records run out.
IndexSet find_index_set(const CutSequenceState& state, int k);

/// Whether a bag removed at record i meets the cut of record j (1-based).
bool cut_conflicts(const CutSequenceState& state, int j, int i);

// ---- one side ---------------------------------------------------------------------

struct OneSideResult {
  CutSequenceState trace;
  IndexSet bags;
  bool certified = false;
  std::optional<StageFailure> failure;
};

/// Sub-bramble whose clique S is alpha-connected to in G(B_S; reference),
/// certified with is_alpha_connected. Strict mode checks beta >= alpha >= k,
/// size > 4k alpha^2 (SizeLimit) and beta-strong connectivity.
OneSideResult link_one_side(const Digraph& g, const Bramble& b, const IndexSet& reference,
                            const VertexSet& s_set, int k, int alpha, int beta, const LinkerConfig& cfg);

struct ContractedLinks {
  OneSideResult source_side;
  OneSideResult sink_side;  // computed on the reversed graph
  IndexSet bags_s;
  IndexSet bags_t;
  std::optional<StageFailure> failure;
};

/// Source side at alpha_s over all bags, then the sink side at alpha_t
/// inside bags_s on the reversed graph.
ContractedLinks link_contracted(const LinkageInstance& inst, const Bramble& b, const LinkerConfig& cfg);

// ---- minimal linkages -------------------------------------------------------------

enum class LinkDirection { ToClique, FromClique };

/// Truncates at the first (last) clique node and reroutes into unused bags
/// met along the way until nothing changes. Paths are view ids.
std::vector<Path> make_b_minimal(const ContractedView& view, std::vector<Path> paths, LinkDirection dir);
bool is_b_minimal(const ContractedView& view, const std::vector<Path>& paths, LinkDirection dir);

// ---- link up ----------------------------------------------------------------------

struct LinkUpResult {
  ContractedLinks sides;
  std::vector<Path> source_paths;  // P^s_i in g, s_i -> s'_i
  std::vector<Path> sink_paths;    // P^t_i in g, t'_i -> t_i
  std::vector<Vertex> source_ends;
  std::vector<Vertex> sink_ends;
  IndexSet source_bags;  // bramble index of B^s_i
  IndexSet sink_bags;
  std::optional<StageFailure> failure;
};

/// Paths from the sources into distinct bags and from distinct bags to the
/// sinks. Terminals must avoid all bags. Strict mode asks for connectivity
/// 36k^3 + 2k and more than 188k^3 bags.
LinkUpResult link_up(const LinkageInstance& inst, const Bramble& b, const LinkerConfig& cfg);

/// Empty when A1..A7 hold, otherwise the first violated assertion.
std::optional<std::string> check_link_up(const LinkageInstance& inst, const Bramble& b, const LinkUpResult& r);

// ---- inside the bramble -----------------------------------------------------------

/// P_i from s'_i to t'_i inside B^s_i ∪ B^t_i. The 2k bags must be distinct
/// and contain their endpoints.
std::vector<Path> link_inside(const Digraph& g, const Bramble& b, const IndexSet& source_bags,
                              const IndexSet& sink_bags, const std::vector<Vertex>& s_primes,
                              const std::vector<Vertex>& t_primes);

/// Same, choosing distinct bags for the endpoints by bipartite matching.
std::vector<Path> link_inside(const Digraph& g, const Bramble& b, const std::vector<Vertex>& s_primes,
                              const std::vector<Vertex>& t_primes);

// ---- solver -----------------------------------------------------------------------

struct SolveReport {
  std::optional<PathSystem> solution;  // verified at congestion 2
  std::optional<StageFailure> failure;
  IndexSet kept_bags;  // bags avoiding every terminal
  // Bag indices below refer to the kept bags, in kept_bags order, and the
  // link covers only pairs with s_i != t_i.
  std::optional<LinkUpResult> link;
  std::vector<Path> inside;

  bool solved() const { return solution.has_value(); }
};

/// Requires a valid bramble of depth <= 2. Strict mode checks connectivity
/// 36k^3 + 2k and size required_bramble_size(k) (SizeLimit); a strict-mode
/// stage failure is an InvariantViolation.
SolveReport solve_with_bramble(const LinkageInstance& inst, const Bramble& b, const LinkerConfig& cfg);

}  // namespace ddpp
