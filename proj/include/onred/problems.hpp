// The seven problems: payload checks, feasibility, scores and structural bounds.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "onred/types.hpp"

namespace onred {

/// Simple undirected graph on vertices 0..n-1.
class Graph {
 public:
  explicit Graph(int n = 0) : adj_(static_cast<std::size_t>(n)) {}

  int size() const { return static_cast<int>(adj_.size()); }
  int add_vertex();
  /// Throws UsageError on loops and repeated edges.
  void add_edge(int u, int v);
  bool adjacent(int u, int v) const;
  int degree(int v) const { return static_cast<int>(adj_[static_cast<std::size_t>(v)].size()); }
  const std::vector<int>& neighbours(int v) const { return adj_[static_cast<std::size_t>(v)]; }
  int max_degree() const;
  int min_degree() const;  // 0 for the empty graph
  std::size_t edge_count() const;
  Graph complement() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<std::vector<int>> adj_;  // sorted
};

/// Union of the arrival edge sets. Vertex-arrival kinds only.
Graph build_graph(const Instance& instance);

/// Pairwise conflict graph of the requests: an edge joins two requests that can
/// never be accepted together (for CLI: two non-adjacent vertices). MCS has no
/// pairwise rule and is rejected; ASG has no conflicts at all.
Graph conflict_graph(const Instance& instance);

bool k_colorable(const Graph& g, const std::vector<int>& vertices, int k);

/// Structural well-formedness of a single payload at position `index`
/// (earlier-only edges, lo < hi, u != v, nonempty unique sets). Empty string when fine.
std::string payload_problem(ProblemKind kind, const RequestPayload& payload, std::size_t index);

/// True iff the requests in `selection` (ascending indices) may be accepted together.
bool selection_feasible(const Instance& instance, const std::vector<int>& selection);

/// Cost for ASG, profit (or Infeasible) for the maximization kinds.
Score score(const Instance& instance, const DecisionSeq& decisions);
bool feasible(const Instance& instance, const DecisionSeq& decisions);

/// The kind's t-bound over the fully revealed instance. Unbounded t always passes.
bool structural_bounds_ok(const Instance& instance);

struct ValidityReport {
  bool structural_ok = true;
  bool optimality_ok = true;
  std::vector<std::string> violations;
  bool ok() const { return structural_ok && optimality_ok; }
};

ValidityReport validate_instance(const Instance& instance);

/// Incremental view of one algorithm's accepted set, used by the guarded
/// algorithms: answers whether accepting the next request keeps the selection feasible.
class FeasibilityTracker {
 public:
  FeasibilityTracker(ProblemKind kind, int colors);

  bool can_accept(const RequestPayload& payload) const;
  /// Appends the request with the decision taken.
  void record(const RequestPayload& payload, Bit decision);
  std::size_t seen() const { return payloads_.size(); }

 private:
  bool conflicts(const RequestPayload& a, const RequestPayload& b, int b_index) const;

  ProblemKind kind_;
  int colors_;
  std::vector<RequestPayload> payloads_;
  std::vector<int> accepted_;
  Graph graph_;  // vertex-arrival kinds
};

}  // namespace onred
