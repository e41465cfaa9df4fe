#include "onred/problems.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "onred/oracles.hpp"

namespace onred {

int Graph::add_vertex() {
  adj_.emplace_back();
  return size() - 1;
}

void Graph::add_edge(int u, int v) {
  if (u == v) throw UsageError("self-loop on vertex " + std::to_string(u + 1));
  if (u < 0 || v < 0 || u >= size() || v >= size()) throw UsageError("edge endpoint out of range");
  if (adjacent(u, v)) {
    throw UsageError("repeated edge " + std::to_string(u + 1) + "-" + std::to_string(v + 1));
  }
  auto& a = adj_[static_cast<std::size_t>(u)];
  auto& b = adj_[static_cast<std::size_t>(v)];
  a.insert(std::lower_bound(a.begin(), a.end(), v), v);
  b.insert(std::lower_bound(b.begin(), b.end(), u), u);
}

bool Graph::adjacent(int u, int v) const {
  const auto& a = adj_[static_cast<std::size_t>(u)];
  return std::binary_search(a.begin(), a.end(), v);
}

int Graph::max_degree() const {
  int d = 0;
  for (int v = 0; v < size(); ++v) d = std::max(d, degree(v));
  return d;
}

int Graph::min_degree() const {
  if (size() == 0) return 0;
  int d = degree(0);
  for (int v = 1; v < size(); ++v) d = std::min(d, degree(v));
  return d;
}

std::size_t Graph::edge_count() const {
  std::size_t twice = 0;
  for (const auto& a : adj_) twice += a.size();
  return twice / 2;
}

Graph Graph::complement() const {
  Graph g(size());
  for (int u = 0; u < size(); ++u) {
    for (int v = u + 1; v < size(); ++v) {
      if (!adjacent(u, v)) g.add_edge(u, v);
    }
  }
  return g;
}

Graph build_graph(const Instance& instance) {
  if (!is_vertex_arrival(instance.problem)) {
    throw UsageError("build_graph needs a vertex-arrival problem, got " +
                     std::string(name_of(instance.problem)));
  }
  Graph g(static_cast<int>(instance.size()));
  for (std::size_t i = 0; i < instance.size(); ++i) {
    const auto* va = std::get_if<VertexArrival>(&instance.requests[i].payload);
    if (va == nullptr) throw UsageError("request " + std::to_string(i + 1) + " is not a vertex");
    for (int j : va->neighbours) {
      if (j < 0 || static_cast<std::size_t>(j) >= i) {
        throw UsageError("request " + std::to_string(i + 1) + " has an edge to a later vertex");
      }
      g.add_edge(j, static_cast<int>(i));
    }
  }
  return g;
}

namespace {

bool sets_intersect(const SetArrival& a, const SetArrival& b) {
  auto i = a.elements.begin();
  auto j = b.elements.begin();
  while (i != a.elements.end() && j != b.elements.end()) {
    if (*i == *j) return true;
    if (*i < *j) ++i; else ++j;
  }
  return false;
}

bool intervals_overlap(const IntervalArrival& a, const IntervalArrival& b) {
  return std::max(a.lo, b.lo) < std::min(a.hi, b.hi);
}

bool edges_touch(const EdgeArrival& a, const EdgeArrival& b) {
  return a.u == b.u || a.u == b.v || a.v == b.u || a.v == b.v;
}

bool token_ok(const std::string& s) {
  if (s.empty()) return false;
  for (unsigned char c : s) {
    if (c <= ' ' || c >= 127 || c == ',' || c == '#' || c == '=') return false;
  }
  return true;
}

// Pairwise conflict for the payload-local kinds.
bool payload_conflict(const RequestPayload& a, const RequestPayload& b) {
  if (auto* sa = std::get_if<SetArrival>(&a)) return sets_intersect(*sa, std::get<SetArrival>(b));
  if (auto* ia = std::get_if<IntervalArrival>(&a)) {
    return intervals_overlap(*ia, std::get<IntervalArrival>(b));
  }
  if (auto* ea = std::get_if<EdgeArrival>(&a)) return edges_touch(*ea, std::get<EdgeArrival>(b));
  return false;
}

bool colour_dfs(const Graph& g, const std::vector<int>& order, std::size_t pos, int k,
                std::vector<int>& colour) {
  if (pos == order.size()) return true;
  int v = order[pos];
  int used_max = 0;
  for (std::size_t p = 0; p < pos; ++p) used_max = std::max(used_max, colour[order[p]]);
  // Symmetry: a fresh colour is only ever the next unused one.
  for (int c = 1; c <= std::min(k, used_max + 1); ++c) {
    bool clash = false;
    for (int u : g.neighbours(v)) {
      if (colour[u] == c) { clash = true; break; }
    }
    if (clash) continue;
    colour[v] = c;
    if (colour_dfs(g, order, pos + 1, k, colour)) return true;
    colour[v] = 0;
  }
  return false;
}

}  // namespace

Graph conflict_graph(const Instance& instance) {
  const auto n = static_cast<int>(instance.size());
  switch (instance.problem) {
    case ProblemKind::asg: return Graph(n);
    case ProblemKind::bdis: return build_graph(instance);
    case ProblemKind::cli: return build_graph(instance).complement();
    case ProblemKind::mcs: throw UsageError("mcs feasibility is not pairwise");
    default: break;
  }
  Graph g(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (payload_conflict(instance.requests[static_cast<std::size_t>(i)].payload,
                           instance.requests[static_cast<std::size_t>(j)].payload)) {
        g.add_edge(i, j);
      }
    }
  }
  return g;
}

bool k_colorable(const Graph& g, const std::vector<int>& vertices, int k) {
  if (vertices.empty()) return true;
  if (k <= 0) return false;
  // Highest degree first keeps the search shallow on desk-scale inputs.
  std::vector<int> order = vertices;
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return g.degree(a) > g.degree(b); });
  std::vector<int> colour(static_cast<std::size_t>(g.size()), 0);
  // Vertices outside the subset must never block a colour.
  std::vector<char> in(static_cast<std::size_t>(g.size()), 0);
  for (int v : vertices) in[static_cast<std::size_t>(v)] = 1;
  Graph induced(g.size());
  for (int v : vertices) {
    for (int u : g.neighbours(v)) {
      if (u < v && in[static_cast<std::size_t>(u)]) induced.add_edge(u, v);
    }
  }
  return colour_dfs(induced, order, 0, k, colour);
}

std::string payload_problem(ProblemKind kind, const RequestPayload& payload, std::size_t index) {
  if (!payload_matches(kind, payload)) {
    return "payload does not match problem " + std::string(name_of(kind));
  }
  if (auto* va = std::get_if<VertexArrival>(&payload)) {
    for (std::size_t k = 0; k < va->neighbours.size(); ++k) {
      int j = va->neighbours[k];
      if (j < 0 || static_cast<std::size_t>(j) >= index) return "edge to a vertex that is not earlier";
      if (k > 0 && va->neighbours[k - 1] >= j) return "edge list not strictly ascending";
    }
  } else if (auto* sa = std::get_if<SetArrival>(&payload)) {
    if (sa->elements.empty()) return "empty set";
    for (std::size_t k = 0; k < sa->elements.size(); ++k) {
      if (!token_ok(sa->elements[k])) return "bad element token";
      if (k > 0 && sa->elements[k - 1] >= sa->elements[k]) return "set elements not strictly ascending";
    }
  } else if (auto* ia = std::get_if<IntervalArrival>(&payload)) {
    if (!(ia->lo < ia->hi)) return "interval with lo >= hi";
  } else if (auto* ea = std::get_if<EdgeArrival>(&payload)) {
    if (!token_ok(ea->u) || !token_ok(ea->v)) return "bad vertex label";
    if (ea->u == ea->v) return "edge is a loop";
  }
  return {};
}

bool selection_feasible(const Instance& instance, const std::vector<int>& selection) {
  if (instance.problem == ProblemKind::asg) return true;
  if (instance.problem == ProblemKind::mcs) {
    return k_colorable(build_graph(instance), selection, instance.colors);
  }
  if (is_vertex_arrival(instance.problem)) {
    Graph g = build_graph(instance);
    bool want_edge = instance.problem == ProblemKind::cli;
    for (std::size_t a = 0; a < selection.size(); ++a) {
      for (std::size_t b = a + 1; b < selection.size(); ++b) {
        if (g.adjacent(selection[a], selection[b]) != want_edge) return false;
      }
    }
    return true;
  }
  for (std::size_t a = 0; a < selection.size(); ++a) {
    for (std::size_t b = a + 1; b < selection.size(); ++b) {
      if (payload_conflict(instance.requests[static_cast<std::size_t>(selection[a])].payload,
                           instance.requests[static_cast<std::size_t>(selection[b])].payload)) {
        return false;
      }
    }
  }
  return true;
}

Score score(const Instance& instance, const DecisionSeq& decisions) {
  if (decisions.size() != instance.size()) {
    throw UsageError("decision sequence has length " + std::to_string(decisions.size()) +
                     " but the instance has " + std::to_string(instance.size()) + " requests");
  }
  if (instance.problem == ProblemKind::asg) {
    const std::int64_t t = instance.t.value();
    std::int64_t cost = 0;
    for (std::size_t i = 0; i < decisions.size(); ++i) {
      int y = as_int(decisions[i]);
      int x = as_int(instance.requests[i].truth);
      cost += y + t * x * (1 - y);
    }
    return Score::feasible(cost);
  }
  std::vector<int> selection;
  for (std::size_t i = 0; i < decisions.size(); ++i) {
    if (decisions[i] == Bit::zero) selection.push_back(static_cast<int>(i));
  }
  if (!selection_feasible(instance, selection)) return Score::infeasible();
  return Score::feasible(static_cast<std::int64_t>(selection.size()));
}

bool feasible(const Instance& instance, const DecisionSeq& decisions) {
  return score(instance, decisions).is_feasible();
}

bool structural_bounds_ok(const Instance& instance) {
  const Bound& t = instance.t;
  switch (instance.problem) {
    case ProblemKind::asg: return true;
    case ProblemKind::bdis:
    case ProblemKind::mcs: return t.admits(build_graph(instance).max_degree());
    case ProblemKind::cli: {
      if (!t.finite()) return true;
      Graph g = build_graph(instance);
      return static_cast<std::int64_t>(g.size()) - t.value() <= g.min_degree();
    }
    case ProblemKind::sp:
    case ProblemKind::sch: return t.admits(conflict_graph(instance).max_degree());
    case ProblemKind::mm: {
      std::map<std::string, int> deg;
      for (const auto& r : instance.requests) {
        const auto& e = std::get<EdgeArrival>(r.payload);
        ++deg[e.u];
        ++deg[e.v];
      }
      for (const auto& [label, d] : deg) {
        if (!t.admits(d)) return false;
      }
      return true;
    }
  }
  return false;
}

ValidityReport validate_instance(const Instance& instance) {
  ValidityReport report;
  auto structural = [&](std::string msg) {
    report.structural_ok = false;
    report.violations.push_back(std::move(msg));
  };
  if (instance.problem == ProblemKind::asg && !instance.t.finite()) {
    structural("asg needs a finite t");
  }
  if (instance.problem == ProblemKind::mcs && instance.colors < 1) {
    structural("mcs needs k >= 1");
  }
  for (std::size_t i = 0; i < instance.size(); ++i) {
    std::string msg = payload_problem(instance.problem, instance.requests[i].payload, i);
    if (!msg.empty()) structural("request " + std::to_string(i + 1) + ": " + msg);
  }
  if (instance.problem == ProblemKind::mm) {
    std::set<std::pair<std::string, std::string>> seen;
    for (std::size_t i = 0; i < instance.size(); ++i) {
      const auto* e = std::get_if<EdgeArrival>(&instance.requests[i].payload);
      if (e == nullptr) continue;
      auto key = std::minmax(e->u, e->v);
      if (!seen.insert({key.first, key.second}).second) {
        structural("request " + std::to_string(i + 1) + ": repeated edge");
      }
    }
  }
  if (!report.structural_ok) {
    report.optimality_ok = false;
    report.violations.push_back("optimality not checked on a malformed instance");
    return report;
  }
  if (!structural_bounds_ok(instance)) {
    structural("t-bound violated (t=" + instance.t.to_string() + ")");
  }
  if (instance.problem == ProblemKind::asg) return report;

  std::vector<int> encoded;
  for (std::size_t i = 0; i < instance.size(); ++i) {
    if (instance.requests[i].truth == Bit::zero) encoded.push_back(static_cast<int>(i));
  }
  if (!selection_feasible(instance, encoded)) {
    report.optimality_ok = false;
    report.violations.push_back("true bits encode an infeasible selection");
    return report;
  }
  OptWitness opt = brute_force_opt(instance);
  if (static_cast<std::int64_t>(encoded.size()) != opt.value) {
    report.optimality_ok = false;
    std::ostringstream msg;
    msg << "true bits select " << encoded.size() << " but the optimum is " << opt.value;
    report.violations.push_back(msg.str());
  }
  return report;
}

// ---------------------------------------------------------------------------

FeasibilityTracker::FeasibilityTracker(ProblemKind kind, int colors) : kind_(kind), colors_(colors) {}

bool FeasibilityTracker::conflicts(const RequestPayload& a, const RequestPayload& b, int b_index) const {
  if (auto* va = std::get_if<VertexArrival>(&a)) {
    bool edge = std::binary_search(va->neighbours.begin(), va->neighbours.end(), b_index);
    return kind_ == ProblemKind::cli ? !edge : edge;
  }
  return payload_conflict(a, b);
}

bool FeasibilityTracker::can_accept(const RequestPayload& payload) const {
  if (kind_ == ProblemKind::asg) return true;
  if (kind_ == ProblemKind::mcs) {
    Graph g = graph_;
    int v = g.add_vertex();
    for (int j : std::get<VertexArrival>(payload).neighbours) g.add_edge(j, v);
    std::vector<int> chosen = accepted_;
    chosen.push_back(v);
    return k_colorable(g, chosen, colors_);
  }
  for (int j : accepted_) {
    if (conflicts(payload, payloads_[static_cast<std::size_t>(j)], j)) return false;
  }
  return true;
}

void FeasibilityTracker::record(const RequestPayload& payload, Bit decision) {
  int index = static_cast<int>(payloads_.size());
  if (is_vertex_arrival(kind_)) {
    int v = graph_.add_vertex();
    for (int j : std::get<VertexArrival>(payload).neighbours) graph_.add_edge(j, v);
  }
  payloads_.push_back(payload);
  if (decision == Bit::zero) accepted_.push_back(index);
}

}  // namespace onred
