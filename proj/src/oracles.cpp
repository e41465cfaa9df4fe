#include "onred/oracles.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <numeric>
#include <string>

#include "onred/problems.hpp"

namespace onred {

Caps& caps() {
  static Caps instance = [] {
    Caps c;
    if (const char* env = std::getenv("ONRED_CAP")) {
      char* end = nullptr;
      long v = std::strtol(env, &end, 10);
      if (end != env && *end == '\0' && v > 0 && v < 64) c.enumerate = static_cast<int>(v);
    }
    return c;
  }();
  return instance;
}

namespace {

using Mask = std::uint64_t;

constexpr Mask bit(int i) { return Mask{1} << i; }

std::vector<std::vector<int>> components(const Graph& g) {
  std::vector<int> comp(static_cast<std::size_t>(g.size()), -1);
  std::vector<std::vector<int>> out;
  for (int s = 0; s < g.size(); ++s) {
    if (comp[static_cast<std::size_t>(s)] >= 0) continue;
    std::vector<int> members{s};
    comp[static_cast<std::size_t>(s)] = static_cast<int>(out.size());
    for (std::size_t h = 0; h < members.size(); ++h) {
      for (int u : g.neighbours(members[h])) {
        if (comp[static_cast<std::size_t>(u)] < 0) {
          comp[static_cast<std::size_t>(u)] = static_cast<int>(out.size());
          members.push_back(u);
        }
      }
    }
    std::sort(members.begin(), members.end());
    out.push_back(std::move(members));
  }
  return out;
}

void check_block(std::size_t size) {
  const int cap = std::min(caps().brute_force, 63);
  if (size > static_cast<std::size_t>(cap)) {
    throw CapExceeded("optimum search block of " + std::to_string(size) +
                      " requests exceeds the cap of " + std::to_string(cap));
  }
}

// Include-first search: the first maximum found is the lexicographically
// smallest, since sets holding an earlier index are always explored first.
struct MaxSearch {
  int m = 0;
  std::vector<Mask> conflict;
  std::function<bool(Mask, int)> extra;  // optional non-pairwise test
  int best = -1;
  Mask best_set = 0;

  void run(int pos, Mask chosen, int count) {
    if (count + (m - pos) <= best) return;
    if (pos == m) {
      best = count;
      best_set = chosen;
      return;
    }
    if ((conflict[static_cast<std::size_t>(pos)] & chosen) == 0 && (!extra || extra(chosen, pos))) {
      run(pos + 1, chosen | bit(pos), count + 1);
    }
    run(pos + 1, chosen, count);
  }
};

void append_block(const std::vector<int>& members, Mask set, OptWitness& out) {
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (set & bit(static_cast<int>(i))) out.selection.push_back(members[i]);
  }
}

}  // namespace

OptWitness brute_force_opt(const Instance& instance) {
  OptWitness w;
  if (instance.problem == ProblemKind::asg) {
    for (std::size_t i = 0; i < instance.size(); ++i) {
      if (instance.requests[i].truth == Bit::one) w.selection.push_back(static_cast<int>(i));
    }
    w.value = static_cast<std::int64_t>(w.selection.size());
    return w;
  }

  const bool mcs = instance.problem == ProblemKind::mcs;
  const Graph g = mcs ? build_graph(instance) : conflict_graph(instance);
  for (const auto& members : components(g)) {
    check_block(members.size());
    MaxSearch search;
    search.m = static_cast<int>(members.size());
    search.conflict.assign(members.size(), 0);
    if (!mcs) {
      for (std::size_t a = 0; a < members.size(); ++a) {
        for (std::size_t b = 0; b < members.size(); ++b) {
          if (a != b && g.adjacent(members[a], members[b])) search.conflict[a] |= bit(static_cast<int>(b));
        }
      }
    } else {
      const int k = instance.colors;
      search.extra = [&, k](Mask chosen, int pos) {
        std::vector<int> sel;
        for (std::size_t a = 0; a < members.size(); ++a) {
          if (chosen & bit(static_cast<int>(a))) sel.push_back(members[a]);
        }
        sel.push_back(members[static_cast<std::size_t>(pos)]);
        return k_colorable(g, sel, k);
      };
    }
    search.run(0, 0, 0);
    append_block(members, search.best_set, w);
  }
  std::sort(w.selection.begin(), w.selection.end());
  w.value = static_cast<std::int64_t>(w.selection.size());
  return w;
}

std::int64_t exhaustive_min_cost(const Instance& asg_instance) {
  if (asg_instance.problem != ProblemKind::asg) throw UsageError("exhaustive_min_cost is for asg");
  check_block(asg_instance.size());
  std::int64_t best = -1;
  exhaust_algorithm_responses(asg_instance.size(), [&](const DecisionSeq& y) {
    std::int64_t c = score(asg_instance, y).value();
    if (best < 0 || c < best) best = c;
  });
  return best;
}

void exhaust_algorithm_responses(std::size_t n, const std::function<void(const DecisionSeq&)>& visit) {
  check_block(n);
  DecisionSeq y(n, Bit::zero);
  const Mask total = bit(static_cast<int>(n));
  for (Mask m = 0; m < total; ++m) {
    for (std::size_t i = 0; i < n; ++i) {
      y[i] = bit_of((m >> (n - 1 - i)) & 1U);
    }
    visit(y);
  }
}

// ---------------------------------------------------------------------------
// Interval realisation through a clique path.

namespace {

struct CliquePath {
  int n = 0;
  std::vector<Mask> adj;
  std::vector<Mask> cliques;
  std::vector<int> order;
  std::vector<char> used;

  void maximal_cliques(Mask r, Mask p, Mask x) {
    if (p == 0 && x == 0) {
      cliques.push_back(r);
      return;
    }
    while (p != 0) {
      int v = std::countr_zero(p);
      maximal_cliques(r | bit(v), p & adj[static_cast<std::size_t>(v)], x & adj[static_cast<std::size_t>(v)]);
      p &= ~bit(v);
      x |= bit(v);
    }
  }

  // Every vertex's cliques must be consecutive along the path.
  bool place(Mask closed, Mask last) {
    if (order.size() == cliques.size()) return true;
    for (std::size_t c = 0; c < cliques.size(); ++c) {
      if (used[c]) continue;
      Mask clique = cliques[c];
      if (clique & closed) continue;
      used[c] = 1;
      order.push_back(static_cast<int>(c));
      if (place(closed | (last & ~clique), clique)) return true;
      order.pop_back();
      used[c] = 0;
    }
    return false;
  }
};

}  // namespace

std::optional<std::vector<IntervalArrival>> realize_intervals(const std::vector<std::vector<int>>& adjacency) {
  CliquePath cp;
  cp.n = static_cast<int>(adjacency.size());
  if (cp.n == 0) return std::vector<IntervalArrival>{};
  check_block(adjacency.size());
  cp.adj.assign(adjacency.size(), 0);
  for (int v = 0; v < cp.n; ++v) {
    for (int u : adjacency[static_cast<std::size_t>(v)]) cp.adj[static_cast<std::size_t>(v)] |= bit(u);
  }
  cp.maximal_cliques(0, bit(cp.n) - 1, 0);
  std::sort(cp.cliques.begin(), cp.cliques.end());
  cp.used.assign(cp.cliques.size(), 0);
  if (!cp.place(0, 0)) return std::nullopt;

  std::vector<IntervalArrival> out(adjacency.size());
  for (int v = 0; v < cp.n; ++v) {
    int first = -1;
    int last = -1;
    for (std::size_t p = 0; p < cp.order.size(); ++p) {
      if (cp.cliques[static_cast<std::size_t>(cp.order[p])] & bit(v)) {
        if (first < 0) first = static_cast<int>(p);
        last = static_cast<int>(p);
      }
    }
    out[static_cast<std::size_t>(v)] = {Rational(2 * first), Rational(2 * last + 1)};
  }
  return out;
}

// ---------------------------------------------------------------------------
// Payload generators.

namespace {

using PayloadVisitor = std::function<void(const std::vector<RequestPayload>&)>;

// Ordered graphs: vertex i picks its earlier neighbours as a bitmask, in
// increasing mask order. `admissible` sees the degree vector after each
// arrival and prunes; `accept_full` filters complete graphs.
struct GraphWalk {
  int n = 0;
  std::function<bool(const std::vector<int>& degree, int vertices)> admissible;
  std::function<bool(const std::vector<std::vector<int>>& adjacency)> prefix_ok;
  std::function<void(const std::vector<std::vector<int>>& earlier)> emit;

  std::vector<std::vector<int>> earlier;
  std::vector<std::vector<int>> adjacency;
  std::vector<int> degree;

  void run(int i) {
    if (i == n) {
      emit(earlier);
      return;
    }
    const Mask total = bit(i);
    for (Mask m = 0; m < total; ++m) {
      std::vector<int> nb;
      for (int j = 0; j < i; ++j) {
        if (m & bit(j)) nb.push_back(j);
      }
      earlier.push_back(nb);
      adjacency.emplace_back(nb);
      degree.push_back(static_cast<int>(nb.size()));
      for (int j : nb) {
        ++degree[static_cast<std::size_t>(j)];
        adjacency[static_cast<std::size_t>(j)].push_back(i);
      }
      if (admissible(degree, i + 1) && (!prefix_ok || prefix_ok(adjacency))) run(i + 1);
      for (int j : nb) {
        --degree[static_cast<std::size_t>(j)];
        adjacency[static_cast<std::size_t>(j)].pop_back();
      }
      degree.pop_back();
      adjacency.pop_back();
      earlier.pop_back();
    }
  }
};

void graph_payloads(const CorpusSpec& spec, int n, const PayloadVisitor& visit) {
  GraphWalk walk;
  walk.n = n;
  const Bound t = spec.t;
  if (spec.problem == ProblemKind::cli) {
    // |V| - t <= δ  ⇔  every complement degree is at most t - 1; those only grow.
    walk.admissible = [t](const std::vector<int>& degree, int vertices) {
      if (!t.finite()) return true;
      for (int d : degree) {
        if (vertices - 1 - d > t.value() - 1) return false;
      }
      return true;
    };
  } else {
    walk.admissible = [t](const std::vector<int>& degree, int) {
      for (int d : degree) {
        if (!t.admits(d)) return false;
      }
      return true;
    };
  }
  if (spec.problem == ProblemKind::sch) {
    walk.prefix_ok = [](const std::vector<std::vector<int>>& adjacency) {
      return realize_intervals(adjacency).has_value();
    };
    walk.emit = [&](const std::vector<std::vector<int>>&) {
      auto realised = realize_intervals(walk.adjacency);
      std::vector<RequestPayload> out(realised->begin(), realised->end());
      visit(out);
    };
  } else {
    walk.emit = [&](const std::vector<std::vector<int>>& earlier) {
      std::vector<RequestPayload> out;
      out.reserve(earlier.size());
      for (const auto& nb : earlier) out.emplace_back(VertexArrival{nb});
      visit(out);
    };
  }
  walk.run(0);
}

std::string label(char prefix, int i) { return std::string(1, prefix) + std::to_string(i + 1); }

// SP: element labels are minted in order of first use.
struct SetWalk {
  int n = 0;
  int size_cap = 2;
  int universe_cap = 0;
  Bound t;
  const PayloadVisitor* visit = nullptr;

  std::vector<Mask> sets;
  std::vector<int> hits;  // intersecting-set counts
  std::vector<RequestPayload> out;

  void run(int i, int universe) {
    if (i == n) {
      (*visit)(out);
      return;
    }
    const int fresh_max = std::min(size_cap, universe_cap - universe);
    for (int fresh = 0; fresh <= fresh_max; ++fresh) {
      const int span = universe + fresh;
      // Subsets of the old labels, always including all `fresh` new ones.
      const Mask fresh_bits = (bit(span) - 1) & ~(bit(universe) - 1);
      for (Mask old = 0; old < bit(universe); ++old) {
        const Mask s = old | fresh_bits;
        const int size = std::popcount(s);
        if (size == 0 || size > size_cap) continue;
        try_set(i, s, span);
      }
    }
  }

  void try_set(int i, Mask s, int span) {
    int mine = 0;
    std::vector<int> touched;
    for (std::size_t j = 0; j < sets.size(); ++j) {
      if (sets[j] & s) {
        ++mine;
        touched.push_back(static_cast<int>(j));
      }
    }
    if (!t.admits(mine)) return;
    for (int j : touched) {
      if (!t.admits(hits[static_cast<std::size_t>(j)] + 1)) return;
    }
    for (int j : touched) ++hits[static_cast<std::size_t>(j)];
    sets.push_back(s);
    hits.push_back(mine);
    SetArrival payload;
    for (int e = 0; e < span; ++e) {
      if (s & bit(e)) payload.elements.push_back(label('e', e));
    }
    std::sort(payload.elements.begin(), payload.elements.end());
    out.emplace_back(std::move(payload));
    run(i + 1, span);
    out.pop_back();
    hits.pop_back();
    sets.pop_back();
    for (int j : touched) --hits[static_cast<std::size_t>(j)];
  }
};

// MM: vertex labels are minted in order of first use; no repeated edges.
struct EdgeWalk {
  int n = 0;
  Bound t;
  const PayloadVisitor* visit = nullptr;

  std::vector<std::pair<int, int>> edges;
  std::vector<int> degree;
  std::vector<RequestPayload> out;

  void run(int i) {
    if (i == n) {
      (*visit)(out);
      return;
    }
    const int known = static_cast<int>(degree.size());
    for (int b = 1; b < known + 2; ++b) {
      for (int a = 0; a < b; ++a) {
        // New labels must be minted in order: a fresh a forces b to be the next one too.
        if (a >= known && a != known) continue;
        if (b >= known && b != (a >= known ? known + 1 : known)) continue;
        if (std::find(edges.begin(), edges.end(), std::make_pair(a, b)) != edges.end()) continue;
        const int need = std::max(b + 1, known);
        degree.resize(static_cast<std::size_t>(need), 0);
        ++degree[static_cast<std::size_t>(a)];
        ++degree[static_cast<std::size_t>(b)];
        if (t.admits(degree[static_cast<std::size_t>(a)]) && t.admits(degree[static_cast<std::size_t>(b)])) {
          edges.emplace_back(a, b);
          out.emplace_back(EdgeArrival{label('v', a), label('v', b)});
          run(i + 1);
          out.pop_back();
          edges.pop_back();
        }
        --degree[static_cast<std::size_t>(a)];
        --degree[static_cast<std::size_t>(b)];
        degree.resize(static_cast<std::size_t>(known));
      }
    }
  }
};

std::vector<Bit> bits_of(Mask m, int n) {
  std::vector<Bit> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = bit_of((m >> (n - 1 - i)) & 1U);
  return out;
}

void emit_with_predictions(const CorpusSpec& spec, Instance& inst,
                           const std::function<void(const Instance&)>& visit) {
  const int n = static_cast<int>(inst.size());
  const std::vector<Bit> x = inst.truths();
  auto emit = [&](const std::vector<Bit>& xhat) {
    for (int i = 0; i < n; ++i) inst.requests[static_cast<std::size_t>(i)].prediction = xhat[static_cast<std::size_t>(i)];
    visit(inst);
  };
  if (spec.mode == PredictionMode::perfect) {
    emit(x);
    return;
  }
  for (Mask m = 0; m < bit(n); ++m) {
    std::vector<Bit> xhat = bits_of(m, n);
    if (spec.mode == PredictionMode::flips) {
      int dist = 0;
      for (int i = 0; i < n; ++i) dist += xhat[static_cast<std::size_t>(i)] != x[static_cast<std::size_t>(i)];
      if (dist > spec.flip_budget) continue;
    }
    emit(xhat);
  }
}

}  // namespace

void enumerate_payloads(const CorpusSpec& spec, int n, const PayloadVisitor& visit) {
  switch (spec.problem) {
    case ProblemKind::asg: {
      visit(std::vector<RequestPayload>(static_cast<std::size_t>(n), Prompt{}));
      return;
    }
    case ProblemKind::bdis:
    case ProblemKind::cli:
    case ProblemKind::mcs:
    case ProblemKind::sch: graph_payloads(spec, n, visit); return;
    case ProblemKind::sp: {
      SetWalk walk;
      walk.n = n;
      walk.size_cap = spec.set_size;
      walk.t = spec.t;
      walk.universe_cap = spec.t.finite() ? spec.n_max + spec.t.value() : spec.n_max * spec.set_size;
      walk.universe_cap = std::min(walk.universe_cap, 62);
      walk.visit = &visit;
      walk.run(0, 0);
      return;
    }
    case ProblemKind::mm: {
      EdgeWalk walk;
      walk.n = n;
      walk.t = spec.t;
      walk.visit = &visit;
      walk.run(0);
      return;
    }
  }
}

void enumerate_instances(const CorpusSpec& spec, const std::function<void(const Instance&)>& visit) {
  if (spec.n_max < 0) throw UsageError("n_max must be non-negative");
  if (spec.n_max > caps().enumerate) {
    throw CapExceeded("n_max " + std::to_string(spec.n_max) + " exceeds the enumeration cap of " +
                      std::to_string(caps().enumerate));
  }
  if (spec.problem == ProblemKind::asg && !spec.t.finite()) throw UsageError("asg needs a finite t");
  if (spec.problem == ProblemKind::mcs && spec.colors < 1) throw UsageError("mcs needs k >= 1");
  if (spec.problem == ProblemKind::sp && spec.set_size < 1) throw UsageError("set size must be positive");

  Instance inst;
  inst.problem = spec.problem;
  inst.t = spec.t;
  inst.colors = spec.problem == ProblemKind::mcs ? spec.colors : 0;
  for (int n = 1; n <= spec.n_max; ++n) {
    enumerate_payloads(spec, n, [&](const std::vector<RequestPayload>& payloads) {
      inst.requests.assign(payloads.size(), Request{});
      for (std::size_t i = 0; i < payloads.size(); ++i) inst.requests[i].payload = payloads[i];
      if (spec.problem == ProblemKind::asg) {
        for (Mask m = 0; m < bit(n); ++m) {
          std::vector<Bit> x = bits_of(m, n);
          for (int i = 0; i < n; ++i) inst.requests[static_cast<std::size_t>(i)].truth = x[static_cast<std::size_t>(i)];
          emit_with_predictions(spec, inst, visit);
        }
        return;
      }
      OptWitness opt = brute_force_opt(inst);
      for (auto& r : inst.requests) r.truth = Bit::one;
      for (int i : opt.selection) inst.requests[static_cast<std::size_t>(i)].truth = Bit::zero;
      emit_with_predictions(spec, inst, visit);
    });
  }
}

std::vector<Instance> collect_instances(const CorpusSpec& spec) {
  std::vector<Instance> out;
  enumerate_instances(spec, [&](const Instance& inst) { out.push_back(inst); });
  return out;
}

}  // namespace onred
