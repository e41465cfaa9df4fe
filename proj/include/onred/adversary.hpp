// Adaptive gadget adversary against deterministic BDIS_t algorithms.
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "onred/algorithms.hpp"
#include "onred/competitiveness.hpp"
#include "onred/types.hpp"

namespace onred {

enum class GadgetKind { g0, g1 };

/// G0: one isolated vertex, x=0, pred=1. G1: a star whose centre (x=pred=1)
/// comes first, then t leaves (x=pred=0). Edges are relative to the gadget.
struct Gadget {
  GadgetKind kind = GadgetKind::g0;
  int t = 1;
  std::vector<Request> requests;
};

/// Throws UsageError for t < 1.
Gadget build_gadget(GadgetKind kind, int t);

struct AdversaryRun {
  Instance instance;
  DecisionSeq decisions;
  RunRecord record;
  std::int64_t y0 = 0;  // centres accepted, each became a G1
  std::int64_t y1 = 0;  // centres rejected, each became a G0
};

/// Presents n_gadgets centres, each with prediction 1. A rejected centre is
/// left as G0; an accepted one becomes G1 and its leaves follow at once.
AdversaryRun adaptive_adversary(const AlgorithmFactory& alg, int n_gadgets, int t);

/// Opt, Alg and mu1 of the gadget instance that the centre decisions force,
/// assuming the leaves of every G1 are rejected.
struct GadgetOutcome {
  std::int64_t opt = 0;
  std::int64_t alg = 0;
  std::int64_t mu1 = 0;
};
GadgetOutcome gadget_outcome(const DecisionSeq& centres, int t);

struct GrowthRow {
  int n = 0;
  std::int64_t opt = 0;
  Score alg = Score::infeasible();
  std::int64_t mu0 = 0;
  std::int64_t mu1 = 0;
  bool unbounded = false;  // infeasible Alg: the deficit is +inf
  Rational deficit{0};     // Opt - alpha*Alg - gamma*mu1
  Rational floor{0};       // min{1 - gamma, t - alpha} * n
};

/// Runs the adversary for every n. Refuses alpha >= t and gamma >= 1.
std::vector<GrowthRow> impossibility_growth(const AlgorithmFactory& alg, int t, const Rational& alpha,
                                            const Rational& gamma, std::span<const int> n_list);

}  // namespace onred
