#include "onred/adversary.hpp"

#include <algorithm>

#include "onred/oracles.hpp"
#include "onred/problems.hpp"

namespace onred {

Gadget build_gadget(GadgetKind kind, int t) {
  if (t < 1) throw UsageError("gadget needs t >= 1");
  Gadget g{kind, t, {}};
  if (kind == GadgetKind::g0) {
    g.requests.push_back({VertexArrival{}, Bit::zero, Bit::one});
    return g;
  }
  g.requests.push_back({VertexArrival{}, Bit::one, Bit::one});
  for (int p = 0; p < t; ++p) g.requests.push_back({VertexArrival{{0}}, Bit::zero, Bit::zero});
  return g;
}

AdversaryRun adaptive_adversary(const AlgorithmFactory& alg, int n_gadgets, int t) {
  if (n_gadgets < 0) throw UsageError("gadget count must be non-negative");
  if (t < 1) throw UsageError("adversary needs t >= 1");
  AdversaryRun run;
  run.instance.problem = ProblemKind::bdis;
  run.instance.t = Bound::of(t);
  auto session = alg(ProblemParams::of(run.instance));

  auto present = [&](const Request& r) {
    run.instance.requests.push_back(r);
    Bit y = session->step(r.payload, r.prediction);
    run.decisions.push_back(y);
    return y;
  };

  for (int g = 0; g < n_gadgets; ++g) {
    int centre = static_cast<int>(run.instance.size());
    // The centre's true bit is fixed only after the answer; the request the
    // algorithm sees is the same in both cases.
    Bit y = present({VertexArrival{}, Bit::zero, Bit::one});
    if (y == Bit::one) {
      ++run.y1;
      continue;
    }
    ++run.y0;
    run.instance.requests.back().truth = Bit::one;
    Gadget star = build_gadget(GadgetKind::g1, t);
    for (std::size_t p = 1; p < star.requests.size(); ++p) {
      Request leaf = star.requests[p];
      leaf.payload = VertexArrival{{centre}};
      present(leaf);
    }
  }
  std::vector<Bit> truths = run.instance.truths();
  session->finish(truths);

  run.record.direction = Direction::max;
  run.record.opt_value = brute_force_opt(run.instance).value;
  run.record.alg_score = score(run.instance, run.decisions);
  run.record.errors = compute_errors(run.instance);
  return run;
}

GadgetOutcome gadget_outcome(const DecisionSeq& centres, int t) {
  GadgetOutcome out;
  for (Bit y : centres) {
    if (y == Bit::one) {
      out.opt += 1;
      out.mu1 += 1;
    } else {
      out.opt += t;
      out.alg += 1;
    }
  }
  return out;
}

std::vector<GrowthRow> impossibility_growth(const AlgorithmFactory& alg, int t, const Rational& alpha,
                                            const Rational& gamma, std::span<const int> n_list) {
  if (t < 1) throw UsageError("adversary needs t >= 1");
  if (alpha >= Rational(t)) throw UsageError("alpha must be below t");
  if (gamma >= Rational(1)) throw UsageError("gamma must be below 1");
  if (gamma < Rational(0)) throw UsageError("gamma must be non-negative");
  const Rational slope = std::min(Rational(1) - gamma, Rational(t) - alpha);
  std::vector<GrowthRow> rows;
  for (int n : n_list) {
    AdversaryRun run = adaptive_adversary(alg, n, t);
    GrowthRow row;
    row.n = n;
    row.opt = run.record.opt_value;
    row.alg = run.record.alg_score;
    row.mu0 = run.record.errors.mu0;
    row.mu1 = run.record.errors.mu1;
    row.floor = slope * n;
    if (!row.alg.is_feasible()) {
      row.unbounded = true;
    } else {
      row.deficit = Rational(row.opt) - alpha * row.alg.value() - gamma * row.mu1;
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace onred
