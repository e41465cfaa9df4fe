#include "onred/algorithms.hpp"

#include "onred/oracles.hpp"
#include "onred/problems.hpp"

namespace onred {

namespace {

void require_payload(const ProblemParams& p, const RequestPayload& payload) {
  if (!payload_matches(p.problem, payload)) {
    throw UsageError("payload kind does not match problem " + std::string(name_of(p.problem)));
  }
}

class ConstantGuess final : public AlgorithmSession {
 public:
  ConstantGuess(ProblemParams p, Bit guess) : params_(p), guess_(guess) {}
  Bit step(const RequestPayload& payload, Bit) override {
    require_payload(params_, payload);
    ++consumed_;
    return guess_;
  }

 private:
  ProblemParams params_;
  Bit guess_;
};

// Maximization kinds: accept when `wants` says so and the selection stays feasible.
class Guarded final : public AlgorithmSession {
 public:
  enum class Policy { follow, greedy, reject };

  Guarded(ProblemParams p, Policy policy) : params_(p), policy_(policy), tracker_(p.problem, p.colors) {}

  Bit step(const RequestPayload& payload, Bit prediction) override {
    require_payload(params_, payload);
    bool wants = policy_ == Policy::greedy || (policy_ == Policy::follow && prediction == Bit::zero);
    Bit y = wants && tracker_.can_accept(payload) ? Bit::zero : Bit::one;
    tracker_.record(payload, y);
    ++consumed_;
    return y;
  }

 private:
  ProblemParams params_;
  Policy policy_;
  FeasibilityTracker tracker_;
};

class FollowAsg final : public AlgorithmSession {
 public:
  explicit FollowAsg(ProblemParams p) : params_(p) {}
  Bit step(const RequestPayload& payload, Bit prediction) override {
    require_payload(params_, payload);
    ++consumed_;
    return prediction;
  }

 private:
  ProblemParams params_;
};

void require_kind(const ProblemParams& p, bool asg_ok, bool max_ok, std::string_view name) {
  bool asg = p.problem == ProblemKind::asg;
  if ((asg && !asg_ok) || (!asg && !max_ok)) {
    throw UsageError(std::string(name) + " is not defined for " + std::string(name_of(p.problem)));
  }
}

}  // namespace

const std::vector<AlgorithmInfo>& algorithm_roster() {
  static const std::vector<AlgorithmInfo> roster = {
      {"always-guess-zero", true, false},
      {"always-guess-one", true, false},
      {"follow-prediction", true, true},
      {"greedy-feasible", false, true},
      {"always-reject", false, true},
  };
  return roster;
}

std::vector<std::string> algorithms_for(ProblemKind problem) {
  std::vector<std::string> out;
  for (const auto& a : algorithm_roster()) {
    if (problem == ProblemKind::asg ? a.for_asg : a.for_max) out.push_back(a.name);
  }
  return out;
}

AlgorithmFactory algorithm_by_name(std::string_view name) {
  if (name == "always-guess-zero") {
    return [](const ProblemParams& p) -> std::unique_ptr<AlgorithmSession> {
      require_kind(p, true, false, "always-guess-zero");
      return std::make_unique<ConstantGuess>(p, Bit::zero);
    };
  }
  if (name == "always-guess-one") {
    return [](const ProblemParams& p) -> std::unique_ptr<AlgorithmSession> {
      require_kind(p, true, false, "always-guess-one");
      return std::make_unique<ConstantGuess>(p, Bit::one);
    };
  }
  if (name == "follow-prediction") {
    return [](const ProblemParams& p) -> std::unique_ptr<AlgorithmSession> {
      if (p.problem == ProblemKind::asg) return std::make_unique<FollowAsg>(p);
      return std::make_unique<Guarded>(p, Guarded::Policy::follow);
    };
  }
  if (name == "greedy-feasible") {
    return [](const ProblemParams& p) -> std::unique_ptr<AlgorithmSession> {
      require_kind(p, false, true, "greedy-feasible");
      return std::make_unique<Guarded>(p, Guarded::Policy::greedy);
    };
  }
  if (name == "always-reject") {
    return [](const ProblemParams& p) -> std::unique_ptr<AlgorithmSession> {
      require_kind(p, false, true, "always-reject");
      return std::make_unique<Guarded>(p, Guarded::Policy::reject);
    };
  }
  throw UsageError("unknown algorithm '" + std::string(name) + "'");
}

DecisionSeq drive(AlgorithmSession& session, const Instance& instance) {
  DecisionSeq y;
  y.reserve(instance.size());
  for (const auto& r : instance.requests) y.push_back(session.step(r.payload, r.prediction));
  std::vector<Bit> x = instance.truths();
  session.finish(x);
  return y;
}

RunResult run_algorithm(const AlgorithmFactory& factory, const Instance& instance) {
  auto session = factory(ProblemParams::of(instance));
  RunResult out;
  out.decisions = drive(*session, instance);
  out.record.direction = direction_of(instance.problem);
  out.record.opt_value = brute_force_opt(instance).value;
  out.record.alg_score = score(instance, out.decisions);
  out.record.errors = compute_errors(instance);
  return out;
}

}  // namespace onred
