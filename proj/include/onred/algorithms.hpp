// Deterministic online algorithms with predictions.
#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "onred/competitiveness.hpp"
#include "onred/types.hpp"

namespace onred {

/// What a session knows about its problem before the first request.
struct ProblemParams {
  ProblemKind problem = ProblemKind::asg;
  Bound t = Bound::unbounded();
  int colors = 0;

  static ProblemParams of(const Instance& instance) {
    return {instance.problem, instance.t, instance.colors};
  }
};

/// One run of an online algorithm. Each step is irrevocable; true bits are only
/// handed over through finish() once the input has ended.
class AlgorithmSession {
 public:
  virtual ~AlgorithmSession() = default;

  virtual Bit step(const RequestPayload& payload, Bit prediction) = 0;
  virtual void finish(std::span<const Bit> truths) { (void)truths; }

  std::size_t consumed() const { return consumed_; }

 protected:
  std::size_t consumed_ = 0;
};

using AlgorithmFactory = std::function<std::unique_ptr<AlgorithmSession>(const ProblemParams&)>;

struct AlgorithmInfo {
  std::string name;
  bool for_asg = false;
  bool for_max = false;
};

/// The shipped roster in a fixed order.
const std::vector<AlgorithmInfo>& algorithm_roster();

/// Roster names usable on `problem`, in roster order.
std::vector<std::string> algorithms_for(ProblemKind problem);

/// Throws UsageError for unknown names or names not defined on the problem kind.
AlgorithmFactory algorithm_by_name(std::string_view name);

struct RunResult {
  DecisionSeq decisions;
  RunRecord record;
};

/// Replays `instance` through a fresh session, then reveals the true bits.
RunResult run_algorithm(const AlgorithmFactory& factory, const Instance& instance);

/// Replays an instance through an existing session and returns its decisions.
DecisionSeq drive(AlgorithmSession& session, const Instance& instance);

}  // namespace onred
