// Online reductions between the problems, run as coupled sessions.
//
// A reduction from P to Q wraps an algorithm for Q into an algorithm for P and,
// while it runs, builds the Q instance that the wrapped algorithm sees. The
// trace of a coupled run is then checked against the reduction's conditions.
#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "onred/algorithms.hpp"
#include "onred/types.hpp"

namespace onred {

enum class ReductionKind { strict, conditional };

std::string_view name_of(ReductionKind kind);

/// Everything one coupled run produced. Indices are 0-based.
struct CoupledTrace {
  std::string reduction;
  Instance source;
  DecisionSeq source_decisions;
  Instance target;
  DecisionSeq target_decisions;
  std::vector<int> level;      // per source request, 0 when the reduction has no levels
  std::vector<int> forwarded;  // per source request: target index it was forwarded to, or -1
  std::vector<int> owner;      // per target request: the source request it belongs to
  std::vector<char> block;     // per target request: 1 if emitted after the input ended
  std::shared_ptr<const CoupledTrace> inner;  // next layer of a composed reduction
};

/// The P-side algorithm built by a reduction. It owns the Q-side session.
class CoupledSession : public AlgorithmSession {
 public:
  CoupledSession(std::string name, ProblemParams source, ProblemParams target,
                 std::unique_ptr<AlgorithmSession> inner);

  Bit step(const RequestPayload& payload, Bit prediction) final;
  void finish(std::span<const Bit> truths) final;

  bool finished() const { return finished_; }
  /// Throws UsageError before finish().
  const CoupledTrace& trace() const;

 protected:
  virtual Bit on_request(std::size_t i, const RequestPayload& payload, Bit prediction) = 0;
  /// Source truths are in trace_.source by now. Sets the truths of forwarded
  /// requests and emits the trailing blocks.
  virtual void on_finish() = 0;

  /// Sends a request to the inner algorithm and returns its answer. The true
  /// bit stays 0 until set_target_truth.
  Bit forward(std::size_t owner, RequestPayload payload, Bit prediction);
  void emit_block(std::size_t owner, RequestPayload payload, Bit truth, Bit prediction);
  void set_target_truth(std::size_t target_index, Bit truth);

  const ProblemParams& source_params() const { return source_; }
  const ProblemParams& target_params() const { return target_; }

  CoupledTrace trace_;

 private:
  ProblemParams source_;
  ProblemParams target_;
  std::unique_ptr<AlgorithmSession> inner_;
  bool finished_ = false;
};

struct VerifyOptions {
  /// (α, β) pairs for the conditional checks. Empty means boundary_grid(t).
  std::vector<std::pair<Rational, Rational>> alpha_beta;
};

/// α ∈ {1, 3/2, ..., t}, β = t − α.
std::vector<std::pair<Rational, Rational>> boundary_grid(int t);
/// α ∈ {1, 3/2, ..., t}, β ∈ {0, 1/2, ..., t − α}.
std::vector<std::pair<Rational, Rational>> triangle_grid(int t);

struct ConditionTally {
  std::string condition;
  std::int64_t passed = 0;
  std::int64_t failed = 0;
};

struct VerificationFailure {
  std::string condition;
  int step = -1;  // 1-based source request, -1 for whole-run conditions
  std::string detail;
  std::string instance;  // serialized source instance
};

class VerificationReport {
 public:
  static constexpr std::size_t kFailureCap = 25;

  /// Records one evaluation of `condition`. The detail is only built on failure.
  void check(std::string_view condition, bool ok, int step, const std::function<std::string()>& detail);

  void merge(const VerificationReport& other);

  bool passed() const;
  std::int64_t passed(std::string_view condition) const;
  std::int64_t failed(std::string_view condition) const;
  std::int64_t total_failed() const;

  const std::vector<ConditionTally>& tallies() const { return tallies_; }
  const std::vector<VerificationFailure>& failures() const { return failures_; }

  std::int64_t runs = 0;
  /// Set by verify_trace; prefixes condition names of composed layers.
  std::string prefix;
  const Instance* context = nullptr;

 private:
  ConditionTally& tally(std::string_view condition);
  std::vector<ConditionTally> tallies_;
  std::vector<VerificationFailure> failures_;
};

class Reduction {
 public:
  virtual ~Reduction() = default;

  virtual std::string name() const = 0;
  virtual ProblemKind source() const = 0;
  virtual ProblemKind target() const = 0;
  virtual ReductionKind kind() const = 0;
  /// Additive slack in the optimum condition. Zero for every shipped reduction.
  virtual Rational constant() const { return Rational(0); }

  virtual ProblemParams target_params(const ProblemParams& source) const = 0;
  /// Throws UsageError when the pair of parameters is not supported.
  virtual void check_params(const ProblemParams& source, const ProblemParams& target) const;

  virtual std::unique_ptr<CoupledSession> attach(std::unique_ptr<AlgorithmSession> inner,
                                                 const ProblemParams& source,
                                                 const ProblemParams& target) const = 0;

  /// Creates the innermost algorithm with `alg` and wraps it.
  virtual std::unique_ptr<CoupledSession> build(const AlgorithmFactory& alg, const ProblemParams& source,
                                                const std::optional<ProblemParams>& target) const;

  virtual void verify(const CoupledTrace& trace, const VerifyOptions& options,
                      VerificationReport& report) const = 0;
};

using ReductionPtr = std::shared_ptr<const Reduction>;

ReductionPtr red_bdis_to_asg();
ReductionPtr red_asg_to_bdis();
ReductionPtr red_sp_to_bdis();
ReductionPtr red_bdis_to_sp();
ReductionPtr red_sch_to_bdis();
ReductionPtr red_bdis_to_sch();
ReductionPtr red_cli_to_bdis();
ReductionPtr red_bdis_to_cli();
ReductionPtr red_mcs_to_bdis();
ReductionPtr red_mat_to_sp();

/// Forwards every request unchanged.
ReductionPtr identity_reduction(ProblemKind problem);

/// Runs `first`, whose target problem is served through `second`.
/// Throws UsageError when the problems do not line up.
ReductionPtr compose(ReductionPtr first, ReductionPtr second);

/// The ten shipped reductions in a fixed order.
const std::vector<ReductionPtr>& all_reductions();

/// A registered name, or several joined by '+' for their composition.
ReductionPtr reduction_by_name(std::string_view name);

struct CoupleOptions {
  std::optional<ProblemParams> target;  // default: the reduction's own choice
  bool validate_source = true;
};

/// Runs the P-side algorithm over `source` and returns the trace.
CoupledTrace couple(const Reduction& reduction, const AlgorithmFactory& alg, const Instance& source,
                    const CoupleOptions& options = {});

/// Verifies one trace, attributing failures to its source instance.
void verify_trace(const Reduction& reduction, const CoupledTrace& trace, const VerifyOptions& options,
                  VerificationReport& report);

/// R1–R4 of a strict reduction between two instances plus target validity.
void check_strict(const CoupledTrace& trace, VerificationReport& report);

/// The innermost layer of a composed trace.
const CoupledTrace& innermost(const CoupledTrace& trace);

}  // namespace onred
