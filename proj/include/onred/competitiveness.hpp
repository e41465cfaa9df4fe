// Error measures and (α, β, γ)-competitiveness arithmetic, both directions.
#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "onred/types.hpp"

namespace onred {

/// A pair of prediction-error measures (η0, η1) evaluated on a whole instance.
class ErrorMeasure {
 public:
  virtual ~ErrorMeasure() = default;
  virtual std::string_view name() const = 0;
  virtual ErrorPair measure(const Instance& instance) const = 0;
};

/// The canonical pair: μ0 counts true 1s predicted 0, μ1 counts true 0s predicted 1.
class CanonicalErrorMeasure final : public ErrorMeasure {
 public:
  std::string_view name() const override { return "mu"; }
  ErrorPair measure(const Instance& instance) const override;
};

ErrorPair compute_errors(const Instance& instance);
ErrorPair compute_errors(std::span<const Bit> truths, std::span<const Bit> predictions);

struct CompTriple {
  Rational alpha;
  Rational beta;
  Rational gamma;
  Rational additive;  // b
  friend bool operator==(const CompTriple&, const CompTriple&) = default;
};

struct RunRecord {
  std::int64_t opt_value = 0;
  Score alg_score = Score::feasible(0);
  ErrorPair errors;
  Direction direction = Direction::max;
};

/// Max: Opt ≤ α·Alg + β·μ0 + γ·μ1 + b, false whenever Alg is Infeasible.
/// Min: Alg ≤ α·Opt + β·μ0 + γ·μ1 + b.
bool satisfies_competitiveness(const RunRecord& record, const CompTriple& triple);

/// Slack Opt − α·Alg − β·μ0 − γ·μ1 (max) or Alg − α·Opt − β·μ0 − γ·μ1 (min):
/// the smallest b that makes this single record pass. Requires a feasible score.
Rational required_additive(const RunRecord& record, const Rational& alpha, const Rational& beta,
                           const Rational& gamma);

struct AdditiveConstant {
  enum class Kind { vacuous, finite, unbounded };
  Kind kind = Kind::vacuous;
  Rational value;  // meaningful for finite only

  bool bounded_by(const Rational& cap) const {
    return kind == Kind::vacuous || (kind == Kind::finite && value <= cap);
  }
};

/// Smallest b over a finite record set. Vacuous for an empty set, Unbounded when
/// any record carries an Infeasible score. All records must share a direction.
AdditiveConstant min_additive_constant(std::span<const RunRecord> records, const Rational& alpha,
                                       const Rational& beta, const Rational& gamma);

/// Grid triples whose min_additive_constant is at most b_cap, in grid order
/// (alpha outermost). The additive field of each result holds the constant found
/// (zero for a vacuous record set).
std::vector<CompTriple> empirical_frontier(std::span<const RunRecord> records,
                                           std::span<const Rational> alpha_grid,
                                           std::span<const Rational> beta_grid,
                                           std::span<const Rational> gamma_grid,
                                           const Rational& b_cap);

}  // namespace onred
