// Problem-independent vocabulary: bits, problem kinds, request payloads,
// instances, decisions, scores and error pairs.
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <boost/rational.hpp>

namespace onred {

using Rational = boost::rational<std::int64_t>;

/// Renders `p/q`, or just `p` when the denominator is one.
std::string to_string(const Rational& value);

/// Accepts `p`, `-p` and `p/q`. Throws std::invalid_argument on anything else.
Rational parse_rational(std::string_view text);

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

/// Caller misuse: wrong lengths, unknown names, parameters out of domain.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An exhaustive routine was asked to go beyond its configured cap.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Bits and problem kinds
// ---------------------------------------------------------------------------

enum class Bit : std::uint8_t { zero = 0, one = 1 };

constexpr int as_int(Bit b) { return static_cast<int>(b); }
constexpr Bit bit_of(bool one) { return one ? Bit::one : Bit::zero; }
constexpr Bit flip(Bit b) { return b == Bit::one ? Bit::zero : Bit::one; }

enum class ProblemKind { asg, bdis, sp, sch, cli, mcs, mm };

enum class Direction { max, min };

inline constexpr ProblemKind kAllProblems[] = {
    ProblemKind::asg, ProblemKind::bdis, ProblemKind::sp, ProblemKind::sch,
    ProblemKind::cli, ProblemKind::mcs,  ProblemKind::mm};

std::string_view name_of(ProblemKind kind);
std::optional<ProblemKind> problem_from_name(std::string_view name);

constexpr bool is_maximization(ProblemKind kind) { return kind != ProblemKind::asg; }
constexpr Direction direction_of(ProblemKind kind) {
  return is_maximization(kind) ? Direction::max : Direction::min;
}
constexpr bool is_vertex_arrival(ProblemKind kind) {
  return kind == ProblemKind::bdis || kind == ProblemKind::cli || kind == ProblemKind::mcs;
}

/// The bound parameter t: a positive integer or unbounded.
class Bound {
 public:
  constexpr Bound() = default;
  static constexpr Bound unbounded() { return Bound{}; }
  static Bound of(int value) {
    if (value < 1) throw UsageError("bound t must be a positive integer");
    Bound b;
    b.value_ = value;
    b.finite_ = true;
    return b;
  }

  constexpr bool finite() const { return finite_; }
  int value() const {
    if (!finite_) throw UsageError("bound t is unbounded");
    return value_;
  }
  /// True iff `count <= t`.
  constexpr bool admits(std::int64_t count) const { return !finite_ || count <= value_; }

  std::string to_string() const { return finite_ ? std::to_string(value_) : "inf"; }

  friend constexpr bool operator==(const Bound&, const Bound&) = default;

 private:
  int value_ = 0;
  bool finite_ = false;
};

// ---------------------------------------------------------------------------
// Requests
// ---------------------------------------------------------------------------

/// ASG: a prompt to guess the next bit.
struct Prompt {
  friend bool operator==(const Prompt&, const Prompt&) = default;
};

/// Vertex-arrival kinds: edges to earlier requests (0-based, ascending).
struct VertexArrival {
  std::vector<int> neighbours;
  friend bool operator==(const VertexArrival&, const VertexArrival&) = default;
};

/// SP: a finite set of opaque element tokens (ascending, unique).
struct SetArrival {
  std::vector<std::string> elements;
  friend bool operator==(const SetArrival&, const SetArrival&) = default;
};

/// SCH: the open interval (lo, hi).
struct IntervalArrival {
  Rational lo;
  Rational hi;
  friend bool operator==(const IntervalArrival&, const IntervalArrival&) = default;
};

/// MM: an edge between two labelled vertices.
struct EdgeArrival {
  std::string u;
  std::string v;
  friend bool operator==(const EdgeArrival&, const EdgeArrival&) = default;
};

using RequestPayload = std::variant<Prompt, VertexArrival, SetArrival, IntervalArrival, EdgeArrival>;

/// True iff the payload alternative is the one the problem kind uses.
bool payload_matches(ProblemKind kind, const RequestPayload& payload);

struct Request {
  RequestPayload payload;
  Bit truth = Bit::zero;       // x_i
  Bit prediction = Bit::zero;  // x̂_i
  friend bool operator==(const Request&, const Request&) = default;
};

struct Instance {
  ProblemKind problem = ProblemKind::asg;
  Bound t = Bound::unbounded();
  int colors = 0;  // k; MCS only
  std::vector<Request> requests;

  std::size_t size() const { return requests.size(); }
  std::vector<Bit> truths() const;
  std::vector<Bit> predictions() const;
  std::vector<RequestPayload> payloads() const;

  friend bool operator==(const Instance&, const Instance&) = default;
};

using DecisionSeq = std::vector<Bit>;

struct ErrorPair {
  std::int64_t mu0 = 0;
  std::int64_t mu1 = 0;
  friend bool operator==(const ErrorPair&, const ErrorPair&) = default;
};

/// Profit or cost of a decision sequence. Infeasible stands for the -∞ profit
/// of a constraint-violating selection and never takes part in arithmetic.
class Score {
 public:
  static Score feasible(std::int64_t value) { return Score(value, true); }
  static Score infeasible() { return Score(0, false); }

  bool is_feasible() const { return feasible_; }
  std::int64_t value() const {
    if (!feasible_) throw UsageError("infeasible score has no value");
    return value_;
  }
  std::string to_string() const { return feasible_ ? std::to_string(value_) : "infeasible"; }

  friend bool operator==(const Score&, const Score&) = default;

 private:
  Score(std::int64_t value, bool feasible) : value_(value), feasible_(feasible) {}
  std::int64_t value_;
  bool feasible_;
};

/// Profit comparison with Infeasible ordered below every feasible value.
bool profit_leq(const Score& lhs, const Score& rhs);

}  // namespace onred
