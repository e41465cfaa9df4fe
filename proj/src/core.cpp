#include <algorithm>
#include <charconv>
#include <sstream>

#include "onred/competitiveness.hpp"
#include "onred/types.hpp"

namespace onred {

std::string to_string(const Rational& value) {
  std::ostringstream out;
  out << value.numerator();
  if (value.denominator() != 1) out << '/' << value.denominator();
  return out.str();
}

namespace {

std::int64_t parse_int(std::string_view text) {
  std::int64_t v = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (!text.empty() && text.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last || first == last) {
    throw std::invalid_argument("not an integer: '" + std::string(text) + "'");
  }
  return v;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  std::int64_t num = parse_int(text.substr(0, slash));
  std::int64_t den = parse_int(text.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

std::string_view name_of(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::asg: return "asg";
    case ProblemKind::bdis: return "bdis";
    case ProblemKind::sp: return "sp";
    case ProblemKind::sch: return "sch";
    case ProblemKind::cli: return "cli";
    case ProblemKind::mcs: return "mcs";
    case ProblemKind::mm: return "mm";
  }
  return "?";
}

std::optional<ProblemKind> problem_from_name(std::string_view name) {
  for (ProblemKind k : kAllProblems) {
    if (name_of(k) == name) return k;
  }
  return std::nullopt;
}

bool payload_matches(ProblemKind kind, const RequestPayload& payload) {
  switch (kind) {
    case ProblemKind::asg: return std::holds_alternative<Prompt>(payload);
    case ProblemKind::bdis:
    case ProblemKind::cli:
    case ProblemKind::mcs: return std::holds_alternative<VertexArrival>(payload);
    case ProblemKind::sp: return std::holds_alternative<SetArrival>(payload);
    case ProblemKind::sch: return std::holds_alternative<IntervalArrival>(payload);
    case ProblemKind::mm: return std::holds_alternative<EdgeArrival>(payload);
  }
  return false;
}

std::vector<Bit> Instance::truths() const {
  std::vector<Bit> out;
  out.reserve(requests.size());
  for (const auto& r : requests) out.push_back(r.truth);
  return out;
}

std::vector<Bit> Instance::predictions() const {
  std::vector<Bit> out;
  out.reserve(requests.size());
  for (const auto& r : requests) out.push_back(r.prediction);
  return out;
}

std::vector<RequestPayload> Instance::payloads() const {
  std::vector<RequestPayload> out;
  out.reserve(requests.size());
  for (const auto& r : requests) out.push_back(r.payload);
  return out;
}

bool profit_leq(const Score& lhs, const Score& rhs) {
  if (!lhs.is_feasible()) return true;
  if (!rhs.is_feasible()) return false;
  return lhs.value() <= rhs.value();
}

// ---------------------------------------------------------------------------

ErrorPair CanonicalErrorMeasure::measure(const Instance& instance) const {
  return compute_errors(instance);
}

ErrorPair compute_errors(const Instance& instance) {
  ErrorPair e;
  for (const auto& r : instance.requests) {
    if (r.truth == Bit::one && r.prediction == Bit::zero) ++e.mu0;
    if (r.truth == Bit::zero && r.prediction == Bit::one) ++e.mu1;
  }
  return e;
}

ErrorPair compute_errors(std::span<const Bit> truths, std::span<const Bit> predictions) {
  if (truths.size() != predictions.size()) {
    throw UsageError("truth and prediction strings differ in length");
  }
  ErrorPair e;
  for (std::size_t i = 0; i < truths.size(); ++i) {
    if (truths[i] == Bit::one && predictions[i] == Bit::zero) ++e.mu0;
    if (truths[i] == Bit::zero && predictions[i] == Bit::one) ++e.mu1;
  }
  return e;
}

Rational required_additive(const RunRecord& record, const Rational& alpha, const Rational& beta,
                           const Rational& gamma) {
  const Rational alg(record.alg_score.value());
  const Rational opt(record.opt_value);
  const Rational err = beta * record.errors.mu0 + gamma * record.errors.mu1;
  if (record.direction == Direction::max) return opt - alpha * alg - err;
  return alg - alpha * opt - err;
}

bool satisfies_competitiveness(const RunRecord& record, const CompTriple& triple) {
  if (!record.alg_score.is_feasible()) return false;
  return required_additive(record, triple.alpha, triple.beta, triple.gamma) <= triple.additive;
}

AdditiveConstant min_additive_constant(std::span<const RunRecord> records, const Rational& alpha,
                                       const Rational& beta, const Rational& gamma) {
  AdditiveConstant result;
  if (records.empty()) return result;
  const Direction dir = records.front().direction;
  result.kind = AdditiveConstant::Kind::finite;
  bool first = true;
  for (const auto& r : records) {
    if (r.direction != dir) throw UsageError("records mix maximization and minimization");
    if (!r.alg_score.is_feasible()) {
      result.kind = AdditiveConstant::Kind::unbounded;
      return result;
    }
    Rational need = required_additive(r, alpha, beta, gamma);
    if (first || need > result.value) result.value = need;
    first = false;
  }
  return result;
}

std::vector<CompTriple> empirical_frontier(std::span<const RunRecord> records,
                                           std::span<const Rational> alpha_grid,
                                           std::span<const Rational> beta_grid,
                                           std::span<const Rational> gamma_grid,
                                           const Rational& b_cap) {
  std::vector<CompTriple> out;
  for (const auto& a : alpha_grid) {
    for (const auto& b : beta_grid) {
      for (const auto& g : gamma_grid) {
        AdditiveConstant c = min_additive_constant(records, a, b, g);
        if (!c.bounded_by(b_cap)) continue;
        out.push_back({a, b, g, c.kind == AdditiveConstant::Kind::finite ? c.value : Rational(0)});
      }
    }
  }
  return out;
}

}  // namespace onred
