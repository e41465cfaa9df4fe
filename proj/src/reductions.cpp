#include "onred/reductions.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "onred/competitiveness.hpp"
#include "onred/instance_format.hpp"
#include "onred/oracles.hpp"
#include "onred/problems.hpp"

namespace onred {

std::string_view name_of(ReductionKind kind) {
  return kind == ReductionKind::strict ? "strict" : "conditional";
}

// ---------------------------------------------------------------------------
// CoupledSession
// ---------------------------------------------------------------------------

CoupledSession::CoupledSession(std::string name, ProblemParams source, ProblemParams target,
                               std::unique_ptr<AlgorithmSession> inner)
    : source_(source), target_(target), inner_(std::move(inner)) {
  trace_.reduction = std::move(name);
  trace_.source.problem = source.problem;
  trace_.source.t = source.t;
  trace_.source.colors = source.colors;
  trace_.target.problem = target.problem;
  trace_.target.t = target.t;
  trace_.target.colors = target.colors;
}

Bit CoupledSession::step(const RequestPayload& payload, Bit prediction) {
  if (finished_) throw UsageError("session already finished");
  if (!payload_matches(source_.problem, payload)) {
    throw UsageError("payload kind does not match problem " + std::string(name_of(source_.problem)));
  }
  std::size_t i = trace_.source.size();
  trace_.source.requests.push_back({payload, Bit::zero, prediction});
  trace_.level.push_back(0);
  trace_.forwarded.push_back(-1);
  Bit y = on_request(i, payload, prediction);
  trace_.source_decisions.push_back(y);
  ++consumed_;
  return y;
}

void CoupledSession::finish(std::span<const Bit> truths) {
  if (finished_) throw UsageError("session already finished");
  if (truths.size() != trace_.source.size()) throw UsageError("truth vector length differs from request count");
  for (std::size_t i = 0; i < truths.size(); ++i) trace_.source.requests[i].truth = truths[i];
  on_finish();
  std::vector<Bit> target_truths = trace_.target.truths();
  inner_->finish(target_truths);
  if (auto* nested = dynamic_cast<CoupledSession*>(inner_.get())) {
    trace_.inner = std::make_shared<CoupledTrace>(nested->trace());
  }
  finished_ = true;
}

const CoupledTrace& CoupledSession::trace() const {
  if (!finished_) throw UsageError("trace is only available after finish");
  return trace_;
}

Bit CoupledSession::forward(std::size_t owner, RequestPayload payload, Bit prediction) {
  std::size_t idx = trace_.target.size();
  trace_.target.requests.push_back({std::move(payload), Bit::zero, prediction});
  trace_.owner.push_back(static_cast<int>(owner));
  trace_.block.push_back(0);
  if (trace_.forwarded[owner] < 0) trace_.forwarded[owner] = static_cast<int>(idx);
  Bit y = inner_->step(trace_.target.requests.back().payload, prediction);
  trace_.target_decisions.push_back(y);
  return y;
}

void CoupledSession::emit_block(std::size_t owner, RequestPayload payload, Bit truth, Bit prediction) {
  trace_.target.requests.push_back({std::move(payload), truth, prediction});
  trace_.owner.push_back(static_cast<int>(owner));
  trace_.block.push_back(1);
  trace_.target_decisions.push_back(inner_->step(trace_.target.requests.back().payload, prediction));
}

void CoupledSession::set_target_truth(std::size_t target_index, Bit truth) {
  trace_.target.requests.at(target_index).truth = truth;
}

// ---------------------------------------------------------------------------
// Grids and reports
// ---------------------------------------------------------------------------

std::vector<std::pair<Rational, Rational>> boundary_grid(int t) {
  std::vector<std::pair<Rational, Rational>> out;
  for (Rational a(1); a <= Rational(t); a += Rational(1, 2)) out.emplace_back(a, Rational(t) - a);
  return out;
}

std::vector<std::pair<Rational, Rational>> triangle_grid(int t) {
  std::vector<std::pair<Rational, Rational>> out;
  for (Rational a(1); a <= Rational(t); a += Rational(1, 2)) {
    for (Rational b(0); a + b <= Rational(t); b += Rational(1, 2)) out.emplace_back(a, b);
  }
  return out;
}

ConditionTally& VerificationReport::tally(std::string_view condition) {
  for (auto& c : tallies_) {
    if (c.condition == condition) return c;
  }
  tallies_.push_back({std::string(condition), 0, 0});
  return tallies_.back();
}

void VerificationReport::check(std::string_view condition, bool ok, int step,
                               const std::function<std::string()>& detail) {
  std::string id = prefix.empty() ? std::string(condition) : prefix + ":" + std::string(condition);
  ConditionTally& c = tally(id);
  if (ok) {
    ++c.passed;
    return;
  }
  ++c.failed;
  if (failures_.size() < kFailureCap) {
    failures_.push_back({id, step, detail ? detail() : std::string(),
                         context ? serialize_instance(*context) : std::string()});
  }
}

void VerificationReport::merge(const VerificationReport& other) {
  for (const auto& c : other.tallies_) {
    ConditionTally& mine = tally(c.condition);
    mine.passed += c.passed;
    mine.failed += c.failed;
  }
  for (const auto& f : other.failures_) {
    if (failures_.size() >= kFailureCap) break;
    failures_.push_back(f);
  }
  runs += other.runs;
}

bool VerificationReport::passed() const { return total_failed() == 0; }

std::int64_t VerificationReport::passed(std::string_view condition) const {
  for (const auto& c : tallies_) {
    if (c.condition == condition) return c.passed;
  }
  return 0;
}

std::int64_t VerificationReport::failed(std::string_view condition) const {
  for (const auto& c : tallies_) {
    if (c.condition == condition) return c.failed;
  }
  return 0;
}

std::int64_t VerificationReport::total_failed() const {
  std::int64_t n = 0;
  for (const auto& c : tallies_) n += c.failed;
  return n;
}

// ---------------------------------------------------------------------------
// Shared helpers
// ---------------------------------------------------------------------------

namespace {

bool same_params(const ProblemParams& a, const ProblemParams& b) {
  return a.problem == b.problem && a.t == b.t && a.colors == b.colors;
}

int finite_t(const ProblemParams& p, std::string_view who) {
  if (!p.t.finite()) throw UsageError(std::string(who) + " needs a finite t");
  return p.t.value();
}

int bit(Bit b) { return as_int(b); }

// x' for challenge requests of the level constructions: a correctly rejected
// true 1 becomes a 0.
Bit caught(Bit x, Bit y) { return x == Bit::one && y == Bit::one ? Bit::zero : x; }

std::string str(const Rational& r) { return to_string(r); }

const std::vector<int>& neighbours_of(const RequestPayload& p) { return std::get<VertexArrival>(p).neighbours; }

bool sets_intersect(const SetArrival& a, const SetArrival& b) {
  std::size_t i = 0, j = 0;
  while (i < a.elements.size() && j < b.elements.size()) {
    if (a.elements[i] == b.elements[j]) return true;
    if (a.elements[i] < b.elements[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  return false;
}

bool intervals_overlap(const IntervalArrival& a, const IntervalArrival& b) {
  return std::max(a.lo, b.lo) < std::min(a.hi, b.hi);
}

Instance induced(const Instance& inst, const std::vector<int>& indices) {
  Instance sub;
  sub.problem = inst.problem;
  sub.t = inst.t;
  sub.colors = inst.colors;
  std::map<int, int> pos;
  for (int k : indices) {
    const Request& r = inst.requests[static_cast<std::size_t>(k)];
    VertexArrival va;
    for (int j : neighbours_of(r.payload)) {
      auto it = pos.find(j);
      if (it != pos.end()) va.neighbours.push_back(it->second);
    }
    pos[k] = static_cast<int>(sub.size());
    sub.requests.push_back({va, r.truth, r.prediction});
  }
  return sub;
}

std::string describe_validity(const ValidityReport& v) {
  std::string out;
  for (const auto& s : v.violations) out += (out.empty() ? "" : "; ") + s;
  return out;
}

void check_target_valid(const CoupledTrace& tr, VerificationReport& rep) {
  ValidityReport v = validate_instance(tr.target);
  rep.check("target-valid", v.ok(), -1, [&] { return describe_validity(v); });
}

// Alg value of the level constructions: the source-side profit must be feasible.
std::int64_t source_profit(const CoupledTrace& tr, VerificationReport& rep) {
  Score s = score(tr.source, tr.source_decisions);
  rep.check("source-feasible", s.is_feasible(), -1, [] { return std::string("P-side selection infeasible"); });
  return s.is_feasible() ? s.value() : 0;
}

// The μ bounds shared by the level constructions, summed over forwarded requests.
void check_level_mu(const CoupledTrace& tr, VerificationReport& rep) {
  std::int64_t caught0 = 0, caught1 = 0;
  for (std::size_t i = 0; i < tr.source.size(); ++i) {
    if (tr.forwarded[i] < 0) continue;
    const Request& r = tr.source.requests[i];
    int xy = bit(r.truth) * bit(tr.source_decisions[i]);
    caught0 += xy * (1 - bit(r.prediction));
    caught1 += xy * bit(r.prediction);
  }
  ErrorPair p = compute_errors(tr.source);
  ErrorPair q = compute_errors(tr.target);
  rep.check("mu0-bound", q.mu0 <= p.mu0 - caught0, -1, [&] {
    return "mu0(I')=" + std::to_string(q.mu0) + " > " + std::to_string(p.mu0) + "-" + std::to_string(caught0);
  });
  rep.check("mu1-bound", q.mu1 <= p.mu1 + caught1, -1, [&] {
    return "mu1(I')=" + std::to_string(q.mu1) + " > " + std::to_string(p.mu1) + "+" + std::to_string(caught1);
  });
}

std::int64_t caught_predicted(const CoupledTrace& tr) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < tr.source.size(); ++i) {
    if (tr.forwarded[i] < 0) continue;
    const Request& r = tr.source.requests[i];
    s += bit(r.truth) * bit(tr.source_decisions[i]) * bit(r.prediction);
  }
  return s;
}

std::vector<Rational> alphas_of(const VerifyOptions& o, int t) {
  auto grid = o.alpha_beta.empty() ? boundary_grid(t) : o.alpha_beta;
  std::vector<Rational> out;
  for (const auto& [a, b] : grid) {
    if (std::find(out.begin(), out.end(), a) == out.end()) out.push_back(a);
  }
  return out;
}

}  // namespace

void check_strict(const CoupledTrace& tr, VerificationReport& rep) {
  Score alg_p = score(tr.source, tr.source_decisions);
  Score alg_q = score(tr.target, tr.target_decisions);
  rep.check("R1", profit_leq(alg_q, alg_p), -1,
            [&] { return "Alg_Q=" + alg_q.to_string() + " > Alg_P=" + alg_p.to_string(); });
  std::int64_t opt_p = brute_force_opt(tr.source).value;
  std::int64_t opt_q = brute_force_opt(tr.target).value;
  rep.check("R2", opt_p <= opt_q, -1,
            [&] { return "Opt_P=" + std::to_string(opt_p) + " > Opt_Q=" + std::to_string(opt_q); });
  ErrorPair p = compute_errors(tr.source);
  ErrorPair q = compute_errors(tr.target);
  rep.check("R3", q.mu0 <= p.mu0, -1,
            [&] { return "mu0(Q)=" + std::to_string(q.mu0) + " > mu0(P)=" + std::to_string(p.mu0); });
  rep.check("R4", q.mu1 <= p.mu1, -1,
            [&] { return "mu1(Q)=" + std::to_string(q.mu1) + " > mu1(P)=" + std::to_string(p.mu1); });
  check_target_valid(tr, rep);
}

const CoupledTrace& innermost(const CoupledTrace& trace) {
  const CoupledTrace* t = &trace;
  while (t->inner) t = t->inner.get();
  return *t;
}

void Reduction::check_params(const ProblemParams& source, const ProblemParams& target) const {
  if (source.problem != this->source()) {
    throw UsageError(name() + " expects " + std::string(name_of(this->source())) + " instances");
  }
  if (!same_params(target, target_params(source))) {
    throw UsageError(name() + " does not support that target parameter");
  }
}

std::unique_ptr<CoupledSession> Reduction::build(const AlgorithmFactory& alg, const ProblemParams& source,
                                                 const std::optional<ProblemParams>& target) const {
  ProblemParams tgt = target ? *target : target_params(source);
  check_params(source, tgt);
  return attach(alg(tgt), source, tgt);
}

namespace {

// ---------------------------------------------------------------------------
// Request-by-request maps (the strict reductions)
// ---------------------------------------------------------------------------

using PayloadMap = std::function<RequestPayload(std::size_t i, const RequestPayload& payload, const Instance& so_far)>;

class MappedSession final : public CoupledSession {
 public:
  MappedSession(std::string name, ProblemParams s, ProblemParams t, std::unique_ptr<AlgorithmSession> inner,
                PayloadMap map)
      : CoupledSession(std::move(name), s, t, std::move(inner)), map_(std::move(map)) {}

 protected:
  Bit on_request(std::size_t i, const RequestPayload& payload, Bit prediction) override {
    return forward(i, map_(i, payload, trace_.source), prediction);
  }
  void on_finish() override {
    for (std::size_t i = 0; i < trace_.source.size(); ++i) {
      set_target_truth(static_cast<std::size_t>(trace_.forwarded[i]), trace_.source.requests[i].truth);
    }
  }

 private:
  PayloadMap map_;
};

struct StrictSpec {
  std::string name;
  ProblemKind source;
  ProblemKind target;
  std::function<ProblemParams(const ProblemParams&)> target_params;
  std::function<PayloadMap(const ProblemParams&, const ProblemParams&)> make_map;
  std::function<void(const CoupledTrace&, VerificationReport&)> extra;
  std::function<void(const ProblemParams&, const ProblemParams&)> check;
};

class StrictReduction final : public Reduction {
 public:
  explicit StrictReduction(StrictSpec spec) : spec_(std::move(spec)) {}

  std::string name() const override { return spec_.name; }
  ProblemKind source() const override { return spec_.source; }
  ProblemKind target() const override { return spec_.target; }
  ReductionKind kind() const override { return ReductionKind::strict; }

  ProblemParams target_params(const ProblemParams& s) const override { return spec_.target_params(s); }

  void check_params(const ProblemParams& s, const ProblemParams& t) const override {
    if (spec_.check) {
      if (s.problem != spec_.source || t.problem != spec_.target) {
        throw UsageError(name() + " expects " + std::string(name_of(spec_.source)) + " instances");
      }
      spec_.check(s, t);
      return;
    }
    Reduction::check_params(s, t);
  }

  std::unique_ptr<CoupledSession> attach(std::unique_ptr<AlgorithmSession> inner, const ProblemParams& s,
                                         const ProblemParams& t) const override {
    return std::make_unique<MappedSession>(spec_.name, s, t, std::move(inner), spec_.make_map(s, t));
  }

  void verify(const CoupledTrace& trace, const VerifyOptions&, VerificationReport& report) const override {
    check_strict(trace, report);
    if (spec_.extra) spec_.extra(trace, report);
  }

 private:
  StrictSpec spec_;
};

ProblemParams with_problem(ProblemParams p, ProblemKind k) {
  p.problem = k;
  p.colors = 0;
  return p;
}

PayloadMap complement_map() {
  return [](std::size_t i, const RequestPayload& payload, const Instance&) -> RequestPayload {
    const auto& nb = neighbours_of(payload);
    VertexArrival out;
    for (int j = 0; j < static_cast<int>(i); ++j) {
      if (!std::binary_search(nb.begin(), nb.end(), j)) out.neighbours.push_back(j);
    }
    return out;
  };
}

std::string flag(std::size_t vertex, int copy) {
  return "F" + std::to_string(vertex + 1) + "^" + std::to_string(copy);
}

// Structure of the flag construction: every set has t flags, every flag sits in
// at most two sets, and the intersection graph is the source graph.
void check_flags(const CoupledTrace& tr, VerificationReport& rep) {
  std::size_t t = static_cast<std::size_t>(tr.target.t.value());
  std::map<std::string, int> uses;
  for (std::size_t i = 0; i < tr.target.size(); ++i) {
    const auto& s = std::get<SetArrival>(tr.target.requests[i].payload);
    rep.check("set-size", s.elements.size() == t, static_cast<int>(i) + 1,
              [&] { return "|S_" + std::to_string(i + 1) + "|=" + std::to_string(s.elements.size()); });
    for (const auto& e : s.elements) ++uses[e];
  }
  for (const auto& [e, n] : uses) {
    rep.check("flag-multiplicity", n <= 2, -1, [&] { return e + " is in " + std::to_string(n) + " sets"; });
  }
  Graph g = conflict_graph(tr.target);
  for (int v = 0; v < g.size(); ++v) {
    rep.check("intersections", g.degree(v) <= static_cast<int>(t), v + 1,
              [&] { return "S_" + std::to_string(v + 1) + " meets " + std::to_string(g.degree(v)) + " sets"; });
  }
  rep.check("intersection-graph", g == build_graph(tr.source), -1,
            [] { return std::string("intersection graph differs from the source graph"); });
}

// ---------------------------------------------------------------------------
// BDIS_t -> ASG_t
// ---------------------------------------------------------------------------

class BdisToAsgSession final : public CoupledSession {
 public:
  using CoupledSession::CoupledSession;

 protected:
  Bit on_request(std::size_t i, const RequestPayload& payload, Bit prediction) override {
    for (int j : neighbours_of(payload)) {
      if (trace_.source_decisions[static_cast<std::size_t>(j)] == Bit::zero) {
        trace_.level[i] = 2;
        return Bit::one;
      }
    }
    trace_.level[i] = 1;
    return forward(i, Prompt{}, prediction);
  }
  void on_finish() override {
    for (std::size_t i = 0; i < trace_.source.size(); ++i) {
      if (trace_.forwarded[i] < 0) continue;
      set_target_truth(static_cast<std::size_t>(trace_.forwarded[i]),
                       caught(trace_.source.requests[i].truth, trace_.source_decisions[i]));
    }
  }
};

class BdisToAsg final : public Reduction {
 public:
  std::string name() const override { return "red_bdis_to_asg"; }
  ProblemKind source() const override { return ProblemKind::bdis; }
  ProblemKind target() const override { return ProblemKind::asg; }
  ReductionKind kind() const override { return ReductionKind::conditional; }

  ProblemParams target_params(const ProblemParams& s) const override {
    finite_t(s, name());
    return with_problem(s, ProblemKind::asg);
  }

  std::unique_ptr<CoupledSession> attach(std::unique_ptr<AlgorithmSession> inner, const ProblemParams& s,
                                         const ProblemParams& t) const override {
    return std::make_unique<BdisToAsgSession>(name(), s, t, std::move(inner));
  }

  void verify(const CoupledTrace& tr, const VerifyOptions& options, VerificationReport& rep) const override {
    const int t = tr.target.t.value();
    const std::size_t n = tr.source.size();
    for (const Rational& alpha : alphas_of(options, t)) {
      // Prefix sums of both sides, one check per revealed vertex.
      std::int64_t x1 = 0, rejected_truth = 0, acc = 0, served = 0, caught1 = 0;
      for (std::size_t i = 0; i < n; ++i) {
        const Request& r = tr.source.requests[i];
        rejected_truth += 1 - bit(r.truth);
        if (tr.level[i] == 1) {
          int x = bit(r.truth), y = bit(tr.source_decisions[i]), xh = bit(r.prediction);
          int xp = bit(caught(r.truth, tr.source_decisions[i]));
          x1 += xp;
          acc += 1 - y;
          served += y + t * xp * (1 - y);
          caught1 += x * y * xh;
        }
        Rational lhs = alpha * x1 + rejected_truth;
        Rational rhs = alpha * acc + served - caught1;
        rep.check("eq9", lhs <= rhs, static_cast<int>(i) + 1, [&] {
          return "alpha=" + str(alpha) + " LHS=" + str(lhs) + " RHS=" + str(rhs);
        });
      }
    }
    std::int64_t alg_p = source_profit(tr, rep);
    std::int64_t opt_p = brute_force_opt(tr.source).value;
    std::int64_t opt_q = brute_force_opt(tr.target).value;
    Score alg_q = score(tr.target, tr.target_decisions);
    std::int64_t c = caught_predicted(tr);
    for (const Rational& alpha : alphas_of(options, t)) {
      Rational lhs = alpha * opt_q + opt_p;
      Rational rhs = alpha * alg_p + alg_q.value() - c;
      rep.check("eq7", lhs <= rhs, -1,
                [&] { return "alpha=" + str(alpha) + " LHS=" + str(lhs) + " RHS=" + str(rhs); });
    }
    check_level_mu(tr, rep);
    check_target_valid(tr, rep);
  }
};

// ---------------------------------------------------------------------------
// ASG_t -> BDIS_t
// ---------------------------------------------------------------------------

class AsgToBdisSession final : public CoupledSession {
 public:
  using CoupledSession::CoupledSession;

 protected:
  Bit on_request(std::size_t i, const RequestPayload&, Bit prediction) override {
    return forward(i, VertexArrival{}, prediction);
  }
  void on_finish() override {
    const int t = target_params().t.value();
    const std::size_t n = trace_.source.size();
    std::vector<Bit> xp(n);
    for (std::size_t i = 0; i < n; ++i) {
      Bit x = trace_.source.requests[i].truth, y = trace_.source_decisions[i];
      xp[i] = x == Bit::zero && y == Bit::zero ? Bit::one : x;
      set_target_truth(static_cast<std::size_t>(trace_.forwarded[i]), xp[i]);
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (xp[i] == Bit::zero) continue;
      int leaves = trace_.source_decisions[i] == Bit::zero ? t : 1;
      for (int p = 0; p < leaves; ++p) {
        emit_block(i, VertexArrival{{trace_.forwarded[i]}}, Bit::zero, Bit::zero);
      }
    }
  }
};

class AsgToBdis final : public Reduction {
 public:
  std::string name() const override { return "red_asg_to_bdis"; }
  ProblemKind source() const override { return ProblemKind::asg; }
  ProblemKind target() const override { return ProblemKind::bdis; }
  ReductionKind kind() const override { return ReductionKind::conditional; }

  ProblemParams target_params(const ProblemParams& s) const override {
    finite_t(s, name());
    return with_problem(s, ProblemKind::bdis);
  }

  std::unique_ptr<CoupledSession> attach(std::unique_ptr<AlgorithmSession> inner, const ProblemParams& s,
                                         const ProblemParams& t) const override {
    return std::make_unique<AsgToBdisSession>(name(), s, t, std::move(inner));
  }

  void verify(const CoupledTrace& tr, const VerifyOptions& options, VerificationReport& rep) const override {
    const int t = tr.target.t.value();
    const std::size_t n = tr.source.size();
    const auto grid = options.alpha_beta.empty() ? boundary_grid(t) : options.alpha_beta;
    std::vector<std::vector<int>> part(n);
    for (std::size_t k = 0; k < tr.target.size(); ++k) part[static_cast<std::size_t>(tr.owner[k])].push_back(static_cast<int>(k));

    std::int64_t shift0 = 0, shift1 = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const Request& r = tr.source.requests[i];
      int x = bit(r.truth), y = bit(tr.source_decisions[i]), xh = bit(r.prediction);
      shift0 += (1 - x) * (1 - y) * (1 - xh);
      shift1 += (1 - x) * (1 - y) * xh;

      const std::vector<int>& h = part[i];
      std::vector<int> accepted;
      for (int k : h) {
        if (tr.target_decisions[static_cast<std::size_t>(k)] == Bit::zero) accepted.push_back(k);
      }
      bool alg_ok = selection_feasible(tr.target, accepted);
      std::int64_t alg_h = static_cast<std::int64_t>(accepted.size());
      std::int64_t opt_h = brute_force_opt(induced(tr.target, h)).value;
      std::int64_t size_h = static_cast<std::int64_t>(h.size());

      for (const auto& [alpha, beta] : grid) {
        Rational d = Rational(size_h - (1 - x) * (1 - y)) + (alpha - 1) * x;
        Rational lhs1(y + t * x * (1 - y));
        // An infeasible Alg(H') is -inf, which satisfies C1 outright.
        Rational rhs1 = d - alpha * alg_h - beta * ((1 - x) * (1 - y) * (1 - xh));
        rep.check("C1", !alg_ok || lhs1 <= rhs1, static_cast<int>(i) + 1, [&] {
          return "alpha=" + str(alpha) + " beta=" + str(beta) + " x=" + std::to_string(x) + " y=" +
                 std::to_string(y) + " pred=" + std::to_string(xh) + " LHS=" + str(lhs1) + " RHS=" + str(rhs1);
        });
        Rational lhs2 = d - opt_h;
        Rational rhs2 = alpha * x;
        rep.check("C2", lhs2 <= rhs2, static_cast<int>(i) + 1, [&] {
          return "alpha=" + str(alpha) + " x=" + std::to_string(x) + " y=" + std::to_string(y) +
                 " LHS=" + str(lhs2) + " RHS=" + str(rhs2);
        });
      }
    }
    ErrorPair p = compute_errors(tr.source);
    ErrorPair q = compute_errors(tr.target);
    rep.check("mu0-exact", q.mu0 == p.mu0 + shift0, -1, [&] {
      return "mu0(I')=" + std::to_string(q.mu0) + " != " + std::to_string(p.mu0) + "+" + std::to_string(shift0);
    });
    rep.check("mu1-exact", q.mu1 == p.mu1 - shift1, -1, [&] {
      return "mu1(I')=" + std::to_string(q.mu1) + " != " + std::to_string(p.mu1) + "-" + std::to_string(shift1);
    });
    check_target_valid(tr, rep);
  }
};

// ---------------------------------------------------------------------------
// BDIS_t -> Sch_t
// ---------------------------------------------------------------------------

class BdisToSchSession final : public CoupledSession {
 public:
  BdisToSchSession(std::string name, ProblemParams s, ProblemParams t, std::unique_ptr<AlgorithmSession> inner)
      : CoupledSession(std::move(name), s, t, std::move(inner)), width_(t.t.value()) {}

 protected:
  Bit on_request(std::size_t i, const RequestPayload& payload, Bit prediction) override {
    for (int j : neighbours_of(payload)) {
      if (trace_.source_decisions[static_cast<std::size_t>(j)] == Bit::zero) {
        trace_.level[i] = 2;
        return Bit::one;
      }
    }
    trace_.level[i] = 1;
    Rational lo = cursor_;
    cursor_ += width_;
    return forward(i, IntervalArrival{lo, lo + width_}, prediction);
  }
  void on_finish() override {
    const std::size_t n = trace_.source.size();
    std::vector<std::size_t> hit;
    for (std::size_t i = 0; i < n; ++i) {
      if (trace_.forwarded[i] < 0) continue;
      Bit xp = caught(trace_.source.requests[i].truth, trace_.source_decisions[i]);
      set_target_truth(static_cast<std::size_t>(trace_.forwarded[i]), xp);
      if (xp == Bit::one) hit.push_back(i);
    }
    // t unit intervals inside each challenge that Opt rejects.
    for (std::size_t i : hit) {
      Rational lo = std::get<IntervalArrival>(trace_.target.requests[static_cast<std::size_t>(trace_.forwarded[i])].payload).lo;
      for (int l = 1; l <= width_; ++l) {
        emit_block(i, IntervalArrival{lo + (l - 1), lo + l}, Bit::zero, Bit::zero);
      }
    }
  }

 private:
  int width_;
  Rational cursor_{0};
};

class BdisToSch final : public Reduction {
 public:
  std::string name() const override { return "red_bdis_to_sch"; }
  ProblemKind source() const override { return ProblemKind::bdis; }
  ProblemKind target() const override { return ProblemKind::sch; }
  ReductionKind kind() const override { return ReductionKind::conditional; }

  ProblemParams target_params(const ProblemParams& s) const override {
    finite_t(s, name());
    return with_problem(s, ProblemKind::sch);
  }

  std::unique_ptr<CoupledSession> attach(std::unique_ptr<AlgorithmSession> inner, const ProblemParams& s,
                                         const ProblemParams& t) const override {
    return std::make_unique<BdisToSchSession>(name(), s, t, std::move(inner));
  }

  void verify(const CoupledTrace& tr, const VerifyOptions&, VerificationReport& rep) const override {
    Score alg_p = score(tr.source, tr.source_decisions);
    Score alg_q = score(tr.target, tr.target_decisions);
    rep.check("(i)", profit_leq(alg_q, alg_p), -1,
              [&] { return "Alg_Sch=" + alg_q.to_string() + " > Alg_BDIS=" + alg_p.to_string(); });
    std::int64_t opt_p = brute_force_opt(tr.source).value;
    std::int64_t opt_q = brute_force_opt(tr.target).value;
    std::int64_t c = caught_predicted(tr);
    rep.check("(ii)", opt_p <= opt_q - c, -1, [&] {
      return "Opt_BDIS=" + std::to_string(opt_p) + " > Opt_Sch=" + std::to_string(opt_q) + "-" + std::to_string(c);
    });
    std::vector<IntervalArrival> challenges;
    for (std::size_t k = 0; k < tr.target.size(); ++k) {
      if (!tr.block[k]) challenges.push_back(std::get<IntervalArrival>(tr.target.requests[k].payload));
    }
    bool disjoint = true;
    for (std::size_t a = 0; a < challenges.size(); ++a) {
      for (std::size_t b = a + 1; b < challenges.size(); ++b) disjoint = disjoint && !intervals_overlap(challenges[a], challenges[b]);
    }
    rep.check("challenge-disjoint", disjoint, -1, [] { return std::string("two challenge intervals overlap"); });
    check_level_mu(tr, rep);
    check_target_valid(tr, rep);
  }
};

// ---------------------------------------------------------------------------
// MCS_{k,T} -> BDIS_t, t = ceil(T / k)
// ---------------------------------------------------------------------------

class McsToBdisSession final : public CoupledSession {
 public:
  McsToBdisSession(std::string name, ProblemParams s, ProblemParams t, std::unique_ptr<AlgorithmSession> inner)
      : CoupledSession(std::move(name), s, t, std::move(inner)) {}

 protected:
  Bit on_request(std::size_t i, const RequestPayload& payload, Bit prediction) override {
    const int k = source_params().colors;
    const auto& nb = neighbours_of(payload);
    for (int l = 1; l <= k; ++l) {
      bool free = true;
      for (int j : nb) {
        auto ju = static_cast<std::size_t>(j);
        if (trace_.level[ju] == l && trace_.source_decisions[ju] == Bit::zero) {
          free = false;
          break;
        }
      }
      if (free) {
        trace_.level[i] = l;
        return forward(i, VertexArrival{}, prediction);
      }
    }
    trace_.level[i] = k + 1;
    return Bit::one;
  }
  void on_finish() override {
    const int t = target_params().t.value();
    const std::size_t n = trace_.source.size();
    std::vector<std::size_t> hit;
    for (std::size_t i = 0; i < n; ++i) {
      if (trace_.forwarded[i] < 0) continue;
      Bit xp = caught(trace_.source.requests[i].truth, trace_.source_decisions[i]);
      set_target_truth(static_cast<std::size_t>(trace_.forwarded[i]), xp);
      if (xp == Bit::one && trace_.source_decisions[i] == Bit::zero) hit.push_back(i);
    }
    for (std::size_t i : hit) {
      for (int p = 0; p < t; ++p) emit_block(i, VertexArrival{{trace_.forwarded[i]}}, Bit::zero, Bit::zero);
    }
  }
};

class McsToBdis final : public Reduction {
 public:
  std::string name() const override { return "red_mcs_to_bdis"; }
  ProblemKind source() const override { return ProblemKind::mcs; }
  ProblemKind target() const override { return ProblemKind::bdis; }
  ReductionKind kind() const override { return ReductionKind::conditional; }

  ProblemParams target_params(const ProblemParams& s) const override {
    int big_t = finite_t(s, name());
    if (s.colors < 1) throw UsageError(name() + " needs k >= 1");
    return {ProblemKind::bdis, Bound::of((big_t + s.colors - 1) / s.colors), 0};
  }

  std::unique_ptr<CoupledSession> attach(std::unique_ptr<AlgorithmSession> inner, const ProblemParams& s,
                                         const ProblemParams& t) const override {
    return std::make_unique<McsToBdisSession>(name(), s, t, std::move(inner));
  }

  void verify(const CoupledTrace& tr, const VerifyOptions&, VerificationReport& rep) const override {
    Score alg_p = score(tr.source, tr.source_decisions);
    Score alg_q = score(tr.target, tr.target_decisions);
    rep.check("(A)", profit_leq(alg_q, alg_p), -1,
              [&] { return "Alg_BDIS=" + alg_q.to_string() + " > Alg_MCS=" + alg_p.to_string(); });
    std::int64_t opt_p = brute_force_opt(tr.source).value;
    std::int64_t opt_q = brute_force_opt(tr.target).value;
    std::int64_t c = caught_predicted(tr);
    rep.check("(B)", opt_p <= opt_q - c, -1, [&] {
      return "Opt_MCS=" + std::to_string(opt_p) + " > Opt_BDIS=" + std::to_string(opt_q) + "-" + std::to_string(c);
    });
    // Accepted vertices sharing a level form an independent set, so one colour per level suffices.
    Graph g = build_graph(tr.source);
    bool levels_ok = true;
    for (std::size_t a = 0; a < tr.source.size(); ++a) {
      if (tr.source_decisions[a] != Bit::zero) continue;
      for (int b : g.neighbours(static_cast<int>(a))) {
        auto bu = static_cast<std::size_t>(b);
        if (tr.source_decisions[bu] == Bit::zero && tr.level[bu] == tr.level[a]) levels_ok = false;
      }
    }
    rep.check("level-independent", levels_ok, -1, [] { return std::string("adjacent accepted vertices share a level"); });
    check_level_mu(tr, rep);
    check_target_valid(tr, rep);
  }
};

// ---------------------------------------------------------------------------
// Composition and identity
// ---------------------------------------------------------------------------

class Composite final : public Reduction {
 public:
  Composite(ReductionPtr first, ReductionPtr second) : first_(std::move(first)), second_(std::move(second)) {}

  std::string name() const override { return first_->name() + "+" + second_->name(); }
  ProblemKind source() const override { return first_->source(); }
  ProblemKind target() const override { return second_->target(); }
  ReductionKind kind() const override {
    return first_->kind() == ReductionKind::strict && second_->kind() == ReductionKind::strict
               ? ReductionKind::strict
               : ReductionKind::conditional;
  }
  Rational constant() const override { return first_->constant() + second_->constant(); }

  ProblemParams target_params(const ProblemParams& s) const override {
    return second_->target_params(first_->target_params(s));
  }

  void check_params(const ProblemParams& s, const ProblemParams& t) const override {
    ProblemParams mid = first_->target_params(s);
    first_->check_params(s, mid);
    second_->check_params(mid, t);
  }

  std::unique_ptr<CoupledSession> attach(std::unique_ptr<AlgorithmSession> inner, const ProblemParams& s,
                                         const ProblemParams& t) const override {
    ProblemParams mid = first_->target_params(s);
    return first_->attach(second_->attach(std::move(inner), mid, t), s, mid);
  }

  std::unique_ptr<CoupledSession> build(const AlgorithmFactory& alg, const ProblemParams& s,
                                        const std::optional<ProblemParams>& t) const override {
    ProblemParams mid = first_->target_params(s);
    first_->check_params(s, mid);
    return first_->attach(second_->build(alg, mid, t), s, mid);
  }

  void verify(const CoupledTrace& tr, const VerifyOptions& options, VerificationReport& rep) const override {
    if (!tr.inner) throw UsageError("composed trace lacks its inner layer");
    std::string outer = rep.prefix;
    auto scoped = [&](const std::string& p) { return outer.empty() ? p : outer + ":" + p; };
    rep.prefix = scoped(first_->name());
    first_->verify(tr, options, rep);
    rep.prefix = scoped(second_->name());
    second_->verify(*tr.inner, options, rep);
    rep.prefix = outer;
    if (kind() == ReductionKind::strict) {
      // End to end over the whole chain.
      CoupledTrace whole = tr;
      const CoupledTrace& last = innermost(tr);
      whole.target = last.target;
      whole.target_decisions = last.target_decisions;
      rep.prefix = scoped("chain");
      check_strict(whole, rep);
      rep.prefix = outer;
    }
  }

 private:
  ReductionPtr first_;
  ReductionPtr second_;
};

bool mm_target_ok(const ProblemParams& s, const ProblemParams& t) {
  if (!s.t.finite()) return !t.t.finite();
  if (!t.t.finite()) return true;
  return t.t.value() / 2 + 1 >= s.t.value();
}

}  // namespace

// ---------------------------------------------------------------------------
// Registry
// ---------------------------------------------------------------------------

ReductionPtr red_bdis_to_asg() {
  static const ReductionPtr r = std::make_shared<BdisToAsg>();
  return r;
}

ReductionPtr red_asg_to_bdis() {
  static const ReductionPtr r = std::make_shared<AsgToBdis>();
  return r;
}

ReductionPtr red_sp_to_bdis() {
  static const ReductionPtr r = std::make_shared<StrictReduction>(StrictSpec{
      "red_sp_to_bdis", ProblemKind::sp, ProblemKind::bdis,
      [](const ProblemParams& s) { return with_problem(s, ProblemKind::bdis); },
      [](const ProblemParams&, const ProblemParams&) -> PayloadMap {
        return [](std::size_t i, const RequestPayload& payload, const Instance& so_far) -> RequestPayload {
          const auto& s = std::get<SetArrival>(payload);
          VertexArrival out;
          for (std::size_t j = 0; j < i; ++j) {
            if (sets_intersect(std::get<SetArrival>(so_far.requests[j].payload), s)) out.neighbours.push_back(static_cast<int>(j));
          }
          return out;
        };
      },
      nullptr, nullptr});
  return r;
}

ReductionPtr red_bdis_to_sp() {
  static const ReductionPtr r = std::make_shared<StrictReduction>(StrictSpec{
      "red_bdis_to_sp", ProblemKind::bdis, ProblemKind::sp,
      [](const ProblemParams& s) {
        finite_t(s, "red_bdis_to_sp");
        return with_problem(s, ProblemKind::sp);
      },
      [](const ProblemParams&, const ProblemParams& tgt) -> PayloadMap {
        const int t = tgt.t.value();
        auto degree = std::make_shared<std::vector<int>>();
        // S_i holds its own unused flags F_i^{l+1..t} and, for each earlier
        // neighbour v_j, the flag F_j^d where d is v_j's degree so far.
        return [t, degree](std::size_t i, const RequestPayload& payload, const Instance&) -> RequestPayload {
          const auto& nb = neighbours_of(payload);
          int l = static_cast<int>(nb.size());
          if (l > t) throw UsageError("source vertex exceeds the degree bound");
          SetArrival out;
          for (int j : nb) {
            int d = ++(*degree)[static_cast<std::size_t>(j)];
            if (d > t) throw UsageError("source vertex exceeds the degree bound");
            out.elements.push_back(flag(static_cast<std::size_t>(j), d));
          }
          for (int p = l + 1; p <= t; ++p) out.elements.push_back(flag(i, p));
          degree->push_back(l);
          std::sort(out.elements.begin(), out.elements.end());
          return out;
        };
      },
      check_flags, nullptr});
  return r;
}

ReductionPtr red_sch_to_bdis() {
  static const ReductionPtr r = std::make_shared<StrictReduction>(StrictSpec{
      "red_sch_to_bdis", ProblemKind::sch, ProblemKind::bdis,
      [](const ProblemParams& s) { return with_problem(s, ProblemKind::bdis); },
      [](const ProblemParams&, const ProblemParams&) -> PayloadMap {
        return [](std::size_t i, const RequestPayload& payload, const Instance& so_far) -> RequestPayload {
          const auto& s = std::get<IntervalArrival>(payload);
          VertexArrival out;
          for (std::size_t j = 0; j < i; ++j) {
            if (intervals_overlap(std::get<IntervalArrival>(so_far.requests[j].payload), s)) out.neighbours.push_back(static_cast<int>(j));
          }
          return out;
        };
      },
      nullptr, nullptr});
  return r;
}

ReductionPtr red_bdis_to_sch() {
  static const ReductionPtr r = std::make_shared<BdisToSch>();
  return r;
}

ReductionPtr red_cli_to_bdis() {
  static const ReductionPtr r = std::make_shared<StrictReduction>(StrictSpec{
      "red_cli_to_bdis", ProblemKind::cli, ProblemKind::bdis,
      [](const ProblemParams& s) { return with_problem(s, ProblemKind::bdis); },
      [](const ProblemParams&, const ProblemParams&) { return complement_map(); }, nullptr, nullptr});
  return r;
}

ReductionPtr red_bdis_to_cli() {
  static const ReductionPtr r = std::make_shared<StrictReduction>(StrictSpec{
      "red_bdis_to_cli", ProblemKind::bdis, ProblemKind::cli,
      [](const ProblemParams& s) {
        ProblemParams out = with_problem(s, ProblemKind::cli);
        if (s.t.finite()) out.t = Bound::of(s.t.value() + 1);
        return out;
      },
      [](const ProblemParams&, const ProblemParams&) { return complement_map(); }, nullptr, nullptr});
  return r;
}

ReductionPtr red_mcs_to_bdis() {
  static const ReductionPtr r = std::make_shared<McsToBdis>();
  return r;
}

ReductionPtr red_mat_to_sp() {
  static const ReductionPtr r = std::make_shared<StrictReduction>(StrictSpec{
      "red_mat_to_sp", ProblemKind::mm, ProblemKind::sp,
      [](const ProblemParams& s) {
        ProblemParams out = with_problem(s, ProblemKind::sp);
        if (s.t.finite()) out.t = Bound::of(s.t.value() == 1 ? 1 : 2 * (s.t.value() - 1));
        return out;
      },
      [](const ProblemParams&, const ProblemParams&) -> PayloadMap {
        return [](std::size_t, const RequestPayload& payload, const Instance&) -> RequestPayload {
          const auto& e = std::get<EdgeArrival>(payload);
          SetArrival out{{e.u, e.v}};
          std::sort(out.elements.begin(), out.elements.end());
          return out;
        };
      },
      nullptr,
      [](const ProblemParams& s, const ProblemParams& t) {
        if (!mm_target_ok(s, t)) {
          throw UsageError("red_mat_to_sp needs floor(t/2)+1 >= the source degree bound");
        }
      }});
  return r;
}

ReductionPtr identity_reduction(ProblemKind problem) {
  std::string name = "identity_" + std::string(name_of(problem));
  if (problem == ProblemKind::asg) throw UsageError("identity is only provided for the maximization problems");
  return std::make_shared<StrictReduction>(StrictSpec{
      name, problem, problem, [](const ProblemParams& s) { return s; },
      [](const ProblemParams&, const ProblemParams&) -> PayloadMap {
        return [](std::size_t, const RequestPayload& payload, const Instance&) { return payload; };
      },
      nullptr, nullptr});
}

ReductionPtr compose(ReductionPtr first, ReductionPtr second) {
  if (!first || !second) throw UsageError("compose needs two reductions");
  if (first->target() != second->source()) {
    throw UsageError("cannot compose " + first->name() + " with " + second->name() + ": " +
                     std::string(name_of(first->target())) + " is not " + std::string(name_of(second->source())));
  }
  return std::make_shared<Composite>(std::move(first), std::move(second));
}

const std::vector<ReductionPtr>& all_reductions() {
  static const std::vector<ReductionPtr> list = {
      red_bdis_to_asg(), red_asg_to_bdis(), red_sp_to_bdis(),  red_bdis_to_sp(), red_sch_to_bdis(),
      red_bdis_to_sch(), red_cli_to_bdis(), red_bdis_to_cli(), red_mcs_to_bdis(), red_mat_to_sp(),
  };
  return list;
}

ReductionPtr reduction_by_name(std::string_view name) {
  std::size_t plus = name.find('+');
  if (plus != std::string_view::npos) {
    return compose(reduction_by_name(name.substr(0, plus)), reduction_by_name(name.substr(plus + 1)));
  }
  for (const auto& r : all_reductions()) {
    if (r->name() == name) return r;
  }
  throw UsageError("unknown reduction '" + std::string(name) + "'");
}

CoupledTrace couple(const Reduction& reduction, const AlgorithmFactory& alg, const Instance& source,
                    const CoupleOptions& options) {
  if (source.problem != reduction.source()) {
    throw UsageError(reduction.name() + " expects " + std::string(name_of(reduction.source())) + " instances");
  }
  if (options.validate_source) {
    ValidityReport v = validate_instance(source);
    if (!v.ok()) throw UsageError("invalid source instance: " + describe_validity(v));
  }
  auto session = reduction.build(alg, ProblemParams::of(source), options.target);
  drive(*session, source);
  return session->trace();
}

void verify_trace(const Reduction& reduction, const CoupledTrace& trace, const VerifyOptions& options,
                  VerificationReport& report) {
  const Instance* saved = report.context;
  report.context = &trace.source;
  reduction.verify(trace, options, report);
  report.context = saved;
  ++report.runs;
}

}  // namespace onred
