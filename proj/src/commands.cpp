#include "onred/commands.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "onred/adversary.hpp"
#include "onred/algorithms.hpp"
#include "onred/competitiveness.hpp"
#include "onred/instance_format.hpp"
#include "onred/problems.hpp"

namespace onred {

namespace {

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    std::size_t at = s.find(sep, start);
    out.push_back(s.substr(start, at == std::string_view::npos ? std::string_view::npos : at - start));
    if (at == std::string_view::npos) break;
    start = at + 1;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

std::vector<Rational> rational_list(std::string_view s) {
  std::vector<Rational> out;
  for (auto part : split(s, ',')) out.push_back(parse_rational(trim(part)));
  return out;
}

std::vector<Rational> steps(const Rational& from, const Rational& to) {
  std::vector<Rational> out;
  for (Rational v = from; v <= to; v += Rational(1, 2)) out.push_back(v);
  return out;
}

std::string_view node_label(ProblemKind k) {
  switch (k) {
    case ProblemKind::asg: return "ASG_t";
    case ProblemKind::bdis: return "BDIS_t";
    case ProblemKind::sp: return "SP_t";
    case ProblemKind::sch: return "Sch_t";
    case ProblemKind::cli: return "Cli_t";
    case ProblemKind::mcs: return "MCS_{k,kt}";
    case ProblemKind::mm: return "MM_t";
  }
  return "?";
}

}  // namespace

VerifyPlan verify_plan(const Reduction& reduction, int n_max, Bound t, int k) {
  VerifyPlan plan;
  plan.corpus.problem = reduction.source();
  plan.corpus.n_max = n_max;
  plan.corpus.t = t;
  plan.corpus.mode = PredictionMode::all;
  if (reduction.source() == ProblemKind::mcs) {
    if (k < 1) throw UsageError("mcs needs --k >= 1");
    if (!t.finite()) throw UsageError("mcs reductions need a finite t");
    plan.corpus.colors = k;
    plan.corpus.t = Bound::of(k * t.value());
  }
  if (reduction.source() == ProblemKind::mm && t.finite()) {
    plan.corpus.t = Bound::of(t.value() / 2 + 1);
    if (reduction.name() == "red_mat_to_sp") plan.target = ProblemParams{ProblemKind::sp, t, 0};
  }
  return plan;
}

std::vector<std::pair<Rational, Rational>> parse_alpha_beta_grid(std::string_view spec, Bound t) {
  spec = trim(spec);
  if (spec.empty() || spec == "alpha+beta=t") return t.finite() ? boundary_grid(t.value()) : decltype(boundary_grid(1)){};
  if (spec == "alpha+beta<=t") {
    if (!t.finite()) throw UsageError("grid alpha+beta<=t needs a finite t");
    return triangle_grid(t.value());
  }
  std::vector<std::pair<Rational, Rational>> out;
  for (auto pair : split(spec, ',')) {
    auto ab = split(pair, ':');
    if (ab.size() != 2) throw UsageError("grid pairs are written alpha:beta, got '" + std::string(pair) + "'");
    out.emplace_back(parse_rational(trim(ab[0])), parse_rational(trim(ab[1])));
  }
  return out;
}

FrontierGrids parse_frontier_grid(std::string_view spec, Bound t) {
  FrontierGrids g;
  spec = trim(spec);
  if (!spec.empty()) {
    for (auto part : split(spec, ';')) {
      auto eq = part.find('=');
      if (eq == std::string_view::npos) throw UsageError("frontier grid axes are written name=v1,v2");
      auto name = trim(part.substr(0, eq));
      auto values = rational_list(part.substr(eq + 1));
      if (name == "alpha") {
        g.alpha = values;
      } else if (name == "beta") {
        g.beta = values;
      } else if (name == "gamma") {
        g.gamma = values;
      } else {
        throw UsageError("unknown grid axis '" + std::string(name) + "'");
      }
    }
  }
  if (g.alpha.empty() || g.beta.empty()) {
    if (!t.finite()) throw UsageError("default frontier grids need a finite t");
  }
  if (g.alpha.empty()) g.alpha = steps(Rational(1), Rational(t.value()));
  if (g.beta.empty()) g.beta = steps(Rational(0), Rational(t.value()));
  if (g.gamma.empty()) g.gamma = steps(Rational(0), Rational(1));
  return g;
}

std::vector<std::string> parse_algorithm_list(std::string_view spec, ProblemKind problem) {
  spec = trim(spec);
  if (spec.empty() || spec == "all") return algorithms_for(problem);
  std::vector<std::string> out;
  for (auto part : split(spec, ',')) {
    std::string name(trim(part));
    auto allowed = algorithms_for(problem);
    if (std::find(allowed.begin(), allowed.end(), name) == allowed.end()) {
      algorithm_by_name(name);  // unknown names throw here
      throw UsageError(name + " is not defined for " + std::string(name_of(problem)));
    }
    out.push_back(name);
  }
  return out;
}

VerificationReport verify_corpus(const Reduction& reduction, const VerifyPlan& plan,
                                 const std::vector<std::string>& algorithms, const VerifyOptions& options) {
  std::vector<AlgorithmFactory> factories;
  for (const auto& name : algorithms) factories.push_back(algorithm_by_name(name));
  VerificationReport report;
  CoupleOptions couple_options{plan.target, false};
  enumerate_instances(plan.corpus, [&](const Instance& inst) {
    for (const auto& f : factories) {
      CoupledTrace trace = couple(reduction, f, inst, couple_options);
      verify_trace(reduction, trace, options, report);
    }
  });
  return report;
}

std::string corpus_id(const CorpusSpec& spec) {
  std::ostringstream out;
  out << name_of(spec.problem) << " n<=" << spec.n_max << " t=" << spec.t.to_string();
  if (spec.problem == ProblemKind::mcs) out << " k=" << spec.colors;
  return out.str();
}

std::string format_report(const VerificationReport& report, std::string_view reduction, std::string_view corpus) {
  std::ostringstream out;
  out << "reduction,corpus,condition,passed,failed\n";
  for (const auto& c : report.tallies()) {
    out << reduction << ',' << corpus << ',' << c.condition << ',' << c.passed << ',' << c.failed << '\n';
  }
  out << "# runs=" << report.runs << " failed=" << report.total_failed() << '\n';
  for (const auto& f : report.failures()) {
    out << "# FAIL " << f.condition << " step=" << f.step << ": " << f.detail << '\n';
    std::istringstream lines(f.instance);
    for (std::string line; std::getline(lines, line);) out << "#   " << line << '\n';
  }
  return out.str();
}

CommandResult cmd_evaluate(std::string_view instance_text, std::string_view algorithm) {
  ParsedInstance parsed = parse_instance(instance_text);
  if (!parsed.validity.ok()) {
    std::string why;
    for (const auto& v : parsed.validity.violations) why += "\n  " + v;
    throw UsageError("invalid instance:" + why);
  }
  const Instance& inst = parsed.instance;
  RunResult run = run_algorithm(algorithm_by_name(algorithm), inst);
  std::ostringstream out;
  out << "problem,t,n,algorithm,opt,alg,mu0,mu1,feasible\n";
  out << name_of(inst.problem) << ',' << inst.t.to_string() << ',' << inst.size() << ',' << algorithm << ','
      << run.record.opt_value << ',' << run.record.alg_score.to_string() << ',' << run.record.errors.mu0 << ','
      << run.record.errors.mu1 << ',' << (run.record.alg_score.is_feasible() ? 1 : 0) << '\n';
  return {0, out.str()};
}

CommandResult cmd_verify(std::string_view reduction, int n_max, Bound t, int k, std::string_view algorithms,
                         std::string_view grid) {
  ReductionPtr r = reduction_by_name(reduction);
  VerifyPlan plan = verify_plan(*r, n_max, t, k);
  VerifyOptions options;
  options.alpha_beta = parse_alpha_beta_grid(grid, t);
  auto algs = parse_algorithm_list(algorithms, r->target());
  VerificationReport report = verify_corpus(*r, plan, algs, options);
  return {report.passed() ? 0 : 1, format_report(report, r->name(), corpus_id(plan.corpus))};
}

CommandResult cmd_adversary(std::string_view algorithm, int t, const Rational& alpha, const Rational& gamma,
                            std::span<const int> n_list) {
  auto rows = impossibility_growth(algorithm_by_name(algorithm), t, alpha, gamma, n_list);
  std::ostringstream out;
  out << "algorithm,t,alpha,gamma,n,opt,alg,mu0,mu1,deficit,floor,holds,increasing\n";
  int status = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const GrowthRow& r = rows[i];
    bool holds = r.unbounded || r.deficit >= r.floor;
    bool increasing = true;
    if (i > 0 && r.n > rows[i - 1].n && !r.unbounded && !rows[i - 1].unbounded) {
      increasing = r.deficit > rows[i - 1].deficit;
    }
    if (!holds || !increasing) status = 1;
    out << algorithm << ',' << t << ',' << to_string(alpha) << ',' << to_string(gamma) << ',' << r.n << ','
        << r.opt << ',' << r.alg.to_string() << ',' << r.mu0 << ',' << r.mu1 << ','
        << (r.unbounded ? std::string("inf") : to_string(r.deficit)) << ',' << to_string(r.floor) << ','
        << (holds ? 1 : 0) << ',' << (increasing ? 1 : 0) << '\n';
  }
  return {status, out.str()};
}

CommandResult cmd_frontier(ProblemKind problem, std::string_view algorithm, int n_max, Bound t, int k,
                           std::string_view grid, const Rational& b_cap) {
  CorpusSpec spec;
  spec.problem = problem;
  spec.n_max = n_max;
  spec.t = t;
  spec.colors = problem == ProblemKind::mcs ? k : 1;
  if (problem == ProblemKind::mcs && k < 1) throw UsageError("mcs needs --k >= 1");
  FrontierGrids g = parse_frontier_grid(grid, t);
  AlgorithmFactory f = algorithm_by_name(algorithm);
  std::vector<RunRecord> records;
  enumerate_instances(spec, [&](const Instance& inst) { records.push_back(run_algorithm(f, inst).record); });
  auto triples = empirical_frontier(records, g.alpha, g.beta, g.gamma, b_cap);
  std::ostringstream out;
  out << "problem,algorithm,alpha,beta,gamma,b\n";
  for (const auto& c : triples) {
    out << name_of(problem) << ',' << algorithm << ',' << to_string(c.alpha) << ',' << to_string(c.beta) << ','
        << to_string(c.gamma) << ',' << to_string(c.additive) << '\n';
  }
  return {0, out.str()};
}

CommandResult cmd_hardness_graph() {
  // An arc P -> Q means a reduction from P to Q is implemented: Q is as hard as P.
  struct Arc {
    ProblemKind a, b;
    std::vector<std::string> names;
    bool both = false;
  };
  std::vector<Arc> arcs;
  for (const auto& r : all_reductions()) {
    bool merged = false;
    for (auto& arc : arcs) {
      if (arc.a == r->target() && arc.b == r->source()) {
        arc.both = true;
        arc.names.push_back(r->name());
        merged = true;
      } else if (arc.a == r->source() && arc.b == r->target()) {
        arc.names.push_back(r->name());
        merged = true;
      }
    }
    if (!merged) arcs.push_back({r->source(), r->target(), {r->name()}, false});
  }
  std::ostringstream out;
  out << "digraph hardness {\n  node [shape=box];\n";
  for (ProblemKind k : kAllProblems) out << "  " << name_of(k) << " [label=\"" << node_label(k) << "\"];\n";
  for (const auto& arc : arcs) {
    out << "  " << name_of(arc.a) << " -> " << name_of(arc.b) << " [";
    if (arc.both) out << "dir=both, ";
    out << "label=\"";
    for (std::size_t i = 0; i < arc.names.size(); ++i) out << (i ? "\\n" : "") << arc.names[i];
    out << "\"];\n";
  }
  out << "}\n";
  return {0, out.str()};
}

CommandResult cmd_enumerate(ProblemKind problem, int n_max, Bound t, int k, const std::string& out_dir) {
  CorpusSpec spec;
  spec.problem = problem;
  spec.n_max = n_max;
  spec.t = t;
  spec.colors = problem == ProblemKind::mcs ? k : 1;
  if (problem == ProblemKind::mcs && k < 1) throw UsageError("mcs needs --k >= 1");
  std::ostringstream out;
  std::size_t count = 0;
  if (!out_dir.empty()) std::filesystem::create_directories(out_dir);
  enumerate_instances(spec, [&](const Instance& inst) {
    ++count;
    std::string text = serialize_instance(inst);
    if (out_dir.empty()) {
      out << "# instance " << count << '\n' << text;
      return;
    }
    char name[32];
    std::snprintf(name, sizeof name, "%s-%06zu.inst", std::string(name_of(problem)).c_str(), count);
    std::ofstream file(std::filesystem::path(out_dir) / name);
    if (!file) throw UsageError("cannot write into " + out_dir);
    file << text;
  });
  if (!out_dir.empty()) out << "wrote " << count << " instances to " << out_dir << '\n';
  return {0, out.str()};
}

}  // namespace onred
