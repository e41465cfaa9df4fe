// Batch commands behind the CLI. Each returns its report text and an exit
// status (0 pass, 1 verification failure); usage problems throw.
#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "onred/oracles.hpp"
#include "onred/reductions.hpp"
#include "onred/types.hpp"

namespace onred {

struct CommandResult {
  int status = 0;
  std::string text;
};

/// Source corpus and target parameters for verifying a reduction at bound t.
/// t is the target bound for red_mcs_to_bdis (source MCS_{k,k*t}) and for
/// red_mat_to_sp (source degree floor(t/2)+1); the source bound otherwise.
struct VerifyPlan {
  CorpusSpec corpus;
  std::optional<ProblemParams> target;
};
VerifyPlan verify_plan(const Reduction& reduction, int n_max, Bound t, int k);

/// "alpha+beta=t" (default when empty), "alpha+beta<=t", or explicit pairs "a:b,a:b".
std::vector<std::pair<Rational, Rational>> parse_alpha_beta_grid(std::string_view spec, Bound t);

struct FrontierGrids {
  std::vector<Rational> alpha;
  std::vector<Rational> beta;
  std::vector<Rational> gamma;
};
/// "alpha=1,3/2;beta=0,1;gamma=0,1"; missing axes take defaults derived from t.
FrontierGrids parse_frontier_grid(std::string_view spec, Bound t);

/// "all" or a comma-separated list of roster names.
std::vector<std::string> parse_algorithm_list(std::string_view spec, ProblemKind problem);

/// Couples every (algorithm, corpus instance) pair and verifies each trace.
VerificationReport verify_corpus(const Reduction& reduction, const VerifyPlan& plan,
                                 const std::vector<std::string>& algorithms, const VerifyOptions& options);

std::string corpus_id(const CorpusSpec& spec);

/// Tally CSV followed by the recorded failures as comment blocks.
std::string format_report(const VerificationReport& report, std::string_view reduction, std::string_view corpus);

CommandResult cmd_evaluate(std::string_view instance_text, std::string_view algorithm);
CommandResult cmd_verify(std::string_view reduction, int n_max, Bound t, int k, std::string_view algorithms,
                         std::string_view grid);
CommandResult cmd_adversary(std::string_view algorithm, int t, const Rational& alpha, const Rational& gamma,
                            std::span<const int> n_list);
CommandResult cmd_frontier(ProblemKind problem, std::string_view algorithm, int n_max, Bound t, int k,
                           std::string_view grid, const Rational& b_cap);
CommandResult cmd_hardness_graph();
/// Writes one file per instance into out_dir, or prints them all when out_dir is empty.
CommandResult cmd_enumerate(ProblemKind problem, int n_max, Bound t, int k, const std::string& out_dir);

}  // namespace onred
