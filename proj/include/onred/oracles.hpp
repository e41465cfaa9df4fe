// Brute-force ground truth: exact optima, exhaustive corpora and response trees.
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "onred/types.hpp"

namespace onred {

/// Size limits for the exhaustive routines. `brute_force` bounds a single
/// independent block of the optimum search (connected component of the
/// conflict structure); `enumerate` bounds n_max of a corpus.
struct Caps {
  int brute_force = 20;
  int enumerate = 10;
};

/// Process-wide caps. The first call reads ONRED_CAP, which overrides `enumerate`.
Caps& caps();

struct OptWitness {
  std::int64_t value = 0;
  std::vector<int> selection;  // ascending
};

/// Exact optimum. Maximization: the lexicographically smallest maximum feasible
/// selection. ASG: Σx with the positions of the true 1s.
OptWitness brute_force_opt(const Instance& instance);

/// Minimum ASG cost over all 2^n guess strings, ignoring the closed form.
std::int64_t exhaustive_min_cost(const Instance& asg_instance);

enum class PredictionMode { all, perfect, flips };

struct CorpusSpec {
  ProblemKind problem = ProblemKind::bdis;
  int n_max = 3;
  Bound t = Bound::of(1);
  int colors = 1;                             // MCS only
  PredictionMode mode = PredictionMode::all;  //
  int flip_budget = 1;                        // flips: x̂ within this Hamming distance of x
  int set_size = 2;                           // SP: largest set emitted
};

/// Streams every instance of the corpus, n = 1..n_max. Per n the payload
/// sequences come in the generator's fixed order, each paired with its
/// canonical x (every x for ASG, in lexicographic order), then every x̂ the
/// mode allows in lexicographic order.
void enumerate_instances(const CorpusSpec& spec, const std::function<void(const Instance&)>& visit);

std::vector<Instance> collect_instances(const CorpusSpec& spec);

/// Streams every payload sequence of length exactly n (no bits attached).
void enumerate_payloads(const CorpusSpec& spec, int n,
                        const std::function<void(const std::vector<RequestPayload>&)>& visit);

/// All 2^n decision sequences in lexicographic order.
void exhaust_algorithm_responses(std::size_t n, const std::function<void(const DecisionSeq&)>& visit);

/// Integer-endpoint open intervals whose overlap graph is exactly `adjacency`
/// (vertex order preserved), or nothing when the graph is not an interval graph.
std::optional<std::vector<IntervalArrival>> realize_intervals(const std::vector<std::vector<int>>& adjacency);

}  // namespace onred
