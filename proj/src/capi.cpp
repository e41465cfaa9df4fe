#include "onred/onred.h"

#include <exception>
#include <new>
#include <stdexcept>
#include <string>
#include <vector>

#include "onred/commands.hpp"
#include "onred/instance_format.hpp"

struct onred_instance {
  onred::ParsedInstance parsed;
  std::string violations;
  std::string text;
};

struct onred_report {
  int status = 0;
  std::string text;
};

namespace {

thread_local std::string last_error;

onred::Bound bound_of(int t) { return t == ONRED_T_INF ? onred::Bound::unbounded() : onred::Bound::of(t); }

onred::ProblemKind problem_of(const char* name) {
  if (!name) throw onred::UsageError("problem name missing");
  auto k = onred::problem_from_name(name);
  if (!k) throw onred::UsageError(std::string("unknown problem '") + name + "'");
  return *k;
}

template <typename F>
int guarded(F&& body) {
  last_error.clear();
  try {
    return body();
  } catch (const std::invalid_argument& e) {
    last_error = e.what();
    return ONRED_USAGE;
  } catch (const onred::ParseError& e) {
    last_error = e.what();
    return ONRED_USAGE;
  } catch (const onred::CapExceeded& e) {
    last_error = e.what();
    return ONRED_USAGE;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return ONRED_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return ONRED_INTERNAL;
  }
}

int deliver(onred::CommandResult result, onred_report** out) {
  if (!out) throw onred::UsageError("report pointer is null");
  *out = new onred_report{result.status, std::move(result.text)};
  return result.status;
}

}  // namespace

extern "C" {

const char* onred_last_error(void) { return last_error.c_str(); }

int onred_instance_parse(const char* text, onred_instance** out) {
  return guarded([&] {
    if (!text || !out) throw onred::UsageError("null argument");
    auto* inst = new onred_instance{onred::parse_instance(text), {}, {}};
    for (const auto& v : inst->parsed.validity.violations) inst->violations += v + "\n";
    inst->text = onred::serialize_instance(inst->parsed.instance);
    *out = inst;
    return ONRED_OK;
  });
}

void onred_instance_free(onred_instance* instance) { delete instance; }

size_t onred_instance_size(const onred_instance* instance) { return instance ? instance->parsed.instance.size() : 0; }

const char* onred_instance_problem(const onred_instance* instance) {
  return instance ? onred::name_of(instance->parsed.instance.problem).data() : "";
}

int onred_instance_valid(const onred_instance* instance) {
  return instance && instance->parsed.validity.ok() ? 1 : 0;
}

const char* onred_instance_violations(const onred_instance* instance) {
  return instance ? instance->violations.c_str() : "";
}

const char* onred_instance_serialize(const onred_instance* instance) { return instance ? instance->text.c_str() : ""; }

int onred_evaluate(const onred_instance* instance, const char* algorithm, onred_report** out) {
  return guarded([&] {
    if (!instance || !algorithm) throw onred::UsageError("null argument");
    return deliver(onred::cmd_evaluate(instance->text, algorithm), out);
  });
}

int onred_verify(const onred_verify_options* o, onred_report** out) {
  return guarded([&] {
    if (!o || !o->reduction) throw onred::UsageError("reduction name missing");
    return deliver(onred::cmd_verify(o->reduction, o->n_max, bound_of(o->t), o->k,
                                     o->algorithms ? o->algorithms : "all", o->grid ? o->grid : ""),
                   out);
  });
}

int onred_adversary(const char* algorithm, int t, const char* alpha, const char* gamma, const int* n_list,
                    size_t n_count, onred_report** out) {
  return guarded([&] {
    if (!algorithm || !alpha || !gamma || (n_count && !n_list)) throw onred::UsageError("null argument");
    std::vector<int> ns(n_list, n_list + n_count);
    return deliver(onred::cmd_adversary(algorithm, t, onred::parse_rational(alpha), onred::parse_rational(gamma), ns),
                   out);
  });
}

int onred_frontier(const onred_frontier_options* o, onred_report** out) {
  return guarded([&] {
    if (!o || !o->algorithm) throw onred::UsageError("null argument");
    onred::Rational cap = o->b_cap ? onred::parse_rational(o->b_cap) : onred::Rational(0);
    return deliver(onred::cmd_frontier(problem_of(o->problem), o->algorithm, o->n_max, bound_of(o->t), o->k,
                                       o->grid ? o->grid : "", cap),
                   out);
  });
}

int onred_hardness_graph(onred_report** out) {
  return guarded([&] { return deliver(onred::cmd_hardness_graph(), out); });
}

int onred_enumerate(const char* problem, int n_max, int t, int k, const char* out_dir, onred_report** out) {
  return guarded([&] {
    return deliver(onred::cmd_enumerate(problem_of(problem), n_max, bound_of(t), k, out_dir ? out_dir : ""), out);
  });
}

const char* onred_report_text(const onred_report* report) { return report ? report->text.c_str() : ""; }

int onred_report_passed(const onred_report* report) { return report && report->status == 0 ? 1 : 0; }

void onred_report_free(onred_report* report) { delete report; }

}  // extern "C"
