// Command-line front end. Talks to the library only through onred.h.
#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "onred/onred.h"

namespace {

int usage(const std::string& msg) {
  std::cerr << "onred: " << msg << '\n';
  return ONRED_USAGE;
}

bool parse_t(const std::string& text, int& t) {
  if (text == "inf") {
    t = ONRED_T_INF;
    return true;
  }
  try {
    std::size_t used = 0;
    t = std::stoi(text, &used);
    return used == text.size() && t >= 1;
  } catch (const std::exception&) {
    return false;
  }
}

// Prints or saves the report, then maps the status to the exit code.
int finish(int status, onred_report* report, const std::string& out_path) {
  if (status == ONRED_USAGE || status == ONRED_INTERNAL) {
    std::cerr << "onred: " << onred_last_error() << '\n';
    return status == ONRED_USAGE ? 2 : 3;
  }
  const char* text = onred_report_text(report);
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(out_path, std::ios::binary);
    if (!f) {
      onred_report_free(report);
      return usage("cannot write " + out_path);
    }
    f << text;
  }
  onred_report_free(report);
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Online problems with binary predictions: algorithms, reductions and checks"};
  app.require_subcommand(1);
  bool seedless = false;
  app.add_flag("--seedless", seedless, "Enumeration is always deterministic; accepted for scripts that ask for it");

  std::string out_path, alg, reduction, grid, t_text = "2", b_cap = "0", problem, alpha, gamma;
  std::string instance_path;
  int n_max = 4, k = 1;
  std::vector<int> n_list{10, 20, 40, 80};

  auto* evaluate = app.add_subcommand("evaluate", "Run one algorithm on an instance file");
  evaluate->add_option("instance", instance_path, "Instance file")->required();
  evaluate->add_option("--alg", alg, "Algorithm name")->required();
  evaluate->add_option("--out", out_path, "Write the CSV here");

  auto* verify = app.add_subcommand("verify", "Check a reduction over an exhaustive corpus");
  verify->add_option("reduction,--reduction", reduction, "Reduction name, '+' composes")->required();
  verify->add_option("--n-max", n_max, "Largest instance size");
  verify->add_option("--t", t_text, "Degree/overlap bound, or inf");
  verify->add_option("--k", k, "Colours for mcs sources");
  verify->add_option("--alg,--algs", alg, "'all' or comma-separated algorithm names");
  verify->add_option("--grid", grid, "alpha+beta=t, alpha+beta<=t, or a:b,a:b");
  verify->add_option("--out", out_path, "Write the report here");

  auto* adversary = app.add_subcommand("adversary", "Gadget adversary growth table");
  adversary->add_option("--alg", alg, "BDIS algorithm")->required();
  adversary->add_option("--t", t_text, "Degree bound");
  adversary->add_option("--alpha", alpha, "alpha < t")->required();
  adversary->add_option("--gamma", gamma, "gamma < 1")->required();
  adversary->add_option("--n", n_list, "Gadget counts")->delimiter(',');
  adversary->add_option("--out", out_path, "Write the CSV here");

  auto* frontier = app.add_subcommand("frontier", "Grid triples an algorithm meets within b-cap");
  frontier->add_option("problem,--problem", problem, "Problem kind")->required();
  frontier->add_option("--alg", alg, "Algorithm name")->required();
  frontier->add_option("--n-max", n_max, "Largest instance size");
  frontier->add_option("--t", t_text, "Bound, or inf");
  frontier->add_option("--k", k, "Colours for mcs");
  frontier->add_option("--grid", grid, "alpha=..;beta=..;gamma=..");
  frontier->add_option("--b-cap", b_cap, "Largest additive constant accepted");
  frontier->add_option("--out", out_path, "Write the CSV here");

  auto* graph = app.add_subcommand("hardness-graph", "DOT graph of the implemented reductions");
  graph->add_option("--out", out_path, "Write the DOT text here");

  auto* enumerate = app.add_subcommand("enumerate", "Dump a corpus, one file per instance");
  enumerate->add_option("problem,--problem", problem, "Problem kind")->required();
  enumerate->add_option("--n-max", n_max, "Largest instance size");
  enumerate->add_option("--t", t_text, "Bound, or inf");
  enumerate->add_option("--k", k, "Colours for mcs");
  enumerate->add_option("--out", out_path, "Directory; omit to print");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return ONRED_USAGE;
  }

  int t = 0;
  if (!parse_t(t_text, t)) return usage("--t must be a positive integer or inf");
  onred_report* report = nullptr;

  if (*evaluate) {
    std::ifstream in(instance_path, std::ios::binary);
    if (!in) return usage("cannot read " + instance_path);
    std::stringstream text;
    text << in.rdbuf();
    onred_instance* inst = nullptr;
    if (onred_instance_parse(text.str().c_str(), &inst) != ONRED_OK) {
      return usage(instance_path + ": " + onred_last_error());
    }
    int status = onred_evaluate(inst, alg.c_str(), &report);
    onred_instance_free(inst);
    return finish(status, report, out_path);
  }
  if (*verify) {
    onred_verify_options o{reduction.c_str(), n_max, t, k, alg.empty() ? "all" : alg.c_str(), grid.c_str()};
    int status = onred_verify(&o, &report);
    return finish(status, report, out_path);
  }
  if (*adversary) {
    if (t == ONRED_T_INF) return usage("the adversary needs a finite --t");
    int status = onred_adversary(alg.c_str(), t, alpha.c_str(), gamma.c_str(), n_list.data(), n_list.size(), &report);
    return finish(status, report, out_path);
  }
  if (*frontier) {
    onred_frontier_options o{problem.c_str(), alg.c_str(), n_max, t, k, grid.c_str(), b_cap.c_str()};
    int status = onred_frontier(&o, &report);
    return finish(status, report, out_path);
  }
  if (*graph) {
    int status = onred_hardness_graph(&report);
    return finish(status, report, out_path);
  }
  if (*enumerate) {
    int status = onred_enumerate(problem.c_str(), n_max, t, k, out_path.c_str(), &report);
    return finish(status, report, "");
  }
  return usage("no subcommand");
}
