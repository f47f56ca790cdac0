// Copyright 2026 The QuotaMatch Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end. Talks to the library through the C interface only.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "quotamatch/quotamatch.h"

namespace {

constexpr int kExitError = 1;
constexpr int kExitUnstable = 2;

struct StatusError {
  qm_status status;
};

void check(qm_status status) {
  if (status != QM_OK) throw StatusError{status};
}

struct MarketDeleter {
  void operator()(qm_market* m) const { qm_market_free(m); }
};
using MarketPtr = std::unique_ptr<qm_market, MarketDeleter>;

struct StringDeleter {
  void operator()(char* s) const { qm_string_free(s); }
};
using OwnedString = std::unique_ptr<char, StringDeleter>;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "error: cannot open " << path << "\n";
    throw StatusError{QM_ERR_IO};
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct MarketArgs {
  std::string example;
  std::string instance;

  void add_to(CLI::App* app) {
    auto* ex = app->add_option("--example", example,
                               "Built-in instance: 1, 2, 3, 4 or ucb-vs-ts");
    auto* in = app->add_option("--instance", instance, "Instance JSON file")
                   ->check(CLI::ExistingFile);
    ex->excludes(in);
  }

  MarketPtr load() const {
    qm_market* raw = nullptr;
    if (!instance.empty()) {
      check(qm_market_load(instance.c_str(), &raw));
    } else if (!example.empty()) {
      check(qm_market_builtin(example.c_str(), &raw));
    } else {
      std::cerr << "error: need --example or --instance\n";
      throw StatusError{QM_ERR_INVALID_ARGUMENT};
    }
    return MarketPtr(raw);
  }
};

struct SimulateArgs {
  std::string spec_file;
  MarketArgs market;
  std::string policy = "ts";
  int trials = 100;
  int horizon = 2000;
  unsigned long long seed = 42;
  int threads = 0;
  std::string out;
  int deviate_firm = 0;
  std::string deviation = "swap-top-two";
  bool no_trial_csv = false;
};

nlohmann::json build_spec(const SimulateArgs& a) {
  if (!a.spec_file.empty()) {
    auto spec = nlohmann::json::parse(slurp(a.spec_file));
    if (!a.out.empty()) spec["output_dir"] = a.out;
    return spec;
  }
  nlohmann::json spec;
  if (!a.market.instance.empty()) {
    spec["instance"] = {{"file", a.market.instance}};
  } else {
    spec["instance"] = {{"builtin", a.market.example.empty() ? "1" : a.market.example}};
  }
  spec["policy"] = a.policy;
  spec["trials"] = a.trials;
  spec["horizon"] = a.horizon;
  spec["master_seed"] = a.seed;
  spec["threads"] = a.threads;
  spec["write_trial_csv"] = !a.no_trial_csv;
  if (!a.out.empty()) spec["output_dir"] = a.out;
  if (a.deviate_firm > 0) {
    spec["deviation"] = {{"firm", a.deviate_firm}, {"rule", a.deviation}};
  }
  return spec;
}

void print_summary(const nlohmann::json& s) {
  std::printf("policy %s, %d trials x %d rounds\n",
              s["policy"].get<std::string>().c_str(), s["trials"].get<int>(),
              s["horizon"].get<int>());
  std::printf("  matching rate  %.4f (se %.4f)\n",
              s["matching_rate"]["mean"].get<double>(),
              s["matching_rate"]["stderr"].get<double>());
  std::printf("  final BSWG     %.3f (se %.3f), bound %.1f, violations %d\n",
              s["bswg"]["final"].get<double>(),
              s["bswg"]["final_stderr"].get<double>(),
              s["bound_envelope"]["final_bound"].get<double>(),
              s["bound_envelope"]["violations"].get<int>());
  for (const auto& f : s["firms"]) {
    std::printf("  firm %-3d  regret %9.3f (se %.3f)  sublinear %s\n",
                f["firm"].get<int>(), f["final_regret"]["mean"].get<double>(),
                f["final_regret"]["stderr"].get<double>(),
                f["sublinear_mean_curve"].get<bool>() ? "yes" : "no");
  }
}

nlohmann::json run(const nlohmann::json& spec) {
  char* raw = nullptr;
  check(qm_run_experiment(spec.dump().c_str(), &raw));
  OwnedString summary(raw);
  return nlohmann::json::parse(summary.get());
}

int do_simulate(const SimulateArgs& a) {
  print_summary(run(build_spec(a)));
  if (!a.out.empty()) std::printf("results written to %s\n", a.out.c_str());
  return 0;
}

int do_example(const SimulateArgs& a) {
  if (a.market.example != "ucb-vs-ts" && a.market.example != "5") {
    return do_simulate(a);
  }
  for (const char* policy : {"ucb", "ts"}) {
    SimulateArgs copy = a;
    copy.policy = policy;
    if (!a.out.empty()) copy.out = a.out + "/" + policy;
    print_summary(run(build_spec(copy)));
  }
  return 0;
}

int do_stability_check(const MarketArgs& m, const std::string& matching_file) {
  const auto market = m.load();
  const std::string doc = slurp(matching_file);
  int stable = 0;
  char* raw = nullptr;
  check(qm_stability_check(market.get(), doc.c_str(), &stable, &raw));
  OwnedString report(raw);
  std::puts(report.get());
  return stable ? 0 : kExitUnstable;
}

int do_oracle(const MarketArgs& m) {
  const auto market = m.load();
  char* raw = nullptr;
  check(qm_oracle_json(market.get(), &raw));
  OwnedString doc(raw);
  std::puts(doc.get());
  return 0;
}

int do_enumerate(const MarketArgs& m, unsigned long long cap) {
  const auto market = m.load();
  char* raw = nullptr;
  check(qm_enumerate_stable(market.get(), cap, &raw));
  OwnedString doc(raw);
  std::puts(doc.get());
  return 0;
}

int do_instance(const MarketArgs& m, const std::string& out) {
  const auto market = m.load();
  if (out.empty() || out == "-") {
    char* raw = nullptr;
    check(qm_market_to_json(market.get(), &raw));
    OwnedString doc(raw);
    std::puts(doc.get());
  } else {
    check(qm_market_save(market.get(), out.c_str()));
  }
  return 0;
}

void add_simulation_options(CLI::App* app, SimulateArgs& a) {
  app->add_option("--policy", a.policy, "ts, ucb or clairvoyant");
  app->add_option("--trials", a.trials, "Independent trials")->check(CLI::PositiveNumber);
  app->add_option("--horizon", a.horizon, "Rounds per trial")->check(CLI::PositiveNumber);
  app->add_option("--seed", a.seed, "Master seed");
  app->add_option("--threads", a.threads, "Worker threads (0: hardware)");
  app->add_option("--out", a.out, "Output directory");
  app->add_option("--deviate-firm", a.deviate_firm, "1-based firm that misreports");
  app->add_option("--deviation", a.deviation,
                  "identity, swap-top-two, reverse or fixed-ranking");
  app->add_flag("--no-trial-csv", a.no_trial_csv, "Skip per-trial CSV files");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decentralized many-to-one matching with type quotas"};
  app.set_version_flag("--version", std::string(qm_version()));
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Run a bandit matching experiment");
  simulate->add_option("--spec", sim.spec_file, "Experiment spec JSON")
      ->check(CLI::ExistingFile);
  sim.market.add_to(simulate);
  add_simulation_options(simulate, sim);

  SimulateArgs ex;
  auto* example = app.add_subcommand("example", "Run a built-in example with defaults");
  example->add_option("--id", ex.market.example, "1, 2, 3, 4 or ucb-vs-ts")->required();
  add_simulation_options(example, ex);

  MarketArgs check_market;
  std::string matching_file;
  auto* stability = app.add_subcommand("stability-check",
                                       "Report blocking pairs of a matching");
  check_market.add_to(stability);
  stability->add_option("--matching", matching_file, "Matching JSON file")
      ->required()
      ->check(CLI::ExistingFile);

  MarketArgs oracle_market;
  auto* oracle = app.add_subcommand("oracle", "Print the firm-optimal stable matching");
  oracle_market.add_to(oracle);

  MarketArgs enum_market;
  unsigned long long cap = 0;
  auto* enumerate = app.add_subcommand("enumerate",
                                       "List every stable matching (small instances)");
  enum_market.add_to(enumerate);
  enumerate->add_option("--cap", cap, "Search-space cap (0: default)");

  MarketArgs inst_market;
  std::string inst_out;
  auto* instance = app.add_subcommand("instance", "Export an instance as JSON");
  inst_market.add_to(instance);
  instance->add_option("--out", inst_out, "Destination file (default stdout)");

  int bq = 0, bk = 0, bn = 0, bw = 0, bt = 0;
  auto* bound = app.add_subcommand("bound", "Evaluate the regret bound");
  bound->add_option("--total-quota", bq, "Q")->required();
  bound->add_option("--max-workers", bk, "Largest K_m")->required();
  bound->add_option("--firms", bn, "N")->required();
  bound->add_option("--workers", bw, "K")->required();
  bound->add_option("--round", bt, "T")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*simulate) return do_simulate(sim);
    if (*example) return do_example(ex);
    if (*stability) return do_stability_check(check_market, matching_file);
    if (*oracle) return do_oracle(oracle_market);
    if (*enumerate) return do_enumerate(enum_market, cap);
    if (*instance) return do_instance(inst_market, inst_out);
    if (*bound) {
      double value = 0;
      check(qm_regret_bound(bq, bk, bn, bw, bt, &value));
      std::printf("%.6f\n", value);
      return 0;
    }
  } catch (const StatusError& e) {
    const char* msg = qm_last_error();
    if (msg != nullptr && *msg != '\0') {
      std::cerr << "error (" << qm_status_name(e.status) << "): " << msg << "\n";
    }
    return e.status == QM_ERR_STABILITY_VIOLATION ? kExitUnstable : kExitError;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return 0;
}
