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

#include "quotamatch/io.hpp"

#include <fstream>
#include <ostream>

namespace quotamatch {

using nlohmann::json;

namespace {

[[noreturn]] void parse_error(const std::string& what) {
  throw Error(ErrorCode::kParse, what);
}

const json& require(const json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) {
    parse_error(std::string("missing field '") + key + "'");
  }
  return doc.at(key);
}

template <typename T>
T get_as(const json& doc, const char* key) {
  try {
    return require(doc, key).get<T>();
  } catch (const json::exception& e) {
    parse_error(std::string("field '") + key + "': " + e.what());
  }
}

std::vector<int> shift(std::vector<int> v, int delta) {
  for (int& x : v) x += delta;
  return v;
}

json noise_to_json(const NoiseModel& noise) {
  if (noise.kind == NoiseModel::Kind::kBernoulli) return {{"kind", "bernoulli"}};
  return {{"kind", "gaussian"}, {"sigma", noise.sigma}};
}

NoiseModel noise_from_json(const json& doc) {
  const auto kind = get_as<std::string>(doc, "kind");
  if (kind == "bernoulli") return NoiseModel::bernoulli();
  if (kind == "gaussian") return NoiseModel::gaussian(get_as<double>(doc, "sigma"));
  parse_error("unknown noise model '" + kind + "'");
}

}  // namespace

json config_to_json(const MarketConfig& c) {
  return {{"n_firms", c.n_firms},
          {"n_types", c.n_types()},
          {"workers_per_type", c.workers_per_type},
          {"type_quota", c.type_quota},
          {"total_quota", c.total_quota},
          {"horizon", c.horizon},
          {"noise_model", noise_to_json(c.noise)}};
}

MarketConfig config_from_json(const json& doc) {
  MarketConfig c;
  c.n_firms = get_as<int>(doc, "n_firms");
  c.workers_per_type = get_as<std::vector<int>>(doc, "workers_per_type");
  c.type_quota = get_as<std::vector<std::vector<int>>>(doc, "type_quota");
  c.total_quota = get_as<std::vector<int>>(doc, "total_quota");
  c.horizon = doc.contains("horizon") ? get_as<int>(doc, "horizon") : 2000;
  if (doc.contains("noise_model")) c.noise = noise_from_json(doc.at("noise_model"));
  if (doc.contains("n_types") &&
      get_as<int>(doc, "n_types") != c.n_types()) {
    parse_error("n_types disagrees with workers_per_type");
  }
  return c;
}

json market_to_json(const Market& market) {
  json doc = config_to_json(market.config());
  doc["firm_scores"] = market.prefs().firm_scores;
  json ranks = json::array();
  for (const auto& per_type : market.prefs().worker_ranks) {
    json row = json::array();
    for (const auto& list : per_type) row.push_back(shift(list, 1));
    ranks.push_back(std::move(row));
  }
  doc["worker_ranks"] = std::move(ranks);
  return doc;
}

Market market_from_json(const json& doc) {
  MarketConfig config = config_from_json(doc);
  TruePreferences prefs;
  prefs.firm_scores = get_as<ScoreTable>(doc, "firm_scores");
  auto ranks = get_as<std::vector<std::vector<std::vector<int>>>>(doc, "worker_ranks");
  for (auto& per_type : ranks) {
    for (auto& list : per_type) list = shift(std::move(list), -1);
  }
  prefs.worker_ranks = std::move(ranks);
  return Market(std::move(config), std::move(prefs));
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kParse, path.string() + ": " + e.what());
  }
}

Market read_market_file(const std::filesystem::path& path) {
  try {
    return market_from_json(read_json_file(path));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kIo) throw;
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

namespace {

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorCode::kIo, "write failed for " + path.string());
}

}  // namespace

void write_market_file(const Market& market, const std::filesystem::path& path) {
  write_text(path, market_to_json(market).dump(2) + "\n");
}

json matching_to_json(const Matching& matching) {
  json firms = json::array();
  for (int i = 0; i < matching.n_firms(); ++i) {
    json types = json::array();
    for (int m = 0; m < matching.n_types(); ++m) {
      types.push_back(shift(matching.workers(i, m), 1));
    }
    firms.push_back(std::move(types));
  }
  return {{"assignment", std::move(firms)}};
}

Matching matching_from_json(const json& doc, const MarketConfig& config) {
  const auto firms =
      get_as<std::vector<std::vector<std::vector<int>>>>(doc, "assignment");
  if (static_cast<int>(firms.size()) != config.n_firms) {
    parse_error("assignment must list every firm");
  }
  Matching matching(config.n_firms, config.workers_per_type);
  for (int i = 0; i < config.n_firms; ++i) {
    if (static_cast<int>(firms[i].size()) != config.n_types()) {
      parse_error("assignment of firm " + std::to_string(i + 1) +
                  " must list every type");
    }
    for (int m = 0; m < config.n_types(); ++m) {
      for (int j : firms[i][m]) {
        if (j < 1 || j > config.workers_per_type[m]) {
          parse_error("worker index " + std::to_string(j) + " out of range");
        }
        matching.assign(i, m, j - 1);
      }
    }
  }
  return matching;
}

Matching read_matching_file(const std::filesystem::path& path,
                            const MarketConfig& config) {
  return matching_from_json(read_json_file(path), config);
}

json blocking_report_to_json(const BlockingReport& report) {
  json pairs = json::array();
  for (const auto& bp : report.pairs) {
    json entry = {{"firm", bp.firm + 1},
                  {"type", bp.type + 1},
                  {"worker", bp.worker + 1},
                  {"stage", bp.stage == BlockStage::kFloor ? "floor" : "leftover"}};
    if (bp.displaced) {
      entry["displaced"] = {{"type", bp.displaced->type + 1},
                            {"worker", bp.displaced->index + 1}};
    } else {
      entry["displaced"] = "vacancy";
    }
    pairs.push_back(std::move(entry));
  }
  return {{"stable", report.stable()}, {"pairs", std::move(pairs)}};
}

ExperimentSpec spec_from_json(const json& doc) {
  ExperimentSpec spec;
  const json& inst = require(doc, "instance");
  if (inst.contains("builtin")) {
    const json& id = inst.at("builtin");
    const std::string text = id.is_string() ? id.get<std::string>() : id.dump();
    const auto ex = parse_builtin(text);
    if (!ex) parse_error("unknown built-in example '" + text + "'");
    spec.source.kind = InstanceSource::Kind::kBuiltin;
    spec.source.example = *ex;
  } else if (inst.contains("file")) {
    spec.source.kind = InstanceSource::Kind::kFile;
    spec.source.path = get_as<std::string>(inst, "file");
  } else if (inst.contains("random")) {
    const json& r = inst.at("random");
    spec.source.kind = InstanceSource::Kind::kRandom;
    spec.source.seed = get_as<std::uint64_t>(r, "seed");
    spec.source.dims = config_from_json(require(r, "dims"));
    spec.source.resample_per_trial =
        r.contains("resample_per_trial") && r.at("resample_per_trial").get<bool>();
  } else {
    parse_error("instance needs one of builtin, file, random");
  }
  if (doc.contains("policy")) spec.policy = parse_policy(get_as<std::string>(doc, "policy"));
  if (doc.contains("trials")) spec.trials = get_as<int>(doc, "trials");
  if (doc.contains("horizon")) spec.horizon = get_as<int>(doc, "horizon");
  if (doc.contains("master_seed")) spec.master_seed = get_as<std::uint64_t>(doc, "master_seed");
  if (doc.contains("output_dir")) spec.output_dir = get_as<std::string>(doc, "output_dir");
  if (doc.contains("threads")) spec.threads = get_as<int>(doc, "threads");
  if (doc.contains("write_trial_csv")) spec.write_trial_csv = get_as<bool>(doc, "write_trial_csv");
  if (doc.contains("prior")) {
    spec.prior.alpha = get_as<double>(doc.at("prior"), "alpha");
    spec.prior.beta = get_as<double>(doc.at("prior"), "beta");
  }
  if (doc.contains("ucb_delta") && !doc.at("ucb_delta").is_null()) {
    spec.ucb_delta = get_as<double>(doc, "ucb_delta");
  }
  if (doc.contains("deviation") && !doc.at("deviation").is_null()) {
    const json& d = doc.at("deviation");
    Deviation dev;
    dev.firm = get_as<int>(d, "firm") - 1;
    dev.rule = parse_deviation_rule(get_as<std::string>(d, "rule"));
    if (dev.rule == DeviationRule::kFixedRanking) {
      dev.fixed_ranking = get_as<std::vector<std::vector<int>>>(d, "fixed_ranking");
      for (auto& order : dev.fixed_ranking) order = shift(std::move(order), -1);
    }
    spec.deviation = std::move(dev);
  }
  return spec;
}

json spec_to_json(const ExperimentSpec& spec) {
  json inst;
  switch (spec.source.kind) {
    case InstanceSource::Kind::kBuiltin:
      inst["builtin"] = spec.source.example == BuiltinExample::kUcbVsTs
                            ? std::string("ucb-vs-ts")
                            : std::to_string(static_cast<int>(spec.source.example));
      break;
    case InstanceSource::Kind::kFile:
      inst["file"] = spec.source.path.string();
      break;
    case InstanceSource::Kind::kRandom:
      inst["random"] = {{"seed", spec.source.seed},
                        {"dims", config_to_json(spec.source.dims)},
                        {"resample_per_trial", spec.source.resample_per_trial}};
      break;
  }
  json doc = {{"instance", inst},
              {"policy", to_string(spec.policy)},
              {"trials", spec.trials},
              {"horizon", spec.horizon},
              {"master_seed", spec.master_seed},
              {"output_dir", spec.output_dir.string()},
              {"prior", {{"alpha", spec.prior.alpha}, {"beta", spec.prior.beta}}},
              {"ucb_delta", spec.ucb_delta ? json(*spec.ucb_delta) : json(nullptr)},
              {"write_trial_csv", spec.write_trial_csv}};
  if (spec.deviation) {
    json d = {{"firm", spec.deviation->firm + 1},
              {"rule", to_string(spec.deviation->rule)}};
    if (spec.deviation->rule == DeviationRule::kFixedRanking) {
      json orders = json::array();
      for (const auto& o : spec.deviation->fixed_ranking) orders.push_back(shift(o, 1));
      d["fixed_ranking"] = std::move(orders);
    }
    doc["deviation"] = std::move(d);
  } else {
    doc["deviation"] = nullptr;
  }
  return doc;
}

namespace {

json mean_stderr_json(std::span<const double> values) {
  const MeanStderr ms = mean_stderr(values);
  return {{"mean", ms.mean}, {"stderr", ms.stderr_}};
}

}  // namespace

json summary_to_json(const ExperimentResult& result) {
  const auto& spec = result.spec;
  const auto& config = result.market.config();
  const int last = spec.horizon - 1;

  std::vector<double> rates;
  for (const auto& t : result.trials) rates.push_back(t.matching_rate);

  json firms = json::array();
  for (int i = 0; i < config.n_firms; ++i) {
    std::vector<double> finals;
    int sublinear_trials = 0;
    for (const auto& t : result.trials) {
      finals.push_back(t.ledger.cumulative_firm(i, last));
      sublinear_trials += t.firm_sublinear[i];
    }
    json types = json::array();
    for (int m = 0; m < config.n_types(); ++m) {
      std::vector<double> cell;
      for (const auto& t : result.trials) cell.push_back(t.ledger.cumulative(i, m, last));
      types.push_back({{"type", m + 1}, {"final_regret", mean_stderr_json(cell)}});
    }
    firms.push_back(
        {{"firm", i + 1},
         {"final_regret", mean_stderr_json(finals)},
         {"sublinear_mean_curve", is_sublinear(result.mean_firm_curve(i))},
         {"sublinear_trial_fraction",
          static_cast<double>(sublinear_trials) / result.trials.size()},
         {"types", std::move(types)}});
  }

  return {
      {"version", version_string()},
      {"spec", spec_to_json(spec)},
      {"instance", config_to_json(config)},
      {"oracle", matching_to_json(result.oracle)},
      {"policy", to_string(spec.policy)},
      {"trials", spec.trials},
      {"horizon", spec.horizon},
      {"stability_violations", 0},
      {"matching_rate", mean_stderr_json(rates)},
      {"bswg",
       {{"final", result.bswg.back()},
        {"final_stderr", result.bswg_stderr.back()},
        {"curve", result.bswg}}},
      {"bound_envelope",
       {{"violations", result.envelope_violations()},
        {"holds", result.envelope_violations() == 0},
        {"final_bound", result.bound.back()}}},
      {"firms", std::move(firms)},
  };
}

void write_trial_csv(std::ostream& out, const TrialSummary& trial) {
  const auto& ledger = trial.ledger;
  out.precision(12);
  out << "trial,round,firm,type,inst_regret,cum_regret\n";
  for (int t = 0; t < ledger.rounds(); ++t) {
    for (int i = 0; i < ledger.n_firms(); ++i) {
      for (int m = 0; m < ledger.n_types(); ++m) {
        out << trial.trial + 1 << ',' << t + 1 << ',' << i + 1 << ',' << m + 1
            << ',' << ledger.instantaneous(i, m, t) << ','
            << ledger.cumulative(i, m, t) << '\n';
      }
    }
  }
}

void write_aggregate_csv(std::ostream& out, const ExperimentResult& result) {
  out.precision(12);
  out << "round,mean_bswg,stderr,bound\n";
  for (std::size_t t = 0; t < result.bswg.size(); ++t) {
    out << t + 1 << ',' << result.bswg[t] << ',' << result.bswg_stderr[t] << ','
        << result.bound[t] << '\n';
  }
}

void export_results(const ExperimentResult& result,
                    const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create " + dir.string() + ": " + ec.message());

  auto open = [](const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
    return out;
  };
  if (result.spec.write_trial_csv) {
    for (const auto& t : result.trials) {
      auto out = open(dir / ("trial_" + std::to_string(t.trial + 1) + ".csv"));
      write_trial_csv(out, t);
    }
  }
  {
    auto out = open(dir / "aggregate.csv");
    write_aggregate_csv(out, result);
  }
  if (!result.trials.empty() && result.trials.front().final_posterior) {
    auto out = open(dir / "posterior_final.csv");
    write_posterior_csv(out, *result.trials.front().final_posterior);
  }
  write_text(dir / "summary.json", summary_to_json(result).dump(2) + "\n");
}

}  // namespace quotamatch
