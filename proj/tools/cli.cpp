// Copyright 2026 The mi-audit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "cli.hpp"

#include "config.hpp"
#include "io.hpp"

#include "miaudit/parallel.hpp"
#include "miaudit/roc.hpp"
#include "miaudit/theory.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <optional>
#include <ostream>
#include <sstream>

#ifndef MI_AUDIT_VERSION
#define MI_AUDIT_VERSION "0.0.0"
#endif

namespace miaudit::cli {

namespace {

namespace fs = std::filesystem;

struct Common {
  std::optional<unsigned> threads;
  std::optional<std::uint64_t> seed;
};

json load_config(const std::string& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw ConfigError("malformed JSON in '" + path + "': " + e.what());
  }
}

unsigned thread_count(const Common& common, const json& config) {
  if (common.threads) return *common.threads;
  if (config.is_object() && config.contains("threads")) {
    return static_cast<unsigned>(need_count(config, "threads"));
  }
  if (const char* env = std::getenv("MI_AUDIT_THREADS"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (*end != '\0') throw ConfigError("MI_AUDIT_THREADS must be a non-negative integer");
    return static_cast<unsigned>(v);
  }
  return 0;
}

// Tags every JSON output so it can be traced back to its inputs.
void stamp(json& out, const std::string& hash, const json& master_seed) {
  out["config_hash"] = hash;
  out["master_seed"] = master_seed;
  out["tool_version"] = MI_AUDIT_VERSION;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

// JSON has no infinities; they are written as strings.
json number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

std::string curve_csv(std::string_view header, const std::vector<RocPoint>& points) {
  std::string csv(header);
  csv += '\n';
  for (const auto& p : points) csv += format_double(p.fpr) + ',' + format_double(p.tpr) + '\n';
  return csv;
}

json curve_json(const std::vector<RocPoint>& points) {
  json arr = json::array();
  for (const auto& p : points) arr.push_back({p.fpr, p.tpr});
  return arr;
}

fs::path output_dir(const std::string& dir) {
  fs::path p(dir);
  std::error_code ec;
  fs::create_directories(p, ec);
  if (ec) throw ConfigError("cannot create output directory '" + dir + "': " + ec.message());
  return p;
}

// ---------------------------------------------------------------- theory

double effective_leakage(const json& config) {
  if (config.contains("m")) {
    const double m = need_number(config, "m");
    require(m >= 0.0, "'m' must be >= 0");
    return m;
  }
  const auto dist = parse_dist(need(config, "dist"));
  const Index n = need_count(config, "n");
  require(n >= 1, "'n' must be >= 1");
  const Vector z = parse_point(need(config, "target"), dist, seed_or(config, "target_seed", 0));
  const Mechanism mech =
      config.contains("mechanism") ? parse_mechanism(config, dist.dim()) : Mechanism::empirical_mean();
  if (const auto* noisy = mech.as<NoisyMean>()) return noisy_leakage_score(dist, z, noisy->gamma, n);
  const double m = leakage_score(dist, z, n);
  if (const auto* sub = mech.as<SubsampledMean>()) return subsampled_leakage_score(m, sub->rho);
  return m;
}

void cmd_theory(const std::string& config_path, const std::string& out_csv,
                const std::string& out_json, const Common& common) {
  json config = load_config(config_path);
  if (common.seed) config["master_seed"] = *common.seed;
  const double m = effective_leakage(config);
  const auto grid_size = static_cast<int>(count_or(config, "alpha_grid_size", kDefaultAlphaGridSize));
  require(grid_size >= 2, "'alpha_grid_size' must be >= 2");

  std::vector<double> eps;
  if (config.contains("epsilons")) {
    for (const json& e : need(config, "epsilons")) {
      require(e.is_number() && e.get<double>() >= 0.0, "'epsilons' must hold numbers >= 0");
      eps.push_back(e.get<double>());
    }
  } else {
    for (int i = 0; i <= 10; ++i) eps.push_back(0.5 * i);
  }

  const auto curve = tradeoff_curve(m, grid_size);
  std::string csv = "alpha,power\n";
  for (const auto& p : curve.samples) csv += format_double(p.alpha) + ',' + format_double(p.power) + '\n';

  json out;
  out["m_eff"] = m;
  out["leakage"] = theoretical_leakage(m);
  out["alpha_grid_size"] = grid_size;
  json gdp = json::array();
  for (double e : eps) gdp.push_back({{"eps", e}, {"delta", gdp_delta(m, e)}});
  out["gdp"] = gdp;
  stamp(out, config_hash(config), config.value("master_seed", json(nullptr)));

  write_file(out_csv, csv);
  write_file(out_json, dump(out));
}

// -------------------------------------------------------------- simulate

struct Threshold {
  double value;
  bool reversed;
};

// Threshold of the Bayes-optimal decision between the two limiting score
// laws. Likelihood-ratio scores cut at 0; the misspecified test at the
// midpoint of its two means; the scalar product at the midpoint of the
// observed class means.
Threshold bayes_threshold(std::string_view score, const ScoreSideInfo& info,
                          const ProductDistribution& dist, const Vector* target,
                          const std::vector<ScoredRound>& rounds) {
  if (score == "lr_misspecified" && target != nullptr) {
    const double m_scal = cross_leakage(dist, *info.z_targ, *target, info.n);
    const double m_targ = leakage_score(dist, *info.z_targ, info.n);
    return {(m_scal - m_targ) / 2, m_scal < 0};
  }
  if (score == "scalar_product" || score == "lr_misspecified") {
    double sums[2] = {0, 0};
    Index counts[2] = {0, 0};
    for (const auto& r : rounds) {
      if (!std::isfinite(r.score)) continue;
      sums[r.member] += r.score;
      ++counts[r.member];
    }
    if (counts[0] == 0 || counts[1] == 0) return {0.0, false};
    const double m0 = sums[0] / static_cast<double>(counts[0]);
    const double m1 = sums[1] / static_cast<double>(counts[1]);
    return {(m0 + m1) / 2, m1 < m0};
  }
  return {0.0, false};
}

void cmd_simulate(const std::string& config_path, const std::string& out_dir,
                  std::optional<Index> rounds_flag, const Common& common) {
  json config = load_config(config_path);
  if (rounds_flag) config["rounds"] = *rounds_flag;
  if (common.seed) config["master_seed"] = *common.seed;
  const unsigned threads = thread_count(common, config);
  config.erase("threads");  // never affects results, so not part of the hash

  const auto dist = parse_dist(need(config, "dist"));
  const Index n = need_count(config, "n");
  require(n >= 1, "'n' must be >= 1");
  const Mechanism mech = parse_mechanism(config, dist.dim());
  const std::string score = need(config, "score").get<std::string>();
  const Index rounds = count_or(config, "rounds", kDefaultRounds);
  require(rounds >= 1, "'rounds' must be >= 1");
  const std::uint64_t seed = seed_or(config, "master_seed", 0);
  const std::string game = string_or(config, "game", "fixed");
  const std::string sampling_name = string_or(config, "sampling", "sums");
  require(sampling_name == "sums" || sampling_name == "rows",
          "'sampling' must be \"sums\" or \"rows\"");
  const Sampling sampling = sampling_name == "rows" ? Sampling::Rows : Sampling::Sums;

  const ScoreSideInfo info = parse_side_info(config, score, dist, mech, n);
  const Scorer scorer = make_scorer(score, info);

  std::optional<Vector> target;
  std::vector<ScoredRound> transcript;
  double m_star = 0.0;
  double m_eff = 0.0;
  if (game == "fixed") {
    target = parse_point(need(config, "target"), dist, seed_or(config, "target_seed", 0));
    transcript = run_fixed_game(GameConfig{dist, mech, n, *target, rounds, seed, threads, sampling}, scorer);
    m_star = leakage_score(dist, *target, n);
    m_eff = m_star;
    if (const auto* noisy = mech.as<NoisyMean>()) m_eff = noisy_leakage_score(dist, *target, noisy->gamma, n);
  } else if (game == "average") {
    transcript = run_average_game(dist, mech, n, scorer, rounds, seed, threads, sampling);
    // E over z ~ D of the leakage score.
    m_star = static_cast<double>(dist.dim()) / static_cast<double>(n);
    m_eff = m_star;
    if (const auto* noisy = mech.as<NoisyMean>()) {
      const Vector& s2 = dist.variance();
      m_eff = (s2.array() / (s2.array() + noisy->gamma.array().square())).sum() / static_cast<double>(n);
    }
  } else {
    throw ConfigError("unknown game '" + game + "' (expected fixed or average)");
  }
  if (const auto* sub = mech.as<SubsampledMean>()) m_eff = subsampled_leakage_score(m_star, sub->rho);

  const auto curve = roc(transcript);
  const auto cut = bayes_threshold(score, info, dist, target ? &*target : nullptr, transcript);
  const double adv = empirical_advantage(transcript, cut.value);

  const fs::path dir = output_dir(out_dir);
  std::string rows_csv = "round,score,b\n";
  for (std::size_t t = 0; t < transcript.size(); ++t) {
    rows_csv += std::to_string(t) + ',' + format_double(transcript[t].score) + ',' +
                (transcript[t].member ? "1" : "0") + '\n';
  }
  write_file((dir / "rounds.csv").string(), rows_csv);
  write_file((dir / "roc.csv").string(), curve_csv("fpr,tpr", curve.points));

  json summary;
  summary["game"] = game;
  summary["score"] = score;
  summary["mechanism"] = mech.name();
  summary["rounds"] = rounds;
  summary["m_star"] = m_star;
  summary["m_eff"] = m_eff;
  summary["auc"] = curve.auc;
  summary["bayes_threshold"] = number(cut.value);
  summary["advantage_at_bayes_threshold"] = cut.reversed ? -adv : adv;
  summary["theory_leakage"] = theoretical_leakage(m_eff);
  summary["sup_norm_gap"] = theory_gap(curve, m_eff);
  summary["alpha_grid_size"] = kDefaultAlphaGridSize;
  stamp(summary, config_hash(config), seed);
  write_file((dir / "summary.json").string(), dump(summary));
}

// ---------------------------------------------------------------- canary

void cmd_canary(const std::string& refs_path, const std::string& candidates_path,
                const std::string& out_path, const std::string& mode, bool centered,
                std::optional<double> ridge) {
  json opts_json = {{"mode", mode}, {"centered", centered}};
  if (ridge) opts_json["ridge"] = *ridge;
  const ReferenceOptions opts = parse_reference_options(opts_json);

  const std::string refs_text = read_file(refs_path);
  const std::string cand_text = read_file(candidates_path);
  const Matrix refs = read_csv_matrix(refs_path);
  const Matrix candidates = read_csv_matrix(candidates_path);
  const auto estimates = estimate_reference(refs, opts);
  const auto ranked = rank_canaries(candidates, estimates);

  json hashed = opts_json;
  hashed["refs"] = hex64(fnv1a(refs_text));
  hashed["candidates"] = hex64(fnv1a(cand_text));

  json out;
  json list = json::array();
  for (const auto& c : ranked) list.push_back({{"index", c.index}, {"score", c.score}});
  out["ranked"] = list;
  out["n0"] = refs.rows();
  out["mode"] = mode;
  out["centered"] = centered;
  out["ridge"] = estimates.ridge();
  stamp(out, config_hash(hashed), nullptr);
  write_file(out_path, dump(out));
}

// -------------------------------------------------------------- whitebox

struct WhiteboxData {
  DataSource source;
  Index features;
  Index classes;  // 1 for linear regression
  Architecture arch;
};

WhiteboxData parse_whitebox_data(const json& config) {
  const json& data = need(config, "data");
  const std::string kind = need(data, "source").get<std::string>();
  const json model = config.contains("model") ? config.at("model") : json::object();
  if (kind == "blobs") {
    const Index f = need_count(data, "features");
    const Index c = count_or(data, "classes", 2);
    BlobSampler sampler(f, c, number_or(data, "separation", 2.0), seed_or(data, "seed", 0));
    require(string_or(model, "arch", "logistic") == "logistic",
            "blob data has class labels; use the logistic architecture");
    return {blob_source(std::move(sampler)), f, c, Architecture::LogisticRegression};
  }
  if (kind == "csv") {
    const std::string path = need(data, "path").get<std::string>();
    const Matrix table = read_csv_matrix(path);
    require(table.cols() >= 2, path + ": need at least one feature column and a label column");
    Dataset pool{table.leftCols(table.cols() - 1), table.col(table.cols() - 1)};
    const std::string arch = string_or(model, "arch", "logistic");
    if (arch == "linear") {
      const Index f = pool.features.cols();
      return {pool_source(std::move(pool)), f, 1, Architecture::LinearRegression};
    }
    require(arch == "logistic", "unknown model arch '" + arch + "' (expected logistic or linear)");
    const double top = pool.labels.maxCoeff();
    require(pool.labels.minCoeff() >= 0.0, path + ": labels must be class indices >= 0");
    const Index f = pool.features.cols();
    const auto c = std::max<Index>(2, static_cast<Index>(top) + 1);
    return {pool_source(std::move(pool)), f, c, Architecture::LogisticRegression};
  }
  throw ConfigError("unknown data source '" + kind + "' (expected blobs or csv)");
}

void cmd_whitebox(const std::string& config_path, const std::string& out_dir,
                  std::optional<Index> repetitions_flag, const Common& common) {
  json config = load_config(config_path);
  if (repetitions_flag) config["repetitions"] = *repetitions_flag;
  if (common.seed) config["master_seed"] = *common.seed;
  const unsigned threads = thread_count(common, config);
  config.erase("threads");

  const std::uint64_t seed = seed_or(config, "master_seed", 0);
  const StreamFactory streams(seed);
  const WhiteboxData data = parse_whitebox_data(config);
  const json model_cfg = config.contains("model") ? config.at("model") : json::object();

  ToyModel init = data.arch == Architecture::LinearRegression
                      ? ToyModel::linear_regression(data.features)
                      : ToyModel::logistic_regression(data.features, data.classes);
  {
    Engine rng = StreamFactory(seed_or(model_cfg, "init_seed", seed)).fork(1).stream(0);
    std::normal_distribution<double> normal(0.0, number_or(model_cfg, "init_scale", 0.01));
    Vector theta(init.dim());
    for (Index i = 0; i < theta.size(); ++i) theta[i] = normal(rng);
    init.set_theta(std::move(theta));
  }

  WhiteboxGameConfig game;
  game.n = count_or(config, "n", game.n);
  game.repetitions = count_or(config, "repetitions", game.repetitions);
  game.master_seed = seed;
  game.threads = threads;
  if (config.contains("sgd")) {
    const json& sgd = config.at("sgd");
    game.sgd.eta = number_or(sgd, "eta", game.sgd.eta);
    game.sgd.batch_size = count_or(sgd, "batch_size", game.sgd.batch_size);
    game.sgd.epochs = count_or(sgd, "epochs", game.sgd.epochs);
    if (sgd.contains("clip")) game.sgd.clip = need_number(sgd, "clip");
    game.sgd.noise = number_or(sgd, "noise", 0.0);
  }
  if (config.contains("slice")) {
    game.slice.offset = count_or(config.at("slice"), "offset", 0);
    game.slice.length = config.at("slice").contains("length")
                            ? static_cast<Index>(need_number(config.at("slice"), "length"))
                            : -1;
  }

  const json ref_cfg = config.contains("reference") ? config.at("reference") : json::object();
  Engine ref_rng = streams.fork(2).stream(0);
  const Dataset ref_data = data.source(count_or(ref_cfg, "n0", 1000), ref_rng);
  const auto refs =
      estimate_reference(example_gradients(init, ref_data, game.slice), parse_reference_options(ref_cfg));

  Example target;
  json target_info;
  const json target_spec = config.contains("target") ? config.at("target") : json("top");
  if (target_spec.is_object()) {
    const json& x = need(target_spec, "x");
    Vector xv(static_cast<Index>(x.size()));
    for (std::size_t i = 0; i < x.size(); ++i) xv[static_cast<Index>(i)] = x[i].get<double>();
    require_same_dim(xv.size(), data.features, "white-box target features");
    target = {std::move(xv), need_number(target_spec, "y")};
    target_info["kind"] = "explicit";
  } else {
    const std::string which = target_spec.get<std::string>();
    require(which == "top" || which == "bottom", "'target' must be \"top\", \"bottom\" or {x, y}");
    Engine pool_rng = streams.fork(3).stream(0);
    const Dataset pool = data.source(count_or(config, "candidates", 500), pool_rng);
    const auto ranked = rank_canaries(example_gradients(init, pool, game.slice), refs);
    const auto& pick = which == "top" ? ranked.front() : ranked.back();
    target = {pool.features.row(pick.index).transpose(), pool.labels[pick.index]};
    target_info["kind"] = which;
    target_info["candidate_index"] = pick.index;
  }
  const Index len = game.slice.resolved_length(init.dim());
  target_info["mahalanobis"] =
      refs.mahalanobis2(init.grad(target.x, target.y).segment(game.slice.offset, len));

  const auto rounds = run_whitebox_game(data.source, init, target, refs, game);
  const auto cov = roc(attack_rounds(rounds, WhiteboxAttack::Covariance));
  const auto scal = roc(attack_rounds(rounds, WhiteboxAttack::Scalar));

  const fs::path dir = output_dir(out_dir);
  std::string csv = "repetition,b,covariance,scalar\n";
  for (std::size_t r = 0; r < rounds.size(); ++r) {
    csv += std::to_string(r) + ',' + (rounds[r].member ? "1" : "0") + ',' +
           format_double(rounds[r].covariance) + ',' + format_double(rounds[r].scalar) + '\n';
  }
  write_file((dir / "scores.csv").string(), csv);

  json out;
  out["target"] = target_info;
  out["repetitions"] = game.repetitions;
  out["covariance"] = {{"auc", cov.auc}, {"roc", curve_json(cov.points)}};
  out["scalar"] = {{"auc", scal.auc}, {"roc", curve_json(scal.points)}};
  stamp(out, config_hash(config), seed);
  write_file((dir / "whitebox.json").string(), dump(out));
}

// ---------------------------------------------------------------- report

void cmd_report(const std::vector<std::string>& empirical, const std::vector<std::string>& theory,
                const std::vector<std::string>& labels, const std::string& out_svg,
                const std::string& out_json, bool log_x) {
  require(!empirical.empty() || !theory.empty(), "report needs at least one input curve");
  require(theory.size() == empirical.size() || theory.size() <= 1 || empirical.empty(),
          "pass one --theory per --empirical, or a single --theory for all");
  require(labels.empty() || labels.size() == std::max(empirical.size(), theory.size()),
          "pass one --label per curve pair");

  const auto label_of = [&](std::size_t i, const std::string& path) {
    return i < labels.size() ? labels[i] : fs::path(path).stem().string();
  };

  std::vector<PlotCurve> curves;
  json pairs = json::array();
  json hashed = {{"log_x", log_x}, {"labels", labels}};
  std::vector<std::vector<RocPoint>> theory_curves;
  for (const auto& path : theory) {
    theory_curves.push_back(read_curve_csv(path));
    hashed["inputs"].push_back(hex64(fnv1a(read_file(path))));
  }
  for (std::size_t i = 0; i < empirical.size(); ++i) {
    auto points = read_curve_csv(empirical[i]);
    hashed["inputs"].push_back(hex64(fnv1a(read_file(empirical[i]))));
    const std::string label = label_of(i, empirical[i]);
    curves.push_back({label + " (empirical)", points, false, static_cast<int>(i)});
    if (!theory_curves.empty()) {
      const std::size_t k = theory_curves.size() == 1 ? 0 : i;
      pairs.push_back({{"label", label},
                       {"empirical", empirical[i]},
                       {"theory", theory[k]},
                       {"sup_norm_gap", curve_gap(points, theory_curves[k])}});
    }
  }
  for (std::size_t k = 0; k < theory_curves.size(); ++k) {
    const std::string label =
        empirical.empty() || theory_curves.size() > 1 ? label_of(k, theory[k]) : "theory";
    curves.push_back({label + " (theory)", theory_curves[k], true, static_cast<int>(k)});
  }

  json out;
  out["pairs"] = pairs;
  out["log_x"] = log_x;
  stamp(out, config_hash(hashed), nullptr);
  write_file(out_svg, render_svg(curves, log_x));
  write_file(out_json, dump(out));
}

void report_error(std::ostream& err, std::string_view kind, std::string_view message) {
  err << json{{"error", kind}, {"message", message}}.dump() << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Membership-inference leakage auditing for mean-style mechanisms", "mi_audit"};
  app.set_version_flag("--version", std::string(MI_AUDIT_VERSION));
  app.require_subcommand(1);

  Common common;
  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--threads", common.threads, "worker threads (0 = all); overrides MI_AUDIT_THREADS");
    sub->add_option("--seed", common.seed, "override master_seed");
  };

  std::string config, out_dir, out_csv, out_json, out_svg, refs_path, cand_path, out_path;
  std::string mode = "full";
  bool centered = false, log_x = false;
  std::optional<double> ridge;
  std::optional<Index> rounds, repetitions;
  std::vector<std::string> empirical, theory, labels;

  auto* theory_cmd = app.add_subcommand("theory", "theoretical trade-off curve and GDP profile");
  theory_cmd->add_option("--config", config, "JSON config")->required();
  theory_cmd->add_option("--out-csv", out_csv, "alpha,power CSV")->required();
  theory_cmd->add_option("--out-json", out_json, "summary JSON")->required();
  add_common(theory_cmd);

  auto* simulate_cmd = app.add_subcommand("simulate", "run a membership-inference game");
  simulate_cmd->add_option("--config", config, "JSON game config")->required();
  simulate_cmd->add_option("--out-dir", out_dir, "directory for rounds.csv, roc.csv, summary.json")
      ->required();
  simulate_cmd->add_option("--rounds", rounds, "override rounds");
  add_common(simulate_cmd);

  auto* canary_cmd = app.add_subcommand("canary", "rank candidates by estimated Mahalanobis score");
  canary_cmd->add_option("--refs", refs_path, "reference vectors, one per CSV row")->required();
  canary_cmd->add_option("--candidates", cand_path, "candidate vectors, one per CSV row")->required();
  canary_cmd->add_option("--out", out_path, "ranked JSON")->required();
  canary_cmd->add_option("--mode", mode, "full or diagonal");
  canary_cmd->add_flag("--centered", centered, "subtract mu0 mu0^T from the second moment");
  canary_cmd->add_option("--ridge", ridge, "diagonal ridge (default 1e-6 trace/d)");

  auto* whitebox_cmd = app.add_subcommand("whitebox", "white-box SGD game, covariance vs scalar attack");
  whitebox_cmd->add_option("--config", config, "JSON config")->required();
  whitebox_cmd->add_option("--out-dir", out_dir, "directory for scores.csv, whitebox.json")->required();
  whitebox_cmd->add_option("--repetitions", repetitions, "override repetitions");
  add_common(whitebox_cmd);

  auto* report_cmd = app.add_subcommand("report", "overlay empirical and theoretical curves as SVG");
  report_cmd->add_option("--empirical", empirical, "empirical curve CSV (fpr,tpr); repeatable");
  report_cmd->add_option("--theory", theory, "theory curve CSV (alpha,power); repeatable");
  report_cmd->add_option("--label", labels, "legend label per pair; repeatable");
  report_cmd->add_option("--out-svg", out_svg, "SVG output")->required();
  report_cmd->add_option("--out-json", out_json, "gap JSON output")->required();
  report_cmd->add_flag("--log-x", log_x, "logarithmic alpha axis");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << MI_AUDIT_VERSION << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    report_error(err, "usage", e.what());
    return kExitConfig;
  }

  try {
    if (theory_cmd->parsed()) {
      cmd_theory(config, out_csv, out_json, common);
    } else if (simulate_cmd->parsed()) {
      cmd_simulate(config, out_dir, rounds, common);
    } else if (canary_cmd->parsed()) {
      cmd_canary(refs_path, cand_path, out_path, mode, centered, ridge);
    } else if (whitebox_cmd->parsed()) {
      cmd_whitebox(config, out_dir, repetitions, common);
    } else if (report_cmd->parsed()) {
      cmd_report(empirical, theory, labels, out_svg, out_json, log_x);
    }
  } catch (const NumericalError& e) {
    report_error(err, "numerical", e.what());
    return kExitNumerical;
  } catch (const ConfigError& e) {
    report_error(err, "config", e.what());
    return kExitConfig;
  } catch (const json::exception& e) {
    report_error(err, "config", e.what());
    return kExitConfig;
  }
  return kExitOk;
}

}  // namespace miaudit::cli
