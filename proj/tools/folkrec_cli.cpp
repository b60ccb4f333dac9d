// folkrec: prepare folksonomy dumps, split them, and benchmark tag
// recommenders. See README.md for the config format.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "folkrec/config.hpp"
#include "folkrec/experiment.hpp"
#include "folkrec/index.hpp"
#include "folkrec/registry.hpp"
#include "folkrec/synthetic.hpp"

namespace {

using namespace folkrec;

constexpr int kUsageExit = 1;
constexpr int kDataExit = 2;

/// Flags that map one-to-one onto config keys. Values given on the command
/// line are applied after the config file.
class KeyFlags {
 public:
  void add(CLI::App* app, const std::string& flag, const std::string& key, const std::string& help) {
    app->add_option(flag, values_[key], help);
  }
  void add_set(CLI::App* app) {
    app->add_option("--set", assignments_, "Extra config assignment KEY=VALUE (repeatable)");
  }
  KeyValues collect() const {
    KeyValues out;
    for (const auto& [key, value] : values_)
      if (!value.empty()) out[key] = value;
    for (const auto& a : assignments_) {
      auto eq = a.find('=');
      if (eq == std::string::npos) throw UsageError("--set expects KEY=VALUE, got '" + a + "'");
      out[a.substr(0, eq)] = a.substr(eq + 1);
    }
    return out;
  }

 private:
  std::map<std::string, std::string> values_;
  std::vector<std::string> assignments_;
};

struct DatasetOptions {
  std::string config_path;
  KeyFlags flags;

  void attach(CLI::App* app) {
    app->add_option("-c,--config", config_path, "Key-value config file");
    flags.add(app, "--dataset", "dataset", "Tag assignment file");
    flags.add(app, "--columns", "format.columns", "Column order, e.g. user,tag,resource,timestamp");
    flags.add(app, "--delimiter", "format.delimiter", "whitespace, tab or comma");
    flags.add(app, "--header", "format.header", "auto, yes or no");
    flags.add(app, "--core", "core", "p-core level (0 = no pruning)");
    flags.add(app, "--sample-users", "sample.fraction", "Keep this fraction of users");
    flags.add(app, "--seed", "seed", "Seed for all randomness");
    flags.add(app, "--blacklist-add", "blacklist.extra", "Extra blacklisted tags, comma separated");
    flags.add(app, "-o,--output", "output", "Output directory");
    flags.add_set(app);
  }

  void attach_algorithm_flags(CLI::App* app) {
    flags.add(app, "--d", "d", "BLL decay exponent (default 0.5)");
    flags.add(app, "--beta", "beta", "User/resource weight for bll_c and girptm (default 0.5)");
    flags.add(app, "--lambda", "lambda", "GIRP decay rate per second (default 1/86400)");
    flags.add(app, "--min-recency", "min_recency", "Recency clamp in seconds (default 1)");
    flags.add(app, "--mix", "mix", "mp_ur user weight (default 0.5)");
    flags.add(app, "--neighbors", "neighbors", "CF neighborhood size (default 20)");
    flags.add(app, "--damping", "damping", "APR/FR damping (default 0.7)");
    flags.add(app, "--tol", "tol", "APR/FR tolerance (default 1e-6)");
    flags.add(app, "--max-iter", "max_iter", "APR/FR iteration cap (default 100)");
  }

  ExperimentConfig resolve() const {
    ExperimentConfig config;
    if (!config_path.empty()) config.apply(read_key_values_file(config_path));
    config.apply(flags.collect());
    if (config.dataset.empty()) throw UsageError("no dataset given (--dataset or config)");
    return config;
  }
};

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  return out;
}

int run_prepare(const DatasetOptions& opts) {
  auto config = opts.resolve();
  auto prepared = prepare_dataset(config);
  std::filesystem::create_directories(config.output_dir);
  const auto dir = std::filesystem::path(config.output_dir);
  auto data = open_output(dir / "prepared.tsv");
  write_assignments(data, prepared.data);
  auto stats = open_output(dir / "stats.csv");
  write_stats_csv(stats, prepared.stages);
  write_stats_csv(std::cout, prepared.stages);
  if (prepared.core_empty) std::cerr << "warning: p-core pruning left an empty dataset\n";
  return 0;
}

int run_stats(const DatasetOptions& opts) {
  auto prepared = prepare_dataset(opts.resolve());
  write_stats_csv(std::cout, prepared.stages);
  return 0;
}

int run_split(const DatasetOptions& opts) {
  auto config = opts.resolve();
  auto prepared = prepare_dataset(config);
  auto split = leave_one_out_split(prepared.data, {config.include_single_post_users});
  if (split.test.empty()) throw DataError("empty test set after leave-one-out split");
  const auto dir = std::filesystem::path(config.output_dir);
  std::filesystem::create_directories(dir);
  auto train = open_output(dir / "train.tsv");
  write_assignments(train, split.train);
  auto test = open_output(dir / "test.tsv");
  for (const auto& tc : split.test)
    for (const auto& t : tc.true_tags)
      test << tc.user << '\t' << tc.resource << '\t' << t << '\t' << tc.timestamp << '\n';
  save_snapshot_file(build_index(split.train), (dir / "train.idx").string());
  std::cout << "train posts: " << split.train.size() << "\ntest posts: " << split.test.size()
            << "\n";
  return 0;
}

int run_evaluate(const DatasetOptions& opts) {
  auto config = opts.resolve();
  config.validate();
  auto written = run_experiment(config);
  std::ifstream summary(config.output_dir + "/summary.csv");
  std::cout << summary.rdbuf();
  for (const auto& p : written) std::cerr << "wrote " << p.string() << '\n';
  return 0;
}

struct SynthOptions {
  SynthParams params;
  std::string out;
};

int run_synth(const SynthOptions& opts) {
  auto f = generate_synthetic(opts.params);
  if (opts.out.empty() || opts.out == "-") {
    write_assignments(std::cout, f);
  } else {
    auto out = open_output(opts.out);
    write_assignments(out, f);
  }
  return 0;
}

struct RecommendOptions {
  DatasetOptions dataset;
  std::string index_path;
  std::string algorithm = "bll_c";
  std::string user;
  std::string resource;
  std::size_t k = 10;
  long long ref_time = -1;
};

int run_recommend(const RecommendOptions& opts) {
  ExperimentConfig config;
  if (!opts.dataset.config_path.empty())
    config.apply(read_key_values_file(opts.dataset.config_path));
  config.apply(opts.dataset.flags.collect());
  TrainingIndex index;
  if (!opts.index_path.empty()) {
    index = load_snapshot_file(opts.index_path);
  } else {
    if (config.dataset.empty()) throw UsageError("give --index or a dataset");
    index = build_index(prepare_dataset(config).data);
  }
  auto recommender = make_recommender(opts.algorithm, index, config.params_for(opts.algorithm));
  Timestamp ref = opts.ref_time;
  if (ref < 0) {
    auto u = index.find_user(opts.user);
    ref = u ? index.latest_timestamp(*u) + 1 : 0;
  }
  auto rec = recommender->recommend({opts.user, opts.resource, ref}, opts.k);
  std::cout << "rank\ttag\tscore\n";
  for (std::size_t i = 0; i < rec.size(); ++i) {
    char score[32];
    std::snprintf(score, sizeof score, "%.6g", rec[i].score);
    std::cout << i + 1 << '\t' << rec[i].tag << '\t' << score << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"folkrec: tag recommendation benchmark"};
  app.require_subcommand(1);

  DatasetOptions prepare_opts, stats_opts, split_opts, evaluate_opts;
  auto* prepare = app.add_subcommand("prepare", "Preprocess, sample and prune a dataset");
  prepare_opts.attach(prepare);
  auto* stats = app.add_subcommand("stats", "Print dataset statistics per pipeline stage");
  stats_opts.attach(stats);
  auto* split = app.add_subcommand("split", "Write the leave-one-out train/test split");
  split_opts.attach(split);
  auto* evaluate = app.add_subcommand("evaluate", "Run a full experiment");
  evaluate_opts.attach(evaluate);
  evaluate_opts.attach_algorithm_flags(evaluate);
  evaluate_opts.flags.add(evaluate, "--algorithms", "algorithms", "Comma separated algorithm names");
  evaluate_opts.flags.add(evaluate, "--threads", "threads", "Worker threads");
  evaluate_opts.flags.add(evaluate, "--cutoffs", "cutoffs", "Reported cutoffs, e.g. 1-10");
  evaluate_opts.flags.add(evaluate, "--timings", "timings", "Record wall times in the manifest");

  SynthOptions synth_opts;
  auto* synth = app.add_subcommand("synth", "Generate a synthetic folksonomy");
  synth->add_option("--users", synth_opts.params.users, "Number of users");
  synth->add_option("--base-tags", synth_opts.params.base_tags, "Shared vocabulary size");
  synth->add_option("--reuse-bias", synth_opts.params.reuse_bias, "Chance to reuse an own tag");
  synth->add_option("--recency-bias", synth_opts.params.recency_bias, "Recency vs frequency in reuse");
  synth->add_option("--context-bias", synth_opts.params.context_bias, "Reuse guided by the resource");
  synth->add_option("--seed", synth_opts.params.seed, "Generator seed");
  synth->add_option("--min-posts", synth_opts.params.min_posts, "Minimum posts per user");
  synth->add_option("--max-posts", synth_opts.params.max_posts, "Maximum posts per user");
  synth->add_option("--min-tags", synth_opts.params.min_tags, "Minimum tags per post");
  synth->add_option("--max-tags", synth_opts.params.max_tags, "Maximum tags per post");
  synth->add_option("--resources", synth_opts.params.resources, "Resource pool size (0 = 3 * users)");
  synth->add_option("--topic-tags", synth_opts.params.topic_tags, "Topic tags per resource");
  synth->add_option("--out", synth_opts.out, "Output file (default stdout)");

  RecommendOptions rec_opts;
  auto* recommend = app.add_subcommand("recommend", "Recommend tags for one user and resource");
  rec_opts.dataset.attach(recommend);
  rec_opts.dataset.attach_algorithm_flags(recommend);
  recommend->add_option("--index", rec_opts.index_path, "Index snapshot written by 'split'");
  recommend->add_option("-a,--algorithm", rec_opts.algorithm, "Algorithm name");
  recommend->add_option("-u,--user", rec_opts.user, "User id")->required();
  recommend->add_option("-r,--resource", rec_opts.resource, "Resource id");
  recommend->add_option("-k", rec_opts.k, "Number of tags");
  recommend->add_option("--ref-time", rec_opts.ref_time,
                        "Reference time (default: user's latest post + 1s)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kUsageExit;
  }

  try {
    if (prepare->parsed()) return run_prepare(prepare_opts);
    if (stats->parsed()) return run_stats(stats_opts);
    if (split->parsed()) return run_split(split_opts);
    if (evaluate->parsed()) return run_evaluate(evaluate_opts);
    if (synth->parsed()) return run_synth(synth_opts);
    if (recommend->parsed()) return run_recommend(rec_opts);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageExit;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDataExit;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDataExit;
  }
  return kUsageExit;
}
