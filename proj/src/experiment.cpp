#include "folkrec/experiment.hpp"

#include <cstdio>
#include <fstream>

#include "folkrec/index.hpp"
#include "folkrec/registry.hpp"

namespace folkrec {

namespace {

std::string fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

void write_file(const std::filesystem::path& path, const auto& writer) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  writer(out);
  if (!out) throw DataError("failed writing " + path.string());
}

}  // namespace

StatsRecord emit_stats(std::string stage, const Folksonomy& f) {
  return {std::move(stage), f.stats()};
}

PreparedDataset prepare_dataset(const ExperimentConfig& config, const Folksonomy& parsed) {
  PreparedDataset out;
  out.stages.push_back(emit_stats("parsed", parsed));
  Folksonomy current = preprocess(parsed, config.blacklist);
  out.stages.push_back(emit_stats("preprocessed", current));
  if (config.sample_fraction < 1.0) {
    current = sample_users(current, config.sample_fraction, config.seed);
    out.stages.push_back(emit_stats("sampled", current));
  }
  if (config.core > 1) {
    current = p_core(current, config.core);
    out.stages.push_back(emit_stats("core_" + std::to_string(config.core), current));
    out.core_empty = current.empty();
  }
  out.data = std::move(current);
  return out;
}

PreparedDataset prepare_dataset(const ExperimentConfig& config) {
  std::ifstream in(config.dataset, std::ios::binary);
  if (!in) throw DataError("cannot read dataset " + config.dataset);
  return prepare_dataset(config, parse_dataset(in, config.format));
}

ExperimentResult run_pipeline(const ExperimentConfig& config, const Folksonomy& parsed) {
  config.validate();
  auto prepared = prepare_dataset(config, parsed);
  ExperimentResult result;
  result.stages = std::move(prepared.stages);
  result.core_empty = prepared.core_empty;

  auto split = leave_one_out_split(prepared.data, {config.include_single_post_users});
  if (split.test.empty()) throw DataError("empty test set after leave-one-out split");
  std::vector<Post> held_out;
  for (const auto& tc : split.test)
    held_out.push_back({tc.user, tc.resource, tc.true_tags, tc.timestamp});
  result.stages.push_back(emit_stats("train", split.train));
  result.stages.push_back(emit_stats("test", Folksonomy(std::move(held_out))));

  const auto index = build_index(split.train);
  for (const auto& name : config.algorithms) {
    auto recommender = make_recommender(name, index, config.params_for(name));
    result.reports.push_back(evaluate(*recommender, split.test, {config.threads}));
  }
  return result;
}

void write_stats_csv(std::ostream& out, const std::vector<StatsRecord>& stages) {
  out << "stage,bookmarks,users,resources,tags,assignments\n";
  for (const auto& [stage, s] : stages)
    out << stage << ',' << s.bookmarks << ',' << s.users << ',' << s.resources << ',' << s.tags
        << ',' << s.assignments << '\n';
}

void write_metrics_csv(std::ostream& out, const std::vector<EvalReport>& reports,
                       const std::vector<std::size_t>& cutoffs) {
  out << "algorithm,k,recall,precision,f1,mrr,map,posts\n";
  for (const auto& r : reports) {
    for (auto k : cutoffs) {
      const auto& m = r.at(k);
      out << r.algorithm << ',' << k << ',' << fixed(m.recall) << ',' << fixed(m.precision) << ','
          << fixed(m.f1) << ",,,\n";
    }
    out << r.algorithm << ",summary,,,," << fixed(r.mrr) << ',' << fixed(r.map) << ',' << r.posts
        << '\n';
  }
}

void write_curves_csv(std::ostream& out, const std::vector<EvalReport>& reports,
                      const std::vector<std::size_t>& cutoffs) {
  out << "algorithm,k,recall,precision\n";
  for (const auto& r : reports)
    for (auto k : cutoffs)
      out << r.algorithm << ',' << k << ',' << fixed(r.at(k).recall) << ','
          << fixed(r.at(k).precision) << '\n';
}

void write_summary_csv(std::ostream& out, const std::vector<EvalReport>& reports) {
  out << "algorithm,f1@5,mrr,map\n";
  for (const auto& r : reports)
    out << r.algorithm << ',' << fixed(r.at(5).f1) << ',' << fixed(r.mrr) << ',' << fixed(r.map)
        << '\n';
}

void write_manifest(std::ostream& out, const ExperimentConfig& config,
                    const ExperimentResult& result) {
  KeyValues manifest = config.echo();
  manifest["tool"] = "folkrec";
  manifest["version"] = std::string(kToolVersion);
  manifest["result.core_empty"] = result.core_empty ? "true" : "false";
  for (const auto& [stage, s] : result.stages)
    manifest["result." + stage + ".bookmarks"] = std::to_string(s.bookmarks);
  if (config.timings)
    for (const auto& r : result.reports)
      manifest["timing." + r.algorithm + ".seconds"] = fixed(r.wall_seconds);
  write_key_values(out, manifest);
}

std::vector<std::filesystem::path> run_experiment(const ExperimentConfig& config,
                                                  const Folksonomy& parsed) {
  const auto result = run_pipeline(config, parsed);
  const std::filesystem::path dir(config.output_dir);
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> written = {dir / "stats.csv", dir / "metrics.csv",
                                                dir / "curves.csv", dir / "summary.csv",
                                                dir / "manifest.txt"};
  write_file(written[0], [&](std::ostream& o) { write_stats_csv(o, result.stages); });
  write_file(written[1], [&](std::ostream& o) { write_metrics_csv(o, result.reports, config.cutoffs); });
  write_file(written[2], [&](std::ostream& o) { write_curves_csv(o, result.reports, config.cutoffs); });
  write_file(written[3], [&](std::ostream& o) { write_summary_csv(o, result.reports); });
  write_file(written[4], [&](std::ostream& o) { write_manifest(o, config, result); });
  return written;
}

std::vector<std::filesystem::path> run_experiment(const ExperimentConfig& config) {
  config.validate();
  std::ifstream in(config.dataset, std::ios::binary);
  if (!in) throw DataError("cannot read dataset " + config.dataset);
  return run_experiment(config, parse_dataset(in, config.format));
}

}  // namespace folkrec
