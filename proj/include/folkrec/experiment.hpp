#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "folkrec/config.hpp"
#include "folkrec/evaluation.hpp"

namespace folkrec {

inline constexpr std::string_view kToolVersion = "1.0.0";

/// Dataset properties at one pipeline stage.
struct StatsRecord {
  std::string stage;
  FolksonomyStats stats;
};

StatsRecord emit_stats(std::string stage, const Folksonomy& f);

/// Output of parse -> preprocess -> sample -> p-core.
struct PreparedDataset {
  Folksonomy data;
  std::vector<StatsRecord> stages;
  bool core_empty = false;  // pruning removed everything
};

/// Reads config.dataset from disk and prepares it.
PreparedDataset prepare_dataset(const ExperimentConfig& config);
/// Prepares an already parsed folksonomy.
PreparedDataset prepare_dataset(const ExperimentConfig& config, const Folksonomy& parsed);

struct ExperimentResult {
  std::vector<StatsRecord> stages;  // includes train and test rows
  std::vector<EvalReport> reports;  // config algorithm order
  bool core_empty = false;
};

/// Splits, indexes and evaluates every configured algorithm. Validates the
/// config first, so an unknown algorithm fails before any computation.
/// Throws DataError when the split leaves no test case.
ExperimentResult run_pipeline(const ExperimentConfig& config, const Folksonomy& parsed);

void write_stats_csv(std::ostream& out, const std::vector<StatsRecord>& stages);
/// One row per (algorithm, k) with R/P/F1, then one summary row per
/// algorithm with MRR, MAP and the number of test posts.
void write_metrics_csv(std::ostream& out, const std::vector<EvalReport>& reports,
                       const std::vector<std::size_t>& cutoffs);
/// (recall, precision) per k for recall/precision plots.
void write_curves_csv(std::ostream& out, const std::vector<EvalReport>& reports,
                      const std::vector<std::size_t>& cutoffs);
/// Compact F1@5 / MRR / MAP comparison, one row per algorithm.
void write_summary_csv(std::ostream& out, const std::vector<EvalReport>& reports);
void write_manifest(std::ostream& out, const ExperimentConfig& config,
                    const ExperimentResult& result);

/// Full run: prepares config.dataset, evaluates, then writes stats.csv,
/// metrics.csv, curves.csv, summary.csv and manifest.txt into
/// config.output_dir. Returns the written paths.
std::vector<std::filesystem::path> run_experiment(const ExperimentConfig& config);
std::vector<std::filesystem::path> run_experiment(const ExperimentConfig& config,
                                                  const Folksonomy& parsed);

}  // namespace folkrec
