#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "folkrec/corpus.hpp"
#include "folkrec/registry.hpp"

namespace folkrec {

/// Ordered key -> value pairs of the flat config format:
///
///   # comment
///   key = value
///
/// Later assignments of a key replace earlier ones.
using KeyValues = std::map<std::string, std::string>;

/// Throws UsageError with the line number for lines without '='.
KeyValues parse_key_values(std::istream& in);
KeyValues read_key_values_file(const std::string& path);
void write_key_values(std::ostream& out, const KeyValues& values);

/// Everything one experiment run needs.
///
/// Recognized keys:
///   dataset, format.delimiter (whitespace|tab|comma), format.columns
///   (e.g. "user,tag,resource,timestamp"), format.header (auto|yes|no),
///   blacklist (replaces the defaults), blacklist.extra (adds to them),
///   core, sample.fraction, seed, algorithms, cutoffs ("1-10" or a list),
///   output, threads, include_single_post_users, timings.
/// Algorithm parameters d, beta, lambda, min_recency, mix, neighbors,
/// damping, tol and max_iter apply to every algorithm and may be overridden
/// per algorithm as "<algorithm>.<parameter>", e.g. "bll_c.beta = 0.7".
struct ExperimentConfig {
  std::string dataset;
  ColumnFormat format;
  std::set<std::string> blacklist = default_blacklist();
  unsigned core = 0;  // 0 disables p-core pruning
  double sample_fraction = 1.0;
  std::uint64_t seed = 42;
  std::vector<std::string> algorithms = {"mp_u", "girp", "bll"};
  std::vector<std::size_t> cutoffs = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  std::string output_dir = "results";
  unsigned threads = 1;
  bool include_single_post_users = false;
  bool timings = false;

  /// Applies `values` on top of the current settings. Throws UsageError on
  /// unknown keys or unparseable values.
  void apply(const KeyValues& values);

  /// Throws UsageError if any setting is out of range or an algorithm is
  /// not registered.
  void validate() const;

  AlgorithmParams params_for(const std::string& algorithm) const;

  /// Resolved settings that determine the results (excludes output and
  /// threads, which do not).
  KeyValues echo() const;

 private:
  AlgorithmParams defaults_;
  std::map<std::string, KeyValues> overrides_;  // algorithm -> parameter -> value
};

}  // namespace folkrec
