#include "folkrec/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <ostream>

namespace folkrec {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    auto pos = s.find(',', start);
    auto item = trim(s.substr(start, pos - start));
    if (!item.empty()) out.push_back(std::move(item));
    if (pos == std::string_view::npos) return out;
    start = pos + 1;
  }
}

std::string join(const auto& items) {
  std::string out;
  for (const auto& item : items) {
    if (!out.empty()) out += ',';
    out += item;
  }
  return out;
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value) {
  throw UsageError("invalid value '" + value + "' for '" + key + "'");
}

double parse_double(const std::string& key, const std::string& value) {
  // "a/b" is accepted so that rates such as 1/86400 can be written exactly.
  auto slash = value.find('/');
  if (slash != std::string::npos)
    return parse_double(key, value.substr(0, slash)) / parse_double(key, value.substr(slash + 1));
  double out = 0.0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size() || value.empty()) bad_value(key, value);
  return out;
}

std::uint64_t parse_unsigned(const std::string& key, const std::string& value) {
  std::uint64_t out = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size() || value.empty()) bad_value(key, value);
  return out;
}

bool parse_bool(const std::string& key, const std::string& value) {
  auto v = to_lower_ascii(value);
  if (v == "true" || v == "yes" || v == "1" || v == "on") return true;
  if (v == "false" || v == "no" || v == "0" || v == "off") return false;
  bad_value(key, value);
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

const std::vector<std::string>& param_names() {
  static const std::vector<std::string> names = {"d",    "beta",    "lambda", "min_recency", "mix",
                                                 "neighbors", "damping", "tol",    "max_iter"};
  return names;
}

bool is_param(const std::string& name) {
  const auto& names = param_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

void set_param(AlgorithmParams& p, const std::string& key, const std::string& name,
               const std::string& value) {
  if (name == "d") p.decay.d = parse_double(key, value);
  else if (name == "beta") p.decay.beta = parse_double(key, value);
  else if (name == "lambda") p.decay.lambda = parse_double(key, value);
  else if (name == "min_recency") p.decay.min_recency = parse_double(key, value);
  else if (name == "mix") p.mix = parse_double(key, value);
  else if (name == "neighbors") p.neighbors = parse_unsigned(key, value);
  else if (name == "damping") p.rank.damping = parse_double(key, value);
  else if (name == "tol") p.rank.tol = parse_double(key, value);
  else if (name == "max_iter") p.rank.max_iter = static_cast<unsigned>(parse_unsigned(key, value));
  else throw UsageError("unknown parameter '" + key + "'");
}

std::string get_param(const AlgorithmParams& p, const std::string& name) {
  if (name == "d") return format_double(p.decay.d);
  if (name == "beta") return format_double(p.decay.beta);
  if (name == "lambda") return format_double(p.decay.lambda);
  if (name == "min_recency") return format_double(p.decay.min_recency);
  if (name == "mix") return format_double(p.mix);
  if (name == "neighbors") return std::to_string(p.neighbors);
  if (name == "damping") return format_double(p.rank.damping);
  if (name == "tol") return format_double(p.rank.tol);
  return std::to_string(p.rank.max_iter);
}

std::vector<std::size_t> parse_cutoffs(const std::string& key, const std::string& value) {
  std::vector<std::size_t> out;
  for (const auto& item : split_list(value)) {
    auto dash = item.find('-');
    if (dash == std::string::npos) {
      out.push_back(parse_unsigned(key, item));
    } else {
      auto lo = parse_unsigned(key, trim(item.substr(0, dash)));
      auto hi = parse_unsigned(key, trim(item.substr(dash + 1)));
      for (auto k = lo; k <= hi; ++k) out.push_back(k);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

KeyValues parse_key_values(std::istream& in) {
  KeyValues out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto text = trim(line);
    if (text.empty() || text.front() == '#') continue;
    auto eq = text.find('=');
    if (eq == std::string::npos)
      throw UsageError("config line " + std::to_string(line_no) + ": expected key = value");
    auto key = trim(std::string_view(text).substr(0, eq));
    if (key.empty()) throw UsageError("config line " + std::to_string(line_no) + ": empty key");
    out[key] = trim(std::string_view(text).substr(eq + 1));
  }
  return out;
}

KeyValues read_key_values_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file " + path);
  return parse_key_values(in);
}

void write_key_values(std::ostream& out, const KeyValues& values) {
  for (const auto& [k, v] : values) out << k << " = " << v << '\n';
}

void ExperimentConfig::apply(const KeyValues& values) {
  for (const auto& [key, value] : values) {
    if (key == "dataset") {
      dataset = value;
    } else if (key == "format.delimiter") {
      auto v = to_lower_ascii(value);
      if (v == "whitespace") format.delimiter = Delimiter::kWhitespace;
      else if (v == "tab") format.delimiter = Delimiter::kTab;
      else if (v == "comma") format.delimiter = Delimiter::kComma;
      else bad_value(key, value);
    } else if (key == "format.columns") {
      auto parsed = ColumnFormat::from_order(value);
      parsed.delimiter = format.delimiter;
      parsed.header = format.header;
      format = parsed;
    } else if (key == "format.header") {
      auto v = to_lower_ascii(value);
      if (v == "auto") format.header = HeaderMode::kAuto;
      else if (v == "yes" || v == "true") format.header = HeaderMode::kPresent;
      else if (v == "no" || v == "false") format.header = HeaderMode::kAbsent;
      else bad_value(key, value);
    } else if (key == "blacklist") {
      auto items = split_list(value);
      blacklist = {items.begin(), items.end()};
    } else if (key == "blacklist.extra") {
      for (auto& item : split_list(value)) blacklist.insert(std::move(item));
    } else if (key == "core") {
      core = static_cast<unsigned>(parse_unsigned(key, value));
    } else if (key == "sample.fraction") {
      sample_fraction = parse_double(key, value);
    } else if (key == "seed") {
      seed = parse_unsigned(key, value);
    } else if (key == "algorithms") {
      algorithms = split_list(value);
    } else if (key == "cutoffs") {
      cutoffs = parse_cutoffs(key, value);
    } else if (key == "output") {
      output_dir = value;
    } else if (key == "threads") {
      threads = static_cast<unsigned>(parse_unsigned(key, value));
    } else if (key == "include_single_post_users") {
      include_single_post_users = parse_bool(key, value);
    } else if (key == "timings") {
      timings = parse_bool(key, value);
    } else if (is_param(key)) {
      set_param(defaults_, key, key, value);
    } else if (auto dot = key.find('.'); dot != std::string::npos &&
                                         is_known_algorithm(key.substr(0, dot)) &&
                                         is_param(key.substr(dot + 1))) {
      AlgorithmParams probe;
      set_param(probe, key, key.substr(dot + 1), value);  // validates the value
      overrides_[key.substr(0, dot)][key.substr(dot + 1)] = value;
    } else {
      throw UsageError("unknown config key '" + key + "'");
    }
  }
}

AlgorithmParams ExperimentConfig::params_for(const std::string& algorithm) const {
  AlgorithmParams p = defaults_;
  if (auto it = overrides_.find(algorithm); it != overrides_.end())
    for (const auto& [name, value] : it->second) set_param(p, algorithm + "." + name, name, value);
  return p;
}

void ExperimentConfig::validate() const {
  if (algorithms.empty()) throw UsageError("no algorithms configured");
  for (const auto& a : algorithms) {
    if (!is_known_algorithm(a)) throw UsageError("unknown algorithm '" + a + "'");
    params_for(a).validate();
  }
  if (std::set<std::string>(algorithms.begin(), algorithms.end()).size() != algorithms.size())
    throw UsageError("algorithm listed twice");
  if (!(sample_fraction > 0.0 && sample_fraction <= 1.0))
    throw UsageError("sample.fraction must lie in (0, 1]");
  if (cutoffs.empty()) throw UsageError("no cutoffs configured");
  for (auto k : cutoffs)
    if (k < 1 || k > 10) throw UsageError("cutoffs must lie in 1..10");
  if (threads < 1) throw UsageError("threads must be >= 1");
}

KeyValues ExperimentConfig::echo() const {
  KeyValues out;
  out["dataset"] = dataset;
  out["format.delimiter"] = format.delimiter == Delimiter::kTab     ? "tab"
                            : format.delimiter == Delimiter::kComma ? "comma"
                                                                    : "whitespace";
  std::vector<std::string> columns(std::max({format.user_column, format.resource_column,
                                             format.tag_column, format.timestamp_column}) + 1, "_");
  columns[format.user_column] = "user";
  columns[format.resource_column] = "resource";
  columns[format.tag_column] = "tag";
  columns[format.timestamp_column] = "timestamp";
  out["format.columns"] = join(columns);
  out["format.header"] = format.header == HeaderMode::kAuto      ? "auto"
                         : format.header == HeaderMode::kPresent ? "yes"
                                                                 : "no";
  out["blacklist"] = join(blacklist);
  out["core"] = std::to_string(core);
  out["sample.fraction"] = format_double(sample_fraction);
  out["seed"] = std::to_string(seed);
  out["algorithms"] = join(algorithms);
  std::vector<std::string> ks;
  for (auto k : cutoffs) ks.push_back(std::to_string(k));
  out["cutoffs"] = join(ks);
  out["include_single_post_users"] = include_single_post_users ? "true" : "false";
  out["timings"] = timings ? "true" : "false";
  for (const auto& name : param_names()) out[name] = get_param(defaults_, name);
  for (const auto& [algorithm, params] : overrides_) {
    const auto resolved = params_for(algorithm);
    for (const auto& [name, value] : params) out[algorithm + "." + name] = get_param(resolved, name);
  }
  return out;
}

}  // namespace folkrec
