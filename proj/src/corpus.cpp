#include "folkrec/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <map>
#include <numeric>
#include <optional>
#include <tuple>
#include <ostream>
#include <unordered_map>
#include <unordered_set>
#include <utility>

#include "folkrec/random.hpp"

namespace folkrec {

namespace {

std::string line_error(std::size_t line_no, std::string_view what) {
  return "line " + std::to_string(line_no) + ": " + std::string(what);
}

std::vector<std::string> split_line(std::string_view line, Delimiter delimiter) {
  std::vector<std::string> fields;
  switch (delimiter) {
    case Delimiter::kWhitespace: {
      std::size_t i = 0;
      while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        if (i >= line.size()) break;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
        fields.emplace_back(line.substr(i, j - i));
        i = j;
      }
      break;
    }
    case Delimiter::kTab: {
      std::size_t start = 0;
      for (;;) {
        auto pos = line.find('\t', start);
        fields.emplace_back(line.substr(start, pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
      }
      break;
    }
    case Delimiter::kComma: {
      // Minimal RFC 4180: double-quoted fields with "" escapes.
      std::string field;
      bool quoted = false;
      for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
          if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
            field.push_back('"');
            ++i;
          } else if (c == '"') {
            quoted = false;
          } else {
            field.push_back(c);
          }
        } else if (c == '"') {
          quoted = true;
        } else if (c == ',') {
          fields.push_back(std::move(field));
          field.clear();
        } else {
          field.push_back(c);
        }
      }
      fields.push_back(std::move(field));
      break;
    }
  }
  return fields;
}

bool parse_digits(std::string_view s, int& out) {
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

std::optional<Timestamp> parse_epoch(std::string_view text) {
  auto dot = text.find('.');
  std::string_view whole = text.substr(0, dot);
  if (dot != std::string_view::npos) {
    std::string_view frac = text.substr(dot + 1);
    if (!std::all_of(frac.begin(), frac.end(), [](char c) { return c >= '0' && c <= '9'; }))
      return std::nullopt;
  }
  Timestamp value = 0;
  auto [ptr, ec] = std::from_chars(whole.data(), whole.data() + whole.size(), value);
  if (ec != std::errc() || ptr != whole.data() + whole.size() || whole.empty()) return std::nullopt;
  return value;
}

std::optional<Timestamp> parse_iso8601(std::string_view s) {
  // YYYY-MM-DD[T ]hh:mm:ss
  if (s.size() < 19 || s[4] != '-' || s[7] != '-' || (s[10] != 'T' && s[10] != ' ') ||
      s[13] != ':' || s[16] != ':')
    return std::nullopt;
  int y, mo, d, h, mi, sec;
  if (!parse_digits(s.substr(0, 4), y) || !parse_digits(s.substr(5, 2), mo) ||
      !parse_digits(s.substr(8, 2), d) || !parse_digits(s.substr(11, 2), h) ||
      !parse_digits(s.substr(14, 2), mi) || !parse_digits(s.substr(17, 2), sec))
    return std::nullopt;
  using namespace std::chrono;
  year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)}, day{static_cast<unsigned>(d)}};
  if (!ymd.ok() || h > 23 || mi > 59 || sec > 60) return std::nullopt;

  std::string_view rest = s.substr(19);
  if (!rest.empty() && rest.front() == '.') {
    std::size_t i = 1;
    while (i < rest.size() && rest[i] >= '0' && rest[i] <= '9') ++i;
    if (i == 1) return std::nullopt;
    rest.remove_prefix(i);
  }
  Timestamp offset = 0;
  if (rest == "Z") {
    rest = {};
  } else if (!rest.empty() && (rest.front() == '+' || rest.front() == '-')) {
    int oh, om;
    bool colon = rest.size() == 6 && rest[3] == ':';
    if (!(rest.size() == 6 && colon) && rest.size() != 5) return std::nullopt;
    if (!parse_digits(rest.substr(1, 2), oh) ||
        !parse_digits(rest.substr(colon ? 4 : 3, 2), om))
      return std::nullopt;
    offset = (rest.front() == '+' ? 1 : -1) * (oh * 3600 + om * 60);
    rest = {};
  }
  if (!rest.empty()) return std::nullopt;

  Timestamp days = sys_days{ymd}.time_since_epoch().count();
  return days * 86400 + h * 3600 + mi * 60 + sec - offset;
}

}  // namespace

Folksonomy::Folksonomy(std::vector<Post> posts) : posts_(std::move(posts)) {
  for (auto& p : posts_) {
    std::sort(p.tags.begin(), p.tags.end());
    p.tags.erase(std::unique(p.tags.begin(), p.tags.end()), p.tags.end());
    if (p.tags.empty())
      throw DataError("post (" + p.user + ", " + p.resource + ") has no tags");
    if (p.timestamp < 0)
      throw DataError("post (" + p.user + ", " + p.resource + ") has a negative timestamp");
  }
  std::sort(posts_.begin(), posts_.end(), [](const Post& a, const Post& b) {
    return std::tie(a.user, a.resource) < std::tie(b.user, b.resource);
  });
  auto dup = std::adjacent_find(posts_.begin(), posts_.end(), [](const Post& a, const Post& b) {
    return a.user == b.user && a.resource == b.resource;
  });
  if (dup != posts_.end())
    throw DataError("duplicate post for (" + dup->user + ", " + dup->resource + ")");
}

FolksonomyStats Folksonomy::stats() const {
  std::unordered_set<std::string_view> users, resources, tags;
  FolksonomyStats s;
  s.bookmarks = posts_.size();
  for (const auto& p : posts_) {
    users.insert(p.user);
    resources.insert(p.resource);
    for (const auto& t : p.tags) tags.insert(t);
    s.assignments += p.tags.size();
  }
  s.users = users.size();
  s.resources = resources.size();
  s.tags = tags.size();
  return s;
}

std::vector<TagAssignment> Folksonomy::assignments() const {
  std::vector<TagAssignment> out;
  for (const auto& p : posts_)
    for (const auto& t : p.tags) out.push_back({p.user, p.resource, t, p.timestamp});
  return out;
}

ColumnFormat ColumnFormat::from_order(std::string_view order) {
  ColumnFormat f;
  bool seen[4] = {false, false, false, false};
  std::size_t column = 0;
  std::size_t start = 0;
  for (;;) {
    auto pos = order.find(',', start);
    std::string name = to_lower_ascii(order.substr(start, pos - start));
    name.erase(0, name.find_first_not_of(' '));
    name.erase(name.find_last_not_of(' ') + 1);
    int slot = name == "user" ? 0 : name == "resource" ? 1 : name == "tag" ? 2
             : name == "timestamp" ? 3 : -1;
    if (slot >= 0) {
      if (seen[slot]) throw UsageError("column '" + name + "' listed twice");
      seen[slot] = true;
      std::size_t* targets[] = {&f.user_column, &f.resource_column, &f.tag_column,
                                &f.timestamp_column};
      *targets[slot] = column;
    }
    ++column;
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  if (!(seen[0] && seen[1] && seen[2] && seen[3]))
    throw UsageError("column order must name user, resource, tag and timestamp");
  return f;
}

Timestamp parse_timestamp(std::string_view text) {
  if (auto v = parse_epoch(text)) return *v;
  if (auto v = parse_iso8601(text)) return *v;
  throw DataError("unparseable timestamp '" + std::string(text) + "'");
}

Folksonomy parse_dataset(std::istream& in, const ColumnFormat& format) {
  struct Pending {
    Timestamp timestamp;
    std::set<std::string> tags;
  };
  std::map<std::pair<std::string, std::string>, Pending> pending;
  const std::size_t needed = std::max({format.user_column, format.resource_column,
                                       format.tag_column, format.timestamp_column}) + 1;

  std::string line;
  std::size_t line_no = 0;
  bool first_data_line = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;

    auto fields = split_line(line, format.delimiter);
    const bool maybe_header = first_data_line;
    first_data_line = false;
    if (maybe_header && format.header == HeaderMode::kPresent) continue;
    if (fields.size() < needed) {
      if (maybe_header && format.header == HeaderMode::kAuto) continue;
      throw DataError(line_error(line_no, "expected at least " + std::to_string(needed) +
                                              " columns, found " + std::to_string(fields.size())));
    }
    Timestamp ts;
    try {
      ts = parse_timestamp(fields[format.timestamp_column]);
    } catch (const DataError& e) {
      if (maybe_header && format.header == HeaderMode::kAuto) continue;
      throw DataError(line_error(line_no, e.what()));
    }
    if (ts < 0) throw DataError(line_error(line_no, "negative timestamp"));
    const auto& user = fields[format.user_column];
    const auto& resource = fields[format.resource_column];
    const auto& tag = fields[format.tag_column];
    if (user.empty() || resource.empty() || tag.empty())
      throw DataError(line_error(line_no, "empty user, resource or tag field"));

    auto [it, inserted] = pending.try_emplace({user, resource}, Pending{ts, {}});
    Pending& p = it->second;
    if (ts > p.timestamp) {
      p.timestamp = ts;
      p.tags.clear();
    }
    if (ts == p.timestamp) p.tags.insert(tag);
  }
  if (pending.empty()) throw DataError("empty dataset");

  std::vector<Post> posts;
  posts.reserve(pending.size());
  for (auto& [key, p] : pending)
    posts.push_back({key.first, key.second, {p.tags.begin(), p.tags.end()}, p.timestamp});
  return Folksonomy(std::move(posts));
}

std::set<std::string> default_blacklist() { return {"no-tag", "bibtex-import"}; }

std::string to_lower_ascii(std::string_view s) {
  std::string out(s);
  for (auto& c : out)
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  return out;
}

Folksonomy preprocess(const Folksonomy& f, const std::set<std::string>& blacklist) {
  std::set<std::string> banned;
  for (const auto& b : blacklist) banned.insert(to_lower_ascii(b));
  std::vector<Post> out;
  out.reserve(f.size());
  for (const auto& p : f.posts()) {
    Post q{p.user, p.resource, {}, p.timestamp};
    for (const auto& t : p.tags) {
      auto lowered = to_lower_ascii(t);
      if (!banned.contains(lowered)) q.tags.push_back(std::move(lowered));
    }
    if (!q.tags.empty()) out.push_back(std::move(q));
  }
  return Folksonomy(std::move(out));
}

Folksonomy sample_users(const Folksonomy& f, double fraction, std::uint64_t seed) {
  if (!(fraction > 0.0 && fraction <= 1.0))
    throw UsageError("sample fraction must lie in (0, 1]");
  std::vector<std::string_view> users;
  for (const auto& p : f.posts())
    if (users.empty() || users.back() != p.user) users.push_back(p.user);
  if (users.empty()) return f;

  auto keep = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(users.size())));
  keep = std::clamp<std::size_t>(keep, 1, users.size());
  Rng rng(seed);
  for (std::size_t i = 0; i < keep; ++i) {
    auto j = i + uniform_index(rng, users.size() - i);
    std::swap(users[i], users[j]);
  }
  std::unordered_set<std::string_view> chosen(users.begin(), users.begin() + keep);
  std::vector<Post> out;
  for (const auto& p : f.posts())
    if (chosen.contains(p.user)) out.push_back(p);
  return Folksonomy(std::move(out));
}

Folksonomy p_core(const Folksonomy& f, unsigned p) {
  if (p <= 1 || f.empty()) return f;

  // Intern entities so that each pass is a sweep over integer arrays.
  std::unordered_map<std::string_view, std::uint32_t> user_ids, resource_ids, tag_ids;
  auto intern = [](auto& ids, std::string_view key) {
    return ids.try_emplace(key, static_cast<std::uint32_t>(ids.size())).first->second;
  };
  struct Row {
    std::uint32_t user, resource;
    std::vector<std::uint32_t> tags;
    std::vector<std::uint32_t> tag_slots;  // positions into the source post's tags
  };
  std::vector<Row> rows;
  rows.reserve(f.size());
  for (const auto& post : f.posts()) {
    Row r{intern(user_ids, post.user), intern(resource_ids, post.resource), {}, {}};
    for (std::uint32_t i = 0; i < post.tags.size(); ++i) {
      r.tags.push_back(intern(tag_ids, post.tags[i]));
      r.tag_slots.push_back(i);
    }
    rows.push_back(std::move(r));
  }
  std::vector<char> alive(rows.size(), 1);

  for (bool changed = true; changed;) {
    changed = false;
    std::vector<unsigned> uc(user_ids.size(), 0), rc(resource_ids.size(), 0), tc(tag_ids.size(), 0);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (!alive[i]) continue;
      ++uc[rows[i].user];
      ++rc[rows[i].resource];
      for (auto t : rows[i].tags) ++tc[t];
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (!alive[i]) continue;
      Row& r = rows[i];
      if (uc[r.user] < p || rc[r.resource] < p) {
        alive[i] = 0;
        changed = true;
        continue;
      }
      std::size_t w = 0;
      for (std::size_t j = 0; j < r.tags.size(); ++j) {
        if (tc[r.tags[j]] >= p) {
          r.tags[w] = r.tags[j];
          r.tag_slots[w] = r.tag_slots[j];
          ++w;
        }
      }
      if (w != r.tags.size()) {
        changed = true;
        r.tags.resize(w);
        r.tag_slots.resize(w);
        if (w == 0) alive[i] = 0;
      }
    }
  }

  std::vector<Post> out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!alive[i]) continue;
    const Post& src = f.posts()[i];
    Post q{src.user, src.resource, {}, src.timestamp};
    for (auto slot : rows[i].tag_slots) q.tags.push_back(src.tags[slot]);
    out.push_back(std::move(q));
  }
  return Folksonomy(std::move(out));
}

void write_assignments(std::ostream& out, const Folksonomy& f) {
  for (const auto& p : f.posts())
    for (const auto& t : p.tags)
      out << p.user << '\t' << p.resource << '\t' << t << '\t' << p.timestamp << '\n';
}

}  // namespace folkrec
