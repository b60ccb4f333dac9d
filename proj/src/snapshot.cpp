#include <charconv>
#include <fstream>
#include <sstream>

#include "folkrec/index.hpp"

namespace folkrec {

namespace {

constexpr std::string_view kMagic = "FOLKREC-IDX v";
constexpr int kMajorVersion = 1;

std::string escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '\t': out += "\\t"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::string unescape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '\\') {
      out.push_back(s[i]);
      continue;
    }
    if (++i == s.size()) throw DataError("snapshot: dangling escape");
    switch (s[i]) {
      case '\\': out.push_back('\\'); break;
      case 't': out.push_back('\t'); break;
      case 'n': out.push_back('\n'); break;
      case 'r': out.push_back('\r'); break;
      default: throw DataError("snapshot: bad escape sequence");
    }
  }
  return out;
}

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    auto pos = line.find('\t', start);
    out.push_back(line.substr(start, pos - start));
    if (pos == std::string_view::npos) return out;
    start = pos + 1;
  }
}

template <typename T>
T parse_number(std::string_view s, const char* what) {
  T value{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    throw DataError(std::string("snapshot: malformed ") + what);
  return value;
}

class LineReader {
 public:
  explicit LineReader(std::string_view bytes) : rest_(bytes) {}

  std::string_view next(const char* expecting) {
    if (rest_.empty()) throw DataError(std::string("snapshot truncated: missing ") + expecting);
    auto pos = rest_.find('\n');
    if (pos == std::string_view::npos)
      throw DataError(std::string("snapshot truncated: unterminated ") + expecting);
    auto line = rest_.substr(0, pos);
    rest_.remove_prefix(pos + 1);
    return line;
  }
  bool done() const { return rest_.empty(); }

 private:
  std::string_view rest_;
};

}  // namespace

std::string snapshot(const TrainingIndex& index) {
  const auto s = index.stats();
  std::ostringstream out;
  out << kMagic << kMajorVersion << '\n';
  out << "counts\t" << s.bookmarks << '\t' << s.users << '\t' << s.resources << '\t' << s.tags
      << '\t' << s.assignments << '\n';
  out << "posts\t" << index.posts().size() << '\n';
  // Posts are already in (user, resource) order and tag ids ascend with names.
  for (const auto& p : index.posts()) {
    out << escape(index.user_name(p.user)) << '\t' << escape(index.resource_name(p.resource))
        << '\t' << p.timestamp;
    for (auto t : p.tags) out << '\t' << escape(index.tag_name(t));
    out << '\n';
  }
  out << "end\n";
  return out.str();
}

TrainingIndex load_snapshot(std::string_view bytes) {
  LineReader reader(bytes);
  auto magic = reader.next("header");
  if (!magic.starts_with(kMagic)) throw DataError("not a FOLKREC-IDX snapshot");
  if (parse_number<int>(magic.substr(kMagic.size()), "version") != kMajorVersion)
    throw DataError("unsupported snapshot version '" + std::string(magic) + "'");

  auto counts = split_tabs(reader.next("counts"));
  if (counts.size() != 6 || counts[0] != "counts") throw DataError("snapshot: malformed counts");
  FolksonomyStats expected{
      parse_number<std::size_t>(counts[1], "counts"), parse_number<std::size_t>(counts[2], "counts"),
      parse_number<std::size_t>(counts[3], "counts"), parse_number<std::size_t>(counts[4], "counts"),
      parse_number<std::size_t>(counts[5], "counts")};

  auto section = split_tabs(reader.next("posts section"));
  if (section.size() != 2 || section[0] != "posts")
    throw DataError("snapshot: malformed posts section");
  const auto n_posts = parse_number<std::size_t>(section[1], "post count");
  if (n_posts != expected.bookmarks) throw DataError("snapshot: post count disagrees with counts");

  std::vector<Post> posts;
  posts.reserve(n_posts);
  for (std::size_t i = 0; i < n_posts; ++i) {
    auto fields = split_tabs(reader.next("post"));
    if (fields.size() < 4) throw DataError("snapshot: malformed post line");
    Post p{unescape(fields[0]), unescape(fields[1]), {}, parse_number<Timestamp>(fields[2], "timestamp")};
    for (std::size_t j = 3; j < fields.size(); ++j) p.tags.push_back(unescape(fields[j]));
    posts.push_back(std::move(p));
  }
  if (reader.next("end marker") != "end") throw DataError("snapshot: missing end marker");
  if (!reader.done()) throw DataError("snapshot: trailing data after end marker");

  Folksonomy f(std::move(posts));
  if (f.stats() != expected) throw DataError("snapshot: contents disagree with counts");
  return build_index(f);
}

void save_snapshot_file(const TrainingIndex& index, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path);
  out << snapshot(index);
  if (!out) throw DataError("failed writing " + path);
}

TrainingIndex load_snapshot_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_snapshot(buf.str());
}

}  // namespace folkrec
