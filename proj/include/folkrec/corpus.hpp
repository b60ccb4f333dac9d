#pragma once

#include <cstdint>
#include <istream>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace folkrec {

using Timestamp = std::int64_t;

/// Raised for malformed or unusable input data (harness exit code 2).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised for invalid configuration or arguments (harness exit code 1).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TagAssignment {
  std::string user;
  std::string resource;
  std::string tag;
  Timestamp timestamp = 0;
};

/// One bookmark. `tags` is kept sorted and duplicate free.
struct Post {
  std::string user;
  std::string resource;
  std::vector<std::string> tags;
  Timestamp timestamp = 0;

  friend bool operator==(const Post&, const Post&) = default;
};

struct FolksonomyStats {
  std::size_t bookmarks = 0;
  std::size_t users = 0;
  std::size_t resources = 0;
  std::size_t tags = 0;
  std::size_t assignments = 0;

  friend bool operator==(const FolksonomyStats&, const FolksonomyStats&) = default;
};

/// A set of posts with at most one post per (user, resource) pair.
/// Posts are held in (user, resource) order so that every derived
/// artifact is independent of input line order.
class Folksonomy {
 public:
  Folksonomy() = default;
  /// Normalizes tag sets and sorts. Throws DataError on a duplicate
  /// (user, resource) pair, an empty tag set or a negative timestamp.
  explicit Folksonomy(std::vector<Post> posts);

  const std::vector<Post>& posts() const { return posts_; }
  bool empty() const { return posts_.empty(); }
  std::size_t size() const { return posts_.size(); }

  FolksonomyStats stats() const;
  std::vector<TagAssignment> assignments() const;

  friend bool operator==(const Folksonomy&, const Folksonomy&) = default;

 private:
  std::vector<Post> posts_;
};

enum class Delimiter { kWhitespace, kTab, kComma };
enum class HeaderMode { kAuto, kPresent, kAbsent };

/// Column mapping for raw dumps. Column indices are zero based.
struct ColumnFormat {
  Delimiter delimiter = Delimiter::kWhitespace;
  HeaderMode header = HeaderMode::kAuto;
  std::size_t user_column = 0;
  std::size_t resource_column = 1;
  std::size_t tag_column = 2;
  std::size_t timestamp_column = 3;

  /// Parses a column order such as "user,tag,resource,timestamp"; "_" or
  /// any other name marks an ignored column.
  static ColumnFormat from_order(std::string_view order);
};

/// Accepts integer epoch seconds (fractions truncated) or ISO-8601
/// "YYYY-MM-DD[T ]hh:mm:ss[.fff][Z|+hh:mm|-hh:mm]", converted to UTC.
/// Throws DataError when the text is neither.
Timestamp parse_timestamp(std::string_view text);

/// Reads one tag assignment per line. Lines sharing (user, resource) form
/// one post; if they carry different timestamps only the lines with the
/// latest timestamp survive (a re-bookmark supersedes the earlier one).
Folksonomy parse_dataset(std::istream& in, const ColumnFormat& format = {});

std::set<std::string> default_blacklist();

/// Lowercases tags, drops blacklisted tags and posts left without tags.
Folksonomy preprocess(const Folksonomy& f, const std::set<std::string>& blacklist);

/// Keeps round(fraction * |U|) users (at least one) chosen uniformly with
/// a seeded generator; all posts of kept users survive.
Folksonomy sample_users(const Folksonomy& f, double fraction, std::uint64_t seed);

/// Maximal sub-folksonomy where every user, resource and tag occurs in at
/// least p posts. Removing a tag strips its assignments; posts that lose
/// all tags disappear.
Folksonomy p_core(const Folksonomy& f, unsigned p);

/// Writes the folksonomy as tab separated "user resource tag timestamp"
/// lines in post order.
void write_assignments(std::ostream& out, const Folksonomy& f);

std::string to_lower_ascii(std::string_view s);

}  // namespace folkrec
