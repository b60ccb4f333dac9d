#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "folkrec/corpus.hpp"

namespace folkrec {

// Entity ids are dense and assigned in lexicographic order of the
// identifier strings, so comparing ids compares names.
using UserId = std::uint32_t;
using ResourceId = std::uint32_t;
using TagId = std::uint32_t;

/// All timestamps (ascending) at which one user applied one tag.
struct TagUsage {
  TagId tag;
  std::vector<Timestamp> times;
};

struct TagCount {
  TagId tag;
  std::uint32_t count;
};

struct UserCount {
  UserId user;
  std::uint32_t count;
};

struct IndexedPost {
  UserId user;
  ResourceId resource;
  Timestamp timestamp;
  std::vector<TagId> tags;  // ascending
};

/// Frozen, query-optimized view of a training folksonomy. Construct with
/// build_index(); nothing mutates an index afterwards, so one instance can
/// serve concurrent readers.
class TrainingIndex {
 public:
  TrainingIndex() = default;

  std::size_t user_count() const { return users_.size(); }
  std::size_t resource_count() const { return resources_.size(); }
  std::size_t tag_count() const { return tags_.size(); }
  bool empty() const { return posts_.empty(); }

  const std::string& user_name(UserId u) const { return users_[u]; }
  const std::string& resource_name(ResourceId r) const { return resources_[r]; }
  const std::string& tag_name(TagId t) const { return tags_[t]; }

  std::optional<UserId> find_user(std::string_view name) const;
  std::optional<ResourceId> find_resource(std::string_view name) const;
  std::optional<TagId> find_tag(std::string_view name) const;

  /// Y_u grouped by tag, ascending tag id.
  std::span<const TagUsage> user_profile(UserId u) const { return user_profiles_[u]; }
  /// |Y_u|, the user's number of tag assignments.
  std::uint64_t user_assignments(UserId u) const { return user_assignments_[u]; }
  /// Squared Euclidean norm of the user's tag-frequency vector.
  std::uint64_t user_sq_norm(UserId u) const { return user_sq_norms_[u]; }
  double user_norm(UserId u) const { return std::sqrt(static_cast<double>(user_sq_norms_[u])); }
  Timestamp latest_timestamp(UserId u) const { return latest_[u]; }

  /// |Y_{t,r}| for every tag on the resource, ascending tag id.
  std::span<const TagCount> resource_profile(ResourceId r) const { return resource_profiles_[r]; }
  /// Users that applied the tag, with their usage counts, ascending user id.
  std::span<const UserCount> tag_users(TagId t) const { return tag_users_[t]; }
  std::uint64_t global_count(TagId t) const { return global_counts_[t]; }

  /// Timestamps of Y_{t,u}; empty when the user never applied the tag.
  std::span<const Timestamp> usage_times(UserId u, TagId t) const;

  const std::vector<IndexedPost>& posts() const { return posts_; }
  FolksonomyStats stats() const;
  Folksonomy to_folksonomy() const;

  friend TrainingIndex build_index(const Folksonomy& f);

 private:
  std::vector<std::string> users_, resources_, tags_;
  std::unordered_map<std::string, UserId> user_lookup_;
  std::unordered_map<std::string, ResourceId> resource_lookup_;
  std::unordered_map<std::string, TagId> tag_lookup_;

  std::vector<IndexedPost> posts_;
  std::vector<std::vector<TagUsage>> user_profiles_;
  std::vector<std::uint64_t> user_assignments_;
  std::vector<std::uint64_t> user_sq_norms_;
  std::vector<Timestamp> latest_;
  std::vector<std::vector<TagCount>> resource_profiles_;
  std::vector<std::vector<UserCount>> tag_users_;
  std::vector<std::uint64_t> global_counts_;
  std::uint64_t assignment_total_ = 0;
};

TrainingIndex build_index(const Folksonomy& f);

/// Serializes the index as a versioned, sorted TSV container starting with
/// the magic line "FOLKREC-IDX v1". Identical indexes give identical bytes.
std::string snapshot(const TrainingIndex& index);

/// Inverse of snapshot(). Throws DataError on a bad magic line, an
/// unsupported major version, truncation or count mismatches.
TrainingIndex load_snapshot(std::string_view bytes);

void save_snapshot_file(const TrainingIndex& index, const std::string& path);
TrainingIndex load_snapshot_file(const std::string& path);

}  // namespace folkrec
