#include <algorithm>
#include <cmath>
#include <map>

#include "folkrec/index.hpp"

namespace folkrec {

namespace {

std::vector<std::string> sorted_names(const Folksonomy& f, auto&& pick) {
  std::vector<std::string> names;
  for (const auto& p : f.posts()) pick(p, names);
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  return names;
}

template <typename Id>
std::unordered_map<std::string, Id> lookup_for(const std::vector<std::string>& names) {
  std::unordered_map<std::string, Id> lookup;
  lookup.reserve(names.size());
  for (Id i = 0; i < names.size(); ++i) lookup.emplace(names[i], i);
  return lookup;
}

template <typename Id, typename Map>
std::optional<Id> find_in(const Map& map, std::string_view name) {
  auto it = map.find(std::string(name));
  if (it == map.end()) return std::nullopt;
  return it->second;
}

}  // namespace

std::optional<UserId> TrainingIndex::find_user(std::string_view name) const {
  return find_in<UserId>(user_lookup_, name);
}
std::optional<ResourceId> TrainingIndex::find_resource(std::string_view name) const {
  return find_in<ResourceId>(resource_lookup_, name);
}
std::optional<TagId> TrainingIndex::find_tag(std::string_view name) const {
  return find_in<TagId>(tag_lookup_, name);
}

std::span<const Timestamp> TrainingIndex::usage_times(UserId u, TagId t) const {
  const auto& profile = user_profiles_[u];
  auto it = std::lower_bound(profile.begin(), profile.end(), t,
                             [](const TagUsage& usage, TagId tag) { return usage.tag < tag; });
  if (it == profile.end() || it->tag != t) return {};
  return it->times;
}

FolksonomyStats TrainingIndex::stats() const {
  return {posts_.size(), users_.size(), resources_.size(), tags_.size(),
          static_cast<std::size_t>(assignment_total_)};
}

Folksonomy TrainingIndex::to_folksonomy() const {
  std::vector<Post> posts;
  posts.reserve(posts_.size());
  for (const auto& p : posts_) {
    Post q{users_[p.user], resources_[p.resource], {}, p.timestamp};
    for (auto t : p.tags) q.tags.push_back(tags_[t]);
    posts.push_back(std::move(q));
  }
  return Folksonomy(std::move(posts));
}

TrainingIndex build_index(const Folksonomy& f) {
  TrainingIndex ix;
  ix.users_ = sorted_names(f, [](const Post& p, auto& out) { out.push_back(p.user); });
  ix.resources_ =
      sorted_names(f, [](const Post& p, auto& out) { out.push_back(p.resource); });
  ix.tags_ = sorted_names(f, [](const Post& p, auto& out) {
    out.insert(out.end(), p.tags.begin(), p.tags.end());
  });
  ix.user_lookup_ = lookup_for<UserId>(ix.users_);
  ix.resource_lookup_ = lookup_for<ResourceId>(ix.resources_);
  ix.tag_lookup_ = lookup_for<TagId>(ix.tags_);

  // Folksonomy posts are sorted by (user, resource) strings, hence by ids too.
  ix.posts_.reserve(f.size());
  for (const auto& p : f.posts()) {
    IndexedPost q{ix.user_lookup_.at(p.user), ix.resource_lookup_.at(p.resource), p.timestamp, {}};
    for (const auto& t : p.tags) q.tags.push_back(ix.tag_lookup_.at(t));
    std::sort(q.tags.begin(), q.tags.end());
    ix.posts_.push_back(std::move(q));
  }

  const auto n_users = ix.users_.size();
  const auto n_tags = ix.tags_.size();
  std::vector<std::map<TagId, std::vector<Timestamp>>> usage(n_users);
  std::vector<std::map<TagId, std::uint32_t>> resource_counts(ix.resources_.size());
  ix.global_counts_.assign(n_tags, 0);
  ix.latest_.assign(n_users, 0);
  ix.user_assignments_.assign(n_users, 0);
  for (const auto& p : ix.posts_) {
    ix.latest_[p.user] = std::max(ix.latest_[p.user], p.timestamp);
    for (auto t : p.tags) {
      usage[p.user][t].push_back(p.timestamp);
      ++resource_counts[p.resource][t];
      ++ix.global_counts_[t];
      ++ix.user_assignments_[p.user];
      ++ix.assignment_total_;
    }
  }

  ix.user_profiles_.resize(n_users);
  ix.user_sq_norms_.assign(n_users, 0);
  ix.tag_users_.resize(n_tags);
  for (UserId u = 0; u < n_users; ++u) {
    std::uint64_t sq = 0;
    for (auto& [t, times] : usage[u]) {
      std::sort(times.begin(), times.end());
      const auto count = static_cast<std::uint32_t>(times.size());
      sq += std::uint64_t{count} * count;
      ix.tag_users_[t].push_back({u, count});
      ix.user_profiles_[u].push_back({t, std::move(times)});
    }
    ix.user_sq_norms_[u] = sq;
  }
  ix.resource_profiles_.resize(ix.resources_.size());
  for (std::size_t r = 0; r < resource_counts.size(); ++r)
    for (auto [t, c] : resource_counts[r]) ix.resource_profiles_[r].push_back({t, c});
  return ix;
}

}  // namespace folkrec
